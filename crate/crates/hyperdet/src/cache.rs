//! Persistent binary cache for contractors and Levi-Civita powers.
//!
//! Entries live one per file under a cache directory, named
//! `{kind}_d{side}_N{order}_{backend}.hdc`. The format, version HDC1, is:
//!
//! ```text
//! magic         4 bytes  "HDC1"
//! kind          u64 LE   1 = epsilon-power, 2 = contractor
//! side          u64 LE   input side d
//! order         u64 LE   input order N
//! backend       u64 LE   1 = rational, 2 = float64, 3 = complex64
//! tensor order  u64 LE
//! tensor side   u64 LE
//! count         u64 LE   nonzeros (sparse) or total entries (dense)
//! payload       sparse: count * (psi index u64 LE, value bytes)
//!               dense:  count * value bytes, psi order
//! checksum      u64 LE   FNV-1a 64 over all preceding bytes
//! ```
//!
//! Values use the scalar encoding of [`crate::scalar::Scalar::encode`].
//! Serialization is deterministic, so storing the same object twice yields
//! byte-identical files. Writes go through a temporary file in the same
//! directory and are renamed into place, so a crash never leaves a torn
//! entry behind.

use crate::error::{Error, Result};
use crate::hdet::{build_contractor, Budgets, Contractor};
use crate::hypermatrix::{Hypermatrix, Shape};
use crate::levicivita::epsilon_kron_power;
use crate::scalar::{Backend, Scalar};
use crate::vectorize::SparseTensor;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 4] = b"HDC1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CacheKind {
    EpsilonPower,
    Contractor,
}

impl CacheKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CacheKind::EpsilonPower => "epsilon-power",
            CacheKind::Contractor => "contractor",
        }
    }

    fn code(self) -> u64 {
        match self {
            CacheKind::EpsilonPower => 1,
            CacheKind::Contractor => 2,
        }
    }

    fn from_code(code: u64) -> Option<CacheKind> {
        match code {
            1 => Some(CacheKind::EpsilonPower),
            2 => Some(CacheKind::Contractor),
            _ => None,
        }
    }
}

/// Identifies one cache entry: what was precomputed, for which input
/// dimensions, in which backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub kind: CacheKind,
    pub side: usize,
    pub order: usize,
    pub backend: Backend,
}

impl CacheKey {
    pub fn file_name(&self) -> String {
        format!(
            "{}_d{}_N{}_{}.hdc",
            self.kind.as_str(),
            self.side,
            self.order,
            self.backend.as_str()
        )
    }

    pub fn path_in(&self, dir: &Path) -> PathBuf {
        dir.join(self.file_name())
    }
}

/// Where a returned object came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    CacheHit,
    Built,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::CacheHit => "cache-hit",
            Provenance::Built => "built",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CachePayload<T> {
    EpsilonPower(SparseTensor<T>),
    Contractor(Contractor<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CacheEntry<T> {
    pub key: CacheKey,
    pub payload: CachePayload<T>,
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &byte in bytes {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn push_u64(out: &mut Vec<u8>, value: u64) {
    out.extend_from_slice(&value.to_le_bytes());
}

fn read_u64(bytes: &[u8], pos: &mut usize) -> Option<u64> {
    let end = pos.checked_add(8)?;
    if end > bytes.len() {
        return None;
    }
    let value = u64::from_le_bytes(bytes[*pos..end].try_into().unwrap());
    *pos = end;
    Some(value)
}

impl<T: Scalar> CacheEntry<T> {
    pub fn epsilon_power(side: usize, order: usize, tensor: SparseTensor<T>) -> Self {
        CacheEntry {
            key: CacheKey {
                kind: CacheKind::EpsilonPower,
                side,
                order,
                backend: T::backend(),
            },
            payload: CachePayload::EpsilonPower(tensor),
        }
    }

    pub fn contractor(contractor: Contractor<T>) -> Self {
        CacheEntry {
            key: CacheKey {
                kind: CacheKind::Contractor,
                side: contractor.input_side(),
                order: contractor.input_order(),
                backend: T::backend(),
            },
            payload: CachePayload::Contractor(contractor),
        }
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        push_u64(&mut out, self.key.kind.code());
        push_u64(&mut out, self.key.side as u64);
        push_u64(&mut out, self.key.order as u64);
        push_u64(&mut out, self.key.backend.code());
        match &self.payload {
            CachePayload::EpsilonPower(tensor) => {
                let shape = tensor.shape();
                push_u64(&mut out, shape.order() as u64);
                push_u64(&mut out, shape.extents()[0] as u64);
                push_u64(&mut out, tensor.nnz() as u64);
                for (index, value) in tensor.entries() {
                    push_u64(&mut out, shape.psi(index)? as u64);
                    value.encode(&mut out);
                }
            }
            CachePayload::Contractor(contractor) => {
                let tensor = contractor.tensor();
                push_u64(&mut out, tensor.order() as u64);
                push_u64(&mut out, tensor.shape().extents()[0] as u64);
                push_u64(&mut out, tensor.data().len() as u64);
                for value in tensor.data() {
                    value.encode(&mut out);
                }
            }
        }
        let checksum = fnv1a64(&out);
        push_u64(&mut out, checksum);
        Ok(out)
    }

    fn parse(bytes: &[u8], path: &Path) -> Result<Self> {
        let corrupt = |detail: &str| Error::CorruptCache {
            path: path.to_path_buf(),
            detail: detail.to_string(),
        };
        if bytes.len() < MAGIC.len() + 8 {
            return Err(corrupt("file shorter than header"));
        }
        if &bytes[..3] != b"HDC" {
            return Err(corrupt("bad magic"));
        }
        if bytes[3] != MAGIC[3] {
            return Err(Error::UnsupportedVersion {
                path: path.to_path_buf(),
                found: String::from_utf8_lossy(&bytes[..4]).into_owned(),
            });
        }
        let body = &bytes[..bytes.len() - 8];
        let stored = u64::from_le_bytes(bytes[bytes.len() - 8..].try_into().unwrap());
        if fnv1a64(body) != stored {
            return Err(corrupt("checksum mismatch"));
        }
        let mut pos = MAGIC.len();
        let kind_code = read_u64(body, &mut pos).ok_or_else(|| corrupt("truncated header"))?;
        let side = read_u64(body, &mut pos).ok_or_else(|| corrupt("truncated header"))?;
        let order = read_u64(body, &mut pos).ok_or_else(|| corrupt("truncated header"))?;
        let backend_code = read_u64(body, &mut pos).ok_or_else(|| corrupt("truncated header"))?;
        let tensor_order =
            read_u64(body, &mut pos).ok_or_else(|| corrupt("truncated header"))?;
        let tensor_side = read_u64(body, &mut pos).ok_or_else(|| corrupt("truncated header"))?;
        let count = read_u64(body, &mut pos).ok_or_else(|| corrupt("truncated header"))?;

        let kind = CacheKind::from_code(kind_code).ok_or_else(|| corrupt("unknown kind code"))?;
        let backend =
            Backend::from_code(backend_code).ok_or_else(|| corrupt("unknown backend code"))?;
        if backend != T::backend() {
            return Err(corrupt("backend mismatch"));
        }
        let side = usize::try_from(side).map_err(|_| corrupt("side out of range"))?;
        let order = usize::try_from(order).map_err(|_| corrupt("order out of range"))?;
        let tensor_order =
            usize::try_from(tensor_order).map_err(|_| corrupt("tensor order out of range"))?;
        let tensor_side =
            usize::try_from(tensor_side).map_err(|_| corrupt("tensor side out of range"))?;

        let key = CacheKey {
            kind,
            side,
            order,
            backend,
        };
        let payload = match kind {
            CacheKind::EpsilonPower => {
                let shape = Shape::cubical(tensor_side, tensor_order)
                    .map_err(|e| corrupt(&format!("bad tensor shape: {e}")))?;
                let expected_side = Shape::cubical(side, order)
                    .map_err(|e| corrupt(&format!("bad dimensions: {e}")))?
                    .element_count();
                if tensor_order != side || tensor_side != expected_side {
                    return Err(corrupt("tensor shape inconsistent with side and order"));
                }
                let mut entries = Vec::new();
                for _ in 0..count {
                    let position =
                        read_u64(body, &mut pos).ok_or_else(|| corrupt("truncated payload"))?;
                    let position = usize::try_from(position)
                        .map_err(|_| corrupt("index out of range"))?;
                    let index = shape
                        .index_at(position)
                        .map_err(|e| corrupt(&format!("bad index: {e}")))?;
                    let value = T::decode(body, &mut pos)
                        .map_err(|e| corrupt(&format!("bad value: {e}")))?;
                    entries.push((index, value));
                }
                if pos != body.len() {
                    return Err(corrupt("trailing bytes after payload"));
                }
                let tensor = SparseTensor::new(shape, entries)
                    .map_err(|e| corrupt(&format!("invalid sparse tensor: {e}")))?;
                CachePayload::EpsilonPower(tensor)
            }
            CacheKind::Contractor => {
                let shape = Shape::cubical(tensor_side, tensor_order)
                    .map_err(|e| corrupt(&format!("bad tensor shape: {e}")))?;
                if count as u128 != shape.element_count() as u128 {
                    return Err(corrupt("entry count inconsistent with tensor shape"));
                }
                let mut data = Vec::new();
                for _ in 0..count {
                    let value = T::decode(body, &mut pos)
                        .map_err(|e| corrupt(&format!("bad value: {e}")))?;
                    data.push(value);
                }
                if pos != body.len() {
                    return Err(corrupt("trailing bytes after payload"));
                }
                let tensor = Hypermatrix::new(shape, data)
                    .map_err(|e| corrupt(&format!("invalid tensor: {e}")))?;
                let contractor = Contractor::from_parts(side, order, tensor)
                    .map_err(|e| corrupt(&format!("invalid contractor: {e}")))?;
                CachePayload::Contractor(contractor)
            }
        };
        Ok(CacheEntry { key, payload })
    }
}

/// Writes an entry to its file under `dir` atomically, creating the
/// directory if needed. Returns the final path.
pub fn store<T: Scalar>(entry: &CacheEntry<T>, dir: &Path) -> Result<PathBuf> {
    let bytes = entry.to_bytes()?;
    fs::create_dir_all(dir).map_err(|source| Error::Storage {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = entry.key.path_in(dir);
    let storage_error = |source: std::io::Error| Error::Storage {
        path: path.clone(),
        source,
    };
    let mut temp = tempfile::NamedTempFile::new_in(dir).map_err(storage_error)?;
    temp.write_all(&bytes).map_err(storage_error)?;
    temp.persist(&path)
        .map_err(|e| storage_error(e.error))?;
    Ok(path)
}

/// Loads the entry for `key` from `dir`. A missing file is `Ok(None)`; a
/// malformed or checksum-failing file is a [`Error::CorruptCache`]; a file
/// with a different format version is [`Error::UnsupportedVersion`].
pub fn load<T: Scalar>(key: &CacheKey, dir: &Path) -> Result<Option<CacheEntry<T>>> {
    let path = key.path_in(dir);
    let bytes = match fs::read(&path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(source) => return Err(Error::Storage { path, source }),
    };
    let entry = CacheEntry::parse(&bytes, &path)?;
    if entry.key != *key {
        return Err(Error::CorruptCache {
            path,
            detail: "header disagrees with file name".into(),
        });
    }
    Ok(Some(entry))
}

/// Returns the contractor for the given dimensions, loading it from `dir`
/// when a valid entry exists and building and storing it otherwise. A
/// corrupt entry is rebuilt and overwritten; an unsupported version is an
/// error, since overwriting it could destroy a newer tool's data.
pub fn ensure_contractor<T: Scalar>(
    side: usize,
    order: usize,
    dir: &Path,
    budgets: &Budgets,
) -> Result<(Contractor<T>, Provenance)> {
    let key = CacheKey {
        kind: CacheKind::Contractor,
        side,
        order,
        backend: T::backend(),
    };
    match load::<T>(&key, dir) {
        Ok(Some(CacheEntry {
            payload: CachePayload::Contractor(contractor),
            ..
        })) if contractor.input_side() == side && contractor.input_order() == order => {
            return Ok((contractor, Provenance::CacheHit));
        }
        Ok(_) | Err(Error::CorruptCache { .. }) => {}
        Err(e) => return Err(e),
    }
    let contractor = build_contractor::<T>(side, order, budgets)?;
    store(&CacheEntry::contractor(contractor.clone()), dir)?;
    Ok((contractor, Provenance::Built))
}

/// Same contract as [`ensure_contractor`] for Levi-Civita Kronecker powers.
pub fn ensure_epsilon_power<T: Scalar>(
    side: usize,
    order: usize,
    dir: &Path,
    budget_nnz: u64,
) -> Result<(SparseTensor<T>, Provenance)> {
    let key = CacheKey {
        kind: CacheKind::EpsilonPower,
        side,
        order,
        backend: T::backend(),
    };
    match load::<T>(&key, dir) {
        Ok(Some(CacheEntry {
            payload: CachePayload::EpsilonPower(tensor),
            ..
        })) => return Ok((tensor, Provenance::CacheHit)),
        Ok(_) | Err(Error::CorruptCache { .. }) => {}
        Err(e) => return Err(e),
    }
    let tensor = epsilon_kron_power::<T>(side, order, budget_nnz)?;
    store(&CacheEntry::epsilon_power(side, order, tensor.clone()), dir)?;
    Ok((tensor, Provenance::Built))
}
