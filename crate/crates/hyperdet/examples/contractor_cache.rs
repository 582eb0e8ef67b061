//! Exercises the on-disk contractor cache: a first request builds and
//! persists the tensor, a second request loads it back byte for byte, and a
//! corrupted file is detected by its checksum and silently rebuilt.
//!
//! ```text
//! cargo run --example contractor_cache
//! ```

use std::fs;
use std::path::Path;

use hyperdet::cache::{ensure_contractor, ensure_epsilon_power, CacheKey, CacheKind};
use hyperdet::sample;
use hyperdet::{hdet_symmetric, Backend, Budgets, Hypermatrix, Rational};

fn storage_error(path: &Path, source: std::io::Error) -> hyperdet::Error {
    hyperdet::Error::Storage {
        path: path.to_path_buf(),
        source,
    }
}

fn main() -> hyperdet::Result<()> {
    let dir = tempfile::tempdir().map_err(|e| storage_error(Path::new("."), e))?;
    let budgets = Budgets::default();

    let (contractor, provenance) = ensure_contractor::<Rational>(2, 8, dir.path(), &budgets)?;
    println!("first request: {}", provenance.as_str());
    let key = CacheKey {
        kind: CacheKind::Contractor,
        side: 2,
        order: 8,
        backend: Backend::Rational,
    };
    let path = key.path_in(dir.path());
    let pristine = fs::read(&path).map_err(|e| storage_error(&path, e))?;
    println!(
        "cache file {} holds {} bytes",
        path.file_name().unwrap().to_string_lossy(),
        pristine.len()
    );

    let (reloaded, provenance) = ensure_contractor::<Rational>(2, 8, dir.path(), &budgets)?;
    println!("second request: {}", provenance.as_str());
    assert_eq!(reloaded, contractor);

    let mut rng = sample::rng(2);
    let a: Hypermatrix<Rational> = sample::symmetric_integer_hypermatrix(2, 8, -9, 9, &mut rng)?;
    let value = hdet_symmetric(&a, &reloaded, 0.0)?;
    println!("hdet from the cached contractor: {value}");

    let mut corrupted = pristine.clone();
    let last = corrupted.len() - 1;
    corrupted[last] ^= 0xff;
    fs::write(&path, &corrupted).map_err(|e| storage_error(&path, e))?;
    let (rebuilt, provenance) = ensure_contractor::<Rational>(2, 8, dir.path(), &budgets)?;
    println!("after flipping one byte: {}", provenance.as_str());
    assert_eq!(rebuilt, contractor);
    let recovered = fs::read(&path).map_err(|e| storage_error(&path, e))?;
    assert_eq!(recovered, pristine);
    println!("the rebuilt file is byte-identical to the original");

    let (power, provenance) =
        ensure_epsilon_power::<Rational>(2, 6, dir.path(), budgets.levicivita_nnz)?;
    println!(
        "epsilon power cache: {} nonzeros, {}",
        power.nnz(),
        provenance.as_str()
    );
    Ok(())
}
