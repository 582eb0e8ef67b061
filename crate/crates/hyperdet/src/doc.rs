//! JSON documents for hypermatrices and quantum states.
//!
//! A tensor document is a JSON object:
//!
//! ```text
//! {
//!   "shape":   [2, 2, 2],
//!   "backend": "rational" | "float64" | "complex64",   optional
//!   "layout":  "first-axis-fastest" (default) | "last-axis-fastest",
//!   "data":    [ ... ]
//! }
//! ```
//!
//! `data` is flat and holds one element per position. In the default layout
//! it is exactly the vectorization: the first index varies fastest. The
//! alternative layout lists the last index fastest, as nested row-major
//! arrays would, and is transposed into place on load.
//!
//! Element forms depend on the backend requested when converting:
//! rational data takes JSON integers or strings like `"22/7"` (large or
//! fractional values must use the string form, which is parsed exactly),
//! float data takes numbers or those same strings, and complex data takes
//! numbers or `[re, im]` pairs. Unknown keys are ignored.
//!
//! A state document is the amplitude form used by the concurrence tools:
//!
//! ```text
//! { "side": 2, "particles": 2, "amplitudes": [[re, im], ...] }
//! ```

use crate::error::{Error, Result};
use crate::hypermatrix::{Hypermatrix, Shape};
use crate::perm::Permutation;
use crate::quantum::QuditState;
use crate::scalar::{Backend, Rational, Scalar};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    FirstAxisFastest,
    LastAxisFastest,
}

impl Layout {
    pub fn as_str(self) -> &'static str {
        match self {
            Layout::FirstAxisFastest => "first-axis-fastest",
            Layout::LastAxisFastest => "last-axis-fastest",
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-axis-fastest" => Ok(Layout::FirstAxisFastest),
            "last-axis-fastest" => Ok(Layout::LastAxisFastest),
            other => Err(Error::Parse {
                detail: format!(
                    "unknown layout {other:?}, expected \"first-axis-fastest\" or \
                     \"last-axis-fastest\""
                ),
            }),
        }
    }
}

/// A parsed tensor document. Elements stay as JSON values until a backend
/// is chosen, so one file can feed any of the three scalar types.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorDocument {
    shape: Vec<usize>,
    declared_backend: Option<Backend>,
    layout: Layout,
    values: Vec<Value>,
}

fn parse_error(detail: String) -> Error {
    Error::Parse { detail }
}

impl TensorDocument {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(text)
            .map_err(|e| parse_error(format!("invalid JSON: {e}")))?;
        let object = root
            .as_object()
            .ok_or_else(|| parse_error("document root must be an object".into()))?;

        let shape_value = object
            .get("shape")
            .ok_or_else(|| parse_error("missing \"shape\" key".into()))?;
        let shape_array = shape_value
            .as_array()
            .ok_or_else(|| parse_error("\"shape\" must be an array of integers".into()))?;
        let mut shape = Vec::with_capacity(shape_array.len());
        for (axis, value) in shape_array.iter().enumerate() {
            let extent = value.as_u64().ok_or_else(|| {
                parse_error(format!(
                    "shape component {} must be a positive integer, found {value}",
                    axis + 1
                ))
            })?;
            let extent = usize::try_from(extent)
                .map_err(|_| parse_error(format!("shape component {} is too large", axis + 1)))?;
            shape.push(extent);
        }
        let checked = Shape::new(shape.clone())?;

        let declared_backend = match object.get("backend") {
            None => None,
            Some(value) => {
                let name = value
                    .as_str()
                    .ok_or_else(|| parse_error("\"backend\" must be a string".into()))?;
                Some(match name {
                    "rational" => Backend::Rational,
                    "float64" => Backend::Float64,
                    "complex64" => Backend::Complex64,
                    other => {
                        return Err(parse_error(format!(
                            "unknown backend {other:?}, expected \"rational\", \"float64\", \
                             or \"complex64\""
                        )))
                    }
                })
            }
        };

        let layout = match object.get("layout") {
            None => Layout::FirstAxisFastest,
            Some(value) => {
                let name = value
                    .as_str()
                    .ok_or_else(|| parse_error("\"layout\" must be a string".into()))?;
                name.parse()?
            }
        };

        let data_value = object
            .get("data")
            .ok_or_else(|| parse_error("missing \"data\" key".into()))?;
        let values = data_value
            .as_array()
            .ok_or_else(|| parse_error("\"data\" must be a flat array".into()))?
            .clone();
        if values.len() != checked.element_count() {
            return Err(parse_error(format!(
                "\"data\" has {} elements but shape {checked} needs {}",
                values.len(),
                checked.element_count()
            )));
        }

        Ok(TensorDocument {
            shape,
            declared_backend,
            layout,
            values,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Storage {
            path: path.to_path_buf(),
            source,
        })?;
        TensorDocument::from_json_str(&text)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn declared_backend(&self) -> Option<Backend> {
        self.declared_backend
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// Replaces the layout, for callers that know the file's convention
    /// better than the file does.
    pub fn set_layout(&mut self, layout: Layout) {
        self.layout = layout;
    }

    fn assemble<T: Scalar>(&self, data: Vec<T>) -> Result<Hypermatrix<T>> {
        match self.layout {
            Layout::FirstAxisFastest => {
                let shape = Shape::new(self.shape.clone())?;
                Hypermatrix::new(shape, data)
            }
            Layout::LastAxisFastest => {
                let reversed: Vec<usize> = self.shape.iter().rev().copied().collect();
                let shape = Shape::new(reversed)?;
                let staged = Hypermatrix::new(shape, data)?;
                staged.transpose(&Permutation::reversal(self.shape.len()))
            }
        }
    }

    pub fn rational_hypermatrix(&self) -> Result<Hypermatrix<Rational>> {
        let mut data = Vec::with_capacity(self.values.len());
        for (position, value) in self.values.iter().enumerate() {
            data.push(rational_element(value).map_err(|detail| {
                parse_error(format!("data element {}: {detail}", position + 1))
            })?);
        }
        self.assemble(data)
    }

    pub fn float_hypermatrix(&self) -> Result<Hypermatrix<f64>> {
        let mut data = Vec::with_capacity(self.values.len());
        for (position, value) in self.values.iter().enumerate() {
            data.push(float_element(value).map_err(|detail| {
                parse_error(format!("data element {}: {detail}", position + 1))
            })?);
        }
        self.assemble(data)
    }

    pub fn complex_hypermatrix(&self) -> Result<Hypermatrix<Complex64>> {
        let mut data = Vec::with_capacity(self.values.len());
        for (position, value) in self.values.iter().enumerate() {
            data.push(complex_element(value).map_err(|detail| {
                parse_error(format!("data element {}: {detail}", position + 1))
            })?);
        }
        self.assemble(data)
    }

    pub fn from_rational(a: &Hypermatrix<Rational>) -> Self {
        TensorDocument {
            shape: a.shape().extents().to_vec(),
            declared_backend: Some(Backend::Rational),
            layout: Layout::FirstAxisFastest,
            values: a
                .data()
                .iter()
                .map(|r| Value::String(rational_string(r)))
                .collect(),
        }
    }

    pub fn from_f64(a: &Hypermatrix<f64>) -> Self {
        TensorDocument {
            shape: a.shape().extents().to_vec(),
            declared_backend: Some(Backend::Float64),
            layout: Layout::FirstAxisFastest,
            values: a
                .data()
                .iter()
                .map(|x| Value::Number(serde_json::Number::from_f64(*x).expect("finite")))
                .collect(),
        }
    }

    pub fn from_complex(a: &Hypermatrix<Complex64>) -> Self {
        TensorDocument {
            shape: a.shape().extents().to_vec(),
            declared_backend: Some(Backend::Complex64),
            layout: Layout::FirstAxisFastest,
            values: a
                .data()
                .iter()
                .map(|z| {
                    Value::Array(vec![
                        Value::Number(serde_json::Number::from_f64(z.re).expect("finite")),
                        Value::Number(serde_json::Number::from_f64(z.im).expect("finite")),
                    ])
                })
                .collect(),
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let mut object = serde_json::Map::new();
        object.insert(
            "shape".into(),
            Value::Array(
                self.shape
                    .iter()
                    .map(|&n| Value::Number((n as u64).into()))
                    .collect(),
            ),
        );
        if let Some(backend) = self.declared_backend {
            object.insert("backend".into(), Value::String(backend.as_str().into()));
        }
        object.insert("layout".into(), Value::String(self.layout.as_str().into()));
        object.insert("data".into(), Value::Array(self.values.clone()));
        let root = Value::Object(object);
        if pretty {
            serde_json::to_string_pretty(&root).expect("document serializes")
        } else {
            serde_json::to_string(&root).expect("document serializes")
        }
    }
}

fn rational_string(r: &Rational) -> String {
    if r.denom() == &num_bigint::BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_element(value: &Value) -> std::result::Result<Rational, String> {
    match value {
        Value::Number(number) => {
            if let Some(i) = number.as_i64() {
                Ok(Rational::from_int(i))
            } else if let Some(u) = number.as_u64() {
                Ok(Rational::from_integer(num_bigint::BigInt::from(u)))
            } else {
                Err(format!(
                    "rational data needs an integer or a \"p/q\" string; write {number} as a \
                     string to keep it exact"
                ))
            }
        }
        Value::String(text) => Rational::from_str(text)
            .map_err(|e| format!("cannot parse {text:?} as a rational: {e}")),
        other => Err(format!("expected an integer or a \"p/q\" string, found {other}")),
    }
}

fn float_element(value: &Value) -> std::result::Result<f64, String> {
    match value {
        Value::Number(number) => number
            .as_f64()
            .ok_or_else(|| format!("{number} does not fit in a float")),
        Value::String(text) => {
            if let Ok(x) = f64::from_str(text) {
                return Ok(x);
            }
            let r = Rational::from_str(text)
                .map_err(|e| format!("cannot parse {text:?} as a number: {e}"))?;
            r.to_f64()
                .ok_or_else(|| format!("{text:?} does not fit in a float"))
        }
        other => Err(format!("expected a number, found {other}")),
    }
}

fn complex_element(value: &Value) -> std::result::Result<Complex64, String> {
    match value {
        Value::Number(number) => {
            let re = number
                .as_f64()
                .ok_or_else(|| format!("{number} does not fit in a float"))?;
            Ok(Complex64::new(re, 0.0))
        }
        Value::Array(pair) => {
            if pair.len() != 2 {
                return Err(format!(
                    "a complex element must be [re, im], found {} components",
                    pair.len()
                ));
            }
            let re = pair[0]
                .as_f64()
                .ok_or_else(|| format!("real part {} is not a number", pair[0]))?;
            let im = pair[1]
                .as_f64()
                .ok_or_else(|| format!("imaginary part {} is not a number", pair[1]))?;
            Ok(Complex64::new(re, im))
        }
        other => Err(format!("expected a number or [re, im], found {other}")),
    }
}

/// The JSON form of a pure state: side, particle count, and amplitudes as
/// `[re, im]` pairs in vectorization order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub side: usize,
    pub particles: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateDocument {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_error(format!("invalid state document: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Storage {
            path: path.to_path_buf(),
            source,
        })?;
        StateDocument::from_json_str(&text)
    }

    pub fn to_state(&self) -> Result<QuditState> {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        QuditState::new(self.side, self.particles, amplitudes)
    }

    pub fn from_state(state: &QuditState) -> Self {
        StateDocument {
            side: state.side(),
            particles: state.particles(),
            amplitudes: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("state document serializes")
        } else {
            serde_json::to_string(self).expect("state document serializes")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypermatrix::MultiIndex;
    use crate::quantum::bell;

    fn index(components: &[usize]) -> MultiIndex {
        MultiIndex::new(components.to_vec())
    }

    #[test]
    fn parses_a_float_document() {
        let text = r#"{"shape": [2, 2], "backend": "float64", "data": [1, 2, 3, 4]}"#;
        let doc = TensorDocument::from_json_str(text).unwrap();
        assert_eq!(doc.shape(), &[2, 2]);
        assert_eq!(doc.declared_backend(), Some(Backend::Float64));
        let a = doc.float_hypermatrix().unwrap();
        assert_eq!(a.get(&index(&[2, 1])).unwrap(), &2.0);
        assert_eq!(a.get(&index(&[1, 2])).unwrap(), &3.0);
    }

    #[test]
    fn rational_documents_are_exact_at_any_size() {
        let text = r#"{
            "shape": [2],
            "data": ["123456789012345678901234567890/7", "-3"]
        }"#;
        let doc = TensorDocument::from_json_str(text).unwrap();
        let a = doc.rational_hypermatrix().unwrap();
        let expected = Rational::from_str("123456789012345678901234567890/7").unwrap();
        assert_eq!(a.get(&index(&[1])).unwrap(), &expected);
        assert_eq!(a.get(&index(&[2])).unwrap(), &Rational::from_int(-3));
    }

    #[test]
    fn rational_mode_rejects_lossy_floats() {
        let text = r#"{"shape": [2], "data": [1, 0.5]}"#;
        let doc = TensorDocument::from_json_str(text).unwrap();
        let err = doc.rational_hypermatrix().unwrap_err();
        let message = err.to_string();
        assert!(message.contains("element 2"), "{message}");
        assert!(message.contains("0.5"), "{message}");
    }

    #[test]
    fn complex_elements_take_two_forms() {
        let text = r#"{"shape": [3], "data": [2, [0, 1], [-1.5, 2.5]]}"#;
        let doc = TensorDocument::from_json_str(text).unwrap();
        let a = doc.complex_hypermatrix().unwrap();
        assert_eq!(a.get(&index(&[1])).unwrap(), &Complex64::new(2.0, 0.0));
        assert_eq!(a.get(&index(&[2])).unwrap(), &Complex64::new(0.0, 1.0));
        assert_eq!(a.get(&index(&[3])).unwrap(), &Complex64::new(-1.5, 2.5));
    }

    #[test]
    fn malformed_complex_elements_name_their_position() {
        let text = r#"{"shape": [2], "data": [[1, 2], [1]]}"#;
        let doc = TensorDocument::from_json_str(text).unwrap();
        let message = doc.complex_hypermatrix().unwrap_err().to_string();
        assert!(message.contains("element 2"), "{message}");
    }

    #[test]
    fn both_layouts_describe_the_same_tensor() {
        // The 2x3 matrix [[1, 2, 3], [4, 5, 6]].
        let column_major = r#"{"shape": [2, 3], "data": [1, 4, 2, 5, 3, 6]}"#;
        let row_major = r#"{
            "shape": [2, 3],
            "layout": "last-axis-fastest",
            "data": [1, 2, 3, 4, 5, 6]
        }"#;
        let a = TensorDocument::from_json_str(column_major)
            .unwrap()
            .float_hypermatrix()
            .unwrap();
        let b = TensorDocument::from_json_str(row_major)
            .unwrap()
            .float_hypermatrix()
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(b.get(&index(&[1, 3])).unwrap(), &3.0);
        assert_eq!(b.get(&index(&[2, 1])).unwrap(), &4.0);
    }

    #[test]
    fn order_three_layouts_agree() {
        let values: Vec<i64> = (1..=8).collect();
        let first = format!(
            r#"{{"shape": [2, 2, 2], "data": {:?}}}"#,
            values
        );
        // Reading i3 fastest visits psi positions 1, 5, 3, 7, 2, 6, 4, 8.
        let last = r#"{
            "shape": [2, 2, 2],
            "layout": "last-axis-fastest",
            "data": [1, 5, 3, 7, 2, 6, 4, 8]
        }"#;
        let a = TensorDocument::from_json_str(&first)
            .unwrap()
            .rational_hypermatrix()
            .unwrap();
        let b = TensorDocument::from_json_str(last)
            .unwrap()
            .rational_hypermatrix()
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn missing_keys_are_named() {
        let message = TensorDocument::from_json_str(r#"{"data": [1]}"#)
            .unwrap_err()
            .to_string();
        assert!(message.contains("shape"), "{message}");
        let message = TensorDocument::from_json_str(r#"{"shape": [1]}"#)
            .unwrap_err()
            .to_string();
        assert!(message.contains("data"), "{message}");
    }

    #[test]
    fn length_mismatch_is_reported() {
        let text = r#"{"shape": [2, 2], "data": [1, 2, 3]}"#;
        let message = TensorDocument::from_json_str(text).unwrap_err().to_string();
        assert!(message.contains("3 elements"), "{message}");
        assert!(message.contains("needs 4"), "{message}");
    }

    #[test]
    fn json_syntax_errors_become_parse_errors() {
        let err = TensorDocument::from_json_str("{\"shape\": [2,").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn round_trips_every_backend() {
        let shape = Shape::new(vec![2, 2]).unwrap();
        let rational = Hypermatrix::new(
            shape.clone(),
            vec![
                Rational::from_str("1/3").unwrap(),
                Rational::from_int(-2),
                Rational::from_int(0),
                Rational::from_str("7/5").unwrap(),
            ],
        )
        .unwrap();
        let doc = TensorDocument::from_rational(&rational);
        let back = TensorDocument::from_json_str(&doc.to_json(true))
            .unwrap()
            .rational_hypermatrix()
            .unwrap();
        assert_eq!(rational, back);

        let float = Hypermatrix::new(shape.clone(), vec![0.1, -2.75, 3.0, 1e-30]).unwrap();
        let doc = TensorDocument::from_f64(&float);
        let back = TensorDocument::from_json_str(&doc.to_json(false))
            .unwrap()
            .float_hypermatrix()
            .unwrap();
        assert_eq!(float, back);

        let complex = Hypermatrix::new(
            shape,
            vec![
                Complex64::new(1.0, -1.0),
                Complex64::new(0.0, 0.25),
                Complex64::new(-3.5, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let doc = TensorDocument::from_complex(&complex);
        let back = TensorDocument::from_json_str(&doc.to_json(true))
            .unwrap()
            .complex_hypermatrix()
            .unwrap();
        assert_eq!(complex, back);
    }

    #[test]
    fn missing_files_are_storage_errors() {
        let err = TensorDocument::from_path(Path::new("/no/such/file.json")).unwrap_err();
        assert!(matches!(err, Error::Storage { .. }));
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn state_documents_round_trip() {
        let state = bell();
        let doc = StateDocument::from_state(&state);
        let text = doc.to_json(true);
        let back = StateDocument::from_json_str(&text).unwrap().to_state().unwrap();
        assert_eq!(state, back);
    }

    #[test]
    fn state_documents_enforce_normalization() {
        let doc = StateDocument {
            side: 2,
            particles: 2,
            amplitudes: vec![[1.0, 0.0]; 4],
        };
        assert!(matches!(doc.to_state(), Err(Error::NotNormalized { .. })));
    }
}
