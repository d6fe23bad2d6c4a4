//! Polynomial and fraction files: JSON with complex entries as `[re, im]`.
//!
//! ```json
//! {
//!   "p": 1,
//!   "degree": 2,
//!   "name": "z^2 + 3z + 2",
//!   "coefficients": [
//!     [[[1.0, 0.0]]],
//!     [[[3.0, 0.0]]],
//!     [[[2.0, 0.0]]]
//!   ]
//! }
//! ```
//!
//! Coefficients are listed leading first. Fraction files carry `numerator`
//! and `denominator` objects with their own `degree` and `coefficients`.

use std::fmt::Write as _;

use hurwitz::{c64, CMat, MatrixPolynomial};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    At { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the message
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        Self::At { line: e.line(), column: e.column(), message }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialFile {
    pub name: Option<String>,
    pub seed: Option<u64>,
    pub kind: Option<String>,
    pub polynomial: MatrixPolynomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FractionFile {
    pub name: Option<String>,
    pub numerator: MatrixPolynomial,
    pub denominator: MatrixPolynomial,
}

#[derive(Deserialize)]
struct Entry(f64, f64);

#[derive(Deserialize)]
#[serde(try_from = "Vec<Vec<Entry>>")]
struct Matrix(CMat);

impl TryFrom<Vec<Vec<Entry>>> for Matrix {
    type Error = String;

    fn try_from(rows: Vec<Vec<Entry>>) -> Result<Self, String> {
        let n = rows.len();
        if n == 0 {
            return Err("empty matrix".into());
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(format!("matrix has {n} rows but row {i} has {} entries", r.len()));
        }
        Ok(Matrix(CMat::from_fn(n, n, |i, j| c64(rows[i][j].0, rows[i][j].1))))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolynomialFile {
    p: usize,
    degree: usize,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    kind: Option<String>,
    coefficients: Vec<Matrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPart {
    degree: usize,
    coefficients: Vec<Matrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFractionFile {
    p: usize,
    #[serde(default)]
    name: Option<String>,
    numerator: RawPart,
    denominator: RawPart,
}

fn build(what: &str, p: usize, degree: usize, coeffs: Vec<Matrix>) -> Result<MatrixPolynomial, FormatError> {
    if p == 0 {
        return Err(FormatError::Invalid("p must be positive".into()));
    }
    if coeffs.len() != degree + 1 {
        return Err(FormatError::Invalid(format!(
            "{what}: degree {degree} needs {} coefficient matrices, found {}",
            degree + 1,
            coeffs.len()
        )));
    }
    if let Some((k, m)) = coeffs.iter().enumerate().find(|(_, m)| m.0.nrows() != p) {
        return Err(FormatError::Invalid(format!("{what}: coefficient {k} is {0}x{0}, expected {p}x{p}", m.0.nrows())));
    }
    if degree > 0 && coeffs[0].0.iter().all(|z| *z == c64(0.0, 0.0)) {
        return Err(FormatError::Invalid(format!(
            "{what}: leading coefficient of a degree {degree} polynomial is zero"
        )));
    }
    MatrixPolynomial::new(p, coeffs.into_iter().map(|m| m.0).collect()).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn parse_polynomial(text: &str) -> Result<PolynomialFile, FormatError> {
    let raw: RawPolynomialFile = serde_json::from_str(text)?;
    let polynomial = build("coefficients", raw.p, raw.degree, raw.coefficients)?;
    Ok(PolynomialFile { name: raw.name, seed: raw.seed, kind: raw.kind, polynomial })
}

pub fn parse_fraction(text: &str) -> Result<FractionFile, FormatError> {
    let raw: RawFractionFile = serde_json::from_str(text)?;
    let numerator = build("numerator", raw.p, raw.numerator.degree, raw.numerator.coefficients)?;
    let denominator = build("denominator", raw.p, raw.denominator.degree, raw.denominator.coefficients)?;
    Ok(FractionFile { name: raw.name, numerator, denominator })
}

fn number(x: f64) -> String {
    serde_json::to_string(&x).expect("finite")
}

fn write_matrix(out: &mut String, m: &CMat, indent: &str) {
    out.push('[');
    for i in 0..m.nrows() {
        if i > 0 {
            out.push_str(",\n");
            out.push_str(indent);
            out.push(' ');
        }
        out.push('[');
        for j in 0..m.ncols() {
            if j > 0 {
                out.push_str(", ");
            }
            let z = m[(i, j)];
            let _ = write!(out, "[{}, {}]", number(z.re), number(z.im));
        }
        out.push(']');
    }
    out.push(']');
}

fn write_coefficients(out: &mut String, f: &MatrixPolynomial, indent: &str) {
    let inner = format!("{indent}  ");
    out.push_str("[\n");
    let coeffs: Vec<CMat> = match f.degree() {
        Some(_) => f.coeffs().to_vec(),
        None => vec![CMat::zeros(f.p(), f.p())],
    };
    for (k, c) in coeffs.iter().enumerate() {
        out.push_str(&inner);
        write_matrix(out, c, &inner);
        if k + 1 < coeffs.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str(indent);
    out.push(']');
}

fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Canonical text of a polynomial file; parsing it back and writing again
/// gives the same bytes.
pub fn write_polynomial(file: &PolynomialFile) -> String {
    let f = &file.polynomial;
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"p\": {},", f.p());
    let _ = writeln!(out, "  \"degree\": {},", f.degree().unwrap_or(0));
    if let Some(name) = &file.name {
        let _ = writeln!(out, "  \"name\": {},", string(name));
    }
    if let Some(seed) = file.seed {
        let _ = writeln!(out, "  \"seed\": {seed},");
    }
    if let Some(kind) = &file.kind {
        let _ = writeln!(out, "  \"kind\": {},", string(kind));
    }
    out.push_str("  \"coefficients\": ");
    write_coefficients(&mut out, f, "  ");
    out.push_str("\n}\n");
    out
}

/// Canonical text of a fraction file.
pub fn write_fraction(file: &FractionFile) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"p\": {},", file.denominator.p());
    if let Some(name) = &file.name {
        let _ = writeln!(out, "  \"name\": {},", string(name));
    }
    for (key, f, last) in [("numerator", &file.numerator, false), ("denominator", &file.denominator, true)] {
        let _ = writeln!(out, "  \"{key}\": {{");
        let _ = writeln!(out, "    \"degree\": {},", f.degree().unwrap_or(0));
        out.push_str("    \"coefficients\": ");
        write_coefficients(&mut out, f, "    ");
        out.push_str(if last { "\n  }\n" } else { "\n  },\n" });
    }
    out.push_str("}\n");
    out
}
