//! wasm-bindgen entry points for `www/index.html`.
//!
//! Every function returns a JSON string `{"code", "summary", "report"}` or
//! throws the error message.

use hurwitz::generate::Kind;
use hurwitz_cli::commands::{self, Outcome, Settings};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn settings(tol_def: f64) -> Settings {
    let mut s = Settings::default();
    if tol_def.is_finite() && tol_def > 0.0 {
        s.tol = s.tol.with_definiteness(tol_def);
    }
    s
}

fn pack(outcome: Outcome) -> String {
    json!({ "code": outcome.code, "summary": outcome.summary, "report": outcome.report }).to_string()
}

/// Stability of a polynomial file; `fractions` adds the per-fraction sections.
pub fn analyze_text(text: &str, tol_def: f64, fractions: bool) -> Result<String, String> {
    let s = Settings { fractions, ..settings(tol_def) };
    commands::analyze("input", text, &s).map(pack).map_err(|e| e.to_string())
}

/// HN classification of a fraction file.
pub fn hn_text(text: &str, tol_def: f64) -> Result<String, String> {
    commands::hn("input", text, &settings(tol_def)).map(pack).map_err(|e| e.to_string())
}

pub fn gen_text(p: usize, degree: usize, kind: &str, seed: u64) -> Result<String, String> {
    let kind = Kind::from_name(kind).ok_or_else(|| format!("unknown kind {kind:?}"))?;
    commands::gen(p, degree, kind, seed).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn analyze(text: &str, tol_def: f64, fractions: bool) -> Result<String, JsError> {
    analyze_text(text, tol_def, fractions).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hn(text: &str, tol_def: f64) -> Result<String, JsError> {
    hn_text(text, tol_def).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn generate(p: usize, degree: usize, kind: &str, seed: u32) -> Result<String, JsError> {
    gen_text(p, degree, kind, u64::from(seed)).map_err(|e| JsError::new(&e))
}
