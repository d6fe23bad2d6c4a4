//! The four commands, independent of argument parsing and I/O.

use std::fmt::Write as _;

use hurwitz::generate::{self, Kind};
use hurwitz::herglotz::HnStatus;
use hurwitz::stability::{self, AnalyzeOptions, CriterionSet, Verdict};
use hurwitz::{MatrixPolynomial, RationalMatrixFraction, Tolerances};
use serde_json::{json, Map, Value};

use crate::format::{self, FormatError, FractionFile, PolynomialFile};
use crate::report::{self, FractionSections};

/// Exit code for parse, validation and analysis errors.
pub const EXIT_ERROR: i32 = 3;

/// Largest Markov index `markov` will compute.
pub const MARKOV_CAP: usize = 256;

/// Environment variable overriding the default definiteness tolerance.
pub const TOL_ENV: &str = "HURWITZ_TOL_DEF";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("{0}")]
    Analysis(#[from] hurwitz::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: Tolerances,
    /// Side of the n×n scan grid replacing the default one.
    pub grid: Option<usize>,
    pub criteria: CriterionSet,
    pub oracle: bool,
    /// Add Markov, Hankel, Bezout and Herglotz sections for each associated fraction.
    pub fractions: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Self { tol: Tolerances::default(), grid: None, criteria: CriterionSet::All, oracle: true, fractions: false }
    }
}

/// Report, exit code and text summary of one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
    pub summary: String,
}

/// Default tolerances, with the definiteness tolerance taken from
/// `HURWITZ_TOL_DEF` when set.
pub fn default_tolerances(env: Option<&str>) -> Result<Tolerances, CliError> {
    let tol = Tolerances::default();
    match env {
        None => Ok(tol),
        Some(s) => match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(tol.with_definiteness(x)),
            _ => Err(CliError::Usage(format!("{TOL_ENV} must be a positive number, got {s:?}"))),
        },
    }
}

pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Stable => 0,
        Verdict::Unstable => 1,
        Verdict::Inconclusive => 2,
    }
}

pub fn hn_code(s: HnStatus) -> i32 {
    match s {
        HnStatus::Certified => 0,
        HnStatus::NotHn => 1,
        HnStatus::Inconclusive => 2,
    }
}

fn header(command: &str, input: Value, settings: &Settings) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schemaVersion".into(), json!(report::SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("input".into(), input);
    m.insert("tolerances".into(), report::tolerances(&settings.tol, settings.grid));
    m
}

fn insert_sections(out: &mut Map<String, Value>, sections: Vec<(&str, FractionSections)>) {
    let mut markov = Map::new();
    let mut hankel = Map::new();
    let mut bezout = Map::new();
    let mut herglotz = Map::new();
    for (label, s) in sections {
        markov.insert(label.into(), s.markov);
        hankel.insert(label.into(), s.hankel);
        bezout.insert(label.into(), s.bezout);
        herglotz.insert(label.into(), s.herglotz);
    }
    out.insert("markov".into(), Value::Object(markov));
    out.insert("hankel".into(), Value::Object(hankel));
    out.insert("bezout".into(), Value::Object(bezout));
    out.insert("herglotz".into(), Value::Object(herglotz));
}

fn format_complex(re: f64, im: f64) -> String {
    if im.abs() < 5e-11 * re.abs().max(1.0) {
        format!("{re:.10}")
    } else {
        format!("{re:.10} {} {:.10}i", if im < 0.0 { '-' } else { '+' }, im.abs())
    }
}

type FractionBuilder = fn(&MatrixPolynomial, &Tolerances) -> hurwitz::Result<RationalMatrixFraction>;

/// Runs the stability criteria (and optionally the fraction analyses) on a
/// polynomial file.
pub fn analyze(path: &str, text: &str, settings: &Settings) -> Result<Outcome, CliError> {
    let file = format::parse_polynomial(text)?;
    let f = &file.polynomial;
    let opts = AnalyzeOptions { criteria: settings.criteria, oracle: settings.oracle };
    let st = stability::analyze_with(f, &settings.tol, &opts)?;

    let mut out = header("analyze", report::input(path, text, file.name.as_deref()), settings);
    out.insert("polynomial".into(), json!({ "p": f.p(), "degree": f.degree().unwrap_or(0) }));
    out.insert("criterionSet".into(), json!(settings.criteria.name()));
    out.insert("stability".into(), report::stability(&st));
    out.insert("oracle".into(), st.oracle.as_ref().map_or(Value::Null, report::oracle));
    let spectrum = f.spectrum(&settings.tol);
    out.insert(
        "spectrum".into(),
        match &spectrum {
            Ok(s) => report::spectrum(s),
            Err(e) => json!({ "error": e.to_string() }),
        },
    );
    if settings.fractions {
        let builders: [(&str, FractionBuilder); 4] = [
            ("R_F", stability::build_rf),
            ("R_zF", stability::build_rzf),
            ("Rt_F", stability::build_rf_tilde),
            ("Rt_zF", stability::build_rzf_tilde),
        ];
        let mut sections = Vec::new();
        for (label, build) in builders {
            let s = match build(f, &settings.tol) {
                Ok(r) => report::fraction_sections(&r, &settings.tol, settings.grid).0,
                Err(e) => {
                    let err = json!({ "error": e.to_string() });
                    FractionSections { markov: err.clone(), hankel: err.clone(), bezout: err.clone(), herglotz: err }
                }
            };
            sections.push((label, s));
        }
        insert_sections(&mut out, sections);
    }
    out.insert("warnings".into(), json!([]));

    let mut summary = String::new();
    let _ = writeln!(summary, "{}: p = {}, degree {}", file.name.as_deref().unwrap_or(path), f.p(), st.degree);
    let _ = writeln!(summary, "verdict: {} (decided by {})", st.verdict, st.criterion);
    for c in &st.criteria {
        let note = c.note.as_deref().map(|n| format!("  [{n}]")).unwrap_or_default();
        let _ = writeln!(summary, "  {:<12} {}{note}", c.criterion.name(), c.verdict);
    }
    for s in &st.skipped {
        let _ = writeln!(summary, "  {:<12} skipped: {}", s.criterion.name(), s.reason);
    }
    if let Some(o) = &st.oracle {
        let max_re = o.max_re.map_or("-".to_string(), |x| format!("{x:.6e}"));
        let _ = writeln!(summary, "oracle: {} (max Re = {max_re})", o.verdict);
    }
    if let Ok(s) = &spectrum {
        let _ = writeln!(summary, "spectrum ({} zeros):", s.total_count);
        for e in &s.entries {
            let _ = writeln!(summary, "  {}  x{}", format_complex(e.value.re, e.value.im), e.multiplicity);
        }
    }
    for a in &st.advisories {
        let _ = writeln!(summary, "advisory: {a}");
    }
    Ok(Outcome { code: verdict_code(st.verdict), report: Value::Object(out), summary })
}

/// Classifies Q·P⁻¹ from a fraction file.
pub fn hn(path: &str, text: &str, settings: &Settings) -> Result<Outcome, CliError> {
    let file = format::parse_fraction(text)?;
    let r = RationalMatrixFraction::new(file.numerator.clone(), file.denominator.clone())?;
    let sa = r.self_adjointness(&settings.tol);
    if !sa.self_adjoint {
        return Err(hurwitz::Error::NotSelfAdjoint { defect: sa.coefficient_defect.max(sa.sampled_defect) }.into());
    }
    let (sections, verdict) = report::fraction_sections(&r, &settings.tol, settings.grid);
    let status = match &verdict {
        Some(v) => v.status,
        None => {
            return Err(CliError::Usage(sections.herglotz["error"].as_str().unwrap_or("classification failed").into()))
        }
    };
    let mut out = header("hn", report::input(path, text, file.name.as_deref()), settings);
    out.insert(
        "fraction".into(),
        json!({
            "p": r.p(),
            "numeratorDegree": file.numerator.degree(),
            "denominatorDegree": file.denominator.degree(),
        }),
    );
    out.insert("status".into(), json!(status.name()));
    let herglotz = sections.herglotz.clone();
    insert_sections(&mut out, vec![("R", sections)]);
    out.insert("warnings".into(), json!([]));

    let mut summary = String::new();
    let _ = writeln!(summary, "{}: p = {}", file.name.as_deref().unwrap_or(path), r.p());
    let _ = writeln!(summary, "status: {status}");
    if let Some(v) = &verdict {
        for c in &v.checks {
            let _ = writeln!(summary, "  {:<8} {}  {}", c.outcome.name(), c.name, c.detail);
        }
    }
    if let Some(poles) = herglotz["partialFraction"]["poles"].as_array() {
        let _ = writeln!(summary, "poles:");
        for p in poles {
            let _ = writeln!(summary, "  {}  mass {}", p["lambda"], p["mass"]);
        }
    }
    Ok(Outcome { code: hn_code(status), report: Value::Object(out), summary })
}

/// Markov parameters s₋ₖ … s_N and the classes of requested Hankel matrices
/// H_k. A polynomial file is read as its fraction R_F. Warnings go to the
/// report only; the summary leaves them to the caller.
pub fn markov(path: &str, text: &str, n: usize, hankels: &[usize], settings: &Settings) -> Result<Outcome, CliError> {
    let probe: Value = serde_json::from_str(text).map_err(FormatError::from)?;
    let (name, label, r) = if probe.get("numerator").is_some() {
        let FractionFile { name, numerator, denominator } = format::parse_fraction(text)?;
        (name, "R", RationalMatrixFraction::new(numerator, denominator)?)
    } else {
        let PolynomialFile { name, polynomial, .. } = format::parse_polynomial(text)?;
        (name, "R_F", stability::build_rf(&polynomial, &settings.tol)?)
    };
    let mut warnings = Vec::new();
    let mut n_used = n;
    if n > MARKOV_CAP {
        warnings.push(format!("N = {n} exceeds the cap; computed up to N = {MARKOV_CAP}"));
        n_used = MARKOV_CAP;
    }
    let mut hankel_out = Vec::new();
    let mut usable = Vec::new();
    for &k in hankels {
        if 2 * k > MARKOV_CAP {
            warnings.push(format!("H_{k} needs s_{} beyond the cap; skipped", 2 * k));
        } else {
            usable.push(k);
        }
    }
    let top = usable.iter().map(|k| 2 * k).fold(n_used, usize::max);
    let seq = r.markov_parameters(top)?;
    for &k in &usable {
        let h = seq.hankel(k, &settings.tol)?;
        hankel_out.push(report::hankel(&h));
    }
    let shown = r.markov_parameters(n_used)?;

    let mut out = header("markov", report::input(path, text, name.as_deref()), settings);
    out.insert("requested".into(), json!(n));
    let mut markov = Map::new();
    markov.insert(label.into(), report::markov(&shown));
    out.insert("markov".into(), Value::Object(markov));
    let mut hankel = Map::new();
    hankel.insert(label.into(), Value::Array(hankel_out.clone()));
    out.insert("hankel".into(), Value::Object(hankel));
    out.insert("warnings".into(), json!(warnings));

    let mut summary = String::new();
    for (j, c) in shown.poly_part().iter().enumerate() {
        let _ = writeln!(summary, "s_{} = {}", -(j as i64) - 1, report::matrix(c));
    }
    for (i, c) in shown.proper().iter().enumerate() {
        let _ = writeln!(summary, "s_{i} = {}", report::matrix(c));
    }
    for (k, h) in usable.iter().zip(&hankel_out) {
        let _ = writeln!(summary, "H_{k}: {} (margin {})", h["class"].as_str().unwrap_or("unclassified"), h["margin"]);
    }
    Ok(Outcome { code: 0, report: Value::Object(out), summary })
}

/// Canonical text of a seeded random polynomial file.
pub fn gen(p: usize, degree: usize, kind: Kind, seed: u64) -> Result<String, CliError> {
    if !(1..=6).contains(&p) || !(1..=10).contains(&degree) {
        return Err(CliError::Usage(format!("need 1 <= p <= 6 and 1 <= degree <= 10, got p = {p}, degree = {degree}")));
    }
    let polynomial = generate::random_structured(p, degree, seed, kind);
    Ok(format::write_polynomial(&PolynomialFile {
        name: Some(format!("{} p={p} n={degree} seed={seed}", kind.name())),
        seed: Some(seed),
        kind: Some(kind.name().into()),
        polynomial,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_override() {
        assert_eq!(default_tolerances(None).unwrap(), Tolerances::default());
        assert_eq!(default_tolerances(Some("1e-6")).unwrap().definiteness, 1e-6);
        assert!(default_tolerances(Some("-1")).is_err());
        assert!(default_tolerances(Some("abc")).is_err());
    }

    #[test]
    fn gen_is_deterministic() {
        let a = gen(2, 4, Kind::Stable, 11).unwrap();
        assert_eq!(a, gen(2, 4, Kind::Stable, 11).unwrap());
        assert_ne!(a, gen(2, 4, Kind::Stable, 12).unwrap());
        assert!(gen(0, 4, Kind::Stable, 1).is_err());
    }

    #[test]
    fn quadratic_is_stable() {
        let text = r#"{"p": 1, "degree": 2, "coefficients": [[[[1, 0]]], [[[3, 0]]], [[[2, 0]]]]}"#;
        let out = analyze("q.json", text, &Settings::default()).unwrap();
        assert_eq!(out.code, 0);
        assert_eq!(out.report["stability"]["verdict"], "Stable");
    }
}
