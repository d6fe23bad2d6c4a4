//! JSON reports. Key names are camelCase and stable; see `docs/report-schema.json`.

use hurwitz::bezout::{self, CoprimeEvidence};
use hurwitz::check::Check;
use hurwitz::herglotz::{self, HnVerdict, ImagScan, PartialFraction, WhwCheck};
use hurwitz::markov::{BlockHankel, Inertia};
use hurwitz::stability::{CriterionReport, OracleResult, StabilityReport};
use hurwitz::{CMat, MarkovSequence, RationalMatrixFraction, Spectrum, Tolerances, C64};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

pub fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix(m: &CMat) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect())).collect())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Echo of the input file: where it came from, its digest and its text.
pub fn input(path: &str, text: &str, name: Option<&str>) -> Value {
    json!({
        "path": path,
        "name": name,
        "sha256": sha256_hex(text.as_bytes()),
        "bytes": text.len(),
        "text": text,
    })
}

pub fn tolerances(t: &Tolerances, grid: Option<usize>) -> Value {
    json!({
        "definiteness": t.definiteness,
        "rank": t.rank,
        "cluster": t.cluster,
        "trim": t.trim,
        "hermitian": t.hermitian,
        "regularity": t.regularity,
        "clusterGrowth": t.cluster_growth,
        "oracle": t.oracle,
        "grid": grid,
    })
}

pub fn check(c: &Check) -> Value {
    json!({ "name": c.name, "outcome": c.outcome.name(), "margin": c.margin, "detail": c.detail })
}

fn checks(cs: &[Check]) -> Value {
    Value::Array(cs.iter().map(check).collect())
}

pub fn spectrum(s: &Spectrum) -> Value {
    json!({
        "count": s.total_count,
        "zeros": s.entries.iter().map(|e| json!({ "value": complex(e.value), "multiplicity": e.multiplicity })).collect::<Vec<_>>(),
    })
}

fn inertia(i: Inertia) -> Value {
    json!({ "positive": i.positive, "negative": i.negative, "zero": i.zero })
}

pub fn hankel(h: &BlockHankel) -> Value {
    let d = h.definiteness.as_ref();
    json!({
        "j": h.j,
        "k": h.k,
        "class": d.map(|d| d.class.name()),
        "margin": d.map(|d| d.margin),
        "inertia": d.map(|d| inertia(d.inertia)),
        "eigenvalues": d.map(|d| d.eigenvalues.clone()),
        "hermitianDefect": h.hermitian_defect,
        "zeroFilled": h.zero_filled,
    })
}

pub fn coprime(c: &CoprimeEvidence) -> Value {
    json!({ "coprime": c.coprime, "method": c.method.to_string(), "rank": c.rank, "size": c.size, "gap": c.gap })
}

pub fn criterion(r: &CriterionReport) -> Value {
    json!({
        "criterion": r.criterion.name(),
        "statement": r.criterion.statement(),
        "verdict": r.verdict.name(),
        "applicable": r.applicable,
        "note": r.note,
        "checks": checks(&r.checks),
        "consequences": checks(&r.consequences),
        "hankels": r.hankels.iter().map(|h| {
            let mut v = hankel(&h.hankel);
            v["label"] = json!(h.label);
            v
        }).collect::<Vec<_>>(),
        "limits": r.limits.iter().map(|l| json!({
            "label": l.label,
            "value": matrix(&l.value),
            "eigenvalues": l.eigenvalues,
            "class": l.class.map(|c| c.name()),
        })).collect::<Vec<_>>(),
        "spectra": r.spectra.iter().map(|s| json!({ "part": s.part, "spectrum": spectrum(&s.spectrum) })).collect::<Vec<_>>(),
        "selfAdjoint": r.self_adjoint.iter().map(|s| json!({
            "label": s.label,
            "selfAdjoint": s.result.self_adjoint,
            "coefficientDefect": s.result.coefficient_defect,
            "sampledDefect": s.result.sampled_defect,
        })).collect::<Vec<_>>(),
        "hn": r.hn.iter().map(|h| json!({ "label": h.label, "status": h.verdict.status.name() })).collect::<Vec<_>>(),
        "coprime": r.coprime.as_ref().map(coprime),
    })
}

pub fn oracle(o: &OracleResult) -> Value {
    json!({ "verdict": o.verdict.name(), "maxRe": o.max_re, "spectrum": spectrum(&o.spectrum) })
}

pub fn stability(s: &StabilityReport) -> Value {
    json!({
        "verdict": s.verdict.name(),
        "decidedBy": s.criterion,
        "degree": s.degree,
        "p": s.p,
        "criteria": s.criteria.iter().map(criterion).collect::<Vec<_>>(),
        "skipped": s.skipped.iter().map(|k| json!({ "criterion": k.criterion.name(), "reason": k.reason })).collect::<Vec<_>>(),
        "oracleAgrees": s.oracle_agrees,
        "advisories": s.advisories,
    })
}

pub fn markov(seq: &MarkovSequence) -> Value {
    let poly: Vec<Value> = seq
        .poly_part()
        .iter()
        .enumerate()
        .map(|(j, c)| json!({ "index": -(j as i64) - 1, "value": matrix(c) }))
        .collect();
    let proper: Vec<Value> =
        seq.proper().iter().enumerate().map(|(i, c)| json!({ "index": i, "value": matrix(c) })).collect();
    json!({ "truncation": seq.truncation(), "polynomialPart": poly, "proper": proper })
}

fn scan(s: &ImagScan) -> Value {
    json!({ "minEig": s.min_eig, "minRelative": s.min_relative, "worstPoint": complex(s.worst_point), "points": s.points })
}

pub fn partial_fraction(pf: &PartialFraction, residual: f64) -> Value {
    json!({
        "slope": matrix(&pf.slope),
        "constant": matrix(&pf.constant),
        "poles": pf.poles.iter().map(|p| json!({
            "lambda": p.lambda,
            "mass": matrix(&p.mass),
            "multiplicity": p.multiplicity,
            "asymmetry": p.asymmetry,
            "zeroMass": p.zero_mass,
        })).collect::<Vec<_>>(),
        "residual": residual,
    })
}

fn whw(w: &WhwCheck) -> Value {
    json!({
        "residual": w.residual,
        "moments": matrix(&w.moments),
        "momentsClass": w.moments_class.map(|c| c.name()),
        "momentsMinEig": w.moments_min_eig,
        "momentsCholesky": w.moments_cholesky,
        "positiveDefinite": w.moments_positive_definite(),
    })
}

pub fn hn_verdict(v: &HnVerdict) -> Value {
    json!({
        "status": v.status.name(),
        "checks": checks(&v.checks),
        "consequences": checks(&v.consequences),
        "scan": v.scan.as_ref().map(scan),
        "coprime": v.coprime.as_ref().map(coprime),
    })
}

fn error(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

/// Markov, Hankel, Bezout and Herglotz sections of one fraction.
#[derive(Debug, Clone, Default)]
pub struct FractionSections {
    pub markov: Value,
    pub hankel: Value,
    pub bezout: Value,
    pub herglotz: Value,
}

/// Full analysis of Q·P⁻¹. `grid` replaces the default scan grid with
/// an n×n grid of the same radius.
pub fn fraction_sections(
    r: &RationalMatrixFraction,
    tol: &Tolerances,
    grid: Option<usize>,
) -> (FractionSections, Option<HnVerdict>) {
    let r = r.normalized();
    let m = r.denominator().degree().unwrap_or(0);
    let (markov_v, hankel_v) = match r.default_markov() {
        Ok(seq) => {
            let hankels: Vec<Value> =
                (0..m.max(1)).map(|k| seq.hankel(k, tol).map_or_else(error, |h| hankel(&h))).collect();
            (markov(&seq), Value::Array(hankels))
        }
        Err(e) => (error(&e), error(&e)),
    };
    let sa = r.self_adjointness(tol);
    let mut bez = Map::new();
    bez.insert(
        "selfAdjoint".into(),
        json!({ "selfAdjoint": sa.self_adjoint, "coefficientDefect": sa.coefficient_defect, "sampledDefect": sa.sampled_defect }),
    );
    bez.insert(
        "congruence".into(),
        bezout::hankel_congruence(&r, tol).map_or_else(error, |c| {
            json!({ "branch": format!("{:?}", c.branch), "residual": c.residual, "bezoutian": matrix(&c.lhs.data) })
        }),
    );
    bez.insert(
        "hankelInertia".into(),
        bezout::hankel_inertia(&r, tol).map_or(Value::Null, |h| {
            json!({
                "class": h.class.name(),
                "inertia": inertia(h.inertia),
                "bezoutian": inertia(h.bezoutian),
                "margin": h.margin,
                "branch": format!("{:?}", h.branch),
                "residual": h.residual,
            })
        }),
    );
    bez.insert("coprime".into(), coprime(&bezout::right_coprime(r.numerator(), r.denominator(), tol)));

    let (herglotz_v, verdict) = match herglotz::classify_hn(&r, tol) {
        Ok(mut v) => {
            if let Some(n) = grid {
                let rho = herglotz::grid_radius(r.denominator(), tol);
                v.scan = Some(herglotz::sample_imag_positivity(&r, &herglotz::upper_half_plane_grid(rho, n, n)));
            }
            let mut out = hn_verdict(&v);
            out["partialFraction"] = match herglotz::partial_fraction(&r, tol) {
                Ok(pf) => partial_fraction(&pf, herglotz::reconstruct_residual(&r, &pf)),
                Err(e) => error(e),
            };
            out["whw"] = herglotz::whw_identity_check(&r, tol).map_or_else(error, |w| whw(&w));
            (out, Some(v))
        }
        Err(e) => (error(e), None),
    };
    (FractionSections { markov: markov_v, hankel: hankel_v, bezout: Value::Object(bez), herglotz: herglotz_v }, verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hurwitz::linalg::real_matrix;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn matrices_are_rows_of_pairs() {
        let v = matrix(&real_matrix(2, 2, &[1.0, 2.0, 3.0, 4.0]));
        assert_eq!(v, json!([[[1.0, 0.0], [2.0, 0.0]], [[3.0, 0.0], [4.0, 0.0]]]));
    }

    #[test]
    fn non_finite_numbers_become_null() {
        assert_eq!(json!({ "x": f64::INFINITY })["x"], Value::Null);
    }
}
