//! Hurwitz stability criteria for monic matrix polynomials.
//!
//! With F(z) = F_e(z²) + z·F_o(z²) the criteria work on four fractions:
//!
//! | label   | fraction          |
//! |---------|-------------------|
//! | `R_F`   | −F_o·F_e⁻¹        |
//! | `R_zF`  | z·F_o·F_e⁻¹       |
//! | `Rt_F`  | F_e·F_o⁻¹         |
//! | `Rt_zF` | −F_e·(z·F_o)⁻¹    |
//!
//! Every criterion reports its conditions as [`Check`]s; the eigenvalue
//! oracle is kept separate and never feeds into a criterion.

use std::fmt;

use crate::bezout::{hankel_inertia, right_coprime, CoprimeEvidence, CoprimeMethod};
use crate::check::{Check, Outcome};
use crate::error::{Error, Result};
use crate::herglotz::{classify_hn, HnStatus, HnVerdict};
use crate::linalg::{self, CMat, C64};
use crate::markov::{classify, BlockHankel, Definiteness, RationalMatrixFraction, SelfAdjointness};
use crate::matpoly::{MatrixPolynomial, Simplicity, Spectrum};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    Unstable,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Self::Stable => "Stable",
            Self::Unstable => "Unstable",
            Self::Inconclusive => "Inconclusive",
        }
    }

    pub fn is_decisive(self) -> bool {
        self != Self::Inconclusive
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// H_{m−1}(R_F) ≺ 0 and H_{m−1}(R_zF) ≺ 0, deg F = 2m.
    MarkovEven,
    /// H_{m−1}(Rt_F) ≺ 0 and H_m(Rt_zF) ≺ 0, deg F = 2m+1.
    MarkovOdd,
    /// Odd degree through R_F, plus lim R_F ≺ 0.
    AltOdd,
    /// Even degree through Rt_F and Rt_zF, plus lim Rt_zF ≺ 0.
    AltEven,
    /// R_F is Herglotz–Nevanlinna with side conditions.
    Hn,
    /// Rt_zF is Herglotz–Nevanlinna with side conditions.
    HnTilde,
    /// Both fractions of the degree's parity are Herglotz–Nevanlinna.
    Combined,
}

impl Criterion {
    pub const ALL: [Criterion; 7] =
        [Self::MarkovEven, Self::MarkovOdd, Self::AltOdd, Self::AltEven, Self::Hn, Self::HnTilde, Self::Combined];

    pub fn name(self) -> &'static str {
        match self {
            Self::MarkovEven => "markov_even",
            Self::MarkovOdd => "markov_odd",
            Self::AltOdd => "alt_odd",
            Self::AltEven => "alt_even",
            Self::Hn => "hn",
            Self::HnTilde => "hn_tilde",
            Self::Combined => "combined",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Self::MarkovEven => "H_{m-1}(R_F) < 0 and H_{m-1}(R_zF) < 0",
            Self::MarkovOdd => "H_{m-1}(Rt_F) < 0 and H_m(Rt_zF) < 0",
            Self::AltOdd => "H_{m-1}(R_F) < 0, H_{m-1}(R_zF) < 0 and lim R_F < 0",
            Self::AltEven => "H_{m-2}(Rt_F) < 0, H_{m-1}(Rt_zF) < 0 and lim Rt_zF < 0",
            Self::Hn => {
                "R_F is HN, F_e and F_o right coprime, zeros of F_e negative, F_o regular (even) or lim R_F < 0 (odd)"
            }
            Self::HnTilde => {
                "Rt_zF is HN, F_e and F_o right coprime, zeros of F_o negative, F_e(0) invertible, lim Rt_zF < 0 (even)"
            }
            Self::Combined => "both fractions of the parity HN, F_e and z F_o right coprime, opposite part regular",
        }
    }

    /// Criteria that apply to a polynomial of this degree, primary first.
    pub fn for_degree(degree: usize) -> [Criterion; 5] {
        if degree % 2 == 0 {
            [Self::MarkovEven, Self::AltEven, Self::Hn, Self::HnTilde, Self::Combined]
        } else {
            [Self::MarkovOdd, Self::AltOdd, Self::Hn, Self::HnTilde, Self::Combined]
        }
    }

    pub fn run(self, f: &MatrixPolynomial, tol: &Tolerances) -> Result<CriterionReport> {
        match self {
            Self::MarkovEven => markov_criterion_even(f, tol),
            Self::MarkovOdd => markov_criterion_odd(f, tol),
            Self::AltOdd => alt_criterion_odd(f, tol),
            Self::AltEven => alt_criterion_even(f, tol),
            Self::Hn => hn_criterion(f, tol),
            Self::HnTilde => hn_criterion_tilde(f, tol),
            Self::Combined => combined_criterion(f, tol),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Even and odd parts of a monic polynomial of positive degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Parts {
    pub even: MatrixPolynomial,
    pub odd: MatrixPolynomial,
    pub degree: usize,
}

impl Parts {
    pub fn m(&self) -> usize {
        self.degree / 2
    }

    pub fn even_degree(&self) -> bool {
        self.degree % 2 == 0
    }

    fn expect_parity(&self, even: bool) -> Result<()> {
        if self.even_degree() == even {
            Ok(())
        } else {
            Err(Error::WrongParity { expected: if even { "even" } else { "odd" }, degree: self.degree })
        }
    }
}

pub fn split_parts(f: &MatrixPolynomial, tol: &Tolerances) -> Result<Parts> {
    if !f.is_monic(tol.hermitian) {
        let defect = f.leading().map_or(f64::INFINITY, |l| linalg::norm(&(l - linalg::identity(f.p()))));
        return Err(Error::NotMonic { defect });
    }
    let degree = f.degree().expect("monic implies nonzero");
    if degree == 0 {
        return Err(Error::WrongParity { expected: "positive", degree });
    }
    let (even, odd) = f.even_odd_split();
    Ok(Parts { even, odd, degree })
}

fn require_regular_even(parts: &Parts, tol: &Tolerances) -> Result<()> {
    if parts.even.is_regular(tol) {
        Ok(())
    } else {
        Err(Error::IrregularEvenPart)
    }
}

fn require_regular_odd(parts: &Parts, tol: &Tolerances) -> Result<()> {
    if parts.odd.is_regular(tol) {
        Ok(())
    } else {
        Err(Error::IrregularOddPart)
    }
}

fn fraction(q: MatrixPolynomial, p: MatrixPolynomial) -> Result<RationalMatrixFraction> {
    Ok(RationalMatrixFraction::new(q, p)?.normalized())
}

fn rf(parts: &Parts, tol: &Tolerances) -> Result<RationalMatrixFraction> {
    require_regular_even(parts, tol)?;
    fraction(-&parts.odd, parts.even.clone())
}

fn rzf(parts: &Parts, tol: &Tolerances) -> Result<RationalMatrixFraction> {
    require_regular_even(parts, tol)?;
    fraction(parts.odd.shift(1), parts.even.clone())
}

fn rf_tilde(parts: &Parts, tol: &Tolerances) -> Result<RationalMatrixFraction> {
    require_regular_odd(parts, tol)?;
    fraction(parts.even.clone(), parts.odd.clone())
}

fn rzf_tilde(parts: &Parts, tol: &Tolerances) -> Result<RationalMatrixFraction> {
    require_regular_odd(parts, tol)?;
    fraction(-&parts.even, parts.odd.shift(1))
}

/// R_F = −F_o·F_e⁻¹ with a monic denominator.
pub fn build_rf(f: &MatrixPolynomial, tol: &Tolerances) -> Result<RationalMatrixFraction> {
    rf(&split_parts(f, tol)?, tol)
}

/// R_zF = z·F_o·F_e⁻¹.
pub fn build_rzf(f: &MatrixPolynomial, tol: &Tolerances) -> Result<RationalMatrixFraction> {
    rzf(&split_parts(f, tol)?, tol)
}

/// Rt_F = F_e·F_o⁻¹.
pub fn build_rf_tilde(f: &MatrixPolynomial, tol: &Tolerances) -> Result<RationalMatrixFraction> {
    rf_tilde(&split_parts(f, tol)?, tol)
}

/// Rt_zF = −F_e·(z·F_o)⁻¹.
pub fn build_rzf_tilde(f: &MatrixPolynomial, tol: &Tolerances) -> Result<RationalMatrixFraction> {
    rzf_tilde(&split_parts(f, tol)?, tol)
}

/// A fraction whose denominator has a singular leading block cannot be
/// expanded at infinity; the criterion then does not apply.
fn attempt<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::NonInvertibleLeading { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedHankel {
    pub label: String,
    pub hankel: BlockHankel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Limit {
    pub label: String,
    pub value: CMat,
    pub eigenvalues: Vec<f64>,
    pub class: Option<Definiteness>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartSpectrum {
    pub part: String,
    pub spectrum: Spectrum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedSelfAdjointness {
    pub label: String,
    pub result: SelfAdjointness,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedHn {
    pub label: String,
    pub verdict: HnVerdict,
}

/// Outcome of one criterion with the witnesses behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub verdict: Verdict,
    /// False when a precondition (self-adjointness, an invertible leading
    /// block) does not hold; the verdict is then Inconclusive.
    pub applicable: bool,
    pub note: Option<String>,
    pub checks: Vec<Check>,
    /// Properties implied by a Stable verdict, re-verified. They never change it.
    pub consequences: Vec<Check>,
    pub hankels: Vec<NamedHankel>,
    pub limits: Vec<Limit>,
    pub spectra: Vec<PartSpectrum>,
    pub self_adjoint: Vec<NamedSelfAdjointness>,
    pub hn: Vec<NamedHn>,
    pub coprime: Option<CoprimeEvidence>,
}

impl CriterionReport {
    fn new(criterion: Criterion) -> Self {
        Self {
            criterion,
            verdict: Verdict::Inconclusive,
            applicable: true,
            note: None,
            checks: Vec::new(),
            consequences: Vec::new(),
            hankels: Vec::new(),
            limits: Vec::new(),
            spectra: Vec::new(),
            self_adjoint: Vec::new(),
            hn: Vec::new(),
            coprime: None,
        }
    }

    fn not_applicable(mut self, why: impl Into<String>) -> Self {
        self.applicable = false;
        self.verdict = Verdict::Inconclusive;
        self.note = Some(why.into());
        self
    }

    fn finish(mut self) -> Self {
        let outcomes = || self.checks.iter().map(|c| c.outcome);
        self.verdict = if outcomes().any(|o| o == Outcome::Fail) {
            Verdict::Unstable
        } else if outcomes().all(|o| matches!(o, Outcome::Pass | Outcome::Skipped)) {
            Verdict::Stable
        } else {
            Verdict::Inconclusive
        };
        self
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        crate::check::find(&self.checks, name)
    }

    fn self_adjoint(&mut self, label: &str, r: &RationalMatrixFraction, tol: &Tolerances) -> bool {
        let result = r.self_adjointness(tol);
        self.self_adjoint.push(NamedSelfAdjointness { label: label.to_string(), result });
        result.self_adjoint
    }

    /// H_k(R) ≺ 0; vacuous for k < 0. For k = deg P − 1 the inertia is read
    /// from the Bezoutian; the Hankel matrix is kept as a witness.
    fn hankel_condition(&mut self, label: &str, r: &RationalMatrixFraction, k: i64, tol: &Tolerances) -> Result<()> {
        let name = format!("H_{k}({label})");
        if k < 0 {
            self.checks.push(Check::new(name, Outcome::Pass, "vacuous"));
            return Ok(());
        }
        let h = r.default_markov()?.hankel(k as usize, tol)?;
        let top = r.denominator().signed_degree() - 1 == k;
        let (class, margin, via) = match hankel_inertia(r, tol).filter(|_| top) {
            Some(hi) => (Some(hi.class), hi.margin, "Bezoutian"),
            None => (h.class(), h.definiteness.as_ref().map_or(0.0, |d| d.margin), "Hankel"),
        };
        let (outcome, detail) = match class {
            Some(Definiteness::NegDef) => (Outcome::Pass, format!("negative definite ({via})")),
            Some(c) if c == Definiteness::Zero || c.has_positive_eigenvalue() => {
                (Outcome::Fail, format!("{} ({via})", c.name()))
            }
            Some(c) => (Outcome::Marginal, format!("{} within tolerance of singular ({via})", c.name())),
            None => (Outcome::Marginal, format!("not Hermitian (defect {:.3e})", h.hermitian_defect)),
        };
        self.checks.push(Check::new(name.clone(), outcome, detail).with_margin(margin));
        self.hankels.push(NamedHankel { label: name, hankel: h });
        Ok(())
    }

    /// lim_{z→∞} R(z) ≺ 0.
    fn limit_condition(&mut self, label: &str, r: &RationalMatrixFraction, tol: &Tolerances) -> Result<()> {
        let name = format!("lim {label}");
        let Some(value) = r.limit_at_infinity()? else {
            self.checks.push(Check::new(name, Outcome::Fail, "no finite limit"));
            return Ok(());
        };
        let scale = linalg::norm(&value);
        let (outcome, detail, class, eigenvalues, margin) = match classify(&value, scale, tol) {
            Ok(rep) => {
                let outcome = match rep.class {
                    Definiteness::NegDef => Outcome::Pass,
                    c if c == Definiteness::Zero || c.has_positive_eigenvalue() => Outcome::Fail,
                    _ => Outcome::Marginal,
                };
                (outcome, rep.class.name().to_string(), Some(rep.class), rep.eigenvalues, rep.margin)
            }
            Err(e) => (Outcome::Marginal, e.to_string(), None, Vec::new(), 0.0),
        };
        self.checks.push(Check::new(name.clone(), outcome, detail).with_margin(margin));
        self.limits.push(Limit { label: name, value, eigenvalues, class });
        Ok(())
    }

    fn hn_condition(&mut self, label: &str, r: &RationalMatrixFraction, tol: &Tolerances) {
        let name = format!("{label} is HN");
        match classify_hn(r, tol) {
            Ok(v) => {
                let outcome = match v.status {
                    HnStatus::Certified => Outcome::Pass,
                    HnStatus::NotHn => Outcome::Fail,
                    HnStatus::Inconclusive => Outcome::Marginal,
                };
                self.checks.push(Check::new(name, outcome, v.status.name()));
                self.hn.push(NamedHn { label: label.to_string(), verdict: v });
            }
            Err(e) => self.checks.push(Check::new(name, Outcome::Marginal, e.to_string())),
        }
    }

    fn coprime_condition(&mut self, name: &str, q: &MatrixPolynomial, p: &MatrixPolynomial, tol: &Tolerances) {
        let ev = right_coprime(q, p, tol);
        let outcome =
            if ev.method == CoprimeMethod::Undetermined { Outcome::Marginal } else { Outcome::from_bool(ev.coprime) };
        let detail = format!("{} rank {}/{}", ev.method, ev.rank, ev.size);
        self.checks.push(Check::new(name, outcome, detail).with_margin(ev.gap));
        self.coprime = Some(ev);
    }

    /// Every zero of `poly` is real and strictly negative.
    fn negative_zeros_condition(&mut self, part: &str, poly: &MatrixPolynomial, tol: &Tolerances) {
        let name = format!("zeros of {part} negative real");
        match poly.spectrum(tol) {
            Ok(spectrum) => {
                let (ok, worst) = negative_real(&spectrum, tol);
                let detail = format!("{} zeros, largest real part {worst:.6e}", spectrum.entries.len());
                self.checks.push(Check::new(name, Outcome::from_bool(ok), detail).with_margin(-worst));
                self.spectra.push(PartSpectrum { part: part.to_string(), spectrum });
            }
            Err(e) => self.checks.push(Check::new(name, Outcome::Fail, e.to_string())),
        }
    }

    fn regular_condition(&mut self, part: &str, poly: &MatrixPolynomial, tol: &Tolerances) {
        let ok = poly.is_regular(tol);
        self.checks.push(Check::new(
            format!("{part} regular"),
            Outcome::from_bool(ok),
            if ok { "regular" } else { "singular" },
        ));
    }

    fn simple_consequence(&mut self, part: &str, poly: &MatrixPolynomial, tol: &Tolerances) {
        let name = format!("{part} simple");
        let check = match poly.is_simple(tol) {
            Ok(s) => Check::new(name, Outcome::from_bool(s.simple), format!("{} distinct zeros", s.zeros.len())),
            Err(e) => Check::new(name, Outcome::Fail, e.to_string()),
        };
        self.consequences.push(check);
    }
}

/// (all zeros real and negative, largest real part).
fn negative_real(spectrum: &Spectrum, tol: &Tolerances) -> (bool, f64) {
    let worst = spectrum.max_real().unwrap_or(f64::NEG_INFINITY);
    let negative = spectrum.entries.iter().all(|e| e.value.re < -tol.oracle * (1.0 + e.value.norm()));
    (negative && spectrum.is_real(tol), worst)
}

/// Deg F = 2m: H_{m−1}(R_F) ≺ 0 and H_{m−1}(R_zF) ≺ 0.
pub fn markov_criterion_even(f: &MatrixPolynomial, tol: &Tolerances) -> Result<CriterionReport> {
    let parts = split_parts(f, tol)?;
    parts.expect_parity(true)?;
    let mut rep = CriterionReport::new(Criterion::MarkovEven);
    let r_f = rf(&parts, tol)?;
    let r_zf = rzf(&parts, tol)?;
    if !rep.self_adjoint("R_F", &r_f, tol) {
        return Ok(rep.not_applicable("R_F is not self-adjoint"));
    }
    let m = parts.m() as i64;
    rep.hankel_condition("R_F", &r_f, m - 1, tol)?;
    rep.hankel_condition("R_zF", &r_zf, m - 1, tol)?;
    Ok(rep.finish())
}

/// Deg F = 2m+1: H_{m−1}(Rt_F) ≺ 0 and H_m(Rt_zF) ≺ 0.
pub fn markov_criterion_odd(f: &MatrixPolynomial, tol: &Tolerances) -> Result<CriterionReport> {
    let parts = split_parts(f, tol)?;
    parts.expect_parity(false)?;
    let mut rep = CriterionReport::new(Criterion::MarkovOdd);
    let rt_f = rf_tilde(&parts, tol)?;
    let rt_zf = rzf_tilde(&parts, tol)?;
    if !rep.self_adjoint("Rt_F", &rt_f, tol) {
        return Ok(rep.not_applicable("Rt_F is not self-adjoint"));
    }
    let m = parts.m() as i64;
    rep.hankel_condition("Rt_F", &rt_f, m - 1, tol)?;
    rep.hankel_condition("Rt_zF", &rt_zf, m, tol)?;
    Ok(rep.finish())
}

/// Deg F = 2m+1 with F_e regular: H_{m−1}(R_F) ≺ 0, H_{m−1}(R_zF) ≺ 0 and
/// lim R_F ≺ 0.
pub fn alt_criterion_odd(f: &MatrixPolynomial, tol: &Tolerances) -> Result<CriterionReport> {
    let parts = split_parts(f, tol)?;
    parts.expect_parity(false)?;
    let mut rep = CriterionReport::new(Criterion::AltOdd);
    let r_f = match attempt(rf(&parts, tol))? {
        Ok(r) => r,
        Err(why) => return Ok(rep.not_applicable(format!("F_e: {why}"))),
    };
    let r_zf = rzf(&parts, tol)?;
    if !rep.self_adjoint("R_F", &r_f, tol) {
        return Ok(rep.not_applicable("R_F is not self-adjoint"));
    }
    let m = parts.m() as i64;
    rep.hankel_condition("R_F", &r_f, m - 1, tol)?;
    rep.hankel_condition("R_zF", &r_zf, m - 1, tol)?;
    rep.limit_condition("R_F", &r_f, tol)?;
    Ok(rep.finish())
}

/// Deg F = 2m with F_o regular: H_{m−2}(Rt_F) ≺ 0, H_{m−1}(Rt_zF) ≺ 0 and
/// lim Rt_zF ≺ 0.
pub fn alt_criterion_even(f: &MatrixPolynomial, tol: &Tolerances) -> Result<CriterionReport> {
    let parts = split_parts(f, tol)?;
    parts.expect_parity(true)?;
    let mut rep = CriterionReport::new(Criterion::AltEven);
    let rt_f = match attempt(rf_tilde(&parts, tol))? {
        Ok(r) => r,
        Err(why) => return Ok(rep.not_applicable(format!("F_o: {why}"))),
    };
    let rt_zf = rzf_tilde(&parts, tol)?;
    if !rep.self_adjoint("Rt_F", &rt_f, tol) {
        return Ok(rep.not_applicable("Rt_F is not self-adjoint"));
    }
    let m = parts.m() as i64;
    rep.hankel_condition("Rt_F", &rt_f, m - 2, tol)?;
    rep.hankel_condition("Rt_zF", &rt_zf, m - 1, tol)?;
    rep.limit_condition("Rt_zF", &rt_zf, tol)?;
    Ok(rep.finish())
}

/// R_F is Herglotz–Nevanlinna, F_e and F_o are right coprime, the zeros of
/// F_e are negative, and F_o is regular (even degree) or lim R_F ≺ 0 (odd).
pub fn hn_criterion(f: &MatrixPolynomial, tol: &Tolerances) -> Result<CriterionReport> {
    let parts = split_parts(f, tol)?;
    let mut rep = CriterionReport::new(Criterion::Hn);
    let r_f = match attempt(rf(&parts, tol))? {
        Ok(r) => r,
        Err(why) => return Ok(rep.not_applicable(format!("F_e: {why}"))),
    };
    if !rep.self_adjoint("R_F", &r_f, tol) {
        return Ok(rep.not_applicable("R_F is not self-adjoint"));
    }
    rep.hn_condition("R_F", &r_f, tol);
    rep.coprime_condition("F_e, F_o right coprime", &parts.odd, &parts.even, tol);
    rep.negative_zeros_condition("F_e", &parts.even, tol);
    if parts.even_degree() {
        rep.regular_condition("F_o", &parts.odd, tol);
    } else {
        rep.limit_condition("R_F", &r_f, tol)?;
    }
    let mut rep = rep.finish();
    if rep.verdict == Verdict::Stable {
        rep.simple_consequence("F_e", &parts.even, tol);
    }
    Ok(rep)
}

/// Rt_zF is Herglotz–Nevanlinna, F_e and F_o are right coprime, the zeros of
/// F_o are negative, F_e(0) is invertible, and lim Rt_zF ≺ 0 for even degree.
pub fn hn_criterion_tilde(f: &MatrixPolynomial, tol: &Tolerances) -> Result<CriterionReport> {
    let parts = split_parts(f, tol)?;
    let mut rep = CriterionReport::new(Criterion::HnTilde);
    let rt_zf = match attempt(rzf_tilde(&parts, tol))? {
        Ok(r) => r,
        Err(why) => return Ok(rep.not_applicable(format!("F_o: {why}"))),
    };
    if !rep.self_adjoint("Rt_zF", &rt_zf, tol) {
        return Ok(rep.not_applicable("Rt_zF is not self-adjoint"));
    }
    rep.hn_condition("Rt_zF", &rt_zf, tol);
    rep.coprime_condition("F_e, F_o right coprime", &parts.odd, &parts.even, tol);
    rep.negative_zeros_condition("F_o", &parts.odd, tol);
    let rcond = linalg::inverse_condition(&parts.even.evaluate(C64::new(0.0, 0.0)));
    rep.checks.push(
        Check::new("F_e(0) invertible", Outcome::from_bool(rcond > tol.regularity), format!("rcond {rcond:.3e}"))
            .with_margin(rcond),
    );
    if parts.even_degree() {
        rep.limit_condition("Rt_zF", &rt_zf, tol)?;
    }
    let mut rep = rep.finish();
    if rep.verdict == Verdict::Stable {
        rep.simple_consequence("F_o", &parts.odd, tol);
    }
    Ok(rep)
}

/// Even degree: R_F and R_zF are HN, F_e and z·F_o right coprime, F_o
/// regular. Odd degree: Rt_F and Rt_zF are HN, F_e and z·F_o right coprime,
/// F_e regular.
pub fn combined_criterion(f: &MatrixPolynomial, tol: &Tolerances) -> Result<CriterionReport> {
    let parts = split_parts(f, tol)?;
    let mut rep = CriterionReport::new(Criterion::Combined);
    let (first, second, labels) = if parts.even_degree() {
        (attempt(rf(&parts, tol))?, attempt(rzf(&parts, tol))?, ["R_F", "R_zF"])
    } else {
        (attempt(rf_tilde(&parts, tol))?, attempt(rzf_tilde(&parts, tol))?, ["Rt_F", "Rt_zF"])
    };
    let (first, second) = match (first, second) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(why), _) | (_, Err(why)) => return Ok(rep.not_applicable(why)),
    };
    let sa_first = rep.self_adjoint(labels[0], &first, tol);
    let sa_second = rep.self_adjoint(labels[1], &second, tol);
    if !(sa_first && sa_second) {
        return Ok(rep.not_applicable(format!("{} and {} are not both self-adjoint", labels[0], labels[1])));
    }
    rep.hn_condition(labels[0], &first, tol);
    rep.hn_condition(labels[1], &second, tol);
    rep.coprime_condition("F_e, z F_o right coprime", &parts.odd.shift(1), &parts.even, tol);
    if parts.even_degree() {
        rep.regular_condition("F_o", &parts.odd, tol);
    } else {
        rep.regular_condition("F_e", &parts.even, tol);
    }
    Ok(rep.finish())
}

/// Eigenvalue cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Stable iff every zero has Re λ < −oracle·(1 + |λ|); never Inconclusive.
    pub verdict: Verdict,
    pub max_re: Option<f64>,
    pub spectrum: Spectrum,
}

pub fn oracle_stability(f: &MatrixPolynomial, tol: &Tolerances) -> Result<OracleResult> {
    let spectrum = f.spectrum(tol)?;
    let stable = spectrum.entries.iter().all(|e| e.value.re < -tol.oracle * (1.0 + e.value.norm()));
    Ok(OracleResult {
        verdict: if stable { Verdict::Stable } else { Verdict::Unstable },
        max_re: spectrum.max_real(),
        spectrum,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CriterionSet {
    Markov,
    Alt,
    Hn,
    #[default]
    All,
}

impl CriterionSet {
    pub fn name(self) -> &'static str {
        match self {
            Self::Markov => "markov",
            Self::Alt => "alt",
            Self::Hn => "hn",
            Self::All => "all",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Self::Markov, Self::Alt, Self::Hn, Self::All].into_iter().find(|s| s.name() == name)
    }

    pub fn includes(self, c: Criterion) -> bool {
        match self {
            Self::All => true,
            Self::Markov => matches!(c, Criterion::MarkovEven | Criterion::MarkovOdd),
            Self::Alt => matches!(c, Criterion::AltEven | Criterion::AltOdd),
            Self::Hn => matches!(c, Criterion::Hn | Criterion::HnTilde | Criterion::Combined),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzeOptions {
    pub criteria: CriterionSet,
    pub oracle: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { criteria: CriterionSet::All, oracle: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCriterion {
    pub criterion: Criterion,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    /// Name of the criterion that decided, `"oracle"` when only the oracle
    /// was decisive, `"constant"` for degree 0.
    pub criterion: String,
    pub degree: usize,
    pub p: usize,
    pub criteria: Vec<CriterionReport>,
    /// Criteria whose hypotheses failed outright (wrong parity, singular part).
    pub skipped: Vec<SkippedCriterion>,
    pub oracle: Option<OracleResult>,
    /// Whether the oracle matches the verdict of the criteria, when both are decisive.
    pub oracle_agrees: Option<bool>,
    pub advisories: Vec<String>,
    pub tolerances: Tolerances,
}

impl StabilityReport {
    pub fn get(&self, c: Criterion) -> Option<&CriterionReport> {
        self.criteria.iter().find(|r| r.criterion == c)
    }

    pub fn is_applicable(&self, c: Criterion) -> bool {
        self.get(c).is_some_and(|r| r.applicable)
    }
}

pub fn analyze(f: &MatrixPolynomial, tol: &Tolerances) -> Result<StabilityReport> {
    analyze_with(f, tol, &AnalyzeOptions::default())
}

/// Runs the parity-matched criteria and, unless disabled, the oracle.
///
/// Agreeing decisive criteria give the verdict. Disagreement among them, or
/// with the oracle, gives Inconclusive. With no decisive criterion the
/// oracle's verdict is used.
pub fn analyze_with(f: &MatrixPolynomial, tol: &Tolerances, opts: &AnalyzeOptions) -> Result<StabilityReport> {
    let mut report = StabilityReport {
        verdict: Verdict::Inconclusive,
        criterion: String::new(),
        degree: f.degree().unwrap_or(0),
        p: f.p(),
        criteria: Vec::new(),
        skipped: Vec::new(),
        oracle: None,
        oracle_agrees: None,
        advisories: Vec::new(),
        tolerances: *tol,
    };
    if let Err(e) = split_parts(f, tol) {
        if let Error::WrongParity { degree: 0, .. } = e {
            report.verdict = Verdict::Stable;
            report.criterion = "constant".into();
            report.advisories.push("degree 0: det F is a nonzero constant with no zeros".into());
            return Ok(report);
        }
        return Err(e);
    }
    for c in Criterion::for_degree(report.degree) {
        if !opts.criteria.includes(c) {
            continue;
        }
        match c.run(f, tol) {
            Ok(r) => report.criteria.push(r),
            Err(e) => report.skipped.push(SkippedCriterion { criterion: c, reason: e.to_string() }),
        }
    }
    if opts.oracle {
        report.oracle = Some(oracle_stability(f, tol)?);
    }
    push_route_advisory(&mut report);

    let decisive: Vec<&CriterionReport> = report.criteria.iter().filter(|r| r.verdict.is_decisive()).collect();
    let consensus = decisive.first().map(|r| r.verdict).filter(|v| decisive.iter().all(|r| r.verdict == *v));
    let oracle_verdict = report.oracle.as_ref().map(|o| o.verdict);
    match (consensus, decisive.first()) {
        (Some(v), Some(first)) => {
            report.verdict = v;
            report.criterion = first.criterion.name().to_string();
            if let Some(ov) = oracle_verdict {
                report.oracle_agrees = Some(ov == v);
                if ov != v {
                    report.verdict = Verdict::Inconclusive;
                    report.advisories.push(format!("criteria say {v}, eigenvalue oracle says {ov}"));
                }
            }
        }
        (None, Some(_)) => {
            let names: Vec<String> = decisive.iter().map(|r| format!("{}={}", r.criterion.name(), r.verdict)).collect();
            report.advisories.push(format!("criteria disagree: {}", names.join(", ")));
            report.criterion = "none".into();
        }
        (_, None) => match oracle_verdict {
            Some(ov) => {
                report.verdict = ov;
                report.criterion = "oracle".into();
                report.advisories.push("no criterion was decisive; verdict taken from the eigenvalue oracle".into());
            }
            None => report.criterion = "none".into(),
        },
    }
    Ok(report)
}

/// One route applies and the other does not, which rules out stability.
fn push_route_advisory(report: &mut StabilityReport) {
    let has = |c| report.get(c).is_some() || report.skipped.iter().any(|s| s.criterion == c);
    if !(has(Criterion::Hn) && has(Criterion::HnTilde)) {
        return;
    }
    let hn = report.is_applicable(Criterion::Hn);
    let tilde = report.is_applicable(Criterion::HnTilde);
    let msg = if report.degree % 2 == 1 && tilde && !hn {
        Some(
            "odd degree: the Rt_zF route applies but the R_F route does not, so F is expected not to be Hurwitz stable",
        )
    } else if report.degree % 2 == 0 && hn && !tilde {
        Some("even degree: the R_F route applies but the Rt_zF route does not, so F is expected not to be Hurwitz stable")
    } else {
        None
    };
    if let Some(m) = msg {
        report.advisories.push(m.to_string());
    }
}

/// Facts about F_e and F_o that hold for every stable F.
#[derive(Debug, Clone, PartialEq)]
pub struct PartProperties {
    pub checks: Vec<Check>,
    pub coprime: CoprimeEvidence,
    pub even_simplicity: Option<Simplicity>,
    pub odd_simplicity: Option<Simplicity>,
    pub even_spectrum: Option<Spectrum>,
    pub odd_spectrum: Option<Spectrum>,
    /// Zeros shared by F_e and F_o. Allowed for stable F; reported only.
    pub common_zeros: Vec<C64>,
}

impl PartProperties {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == Outcome::Pass)
    }
}

/// Coprimeness, simplicity and negative real zeros of both parts of a
/// stable F. Refuses unless some criterion certifies F stable.
pub fn stable_part_properties(f: &MatrixPolynomial, tol: &Tolerances) -> Result<PartProperties> {
    let opts = AnalyzeOptions { criteria: CriterionSet::All, oracle: false };
    let report = analyze_with(f, tol, &opts)?;
    if !report.criteria.iter().any(|r| r.verdict == Verdict::Stable) {
        return Err(Error::NotCertifiedStable);
    }
    let parts = split_parts(f, tol)?;
    let coprime = right_coprime(&parts.odd, &parts.even, tol);
    let mut checks = vec![Check::new(
        "F_e, F_o right coprime",
        Outcome::from_bool(coprime.coprime),
        format!("{} rank {}/{}", coprime.method, coprime.rank, coprime.size),
    )
    .with_margin(coprime.gap)];

    let mut part = |label: &str, poly: &MatrixPolynomial| {
        let simplicity = poly.is_simple(tol).ok();
        let spectrum = poly.spectrum(tol).ok();
        checks.push(Check::new(
            format!("{label} simple"),
            Outcome::from_bool(simplicity.as_ref().is_some_and(|s| s.simple)),
            simplicity.as_ref().map_or("singular".to_string(), |s| format!("{} distinct zeros", s.zeros.len())),
        ));
        let (ok, worst) = spectrum.as_ref().map_or((false, f64::NAN), |s| negative_real(s, tol));
        checks.push(Check::new(
            format!("zeros of {label} negative real"),
            Outcome::from_bool(ok),
            format!("largest real part {worst:.6e}"),
        ));
        (simplicity, spectrum)
    };
    let (even_simplicity, even_spectrum) = part("F_e", &parts.even);
    let (odd_simplicity, odd_spectrum) = part("F_o", &parts.odd);

    let common_zeros = match (&even_spectrum, &odd_spectrum) {
        (Some(e), Some(o)) => e.entries.iter().filter(|x| o.find(x.value, tol).is_some()).map(|x| x.value).collect(),
        _ => Vec::new(),
    };
    Ok(PartProperties { checks, coprime, even_simplicity, odd_simplicity, even_spectrum, odd_spectrum, common_zeros })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, real_matrix};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn cubic_example() -> MatrixPolynomial {
        MatrixPolynomial::diagonal(&[&[1.0, 18.0, 108.0, 216.0], &[1.0, 3.0, 12.0, 20.0]])
    }

    fn scalar(c: &[f64]) -> MatrixPolynomial {
        MatrixPolynomial::diagonal(&[c])
    }

    fn close(a: &CMat, b: &CMat, eps: f64) -> bool {
        linalg::max_abs(&(a - b)) <= eps
    }

    #[test]
    fn scalar_fractions_and_markov() {
        let f = scalar(&[1.0, 3.0, 2.0]);
        let r_f = build_rf(&f, &tol()).unwrap();
        // −3/(z+2)
        let z = c64(0.7, 1.3);
        let want = c64(-3.0, 0.0) / (z + 2.0);
        assert!((r_f.evaluate(z).unwrap()[(0, 0)] - want).norm() < 1e-13);
        let seq = build_rzf(&f, &tol()).unwrap().default_markov().unwrap();
        assert!((seq.get(-1).unwrap()[(0, 0)] - c64(3.0, 0.0)).norm() < 1e-13);
        assert!((seq.get(0).unwrap()[(0, 0)] - c64(-6.0, 0.0)).norm() < 1e-13);
        let rt = build_rzf_tilde(&f, &tol()).unwrap();
        let want = -(z + 2.0) / (3.0 * z);
        assert!((rt.evaluate(z).unwrap()[(0, 0)] - want).norm() < 1e-13);
    }

    #[test]
    fn zero_odd_part() {
        let f = MatrixPolynomial::diagonal(&[&[1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]]);
        let r = build_rf(&f, &tol()).unwrap();
        assert!(r.numerator().is_zero());
        assert_eq!(build_rf_tilde(&f, &tol()), Err(Error::IrregularOddPart));
        let rep = markov_criterion_even(&f, &tol()).unwrap();
        assert_eq!(rep.verdict, Verdict::Unstable);
    }

    #[test]
    fn inverse_relation_off_poles() {
        let f = MatrixPolynomial::diagonal(&[&[1.0, 3.0, 2.0], &[1.0, 5.0, 6.0]]);
        let a = build_rzf(&f, &tol()).unwrap();
        let b = build_rzf_tilde(&f, &tol()).unwrap();
        let z = c64(-0.3, 0.8);
        let prod = a.evaluate(z).unwrap() * b.evaluate(z).unwrap();
        assert!(close(&prod, &(-linalg::identity(2)), 1e-12));
    }

    #[test]
    fn even_examples() {
        let t = tol();
        let stable = scalar(&[1.0, 3.0, 2.0]);
        let rep = markov_criterion_even(&stable, &t).unwrap();
        assert_eq!(rep.verdict, Verdict::Stable);
        let h = &rep.hankels[0].hankel;
        assert!((h.data[(0, 0)] - c64(-3.0, 0.0)).norm() < 1e-12);
        assert!((rep.hankels[1].hankel.data[(0, 0)] - c64(-6.0, 0.0)).norm() < 1e-12);
        assert_eq!(markov_criterion_even(&scalar(&[1.0, -3.0, 2.0]), &t).unwrap().verdict, Verdict::Unstable);

        let alt = alt_criterion_even(&stable, &t).unwrap();
        assert_eq!(alt.verdict, Verdict::Stable);
        assert!((alt.limits[0].value[(0, 0)] - c64(-1.0 / 3.0, 0.0)).norm() < 1e-12);
        assert!((alt.hankels[0].hankel.data[(0, 0)] - c64(-2.0 / 3.0, 0.0)).norm() < 1e-12);

        let f = MatrixPolynomial::diagonal(&[&[1.0, 3.0, 2.0], &[1.0, 5.0, 6.0]]);
        for c in Criterion::for_degree(2) {
            assert_eq!(c.run(&f, &t).unwrap().verdict, Verdict::Stable, "{c}");
        }
        assert_eq!(markov_criterion_odd(&f, &t).unwrap_err(), Error::WrongParity { expected: "odd", degree: 2 });
    }

    #[test]
    fn odd_examples() {
        let t = tol();
        let f = scalar(&[1.0, 3.0, 12.0, 20.0]);
        for c in Criterion::for_degree(3) {
            assert_eq!(c.run(&f, &t).unwrap().verdict, Verdict::Stable, "{c}");
        }
        assert_eq!(markov_criterion_odd(&scalar(&[1.0, 0.0, -1.0, 0.0]), &t).unwrap().verdict, Verdict::Unstable);
        let boundary = scalar(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(alt_criterion_odd(&boundary, &t).unwrap().verdict, Verdict::Unstable);
        let axis = scalar(&[1.0, 0.0, 1.0, 0.0]);
        assert_ne!(hn_criterion_tilde(&axis, &t).unwrap().verdict, Verdict::Stable);
        assert_eq!(analyze(&axis, &t).unwrap().verdict, Verdict::Unstable);
    }

    #[test]
    fn cubic_example_all_routes() {
        let t = tol();
        let f = cubic_example();
        let report = analyze(&f, &t).unwrap();
        assert_eq!(report.verdict, Verdict::Stable);
        assert_eq!(report.oracle_agrees, Some(true));
        for c in Criterion::for_degree(3) {
            assert_eq!(report.get(c).unwrap().verdict, Verdict::Stable, "{c}");
        }
        let alt = report.get(Criterion::AltOdd).unwrap();
        let lim = &alt.limits[0].value;
        assert!(close(lim, &real_matrix(2, 2, &[-1.0 / 18.0, 0.0, 0.0, -1.0 / 3.0]), 1e-12));

        let hn = report.get(Criterion::Hn).unwrap();
        let fe = &hn.spectra[0].spectrum;
        assert!(fe.find(c64(-12.0, 0.0), &t).is_some());
        assert!(fe.find(c64(-20.0 / 3.0, 0.0), &t).is_some());
        assert!(hn.consequences.iter().all(|c| c.outcome == Outcome::Pass));

        let oracle = report.oracle.unwrap();
        assert!((oracle.max_re.unwrap() + 0.5).abs() < 1e-8);
    }

    #[test]
    fn part_properties() {
        let t = tol();
        let props = stable_part_properties(&cubic_example(), &t).unwrap();
        assert!(props.all_hold());
        assert_eq!(props.common_zeros.len(), 1);
        assert!((props.common_zeros[0] - c64(-12.0, 0.0)).norm() < 1e-8);

        let f = MatrixPolynomial::diagonal(&[&[1.0, 3.0, 2.0], &[1.0, 5.0, 6.0]]);
        let props = stable_part_properties(&f, &t).unwrap();
        assert!(props.all_hold());
        assert!(props.common_zeros.is_empty());

        let bad = scalar(&[1.0, -3.0, 2.0]);
        assert_eq!(stable_part_properties(&bad, &t), Err(Error::NotCertifiedStable));
    }

    #[test]
    fn oracle_examples() {
        let t = tol();
        let r = oracle_stability(&scalar(&[1.0, 1.0]), &t).unwrap();
        assert_eq!(r.verdict, Verdict::Stable);
        assert!((r.max_re.unwrap() + 1.0).abs() < 1e-12);
        let f = MatrixPolynomial::from_real(2, &[&[1.0, 0.0, 0.0, 1.0], &[0.0, -1.0, -1.0, 0.0]]).unwrap();
        assert_eq!(oracle_stability(&f, &t).unwrap().verdict, Verdict::Unstable);
    }

    #[test]
    fn rejects_non_monic() {
        let f = MatrixPolynomial::diagonal(&[&[2.0, 1.0]]);
        assert!(matches!(analyze(&f, &tol()), Err(Error::NotMonic { .. })));
        let c = MatrixPolynomial::identity(2);
        assert_eq!(analyze(&c, &tol()).unwrap().verdict, Verdict::Stable);
    }
}
