//! Herglotz–Nevanlinna classification of self-adjoint rational matrix
//! fractions, their finite partial-fraction form, and the moment identity
//! used to certify positivity.

use std::fmt;

use crate::bezout::{hankel_inertia, right_coprime, CoprimeEvidence};
use crate::check::{Check, Outcome};
use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMat, C64};
use crate::markov::{classify, BlockHankel, Definiteness, RationalMatrixFraction};
use crate::matpoly::MatrixPolynomial;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HnStatus {
    Certified,
    NotHn,
    Inconclusive,
}

impl HnStatus {
    pub fn name(self) -> &'static str {
        match self {
            Self::Certified => "HN_certified",
            Self::NotHn => "NotHN_certified",
            Self::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for HnStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HnVerdict {
    pub status: HnStatus,
    /// Conditions that decided the status.
    pub checks: Vec<Check>,
    /// Facts implied by certification, re-verified numerically. They never
    /// change the status.
    pub consequences: Vec<Check>,
    /// Advisory grid scan of the smallest eigenvalue of Im R(z).
    pub scan: Option<ImagScan>,
    pub coprime: Option<CoprimeEvidence>,
}

/// H_{−2,0} and H_{deg P−1} of R.
struct HankelPair {
    slope: BlockHankel,
    /// Class and margin of H_{deg P−1}, taken from the Bezoutian when the
    /// congruence holds and from the Hankel matrix otherwise.
    top_class: Option<(Option<Definiteness>, f64, &'static str)>,
    m: usize,
}

fn require_self_adjoint(r: &RationalMatrixFraction, tol: &Tolerances) -> Result<()> {
    let sa = r.self_adjointness(tol);
    if sa.self_adjoint {
        Ok(())
    } else {
        Err(Error::NotSelfAdjoint { defect: sa.coefficient_defect })
    }
}

fn hankels(r: &RationalMatrixFraction, tol: &Tolerances) -> Result<HankelPair> {
    let m = r.denominator().degree().expect("nonzero denominator");
    let seq = r.markov_parameters(2 * m + 2)?;
    let slope = seq.block_hankel(-2, 0, tol)?;
    let top = if m == 0 { None } else { Some(seq.hankel(m - 1, tol)?) };
    let top_class = top.as_ref().map(|h| match hankel_inertia(r, tol) {
        Some(hi) => (Some(hi.class), hi.margin, "Bezoutian"),
        None => (h.class(), margin_of(h), "Hankel"),
    });
    Ok(HankelPair { slope, top_class, m })
}

fn class_name(h: &BlockHankel) -> String {
    h.class().map_or_else(|| "not Hermitian".to_string(), |c| c.name().to_string())
}

fn opt_name(c: Option<Definiteness>) -> &'static str {
    c.map_or("not Hermitian", Definiteness::name)
}

fn margin_of(h: &BlockHankel) -> f64 {
    h.definiteness.as_ref().map_or(0.0, |d| d.margin)
}

/// Necessary conditions for R to be Herglotz–Nevanlinna. A `Fail` among them
/// certifies that R is not.
pub fn hn_necessary(r: &RationalMatrixFraction, tol: &Tolerances) -> Result<Vec<Check>> {
    require_self_adjoint(r, tol)?;
    let hp = hankels(r, tol)?;
    let gap = r.degree_gap();
    let mut checks = Vec::new();

    let slope_class = hp.slope.class();
    let bad_slope = slope_class.is_none_or(Definiteness::has_negative_eigenvalue);
    checks.push(
        Check::new(
            "slope_nonnegative",
            Outcome::from_bool(!bad_slope),
            format!("H_{{-2,0}} is {}", class_name(&hp.slope)),
        )
        .with_margin(margin_of(&hp.slope)),
    );

    let name = format!("H_{}", hp.m as i64 - 1);
    match hp.top_class {
        Some((class, margin, via)) => {
            let bad = class.is_none_or(Definiteness::has_positive_eigenvalue);
            checks.push(
                Check::new(
                    "hankel_nonpositive",
                    Outcome::from_bool(!bad),
                    format!("{name} is {} ({via})", opt_name(class)),
                )
                .with_margin(margin),
            );
        }
        None => checks.push(Check::new("hankel_nonpositive", Outcome::Skipped, "deg P = 0")),
    }

    checks.push(Check::new("degree_gap_upper", Outcome::from_bool(gap <= 1), format!("deg Q - deg P = {gap}")));

    let q_regular = r.numerator().is_regular(tol);
    let coprime = right_coprime(r.numerator(), r.denominator(), tol);
    let strict_applies = q_regular && coprime.coprime;
    let lower = if gap >= -1 {
        Outcome::Pass
    } else if strict_applies {
        Outcome::Fail
    } else {
        Outcome::Marginal
    };
    checks.push(Check::new(
        "degree_gap_lower",
        lower,
        format!("deg Q - deg P = {gap}; binding only for coprime pairs with regular Q"),
    ));

    let strict = match (hp.top_class, strict_applies) {
        (Some((class, margin, via)), true) => {
            let ok = class == Some(Definiteness::NegDef);
            Check::new(
                "hankel_strict",
                Outcome::from_bool(ok),
                format!("coprime with regular Q, so {name} must be NegDef; it is {} ({via})", opt_name(class)),
            )
            .with_margin(margin)
        }
        (_, false) => Check::new("hankel_strict", Outcome::Skipped, "Q singular or pair not coprime"),
        (None, true) => Check::new("hankel_strict", Outcome::Skipped, "deg P = 0"),
    };
    checks.push(strict);
    Ok(checks)
}

/// Sufficient conditions: H_{−2,0} ⪰ 0, H_{deg P−1} ≺ 0 and deg Q − deg P ≤ 1.
pub fn hn_sufficient(r: &RationalMatrixFraction, tol: &Tolerances) -> Result<HnVerdict> {
    require_self_adjoint(r, tol)?;
    let hp = hankels(r, tol)?;
    let gap = r.degree_gap();
    let mut checks = Vec::new();
    let slope_ok = hp.slope.class().is_some_and(Definiteness::is_nonnegative);
    checks.push(
        Check::new("slope_psd", Outcome::from_bool(slope_ok), format!("H_{{-2,0}} is {}", class_name(&hp.slope)))
            .with_margin(margin_of(&hp.slope)),
    );
    match hp.top_class {
        Some((class, margin, via)) => {
            let ok = class == Some(Definiteness::NegDef);
            checks.push(
                Check::new(
                    "hankel_negdef",
                    Outcome::from_bool(ok),
                    format!("H_{} is {} ({via})", hp.m - 1, opt_name(class)),
                )
                .with_margin(margin),
            );
        }
        None => checks.push(Check::new("hankel_negdef", Outcome::Pass, "deg P = 0, condition is vacuous")),
    }
    checks.push(Check::new("degree_gap", Outcome::from_bool(gap <= 1), format!("deg Q - deg P = {gap}")));

    let certified = checks.iter().all(|c| c.outcome == Outcome::Pass);
    let mut verdict = HnVerdict {
        status: if certified { HnStatus::Certified } else { HnStatus::Inconclusive },
        checks,
        consequences: Vec::new(),
        scan: None,
        coprime: None,
    };
    if certified {
        let (consequences, coprime) = consequences(r, tol);
        verdict.consequences = consequences;
        verdict.coprime = Some(coprime);
    }
    Ok(verdict)
}

fn consequences(r: &RationalMatrixFraction, tol: &Tolerances) -> (Vec<Check>, CoprimeEvidence) {
    let gap = r.degree_gap();
    let mut out =
        vec![Check::new("two_sided_gap", Outcome::from_bool(gap.abs() <= 1), format!("deg Q - deg P = {gap}"))];
    match r.denominator().is_simple(tol) {
        Ok(s) => {
            out.push(Check::new(
                "denominator_simple",
                Outcome::from_bool(s.simple),
                format!("{} distinct zeros", s.zeros.len()),
            ));
            let spec = r.denominator().spectrum(tol).expect("simplicity implies regular");
            let worst = spec.entries.iter().map(|e| e.value.im.abs()).fold(0.0, f64::max);
            out.push(
                Check::new(
                    "denominator_real_spectrum",
                    Outcome::from_bool(spec.is_real(tol)),
                    format!("max |Im λ| = {worst:.3e}"),
                )
                .with_margin(worst),
            );
        }
        Err(e) => out.push(Check::new("denominator_simple", Outcome::Fail, e.to_string())),
    }
    let coprime = right_coprime(r.numerator(), r.denominator(), tol);
    out.push(
        Check::new(
            "coprime",
            Outcome::from_bool(coprime.coprime),
            format!("{} rank {}/{}", coprime.method, coprime.rank, coprime.size),
        )
        .with_margin(coprime.gap),
    );
    (out, coprime)
}

/// Combined classification: certified by the sufficient test, refuted by a
/// failed necessary condition, otherwise inconclusive.
pub fn classify_hn(r: &RationalMatrixFraction, tol: &Tolerances) -> Result<HnVerdict> {
    let mut verdict = hn_sufficient(r, tol)?;
    let grid = default_grid(r, tol);
    verdict.scan = Some(sample_imag_positivity(r, &grid));
    if verdict.status == HnStatus::Certified {
        return Ok(verdict);
    }
    let necessary = hn_necessary(r, tol)?;
    if necessary.iter().any(|c| c.outcome == Outcome::Fail) {
        verdict.status = HnStatus::NotHn;
    }
    verdict.checks.extend(necessary);
    Ok(verdict)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImagScan {
    /// Smallest eigenvalue of Im R(z) over the grid.
    pub min_eig: f64,
    /// Smallest eigenvalue of Im R(z) / (1 + ‖R(z)‖) over the grid.
    pub min_relative: f64,
    pub worst_point: C64,
    pub points: usize,
}

/// 10 × 10 grid over Re ∈ [−10ρ, 10ρ] (linear) and Im ∈ [10⁻²ρ, 10ρ]
/// (logarithmic), ρ = 1 + max |λ| over the zeros of P.
pub fn default_grid(r: &RationalMatrixFraction, tol: &Tolerances) -> Vec<C64> {
    upper_half_plane_grid(grid_radius(r.denominator(), tol), 10, 10)
}

pub fn grid_radius(den: &MatrixPolynomial, tol: &Tolerances) -> f64 {
    let radius = den
        .spectrum(tol)
        .map(|s| s.entries.iter().map(|e| e.value.norm()).fold(0.0, f64::max))
        .unwrap_or_else(|_| den.root_scale());
    1.0 + radius
}

pub fn upper_half_plane_grid(rho: f64, n_re: usize, n_im: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(n_re * n_im);
    for a in 0..n_re {
        let t = if n_re > 1 { a as f64 / (n_re - 1) as f64 } else { 0.5 };
        let re = -10.0 * rho + 20.0 * rho * t;
        for b in 0..n_im {
            let u = if n_im > 1 { b as f64 / (n_im - 1) as f64 } else { 0.5 };
            let im = rho * 10f64.powf(-2.0 + 3.0 * u);
            out.push(c64(re, im));
        }
    }
    out
}

/// Im R(z) = (R(z) − R(z)*) / 2i.
pub fn imag_part(m: &CMat) -> CMat {
    (m - m.adjoint()) * c64(0.0, -0.5)
}

/// Smallest eigenvalue of Im R over the grid; points where P(z) is singular
/// are skipped. Sampling can refute the HN property but never certify it.
pub fn sample_imag_positivity(r: &RationalMatrixFraction, grid: &[C64]) -> ImagScan {
    let mut scan =
        ImagScan { min_eig: f64::INFINITY, min_relative: f64::INFINITY, worst_point: c64(0.0, 0.0), points: 0 };
    for &z in grid {
        let Some(rz) = r.evaluate(z) else { continue };
        let ev = linalg::hermitian_eigenvalues(&imag_part(&rz));
        let low = ev[0];
        scan.points += 1;
        if low < scan.min_eig {
            scan.min_eig = low;
            scan.worst_point = z;
        }
        scan.min_relative = scan.min_relative.min(low / (1.0 + linalg::norm(&rz)));
    }
    scan
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub lambda: f64,
    /// Hermitian part of the computed residue matrix.
    pub mass: CMat,
    pub multiplicity: usize,
    /// ‖E − E*‖ / ‖E‖ before symmetrization.
    pub asymmetry: f64,
    /// Numerically zero mass (the pole cancels).
    pub zero_mass: bool,
}

/// R(z) = A z + B + Σ E_j / (λ_j − z).
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFraction {
    pub slope: CMat,
    pub constant: CMat,
    pub poles: Vec<Pole>,
}

impl PartialFraction {
    pub fn evaluate(&self, z: C64) -> CMat {
        let mut acc = &self.slope * z + &self.constant;
        for pole in &self.poles {
            acc += &pole.mass / (c64(pole.lambda, 0.0) - z);
        }
        acc
    }

    pub fn pole_near(&self, lambda: f64, radius: f64) -> Option<&Pole> {
        self.poles.iter().find(|p| (p.lambda - lambda).abs() <= radius)
    }
}

/// Finite partial-fraction form of a self-adjoint fraction with a simple
/// denominator having real zeros. At a semisimple zero λ with right and left
/// null vectors V, W of P(λ), E = −Q(λ)·V·(W·P′(λ)·V)⁻¹·W.
pub fn partial_fraction(r: &RationalMatrixFraction, tol: &Tolerances) -> Result<PartialFraction> {
    require_self_adjoint(r, tol)?;
    let r = r.normalized();
    let (poly, _) = r.split_proper()?;
    if poly.degree().is_some_and(|d| d > 1) {
        return Err(Error::DegreeGap { gap: r.degree_gap() });
    }
    let pd = r.denominator();
    let spectrum = pd.spectrum(tol)?;
    for e in &spectrum.entries {
        if e.value.im.abs() > tol.cluster_radius(e.multiplicity, e.value.norm()) {
            return Err(Error::ComplexSpectrum { re: e.value.re, im: e.value.im });
        }
    }
    let simplicity = pd.is_simple(tol)?;
    if let Some(z) = simplicity.zeros.iter().find(|z| z.multiplicity != z.nullity) {
        return Err(Error::NotSimple {
            re: z.value.re,
            im: z.value.im,
            multiplicity: z.multiplicity,
            nullity: z.nullity,
        });
    }
    let dp = pd.derivative(1);
    let q = r.numerator();
    let mut poles = Vec::with_capacity(spectrum.entries.len());
    let mut masses = Vec::new();
    for e in &spectrum.entries {
        let l = e.multiplicity;
        let lam = c64(e.value.re, 0.0);
        let (v, w) = linalg::null_vectors(&pd.evaluate(lam), l);
        let inner = linalg::inverse(&(&w * dp.evaluate(lam) * &v)).ok_or(Error::NotSimple {
            re: lam.re,
            im: 0.0,
            multiplicity: l,
            nullity: l,
        })?;
        let raw = -(q.evaluate(lam) * &v * inner * &w);
        let asymmetry = linalg::hermitian_defect(&raw);
        let mass = linalg::hermitian_part(&raw);
        masses.push(linalg::norm(&mass));
        poles.push(Pole { lambda: e.value.re, mass, multiplicity: l, asymmetry, zero_mass: false });
    }
    let scale = masses.iter().copied().fold(0.0, f64::max).max(linalg::norm(&poly.coefficient(0)));
    for pole in &mut poles {
        pole.zero_mass = linalg::norm(&pole.mass) <= tol.rank * scale.max(f64::MIN_POSITIVE);
    }
    Ok(PartialFraction {
        slope: linalg::hermitian_part(&poly.coefficient(1)),
        constant: linalg::hermitian_part(&poly.coefficient(0)),
        poles,
    })
}

/// max over 20 points off the real axis of ‖R(z) − PF(z)‖ / (1 + ‖R(z)‖).
pub fn reconstruct_residual(r: &RationalMatrixFraction, pf: &PartialFraction) -> f64 {
    let s = r.denominator().root_scale().max(1.0);
    let mut worst = 0.0_f64;
    for k in 0..20 {
        let z = C64::from_polar(s * (0.25 + 0.2 * k as f64), 0.3 + 2.399_963 * k as f64);
        if z.im.abs() < 1e-3 * s {
            continue;
        }
        if let Some(rz) = r.evaluate(z) {
            worst = worst.max(linalg::norm(&(&rz - pf.evaluate(z))) / (1.0 + linalg::norm(&rz)));
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq)]
pub struct WhwCheck {
    /// ‖W*·S̃·W − diag(−H_{m−1}, I)‖ / (1 + ‖diag(−H_{m−1}, I)‖).
    pub residual: f64,
    /// Block Hankel matrix of the modified moments s̃_0 … s̃_{2m}.
    pub moments: CMat,
    pub moments_class: Option<Definiteness>,
    pub moments_min_eig: f64,
    /// Cholesky factorization of the diagonally scaled moment matrix succeeded.
    pub moments_cholesky: bool,
}

impl WhwCheck {
    /// Positive definite by eigenvalues, or (for moment matrices too graded
    /// for that) by a successful Cholesky factorization after diagonal scaling.
    pub fn moments_positive_definite(&self) -> bool {
        self.moments_class == Some(Definiteness::PosDef) || self.moments_cholesky
    }
}

/// Moment identity W*·[s̃_{j+k}]·W = diag(−H_{m−1}(R), I) with s̃_j = −s_j
/// (j < 2m) and s̃_{2m} = I + Σ_{j<m} A*_{m−j} s_{m+j}.
pub fn whw_identity_check(r: &RationalMatrixFraction, tol: &Tolerances) -> Result<WhwCheck> {
    let r = r.normalized();
    let pd = r.denominator();
    let m = pd.degree().expect("nonzero denominator");
    if m == 0 {
        return Err(Error::DegreeGap { gap: r.degree_gap() });
    }
    let p = r.p();
    let seq = r.markov_parameters(2 * m)?;
    let s = seq.proper();
    let a = pd.coeffs();
    let mut st: Vec<CMat> = s[..2 * m].iter().map(|x| -x).collect();
    let mut last = linalg::identity(p);
    for j in 0..m {
        last += a[m - j].adjoint() * &s[m + j];
    }
    st.push(last);
    let moments =
        linalg::block_matrix(&(0..=m).map(|j| (0..=m).map(|k| st[j + k].clone()).collect()).collect::<Vec<_>>(), p);
    let mut w = CMat::identity((m + 1) * p, (m + 1) * p);
    for i in 0..m {
        w.view_mut((i * p, m * p), (p, p)).copy_from(&a[m - i]);
    }
    let lhs = w.adjoint() * &moments * &w;
    let h = seq.hankel(m - 1, tol)?.data;
    let rhs = linalg::block_diag(&[&(-h), &linalg::identity(p)]);
    let residual = linalg::norm(&(&lhs - &rhs)) / (1.0 + linalg::norm(&rhs));
    let report = classify(&moments, seq.scale().max(1.0), tol).ok();
    let moments_min_eig = linalg::hermitian_eigenvalues(&moments)[0];
    let moments_cholesky = linalg::cholesky_succeeds(&linalg::jacobi_scaled(&linalg::hermitian_part(&moments), 0.0));
    Ok(WhwCheck { residual, moments_class: report.map(|d| d.class), moments, moments_min_eig, moments_cholesky })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real_matrix;
    use crate::markov::scalar_fraction;

    fn two_by_two() -> RationalMatrixFraction {
        let q = MatrixPolynomial::from_real(2, &[&[4.0, -1.0, -1.0, -1.0], &[-2.0, 4.0, -1.0, -2.0]]).unwrap();
        let p = MatrixPolynomial::from_real(2, &[&[1.0, 0.0, 0.0, 1.0], &[0.0, 1.0, 1.0, 0.0]]).unwrap();
        RationalMatrixFraction::new(q, p).unwrap()
    }

    fn close(a: &CMat, b: &CMat, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn two_by_two_is_certified() {
        let tol = Tolerances::default();
        let v = classify_hn(&two_by_two(), &tol).unwrap();
        assert_eq!(v.status, HnStatus::Certified);
        assert!(v.consequences.iter().all(|c| c.outcome == Outcome::Pass), "{:?}", v.consequences);
        assert!(v.scan.unwrap().min_eig >= -1e-10);
        let nec = hn_necessary(&two_by_two(), &tol).unwrap();
        assert!(nec.iter().all(|c| c.outcome != Outcome::Fail));
    }

    #[test]
    fn inverse_z_is_not_hn() {
        let tol = Tolerances::default();
        let r = scalar_fraction(&[1.0], &[1.0, 0.0]).unwrap();
        assert_eq!(hn_sufficient(&r, &tol).unwrap().status, HnStatus::Inconclusive);
        assert_eq!(classify_hn(&r, &tol).unwrap().status, HnStatus::NotHn);
        let scan = sample_imag_positivity(&r, &[c64(0.0, 1.0)]);
        assert!((scan.min_eig + 1.0).abs() < 1e-15);
        let r = scalar_fraction(&[-1.0], &[1.0, 0.0]).unwrap();
        assert_eq!(classify_hn(&r, &tol).unwrap().status, HnStatus::Certified);
    }

    #[test]
    fn identity_times_z_is_hn() {
        let tol = Tolerances::default();
        let z = MatrixPolynomial::monomial(linalg::identity(2), 1);
        let z2 = MatrixPolynomial::monomial(linalg::identity(2), 2);
        let r = RationalMatrixFraction::new(z2, z).unwrap();
        let nec = hn_necessary(&r, &tol).unwrap();
        assert_eq!(nec[0].outcome, Outcome::Pass);
        // H_0 = 0: sufficient test cannot certify, nothing refutes it
        let v = classify_hn(&r, &tol).unwrap();
        assert_eq!(v.status, HnStatus::Inconclusive);
        let scan = sample_imag_positivity(&r, &[c64(1.0, 2.0), c64(-3.0, 0.5)]);
        assert!((scan.min_eig - 0.5).abs() < 1e-14);
    }

    #[test]
    fn pole_at_one() {
        let tol = Tolerances::default();
        let r = scalar_fraction(&[-1.0], &[1.0, -1.0]).unwrap();
        let v = classify_hn(&r, &tol).unwrap();
        assert_eq!(v.status, HnStatus::Certified);
        let pf = partial_fraction(&r, &tol).unwrap();
        assert_eq!(pf.poles.len(), 1);
        assert!((pf.poles[0].lambda - 1.0).abs() < 1e-14);
        assert!((pf.poles[0].mass[(0, 0)] - 1.0).norm() < 1e-14);
    }

    #[test]
    fn two_by_two_partial_fraction() {
        let tol = Tolerances::default();
        let r = two_by_two();
        let pf = partial_fraction(&r, &tol).unwrap();
        assert!(close(&pf.slope, &linalg::zeros(2), 1e-14));
        assert!(close(&pf.constant, &real_matrix(2, 2, &[4.0, -1.0, -1.0, -1.0]), 1e-12));
        // the residue at −1 is [[½, ½], [½, ½]]: together with the one at 1
        // it sums to −s₀ = I
        let at_one = real_matrix(2, 2, &[0.5, -0.5, -0.5, 0.5]);
        let at_minus_one = real_matrix(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        for (lam, want) in [(1.0, at_one), (-1.0, at_minus_one)] {
            let pole = pf.pole_near(lam, 1e-9).unwrap();
            assert!(close(&pole.mass, &want, 1e-12), "{lam}: {}", pole.mass);
        }
        assert!(reconstruct_residual(&r, &pf) <= 1e-10);
    }

    #[test]
    fn scalar_pole_reconstructs() {
        let tol = Tolerances::default();
        let lam = 2.5;
        let r = scalar_fraction(&[-1.0], &[1.0, -lam]).unwrap();
        let pf = partial_fraction(&r, &tol).unwrap();
        assert!(close(&pf.constant, &linalg::zeros(1), 0.0));
        assert!(reconstruct_residual(&r, &pf) <= 1e-14);
    }

    #[test]
    fn partial_fraction_needs_real_simple_denominator() {
        let tol = Tolerances::default();
        // −1 / (z² + 1) is self-adjoint with poles ±i
        let r = scalar_fraction(&[-1.0], &[1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(partial_fraction(&r, &tol), Err(Error::ComplexSpectrum { .. })));
        // −1 / z² : double pole, nullity 1
        let r = scalar_fraction(&[-1.0], &[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(partial_fraction(&r, &tol), Err(Error::NotSimple { .. })));
    }

    #[test]
    fn whw_examples() {
        let tol = Tolerances::default();
        let w = whw_identity_check(&two_by_two(), &tol).unwrap();
        assert!(w.residual <= 1e-10);
        assert!(w.moments_positive_definite());
        let r = scalar_fraction(&[-1.0], &[1.0, -1.0]).unwrap();
        let w = whw_identity_check(&r, &tol).unwrap();
        assert!(close(&w.moments, &real_matrix(2, 2, &[1.0, 1.0, 1.0, 2.0]), 1e-15));
        assert!(w.residual <= 1e-12);
    }

    #[test]
    fn non_self_adjoint_is_rejected() {
        let tol = Tolerances::default();
        let mut q = linalg::identity(2);
        q[(0, 1)] = c64(0.0, 1.0);
        let r = RationalMatrixFraction::new(
            MatrixPolynomial::constant(q),
            MatrixPolynomial::monomial(linalg::identity(2), 1),
        )
        .unwrap();
        assert!(matches!(classify_hn(&r, &tol), Err(Error::NotSelfAdjoint { .. })));
    }
}
