//! Rational matrix fractions R = Q·P⁻¹, their Laurent coefficients at infinity
//! and the block Hankel matrices built from them.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64};
use crate::matpoly::MatrixPolynomial;
use crate::tolerance::Tolerances;

/// R(z) = Q(z)·P(z)⁻¹.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrixFraction {
    numerator: MatrixPolynomial,
    denominator: MatrixPolynomial,
}

impl RationalMatrixFraction {
    /// The denominator must have an invertible leading block; it does not
    /// have to be monic.
    pub fn new(numerator: MatrixPolynomial, denominator: MatrixPolynomial) -> Result<Self> {
        if numerator.p() != denominator.p() {
            return Err(Error::DimensionMismatch { expected: denominator.p(), found: numerator.p() });
        }
        let rcond = denominator.leading_rcond();
        if rcond < Tolerances::default().regularity {
            return Err(Error::NonInvertibleLeading { rcond });
        }
        Ok(Self { numerator, denominator })
    }

    pub fn numerator(&self) -> &MatrixPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &MatrixPolynomial {
        &self.denominator
    }

    pub fn p(&self) -> usize {
        self.denominator.p()
    }

    /// deg Q − deg P, with the zero numerator counted as degree −1.
    pub fn degree_gap(&self) -> i64 {
        self.numerator.signed_degree() - self.denominator.signed_degree()
    }

    /// Same function with a monic denominator: (Q·L⁻¹)(P·L⁻¹)⁻¹, L the
    /// leading block of P.
    pub fn normalized(&self) -> Self {
        let lead = self.denominator.leading().expect("nonzero denominator");
        if self.denominator.is_monic(0.0) {
            return self.clone();
        }
        let inv = linalg::inverse(lead).expect("checked on construction");
        let mut den = self.denominator.mul_right(&inv);
        // pin the leading block to I exactly
        let mut coeffs = den.coeffs().to_vec();
        coeffs[0] = linalg::identity(self.p());
        den = MatrixPolynomial::new(self.p(), coeffs).expect("same size");
        Self { numerator: self.numerator.mul_right(&inv), denominator: den }
    }

    /// R(z), or `None` when P(z) is numerically singular.
    pub fn evaluate(&self, z: C64) -> Option<CMat> {
        let pz = self.denominator.evaluate(z);
        if linalg::inverse_condition(&pz) < 1e-14 {
            return None;
        }
        Some(self.numerator.evaluate(z) * linalg::inverse(&pz)?)
    }

    /// Polynomial part and strictly proper numerator: R = R_p + Q̃·P⁻¹.
    pub fn split_proper(&self) -> Result<(MatrixPolynomial, MatrixPolynomial)> {
        self.numerator.right_divide(&self.denominator)
    }

    /// Laurent coefficients at infinity up to s_N.
    pub fn markov_parameters(&self, n: usize) -> Result<MarkovSequence> {
        let (poly, proper_num) = self.split_proper()?;
        let monic = Self::new(proper_num, self.denominator.clone())?.normalized();
        let m = monic.denominator.degree().expect("nonzero");
        let a = monic.denominator.coeffs();
        let b = monic.numerator.clone();
        let mut s: Vec<CMat> = Vec::with_capacity(n + 1);
        for j in 0..=n {
            // B_{j+1} is the coefficient of z^{m−1−j}
            let mut sj = if j < m { b.coefficient(m - 1 - j) } else { linalg::zeros(self.p()) };
            for k in 1..=j.min(m) {
                sj -= &s[j - k] * &a[k];
            }
            s.push(sj);
        }
        Ok(MarkovSequence { p: self.p(), poly_part: poly.ascending(), proper: s })
    }

    /// Markov parameters with the default truncation 2·deg P + 2.
    pub fn default_markov(&self) -> Result<MarkovSequence> {
        let m = self.denominator.degree().unwrap_or(0);
        self.markov_parameters(2 * m + 2)
    }

    /// lim_{z→∞} R(z) when it exists (deg Q ≤ deg P).
    pub fn limit_at_infinity(&self) -> Result<Option<CMat>> {
        if self.degree_gap() > 0 {
            return Ok(None);
        }
        let (poly, _) = self.split_proper()?;
        Ok(Some(poly.coefficient(0)))
    }

    /// Self-adjointness R(z) = R(z̄)*, decided by P^∨Q = Q^∨P on
    /// coefficients, with a sampled cross-check.
    pub fn self_adjointness(&self, tol: &Tolerances) -> SelfAdjointness {
        let lhs = &self.denominator.adjoint_reverse() * &self.numerator;
        let rhs = &self.numerator.adjoint_reverse() * &self.denominator;
        let diff = (&lhs - &rhs).max_coeff_norm();
        let scale = self.numerator.max_coeff_norm() * self.denominator.max_coeff_norm();
        let coefficient_defect = if scale == 0.0 { 0.0 } else { diff / scale };
        let sampled_defect = self.sampled_self_adjoint_defect();
        SelfAdjointness { self_adjoint: coefficient_defect <= tol.hermitian, coefficient_defect, sampled_defect }
    }

    pub fn is_self_adjoint(&self, tol: &Tolerances) -> bool {
        self.self_adjointness(tol).self_adjoint
    }

    fn sampled_self_adjoint_defect(&self) -> f64 {
        let s = self.denominator.root_scale();
        let mut worst = 0.0_f64;
        for k in 0..16 {
            let r = s * (0.3 + 0.29 * k as f64);
            let theta = 0.41 + 2.399_963 * k as f64;
            let z = C64::from_polar(r, theta);
            if let (Some(a), Some(b)) = (self.evaluate(z), self.evaluate(z.conj())) {
                let d = linalg::norm(&(&a - b.adjoint())) / (1.0 + linalg::norm(&a));
                worst = worst.max(d);
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfAdjointness {
    pub self_adjoint: bool,
    /// max‖(P^∨Q − Q^∨P)_k‖ / (max‖Q_k‖·max‖P_k‖).
    pub coefficient_defect: f64,
    /// max over sample points of ‖R(z) − R(z̄)*‖ / (1 + ‖R(z)‖).
    pub sampled_defect: f64,
}

/// Laurent coefficients of R at infinity:
/// R(z) = Σ_j s_{−(j+1)} z^j + Σ_{j≥0} s_j z^{−(j+1)}.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovSequence {
    p: usize,
    /// `poly_part[j]` = s_{−(j+1)}, the coefficient of z^j.
    poly_part: Vec<CMat>,
    /// s_0 … s_N.
    proper: Vec<CMat>,
}

impl MarkovSequence {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn poly_part(&self) -> &[CMat] {
        &self.poly_part
    }

    pub fn proper(&self) -> &[CMat] {
        &self.proper
    }

    /// Largest available index N.
    pub fn truncation(&self) -> usize {
        self.proper.len() - 1
    }

    /// s_i for any i ≥ −∞; negative indices beyond the polynomial part are zero.
    pub fn get(&self, i: i64) -> Option<CMat> {
        if i >= 0 {
            self.proper.get(i as usize).cloned()
        } else {
            let j = (-i - 1) as usize;
            Some(self.poly_part.get(j).cloned().unwrap_or_else(|| linalg::zeros(self.p)))
        }
    }

    /// Truncated Laurent sum at z.
    pub fn evaluate(&self, z: C64) -> CMat {
        let mut acc = linalg::zeros(self.p);
        for (j, c) in self.poly_part.iter().enumerate() {
            acc += c * z.powi(j as i32);
        }
        let w = z.inv();
        let mut wp = w;
        for c in &self.proper {
            acc += c * wp;
            wp *= w;
        }
        acc
    }

    /// H_{j,k} = [s_{j+a+b}]_{a,b=0..k}.
    pub fn block_hankel(&self, j: i64, k: usize, tol: &Tolerances) -> Result<BlockHankel> {
        let top = j + 2 * k as i64;
        if top > self.truncation() as i64 {
            return Err(Error::InsufficientCoefficients { needed: top, available: self.truncation() as i64 });
        }
        let p = self.p;
        let blocks: Vec<Vec<CMat>> =
            (0..=k).map(|a| (0..=k).map(|b| self.get(j + (a + b) as i64).expect("in range")).collect()).collect();
        let data = linalg::block_matrix(&blocks, p);
        let zero_filled = k > 0 && j < 0 && (-j - 1) as usize >= self.poly_part.len();
        let low = -(self.poly_part.len() as i64);
        let reference = (low.min(j)..=top).filter_map(|i| self.get(i)).map(|c| linalg::norm(&c)).fold(0.0, f64::max);
        let hermitian_defect = linalg::hermitian_defect(&data);
        let definiteness = classify(&data, reference, tol).ok();
        Ok(BlockHankel { j, k, p, data, hermitian_defect, definiteness, zero_filled })
    }

    /// H_k = H_{0,k}.
    pub fn hankel(&self, k: usize, tol: &Tolerances) -> Result<BlockHankel> {
        self.block_hankel(0, k, tol)
    }

    /// Largest coefficient norm, a scale for "numerically zero".
    pub fn scale(&self) -> f64 {
        self.poly_part.iter().chain(&self.proper).map(linalg::norm).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PosDef,
    NegDef,
    PosSemiDef,
    NegSemiDef,
    Indefinite,
    Zero,
}

impl Definiteness {
    pub fn is_negative_definite(self) -> bool {
        self == Self::NegDef
    }

    /// ⪰ 0, counting the zero matrix.
    pub fn is_nonnegative(self) -> bool {
        matches!(self, Self::PosDef | Self::PosSemiDef | Self::Zero)
    }

    pub fn is_nonpositive(self) -> bool {
        matches!(self, Self::NegDef | Self::NegSemiDef | Self::Zero)
    }

    pub fn has_positive_eigenvalue(self) -> bool {
        matches!(self, Self::PosDef | Self::PosSemiDef | Self::Indefinite)
    }

    pub fn has_negative_eigenvalue(self) -> bool {
        matches!(self, Self::NegDef | Self::NegSemiDef | Self::Indefinite)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::PosDef => "PosDef",
            Self::NegDef => "NegDef",
            Self::PosSemiDef => "PosSemiDef",
            Self::NegSemiDef => "NegSemiDef",
            Self::Indefinite => "Indefinite",
            Self::Zero => "Zero",
        }
    }
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Numbers of positive, negative and (numerically) zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn class(self) -> Definiteness {
        match (self.positive, self.negative, self.zero) {
            (0, 0, _) => Definiteness::Zero,
            (_, 0, 0) => Definiteness::PosDef,
            (0, _, 0) => Definiteness::NegDef,
            (p, n, _) if p > 0 && n > 0 => Definiteness::Indefinite,
            (_, 0, _) => Definiteness::PosSemiDef,
            _ => Definiteness::NegSemiDef,
        }
    }

    /// Inertia of Y when `self` is the inertia of diag(X, Y) and `known`
    /// that of X.
    pub fn minus(self, known: Inertia) -> Option<Inertia> {
        Some(Inertia {
            positive: self.positive.checked_sub(known.positive)?,
            negative: self.negative.checked_sub(known.negative)?,
            zero: self.zero.checked_sub(known.zero)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefinitenessReport {
    pub class: Definiteness,
    pub inertia: Inertia,
    /// Eigenvalues of the Hermitian part, ascending.
    pub eigenvalues: Vec<f64>,
    /// Eigenvalues after diagonal (Jacobi) congruence scaling, ascending.
    pub scaled_eigenvalues: Vec<f64>,
    /// Smallest |scaled eigenvalue| relative to the largest one.
    pub margin: f64,
}

/// Classifies a Hermitian matrix with `max(1, ‖H‖)`-style scaling.
pub fn definiteness(h: &CMat, tol: &Tolerances) -> Result<DefinitenessReport> {
    classify(h, 1.0, tol)
}

/// Classifies H by inertia. `reference` is the magnitude below which the
/// whole matrix counts as zero (scaled by the definiteness tolerance).
pub fn classify(h: &CMat, reference: f64, tol: &Tolerances) -> Result<DefinitenessReport> {
    let defect = linalg::hermitian_defect(h);
    if defect > tol.hermitian {
        return Err(Error::NotHermitian { defect });
    }
    let herm = linalg::hermitian_part(h);
    let eigenvalues = linalg::hermitian_eigenvalues(&herm);
    let hnorm = linalg::norm(&herm);
    if hnorm <= tol.definiteness * reference.max(f64::MIN_POSITIVE) {
        return Ok(DefinitenessReport {
            class: Definiteness::Zero,
            inertia: Inertia { positive: 0, negative: 0, zero: eigenvalues.len() },
            scaled_eigenvalues: vec![0.0; eigenvalues.len()],
            eigenvalues,
            margin: 0.0,
        });
    }
    let scaled = linalg::jacobi_scaled(&herm, tol.definiteness);
    let mu = linalg::hermitian_eigenvalues(&scaled);
    let top = mu.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let thr = tol.definiteness * top;
    let positive = mu.iter().filter(|&&x| x > thr).count();
    let negative = mu.iter().filter(|&&x| x < -thr).count();
    let inertia = Inertia { positive, negative, zero: mu.len() - positive - negative };
    let margin = mu.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min) / top;
    Ok(DefinitenessReport { class: inertia.class(), inertia, eigenvalues, scaled_eigenvalues: mu, margin })
}

/// Block Hankel matrix H_{j,k} with its definiteness classification.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockHankel {
    pub j: i64,
    pub k: usize,
    pub p: usize,
    pub data: CMat,
    pub hermitian_defect: f64,
    /// `None` when the matrix is not Hermitian within tolerance.
    pub definiteness: Option<DefinitenessReport>,
    /// Set when entries were taken from beyond the polynomial part (zeros).
    pub zero_filled: bool,
}

impl BlockHankel {
    pub fn class(&self) -> Option<Definiteness> {
        self.definiteness.as_ref().map(|d| d.class)
    }

    pub fn block(&self, a: usize, b: usize) -> CMat {
        self.data.view((a * self.p, b * self.p), (self.p, self.p)).into_owned()
    }
}

/// Convenience: the scalar fraction q/p as a 1×1 matrix fraction.
pub fn scalar_fraction(q: &[f64], p: &[f64]) -> Result<RationalMatrixFraction> {
    RationalMatrixFraction::new(MatrixPolynomial::diagonal(&[q]), MatrixPolynomial::diagonal(&[p]))
}
