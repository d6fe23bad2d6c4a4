//! Anderson–Jury Bezoutians, their congruence to Hankel data, and
//! right-coprimeness tests.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMat, C64};
use crate::markov::{classify, Definiteness, Inertia, RationalMatrixFraction};
use crate::matpoly::MatrixPolynomial;
use crate::tolerance::Tolerances;

/// Coefficient matrix of (M̃(z)L̃(u) − M(z)L(u)) / (z − u) in the monomial
/// bases {I, zI, …} × {I, uI, …}.
#[derive(Debug, Clone, PartialEq)]
pub struct Bezoutian {
    pub n1: usize,
    pub n2: usize,
    pub p: usize,
    pub data: CMat,
}

impl Bezoutian {
    pub fn block(&self, a: usize, b: usize) -> CMat {
        self.data.view((a * self.p, b * self.p), (self.p, self.p)).into_owned()
    }

    /// Σ_{a,b} z^a D_{a,b} u^b.
    pub fn evaluate(&self, z: C64, u: C64) -> CMat {
        let mut acc = linalg::zeros(self.p);
        for a in 0..self.n1 {
            for b in 0..self.n2 {
                acc += self.block(a, b) * (z.powi(a as i32) * u.powi(b as i32));
            }
        }
        acc
    }
}

/// Bezoutian of the quadruple (M̃, M; L, L̃). The numerator must vanish on the
/// diagonal z = u, i.e. M̃(z)L̃(z) = M(z)L(z).
pub fn bezoutian(
    mt: &MatrixPolynomial,
    m: &MatrixPolynomial,
    l: &MatrixPolynomial,
    lt: &MatrixPolynomial,
    tol: &Tolerances,
) -> Result<Bezoutian> {
    let p = mt.p();
    for other in [m, l, lt] {
        if other.p() != p {
            return Err(Error::DimensionMismatch { expected: p, found: other.p() });
        }
    }
    let diag = &(mt * lt) - &(m * l);
    let scale = mt.max_coeff_norm() * lt.max_coeff_norm() + m.max_coeff_norm() * l.max_coeff_norm();
    let residual = if scale == 0.0 { 0.0 } else { diag.max_coeff_norm() / scale };
    if residual > tol.hermitian {
        return Err(Error::DiagonalNotZero { residual });
    }
    let deg = |f: &MatrixPolynomial| f.degree().unwrap_or(0);
    let n1 = deg(m).max(deg(mt));
    let n2 = deg(l).max(deg(lt));
    // N_{a,b}: coefficient of z^a u^b
    let numer =
        |a: usize, b: usize| -> CMat { mt.coefficient(a) * lt.coefficient(b) - m.coefficient(a) * l.coefficient(b) };
    let mut data = CMat::zeros(n1 * p, n2 * p);
    for a in 0..n1 {
        for b in 0..n2 {
            let mut d = linalg::zeros(p);
            for t in 0..=b {
                d += numer(a + 1 + t, b - t);
            }
            data.view_mut((a * p, b * p), (p, p)).copy_from(&d);
        }
    }
    Ok(Bezoutian { n1, n2, p, data })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceBranch {
    /// deg Q = deg P + 1: the slope A of the polynomial part is nonzero.
    Slope,
    /// deg Q ≤ deg P: A = 0.
    NoSlope,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Congruence {
    pub branch: CongruenceBranch,
    /// B_{P^∨,Q^∨}(P, Q) for the monic-normalized fraction.
    pub lhs: Bezoutian,
    /// T*·diag(−A, H_{m−1})·T, or T₀*·H_{m−1}·T₀.
    pub rhs: CMat,
    /// ‖lhs − rhs‖ / (1 + ‖rhs‖).
    pub residual: f64,
    /// Slope A of the polynomial part.
    pub slope: CMat,
    /// H_{m−1}(R).
    pub hankel: CMat,
}

/// Checks the Bezoutian–Hankel congruence for a self-adjoint fraction with
/// deg Q − deg P ≤ 1.
pub fn hankel_congruence(r: &RationalMatrixFraction, tol: &Tolerances) -> Result<Congruence> {
    let sa = r.self_adjointness(tol);
    if !sa.self_adjoint {
        return Err(Error::NotSelfAdjoint { defect: sa.coefficient_defect });
    }
    let gap = r.degree_gap();
    if gap > 1 {
        return Err(Error::DegreeGap { gap });
    }
    let r = r.normalized();
    let (q, pd) = (r.numerator(), r.denominator());
    let m = pd.degree().expect("nonzero denominator");
    if m == 0 {
        return Err(Error::DegreeGap { gap });
    }
    let p = r.p();
    let (poly, _) = r.split_proper()?;
    let slope = poly.coefficient(1);
    let seq = r.markov_parameters(2 * m)?;
    let hankel = seq.hankel(m - 1, tol)?.data;
    let lhs = bezoutian(&pd.adjoint_reverse(), &q.adjoint_reverse(), pd, q, tol)?;
    let (branch, rhs) = if q.signed_degree() == m as i64 + 1 {
        let t = anti_triangular(pd, m + 1, 0);
        let mid = linalg::block_diag(&[&(-&slope), &hankel]);
        (CongruenceBranch::Slope, t.adjoint() * mid * t)
    } else {
        let t = anti_triangular(pd, m, 1);
        (CongruenceBranch::NoSlope, t.adjoint() * &hankel * t)
    };
    let residual = if lhs.data.shape() == rhs.shape() {
        linalg::norm(&(&lhs.data - &rhs)) / (1.0 + linalg::norm(&rhs))
    } else {
        f64::INFINITY
    };
    debug_assert_eq!(rhs.nrows() % p, 0);
    Ok(Congruence { branch, lhs, rhs, residual, slope, hankel })
}

/// Inertia of H_{m−1}(R), m = deg P, read off the Bezoutian.
///
/// The Hankel matrix has entries growing like (largest pole)^{2m}; the
/// Bezoutian is built from coefficients of P and Q directly and is much
/// better conditioned. The congruence factor is invertible (its
/// anti-diagonal blocks are the leading block I of the monic P).
#[derive(Debug, Clone, PartialEq)]
pub struct HankelInertia {
    pub class: Definiteness,
    pub inertia: Inertia,
    /// Inertia of the Bezoutian itself.
    pub bezoutian: Inertia,
    /// Margin of the Bezoutian's classification.
    pub margin: f64,
    pub branch: CongruenceBranch,
    pub residual: f64,
}

/// Congruence residual above which the Bezoutian is not trusted.
const CONGRUENCE_TRUST: f64 = 1e-6;

/// Relative size of Bezoutian eigenvalues that rounding alone can produce.
const ROUNDING_FLOOR: f64 = 1e-13;

/// `None` when the congruence does not apply (deg P = 0, deg Q − deg P > 1,
/// not self-adjoint) or does not hold numerically.
pub fn hankel_inertia(r: &RationalMatrixFraction, tol: &Tolerances) -> Option<HankelInertia> {
    let original = r;
    let r = &recentered(r, tol);
    let c = hankel_congruence(r, tol).ok()?;
    if c.residual > CONGRUENCE_TRUST {
        return None;
    }
    let n = r.normalized();
    let reference = n.numerator().max_coeff_norm() * n.denominator().max_coeff_norm();
    let mut b = classify(&c.lhs.data, reference, tol).ok()?;
    if b.inertia.zero > 0 && b.class != Definiteness::Zero {
        // A coprime pair has a nonsingular Bezoutian, so its small eigenvalues
        // carry a sign as long as they clear the rounding floor.
        let pointwise = coprime_pointwise(original.numerator(), original.denominator(), tol);
        if pointwise.coprime && pointwise.gap > tol.rank {
            let top = b.scaled_eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
            let floor = ROUNDING_FLOOR.max(10.0 * c.residual) * top;
            if b.scaled_eigenvalues.iter().all(|x| x.abs() > floor) {
                let positive = b.scaled_eigenvalues.iter().filter(|&&x| x > 0.0).count();
                b.inertia = Inertia { positive, negative: b.scaled_eigenvalues.len() - positive, zero: 0 };
            }
        }
    }
    let inertia = match c.branch {
        CongruenceBranch::NoSlope => b.inertia,
        CongruenceBranch::Slope => {
            let a = classify(&(-&c.slope), linalg::norm(&c.slope), tol).ok()?;
            b.inertia.minus(a.inertia)?
        }
    };
    Some(HankelInertia {
        class: inertia.class(),
        inertia,
        bezoutian: b.inertia,
        margin: b.margin,
        branch: c.branch,
        residual: c.residual,
    })
}

/// R(a + b·z) with a, b > 0 chosen to map the poles into the unit disk.
/// Inertia is unchanged; the Bezoutian is far better conditioned when the
/// poles sit away from the origin.
fn recentered(r: &RationalMatrixFraction, tol: &Tolerances) -> RationalMatrixFraction {
    let Ok(spec) = r.denominator().spectrum(tol) else { return r.clone() };
    let poles = spec.values();
    if poles.is_empty() {
        return r.clone();
    }
    let a = poles.iter().map(|z| z.re).sum::<f64>() / poles.len() as f64;
    let b = poles.iter().map(|z| (z - a).norm()).fold(0.0, f64::max);
    if !(b > 0.0 && b.is_finite()) {
        return r.clone();
    }
    let q = r.numerator().compose_affine(a, b);
    let p = r.denominator().compose_affine(a, b);
    RationalMatrixFraction::new(q, p).unwrap_or_else(|_| r.clone())
}

/// Upper-left anti-triangular block matrix with block (i, j) equal to the
/// coefficient of z^{i+j+offset} in P.
fn anti_triangular(pd: &MatrixPolynomial, blocks: usize, offset: usize) -> CMat {
    let p = pd.p();
    let rows: Vec<Vec<CMat>> =
        (0..blocks).map(|i| (0..blocks).map(|j| pd.coefficient(i + j + offset)).collect()).collect();
    linalg::block_matrix(&rows, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoprimeMethod {
    /// Rank of the slope and of H_{m−1}(R).
    Bezoutian,
    /// Column rank of the block Sylvester resultant.
    Sylvester,
    /// rank [Q(λ); P(λ)] at every zero λ of one of the two.
    Pointwise,
    /// Neither polynomial is regular; no decision could be made.
    Undetermined,
}

impl fmt::Display for CoprimeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Bezoutian => "bezoutian",
            Self::Sylvester => "sylvester",
            Self::Pointwise => "pointwise",
            Self::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoprimeEvidence {
    pub coprime: bool,
    pub method: CoprimeMethod,
    pub rank: usize,
    /// Rank required for coprimeness.
    pub size: usize,
    /// Smallest retained singular value (or scaled eigenvalue) relative to the
    /// largest; small values mean the decision sat close to the threshold.
    pub gap: f64,
}

/// Right coprimeness of (Q, P): every common right divisor is unimodular.
pub fn right_coprime(q: &MatrixPolynomial, pd: &MatrixPolynomial, tol: &Tolerances) -> CoprimeEvidence {
    if let Some(ev) = coprime_via_bezoutian(q, pd, tol) {
        return ev;
    }
    if let Some(ev) = coprime_via_sylvester(q, pd, tol) {
        return ev;
    }
    if let Some(ev) = coprime_via_sylvester(pd, q, tol) {
        return ev;
    }
    coprime_pointwise(q, pd, tol)
}

/// Decision from the Bezoutian–Hankel congruence; `None` when its hypotheses fail
/// (R not self-adjoint, |deg Q − deg P| > 1, Q singular, P without an
/// invertible leading block).
pub fn coprime_via_bezoutian(q: &MatrixPolynomial, pd: &MatrixPolynomial, tol: &Tolerances) -> Option<CoprimeEvidence> {
    let r = RationalMatrixFraction::new(q.clone(), pd.clone()).ok()?;
    if r.degree_gap().abs() > 1 || pd.degree()? == 0 || !q.is_regular(tol) || !r.is_self_adjoint(tol) {
        return None;
    }
    if let Some(hi) = hankel_inertia(&r, tol) {
        let b = hi.bezoutian;
        let rank = b.positive + b.negative;
        let size = rank + b.zero;
        return Some(CoprimeEvidence {
            coprime: b.zero == 0,
            method: CoprimeMethod::Bezoutian,
            rank,
            size,
            gap: hi.margin,
        });
    }
    let r = r.normalized();
    let m = r.denominator().degree()?;
    let seq = r.markov_parameters(2 * m).ok()?;
    let h = seq.hankel(m - 1, tol).ok()?;
    let hd = h.definiteness.as_ref()?;
    let thr = tol.definiteness;
    let mut rank = hd.scaled_eigenvalues.iter().filter(|x| x.abs() > thr * top(&hd.scaled_eigenvalues)).count();
    if hd.class == crate::markov::Definiteness::Zero {
        rank = 0;
    }
    let mut size = m * r.p();
    let mut gap = hd.margin;
    if r.degree_gap() == 1 {
        let (poly, _) = r.split_proper().ok()?;
        let slope = poly.coefficient(1);
        let sd = classify(&slope, seq.scale(), tol).ok()?;
        let srank = if sd.class == crate::markov::Definiteness::Zero {
            0
        } else {
            sd.scaled_eigenvalues.iter().filter(|x| x.abs() > thr * top(&sd.scaled_eigenvalues)).count()
        };
        rank += srank;
        size += r.p();
        gap = gap.min(sd.margin);
    }
    Some(CoprimeEvidence { coprime: rank == size, method: CoprimeMethod::Bezoutian, rank, size, gap })
}

fn top(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Column rank of the block Sylvester resultant of (Q, P); `None` unless P has
/// an invertible leading block.
///
/// With q = deg Q and m = deg P, K = q + m·p column blocks are used; the
/// resultant has full column rank exactly when Q(λ)v = P(λ)v = 0 has no
/// solution v ≠ 0.
pub fn coprime_via_sylvester(q: &MatrixPolynomial, pd: &MatrixPolynomial, tol: &Tolerances) -> Option<CoprimeEvidence> {
    let p = pd.p();
    let m = pd.degree()?;
    if pd.leading_rcond() < 1e-10 {
        return None;
    }
    if m == 0 {
        return Some(CoprimeEvidence { coprime: true, method: CoprimeMethod::Sylvester, rank: 0, size: 0, gap: 1.0 });
    }
    let Some(qdeg) = q.degree() else {
        // Q = 0: the common divisor P is not unimodular
        return Some(CoprimeEvidence { coprime: false, method: CoprimeMethod::Sylvester, rank: 0, size: p, gap: 0.0 });
    };
    let s = pd.root_scale();
    let scaled = |f: &MatrixPolynomial| -> Vec<CMat> {
        let asc = f.ascending();
        let mut out: Vec<CMat> = asc.iter().enumerate().map(|(k, c)| c * c64(s.powi(k as i32), 0.0)).collect();
        let norm = out.iter().map(linalg::norm).fold(0.0, f64::max);
        for c in &mut out {
            *c /= c64(norm, 0.0);
        }
        out
    };
    let (qa, pa) = (scaled(q), scaled(pd));
    let k = qdeg + m * p;
    let rows = (k - qdeg) + (k - m);
    let mut sylv = CMat::zeros(rows * p, k * p);
    let mut r = 0;
    for (coeffs, deg) in [(&qa, qdeg), (&pa, m)] {
        for shift in 0..k - deg {
            for (j, c) in coeffs.iter().enumerate() {
                sylv.view_mut((r * p, (shift + j) * p), (p, p)).copy_from(c);
            }
            r += 1;
        }
    }
    let sv = linalg::singular_values(&sylv);
    let smax = sv[0];
    let thr = tol.rank * smax * (k * p) as f64;
    let rank = sv.iter().filter(|&&x| x > thr).count();
    let size = k * p;
    let gap = sv.get(size - 1).map_or(0.0, |x| x / smax);
    Some(CoprimeEvidence { coprime: rank == size, method: CoprimeMethod::Sylvester, rank, size, gap })
}

/// rank [Q(λ); P(λ)] = p at every zero λ of P (or of Q, when P is singular).
pub fn coprime_pointwise(q: &MatrixPolynomial, pd: &MatrixPolynomial, tol: &Tolerances) -> CoprimeEvidence {
    let p = pd.p();
    let zeros = pd.spectrum(tol).or_else(|_| q.spectrum(tol));
    let Ok(zeros) = zeros else {
        return CoprimeEvidence { coprime: false, method: CoprimeMethod::Undetermined, rank: 0, size: p, gap: 0.0 };
    };
    let mut worst_rank = p;
    let mut gap = 1.0_f64;
    for e in &zeros.entries {
        let mut stacked = CMat::zeros(2 * p, p);
        stacked.view_mut((0, 0), (p, p)).copy_from(&q.evaluate(e.value));
        stacked.view_mut((p, 0), (p, p)).copy_from(&pd.evaluate(e.value));
        let scale = q.magnitude_at(e.value) + pd.magnitude_at(e.value);
        let rank = p - linalg::count_singular_below(&stacked, tol.rank * scale);
        worst_rank = worst_rank.min(rank);
        let smin = linalg::singular_values(&stacked)[p - 1];
        gap = gap.min(if scale > 0.0 { smin / scale } else { 0.0 });
    }
    CoprimeEvidence { coprime: worst_rank == p, method: CoprimeMethod::Pointwise, rank: worst_rank, size: p, gap }
}
