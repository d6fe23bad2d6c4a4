//! Square matrix polynomials F(z) = Σ A_k z^{n−k} with complex p×p coefficients.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMat, C64};
use crate::tolerance::Tolerances;

/// Below this reciprocal condition number the leading block is not used to
/// build the block companion matrix.
const COMPANION_RCOND: f64 = 1e-10;

/// Relative noise floor of interpolated coefficients.
const INTERPOLATION_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    p: usize,
    /// Leading coefficient first. Empty for the zero polynomial.
    coeffs: Vec<CMat>,
}

impl MatrixPolynomial {
    /// Builds `Σ coeffs[k] z^{n−k}`, dropping negligible leading blocks.
    pub fn new(p: usize, coeffs: Vec<CMat>) -> Result<Self> {
        if p == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for c in &coeffs {
            if c.nrows() != p || c.ncols() != p {
                return Err(Error::DimensionMismatch { expected: p, found: c.nrows().max(c.ncols()) });
            }
        }
        let mut poly = Self { p, coeffs };
        poly.trim(Tolerances::default().trim);
        Ok(poly)
    }

    pub fn zero(p: usize) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn identity(p: usize) -> Self {
        Self::constant(linalg::identity(p))
    }

    pub fn constant(m: CMat) -> Self {
        let p = m.nrows();
        Self::new(p, vec![m]).expect("square constant")
    }

    /// `m · z^k`.
    pub fn monomial(m: CMat, k: usize) -> Self {
        let p = m.nrows();
        let mut coeffs = vec![m];
        coeffs.extend((0..k).map(|_| linalg::zeros(p)));
        Self::new(p, coeffs).expect("square monomial")
    }

    /// Real coefficient blocks, each given row-major, leading block first.
    pub fn from_real(p: usize, blocks: &[&[f64]]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.len() != p * p {
                return Err(Error::DimensionMismatch { expected: p * p, found: b.len() });
            }
            coeffs.push(linalg::real_matrix(p, p, b));
        }
        Self::new(p, coeffs)
    }

    /// Diagonal polynomial from real scalar coefficient lists (leading first).
    pub fn diagonal(entries: &[&[f64]]) -> Self {
        let polys: Vec<ScalarPolynomial> = entries.iter().map(|c| ScalarPolynomial::from_real(c)).collect();
        Self::from_diagonal(&polys)
    }

    pub fn from_diagonal(entries: &[ScalarPolynomial]) -> Self {
        let p = entries.len();
        let n = entries.iter().filter_map(ScalarPolynomial::degree).max().unwrap_or(0);
        let mut asc = vec![linalg::zeros(p); n + 1];
        for (i, f) in entries.iter().enumerate() {
            for (k, c) in f.ascending().into_iter().enumerate() {
                asc[k][(i, i)] = c;
            }
        }
        Self::from_ascending(p, asc)
    }

    /// Builds from coefficients ordered by increasing power.
    pub fn from_ascending(p: usize, mut asc: Vec<CMat>) -> Self {
        asc.reverse();
        Self::new(p, asc).expect("coefficients share the size p")
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to −1.
    pub fn signed_degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients, leading first.
    pub fn coeffs(&self) -> &[CMat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&CMat> {
        self.coeffs.first()
    }

    /// Coefficients ordered by increasing power.
    pub fn ascending(&self) -> Vec<CMat> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Coefficient of `z^k` (zero when out of range).
    pub fn coefficient(&self, k: usize) -> CMat {
        match self.degree() {
            Some(n) if k <= n => self.coeffs[n - k].clone(),
            _ => linalg::zeros(self.p),
        }
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(linalg::norm).fold(0.0, f64::max)
    }

    /// True when every coefficient is (numerically) Hermitian.
    pub fn has_hermitian_coefficients(&self, tol: f64) -> bool {
        let scale = self.max_coeff_norm().max(f64::MIN_POSITIVE);
        self.coeffs.iter().all(|c| linalg::norm(&(c - c.adjoint())) <= tol * scale)
    }

    /// Reciprocal condition number of the leading block (0 for the zero polynomial).
    pub fn leading_rcond(&self) -> f64 {
        self.leading().map_or(0.0, linalg::inverse_condition)
    }

    pub fn is_monic(&self, tol: f64) -> bool {
        self.leading().is_some_and(|l| linalg::norm(&(l - linalg::identity(self.p))) <= tol)
    }

    fn trim(&mut self, rel: f64) {
        let max = self.max_coeff_norm();
        if max == 0.0 {
            self.coeffs.clear();
            return;
        }
        let drop = self.coeffs.iter().take_while(|c| linalg::norm(c) <= rel * max).count();
        self.coeffs.drain(..drop);
    }

    pub fn evaluate(&self, z: C64) -> CMat {
        let mut acc = linalg::zeros(self.p);
        for c in &self.coeffs {
            acc = acc * z + c;
        }
        acc
    }

    /// k-th derivative, coefficient-wise.
    pub fn derivative(&self, k: usize) -> Self {
        let asc = self.ascending();
        if k >= asc.len() {
            return Self::zero(self.p);
        }
        let out = asc.iter().enumerate().skip(k).map(|(j, c)| c * c64(falling_factorial(j, k), 0.0)).collect();
        Self::from_ascending(self.p, out)
    }

    /// F^∨(z) = Σ A_k^* z^{n−k}.
    pub fn adjoint_reverse(&self) -> Self {
        Self { p: self.p, coeffs: self.coeffs.iter().map(CMat::adjoint).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|c| c * s).collect()).expect("same size")
    }

    /// F(z)·M.
    pub fn mul_right(&self, m: &CMat) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|c| c * m).collect()).expect("same size")
    }

    /// M·F(z).
    pub fn mul_left(&self, m: &CMat) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|c| m * c).collect()).expect("same size")
    }

    /// z^k · F(z).
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.extend((0..k).map(|_| linalg::zeros(self.p)));
        Self { p: self.p, coeffs }
    }

    /// F(a + b·z).
    pub fn compose_affine(&self, a: f64, b: f64) -> Self {
        let mut acc: Vec<CMat> = Vec::new();
        for c in &self.coeffs {
            // acc ← acc·(a + b z) + c
            let mut next: Vec<CMat> = acc.iter().map(|x| x * c64(a, 0.0)).collect();
            next.push(linalg::zeros(self.p));
            for (k, x) in acc.iter().enumerate() {
                next[k + 1] += x * c64(b, 0.0);
            }
            next[0] += c;
            acc = next;
        }
        Self::from_ascending(self.p, acc)
    }

    /// F(z²).
    pub fn compose_square(&self) -> Self {
        let mut asc = Vec::new();
        for c in self.ascending() {
            asc.push(c);
            asc.push(linalg::zeros(self.p));
        }
        asc.pop();
        Self::from_ascending(self.p, asc)
    }

    /// Right division `self = C·divisor + E` with deg E < deg divisor.
    ///
    /// The divisor only needs an invertible leading block.
    pub fn right_divide(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_size(divisor)?;
        let m = divisor.degree().ok_or(Error::NonInvertibleLeading { rcond: 0.0 })?;
        let lead = divisor.leading().expect("nonzero divisor");
        let rcond = linalg::inverse_condition(lead);
        if rcond < Tolerances::default().regularity {
            return Err(Error::NonInvertibleLeading { rcond });
        }
        let lead_inv = linalg::inverse(lead).ok_or(Error::NonInvertibleLeading { rcond })?;
        let n = match self.degree() {
            Some(n) if n >= m => n,
            _ => return Ok((Self::zero(self.p), self.clone())),
        };
        let d_asc = divisor.ascending();
        let mut rem = self.ascending();
        let mut quot = vec![linalg::zeros(self.p); n - m + 1];
        for d in (0..=n - m).rev() {
            let t = &rem[d + m] * &lead_inv;
            for (k, dk) in d_asc.iter().enumerate() {
                rem[d + k] -= &t * dk;
            }
            rem[d + m] = linalg::zeros(self.p);
            quot[d] = t;
        }
        rem.truncate(m);
        Ok((Self::from_ascending(self.p, quot), Self::from_ascending(self.p, rem)))
    }

    /// Even and odd parts with F(z) = F_e(z²) + z·F_o(z²).
    pub fn even_odd_split(&self) -> (Self, Self) {
        let asc = self.ascending();
        let even = asc.iter().step_by(2).cloned().collect();
        let odd = asc.iter().skip(1).step_by(2).cloned().collect();
        (Self::from_ascending(self.p, even), Self::from_ascending(self.p, odd))
    }

    /// Rough modulus of the largest zero, used to place sample points and scale
    /// companion matrices.
    pub fn root_scale(&self) -> f64 {
        let Some(n) = self.degree() else { return 1.0 };
        if n == 0 {
            return 1.0;
        }
        let lead = &self.coeffs[0];
        if linalg::inverse_condition(lead) >= COMPANION_RCOND {
            let inv = linalg::inverse(lead).expect("well conditioned");
            let s = (1..=n).map(|k| linalg::norm(&(&inv * &self.coeffs[k])).powf(1.0 / k as f64)).fold(0.0, f64::max);
            if s > 0.0 && s.is_finite() {
                return s;
            }
            return 1.0;
        }
        let lead_norm = linalg::norm(lead);
        1.0 + self.coeffs[1..].iter().map(|c| linalg::norm(c) / lead_norm).fold(0.0, f64::max)
    }

    /// Radius for interpolation circles: the geometric mean modulus of the
    /// zeros when it is defined, otherwise [`root_scale`](Self::root_scale).
    fn interpolation_radius(&self) -> f64 {
        let Some(n) = self.degree() else { return 1.0 };
        if n == 0 {
            return 1.0;
        }
        let d0 = linalg::determinant(&self.coeffs[0]).norm();
        let dn = linalg::determinant(&self.coeffs[n]).norm();
        let scale = self.root_scale();
        if d0 > 0.0 && dn > 0.0 && self.leading_rcond() >= COMPANION_RCOND {
            let g = (dn / d0).powf(1.0 / (n * self.p) as f64);
            if g.is_finite() && g > 1e-3 * scale {
                return g;
            }
        }
        scale
    }

    /// det F(z) by interpolation on a scaled circle of roots of unity.
    pub fn determinant_poly(&self) -> ScalarPolynomial {
        let Some(n) = self.degree() else { return ScalarPolynomial::zero() };
        let rho = self.interpolation_radius();
        let asc = interpolate_on_circle(n * self.p, rho, |z| linalg::determinant(&self.evaluate(z)));
        ScalarPolynomial::from_ascending(asc)
    }

    /// adj F(z) by entrywise interpolation of cofactors.
    pub fn adjugate_poly(&self) -> Self {
        let p = self.p;
        if p == 1 {
            return Self::identity(1);
        }
        let Some(n) = self.degree() else { return Self::zero(p) };
        let big_n = n * (p - 1);
        let rho = self.interpolation_radius();
        let samples: Vec<CMat> =
            circle_points(big_n, rho).into_iter().map(|z| linalg::adjugate(&self.evaluate(z))).collect();
        let mut asc = vec![linalg::zeros(p); big_n + 1];
        for i in 0..p {
            for j in 0..p {
                let values: Vec<C64> = samples.iter().map(|m| m[(i, j)]).collect();
                for (k, c) in inverse_dft_coefficients(&values, rho).into_iter().enumerate() {
                    asc[k][(i, j)] = c;
                }
            }
        }
        Self::from_ascending(p, asc)
    }

    /// det F ≢ 0, decided by the best reciprocal condition number of F(z)
    /// over a handful of scattered sample points.
    pub fn is_regular(&self, tol: &Tolerances) -> bool {
        if self.is_zero() {
            return false;
        }
        let s = self.root_scale();
        regularity_probe_points(s).into_iter().any(|z| linalg::inverse_condition(&self.evaluate(z)) > tol.regularity)
    }

    /// Zeros of det F(z) with multiplicities.
    pub fn spectrum(&self, tol: &Tolerances) -> Result<Spectrum> {
        if !self.is_regular(tol) {
            return Err(Error::SingularPolynomial);
        }
        let n = self.degree().expect("regular implies nonzero");
        if n == 0 {
            return Ok(Spectrum { entries: Vec::new(), total_count: 0 });
        }
        let roots = if self.leading_rcond() >= COMPANION_RCOND {
            self.companion_eigenvalues()?
        } else {
            self.reversed_companion_zeros()?
        };
        Ok(Spectrum::from_roots(&roots, tol))
    }

    /// Zeros for a singular leading block: with F(c) invertible, the zeros of
    /// G(w) = wⁿ·F(c + 1/w) are 1/(z − c) for the finite zeros z of F, plus
    /// zeros at w = 0 standing for infinity. The count of finite zeros is the
    /// degree of the interpolated det F.
    fn reversed_companion_zeros(&self) -> Result<Vec<C64>> {
        let s = self.root_scale();
        let c = [0.37, -0.61, 1.13, -1.7, 0.05, 2.3]
            .into_iter()
            .map(|t| t * s)
            .max_by(|a, b| {
                let ra = linalg::inverse_condition(&self.evaluate(c64(*a, 0.0)));
                let rb = linalg::inverse_condition(&self.evaluate(c64(*b, 0.0)));
                ra.total_cmp(&rb)
            })
            .expect("nonempty");
        let reversed = Self::new(self.p, self.compose_affine(c, 1.0).ascending())?;
        let mut ws = reversed.companion_eigenvalues()?;
        ws.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
        let finite = self.determinant_poly().degree().unwrap_or(0).min(ws.len());
        Ok(ws[..finite].iter().map(|w| c64(c, 0.0) + w.inv()).collect())
    }

    /// Eigenvalues of the block companion matrix of A₀⁻¹F(s·w), mapped back by s.
    fn companion_eigenvalues(&self) -> Result<Vec<C64>> {
        let n = self.degree().expect("nonzero");
        let p = self.p;
        let lead = &self.coeffs[0];
        let rcond = linalg::inverse_condition(lead);
        let inv = linalg::inverse(lead).ok_or(Error::NonInvertibleLeading { rcond })?;
        let s = self.root_scale();
        let mut comp = CMat::zeros(n * p, n * p);
        for k in 1..=n {
            let block = (&inv * &self.coeffs[k]) * c64(-1.0 / s.powi(k as i32), 0.0);
            comp.view_mut((0, (k - 1) * p), (p, p)).copy_from(&block);
        }
        for i in p..n * p {
            comp[(i, i - p)] = c64(1.0, 0.0);
        }
        let ev = linalg::eigenvalues(&comp).ok_or(Error::SingularPolynomial)?;
        Ok(ev.into_iter().map(|w| w * s).collect())
    }

    /// Σ ‖A_k‖·ρ^{n−k} with ρ = max(1, |z|), the scale against which F(z)
    /// counts as small.
    pub fn magnitude_at(&self, z: C64) -> f64 {
        let r = z.norm().max(1.0);
        self.coeffs.iter().fold(0.0, |acc, c| acc * r + linalg::norm(c))
    }

    /// Compares the multiplicity of every zero with the nullity of F(λ).
    pub fn is_simple(&self, tol: &Tolerances) -> Result<Simplicity> {
        let spectrum = self.spectrum(tol)?;
        let adj = self.adjugate_poly();
        let zeros: Vec<ZeroNullity> = spectrum
            .entries
            .iter()
            .map(|e| {
                let thr = tol.rank * self.magnitude_at(e.value);
                let nullity = linalg::count_singular_below(&self.evaluate(e.value), thr);
                let adj_d = adj.derivative(e.multiplicity - 1).evaluate(e.value);
                let adjugate_rank = linalg::numerical_rank(&adj_d, tol.rank);
                ZeroNullity { value: e.value, multiplicity: e.multiplicity, nullity, adjugate_rank }
            })
            .collect();
        let simple = zeros.iter().all(|z| z.multiplicity == z.nullity);
        Ok(Simplicity { simple, zeros })
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::DimensionMismatch { expected: self.p, found: other.p });
        }
        Ok(())
    }
}

impl Add for &MatrixPolynomial {
    type Output = MatrixPolynomial;

    fn add(self, rhs: &MatrixPolynomial) -> MatrixPolynomial {
        assert_eq!(self.p, rhs.p, "size mismatch");
        let (mut a, b) = (self.ascending(), rhs.ascending());
        if a.len() < b.len() {
            a.resize(b.len(), linalg::zeros(self.p));
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        MatrixPolynomial::from_ascending(self.p, a)
    }
}

impl Neg for &MatrixPolynomial {
    type Output = MatrixPolynomial;

    fn neg(self) -> MatrixPolynomial {
        self.scale(c64(-1.0, 0.0))
    }
}

impl Sub for &MatrixPolynomial {
    type Output = MatrixPolynomial;

    fn sub(self, rhs: &MatrixPolynomial) -> MatrixPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &MatrixPolynomial {
    type Output = MatrixPolynomial;

    fn mul(self, rhs: &MatrixPolynomial) -> MatrixPolynomial {
        assert_eq!(self.p, rhs.p, "size mismatch");
        if self.is_zero() || rhs.is_zero() {
            return MatrixPolynomial::zero(self.p);
        }
        let mut out = vec![linalg::zeros(self.p); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        MatrixPolynomial::new(self.p, out).expect("same size")
    }
}

fn falling_factorial(j: usize, k: usize) -> f64 {
    (0..k).map(|i| (j - i) as f64).product()
}

fn circle_points(degree: usize, rho: f64) -> Vec<C64> {
    let m = degree + 1;
    (0..m).map(|j| C64::from_polar(rho, 2.0 * PI * j as f64 / m as f64)).collect()
}

/// Recovers ascending coefficients c_k of a polynomial of degree < values.len()
/// from its values at ρ·ω^j, ω = e^{2πi/M}. Coefficients below the rounding
/// floor are set to zero.
fn inverse_dft_coefficients(values: &[C64], rho: f64) -> Vec<C64> {
    let m = values.len();
    let vmax = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = INTERPOLATION_FLOOR * vmax * m as f64;
    (0..m)
        .map(|k| {
            let sum: C64 = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * C64::from_polar(1.0, -2.0 * PI * ((j * k) % m) as f64 / m as f64))
                .sum();
            let scaled = sum / m as f64;
            if scaled.norm() <= floor {
                c64(0.0, 0.0)
            } else {
                scaled / rho.powi(k as i32)
            }
        })
        .collect()
}

fn interpolate_on_circle(degree: usize, rho: f64, f: impl Fn(C64) -> C64) -> Vec<C64> {
    let values: Vec<C64> = circle_points(degree, rho).into_iter().map(f).collect();
    inverse_dft_coefficients(&values, rho)
}

fn regularity_probe_points(scale: f64) -> Vec<C64> {
    [(0.37, 0.61), (1.13, 2.29), (2.71, 4.07), (0.53, 5.83), (1.9, 0.2)]
        .iter()
        .map(|&(r, theta)| C64::from_polar(r * scale, theta))
        .collect()
}

/// Scalar polynomial with complex coefficients, leading first.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarPolynomial {
    coeffs: Vec<C64>,
}

impl ScalarPolynomial {
    /// Drops exactly-zero leading coefficients.
    pub fn new(coeffs: Vec<C64>) -> Self {
        let skip = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
        Self { coeffs: coeffs[skip..].to_vec() }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| c64(c, 0.0)).collect())
    }

    pub fn from_ascending(mut asc: Vec<C64>) -> Self {
        asc.reverse();
        Self::new(asc)
    }

    /// Monic polynomial Π (z − r).
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut asc = vec![c64(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![c64(0.0, 0.0); asc.len() + 1];
            for (k, &c) in asc.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            asc = next;
        }
        Self::from_ascending(asc)
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn ascending(&self) -> Vec<C64> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, z: C64) -> C64 {
        self.coeffs.iter().fold(c64(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self, k: usize) -> Self {
        let asc = self.ascending();
        Self::from_ascending(asc.iter().enumerate().skip(k).map(|(j, &c)| c * falling_factorial(j, k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![c64(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Roots from the eigenvalues of a scaled companion matrix.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let Some(n) = self.degree() else { return Err(Error::SingularPolynomial) };
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = self.coeffs[0];
        let s = (1..=n).map(|k| (self.coeffs[k] / lead).norm().powf(1.0 / k as f64)).fold(0.0, f64::max);
        let s = if s > 0.0 { s } else { 1.0 };
        let mut comp = CMat::zeros(n, n);
        for k in 1..=n {
            comp[(0, k - 1)] = -self.coeffs[k] / lead / s.powi(k as i32);
        }
        for i in 1..n {
            comp[(i, i - 1)] = c64(1.0, 0.0);
        }
        let ev = linalg::eigenvalues(&comp).ok_or(Error::SingularPolynomial)?;
        Ok(ev.into_iter().map(|w| w * s).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub value: C64,
    pub multiplicity: usize,
}

/// Distinct zeros of det F with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
    pub total_count: usize,
}

impl Spectrum {
    /// Groups numerically coincident roots and reports cluster centroids.
    pub fn from_roots(roots: &[C64], tol: &Tolerances) -> Self {
        let mut entries = Vec::new();
        split_cluster(roots.to_vec(), tol, &mut entries);
        entries.sort_by(|a, b| {
            let near = (a.value.re - b.value.re).abs() <= 1e-9 * a.value.norm().max(1.0);
            if near {
                a.value.im.total_cmp(&b.value.im)
            } else {
                a.value.re.total_cmp(&b.value.re)
            }
        });
        Self { entries, total_count: roots.len() }
    }

    pub fn values(&self) -> Vec<C64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn max_real(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.value.re).reduce(f64::max)
    }

    /// Every zero has |Im λ| within the cluster radius.
    pub fn is_real(&self, tol: &Tolerances) -> bool {
        self.entries.iter().all(|e| e.value.im.abs() <= tol.cluster_radius(e.multiplicity, e.value.norm()))
    }

    /// Entry within the cluster radius of `z`, if any.
    pub fn find(&self, z: C64, tol: &Tolerances) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| {
            (e.value - z).norm() <= tol.cluster_radius(e.multiplicity, e.value.norm()).max(tol.cluster * 10.0)
        })
    }
}

fn centroid(set: &[C64]) -> C64 {
    set.iter().sum::<C64>() / set.len() as f64
}

fn diameter(set: &[C64]) -> f64 {
    let mut d = 0.0_f64;
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    d
}

fn single_linkage(set: &[C64], radius: f64) -> Vec<Vec<C64>> {
    let n = set.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (set[i] - set[j]).norm() <= radius {
                let (a, b) = (root(&mut label, i), root(&mut label, j));
                label[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, &z) in set.iter().enumerate() {
        let r = root(&mut label, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(z),
            None => groups.push((r, vec![z])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Accepts a set as one zero when its diameter fits the radius for its size;
/// otherwise splits it at successively smaller radii.
fn split_cluster(set: Vec<C64>, tol: &Tolerances, out: &mut Vec<SpectrumEntry>) {
    let k = set.len();
    if k == 0 {
        return;
    }
    let c = centroid(&set);
    if k == 1 || diameter(&set) <= tol.cluster_radius(k, c.norm()) {
        out.push(SpectrumEntry { value: c, multiplicity: k });
        return;
    }
    for j in (1..k).rev() {
        let parts = single_linkage(&set, tol.cluster_radius(j, c.norm()));
        if parts.len() > 1 {
            for part in parts {
                split_cluster(part, tol, out);
            }
            return;
        }
    }
    out.push(SpectrumEntry { value: c, multiplicity: k });
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroNullity {
    pub value: C64,
    pub multiplicity: usize,
    pub nullity: usize,
    /// Rank of (adj F)^{(l−1)}(λ); equals l at a simple zero.
    pub adjugate_rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Simplicity {
    pub simple: bool,
    pub zeros: Vec<ZeroNullity>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real_matrix;

    fn close(a: &CMat, b: &CMat, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn affine_composition() {
        let f = swap_poly();
        let g = f.compose_affine(-2.0, 3.0);
        for z in [c64(0.3, 1.0), c64(-1.0, 0.0), c64(2.0, -0.5)] {
            assert!(close(&g.evaluate(z), &f.evaluate(c64(-2.0, 0.0) + z * 3.0), 1e-13));
        }
        let cubic = MatrixPolynomial::diagonal(&[&[1.0, 18.0, 108.0, 216.0]]);
        assert_eq!(cubic.compose_affine(-6.0, 1.0), MatrixPolynomial::diagonal(&[&[1.0, 0.0, 0.0, 0.0]]));
    }

    fn swap_poly() -> MatrixPolynomial {
        // [[z,1],[1,z]]
        MatrixPolynomial::from_real(2, &[&[1.0, 0.0, 0.0, 1.0], &[0.0, 1.0, 1.0, 0.0]]).unwrap()
    }

    fn cubic_example() -> MatrixPolynomial {
        MatrixPolynomial::diagonal(&[&[1.0, 18.0, 108.0, 216.0], &[1.0, 3.0, 12.0, 20.0]])
    }

    fn scalar_close(p: &ScalarPolynomial, expected: &[f64], tol: f64) -> bool {
        p.coeffs().len() == expected.len()
            && p.coeffs().iter().zip(expected).all(|(a, &b)| (a - c64(b, 0.0)).norm() <= tol)
    }

    #[test]
    fn evaluate_examples() {
        let f = swap_poly();
        assert!(close(&f.evaluate(c64(1.0, 0.0)), &real_matrix(2, 2, &[1.0, 1.0, 1.0, 1.0]), 1e-15));
        let g = cubic_example();
        assert!(close(&g.evaluate(c64(0.0, 0.0)), &real_matrix(2, 2, &[216.0, 0.0, 0.0, 20.0]), 1e-12));
        let id = MatrixPolynomial::identity(2);
        assert_eq!(id.degree(), Some(0));
        assert!(close(&id.evaluate(c64(3.0, -2.0)), &linalg::identity(2), 0.0));
    }

    #[test]
    fn derivative_examples() {
        let z2 = MatrixPolynomial::monomial(linalg::identity(2), 2);
        let d = z2.derivative(1);
        assert_eq!(d, MatrixPolynomial::monomial(linalg::identity(2) * c64(2.0, 0.0), 1));
        assert_eq!(swap_poly().derivative(1), MatrixPolynomial::identity(2));
        assert!(swap_poly().derivative(2).is_zero());
        assert!(cubic_example().derivative(7).is_zero());
    }

    #[test]
    fn adjoint_reverse_single_entry() {
        let i = c64(0.0, 1.0);
        let mut a1 = linalg::zeros(2);
        a1[(0, 1)] = i;
        let f = MatrixPolynomial::new(2, vec![linalg::identity(2), a1.clone()]).unwrap();
        let g = f.adjoint_reverse();
        assert_eq!(g.coeffs()[1], a1.adjoint());
        assert_eq!(g.coeffs()[1][(1, 0)], -i);
        assert_eq!(g.adjoint_reverse(), f);
        assert_eq!(swap_poly().adjoint_reverse(), swap_poly());
    }

    #[test]
    fn determinant_examples() {
        assert!(scalar_close(&swap_poly().determinant_poly(), &[1.0, 0.0, -1.0], 1e-12));
        let tri = MatrixPolynomial::from_real(2, &[&[1.0, 0.0, 0.0, 1.0], &[0.0, 1.0, 0.0, 0.0]]).unwrap();
        assert!(scalar_close(&tri.determinant_poly(), &[1.0, 0.0, 0.0], 1e-12));
        let f1 = ScalarPolynomial::from_real(&[1.0, 18.0, 108.0, 216.0]);
        let f2 = ScalarPolynomial::from_real(&[1.0, 3.0, 12.0, 20.0]);
        let prod = f1.mul(&f2);
        let det = cubic_example().determinant_poly();
        assert_eq!(det.degree(), Some(6));
        for (a, b) in det.coeffs().iter().zip(prod.coeffs()) {
            assert!((a - b).norm() <= 1e-9 * b.norm().max(1.0));
        }
    }

    #[test]
    fn adjugate_examples() {
        let adj = swap_poly().adjugate_poly();
        let expected = MatrixPolynomial::from_real(2, &[&[1.0, 0.0, 0.0, 1.0], &[0.0, -1.0, -1.0, 0.0]]).unwrap();
        assert_eq!(adj.degree(), Some(1));
        for (a, b) in adj.coeffs().iter().zip(expected.coeffs()) {
            assert!(close(a, b, 1e-12));
        }
        let scalar = MatrixPolynomial::diagonal(&[&[1.0, 2.0, 3.0]]);
        assert_eq!(scalar.adjugate_poly(), MatrixPolynomial::identity(1));
        let d = MatrixPolynomial::diagonal(&[&[1.0, 1.0], &[1.0, 0.0, -4.0]]);
        let adj = d.adjugate_poly();
        let z = c64(0.3, 0.7);
        let want = real_matrix(2, 2, &[0.0; 4]) + linalg::diag(&[z * z - 4.0, z + 1.0]);
        assert!(close(&adj.evaluate(z), &want, 1e-12));
    }

    #[test]
    fn spectrum_of_cubic_example() {
        let tol = Tolerances::default();
        let s = cubic_example().spectrum(&tol).unwrap();
        assert_eq!(s.total_count, 6);
        assert_eq!(s.entries.len(), 4);
        let r39 = 39f64.sqrt() / 2.0;
        let expected = [(c64(-6.0, 0.0), 3), (c64(-2.0, 0.0), 1), (c64(-0.5, -r39), 1), (c64(-0.5, r39), 1)];
        for (e, (v, m)) in s.entries.iter().zip(expected) {
            assert!((e.value - v).norm() < 1e-8, "{:?} vs {v}", e.value);
            assert_eq!(e.multiplicity, m);
        }
    }

    #[test]
    fn spectrum_small_examples() {
        let tol = Tolerances::default();
        let s = swap_poly().spectrum(&tol).unwrap();
        assert_eq!(s.entries.len(), 2);
        assert!((s.entries[0].value + 1.0).norm() < 1e-12);
        assert!((s.entries[1].value - 1.0).norm() < 1e-12);
        let zi = MatrixPolynomial::monomial(linalg::identity(3), 1);
        let s = zi.spectrum(&tol).unwrap();
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].multiplicity, 3);
        assert!(s.entries[0].value.norm() < 1e-12);
    }

    #[test]
    fn spectrum_with_singular_leading_block() {
        // diag(1, z - 2): leading block diag(0, 1)
        let f = MatrixPolynomial::from_real(2, &[&[0.0, 0.0, 0.0, 1.0], &[1.0, 0.0, 0.0, -2.0]]).unwrap();
        let s = f.spectrum(&Tolerances::default()).unwrap();
        assert_eq!(s.total_count, 1);
        assert!((s.entries[0].value - 2.0).norm() < 1e-10);
    }

    #[test]
    fn even_odd_examples() {
        let (fe, fo) = cubic_example().even_odd_split();
        assert_eq!(fo, MatrixPolynomial::diagonal(&[&[1.0, 108.0], &[1.0, 12.0]]));
        assert_eq!(fe, MatrixPolynomial::diagonal(&[&[18.0, 216.0], &[3.0, 20.0]]));
        let a: Vec<CMat> = (0..3).map(|k| real_matrix(2, 2, &[k as f64 + 1.0, 0.5, -0.5, 2.0])).collect();
        let f = MatrixPolynomial::new(2, a.clone()).unwrap();
        let (fe, fo) = f.even_odd_split();
        assert_eq!(fe.coeffs(), &[a[0].clone(), a[2].clone()]);
        assert_eq!(fo.coeffs(), &[a[1].clone()]);
        let (fe, _) = MatrixPolynomial::diagonal(&[&[1.0, 3.0, 2.0]]).even_odd_split();
        assert!(fe.is_monic(0.0));
        let (_, fo) = cubic_example().even_odd_split();
        assert!(fo.is_monic(0.0));
        let (_, fo) = MatrixPolynomial::diagonal(&[&[1.0, 0.0, 1.0]]).even_odd_split();
        assert!(fo.is_zero());
    }

    #[test]
    fn right_divide_examples() {
        let p = swap_poly();
        let (c, e) = p.right_divide(&p).unwrap();
        assert_eq!(c, MatrixPolynomial::identity(2));
        assert!(e.is_zero());
        // Q = [[4z−2, −z+4], [−z−1, −z−2]]
        let q = MatrixPolynomial::from_real(2, &[&[4.0, -1.0, -1.0, -1.0], &[-2.0, 4.0, -1.0, -2.0]]).unwrap();
        let (c, e) = q.right_divide(&p).unwrap();
        assert_eq!(c.degree(), Some(0));
        assert!(close(&c.coeffs()[0], &real_matrix(2, 2, &[4.0, -1.0, -1.0, -1.0]), 1e-14));
        assert!(close(&e.coeffs()[0], &(-linalg::identity(2)), 1e-14));
        let small = MatrixPolynomial::identity(2);
        let (c, e) = small.right_divide(&p).unwrap();
        assert!(c.is_zero());
        assert_eq!(e, small);
    }

    #[test]
    fn right_divide_needs_invertible_leading() {
        let p = MatrixPolynomial::from_real(2, &[&[1.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0]]).unwrap();
        let q = MatrixPolynomial::monomial(linalg::identity(2), 2);
        assert!(matches!(q.right_divide(&p), Err(Error::NonInvertibleLeading { .. })));
    }

    #[test]
    fn regularity_examples() {
        let tol = Tolerances::default();
        assert!(swap_poly().is_regular(&tol));
        let rank_one = MatrixPolynomial::from_real(2, &[&[1.0, 1.0, 1.0, 1.0], &[0.0; 4]]).unwrap();
        assert!(!rank_one.is_regular(&tol));
        assert!(MatrixPolynomial::identity(4).is_regular(&tol));
        assert!(!MatrixPolynomial::zero(2).is_regular(&tol));
        assert!(matches!(rank_one.spectrum(&tol), Err(Error::SingularPolynomial)));
    }

    #[test]
    fn simplicity_examples() {
        let tol = Tolerances::default();
        let s = swap_poly().is_simple(&tol).unwrap();
        assert!(s.simple);
        assert!(s.zeros.iter().all(|z| z.nullity == 1 && z.adjugate_rank == 1));
        let jordan = MatrixPolynomial::from_real(2, &[&[1.0, 0.0, 0.0, 1.0], &[0.0, 1.0, 0.0, 0.0]]).unwrap();
        let s = jordan.is_simple(&tol).unwrap();
        assert!(!s.simple);
        assert_eq!(s.zeros[0].multiplicity, 2);
        assert_eq!(s.zeros[0].nullity, 1);
        let fo = MatrixPolynomial::diagonal(&[&[1.0, 108.0], &[1.0, 12.0]]);
        assert!(fo.is_simple(&tol).unwrap().simple);
        let zi = MatrixPolynomial::monomial(linalg::identity(2), 1);
        let s = zi.is_simple(&tol).unwrap();
        assert!(s.simple);
        assert_eq!(s.zeros[0].adjugate_rank, 2);
    }

    #[test]
    fn clustering_keeps_close_simple_roots_apart() {
        let tol = Tolerances::default();
        let roots = [c64(1.0, 0.0), c64(1.0 + 1e-5, 0.0), c64(3.0, 0.0)];
        let s = Spectrum::from_roots(&roots, &tol);
        assert_eq!(s.entries.len(), 3);
        let triple = [c64(-6.0 + 2e-6, 0.0), c64(-6.0 - 1e-6, 1.7e-6), c64(-6.0 - 1e-6, -1.7e-6)];
        let s = Spectrum::from_roots(&triple, &tol);
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].multiplicity, 3);
    }

    #[test]
    fn scalar_roots() {
        let f = ScalarPolynomial::from_roots(&[c64(1.0, 2.0), c64(-3.0, 0.0), c64(0.5, 0.0)]);
        let mut r = f.roots().unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - c64(-3.0, 0.0)).norm() < 1e-12);
        assert!((r[1] - c64(0.5, 0.0)).norm() < 1e-12);
        assert!((r[2] - c64(1.0, 2.0)).norm() < 1e-12);
    }
}
