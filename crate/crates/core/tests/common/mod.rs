//! Instance generators shared by the integration tests.
#![allow(dead_code)]

use hurwitz::generate::{random_structured, Kind};
use hurwitz::linalg::{self, c64};
use hurwitz::{CMat, MatrixPolynomial, RationalMatrixFraction, ScalarPolynomial, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// P = [[z, 1], [1, z]], Q = [[4z − 2, −z + 4], [−z − 1, −z − 2]].
pub fn two_by_two_example() -> RationalMatrixFraction {
    let q = MatrixPolynomial::from_real(2, &[&[4.0, -1.0, -1.0, -1.0], &[-2.0, 4.0, -1.0, -2.0]]).unwrap();
    let p = MatrixPolynomial::from_real(2, &[&[1.0, 0.0, 0.0, 1.0], &[0.0, 1.0, 1.0, 0.0]]).unwrap();
    RationalMatrixFraction::new(q, p).unwrap()
}

/// diag(z³ + 18z² + 108z + 216, z³ + 3z² + 12z + 20).
pub fn diagonal_cubic_example() -> MatrixPolynomial {
    MatrixPolynomial::diagonal(&[&[1.0, 18.0, 108.0, 216.0], &[1.0, 3.0, 12.0, 20.0]])
}

/// (p, n, seed, kind) for the oracle sweep: p ≤ 3, n ≤ 8, alternating
/// stable and unstable.
pub fn sweep_instances(count: usize) -> Vec<(usize, usize, u64, Kind)> {
    (0..count)
        .map(|i| {
            let kind = if i % 2 == 0 { Kind::Stable } else { Kind::Unstable };
            (1 + i % 3, 1 + (i / 3) % 8, 1000 + i as u64, kind)
        })
        .collect()
}

pub fn sweep_polynomial(inst: (usize, usize, u64, Kind)) -> MatrixPolynomial {
    random_structured(inst.0, inst.1, inst.2, inst.3)
}

pub fn random_complex(rng: &mut impl Rng, p: usize) -> CMat {
    CMat::from_fn(p, p, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_hermitian(rng: &mut impl Rng, p: usize) -> CMat {
    linalg::hermitian_part(&random_complex(rng, p))
}

/// s(z)·M for a scalar polynomial s.
pub fn scalar_times(s: &ScalarPolynomial, m: &CMat) -> MatrixPolynomial {
    let p = m.nrows();
    if s.is_zero() {
        return MatrixPolynomial::zero(p);
    }
    MatrixPolynomial::new(p, s.coeffs().iter().map(|c| m * *c).collect()).unwrap()
}

/// Fraction with R(z) = A z + B + Σ_j E_j / (λ_j − z), written over the
/// scalar denominator Π (z − λ_j).
pub fn fraction_from_poles(slope: &CMat, constant: &CMat, poles: &[(C64, CMat)]) -> RationalMatrixFraction {
    let p = constant.nrows();
    let lambdas: Vec<C64> = poles.iter().map(|(l, _)| *l).collect();
    let den = ScalarPolynomial::from_roots(&lambdas);
    let linear = ScalarPolynomial::new(vec![c64(1.0, 0.0), c64(0.0, 0.0)]);
    let mut q = &scalar_times(&den.mul(&linear), slope) + &scalar_times(&den, constant);
    for (j, (_, e)) in poles.iter().enumerate() {
        let others: Vec<C64> = lambdas.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, l)| *l).collect();
        q = &q - &scalar_times(&ScalarPolynomial::from_roots(&others), e);
    }
    let pd = scalar_times(&den, &linalg::identity(p));
    RationalMatrixFraction::new(q, pd).unwrap()
}

/// Self-adjoint fraction with real poles (Hermitian, indefinite masses) and
/// conjugate pole pairs (masses E and E*). `slope` selects deg Q = deg P + 1.
pub fn random_self_adjoint_poles(rng: &mut impl Rng, p: usize, slope: bool) -> RationalMatrixFraction {
    let real = rng.gen_range(1..=3);
    let pairs = rng.gen_range(0..=1);
    let mut poles = Vec::new();
    for k in 0..real {
        let lam = -3.0 + 2.0 * k as f64 + rng.gen_range(0.0..1.5);
        poles.push((c64(lam, 0.0), random_hermitian(rng, p)));
    }
    for _ in 0..pairs {
        let lam = c64(rng.gen_range(-2.0..2.0), rng.gen_range(0.5..2.0));
        let e = random_complex(rng, p);
        poles.push((lam, e.clone()));
        poles.push((lam.conj(), e.adjoint()));
    }
    let a = if slope {
        let h = random_hermitian(rng, p);
        // keep A away from singular so deg Q = deg P + 1 is not trimmed
        &h + linalg::identity(p) * c64(2.0 * h.norm(), 0.0)
    } else {
        linalg::zeros(p)
    };
    fraction_from_poles(&a, &random_hermitian(rng, p), &poles)
}

/// Σ w_j / (λ_j − z) with distinct real λ_j.
pub fn scalar_hn(
    rng: &mut impl Rng,
    weights_sign: impl Fn(usize) -> f64,
) -> (RationalMatrixFraction, Vec<f64>, Vec<f64>) {
    let count = rng.gen_range(1..=6);
    let mut lambdas = Vec::with_capacity(count);
    let mut x = rng.gen_range(-6.0..-2.0);
    for _ in 0..count {
        lambdas.push(x);
        x += rng.gen_range(0.3..2.0);
    }
    let weights: Vec<f64> = (0..count).map(|j| weights_sign(j) * rng.gen_range(0.1..3.0)).collect();
    let poles: Vec<(C64, CMat)> =
        lambdas.iter().zip(&weights).map(|(l, w)| (c64(*l, 0.0), linalg::real_matrix(1, 1, &[*w]))).collect();
    let r = fraction_from_poles(&linalg::zeros(1), &linalg::zeros(1), &poles);
    (r, lambdas, weights)
}
