//! Seeded random test polynomials F = U·diag(f₁, …, f_p)·U*.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{self, c64, CMat, C64};
use crate::matpoly::{MatrixPolynomial, ScalarPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Every root in the open left half-plane.
    Stable,
    /// At least one root with Re λ > 0.
    Unstable,
    /// Left half-plane roots plus roots on the imaginary axis.
    Boundary,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Stable => "stable",
            Self::Unstable => "unstable",
            Self::Boundary => "boundary",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Self::Stable, Self::Unstable, Self::Boundary].into_iter().find(|k| k.name() == name)
    }
}

/// Haar-ish unitary from the QR factor of a complex Gaussian matrix.
pub fn random_unitary(p: usize, rng: &mut impl Rng) -> CMat {
    let g = DMatrix::from_fn(p, p, |_, _| c64(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    g.qr().q()
}

/// Roots of one real monic scalar polynomial of degree n.
fn stable_roots(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    let mut roots = Vec::with_capacity(n);
    while roots.len() < n {
        if n - roots.len() >= 2 && rng.gen_bool(0.5) {
            let re = -rng.gen_range(0.1..2.0);
            let im = rng.gen_range(0.2..3.0);
            roots.push(c64(re, im));
            roots.push(c64(re, -im));
        } else {
            roots.push(c64(-rng.gen_range(0.2..3.0), 0.0));
        }
    }
    roots
}

fn real_scalar(roots: &[C64]) -> ScalarPolynomial {
    let c: Vec<f64> = ScalarPolynomial::from_roots(roots).coeffs().iter().map(|z| z.re).collect();
    ScalarPolynomial::from_real(&c)
}

/// F = U·diag(f₁, …, f_p)·U* with monic real fᵢ of degree n whose roots lie
/// in the region named by `kind`. Coefficients are Hermitian and the even
/// and odd parts commute.
///
/// # Panics
/// If p = 0, p > 6, n = 0 or n > 10.
pub fn random_structured(p: usize, n: usize, seed: u64, kind: Kind) -> MatrixPolynomial {
    assert!((1..=6).contains(&p) && (1..=10).contains(&n), "need 1 <= p <= 6 and 1 <= n <= 10");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary(p, &mut rng);
    let mut roots: Vec<Vec<C64>> = (0..p).map(|_| stable_roots(n, &mut rng)).collect();
    let target = rng.gen_range(0..p);
    let special = match kind {
        Kind::Stable => Vec::new(),
        Kind::Unstable if n >= 2 && rng.gen_bool(0.5) => {
            let (re, im) = (rng.gen_range(0.1..2.0), rng.gen_range(0.2..3.0));
            vec![c64(re, im), c64(re, -im)]
        }
        Kind::Unstable => vec![c64(rng.gen_range(0.1..3.0), 0.0)],
        Kind::Boundary if n >= 2 => {
            let w = rng.gen_range(0.5..2.0);
            vec![c64(0.0, w), c64(0.0, -w)]
        }
        Kind::Boundary => vec![c64(0.0, 0.0)],
    };
    if !special.is_empty() {
        let mut rs = special;
        rs.extend(stable_roots(n - rs.len(), &mut rng));
        roots[target] = rs;
    }
    let scalars: Vec<ScalarPolynomial> = roots.iter().map(|r| real_scalar(r)).collect();
    let uh = u.adjoint();
    let coeffs: Vec<CMat> = (0..=n)
        .map(|k| {
            if k == 0 {
                return linalg::identity(p);
            }
            let d = linalg::diag(&scalars.iter().map(|s| s.coeffs()[k]).collect::<Vec<_>>());
            linalg::hermitian_part(&(&u * d * &uh))
        })
        .collect();
    MatrixPolynomial::new(p, coeffs).expect("consistent sizes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::{oracle_stability, Verdict};
    use crate::tolerance::Tolerances;

    #[test]
    fn reproducible() {
        assert_eq!(random_structured(3, 5, 7, Kind::Stable), random_structured(3, 5, 7, Kind::Stable));
        assert_ne!(random_structured(3, 5, 7, Kind::Stable), random_structured(3, 5, 8, Kind::Stable));
    }

    #[test]
    fn kinds_match_oracle() {
        let tol = Tolerances::default();
        for seed in 0..20 {
            let n = 1 + seed as usize % 6;
            let s = random_structured(1 + seed as usize % 3, n, seed, Kind::Stable);
            assert!(s.is_monic(0.0));
            assert!(s.has_hermitian_coefficients(1e-14));
            assert_eq!(oracle_stability(&s, &tol).unwrap().verdict, Verdict::Stable);
            let u = random_structured(1 + seed as usize % 3, n, seed, Kind::Unstable);
            let o = oracle_stability(&u, &tol).unwrap();
            assert_eq!(o.verdict, Verdict::Unstable);
            assert!(o.max_re.unwrap() > 0.05);
            let b = random_structured(2, n, seed, Kind::Boundary);
            let o = oracle_stability(&b, &tol).unwrap();
            assert!(o.max_re.unwrap().abs() < 1e-6, "seed {seed}: {:?}", o.max_re);
        }
    }
}
