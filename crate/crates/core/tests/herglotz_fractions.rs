mod common;

use hurwitz::herglotz::{
    classify_hn, default_grid, partial_fraction, reconstruct_residual, sample_imag_positivity, whw_identity_check,
    HnStatus,
};
use hurwitz::linalg::{self, c64};
use hurwitz::{CMat, RationalMatrixFraction, Tolerances, C64};
use proptest::prelude::*;
use rand::Rng;

/// A·z + B + Σ E_j/(λ_j − z) with A ⪰ 0, E_j = G_j G_j* of the given rank.
fn hn_fraction(seed: u64, p: usize, rank: usize, slope: bool) -> (RationalMatrixFraction, Vec<(C64, CMat)>) {
    let mut rng = common::rng(seed);
    let count = rng.gen_range(1..=4);
    let mut x = rng.gen_range(-4.0..-1.0);
    let mut poles = Vec::new();
    for _ in 0..count {
        let g = CMat::from_fn(p, rank, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let e = &g * g.adjoint() + linalg::identity(p) * c64(if rank == p { 0.2 } else { 0.0 }, 0.0);
        poles.push((c64(x, 0.0), e));
        x += rng.gen_range(0.5..2.0);
    }
    let a = if slope {
        let g = common::random_complex(&mut rng, p);
        &g * g.adjoint() + linalg::identity(p) * c64(0.5, 0.0)
    } else {
        linalg::zeros(p)
    };
    (common::fraction_from_poles(&a, &common::random_hermitian(&mut rng, p), &poles), poles)
}

fn negated(r: &RationalMatrixFraction) -> RationalMatrixFraction {
    RationalMatrixFraction::new(-r.numerator(), r.denominator().clone()).unwrap()
}

fn scaled(r: &RationalMatrixFraction, c: f64) -> RationalMatrixFraction {
    RationalMatrixFraction::new(r.numerator().scale(c64(c, 0.0)), r.denominator().clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn positive_masses_are_certified(seed in any::<u64>(), p in 1usize..4, slope in any::<bool>(), c in 0.05f64..20.0) {
        let tol = Tolerances::default();
        let (r, _) = hn_fraction(seed, p, p, slope);
        prop_assert_eq!(classify_hn(&r, &tol).unwrap().status, HnStatus::Certified);
        prop_assert_eq!(classify_hn(&scaled(&r, c), &tol).unwrap().status, HnStatus::Certified);
        prop_assert_eq!(classify_hn(&negated(&r), &tol).unwrap().status, HnStatus::NotHn);
    }

    #[test]
    fn rank_deficient_masses_are_never_refuted(seed in any::<u64>(), p in 2usize..4) {
        let tol = Tolerances::default();
        let (r, _) = hn_fraction(seed, p, 1, false);
        prop_assert_ne!(classify_hn(&r, &tol).unwrap().status, HnStatus::NotHn);
    }

    #[test]
    fn partial_fractions_recover_masses(seed in any::<u64>(), p in 1usize..4, slope in any::<bool>()) {
        let tol = Tolerances::default();
        let (r, poles) = hn_fraction(seed, p, p, slope);
        let pf = partial_fraction(&r, &tol).unwrap();
        prop_assert_eq!(pf.poles.len(), poles.len());
        for (lam, e) in &poles {
            let got = pf.pole_near(lam.re, 1e-6).expect("pole found");
            prop_assert!((&got.mass - e).norm() <= 1e-7 * (1.0 + e.norm()));
            prop_assert_eq!(got.multiplicity, p);
        }
        prop_assert!(reconstruct_residual(&r, &pf) < 1e-9);
    }

    #[test]
    fn certified_fractions_map_upper_half_plane_up(seed in any::<u64>(), p in 1usize..4, slope in any::<bool>()) {
        let tol = Tolerances::default();
        let (r, _) = hn_fraction(seed, p, p, slope);
        let scan = sample_imag_positivity(&r, &default_grid(&r, &tol));
        prop_assert!(scan.min_relative >= -1e-10, "{scan:?}");
        let w = whw_identity_check(&r, &tol).unwrap();
        prop_assert!(w.residual < 1e-8);
        prop_assert!(w.moments_positive_definite());
    }
}

#[test]
fn two_by_two_example_is_certified() {
    let tol = Tolerances::default();
    let v = classify_hn(&common::two_by_two_example(), &tol).unwrap();
    assert_eq!(v.status, HnStatus::Certified);
    assert!(v.consequences.iter().all(|c| !(c.outcome == hurwitz::check::Outcome::Fail)), "{:?}", v.consequences);
}

#[test]
fn minus_one_over_z_is_herglotz() {
    let tol = Tolerances::default();
    // −1/z has Im > 0 on the upper half-plane; 1/z does not
    let r = hurwitz::markov::scalar_fraction(&[-1.0], &[1.0, 0.0]).unwrap();
    assert_eq!(classify_hn(&r, &tol).unwrap().status, HnStatus::Certified);
    assert_eq!(classify_hn(&negated(&r), &tol).unwrap().status, HnStatus::NotHn);
}
