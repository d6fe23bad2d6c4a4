//! Dense complex linear algebra helpers shared by the polynomial and Hankel code.

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(p: usize) -> CMat {
    CMat::identity(p, p)
}

pub fn zeros(p: usize) -> CMat {
    CMat::zeros(p, p)
}

/// Builds a complex matrix from row-major real entries.
pub fn real_matrix(rows: usize, cols: usize, entries: &[f64]) -> CMat {
    assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
    CMat::from_fn(rows, cols, |i, j| c64(entries[i * cols + j], 0.0))
}

pub fn diag(entries: &[C64]) -> CMat {
    let n = entries.len();
    CMat::from_fn(n, n, |i, j| if i == j { entries[i] } else { C64::new(0.0, 0.0) })
}

/// Frobenius norm.
#[inline]
pub fn norm(m: &CMat) -> f64 {
    m.norm()
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * c64(0.5, 0.0)
}

/// Relative distance from Hermitian: ‖M − M*‖ / ‖M‖ (0 for the zero matrix).
pub fn hermitian_defect(m: &CMat) -> f64 {
    let n = norm(m);
    if n == 0.0 {
        0.0
    } else {
        norm(&(m - m.adjoint())) / n
    }
}

/// Singular values sorted in decreasing order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `tol · σ_max · max(rows, cols)`.
pub fn numerical_rank(m: &CMat, tol: f64) -> usize {
    let sv = singular_values(m);
    let Some(&smax) = sv.first() else { return 0 };
    if smax == 0.0 {
        return 0;
    }
    let thr = tol * smax * m.nrows().max(m.ncols()) as f64;
    sv.iter().filter(|&&s| s > thr).count()
}

/// Nullity of a square matrix under the same threshold as [`numerical_rank`].
pub fn nullity(m: &CMat, tol: f64) -> usize {
    m.ncols() - numerical_rank(m, tol)
}

/// Number of singular values at or below an absolute threshold.
pub fn count_singular_below(m: &CMat, threshold: f64) -> usize {
    singular_values(m).iter().filter(|&&s| s <= threshold).count()
}

/// Singular vectors of the k smallest singular values of a square matrix:
/// V (columns, right) and W (rows, left), so that W·M ≈ 0 and M·V ≈ 0.
pub fn null_vectors(m: &CMat, k: usize) -> (CMat, CMat) {
    let v = right_null_vectors(m, k);
    let w = right_null_vectors(&m.adjoint(), k).adjoint();
    (v, w)
}

// Both sides come from V of separate factorizations; the U factor returned
// alongside is not reliable for rank-deficient complex input.
fn right_null_vectors(m: &CMat, k: usize) -> CMat {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    CMat::from_fn(m.ncols(), k, |i, j| vt[(order[j], i)].conj())
}

/// Whether a Hermitian matrix admits a Cholesky factorization, i.e. is
/// positive definite up to rounding.
pub fn cholesky_succeeds(m: &CMat) -> bool {
    m.clone().cholesky().is_some()
}

/// σ_min / σ_max, or 0 for an all-zero matrix.
pub fn inverse_condition(m: &CMat) -> f64 {
    let sv = singular_values(m);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
        _ => 0.0,
    }
}

/// Eigenvalues of a Hermitian matrix (the argument is symmetrised first), ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let h = hermitian_part(m);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Eigenvalues of a general complex matrix via the complex Schur form.
pub fn eigenvalues(m: &CMat) -> Option<Vec<C64>> {
    let n = m.nrows();
    if n == 0 {
        return Some(Vec::new());
    }
    let max_iter = 60 * n.max(10);
    let attempt = |a: CMat, eps: f64| Schur::try_new(a, eps, max_iter).map(|s| s.unpack().1);
    let t = attempt(m.clone(), f64::EPSILON).or_else(|| attempt(m.clone(), 4.0 * f64::EPSILON)).or_else(|| {
        // QR sweeps can stall on derogatory matrices; a fixed unitary
        // similarity breaks the symmetry that traps them.
        let g = CMat::from_fn(n, n, |i, j| c64(((i * 7 + j * 3) % 11) as f64 - 5.0, ((i + 2 * j) % 5) as f64 - 2.0));
        let q = g.qr().q();
        attempt(q.adjoint() * m * &q, 4.0 * f64::EPSILON)
    })?;
    Some((0..n).map(|i| t[(i, i)]).collect())
}

pub fn determinant(m: &CMat) -> C64 {
    if m.nrows() == 0 {
        return c64(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

pub fn inverse(m: &CMat) -> Option<CMat> {
    if m.nrows() == 0 {
        return Some(m.clone());
    }
    m.clone().try_inverse()
}

/// Classical adjugate (transposed cofactor matrix); `adj M = [1]` for 1×1 input.
pub fn adjugate(m: &CMat) -> CMat {
    let p = m.nrows();
    if p == 1 {
        return identity(1);
    }
    let mut adj = zeros(p);
    for i in 0..p {
        for j in 0..p {
            let minor = m.clone().remove_row(i).remove_column(j);
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            adj[(j, i)] = determinant(&minor) * sign;
        }
    }
    adj
}

/// Block matrix assembled from equally sized square blocks.
pub fn block_matrix(blocks: &[Vec<CMat>], p: usize) -> CMat {
    let rows = blocks.len();
    let cols = blocks.first().map_or(0, Vec::len);
    let mut out = CMat::zeros(rows * p, cols * p);
    for (a, row) in blocks.iter().enumerate() {
        for (b, blk) in row.iter().enumerate() {
            out.view_mut((a * p, b * p), (p, p)).copy_from(blk);
        }
    }
    out
}

pub fn block_diag(blocks: &[&CMat]) -> CMat {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        out.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(*b);
        off += b.nrows();
    }
    out
}

/// Symmetric diagonal scaling D·H·D with D = diag(|h_ii|^{-1/2}); diagonal
/// entries below `floor · max|h_ii|` are scaled by the largest one instead so
/// that rounding noise is not amplified. Congruence preserves inertia.
pub fn jacobi_scaled(h: &CMat, floor: f64) -> CMat {
    let n = h.nrows();
    let dmax = (0..n).map(|i| h[(i, i)].norm()).fold(0.0_f64, f64::max);
    if dmax == 0.0 {
        return h.clone();
    }
    let d: Vec<f64> = (0..n)
        .map(|i| {
            let hii = h[(i, i)].norm();
            if hii > floor * dmax {
                1.0 / hii.sqrt()
            } else {
                1.0 / dmax.sqrt()
            }
        })
        .collect();
    CMat::from_fn(n, n, |i, j| h[(i, j)] * (d[i] * d[j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_schur_eigenvalues() {
        // rotation generator: eigenvalues ±i
        let m = real_matrix(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let mut ev = eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - c64(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - c64(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn adjugate_of_two_by_two() {
        let m = real_matrix(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let adj = adjugate(&m);
        assert_eq!(adj, real_matrix(2, 2, &[4.0, -2.0, -3.0, 1.0]));
        let prod = &m * &adj;
        assert!((prod - identity(2) * determinant(&m)).norm() < 1e-12);
    }

    #[test]
    fn rank_threshold() {
        let m = real_matrix(2, 2, &[1.0, 1.0, 1.0, 1.0 + 1e-14]);
        assert_eq!(numerical_rank(&m, 1e-8), 1);
        assert_eq!(nullity(&m, 1e-8), 1);
        assert_eq!(numerical_rank(&identity(3), 1e-8), 3);
    }

    #[test]
    fn null_vectors_of_complex_singular() {
        let v0 = CMat::from_column_slice(2, 1, &[c64(0.6, 0.0), c64(0.0, 0.8)]);
        let w0 = CMat::from_row_slice(1, 2, &[c64(0.0, 1.0), c64(1.0, 0.0)]) * c64(0.5_f64.sqrt(), 0.0);
        // rank one with left and right kernels unrelated
        let m = CMat::from_row_slice(2, 2, &[c64(1.0, 2.0), c64(-0.5, 0.0), c64(0.3, -1.0), c64(2.0, 1.0)]);
        let m = &m - &m * &v0 * v0.adjoint();
        let m = &m - w0.adjoint() * (&w0 * &m);
        let (v, w) = null_vectors(&m, 1);
        assert!((&m * &v).norm() < 1e-14);
        assert!((&w * &m).norm() < 1e-14);
    }

    #[test]
    fn jacobi_scaling_keeps_inertia() {
        let h = real_matrix(2, 2, &[-1.0, 1e3, 1e3, -1e8]);
        let s = jacobi_scaled(&h, 1e-9);
        let raw = hermitian_eigenvalues(&h);
        let scaled = hermitian_eigenvalues(&s);
        assert_eq!(raw.iter().filter(|&&x| x < 0.0).count(), 2);
        assert_eq!(scaled.iter().filter(|&&x| x < 0.0).count(), 2);
        assert!(scaled[1] < -0.5);
    }
}
