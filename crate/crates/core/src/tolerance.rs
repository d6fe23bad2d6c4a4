/// Numerical thresholds shared by every analysis.
///
/// All values are relative unless noted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenvalues of a (scaled) Hermitian matrix with modulus below this
    /// fraction of the largest one count as zero.
    pub definiteness: f64,
    /// Singular values below `rank · σ_max · dim` count as zero.
    pub rank: f64,
    /// Radius for merging simple roots: `cluster · max(1, |λ|)`.
    pub cluster: f64,
    /// Leading coefficient blocks below `trim · max block norm` are dropped.
    pub trim: f64,
    /// Accepted relative defect for Hermitian and self-adjointness checks.
    pub hermitian: f64,
    /// Reciprocal condition number below which a matrix is treated as singular.
    pub regularity: f64,
    /// Backward-error level used to widen the cluster radius for k-fold roots
    /// (a k-fold root moves by roughly `growth^(1/k)`).
    pub cluster_growth: f64,
    /// Eigenvalues with `Re λ ≥ -oracle · (1 + |λ|)` count as unstable.
    pub oracle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            definiteness: 1e-9,
            rank: 1e-8,
            cluster: 1e-7,
            trim: 1e-12,
            hermitian: 1e-8,
            regularity: 1e-12,
            cluster_growth: 1e-12,
            oracle: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn with_definiteness(mut self, tol: f64) -> Self {
        self.definiteness = tol;
        self
    }

    pub fn with_rank(mut self, tol: f64) -> Self {
        self.rank = tol;
        self
    }

    /// Cluster radius for a group of `k` coincident roots near `center_abs`.
    pub fn cluster_radius(&self, k: usize, center_abs: f64) -> f64 {
        let scale = center_abs.max(1.0);
        let widened = if k <= 1 { 0.0 } else { self.cluster_growth.powf(1.0 / k as f64) };
        self.cluster.max(widened) * scale
    }
}
