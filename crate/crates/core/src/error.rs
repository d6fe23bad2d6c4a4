use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix polynomial is singular (det F(z) vanishes identically)")]
    SingularPolynomial,
    #[error("leading coefficient is not invertible (reciprocal condition {rcond:.3e})")]
    NonInvertibleLeading { rcond: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("need Markov parameters up to index {needed}, only {available} available")]
    InsufficientCoefficients { needed: i64, available: i64 },
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("Bezoutian numerator does not vanish on the diagonal (residual {residual:.3e})")]
    DiagonalNotZero { residual: f64 },
    #[error("fraction is not self-adjoint (relative defect {defect:.3e})")]
    NotSelfAdjoint { defect: f64 },
    #[error("denominator has a non-real zero {re} + {im}i")]
    ComplexSpectrum { re: f64, im: f64 },
    #[error("denominator is not simple at {re} + {im}i (multiplicity {multiplicity}, nullity {nullity})")]
    NotSimple { re: f64, im: f64, multiplicity: usize, nullity: usize },
    #[error("criterion needs {expected} degree, got degree {degree}")]
    WrongParity { expected: &'static str, degree: usize },
    #[error("polynomial is not monic (leading coefficient differs from I by {defect:.3e})")]
    NotMonic { defect: f64 },
    #[error("even part F_e is not regular")]
    IrregularEvenPart,
    #[error("odd part F_o is not regular")]
    IrregularOddPart,
    #[error("polynomial is not certified stable")]
    NotCertifiedStable,
    #[error("degree gap {gap} is outside the supported range")]
    DegreeGap { gap: i64 },
    #[error("invalid input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
