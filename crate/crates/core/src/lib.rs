//! Hurwitz stability of monic matrix polynomials through Markov parameters,
//! block Hankel matrices and Herglotz–Nevanlinna fractions.
//!
//! ```
//! use hurwitz::{MatrixPolynomial, Tolerances, stability};
//!
//! // F(z) = diag(z² + 3z + 2, z² + 5z + 6)
//! let f = MatrixPolynomial::diagonal(&[&[1.0, 3.0, 2.0], &[1.0, 5.0, 6.0]]);
//! let report = stability::analyze(&f, &Tolerances::default()).unwrap();
//! assert_eq!(report.verdict, stability::Verdict::Stable);
//! ```

pub mod bezout;
pub mod check;
pub mod error;
pub mod generate;
pub mod herglotz;
pub mod linalg;
pub mod markov;
pub mod matpoly;
pub mod stability;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{c64, CMat, C64};
pub use markov::{BlockHankel, Definiteness, MarkovSequence, RationalMatrixFraction};
pub use matpoly::{MatrixPolynomial, ScalarPolynomial, Spectrum};
pub use tolerance::Tolerances;
