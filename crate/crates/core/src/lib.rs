//! Exact computations in the algebra generated by the tree series
//! `Y = Σ n^{n-1} q^n / n!` and `Z = Σ n^n q^n / n!`.
//!
//! - [`series`], [`linalg`], [`rational`]: exact truncated power series, an
//!   exact linear solver and rational helpers.
//! - [`algebra`]: the Laurent-in-`X = 1 - Y` model of the algebra,
//!   identification of series and exact coefficient asymptotics.
//! - [`cayley`]: labeled-tree enumeration and path-length statistics.
//! - [`hurwitz`]: brute-force counts of marked ramified coverings of the
//!   sphere via monodromy, plus a character-theoretic cross-check.
//! - [`hseries`]: generating series of Hurwitz numbers, the genus-0 and
//!   genus-1 closed forms and the normal-form polynomial fit.
//! - [`gravity`]: psi-class brackets from Hurwitz numbers, the Painlevé I
//!   recursion and the gravity constants.

pub mod algebra;
pub mod cayley;
pub mod error;
pub mod gravity;
pub mod hseries;
pub mod hurwitz;
pub mod linalg;
pub mod rational;
pub mod series;

pub use algebra::{identify_in_a, leading_asymptotic, AsymptoticTerm, LaurentPolyX, ScaledRational, ZPoly};
pub use error::{Error, Result};
pub use linalg::{solve_exact, LinearSystem};
pub use rational::Rational;
pub use series::TruncatedSeries;
