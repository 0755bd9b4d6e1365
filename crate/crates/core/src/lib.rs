//! Exact connections and curvature on projective modules over hypersurface
//! quotient rings `Q(i)[x_1..x_n]/(f)`.

pub mod catalog;
pub mod conn;
pub mod deriv;
pub mod error;
pub mod gaussian;
pub mod matring;
pub mod poly;
pub mod quotient;
pub mod verify;

pub use conn::{CurvatureReport, DeviationReport, ProjectivePresentation};
pub use deriv::Derivation;
pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use matring::{CharPoly, MatrixA};
pub use poly::{parse, Monomial, MonomialOrder, Polynomial, Variables};
pub use quotient::{QuotientRing, RingElement};
pub use verify::{SweepReport, VerificationReport};
