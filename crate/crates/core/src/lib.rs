//! Exact arithmetic and point-count verification for plane sections of the
//! Fermat surface `X0^d + X1^d + X2^d + X3^d = 0` over `F_q`, `q = 2d + 1`.

pub mod config;
pub mod curve_analysis;
pub mod error;
pub mod finite_field;
pub mod polynomials;
pub mod projective;
pub mod quadratic_counts;
pub mod report;
mod univariate;
pub mod verify;

pub use config::{CurveConfig, DParity, EtaSignature, SignatureClass};
pub use error::{AnalysisError, CountError, FieldError, PolyError};
pub use finite_field::{FieldElement, FieldSpec};
pub use polynomials::{LinearForm, TriPoly};
pub use projective::ProjectivePoint;
