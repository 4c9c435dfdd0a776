//! Exact arithmetic for CM elliptic curve twist families.
//!
//! The crate provides the computational objects attached to the quartic
//! twist family `y^2 = x^3 - Dx` (CM by the Gaussian integers) and the
//! sextic twist family `y^2 = x^3 + A` (CM by the Eisenstein integers):
//! division polynomials and their homogeneous forms, defining polynomials
//! of the division-field towers, global root numbers, and Selmer-rank
//! verdicts driven by relative class-group p-rank data.
//!
//! Everything is exact: big integers, integer polynomials, integer and
//! polynomial factorization. No floating point is used anywhere.

pub mod bihom;
pub mod classdata;
pub mod divpoly;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod intfactor;
pub mod modpoly;
pub mod poly;
pub mod polyfactor;
pub mod quadratic;
pub mod rank;
pub mod resultant;
pub mod rootnum;
pub mod towers;

pub use bihom::BiHomPoly;
pub use error::{AlgebraError, DataError, FamilyError, RankError, RingError, TowerError};
pub use poly::IntPoly;
