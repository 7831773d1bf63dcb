//! Quasi-orthogonal q-Laguerre polynomials at arbitrary precision.
//!
//! The crate evaluates `L_n^{(delta+t)}(z; q)` for `q` in (0, 1) and shifts
//! `t = 0..=4`, locates all real zeros with certified brackets, and runs
//! executable checks of the interlacing, common-zero, moment and bound
//! properties of the family when `-2 < delta < -1`.

pub mod checks;
pub mod error;
pub mod precision;
pub mod qlaguerre;
pub mod table;
pub mod zeros;

pub use error::{Error, Result};
pub use precision::{pow_real, qpoch, PochLength, PrecReal, DEFAULT_PRECISION, MIN_PRECISION};
pub use qlaguerre::{FamilyParams, PolySpec};
