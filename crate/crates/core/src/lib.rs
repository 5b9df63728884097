//! Exact arithmetic for Gaussian binomials, classical and higher-order
//! Euler/Genocchi numbers, and their q-extended and twisted variants,
//! together with the independent routes used to check them: fermionic
//! p-adic Riemann sums, regularized real series, and exact `q -> 1` limits.

pub mod classical;
pub mod error;
pub mod field;
pub mod padic;
pub mod poly;
pub mod qcore;
pub mod qeuler;
pub mod qgenocchi;
pub mod qrat;
pub mod rat;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Ctx, QField, Scalar};
pub use poly::{Poly, QPoly, XPoly};
pub use qrat::QRat;
pub use rat::Rat;
