//! Exact scalars and dense linear algebra over the rationals and prime fields.

mod field;
mod invertible;
mod matrix;
mod poly;

pub use field::{is_prime, Field, Scalar};
pub use invertible::{invertible_combination, Invertibility};
pub use matrix::{Echelon, Matrix, Subspace};
pub use poly::Poly;
