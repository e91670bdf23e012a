pub mod ar;
pub mod catalog;
pub mod constructions;
pub mod dg;
pub mod error;
pub mod gorenstein;
pub mod linalg;
pub mod quiver;
pub mod resolution;
pub mod sample;
pub mod schema;

pub use error::{DgError, Result};
