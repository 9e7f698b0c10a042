//! Exact computations with A∞ categories of dissected graded orbifold
//! surfaces.

pub mod ainf;
pub mod error;
pub mod fukaya;
pub mod json;
pub mod linalg;
pub mod orbit;
pub mod quiver;
pub mod report;
pub mod scalar;
pub mod surface;
pub mod twisted;
pub mod vector;
pub mod worked;

pub use error::{Error, Result};
pub use scalar::Q;
pub use vector::Vector;
