pub mod category;
pub mod check;
pub mod hochschild;

pub use category::{AInf, AInfCategory, Morphism};
pub use check::{check_relations, check_relations_exhaustive, CheckOptions, CheckReport};
pub mod deform;
