pub mod blocks;
pub mod build;
pub mod paths;

pub use blocks::{building_block, BlockType};
pub use build::{build_category, build_fukaya, FukayaCategory};
pub use paths::{PathKind, PathMorphism, PathSet};
