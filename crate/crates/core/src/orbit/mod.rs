//! ℤ₂ actions, orbit categories and the double-cover pipeline.

pub mod action;
pub mod category;
pub mod pipeline;

pub use action::{act_on_complex, induced_action_on_tw, match_complex, rotation_action, GroupAction};
pub use category::OrbitCategory;
pub use pipeline::{orbifold_pipeline, PipelineReport};
