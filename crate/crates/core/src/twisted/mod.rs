//! Twisted complexes, minimal models and idempotent splitting.

pub mod karoubi;
pub mod present;
pub mod transfer;
pub mod tw;

pub use karoubi::{check_idempotent, complementary, split_idempotents, Split, Summand};
pub use present::{presentations_isomorphic, Arrow, Presentation};
pub use transfer::{contract, hom_cohomology, is_minimal, minimal_model, HomCohomology, HomContraction, MinimalModel};
pub use tw::{cone, make_twisted_complex, ShiftedObject, TwCategory, TwistedComplex};
