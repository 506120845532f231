//! Boolean functions as truth tables, with the named reference families.

mod analysis;
mod bits;
pub mod codec;
mod named;
pub(crate) mod table;

pub use analysis::{is_monotone, is_symmetric, symmetric_profile, SymmetricProfile};
pub use bits::Bits;
pub use named::{named_function, NamedFunction};
pub use table::{PartialTruthTable, Ternary, TruthTable, DEFAULT_INPUT_CAP};
