//! Analysis, synthesis and minimization of Boolean circuits.
//!
//! The crate is organised around [`Circuit`], a straight-line program of
//! unary and binary gates whose size is its number of binary gates:
//!
//! - [`function`]: truth tables (total and partial), symmetry and monotonicity
//!   checks, reference tables for `MAJ`, `SUM`, `SORT`, `MULT`, `SQR`, `DIV`, ...
//! - [`sat`]: Tseitin encoding, DIMACS, solver adapters, miters and
//!   equivalence checking.
//! - [`synth`]: SAT-based exact synthesis of small (partial) functions.
//! - [`minimize`]: structural cleanup and SAT-based subcircuit replacement.
//! - [`generators`]: adders, counters, majority/sorting, multipliers, divider.
//! - [`db`]: a database of small optimal circuits keyed by equivalence class.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod circuit;
pub mod db;
mod error;
pub mod function;
pub mod generators;
pub mod minimize;
pub mod sat;
pub mod synth;

pub use circuit::{Basis, BinOp, Circuit, GateOp, NodeId};
pub use error::{Error, Result};
pub use function::{PartialTruthTable, TruthTable};
