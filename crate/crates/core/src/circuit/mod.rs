//! Circuits over unary and binary gates, with their external formats.

pub mod aiger;
mod basis;
pub mod bench;
pub mod dot;
mod graph;
mod op;

pub use basis::Basis;
pub use graph::{BasisViolation, Block, Circuit, Node, NodeId, NodeKind};
pub use op::{BinOp, GateOp};
