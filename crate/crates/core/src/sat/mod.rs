//! Circuit questions as SAT: Tseitin encoding, DIMACS, solvers, miters.

mod cdcl;
mod cnf;
pub mod dimacs;
mod external;
mod miter;
mod solver;
mod tseitin;

pub use cdcl::Cdcl;
pub use cnf::Cnf;
pub use external::{parse_solver_output, ExternalSolver};
pub use miter::{
    build_miter, check_equivalence, check_equivalence_with, is_satisfiable, is_satisfiable_with,
    Equivalence, Satisfiability,
};
#[allow(unused_imports)]
pub(crate) use miter::or_tree;
pub use solver::{
    default_solver, solve_checked, SatSolver, SolverVerdict, DEFAULT_TIMEOUT, SOLVER_CMD_ENV,
};
pub use tseitin::{gate_clauses, tseitin};
