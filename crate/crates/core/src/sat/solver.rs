use std::time::Duration;

use super::cdcl::Cdcl;
use super::cnf::Cnf;
use super::external::ExternalSolver;
use crate::error::{Error, Result};

/// Per-call budget used when the caller gives none.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

/// Environment variable naming an external DIMACS solver command.
pub const SOLVER_CMD_ENV: &str = "SOLVER_CMD";

/// Answer of a SAT solver.
///
/// A model is indexed by variable; entry 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverVerdict {
    Sat(Vec<bool>),
    Unsat,
    Unknown,
}

impl SolverVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolverVerdict::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolverVerdict::Unsat)
    }

    pub fn model(&self) -> Option<&[bool]> {
        match self {
            SolverVerdict::Sat(m) => Some(m),
            _ => None,
        }
    }
}

/// Something that decides CNF formulas. One query at a time per instance.
pub trait SatSolver: Send {
    fn solve(&mut self, cnf: &Cnf, timeout: Option<Duration>) -> Result<SolverVerdict>;

    fn name(&self) -> &str;
}

/// Runs `solver` and rejects any model that does not satisfy `cnf`.
pub fn solve_checked(
    solver: &mut dyn SatSolver,
    cnf: &Cnf,
    timeout: Option<Duration>,
) -> Result<SolverVerdict> {
    let verdict = solver.solve(cnf, timeout)?;
    if let SolverVerdict::Sat(model) = &verdict {
        if !cnf.is_satisfied_by(model) {
            return Err(Error::Solver(format!(
                "{} returned a model that violates the formula",
                solver.name()
            )));
        }
    }
    Ok(verdict)
}

/// The external solver named by `SOLVER_CMD` if set, otherwise the embedded one.
pub fn default_solver() -> Box<dyn SatSolver> {
    match std::env::var(SOLVER_CMD_ENV) {
        Ok(cmd) if !cmd.trim().is_empty() => Box::new(ExternalSolver::new(cmd)),
        _ => Box::new(Cdcl::new()),
    }
}
