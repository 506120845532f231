use std::io::Read;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use super::cnf::Cnf;
use super::dimacs::to_dimacs;
use super::solver::{SatSolver, SolverVerdict};
use crate::error::{Error, Result};

/// Runs a solver executable on a DIMACS file and reads competition-style output.
///
/// The command is split on whitespace and the formula path is appended.
#[derive(Clone, Debug)]
pub struct ExternalSolver {
    command: String,
}

impl ExternalSolver {
    pub fn new(command: impl Into<String>) -> Self {
        ExternalSolver {
            command: command.into(),
        }
    }

    pub fn command(&self) -> &str {
        &self.command
    }
}

/// Reads `s` and `v` lines. Returns `None` when no status line is present.
pub fn parse_solver_output(out: &str, num_vars: u32) -> Result<Option<SolverVerdict>> {
    let mut status = None;
    let mut model = vec![false; num_vars as usize + 1];
    for line in out.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => 1,
                "UNSATISFIABLE" => 0,
                "UNKNOWN" => 2,
                other => return Err(Error::Solver(format!("unexpected status `{other}`"))),
            });
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let l: i64 = tok
                    .parse()
                    .map_err(|_| Error::Solver(format!("bad model literal `{tok}`")))?;
                let v = l.unsigned_abs() as usize;
                if v > num_vars as usize {
                    return Err(Error::Solver(format!("model literal {l} out of range")));
                }
                if v != 0 {
                    model[v] = l > 0;
                }
            }
        }
    }
    Ok(status.map(|s| match s {
        1 => SolverVerdict::Sat(model),
        0 => SolverVerdict::Unsat,
        _ => SolverVerdict::Unknown,
    }))
}

impl SatSolver for ExternalSolver {
    fn solve(&mut self, cnf: &Cnf, timeout: Option<Duration>) -> Result<SolverVerdict> {
        let mut parts = self.command.split_whitespace();
        let program = parts
            .next()
            .ok_or_else(|| Error::Solver("empty solver command".into()))?;
        let file = tempfile::Builder::new().suffix(".cnf").tempfile()?;
        std::fs::write(file.path(), to_dimacs(cnf))?;
        let mut child = Command::new(program)
            .args(parts)
            .arg(file.path())
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| Error::Solver(format!("cannot start `{program}`: {e}")))?;
        let mut stdout = child.stdout.take().expect("stdout is piped");
        let reader = thread::spawn(move || {
            let mut s = String::new();
            let _ = stdout.read_to_string(&mut s);
            s
        });
        let deadline = timeout.map(|t| Instant::now() + t);
        let mut timed_out = false;
        loop {
            if child.try_wait()?.is_some() {
                break;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                let _ = child.kill();
                let _ = child.wait();
                timed_out = true;
                break;
            }
            thread::sleep(Duration::from_millis(5));
        }
        let out = reader.join().unwrap_or_default();
        if timed_out {
            return Ok(SolverVerdict::Unknown);
        }
        parse_solver_output(&out, cnf.num_vars())?
            .ok_or_else(|| Error::Solver(format!("`{}` printed no status line", self.command)))
    }

    fn name(&self) -> &str {
        &self.command
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_competition_output() {
        let out = "c comment\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        assert_eq!(
            parse_solver_output(out, 3).unwrap(),
            Some(SolverVerdict::Sat(vec![false, true, false, true]))
        );
        assert_eq!(
            parse_solver_output("s UNSATISFIABLE\n", 3).unwrap(),
            Some(SolverVerdict::Unsat)
        );
        assert_eq!(parse_solver_output("nothing\n", 3).unwrap(), None);
        assert!(parse_solver_output("s SATISFIABLE\nv 9 0\n", 3).is_err());
    }
}
