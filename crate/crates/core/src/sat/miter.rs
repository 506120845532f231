use std::time::Duration;

use super::solver::{default_solver, solve_checked, SatSolver, SolverVerdict, DEFAULT_TIMEOUT};
use super::tseitin::tseitin;
use crate::circuit::{BinOp, Circuit, NodeId};
use crate::error::{Error, Result};

/// Outcome of a satisfiability query on a circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfiability {
    /// An input assignment meeting the output constraint, checked by simulation.
    Satisfiable(Vec<bool>),
    Unsatisfiable,
    Unknown,
}

/// Outcome of an equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// An input assignment on which the circuits differ, checked by simulation.
    Counterexample(Vec<bool>),
    Unknown,
}

/// Is there an input on which the outputs equal `constraint` (all ones when `None`)?
pub fn is_satisfiable(circuit: &Circuit, constraint: Option<&[bool]>) -> Result<Satisfiability> {
    is_satisfiable_with(
        circuit,
        constraint,
        default_solver().as_mut(),
        Some(DEFAULT_TIMEOUT),
    )
}

pub fn is_satisfiable_with(
    circuit: &Circuit,
    constraint: Option<&[bool]>,
    solver: &mut dyn SatSolver,
    timeout: Option<Duration>,
) -> Result<Satisfiability> {
    let m = circuit.num_outputs();
    if m == 0 {
        return Err(Error::ShapeMismatch("circuit has no outputs".into()));
    }
    let target = match constraint {
        Some(c) if c.len() != m => {
            return Err(Error::AssignmentLength {
                expected: m,
                got: c.len(),
            })
        }
        Some(c) => c.to_vec(),
        None => vec![true; m],
    };
    let mut cnf = tseitin(circuit);
    for (&o, &bit) in circuit.outputs().iter().zip(&target) {
        let v = cnf.var_of(o).expect("every node is mapped");
        cnf.add_clause(&[if bit { v } else { -v }]);
    }
    match solve_checked(solver, &cnf, timeout)? {
        SolverVerdict::Unsat => Ok(Satisfiability::Unsatisfiable),
        SolverVerdict::Unknown => Ok(Satisfiability::Unknown),
        SolverVerdict::Sat(model) => {
            let x: Vec<bool> = circuit
                .inputs()
                .iter()
                .map(|&i| model[cnf.var_of(i).unwrap() as usize])
                .collect();
            if circuit.evaluate(&x)? != target {
                return Err(Error::Solver(
                    "model does not meet the output constraint".into(),
                ));
            }
            Ok(Satisfiability::Satisfiable(x))
        }
    }
}

/// Balanced OR over `nodes`, which must be non-empty.
pub(crate) fn or_tree(c: &mut Circuit, nodes: &[NodeId]) -> Result<NodeId> {
    let mut layer = nodes.to_vec();
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        for pair in layer.chunks(2) {
            next.push(match pair {
                [a, b] => c.add_binary(BinOp::Or, *a, *b)?,
                [a] => *a,
                _ => unreachable!(),
            });
        }
        layer = next;
    }
    Ok(layer[0])
}

/// Single-output circuit that is 1 exactly where `c1` and `c2` disagree.
///
/// Both circuits are copied as blocks `C1` and `C2` over shared inputs; their
/// outputs are compared pairwise by XOR gates joined by a balanced OR tree.
pub fn build_miter(c1: &Circuit, c2: &Circuit) -> Result<Circuit> {
    if c1.num_inputs() != c2.num_inputs() || c1.num_outputs() != c2.num_outputs() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} circuit vs {}x{} circuit",
            c1.num_inputs(),
            c1.num_outputs(),
            c2.num_inputs(),
            c2.num_outputs()
        )));
    }
    if c1.num_outputs() == 0 {
        return Err(Error::ShapeMismatch("circuits have no outputs".into()));
    }
    let mut m = Circuit::new();
    for &i in c1.inputs() {
        m.add_input(c1.node(i).name())?;
    }
    let xs = m.inputs().to_vec();
    let y = m.connect_block(c1, &xs, "C1")?;
    let z = m.connect_block(c2, &xs, "C2")?;
    let diffs = y
        .iter()
        .zip(&z)
        .map(|(&a, &b)| m.add_binary(BinOp::Xor, a, b))
        .collect::<Result<Vec<_>>>()?;
    let top = or_tree(&mut m, &diffs)?;
    m.add_output(top)?;
    Ok(m)
}

pub fn check_equivalence(c1: &Circuit, c2: &Circuit) -> Result<Equivalence> {
    check_equivalence_with(c1, c2, default_solver().as_mut(), Some(DEFAULT_TIMEOUT))
}

pub fn check_equivalence_with(
    c1: &Circuit,
    c2: &Circuit,
    solver: &mut dyn SatSolver,
    timeout: Option<Duration>,
) -> Result<Equivalence> {
    let miter = build_miter(c1, c2)?;
    match is_satisfiable_with(&miter, None, solver, timeout)? {
        Satisfiability::Unsatisfiable => Ok(Equivalence::Equivalent),
        Satisfiability::Unknown => Ok(Equivalence::Unknown),
        Satisfiability::Satisfiable(x) => {
            if c1.evaluate(&x)? == c2.evaluate(&x)? {
                return Err(Error::Solver("counterexample does not separate the circuits".into()));
            }
            Ok(Equivalence::Counterexample(x))
        }
    }
}
