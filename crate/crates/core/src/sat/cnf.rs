use std::collections::BTreeMap;

use crate::circuit::NodeId;

/// A formula in conjunctive normal form over variables `1..=num_vars`.
///
/// Literals are DIMACS-style signed integers. `varmap` records which circuit
/// node a variable stands for, when the formula came from a circuit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    num_vars: u32,
    clauses: Vec<Vec<i32>>,
    varmap: BTreeMap<NodeId, i32>,
}

impl Cnf {
    pub fn new() -> Self {
        Cnf::default()
    }

    pub fn with_vars(num_vars: u32) -> Self {
        Cnf {
            num_vars,
            ..Cnf::default()
        }
    }

    pub fn new_var(&mut self) -> i32 {
        self.num_vars += 1;
        self.num_vars as i32
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Appends a clause. Panics on a zero literal or an undeclared variable.
    pub fn add_clause(&mut self, lits: &[i32]) {
        for &l in lits {
            assert!(l != 0, "zero literal");
            assert!(
                l.unsigned_abs() <= self.num_vars,
                "literal {l} above declared variable count {}",
                self.num_vars
            );
        }
        self.clauses.push(lits.to_vec());
    }

    pub fn extend(&mut self, clauses: impl IntoIterator<Item = Vec<i32>>) {
        for c in clauses {
            self.add_clause(&c);
        }
    }

    pub fn map_node(&mut self, node: NodeId, var: i32) {
        self.varmap.insert(node, var);
    }

    pub fn var_of(&self, node: NodeId) -> Option<i32> {
        self.varmap.get(&node).copied()
    }

    pub fn varmap(&self) -> &BTreeMap<NodeId, i32> {
        &self.varmap
    }

    /// `model[v]` is the value of variable `v`; index 0 is unused.
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        model.len() > self.num_vars as usize
            && self.clauses.iter().all(|c| {
                c.iter()
                    .any(|&l| model[l.unsigned_abs() as usize] == (l > 0))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn satisfaction_check() {
        let mut f = Cnf::new();
        let a = f.new_var();
        let b = f.new_var();
        f.add_clause(&[a, -b]);
        f.add_clause(&[b]);
        assert!(f.is_satisfied_by(&[false, true, true]));
        assert!(!f.is_satisfied_by(&[false, false, true]));
    }

    #[test]
    #[should_panic]
    fn undeclared_variable_panics() {
        let mut f = Cnf::with_vars(1);
        f.add_clause(&[2]);
    }
}
