use super::cnf::Cnf;
use crate::circuit::{Circuit, GateOp};

/// Prime implicants of `{m : f(m) == polarity}` over `k` variables.
///
/// A cube is a list of `(variable, value)` pairs; variable 0 is the most
/// significant bit of a minterm.
fn primes(k: usize, f: &dyn Fn(usize) -> bool, polarity: bool) -> Vec<Vec<(usize, bool)>> {
    let mut cubes: Vec<Vec<Option<bool>>> = vec![vec![]];
    for _ in 0..k {
        cubes = cubes
            .into_iter()
            .flat_map(|c| {
                [None, Some(false), Some(true)].into_iter().map(move |v| {
                    let mut c = c.clone();
                    c.push(v);
                    c
                })
            })
            .collect();
    }
    let covers = |cube: &[Option<bool>], m: usize| {
        cube.iter()
            .enumerate()
            .all(|(j, v)| v.map_or(true, |v| ((m >> (k - 1 - j)) & 1 == 1) == v))
    };
    let implicants: Vec<&Vec<Option<bool>>> = cubes
        .iter()
        .filter(|c| (0..1 << k).all(|m| !covers(c, m) || f(m) == polarity))
        .collect();
    let contains = |big: &[Option<bool>], small: &[Option<bool>]| {
        big.iter().zip(small).all(|(b, s)| b.is_none() || b == s)
    };
    implicants
        .iter()
        .filter(|c| {
            !implicants
                .iter()
                .any(|d| d != *c && contains(d, c))
        })
        .map(|c| {
            c.iter()
                .enumerate()
                .filter_map(|(j, v)| v.map(|v| (j, v)))
                .collect()
        })
        .collect()
}

/// Clauses forcing `out` to equal `op` applied to `operands`.
///
/// One clause per prime implicant of the on-set and of the off-set: one for
/// constants, two for unary gates and projections, three for AND-type and
/// four for XOR-type operations.
pub fn gate_clauses(op: GateOp, out: i32, operands: &[i32]) -> Vec<Vec<i32>> {
    let k = op.arity();
    let f = |m: usize| {
        let bits: Vec<bool> = (0..k).map(|j| (m >> (k - 1 - j)) & 1 == 1).collect();
        op.eval(&bits)
    };
    let mut clauses = Vec::new();
    for polarity in [true, false] {
        for cube in primes(k, &f, polarity) {
            let mut c: Vec<i32> = cube
                .iter()
                .map(|&(j, v)| if v { -operands[j] } else { operands[j] })
                .collect();
            c.push(if polarity { out } else { -out });
            clauses.push(c);
        }
    }
    clauses
}

/// Tseitin encoding: one variable per node, gate-definition clauses only.
///
/// `varmap` sends each node to its variable. Output constraints are left to
/// the caller.
pub fn tseitin(circuit: &Circuit) -> Cnf {
    let mut cnf = Cnf::new();
    let mut var = Vec::with_capacity(circuit.len());
    for id in circuit.node_ids() {
        let v = cnf.new_var();
        var.push(v);
        cnf.map_node(id, v);
        if let Some(op) = circuit.node(id).op() {
            let operands: Vec<i32> = circuit
                .node(id)
                .fanins()
                .iter()
                .map(|f| var[f.index()])
                .collect();
            cnf.extend(gate_clauses(op, v, &operands));
        }
    }
    cnf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{BinOp, NodeId};

    #[test]
    fn and_gate_has_three_clauses() {
        let mut c = Circuit::with_inputs(2);
        c.add_gate(GateOp::AND, &[NodeId::new(0), NodeId::new(1)])
            .unwrap();
        let cnf = tseitin(&c);
        assert_eq!(cnf.num_vars(), 3);
        let mut got: Vec<Vec<i32>> = cnf
            .clauses()
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort();
                c
            })
            .collect();
        got.sort();
        assert_eq!(got, vec![vec![-3, 1], vec![-3, 2], vec![-2, -1, 3]]);
    }

    #[test]
    fn clause_counts_follow_op_class() {
        for op in BinOp::ALL {
            let n = gate_clauses(GateOp::Binary(op), 3, &[1, 2]).len();
            let expected = match (op.is_and_type(), op.is_xor_type()) {
                (true, _) => 3,
                (_, true) => 4,
                _ if op.table() == 0 || op.table() == 15 => 1,
                _ => 2,
            };
            assert_eq!(n, expected, "{op:?}");
        }
        assert_eq!(gate_clauses(GateOp::Not, 2, &[1]).len(), 2);
        assert_eq!(gate_clauses(GateOp::Iden, 2, &[1]).len(), 2);
        assert_eq!(gate_clauses(GateOp::Const(true), 1, &[]), vec![vec![1]]);
        assert!(gate_clauses(GateOp::XOR, 3, &[1, 2]).iter().all(|c| c.len() == 3));
    }

    #[test]
    fn clauses_define_the_gate() {
        for op in BinOp::ALL {
            let clauses = gate_clauses(GateOp::Binary(op), 3, &[1, 2]);
            for m in 0..8 {
                let model = [false, m & 1 == 1, m & 2 == 2, m & 4 == 4];
                let sat = clauses
                    .iter()
                    .all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize] == (l > 0)));
                assert_eq!(sat, model[3] == op.eval(model[1], model[2]), "{op:?} {m}");
            }
        }
    }
}
