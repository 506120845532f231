mod common;

use boolcirc::sat::dimacs::{parse_dimacs, to_dimacs};
use boolcirc::sat::{
    build_miter, check_equivalence, is_satisfiable, tseitin, Cdcl, Equivalence, SatSolver, Satisfiability,
    SolverVerdict,
};
use boolcirc::{Basis, BinOp, Circuit, GateOp};
use common::{assignment, random_circuit};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Brute force: the rows of `c` whose outputs equal `target`.
fn matching_rows(c: &Circuit, target: &[bool]) -> Vec<u64> {
    let tt = c.truth_table().unwrap();
    (0..1u64 << c.num_inputs()).filter(|&t| tt.row(t as usize) == target).collect()
}

#[test]
fn tseitin_is_equisatisfiable_on_500_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut sat = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let g = rng.gen_range(0..40);
        let m = rng.gen_range(1..=3);
        let c = random_circuit(&mut rng, Basis::Xaig, n, g, m);
        let target: Vec<bool> = (0..c.num_outputs()).map(|_| rng.gen()).collect();
        let rows = matching_rows(&c, &target);

        let mut cnf = tseitin(&c);
        for (&o, &b) in c.outputs().iter().zip(&target) {
            let v = cnf.var_of(o).unwrap();
            cnf.add_clause(&[if b { v } else { -v }]);
        }
        let verdict = Cdcl::new().solve(&cnf, None).unwrap();
        assert_eq!(verdict.is_sat(), !rows.is_empty(), "{}", boolcirc::circuit::bench::to_bench(&c));
        if let SolverVerdict::Sat(model) = &verdict {
            let x: Vec<bool> = c.inputs().iter().map(|&i| model[cnf.var_of(i).unwrap() as usize]).collect();
            assert!(rows.contains(&common::as_int(&x)));
            sat += 1;
        }
        match is_satisfiable(&c, Some(&target)).unwrap() {
            Satisfiability::Satisfiable(x) => assert!(rows.contains(&common::as_int(&x))),
            Satisfiability::Unsatisfiable => assert!(rows.is_empty()),
            Satisfiability::Unknown => panic!("embedded solver gave up"),
        }
    }
    assert!(sat > 100 && sat < 500, "degenerate sample: {sat} satisfiable");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Node values of any simulation satisfy every Tseitin clause.
    #[test]
    fn simulation_satisfies_encoding(seed: u64, n in 1usize..=6, g in 0usize..30) {
        let c = random_circuit(&mut ChaCha8Rng::seed_from_u64(seed), Basis::Xaig, n, g, 2);
        let cnf = tseitin(&c);
        for t in 0..1u64 << n {
            let values = c.evaluate_nodes(&assignment(t, n)).unwrap();
            let mut model = vec![false; cnf.num_vars() as usize + 1];
            for id in c.node_ids() {
                model[cnf.var_of(id).unwrap() as usize] = values[id.index()];
            }
            prop_assert!(cnf.is_satisfied_by(&model));
        }
    }

    #[test]
    fn dimacs_round_trip(seed: u64, n in 1usize..=6, g in 0usize..30) {
        let c = random_circuit(&mut ChaCha8Rng::seed_from_u64(seed), Basis::Xaig, n, g, 1);
        let cnf = tseitin(&c);
        let back = parse_dimacs(&to_dimacs(&cnf)).unwrap();
        prop_assert_eq!(back.num_vars(), cnf.num_vars());
        prop_assert_eq!(back.clauses(), cnf.clauses());
    }

    /// Changing one gate operation: the miter finds a difference exactly when
    /// the truth tables differ.
    #[test]
    fn mutation_is_detected(seed: u64, n in 1usize..=7, g in 1usize..30, new_op in 0u8..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(&mut rng, Basis::Xaig, n, g, 2);
        let gates: Vec<_> = c.node_ids().filter(|&id| c.node(id).is_binary()).collect();
        prop_assume!(!gates.is_empty());
        let victim = gates[rng.gen_range(0..gates.len())];
        let mut d = Circuit::with_inputs(n);
        for id in c.node_ids().skip(n) {
            let node = c.node(id);
            let op = if id == victim { GateOp::Binary(BinOp::from_table(new_op)) } else { node.op().unwrap() };
            d.add_gate(op, node.fanins()).unwrap();
        }
        d.set_outputs(c.outputs().to_vec()).unwrap();
        let differ = c.truth_table().unwrap() != d.truth_table().unwrap();
        match check_equivalence(&c, &d).unwrap() {
            Equivalence::Equivalent => prop_assert!(!differ),
            Equivalence::Counterexample(x) => {
                prop_assert!(differ);
                prop_assert_ne!(c.evaluate(&x).unwrap(), d.evaluate(&x).unwrap());
            }
            Equivalence::Unknown => prop_assert!(false, "solver gave up"),
        }
    }
}

#[test]
fn miter_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_circuit(&mut rng, Basis::Xaig, 4, 10, 3);
    let m = build_miter(&a, &a).unwrap();
    assert_eq!(m.num_outputs(), 1);
    assert_eq!(m.num_inputs(), 4);
    assert_eq!(m.size(), 2 * a.size() + 3 + 2);
    assert!(build_miter(&a, &Circuit::with_inputs(3)).is_err());
}
