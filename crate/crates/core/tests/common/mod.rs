//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use boolcirc::{Basis, Circuit, GateOp, NodeId};
use rand::Rng;

/// Truth tables of x1, x2, x3 over 8 rows (x1 is the low bit of the row index).
pub const X3: [u8; 3] = [0xAA, 0xCC, 0xF0];

/// Value of a binary operation with table `op` (bit `2a + b`) on whole columns.
pub fn apply_op(op: u8, a: u8, b: u8) -> u8 {
    let mut r = 0;
    if op & 1 != 0 {
        r |= !a & !b;
    }
    if op & 2 != 0 {
        r |= !a & b;
    }
    if op & 4 != 0 {
        r |= a & !b;
    }
    if op & 8 != 0 {
        r |= a & b;
    }
    r
}

/// Visits every program of up to `max_gates` binary gates over three inputs.
///
/// Each gate applies any of the 16 operations to two distinct earlier nodes.
/// `visit` sees the node columns after every appended gate.
pub fn walk_programs3(max_gates: usize, visit: &mut impl FnMut(&[u8])) {
    fn rec(nodes: &mut Vec<u8>, left: usize, visit: &mut impl FnMut(&[u8])) {
        let k = nodes.len();
        for i in 0..k {
            for j in i + 1..k {
                for op in 0..16 {
                    let t = apply_op(op, nodes[i], nodes[j]);
                    nodes.push(t);
                    visit(nodes);
                    if left > 1 {
                        rec(nodes, left - 1, visit);
                    }
                    nodes.pop();
                }
            }
        }
    }
    let mut nodes = X3.to_vec();
    if max_gates > 0 {
        rec(&mut nodes, max_gates, visit);
    }
}

/// Minimum number of binary gates computing each single-output function of
/// three inputs, with free negation; `u8::MAX` if above `max_gates`.
pub fn min_sizes3(max_gates: usize) -> [u8; 256] {
    let mut best = [u8::MAX; 256];
    for f in [0x00u8, 0xFF].into_iter().chain(X3).chain(X3.map(|x| !x)) {
        best[f as usize] = 0;
    }
    walk_programs3(max_gates, &mut |nodes| {
        let d = (nodes.len() - 3) as u8;
        let f = *nodes.last().unwrap();
        for g in [f, !f] {
            if d < best[g as usize] {
                best[g as usize] = d;
            }
        }
    });
    best
}

/// Counts programs of exactly `gates` gates having every column of `cols`
/// (up to negation) among their nodes.
pub fn programs_computing(gates: usize, cols: &[u8]) -> (u64, u64) {
    let mut total = 0u64;
    let mut hits = 0u64;
    walk_programs3(gates, &mut |nodes| {
        if nodes.len() - 3 != gates {
            return;
        }
        total += 1;
        if cols.iter().all(|&c| nodes.iter().any(|&v| v == c || v == !c)) {
            hits += 1;
        }
    });
    (total, hits)
}

pub fn popcount(x: u64) -> u64 {
    x.count_ones() as u64
}

/// Assignment of row `t` over `n` inputs.
pub fn assignment(t: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| t >> i & 1 == 1).collect()
}

pub fn as_int(bits: &[bool]) -> u64 {
    bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | (b as u64) << i)
}

/// Checks `c` against `expect` on every row, skipping rows where `expect` is `None`.
pub fn check_exhaustive(c: &Circuit, expect: impl Fn(u64) -> Option<u64>) -> Result<(), String> {
    let n = c.num_inputs();
    let tt = c.truth_table().map_err(|e| e.to_string())?;
    for t in 0..1u64 << n {
        let Some(want) = expect(t) else { continue };
        let got = as_int(&tt.row(t as usize));
        if got != want {
            return Err(format!("row {t}: got {got}, expected {want}"));
        }
    }
    Ok(())
}

/// Checks `c` on `samples` random rows.
pub fn check_sampled(c: &Circuit, rng: &mut impl Rng, samples: usize, expect: impl Fn(u64) -> u64) -> Result<(), String> {
    let n = c.num_inputs();
    for _ in 0..samples {
        let t: u64 = if n >= 64 { rng.gen() } else { rng.gen_range(0..1u64 << n) };
        let got = as_int(&c.evaluate(&assignment(t, n)).map_err(|e| e.to_string())?);
        if got != expect(t) {
            return Err(format!("row {t:#x}: got {got}, expected {}", expect(t)));
        }
    }
    Ok(())
}

/// Random circuit: binary gates with operations of `basis`, occasional
/// negations, copies and constants; outputs taken from the last nodes.
pub fn random_circuit(rng: &mut impl Rng, basis: Basis, inputs: usize, gates: usize, outputs: usize) -> Circuit {
    let ops = basis.binary_ops();
    let mut c = Circuit::with_inputs(inputs);
    for _ in 0..gates {
        let k = c.len();
        let pick = |rng: &mut dyn rand::RngCore| NodeId::new(rng.gen_range(0..k));
        match rng.gen_range(0..20) {
            0 => {
                c.add_const(rng.gen());
            }
            1 | 2 => {
                let a = pick(rng);
                c.add_not(a).unwrap();
            }
            3 => {
                let a = pick(rng);
                c.add_gate(GateOp::Iden, &[a]).unwrap();
            }
            _ => {
                let (a, b) = (pick(rng), pick(rng));
                c.add_binary(ops[rng.gen_range(0..ops.len())], a, b).unwrap();
            }
        }
    }
    let len = c.len();
    let outs = (0..outputs.max(1)).map(|i| NodeId::new(len - 1 - i % len)).collect();
    c.set_outputs(outs).unwrap();
    c
}
