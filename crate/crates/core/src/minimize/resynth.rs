use std::collections::HashSet;
use std::time::{Duration, Instant};

use super::cleanup::{cleanup, remap_blocks};
use super::window::{enumerate_windows, window_function, Window, WindowLimits, CARE_SET_INPUT_CAP};
use crate::circuit::{Basis, Circuit, NodeId, NodeKind};
use crate::error::{Error, Result};
use crate::sat::{Cdcl, SatSolver};
use crate::synth::{synthesize_fixed_size_with, SynthesisOptions, SynthesisSpec, SynthesisStatus};

#[derive(Clone, Debug)]
pub struct MinimizeOptions {
    pub basis: Basis,
    pub limits: WindowLimits,
    /// Overall wall-clock budget.
    pub budget: Duration,
    /// Budget of a single resynthesis query.
    pub query_timeout: Duration,
    /// Shuffles the window order.
    pub seed: Option<u64>,
}

impl MinimizeOptions {
    pub fn new(basis: Basis, budget: Duration) -> Self {
        MinimizeOptions {
            basis,
            limits: WindowLimits::default(),
            budget,
            query_timeout: Duration::from_secs(10),
            seed: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinimizeStats {
    pub initial_size: usize,
    pub final_size: usize,
    pub windows_tried: usize,
    pub replacements: usize,
    pub timeouts: usize,
    /// True when the budget ran out before a pass found nothing to improve.
    pub budget_exhausted: bool,
}

fn outside_basis(c: &Circuit, basis: Basis, gates: &[NodeId]) -> usize {
    gates
        .iter()
        .filter(|&&g| c.node(g).op().is_some_and(|op| !basis.allows(op)))
        .count()
}

/// Rebuilds `c` with the window replaced by `sub`, whose inputs are the window
/// inputs and whose outputs are the window outputs, in order.
///
/// Returns `None` if the replacement would close a cycle.
fn splice(c: &Circuit, w: &Window, sub: &Circuit) -> Option<Circuit> {
    const NEW: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let mut out = Circuit::new();
    let mut map: Vec<Option<NodeId>> = vec![None; c.len()];
    let mut state = vec![NEW; c.len()];
    for &i in c.inputs() {
        map[i.index()] = Some(out.add_input(c.node(i).name()).expect("names are unique"));
        state[i.index()] = DONE;
    }
    let mut window_out = vec![None; c.len()];
    for (k, &o) in w.outputs.iter().enumerate() {
        window_out[o.index()] = Some(k);
    }
    // all window outputs are produced together, keyed by the first one
    let key = w.outputs[0];
    let redirect = |n: NodeId| if window_out[n.index()].is_some() { key } else { n };

    let mut order: Vec<NodeId> = c.outputs().to_vec();
    order.reverse();
    let mut stack: Vec<(NodeId, bool)> = order.into_iter().map(|n| (redirect(n), false)).collect();
    while let Some((n, expanded)) = stack.pop() {
        let i = n.index();
        if expanded {
            if n == key {
                let bindings: Vec<NodeId> = w.inputs.iter().map(|l| map[l.index()].unwrap()).collect();
                let outs = out.connect_block(sub, &bindings, &fresh_block_name(&out)).ok()?;
                for (k, &o) in w.outputs.iter().enumerate() {
                    map[o.index()] = Some(outs[k]);
                    state[o.index()] = DONE;
                }
            } else {
                let node = c.node(n);
                let NodeKind::Gate(op) = node.kind() else { unreachable!() };
                let operands: Vec<NodeId> = node.fanins().iter().map(|f| map[f.index()].unwrap()).collect();
                let g = match out.add_named_gate(node.name(), op, &operands) {
                    Ok(g) => g,
                    Err(_) => out.add_gate(op, &operands).ok()?,
                };
                map[i] = Some(g);
            }
            state[i] = DONE;
            continue;
        }
        match state[i] {
            DONE => continue,
            OPEN => return None,
            _ => {}
        }
        state[i] = OPEN;
        stack.push((n, true));
        let deps: Vec<NodeId> = if n == key {
            w.inputs.clone()
        } else {
            c.node(n).fanins().to_vec()
        };
        for d in deps.into_iter().rev() {
            let d = redirect(d);
            match state[d.index()] {
                DONE => {}
                OPEN => return None,
                _ => stack.push((d, false)),
            }
        }
    }
    out.set_outputs(c.outputs().iter().map(|o| map[o.index()].unwrap()).collect())
        .ok()?;
    remap_blocks(c, &mut out, &map);
    // the replacement is bookkeeping, not a block of the user's design
    let blocks: Vec<_> = out.blocks().iter().filter(|b| !b.name.starts_with("__resynth")).cloned().collect();
    out.clear_blocks();
    for b in blocks {
        out.push_block(b);
    }
    Some(out)
}

fn fresh_block_name(c: &Circuit) -> String {
    (0..)
        .map(|k| format!("__resynth{k}"))
        .find(|n| c.blocks().iter().all(|b| &b.name != n))
        .unwrap()
}

/// `(size, gates outside basis)`, compared lexicographically.
fn cost(c: &Circuit, basis: Basis) -> (usize, usize) {
    let gates: Vec<NodeId> = c.node_ids().collect();
    (c.size(), outside_basis(c, basis, &gates))
}

pub fn minimize_subcircuits(circuit: &Circuit, basis: Basis, budget: Duration) -> Result<Circuit> {
    let opts = MinimizeOptions::new(basis, budget);
    Ok(minimize_subcircuits_with(circuit, &opts, &mut Cdcl::new())?.0)
}

/// Replaces small windows by smaller circuits for their partial functions, until
/// a full pass changes nothing or the budget runs out.
///
/// A replacement is accepted when it lowers the size, or keeps the size and
/// lowers the number of gates outside the basis. The result is checked against
/// the input by exhaustive simulation when it has at most 16 inputs; above
/// that, each replacement is checked against its window function.
pub fn minimize_subcircuits_with(
    circuit: &Circuit,
    opts: &MinimizeOptions,
    solver: &mut dyn SatSolver,
) -> Result<(Circuit, MinimizeStats)> {
    let deadline = Instant::now() + opts.budget;
    let mut cur = cleanup(circuit);
    let mut stats = MinimizeStats {
        initial_size: circuit.size(),
        ..MinimizeStats::default()
    };
    if cost(&cur, opts.basis) > cost(circuit, opts.basis) {
        cur = circuit.clone();
    }
    // windows already shown not to improve, keyed by their function
    let mut hopeless: HashSet<(Vec<String>, Vec<String>, usize)> = HashSet::new();
    'pass: loop {
        let windows = enumerate_windows(&cur, &opts.limits, opts.seed);
        for w in windows {
            let now = Instant::now();
            if now >= deadline {
                stats.budget_exhausted = true;
                break 'pass;
            }
            let body_size = w.size(&cur);
            let bad = outside_basis(&cur, opts.basis, &w.body);
            if body_size == 0 {
                continue;
            }
            let target_size = if bad > 0 { body_size } else { body_size - 1 };
            let wf = window_function(&cur, &w);
            let key = (
                wf.table.values().iter().map(|b| b.to_hex()).collect::<Vec<_>>(),
                vec![wf.care.to_hex(), format!("{}", opts.basis)],
                target_size,
            );
            if hopeless.contains(&key) {
                continue;
            }
            stats.windows_tried += 1;
            let spec = SynthesisSpec::new(wf.table.clone(), opts.basis, target_size).with_options(
                SynthesisOptions {
                    symmetry_breaking: true,
                    timeout: Some(opts.query_timeout.min(deadline - now)),
                },
            );
            let sub = match synthesize_fixed_size_with(&spec, solver)?.status {
                SynthesisStatus::Found(sub) => sub,
                SynthesisStatus::None => {
                    hopeless.insert(key);
                    continue;
                }
                SynthesisStatus::Unknown(_) => {
                    stats.timeouts += 1;
                    continue;
                }
            };
            if !wf.table.is_matched_by(&sub.truth_table()?) {
                return Err(Error::Solver("replacement does not match its window".into()));
            }
            let Some(next) = splice(&cur, &w, &sub) else {
                hopeless.insert(key);
                continue;
            };
            let next = cleanup(&next);
            if cost(&next, opts.basis) < cost(&cur, opts.basis) {
                cur = next;
                stats.replacements += 1;
                continue 'pass;
            }
            hopeless.insert(key);
        }
        break;
    }
    if circuit.num_inputs() <= CARE_SET_INPUT_CAP && cur.truth_table()? != circuit.truth_table()? {
        return Err(Error::Solver("minimized circuit changed the function".into()));
    }
    stats.final_size = cur.size();
    Ok((cur, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{BinOp, GateOp};

    #[test]
    fn redundant_logic_shrinks() {
        // (x & y) | (x & !y) == x, written with three gates
        let mut c = Circuit::with_inputs(2);
        let (x, y) = (NodeId::new(0), NodeId::new(1));
        let a = c.add_binary(BinOp::And, x, y).unwrap();
        let ny = c.add_gate(GateOp::Not, &[y]).unwrap();
        let nny = c.add_gate(GateOp::Not, &[ny]).unwrap();
        let b = c.add_binary(BinOp::Gt, x, nny).unwrap();
        let o = c.add_binary(BinOp::Or, a, b).unwrap();
        c.add_output(o).unwrap();
        let m = minimize_subcircuits(&c, Basis::Xaig, Duration::from_secs(10)).unwrap();
        assert_eq!(m.size(), 0);
        assert_eq!(m.truth_table().unwrap(), c.truth_table().unwrap());
    }

    #[test]
    fn optimal_full_adder_is_kept() {
        let mut c = Circuit::with_inputs(3);
        let [x1, x2, x3] = [0, 1, 2].map(NodeId::new);
        let a = c.add_binary(BinOp::Xor, x1, x2).unwrap();
        let b = c.add_binary(BinOp::Xor, x2, x3).unwrap();
        let cc = c.add_binary(BinOp::Or, a, b).unwrap();
        let w0 = c.add_binary(BinOp::Xor, a, x3).unwrap();
        let w1 = c.add_binary(BinOp::Xor, cc, w0).unwrap();
        c.set_outputs(vec![w0, w1]).unwrap();
        let m = minimize_subcircuits(&c, Basis::Xaig, Duration::from_secs(30)).unwrap();
        assert_eq!(m.size(), 5);
    }

    #[test]
    fn aig_xor_is_not_shrunk() {
        let mut c = Circuit::with_inputs(2);
        let g = c.add_binary(BinOp::Xor, NodeId::new(0), NodeId::new(1)).unwrap();
        c.add_output(g).unwrap();
        // an AIG needs three gates for XOR, so the single gate stays
        let m = minimize_subcircuits(&c, Basis::Aig, Duration::from_secs(10)).unwrap();
        assert_eq!(m.size(), 1);
    }
}
