use std::collections::HashMap;

use crate::circuit::{BinOp, Block, Circuit, GateOp, NodeId, NodeKind};

/// A node of the rebuilt circuit seen through an optional inverter, or a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sig {
    Const(bool),
    Node(NodeId, bool),
}

impl Sig {
    fn negate(self) -> Sig {
        match self {
            Sig::Const(v) => Sig::Const(!v),
            Sig::Node(id, n) => Sig::Node(id, !n),
        }
    }
}

/// Copies the inputs and every gate reachable from an output, keeping order and names.
fn retain_live(c: &Circuit) -> Circuit {
    let mut live = vec![false; c.len()];
    for &o in c.outputs() {
        live[o.index()] = true;
    }
    for id in c.node_ids().collect::<Vec<_>>().into_iter().rev() {
        if live[id.index()] {
            for f in c.node(id).fanins() {
                live[f.index()] = true;
            }
        }
    }
    let mut out = Circuit::new();
    let mut map: Vec<Option<NodeId>> = vec![None; c.len()];
    for id in c.node_ids() {
        let node = c.node(id);
        match node.kind() {
            NodeKind::Input => {
                map[id.index()] = Some(out.add_input(node.name()).expect("names are unique"));
            }
            NodeKind::Gate(op) if live[id.index()] => {
                let operands: Vec<NodeId> = node
                    .fanins()
                    .iter()
                    .map(|f| map[f.index()].unwrap())
                    .collect();
                let new = out
                    .add_named_gate(node.name(), op, &operands)
                    .expect("operands precede the gate");
                map[id.index()] = Some(new);
            }
            NodeKind::Gate(_) => {}
        }
    }
    out.set_outputs(c.outputs().iter().map(|o| map[o.index()].unwrap()).collect())
        .expect("outputs are live");
    remap_blocks(c, &mut out, &map);
    out
}

/// Carries block annotations across a rebuild, dropping blocks that lost every gate.
pub(crate) fn remap_blocks(from: &Circuit, to: &mut Circuit, map: &[Option<NodeId>]) {
    for b in from.blocks() {
        let m = |ids: &[NodeId]| -> Vec<NodeId> {
            ids.iter().filter_map(|i| map[i.index()]).collect()
        };
        let gates = m(&b.gates);
        if gates.is_empty() {
            continue;
        }
        to.push_block(Block {
            name: b.name.clone(),
            inputs: m(&b.inputs),
            gates,
            outputs: m(&b.outputs),
        });
    }
}

/// Restriction of `op` when one operand is the constant `v`.
fn restrict(op: BinOp, first: bool, v: bool, other: Sig) -> Sig {
    let (f0, f1) = if first {
        (op.eval(v, false), op.eval(v, true))
    } else {
        (op.eval(false, v), op.eval(true, v))
    };
    match (f0, f1) {
        (false, false) => Sig::Const(false),
        (true, true) => Sig::Const(true),
        (false, true) => other,
        (true, false) => other.negate(),
    }
}

/// Cheap structural cleanup.
///
/// Propagates constants, folds inverters into the binary gates that read them,
/// rewrites every gate so that it maps `(0,0)` to `0`, merges structurally
/// identical gates and drops gates no output depends on. The function is
/// unchanged and the size never grows.
pub fn cleanup(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::new();
    let mut sig: Vec<Sig> = Vec::with_capacity(circuit.len());
    let mut origin: Vec<Option<NodeId>> = vec![None; circuit.len()];
    let mut table: HashMap<(BinOp, NodeId, NodeId), NodeId> = HashMap::new();

    for id in circuit.node_ids() {
        let node = circuit.node(id);
        let s = match node.kind() {
            NodeKind::Input => {
                let new = out.add_input(node.name()).expect("names are unique");
                origin[id.index()] = Some(new);
                Sig::Node(new, false)
            }
            NodeKind::Gate(op) => {
                let f = node.fanins();
                match op {
                    GateOp::Const(v) => Sig::Const(v),
                    GateOp::Iden => sig[f[0].index()],
                    GateOp::Not => sig[f[0].index()].negate(),
                    GateOp::Binary(op) => {
                        let (sa, sb) = (sig[f[0].index()], sig[f[1].index()]);
                        match (sa, sb) {
                            (Sig::Const(a), Sig::Const(b)) => Sig::Const(op.eval(a, b)),
                            (Sig::Const(a), other) => restrict(op, true, a, other),
                            (other, Sig::Const(b)) => restrict(op, false, b, other),
                            (Sig::Node(a, na), Sig::Node(b, nb)) => {
                                let op = op.with_negated_inputs(na, nb);
                                if a == b {
                                    restrict_diagonal(op, a)
                                } else if !op.depends_on_first() {
                                    restrict(op, true, false, Sig::Node(b, false))
                                } else if !op.depends_on_second() {
                                    restrict(op, false, false, Sig::Node(a, false))
                                } else {
                                    let (op, neg) = if op.is_normal() {
                                        (op, false)
                                    } else {
                                        (op.negated(), true)
                                    };
                                    let found = table
                                        .get(&(op, a, b))
                                        .or_else(|| table.get(&(op.swapped(), b, a)))
                                        .copied();
                                    let g = match found {
                                        Some(g) => g,
                                        None => {
                                            let g = out
                                                .add_named_gate(
                                                    node.name(),
                                                    GateOp::Binary(op),
                                                    &[a, b],
                                                )
                                                .expect("names are unique");
                                            table.insert((op, a, b), g);
                                            origin[id.index()] = Some(g);
                                            g
                                        }
                                    };
                                    Sig::Node(g, neg)
                                }
                            }
                        }
                    }
                }
            }
        };
        sig.push(s);
    }

    let mut consts: [Option<NodeId>; 2] = [None, None];
    let mut nots: HashMap<NodeId, NodeId> = HashMap::new();
    let mut outputs = Vec::with_capacity(circuit.num_outputs());
    for &o in circuit.outputs() {
        let id = match sig[o.index()] {
            Sig::Const(v) => *consts[v as usize].get_or_insert_with(|| out.add_const(v)),
            Sig::Node(n, false) => n,
            Sig::Node(n, true) => *nots
                .entry(n)
                .or_insert_with(|| out.add_not(n).expect("node exists")),
        };
        outputs.push(id);
    }
    out.set_outputs(outputs).expect("outputs exist");
    remap_blocks(circuit, &mut out, &origin);
    retain_live(&out)
}

fn restrict_diagonal(op: BinOp, a: NodeId) -> Sig {
    match (op.eval(false, false), op.eval(true, true)) {
        (false, false) => Sig::Const(false),
        (true, true) => Sig::Const(true),
        (false, true) => Sig::Node(a, false),
        (true, false) => Sig::Node(a, true),
    }
}
