use std::collections::HashSet;

use crate::circuit::{Circuit, NodeId, NodeKind};
use crate::function::{Bits, PartialTruthTable};

/// Largest circuit input count for which care sets come from full simulation.
pub const CARE_SET_INPUT_CAP: usize = 16;

/// Bounds on enumerated windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowLimits {
    pub max_inputs: usize,
    pub max_body: usize,
    /// Cuts kept per node during enumeration.
    pub max_cuts: usize,
}

impl Default for WindowLimits {
    fn default() -> Self {
        WindowLimits {
            max_inputs: 5,
            max_body: 7,
            max_cuts: 48,
        }
    }
}

impl WindowLimits {
    pub fn new(max_inputs: usize, max_body: usize) -> Self {
        WindowLimits {
            max_inputs,
            max_body,
            ..WindowLimits::default()
        }
    }
}

/// A convex region of a circuit: gates computed from a set of boundary signals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    /// Boundary signals, in increasing id order.
    pub inputs: Vec<NodeId>,
    /// Gates inside, in increasing id order.
    pub body: Vec<NodeId>,
    /// Body gates read outside the window or by a circuit output.
    pub outputs: Vec<NodeId>,
}

impl Window {
    /// Binary gates in the body.
    pub fn size(&self, c: &Circuit) -> usize {
        self.body.iter().filter(|&&g| c.node(g).is_binary()).count()
    }
}

/// Function of a window over its boundary, with the patterns that actually occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowFunction {
    /// Outputs are don't-care exactly outside `care`.
    pub table: PartialTruthTable,
    pub care: Bits,
}

type Cut = Vec<u32>;

fn merge(a: &Cut, b: &Cut, k: usize) -> Option<Cut> {
    let mut out = Vec::with_capacity(k);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if out.len() == k {
            return None;
        }
        out.push(next);
    }
    Some(out)
}

fn is_subset(a: &Cut, b: &Cut) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn cuts(c: &Circuit, limits: &WindowLimits) -> Vec<Vec<Cut>> {
    let k = limits.max_inputs;
    let mut all: Vec<Vec<Cut>> = Vec::with_capacity(c.len());
    for id in c.node_ids() {
        let node = c.node(id);
        let own = vec![id.index() as u32];
        let mut set: Vec<Cut> = match node.kind() {
            NodeKind::Input => vec![],
            NodeKind::Gate(_) => match node.fanins() {
                [] => vec![vec![]],
                [a] => all[a.index()].clone(),
                [a, b] => {
                    let mut v = Vec::new();
                    for ca in &all[a.index()] {
                        for cb in &all[b.index()] {
                            if let Some(m) = merge(ca, cb, k) {
                                v.push(m);
                            }
                        }
                    }
                    v
                }
                _ => unreachable!(),
            },
        };
        set.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        set.dedup();
        let mut kept: Vec<Cut> = Vec::new();
        for cut in set {
            if !kept.iter().any(|d| is_subset(d, &cut)) {
                kept.push(cut);
            }
            if kept.len() + 1 >= limits.max_cuts {
                break;
            }
        }
        kept.push(own);
        all.push(kept);
    }
    all
}

/// Gates between `leaves` and `root`, or `None` if the cone exceeds `max`.
fn cone(c: &Circuit, root: NodeId, leaves: &[NodeId], max: usize) -> Option<Vec<NodeId>> {
    let mut seen = HashSet::new();
    let mut stack = vec![root];
    while let Some(n) = stack.pop() {
        if leaves.contains(&n) || !seen.insert(n) {
            continue;
        }
        if c.node(n).is_input() || seen.len() > max {
            return None;
        }
        stack.extend(c.node(n).fanins().iter().copied());
    }
    let mut body: Vec<NodeId> = seen.into_iter().collect();
    body.sort();
    Some(body)
}

/// Does any leaf depend on a body gate?
fn is_convex(c: &Circuit, leaves: &[NodeId], body: &[NodeId]) -> bool {
    let lowest = match body.first() {
        Some(&b) => b,
        None => return true,
    };
    let inside: HashSet<NodeId> = body.iter().copied().collect();
    let mut seen = HashSet::new();
    let mut stack: Vec<NodeId> = leaves.iter().copied().filter(|&l| l > lowest).collect();
    while let Some(n) = stack.pop() {
        if n < lowest || !seen.insert(n) {
            continue;
        }
        if inside.contains(&n) {
            return false;
        }
        stack.extend(c.node(n).fanins().iter().copied());
    }
    true
}

fn window_from_body(
    fanouts: &[Vec<NodeId>],
    is_output: &[bool],
    leaves: Vec<NodeId>,
    body: Vec<NodeId>,
) -> Window {
    let inside: HashSet<NodeId> = body.iter().copied().collect();
    let outputs = body
        .iter()
        .copied()
        .filter(|g| is_output[g.index()] || fanouts[g.index()].iter().any(|u| !inside.contains(u)))
        .collect();
    Window {
        inputs: leaves,
        body,
        outputs,
    }
}

/// Windows rooted at every binary gate, for every cut of that gate.
///
/// Each body is the cone between the cut and the root, extended by other
/// gates computable from the cut while the limit allows. Windows come out in
/// root order; `seed` shuffles that order deterministically.
pub fn enumerate_windows(c: &Circuit, limits: &WindowLimits, seed: Option<u64>) -> Vec<Window> {
    let all_cuts = cuts(c, limits);
    let fanouts = c.fanouts();
    let mut is_output = vec![false; c.len()];
    for &o in c.outputs() {
        is_output[o.index()] = true;
    }
    let mut roots: Vec<NodeId> = c.node_ids().filter(|&g| c.node(g).is_binary()).collect();
    if let Some(s) = seed {
        shuffle(&mut roots, s);
    }
    let mut seen: HashSet<Vec<NodeId>> = HashSet::new();
    let mut windows = Vec::new();
    for root in roots {
        for cut in &all_cuts[root.index()] {
            if cut.len() == 1 && cut[0] as usize == root.index() {
                continue;
            }
            let leaves: Vec<NodeId> = cut.iter().map(|&i| NodeId::new(i as usize)).collect();
            let Some(mut body) = cone(c, root, &leaves, limits.max_body) else {
                continue;
            };
            if body.is_empty() {
                continue;
            }
            // add gates whose operands are all available
            let mut avail: HashSet<NodeId> = leaves.iter().chain(&body).copied().collect();
            let start = leaves.first().copied().unwrap_or(root);
            for g in c.node_ids().skip(start.index()) {
                if body.len() >= limits.max_body {
                    break;
                }
                let node = c.node(g);
                if node.is_input() || avail.contains(&g) || node.fanins().is_empty() {
                    continue;
                }
                if node.fanins().iter().all(|f| avail.contains(f)) {
                    avail.insert(g);
                    body.push(g);
                }
            }
            body.sort();
            if !is_convex(c, &leaves, &body) || !seen.insert(body.clone()) {
                continue;
            }
            windows.push(window_from_body(&fanouts, &is_output, leaves, body));
        }
    }
    windows
}

fn shuffle(v: &mut [NodeId], seed: u64) {
    // splitmix64 driven Fisher-Yates
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    for i in (1..v.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        v.swap(i, j);
    }
}

/// The window's outputs as a function of its inputs, with don't-cares on
/// boundary patterns no circuit input produces.
///
/// Care sets come from simulating the whole circuit when it has at most
/// [`CARE_SET_INPUT_CAP`] inputs; above that every pattern counts as care.
pub fn window_function(c: &Circuit, w: &Window) -> WindowFunction {
    let k = w.inputs.len();
    let rows = 1usize << k;
    let patterns: Vec<Bits> = (0..k).map(|i| Bits::projection(k, i)).collect();
    let mut local: Vec<Option<Bits>> = vec![None; c.len()];
    for (i, &leaf) in w.inputs.iter().enumerate() {
        local[leaf.index()] = Some(patterns[i].clone());
    }
    for &g in &w.body {
        let node = c.node(g);
        let op = node.op().expect("body holds gates");
        let args: Vec<&Bits> = node
            .fanins()
            .iter()
            .map(|f| local[f.index()].as_ref().expect("window is closed"))
            .collect();
        let v = Bits::from_fn(rows, |t| {
            let bits: Vec<bool> = args.iter().map(|a| a.get(t)).collect();
            op.eval(&bits)
        });
        local[g.index()] = Some(v);
    }
    let care = if c.num_inputs() <= CARE_SET_INPUT_CAP {
        let all = c.simulate_all().expect("input count checked");
        let mut care = Bits::zeros(rows);
        let leaf_cols: Vec<&Bits> = w.inputs.iter().map(|l| &all[l.index()]).collect();
        for t in 0..1usize << c.num_inputs() {
            let p = leaf_cols
                .iter()
                .enumerate()
                .fold(0, |acc, (i, col)| acc | (col.get(t) as usize) << i);
            care.set(p, true);
        }
        care
    } else {
        Bits::ones(rows)
    };
    let values: Vec<Bits> = w
        .outputs
        .iter()
        .map(|o| local[o.index()].clone().unwrap())
        .collect();
    let cares = vec![care.clone(); values.len()];
    let table = PartialTruthTable::new(k, values, cares).expect("shapes agree");
    WindowFunction { table, care }
}
