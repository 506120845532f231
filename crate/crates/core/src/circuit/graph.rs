//! The circuit graph.
//!
//! Nodes (inputs and gates) live in one vector indexed by [`NodeId`]; every
//! gate's operands have smaller ids than the gate itself, so id order is a
//! topological order.

use std::collections::HashMap;
use std::fmt;

use super::basis::Basis;
use super::op::{BinOp, GateOp};
use crate::error::{Error, Result};
use crate::function::{table::check_cap, Bits, TruthTable, DEFAULT_INPUT_CAP};

/// Dense index of a node inside a [`Circuit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Input,
    Gate(GateOp),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    kind: NodeKind,
    fanins: [NodeId; 2],
    name: String,
}

impl Node {
    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn op(&self) -> Option<GateOp> {
        match self.kind {
            NodeKind::Gate(op) => Some(op),
            NodeKind::Input => None,
        }
    }

    pub fn is_input(&self) -> bool {
        self.kind == NodeKind::Input
    }

    pub fn is_binary(&self) -> bool {
        matches!(self.kind, NodeKind::Gate(GateOp::Binary(_)))
    }

    pub fn fanins(&self) -> &[NodeId] {
        match self.kind {
            NodeKind::Input => &[],
            NodeKind::Gate(op) => &self.fanins[..op.arity()],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// A named group of gates, kept for drawing composite circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub inputs: Vec<NodeId>,
    pub gates: Vec<NodeId>,
    pub outputs: Vec<NodeId>,
}

/// A gate whose operation lies outside a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisViolation {
    pub node: NodeId,
    pub op: GateOp,
}

#[derive(Clone, Debug, Default)]
pub struct Circuit {
    nodes: Vec<Node>,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
    blocks: Vec<Block>,
    names: HashMap<String, NodeId>,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.inputs == other.inputs
            && self.outputs == other.outputs
            && self.blocks == other.blocks
    }
}

impl Eq for Circuit {}

impl Circuit {
    pub fn new() -> Self {
        Circuit::default()
    }

    /// A circuit with inputs named `x1..xn` and no gates.
    pub fn with_inputs(n: usize) -> Self {
        let mut c = Circuit::new();
        for i in 0..n {
            c.add_input(format!("x{}", i + 1))
                .expect("fresh names are unique");
        }
        c
    }

    pub fn add_input(&mut self, name: impl Into<String>) -> Result<NodeId> {
        let id = self.push(NodeKind::Input, [NodeId(0); 2], Some(name.into()))?;
        self.inputs.push(id);
        Ok(id)
    }

    /// Appends a gate computing `op` over `operands`.
    pub fn add_gate(&mut self, op: GateOp, operands: &[NodeId]) -> Result<NodeId> {
        self.add_gate_impl(op, operands, None)
    }

    pub fn add_named_gate(
        &mut self,
        name: impl Into<String>,
        op: GateOp,
        operands: &[NodeId],
    ) -> Result<NodeId> {
        self.add_gate_impl(op, operands, Some(name.into()))
    }

    fn add_gate_impl(
        &mut self,
        op: GateOp,
        operands: &[NodeId],
        name: Option<String>,
    ) -> Result<NodeId> {
        if operands.len() != op.arity() {
            return Err(Error::Arity {
                op: op.name(),
                expected: op.arity(),
                got: operands.len(),
            });
        }
        let mut fanins = [NodeId(0); 2];
        for (slot, &id) in fanins.iter_mut().zip(operands) {
            self.check(id)?;
            *slot = id;
        }
        self.push(NodeKind::Gate(op), fanins, name)
    }

    pub fn add_binary(&mut self, op: BinOp, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.add_gate(GateOp::Binary(op), &[a, b])
    }

    pub fn add_not(&mut self, a: NodeId) -> Result<NodeId> {
        self.add_gate(GateOp::Not, &[a])
    }

    pub fn add_const(&mut self, value: bool) -> NodeId {
        self.add_gate(GateOp::Const(value), &[])
            .expect("constants have no operands")
    }

    fn push(&mut self, kind: NodeKind, fanins: [NodeId; 2], name: Option<String>) -> Result<NodeId> {
        let id = NodeId::new(self.nodes.len());
        let name = match name {
            Some(n) => {
                if n.is_empty() || n.contains(|c: char| c.is_whitespace() || "(),=#".contains(c)) {
                    return Err(Error::InvalidArgument(format!("invalid name `{n}`")));
                }
                if self.names.contains_key(&n) {
                    return Err(Error::DuplicateName(n));
                }
                n
            }
            None => self.fresh_name("g", id.index()),
        };
        self.names.insert(name.clone(), id);
        self.nodes.push(Node { kind, fanins, name });
        Ok(id)
    }

    fn fresh_name(&self, prefix: &str, hint: usize) -> String {
        let base = format!("{prefix}{hint}");
        if !self.names.contains_key(&base) {
            return base;
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| !self.names.contains_key(n))
            .unwrap()
    }

    fn check(&self, id: NodeId) -> Result<()> {
        if id.index() < self.nodes.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode(id.index()))
        }
    }

    pub fn add_output(&mut self, id: NodeId) -> Result<()> {
        self.check(id)?;
        self.outputs.push(id);
        Ok(())
    }

    pub fn set_outputs(&mut self, ids: Vec<NodeId>) -> Result<()> {
        for &id in &ids {
            self.check(id)?;
        }
        self.outputs = ids;
        Ok(())
    }

    /// Renames a node; names are unique within a circuit.
    pub fn rename(&mut self, id: NodeId, name: impl Into<String>) -> Result<()> {
        self.check(id)?;
        let name = name.into();
        if let Some(&other) = self.names.get(&name) {
            if other == id {
                return Ok(());
            }
            return Err(Error::DuplicateName(name));
        }
        let old = std::mem::replace(&mut self.nodes[id.index()].name, name.clone());
        self.names.remove(&old);
        self.names.insert(name, id);
        Ok(())
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(NodeId::new)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn inputs(&self) -> &[NodeId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn find(&self, name: &str) -> Option<NodeId> {
        self.names.get(name).copied()
    }

    /// Number of binary gates; unary gates and constants are free.
    pub fn size(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_binary()).count()
    }

    /// Number of gates of any arity.
    pub fn gate_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.is_input()).count()
    }

    /// Consumers of every node, in id order.
    pub fn fanouts(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            for &f in node.fanins() {
                out[f.index()].push(NodeId::new(i));
            }
        }
        out
    }

    /// Position of each input node in the input list.
    pub(crate) fn input_positions(&self) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.nodes.len()];
        for (k, id) in self.inputs.iter().enumerate() {
            pos[id.index()] = Some(k);
        }
        pos
    }

    /// Value of every node under one assignment of the inputs.
    pub fn evaluate_nodes(&self, assignment: &[bool]) -> Result<Vec<bool>> {
        if assignment.len() != self.inputs.len() {
            return Err(Error::AssignmentLength {
                expected: self.inputs.len(),
                got: assignment.len(),
            });
        }
        let pos = self.input_positions();
        let mut values = vec![false; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            values[i] = match node.kind {
                NodeKind::Input => assignment[pos[i].unwrap()],
                NodeKind::Gate(op) => {
                    let f = node.fanins;
                    match op {
                        GateOp::Const(v) => v,
                        GateOp::Iden => values[f[0].index()],
                        GateOp::Not => !values[f[0].index()],
                        GateOp::Binary(b) => b.eval(values[f[0].index()], values[f[1].index()]),
                    }
                }
            };
        }
        Ok(values)
    }

    /// Output values, in declared output order.
    pub fn evaluate(&self, assignment: &[bool]) -> Result<Vec<bool>> {
        let values = self.evaluate_nodes(assignment)?;
        Ok(self.outputs.iter().map(|o| values[o.index()]).collect())
    }

    /// Bit-parallel simulation: `patterns[k]` gives input `k` on every simulated row.
    pub fn simulate_patterns(&self, patterns: &[Bits]) -> Result<Vec<Bits>> {
        if patterns.len() != self.inputs.len() {
            return Err(Error::AssignmentLength {
                expected: self.inputs.len(),
                got: patterns.len(),
            });
        }
        let len = patterns.first().map(Bits::len).unwrap_or(1);
        let words = len.div_ceil(64);
        let pos = self.input_positions();
        let mut values: Vec<Vec<u64>> = Vec::with_capacity(self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            let v = match node.kind {
                NodeKind::Input => patterns[pos[i].unwrap()].words().to_vec(),
                NodeKind::Gate(op) => {
                    let f = node.fanins;
                    match op {
                        GateOp::Const(c) => vec![if c { !0 } else { 0 }; words],
                        GateOp::Iden => values[f[0].index()].clone(),
                        GateOp::Not => values[f[0].index()].iter().map(|w| !w).collect(),
                        GateOp::Binary(b) => {
                            let (x, y) = (&values[f[0].index()], &values[f[1].index()]);
                            x.iter().zip(y).map(|(&p, &q)| b.eval_word(p, q)).collect()
                        }
                    }
                }
            };
            values.push(v);
        }
        Ok(values.into_iter().map(|w| Bits::from_words(w, len)).collect())
    }

    /// Columns of every node over all `2^n` assignments.
    pub fn simulate_all(&self) -> Result<Vec<Bits>> {
        self.simulate_all_capped(DEFAULT_INPUT_CAP)
    }

    pub fn simulate_all_capped(&self, cap: usize) -> Result<Vec<Bits>> {
        let n = self.inputs.len();
        check_cap(n, cap)?;
        let patterns: Vec<Bits> = (0..n).map(|k| Bits::projection(n, k)).collect();
        if n == 0 {
            let values = self.evaluate_nodes(&[])?;
            return Ok(values.into_iter().map(|v| Bits::from_fn(1, |_| v)).collect());
        }
        self.simulate_patterns(&patterns)
    }

    /// The function computed by the circuit.
    pub fn truth_table(&self) -> Result<TruthTable> {
        self.truth_table_capped(DEFAULT_INPUT_CAP)
    }

    pub fn truth_table_capped(&self, cap: usize) -> Result<TruthTable> {
        if self.outputs.is_empty() {
            return Err(Error::ShapeMismatch("circuit has no outputs".into()));
        }
        let all = self.simulate_all_capped(cap)?;
        let columns = self.outputs.iter().map(|o| all[o.index()].clone()).collect();
        TruthTable::new(self.inputs.len(), columns)
    }

    /// Gates whose operation is outside `basis`.
    pub fn validate_basis(&self, basis: Basis) -> Vec<BasisViolation> {
        self.node_ids()
            .filter_map(|id| match self.node(id).op() {
                Some(op) if !basis.allows(op) => Some(BasisViolation { node: id, op }),
                _ => None,
            })
            .collect()
    }

    /// Copies `block` into this circuit, wiring block input `k` to `bindings[k]`.
    ///
    /// Returns the nodes carrying the block's outputs. The copied gates are
    /// recorded as a [`Block`] named `name`.
    pub fn connect_block(
        &mut self,
        block: &Circuit,
        bindings: &[NodeId],
        name: &str,
    ) -> Result<Vec<NodeId>> {
        if self.blocks.iter().any(|b| b.name == name) {
            return Err(Error::BlockNameCollision(name.to_string()));
        }
        if bindings.len() < block.num_inputs() {
            return Err(Error::UnboundBlockInput(bindings.len()));
        }
        if bindings.len() > block.num_inputs() {
            return Err(Error::ShapeMismatch(format!(
                "block `{name}` has {} inputs, {} bindings given",
                block.num_inputs(),
                bindings.len()
            )));
        }
        for &b in bindings {
            self.check(b)?;
        }
        let pos = block.input_positions();
        let mut map = Vec::with_capacity(block.len());
        let mut gates = Vec::new();
        for (i, node) in block.nodes.iter().enumerate() {
            let id = match node.kind {
                NodeKind::Input => bindings[pos[i].unwrap()],
                NodeKind::Gate(op) => {
                    let operands: Vec<NodeId> =
                        node.fanins().iter().map(|f| map[f.index()]).collect();
                    let label = format!("{name}.{}", node.name);
                    let label = if self.names.contains_key(&label) || label.contains(char::is_whitespace)
                    {
                        self.fresh_name(&format!("{name}.g"), i)
                    } else {
                        label
                    };
                    let id = self.add_gate_impl(op, &operands, Some(label))?;
                    gates.push(id);
                    id
                }
            };
            map.push(id);
        }
        let outputs: Vec<NodeId> = block.outputs.iter().map(|o| map[o.index()]).collect();
        self.blocks.push(Block {
            name: name.to_string(),
            inputs: bindings.to_vec(),
            gates,
            outputs: outputs.clone(),
        });
        Ok(outputs)
    }

    pub(crate) fn push_block(&mut self, block: Block) {
        self.blocks.push(block);
    }

    pub fn clear_blocks(&mut self) {
        self.blocks.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_adder_fig1() -> Circuit {
        let mut c = Circuit::with_inputs(3);
        let [x1, x2, x3] = [0, 1, 2].map(NodeId::new);
        let a = c.add_named_gate("a", GateOp::XOR, &[x1, x2]).unwrap();
        let b = c.add_named_gate("b", GateOp::XOR, &[x2, x3]).unwrap();
        let cc = c.add_named_gate("c", GateOp::OR, &[a, b]).unwrap();
        let w0 = c.add_named_gate("w0", GateOp::XOR, &[a, x3]).unwrap();
        let w1 = c.add_named_gate("w1", GateOp::XOR, &[cc, w0]).unwrap();
        c.set_outputs(vec![w0, w1]).unwrap();
        c
    }

    #[test]
    fn single_gate_has_size_one() {
        let mut c = Circuit::with_inputs(2);
        c.add_gate(GateOp::AND, &[NodeId::new(0), NodeId::new(1)]).unwrap();
        assert_eq!(c.size(), 1);
        c.add_gate(GateOp::Not, &[NodeId::new(0)]).unwrap();
        assert_eq!(c.size(), 1);
    }

    #[test]
    fn dangling_reference_rejected() {
        let mut c = Circuit::with_inputs(2);
        let err = c
            .add_gate(GateOp::AND, &[NodeId::new(99), NodeId::new(0)])
            .unwrap_err();
        assert!(matches!(err, Error::UnknownNode(99)));
        let err = c.add_gate(GateOp::AND, &[NodeId::new(0)]).unwrap_err();
        assert!(matches!(err, Error::Arity { .. }));
    }

    #[test]
    fn full_adder_evaluation() {
        let fa = full_adder_fig1();
        assert_eq!(fa.size(), 5);
        assert_eq!(fa.evaluate(&[true, true, false]).unwrap(), vec![false, true]);
        assert_eq!(fa.evaluate(&[false, false, false]).unwrap(), vec![false, false]);
        assert!(fa.evaluate(&[true]).is_err());
        assert_eq!(fa.validate_basis(Basis::Aig).len(), 4);
        assert!(fa.validate_basis(Basis::Xaig).is_empty());
    }

    #[test]
    fn and_truth_table() {
        let mut c = Circuit::with_inputs(2);
        let g = c.add_gate(GateOp::AND, &[NodeId::new(0), NodeId::new(1)]).unwrap();
        c.add_output(g).unwrap();
        assert_eq!(c.truth_table().unwrap().to_binary_columns(), vec!["0001"]);
    }

    #[test]
    fn truth_table_cap() {
        let mut c = Circuit::with_inputs(40);
        c.add_output(NodeId::new(0)).unwrap();
        assert!(matches!(c.truth_table(), Err(Error::TooManyInputs { .. })));
        assert_eq!(Circuit::new().size(), 0);
    }

    #[test]
    fn connect_block_grows_host() {
        let fa = full_adder_fig1();
        let mut host = Circuit::with_inputs(3);
        let ins = host.inputs().to_vec();
        let outs = host.connect_block(&fa, &ins, "fa").unwrap();
        host.set_outputs(outs).unwrap();
        assert_eq!(host.size(), 5);
        assert_eq!(host.truth_table().unwrap(), fa.truth_table().unwrap());
        assert_eq!(host.blocks()[0].gates.len(), 5);
        let err = host.connect_block(&fa, &ins, "fa").unwrap_err();
        assert!(matches!(err, Error::BlockNameCollision(_)));
        let err = host.connect_block(&fa, &ins[..1], "fb").unwrap_err();
        assert!(matches!(err, Error::UnboundBlockInput(1)));
    }

    #[test]
    fn names_are_unique() {
        let mut c = Circuit::with_inputs(1);
        assert!(matches!(c.add_input("x1"), Err(Error::DuplicateName(_))));
        assert!(c.add_input("bad name").is_err());
        let g = c.add_gate(GateOp::Not, &[NodeId::new(0)]).unwrap();
        assert_eq!(c.node(g).name(), "g1");
        c.rename(g, "y").unwrap();
        assert_eq!(c.find("y"), Some(g));
        assert_eq!(c.find("g1"), None);
    }
}
