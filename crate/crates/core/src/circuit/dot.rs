//! Graphviz export. Blocks are drawn as dashed clusters.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::graph::{Circuit, NodeKind};
use super::op::{BinOp, GateOp};

fn symbol(op: GateOp) -> String {
    match op {
        GateOp::Binary(BinOp::And) => "∧".into(),
        GateOp::Binary(BinOp::Or) => "∨".into(),
        GateOp::Binary(BinOp::Xor) => "⊕".into(),
        GateOp::Binary(BinOp::Xnor) => "≡".into(),
        GateOp::Binary(BinOp::Gt) => ">".into(),
        GateOp::Binary(BinOp::Lt) => "<".into(),
        GateOp::Binary(BinOp::Geq) => "≥".into(),
        GateOp::Binary(BinOp::Leq) => "≤".into(),
        GateOp::Not => "¬".into(),
        other => other.name().to_string(),
    }
}

pub fn to_dot(c: &Circuit) -> String {
    let mut s = String::from("digraph circuit {\n  rankdir=TB;\n");
    let outputs: HashSet<_> = c.outputs().iter().copied().collect();
    let node_line = |s: &mut String, id: super::graph::NodeId, indent: &str| {
        let node = c.node(id);
        let (label, shape) = match node.kind() {
            NodeKind::Input => (node.name().to_string(), "box"),
            NodeKind::Gate(op) => (format!("{}\\n{}", symbol(op), node.name()), "circle"),
        };
        let style = if outputs.contains(&id) { ", penwidth=2" } else { "" };
        writeln!(s, "{indent}n{} [label=\"{label}\", shape={shape}{style}];", id.index()).unwrap();
    };
    let mut in_block = HashSet::new();
    for (k, b) in c.blocks().iter().enumerate() {
        writeln!(s, "  subgraph cluster_{k} {{\n    label=\"{}\";\n    style=dashed;", b.name).unwrap();
        for &g in &b.gates {
            if in_block.insert(g) {
                node_line(&mut s, g, "    ");
            }
        }
        s.push_str("  }\n");
    }
    for id in c.node_ids() {
        if !in_block.contains(&id) {
            node_line(&mut s, id, "  ");
        }
    }
    for id in c.node_ids() {
        for f in c.node(id).fanins() {
            writeln!(s, "  n{} -> n{};", f.index(), id.index()).unwrap();
        }
    }
    for (k, o) in c.outputs().iter().enumerate() {
        writeln!(s, "  out{k} [label=\"out{k}\", shape=plaintext];\n  n{} -> out{k};", o.index()).unwrap();
    }
    s.push_str("}\n");
    s
}
