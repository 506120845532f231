//! BENCH-style text format.
//!
//! ```text
//! INPUT(x1)
//! INPUT(x2)
//! OUTPUT(g)
//! g = AND(x1, x2)
//! ```
//!
//! Gate lines may appear in any order when parsing; emission lists inputs,
//! outputs and then gates in id order. Block membership is carried on
//! `# BLOCK name: inputs | gates | outputs` comment lines.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::graph::{Block, Circuit, NodeId};
use super::op::GateOp;
use crate::error::{Error, Result};

pub fn to_bench(c: &Circuit) -> String {
    let mut s = String::new();
    for &i in c.inputs() {
        writeln!(s, "INPUT({})", c.node(i).name()).unwrap();
    }
    for &o in c.outputs() {
        writeln!(s, "OUTPUT({})", c.node(o).name()).unwrap();
    }
    for id in c.node_ids() {
        let node = c.node(id);
        if let Some(op) = node.op() {
            let args: Vec<&str> = node.fanins().iter().map(|f| c.node(*f).name()).collect();
            writeln!(s, "{} = {}({})", node.name(), op.name(), args.join(", ")).unwrap();
        }
    }
    let names = |ids: &[NodeId]| {
        ids.iter()
            .map(|i| c.node(*i).name())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for b in c.blocks() {
        writeln!(
            s,
            "# BLOCK {}: {} | {} | {}",
            b.name,
            names(&b.inputs),
            names(&b.gates),
            names(&b.outputs)
        )
        .unwrap();
    }
    s
}

struct GateLine {
    line: usize,
    name: String,
    op: GateOp,
    args: Vec<String>,
}

fn call(text: &str, line: usize) -> Result<(&str, Vec<&str>)> {
    let open = text
        .find('(')
        .ok_or_else(|| Error::parse(line, "expected `(`"))?;
    let close = text
        .rfind(')')
        .ok_or_else(|| Error::parse(line, "expected `)`"))?;
    if close < open || !text[close + 1..].trim().is_empty() {
        return Err(Error::parse(line, "malformed call"));
    }
    let head = text[..open].trim();
    let inner = text[open + 1..close].trim();
    let args = if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(str::trim).collect()
    };
    Ok((head, args))
}

pub fn parse_bench(text: &str) -> Result<Circuit> {
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    let mut gates: Vec<GateLine> = Vec::new();
    let mut blocks = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let t = raw.trim();
        if let Some(rest) = t.strip_prefix("# BLOCK ") {
            blocks.push((line, rest.to_string()));
            continue;
        }
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some((lhs, rhs)) = t.split_once('=') {
            let name = lhs.trim().to_string();
            let (head, args) = call(rhs, line)?;
            let op: GateOp = head.parse().map_err(|_| Error::parse(line, format!("unknown operation `{head}`")))?;
            if args.len() != op.arity() {
                return Err(Error::parse(
                    line,
                    format!("{} expects {} operand(s)", op.name(), op.arity()),
                ));
            }
            gates.push(GateLine {
                line,
                name,
                op,
                args: args.into_iter().map(String::from).collect(),
            });
        } else {
            let (head, args) = call(t, line)?;
            if args.len() != 1 {
                return Err(Error::parse(line, "expected a single name"));
            }
            match head.to_ascii_uppercase().as_str() {
                "INPUT" => inputs.push((line, args[0].to_string())),
                "OUTPUT" => outputs.push((line, args[0].to_string())),
                other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
            }
        }
    }

    let mut c = Circuit::new();
    for (line, name) in &inputs {
        c.add_input(name.clone())
            .map_err(|e| Error::parse(*line, e.to_string()))?;
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, g) in gates.iter().enumerate() {
        if index.insert(g.name.as_str(), i).is_some() || c.find(&g.name).is_some() {
            return Err(Error::parse(g.line, format!("`{}` defined twice", g.name)));
        }
    }

    // depth-first placement keeps the file order whenever it is already topological
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; gates.len()];
    for root in 0..gates.len() {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack = vec![(root, false)];
        while let Some((g, expanded)) = stack.pop() {
            if expanded {
                let gl = &gates[g];
                let operands = gl
                    .args
                    .iter()
                    .map(|a| c.find(a).ok_or_else(|| Error::parse(gl.line, format!("unknown signal `{a}`"))))
                    .collect::<Result<Vec<_>>>()?;
                c.add_named_gate(gl.name.clone(), gl.op, &operands)
                    .map_err(|e| Error::parse(gl.line, e.to_string()))?;
                mark[g] = Mark::Done;
                continue;
            }
            match mark[g] {
                Mark::Done => continue,
                Mark::Active => return Err(Error::parse(gates[g].line, format!("cycle through `{}`", gates[g].name))),
                Mark::New => {}
            }
            mark[g] = Mark::Active;
            stack.push((g, true));
            for a in gates[g].args.iter().rev() {
                if c.find(a).is_some() {
                    continue;
                }
                match index.get(a.as_str()) {
                    Some(&dep) => match mark[dep] {
                        Mark::Done => {}
                        Mark::Active => {
                            return Err(Error::parse(gates[g].line, format!("cycle through `{a}`")))
                        }
                        Mark::New => stack.push((dep, false)),
                    },
                    None => {
                        return Err(Error::parse(gates[g].line, format!("unknown signal `{a}`")))
                    }
                }
            }
        }
    }

    for (line, name) in &outputs {
        let id = c
            .find(name)
            .ok_or_else(|| Error::parse(*line, format!("unknown output `{name}`")))?;
        c.add_output(id)?;
    }
    for (line, spec) in blocks {
        let (name, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "malformed block line"))?;
        let parts: Vec<&str> = rest.split('|').collect();
        if parts.len() != 3 {
            return Err(Error::parse(line, "block line needs three sections"));
        }
        let resolve = |s: &str| {
            s.split_whitespace()
                .map(|n| c.find(n).ok_or_else(|| Error::parse(line, format!("unknown signal `{n}`"))))
                .collect::<Result<Vec<_>>>()
        };
        let block = Block {
            name: name.trim().to_string(),
            inputs: resolve(parts[0])?,
            gates: resolve(parts[1])?,
            outputs: resolve(parts[2])?,
        };
        c.push_block(block);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FA: &str = "\
INPUT(x1)
INPUT(x2)
INPUT(x3)
OUTPUT(w0)
OUTPUT(w1)
a = XOR(x1, x2)
b = XOR(x2, x3)
c = OR(a, b)
w0 = XOR(a, x3)
w1 = XOR(c, w0)
";

    #[test]
    fn parses_and_emits_canonically() {
        let c = parse_bench(FA).unwrap();
        assert_eq!(c.size(), 5);
        assert_eq!(to_bench(&c), FA);
    }

    #[test]
    fn accepts_out_of_order_and_loose_whitespace() {
        let text = "INPUT( a )\nOUTPUT(z)\n  z=AND( y ,a)\ny = NOT(a)\n";
        let c = parse_bench(text).unwrap();
        assert_eq!(c.evaluate(&[true]).unwrap(), vec![false]);
        assert_eq!(
            to_bench(&c),
            "INPUT(a)\nOUTPUT(z)\ny = NOT(a)\nz = AND(y, a)\n"
        );
    }

    #[test]
    fn rejects_cycles_and_unknowns() {
        assert!(parse_bench("INPUT(a)\nb = AND(a, c)\nc = AND(a, b)\n").is_err());
        assert!(parse_bench("INPUT(a)\nb = AND(a, q)\n").is_err());
        assert!(parse_bench("INPUT(a)\nOUTPUT(q)\n").is_err());
        assert!(parse_bench("INPUT(a)\nb = FROB(a)\n").is_err());
        assert!(parse_bench("INPUT(a)\nb = NOT(a, a)\n").is_err());
    }

    #[test]
    fn constants_and_blocks_round_trip() {
        let text = "INPUT(a)\nOUTPUT(k)\nOUTPUT(a)\nk = CONST1()\n# BLOCK one:  | k | k\n";
        let c = parse_bench(text).unwrap();
        let again = to_bench(&c);
        assert_eq!(to_bench(&parse_bench(&again).unwrap()), again);
        assert_eq!(c.blocks().len(), 1);
        assert_eq!(c.evaluate(&[false]).unwrap(), vec![true, false]);
    }
}
