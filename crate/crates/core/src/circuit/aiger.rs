//! AIGER ASCII (`aag`) import and export for combinational circuits.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::graph::{Circuit, NodeId};
use super::op::{BinOp, GateOp};
use crate::error::{Error, Result};

/// Writes `c` as `aag`. Inversions become literal parity; every AND-type
/// gate becomes one AIGER AND. XOR-type gates are rejected.
pub fn to_aiger(c: &Circuit) -> Result<String> {
    let mut lit = vec![0u32; c.len()];
    let mut ands: Vec<(u32, u32, u32)> = Vec::new();
    let mut next_var = c.num_inputs() as u32 + 1;
    let pos = c.input_positions();
    for id in c.node_ids() {
        let node = c.node(id);
        let f = node.fanins();
        lit[id.index()] = match node.op() {
            None => 2 * (pos[id.index()].unwrap() as u32 + 1),
            Some(GateOp::Const(v)) => v as u32,
            Some(GateOp::Iden) => lit[f[0].index()],
            Some(GateOp::Not) => lit[f[0].index()] ^ 1,
            Some(GateOp::Binary(op)) => {
                let (a, b) = (lit[f[0].index()], lit[f[1].index()]);
                match op {
                    BinOp::Zero => 0,
                    BinOp::One => 1,
                    BinOp::Left => a,
                    BinOp::NotA => a ^ 1,
                    BinOp::Right => b,
                    BinOp::NotB => b ^ 1,
                    _ => {
                        let (na, nb, no) = op.and_decomposition().ok_or(Error::NotAig(id.index()))?;
                        let (r0, r1) = (a ^ na as u32, b ^ nb as u32);
                        let lhs = 2 * next_var;
                        next_var += 1;
                        ands.push((lhs, r0.max(r1), r0.min(r1)));
                        lhs ^ no as u32
                    }
                }
            }
        };
    }
    let mut s = String::new();
    writeln!(
        s,
        "aag {} {} 0 {} {}",
        next_var - 1,
        c.num_inputs(),
        c.num_outputs(),
        ands.len()
    )
    .unwrap();
    for k in 0..c.num_inputs() {
        writeln!(s, "{}", 2 * (k + 1)).unwrap();
    }
    for &o in c.outputs() {
        writeln!(s, "{}", lit[o.index()]).unwrap();
    }
    for (l, r0, r1) in &ands {
        writeln!(s, "{l} {r0} {r1}").unwrap();
    }
    for (k, &i) in c.inputs().iter().enumerate() {
        writeln!(s, "i{k} {}", c.node(i).name()).unwrap();
    }
    Ok(s)
}

fn numbers(line: &str, lineno: usize, count: usize) -> Result<Vec<u32>> {
    let v = line
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Error::parse(lineno, format!("bad number `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != count {
        return Err(Error::parse(lineno, format!("expected {count} numbers")));
    }
    Ok(v)
}

pub fn parse_aiger(text: &str) -> Result<Circuit> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("aag") {
        return Err(Error::parse(hl, "expected `aag` header"));
    }
    let h = numbers(&fields.collect::<Vec<_>>().join(" "), hl, 5)?;
    let (max_var, ni, nl, no, na) = (h[0], h[1] as usize, h[2], h[3] as usize, h[4] as usize);
    if nl != 0 {
        return Err(Error::parse(hl, "latches are not supported"));
    }
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of file while reading {what}")))
    };
    let mut input_vars = Vec::with_capacity(ni);
    for _ in 0..ni {
        let (l, t) = next("inputs")?;
        let v = numbers(t, l, 1)?[0];
        if v % 2 == 1 || v == 0 {
            return Err(Error::parse(l, "input literal must be positive and even"));
        }
        input_vars.push(v / 2);
    }
    let mut output_lits = Vec::with_capacity(no);
    for _ in 0..no {
        let (l, t) = next("outputs")?;
        output_lits.push((l, numbers(t, l, 1)?[0]));
    }
    let mut and_defs: HashMap<u32, (usize, u32, u32)> = HashMap::new();
    let mut and_order = Vec::with_capacity(na);
    for _ in 0..na {
        let (l, t) = next("and gates")?;
        let v = numbers(t, l, 3)?;
        if v[0] % 2 == 1 {
            return Err(Error::parse(l, "and gate literal must be even"));
        }
        if and_defs.insert(v[0] / 2, (l, v[1], v[2])).is_some() {
            return Err(Error::parse(l, "variable defined twice"));
        }
        and_order.push(v[0] / 2);
    }
    let mut names: HashMap<usize, String> = HashMap::new();
    for (l, t) in lines {
        if t == "c" {
            break;
        }
        if let Some(rest) = t.strip_prefix('i') {
            if let Some((k, name)) = rest.split_once(' ') {
                let k: usize = k.parse().map_err(|_| Error::parse(l, "bad symbol index"))?;
                names.insert(k, name.trim().to_string());
            }
        }
    }

    let mut c = Circuit::new();
    let mut node_of: HashMap<u32, NodeId> = HashMap::new();
    for (k, &v) in input_vars.iter().enumerate() {
        let name = names.get(&k).cloned().unwrap_or_else(|| format!("x{}", k + 1));
        let id = c.add_input(name)?;
        if node_of.insert(v, id).is_some() {
            return Err(Error::parse(k + 2, "input variable repeated"));
        }
    }
    let mut const0: Option<NodeId> = None;
    let mut var_node = |c: &mut Circuit, node_of: &HashMap<u32, NodeId>, v: u32| -> Option<NodeId> {
        if v == 0 {
            Some(*const0.get_or_insert_with(|| c.add_const(false)))
        } else {
            node_of.get(&v).copied()
        }
    };
    for &root in &and_order {
        if node_of.contains_key(&root) {
            continue;
        }
        let mut stack = vec![(root, false)];
        let mut active = std::collections::HashSet::new();
        while let Some((v, expanded)) = stack.pop() {
            if node_of.contains_key(&v) {
                continue;
            }
            let &(l, r0, r1) = and_defs
                .get(&v)
                .ok_or_else(|| Error::parse(0, format!("undefined variable {v}")))?;
            if expanded {
                let a = var_node(&mut c, &node_of, r0 / 2).unwrap();
                let b = var_node(&mut c, &node_of, r1 / 2).unwrap();
                let op = BinOp::And.with_negated_inputs(r0 % 2 == 1, r1 % 2 == 1);
                let id = c.add_binary(op, a, b)?;
                node_of.insert(v, id);
                continue;
            }
            if !active.insert(v) {
                return Err(Error::parse(l, format!("cycle through variable {v}")));
            }
            stack.push((v, true));
            for r in [r1, r0] {
                let rv = r / 2;
                if rv != 0 && !node_of.contains_key(&rv) {
                    if !and_defs.contains_key(&rv) {
                        return Err(Error::parse(l, format!("undefined variable {rv}")));
                    }
                    stack.push((rv, false));
                }
            }
        }
    }
    let mut negated: HashMap<NodeId, NodeId> = HashMap::new();
    for (l, lit) in output_lits {
        if lit / 2 > max_var {
            return Err(Error::parse(l, "output literal exceeds maximum variable"));
        }
        let base = var_node(&mut c, &node_of, lit / 2)
            .ok_or_else(|| Error::parse(l, format!("undefined literal {lit}")))?;
        let id = if lit % 2 == 1 {
            match negated.get(&base) {
                Some(&n) => n,
                None => {
                    let n = c.add_not(base)?;
                    negated.insert(base, n);
                    n
                }
            }
        } else {
            base
        };
        c.add_output(id)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::bench::parse_bench;

    #[test]
    fn demorgan_or() {
        let src = "aag 5 3 0 1 2\n2\n4\n6\n11\n8 2 4\n10 9 7\n";
        let c = parse_aiger(src).unwrap();
        let mut ones = 0;
        for t in 0..8u32 {
            let x: Vec<bool> = (0..3).map(|k| (t >> k) & 1 == 1).collect();
            if c.evaluate(&x).unwrap()[0] {
                ones += 1;
            }
            assert_eq!(c.evaluate(&x).unwrap()[0], (x[0] && x[1]) || x[2]);
        }
        assert_eq!(ones, 5);
        assert_eq!(c.size(), 2);
    }

    #[test]
    fn rejects_latches_and_xor() {
        assert!(parse_aiger("aag 1 0 1 0 0\n2 3\n").is_err());
        let c = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(z)\nz = XOR(a, b)\n").unwrap();
        assert!(matches!(to_aiger(&c), Err(Error::NotAig(_))));
    }

    #[test]
    fn export_then_import_preserves_function() {
        let c = parse_bench(
            "INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(z)\nOUTPUT(w)\nOUTPUT(k)\n\
             y = NOR(a, b)\nz = GEQ(y, c)\nw = NOT(y)\nk = CONST1()\n",
        )
        .unwrap();
        let text = to_aiger(&c).unwrap();
        assert!(text.starts_with("aag 5 3 0 3 2\n"));
        let back = parse_aiger(&text).unwrap();
        assert_eq!(back.truth_table().unwrap(), c.truth_table().unwrap());
        assert_eq!(back.node(back.inputs()[1]).name(), "b");
    }
}
