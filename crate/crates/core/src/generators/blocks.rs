use crate::circuit::{Basis, BinOp, Circuit, GateOp, NodeId};
use crate::error::{Error, Result};

/// A signal that may have been folded to a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Lit {
    Const(bool),
    Node(NodeId),
}

/// Incremental construction helper shared by the generators.
pub(crate) struct Builder {
    pub c: Circuit,
    pub basis: Basis,
    fa: Circuit,
    fa_carry_first: Circuit,
    ha: Circuit,
    blocks: usize,
}

impl Builder {
    pub fn new(c: Circuit, basis: Basis) -> Self {
        Builder {
            c,
            basis,
            fa: gen_full_adder(basis),
            fa_carry_first: full_adder_carry_first(basis),
            ha: gen_half_adder(basis),
            blocks: 0,
        }
    }

    pub fn with_named_inputs(names: &[String], basis: Basis) -> Result<Self> {
        let mut c = Circuit::new();
        for n in names {
            c.add_input(n.as_str())?;
        }
        Ok(Builder::new(c, basis))
    }

    pub fn input(&self, i: usize) -> NodeId {
        self.c.inputs()[i]
    }

    fn block(&mut self, which: u8, ins: &[NodeId]) -> Result<Vec<NodeId>> {
        self.blocks += 1;
        let (block, prefix) = match which {
            0 => (&self.fa, "FA"),
            1 => (&self.fa_carry_first, "FA"),
            _ => (&self.ha, "HA"),
        };
        let name = format!("{prefix}{}", self.blocks);
        self.c.connect_block(block, ins, &name)
    }

    /// Full adder; returns `(sum, carry)`.
    pub fn fa(&mut self, a: NodeId, b: NodeId, c: NodeId) -> Result<(NodeId, NodeId)> {
        let o = self.block(0, &[a, b, c])?;
        Ok((o[0], o[1]))
    }

    /// Full adder whose carry does not read the sum gate.
    pub fn fa_carry_first(&mut self, a: NodeId, b: NodeId, c: NodeId) -> Result<(NodeId, NodeId)> {
        let o = self.block(1, &[a, b, c])?;
        Ok((o[0], o[1]))
    }

    pub fn ha(&mut self, a: NodeId, b: NodeId) -> Result<(NodeId, NodeId)> {
        let o = self.block(2, &[a, b])?;
        Ok((o[0], o[1]))
    }

    pub fn bin(&mut self, op: BinOp, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.c.add_binary(op, a, b)
    }

    pub fn not(&mut self, a: NodeId) -> Result<NodeId> {
        self.c.add_not(a)
    }

    pub fn xor(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        match self.basis {
            Basis::Xaig => self.bin(BinOp::Xor, a, b),
            Basis::Aig => {
                let o = self.bin(BinOp::Or, a, b)?;
                let n = self.bin(BinOp::And, a, b)?;
                self.bin(BinOp::Gt, o, n)
            }
        }
    }

    /// `s ? a : b` with three AND-type gates.
    pub fn ite(&mut self, s: NodeId, a: NodeId, b: NodeId) -> Result<NodeId> {
        let t = self.bin(BinOp::And, s, a)?;
        let e = self.bin(BinOp::Lt, s, b)?;
        self.bin(BinOp::Or, t, e)
    }

    pub fn lit(&mut self, l: Lit) -> NodeId {
        match l {
            Lit::Node(n) => n,
            Lit::Const(v) => self.c.add_const(v),
        }
    }

    pub fn and_lit(&mut self, a: Lit, b: Lit) -> Result<Lit> {
        Ok(match (a, b) {
            (Lit::Const(false), _) | (_, Lit::Const(false)) => Lit::Const(false),
            (Lit::Const(true), x) | (x, Lit::Const(true)) => x,
            (Lit::Node(a), Lit::Node(b)) => Lit::Node(self.bin(BinOp::And, a, b)?),
        })
    }

    pub fn or_lit(&mut self, a: Lit, b: Lit) -> Result<Lit> {
        Ok(match (a, b) {
            (Lit::Const(true), _) | (_, Lit::Const(true)) => Lit::Const(true),
            (Lit::Const(false), x) | (x, Lit::Const(false)) => x,
            (Lit::Node(a), Lit::Node(b)) => Lit::Node(self.bin(BinOp::Or, a, b)?),
        })
    }

    /// Balanced AND over `nodes`; true when empty.
    pub fn and_tree(&mut self, nodes: &[NodeId]) -> Result<Lit> {
        let mut layer: Vec<Lit> = nodes.iter().map(|&n| Lit::Node(n)).collect();
        if layer.is_empty() {
            return Ok(Lit::Const(true));
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            for pair in layer.chunks(2) {
                next.push(match *pair {
                    [a, b] => self.and_lit(a, b)?,
                    [a] => a,
                    _ => unreachable!(),
                });
            }
            layer = next;
        }
        Ok(layer[0])
    }

    pub fn finish(mut self, outputs: Vec<NodeId>) -> Result<Circuit> {
        self.c.set_outputs(outputs)?;
        Ok(self.c)
    }
}

pub(crate) fn check_range(what: &str, n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return Err(Error::InvalidArgument(format!(
            "{what} needs {lo} <= n <= {hi}, got {n}"
        )));
    }
    Ok(())
}

pub(crate) fn operand_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")))
        .collect()
}

/// Full adder: outputs `(sum, carry)` of three bits.
///
/// XAIG: five gates. AIG: seven AND-type gates.
pub fn gen_full_adder(basis: Basis) -> Circuit {
    let mut c = Circuit::with_inputs(3);
    let [x1, x2, x3] = [0, 1, 2].map(|i| c.inputs()[i]);
    let named = |c: &mut Circuit, name: &str, op: BinOp, a: NodeId, b: NodeId| {
        c.add_named_gate(name, GateOp::Binary(op), &[a, b])
            .expect("fresh names")
    };
    match basis {
        Basis::Xaig => {
            let a = named(&mut c, "a", BinOp::Xor, x1, x2);
            let b = named(&mut c, "b", BinOp::Xor, x2, x3);
            let cc = named(&mut c, "c", BinOp::Or, a, b);
            let sum = named(&mut c, "sum", BinOp::Xor, a, x3);
            let carry = named(&mut c, "carry", BinOp::Xor, cc, sum);
            c.set_outputs(vec![sum, carry]).unwrap();
        }
        Basis::Aig => {
            let g1 = named(&mut c, "g1", BinOp::And, x2, x3);
            let g2 = named(&mut c, "g2", BinOp::Or, x2, x3);
            let g3 = named(&mut c, "g3", BinOp::Gt, g2, g1);
            let g4 = named(&mut c, "g4", BinOp::Or, x1, g3);
            let g5 = named(&mut c, "g5", BinOp::And, x1, g3);
            let sum = named(&mut c, "sum", BinOp::Gt, g4, g5);
            let carry = named(&mut c, "carry", BinOp::Or, g1, g5);
            c.set_outputs(vec![sum, carry]).unwrap();
        }
    }
    c
}

/// Full adder of the same size whose carry is computed without the sum gate,
/// so that dropping the sum output frees its gate.
pub(crate) fn full_adder_carry_first(basis: Basis) -> Circuit {
    if basis == Basis::Aig {
        return gen_full_adder(basis);
    }
    let mut c = Circuit::with_inputs(3);
    let [x1, x2, x3] = [0, 1, 2].map(|i| c.inputs()[i]);
    let a = c.add_binary(BinOp::Xor, x1, x2).unwrap();
    let sum = c.add_binary(BinOp::Xor, a, x3).unwrap();
    let d = c.add_binary(BinOp::Xor, x1, x3).unwrap();
    let e = c.add_binary(BinOp::And, a, d).unwrap();
    let carry = c.add_binary(BinOp::Xor, e, x1).unwrap();
    c.rename(sum, "sum").unwrap();
    c.rename(carry, "carry").unwrap();
    c.set_outputs(vec![sum, carry]).unwrap();
    c
}

/// Half adder: outputs `(sum, carry)` of two bits. XAIG: two gates, AIG: three.
pub fn gen_half_adder(basis: Basis) -> Circuit {
    let mut c = Circuit::with_inputs(2);
    let [x1, x2] = [0, 1].map(|i| c.inputs()[i]);
    let carry = c.add_binary(BinOp::And, x1, x2).unwrap();
    let sum = match basis {
        Basis::Xaig => c.add_binary(BinOp::Xor, x1, x2).unwrap(),
        Basis::Aig => {
            let none = c.add_binary(BinOp::Nor, x1, x2).unwrap();
            c.add_binary(BinOp::Nor, carry, none).unwrap()
        }
    };
    c.rename(sum, "sum").unwrap();
    c.rename(carry, "carry").unwrap();
    c.set_outputs(vec![sum, carry]).unwrap();
    c
}

/// If-then-else over inputs `(s, a, b)`: three AND-type gates, valid in both bases.
pub fn gen_ite() -> Circuit {
    let mut c = Circuit::new();
    let s = c.add_input("s").unwrap();
    let a = c.add_input("a").unwrap();
    let b = c.add_input("b").unwrap();
    let mut bld = Builder {
        c,
        basis: Basis::Aig,
        fa: Circuit::new(),
        fa_carry_first: Circuit::new(),
        ha: Circuit::new(),
        blocks: 0,
    };
    let o = bld.ite(s, a, b).unwrap();
    bld.finish(vec![o]).unwrap()
}

/// `[int(x) = int(y)]` over inputs `x1..xn, y1..yn`.
pub fn gen_equal(n: usize, basis: Basis) -> Result<Circuit> {
    check_range("EQUAL", n, 1, 64)?;
    let mut b = Builder::with_named_inputs(&operand_names(n), basis)?;
    let mut eq = Vec::with_capacity(n);
    for i in 0..n {
        let d = b.xor(b.input(i), b.input(n + i))?;
        eq.push(b.not(d)?);
    }
    let all = b.and_tree(&eq)?;
    let o = b.lit(all);
    b.finish(vec![o])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adder_sizes() {
        assert_eq!(gen_full_adder(Basis::Xaig).size(), 5);
        assert_eq!(gen_full_adder(Basis::Aig).size(), 7);
        assert_eq!(full_adder_carry_first(Basis::Xaig).size(), 5);
        assert_eq!(gen_half_adder(Basis::Xaig).size(), 2);
        assert_eq!(gen_half_adder(Basis::Aig).size(), 3);
        for basis in [Basis::Xaig, Basis::Aig] {
            for c in [gen_full_adder(basis), full_adder_carry_first(basis), gen_half_adder(basis)] {
                assert!(c.validate_basis(basis).is_empty());
                let tt = c.truth_table().unwrap();
                for t in 0..tt.rows() {
                    let s = t.count_ones() as usize;
                    assert_eq!(tt.row(t), vec![s & 1 == 1, s >> 1 == 1]);
                }
            }
        }
        assert_eq!(gen_half_adder(Basis::Xaig).evaluate(&[true, true]).unwrap(), vec![false, true]);
    }

    #[test]
    fn ite_and_equal() {
        let ite = gen_ite();
        assert_eq!(ite.size(), 3);
        assert!(ite.validate_basis(Basis::Aig).is_empty());
        for t in 0..8 {
            let (s, a, b) = (t & 1 == 1, t & 2 == 2, t & 4 == 4);
            assert_eq!(ite.evaluate(&[s, a, b]).unwrap(), vec![if s { a } else { b }]);
        }
        let eq = gen_equal(2, Basis::Xaig).unwrap();
        assert_eq!(eq.evaluate(&[false, true, false, true]).unwrap(), vec![true]);
        assert_eq!(eq.evaluate(&[false, true, true, true]).unwrap(), vec![false]);
    }
}
