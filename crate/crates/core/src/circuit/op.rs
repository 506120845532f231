//! Gate operations.
//!
//! A binary operation is identified with its 4-bit truth table: bit `2a + b`
//! holds the value on first operand `a` and second operand `b`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the 16 binary Boolean operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum BinOp {
    Zero = 0,
    Nor = 1,
    /// `!a & b`
    Lt = 2,
    NotA = 3,
    /// `a & !b`
    Gt = 4,
    NotB = 5,
    Xor = 6,
    Nand = 7,
    And = 8,
    Xnor = 9,
    /// projection on the second operand
    Right = 10,
    /// `!a | b`
    Leq = 11,
    /// projection on the first operand
    Left = 12,
    /// `a | !b`
    Geq = 13,
    Or = 14,
    One = 15,
}

const ALL_BINOPS: [BinOp; 16] = [
    BinOp::Zero,
    BinOp::Nor,
    BinOp::Lt,
    BinOp::NotA,
    BinOp::Gt,
    BinOp::NotB,
    BinOp::Xor,
    BinOp::Nand,
    BinOp::And,
    BinOp::Xnor,
    BinOp::Right,
    BinOp::Leq,
    BinOp::Left,
    BinOp::Geq,
    BinOp::Or,
    BinOp::One,
];

const NAMES: [&str; 16] = [
    "ZERO", "NOR", "LT", "NOTA", "GT", "NOTB", "XOR", "NAND", "AND", "XNOR", "RIGHT", "LEQ",
    "LEFT", "GEQ", "OR", "ONE",
];

impl BinOp {
    pub const ALL: [BinOp; 16] = ALL_BINOPS;

    pub fn from_table(table: u8) -> BinOp {
        ALL_BINOPS[(table & 0xF) as usize]
    }

    pub fn table(self) -> u8 {
        self as u8
    }

    #[inline]
    pub fn eval(self, a: bool, b: bool) -> bool {
        (self.table() >> ((a as u8) << 1 | b as u8)) & 1 == 1
    }

    /// Bitwise evaluation on 64 rows at once.
    #[inline]
    pub fn eval_word(self, a: u64, b: u64) -> u64 {
        match self {
            BinOp::Zero => 0,
            BinOp::Nor => !(a | b),
            BinOp::Lt => !a & b,
            BinOp::NotA => !a,
            BinOp::Gt => a & !b,
            BinOp::NotB => !b,
            BinOp::Xor => a ^ b,
            BinOp::Nand => !(a & b),
            BinOp::And => a & b,
            BinOp::Xnor => !(a ^ b),
            BinOp::Right => b,
            BinOp::Leq => !a | b,
            BinOp::Left => a,
            BinOp::Geq => a | !b,
            BinOp::Or => a | b,
            BinOp::One => !0,
        }
    }

    /// The operation with its operands exchanged.
    pub fn swapped(self) -> BinOp {
        let t = self.table();
        let bit = |i: u8| (t >> i) & 1;
        BinOp::from_table(bit(0) | bit(2) << 1 | bit(1) << 2 | bit(3) << 3)
    }

    /// The operation applied to negated first and/or second operand.
    pub fn with_negated_inputs(self, neg_a: bool, neg_b: bool) -> BinOp {
        let mut t = 0u8;
        for a in 0..2u8 {
            for b in 0..2u8 {
                if self.eval((a == 1) ^ neg_a, (b == 1) ^ neg_b) {
                    t |= 1 << (a << 1 | b);
                }
            }
        }
        BinOp::from_table(t)
    }

    pub fn negated(self) -> BinOp {
        BinOp::from_table(!self.table())
    }

    /// Normal operations output 0 when both operands are 0.
    pub fn is_normal(self) -> bool {
        self.table() & 1 == 0
    }

    /// Realisable as a single AND with optional negations on inputs and output.
    pub fn is_and_type(self) -> bool {
        matches!(self.table().count_ones(), 1 | 3)
    }

    pub fn is_xor_type(self) -> bool {
        matches!(self, BinOp::Xor | BinOp::Xnor)
    }

    pub fn depends_on_first(self) -> bool {
        let t = self.table();
        (t & 0b0011) != ((t >> 2) & 0b0011)
    }

    pub fn depends_on_second(self) -> bool {
        let t = self.table();
        (t & 0b0101) != ((t >> 1) & 0b0101)
    }

    /// For AND-type operations, `(neg_a, neg_b, neg_out)` such that
    /// `op(a, b) = neg_out ^ ((a ^ neg_a) & (b ^ neg_b))`.
    pub fn and_decomposition(self) -> Option<(bool, bool, bool)> {
        for bits in 0..8u8 {
            let (na, nb, no) = (bits & 1 == 1, bits & 2 == 2, bits & 4 == 4);
            let mut candidate = BinOp::And.with_negated_inputs(na, nb);
            if no {
                candidate = candidate.negated();
            }
            if candidate == self {
                return Some((na, nb, no));
            }
        }
        None
    }

    pub fn name(self) -> &'static str {
        NAMES[self as usize]
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Operation computed by a gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateOp {
    Const(bool),
    Iden,
    Not,
    Binary(BinOp),
}

impl GateOp {
    pub const AND: GateOp = GateOp::Binary(BinOp::And);
    pub const OR: GateOp = GateOp::Binary(BinOp::Or);
    pub const XOR: GateOp = GateOp::Binary(BinOp::Xor);
    pub const XNOR: GateOp = GateOp::Binary(BinOp::Xnor);
    pub const NAND: GateOp = GateOp::Binary(BinOp::Nand);
    pub const NOR: GateOp = GateOp::Binary(BinOp::Nor);
    pub const GT: GateOp = GateOp::Binary(BinOp::Gt);
    pub const LT: GateOp = GateOp::Binary(BinOp::Lt);
    pub const GEQ: GateOp = GateOp::Binary(BinOp::Geq);
    pub const LEQ: GateOp = GateOp::Binary(BinOp::Leq);

    pub fn arity(self) -> usize {
        match self {
            GateOp::Const(_) => 0,
            GateOp::Iden | GateOp::Not => 1,
            GateOp::Binary(_) => 2,
        }
    }

    pub fn is_binary(self) -> bool {
        matches!(self, GateOp::Binary(_))
    }

    pub fn name(self) -> &'static str {
        match self {
            GateOp::Const(false) => "CONST0",
            GateOp::Const(true) => "CONST1",
            GateOp::Iden => "IDEN",
            GateOp::Not => "NOT",
            GateOp::Binary(op) => op.name(),
        }
    }

    pub fn eval(self, operands: &[bool]) -> bool {
        match self {
            GateOp::Const(v) => v,
            GateOp::Iden => operands[0],
            GateOp::Not => !operands[0],
            GateOp::Binary(op) => op.eval(operands[0], operands[1]),
        }
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        let op = match upper.as_str() {
            "CONST0" | "ZERO0" | "GND" => GateOp::Const(false),
            "CONST1" | "VDD" => GateOp::Const(true),
            "IDEN" | "BUFF" | "BUF" => GateOp::Iden,
            "NOT" | "INV" => GateOp::Not,
            other => match NAMES.iter().position(|&n| n == other) {
                Some(i) => GateOp::Binary(BinOp::from_table(i as u8)),
                None => return Err(Error::InvalidArgument(format!("unknown operation `{s}`"))),
            },
        };
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_bijection() {
        for (i, op) in BinOp::ALL.iter().enumerate() {
            assert_eq!(op.table() as usize, i);
            assert_eq!(BinOp::from_table(op.table()), *op);
            assert_eq!(op.name().parse::<GateOp>().unwrap(), GateOp::Binary(*op));
        }
    }

    #[test]
    fn named_semantics() {
        let cases: [(BinOp, fn(bool, bool) -> bool); 10] = [
            (BinOp::And, |a, b| a & b),
            (BinOp::Or, |a, b| a | b),
            (BinOp::Xor, |a, b| a ^ b),
            (BinOp::Xnor, |a, b| a == b),
            (BinOp::Nand, |a, b| !(a & b)),
            (BinOp::Nor, |a, b| !(a | b)),
            (BinOp::Gt, |a, b| a & !b),
            (BinOp::Lt, |a, b| !a & b),
            (BinOp::Geq, |a, b| a | !b),
            (BinOp::Leq, |a, b| !a | b),
        ];
        for (op, f) in cases {
            for a in [false, true] {
                for b in [false, true] {
                    assert_eq!(op.eval(a, b), f(a, b), "{op}");
                    let w = op.eval_word(if a { !0 } else { 0 }, if b { !0 } else { 0 });
                    assert_eq!(w == !0, f(a, b));
                }
            }
        }
    }

    #[test]
    fn transforms() {
        for op in BinOp::ALL {
            for a in [false, true] {
                for b in [false, true] {
                    assert_eq!(op.swapped().eval(b, a), op.eval(a, b));
                    assert_eq!(op.with_negated_inputs(true, false).eval(a, b), op.eval(!a, b));
                    assert_eq!(op.negated().eval(a, b), !op.eval(a, b));
                }
            }
        }
    }

    #[test]
    fn and_type_class() {
        let and_type: Vec<_> = BinOp::ALL.into_iter().filter(|o| o.is_and_type()).collect();
        assert_eq!(
            and_type,
            vec![
                BinOp::Nor,
                BinOp::Lt,
                BinOp::Gt,
                BinOp::Nand,
                BinOp::And,
                BinOp::Leq,
                BinOp::Geq,
                BinOp::Or
            ]
        );
        for op in and_type {
            assert!(op.and_decomposition().is_some());
        }
        assert!(BinOp::Xor.and_decomposition().is_none());
        assert!(!BinOp::Left.depends_on_second());
        assert!(BinOp::Left.depends_on_first());
        assert!(BinOp::Xor.depends_on_first() && BinOp::Xor.depends_on_second());
    }
}
