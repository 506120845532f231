use std::fmt;
use std::str::FromStr;

use super::op::{BinOp, GateOp};
use crate::error::{Error, Result};

/// The set of binary operations a circuit may use. Unary gates and constants
/// are admitted by every basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Every binary operation.
    Xaig,
    /// Operations realisable as one AND with negated inputs/output.
    Aig,
}

impl Basis {
    pub fn allows(self, op: GateOp) -> bool {
        match op {
            GateOp::Binary(b) => self.allows_binary(b),
            _ => true,
        }
    }

    pub fn allows_binary(self, op: BinOp) -> bool {
        match self {
            Basis::Xaig => true,
            Basis::Aig => op.is_and_type(),
        }
    }

    pub fn binary_ops(self) -> Vec<BinOp> {
        BinOp::ALL
            .into_iter()
            .filter(|&op| self.allows_binary(op))
            .collect()
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Xaig => "xaig",
            Basis::Aig => "aig",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xaig" => Ok(Basis::Xaig),
            "aig" => Ok(Basis::Aig),
            _ => Err(Error::InvalidArgument(format!("unknown basis `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aig_excludes_only_xor_type_among_nondegenerate() {
        assert_eq!(Basis::Xaig.binary_ops().len(), 16);
        let aig = Basis::Aig.binary_ops();
        assert_eq!(aig.len(), 8);
        assert!(!aig.contains(&BinOp::Xor));
        assert!(!aig.contains(&BinOp::Xnor));
        assert!(Basis::Aig.allows(GateOp::Not));
    }
}
