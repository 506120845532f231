//! Reference tables for the standard function families.
//!
//! Two-operand families (`MULT`, `DIV`, `MOD`) take `x` on inputs `0..n` and
//! `y` on inputs `n..2n`, both least significant bit first.

use std::fmt;
use std::str::FromStr;

use super::codec::{bin, bit_length, int, sum};
use super::table::{check_cap, PartialTruthTable, DEFAULT_INPUT_CAP};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedFunction {
    Maj,
    Sum,
    Sort,
    Mult,
    Sqr,
    Sqrt,
    Div,
    Mod,
}

impl NamedFunction {
    pub const ALL: [NamedFunction; 8] = [
        NamedFunction::Maj,
        NamedFunction::Sum,
        NamedFunction::Sort,
        NamedFunction::Mult,
        NamedFunction::Sqr,
        NamedFunction::Sqrt,
        NamedFunction::Div,
        NamedFunction::Mod,
    ];

    /// `(inputs, outputs)` of the family member with width `n`.
    pub fn shape(self, n: usize) -> (usize, usize) {
        match self {
            NamedFunction::Maj => (n, 1),
            NamedFunction::Sum => (n, bit_length(n as u64)),
            NamedFunction::Sort => (n, n),
            NamedFunction::Mult => (2 * n, 2 * n),
            NamedFunction::Sqr => (n, 2 * n),
            NamedFunction::Sqrt => (n, n / 2),
            NamedFunction::Div | NamedFunction::Mod => (2 * n, n),
        }
    }

    /// Value on one assignment; `None` where the function is undefined (division by zero).
    pub fn eval(self, n: usize, x: &[bool]) -> Option<Vec<bool>> {
        let (_, m) = self.shape(n);
        let out = match self {
            NamedFunction::Maj => vec![2 * sum(x) > n],
            NamedFunction::Sum => bin(sum(x) as u64, m),
            NamedFunction::Sort => {
                let ones = sum(x);
                (0..n).map(|i| i >= n - ones).collect()
            }
            NamedFunction::Mult => {
                let (a, b) = x.split_at(n);
                bin(int(a) * int(b), m)
            }
            NamedFunction::Sqr => {
                let a = int(x);
                bin(a * a, m)
            }
            NamedFunction::Sqrt => bin(isqrt(int(x)), m),
            NamedFunction::Div | NamedFunction::Mod => {
                let (a, b) = x.split_at(n);
                let (a, b) = (int(a), int(b));
                if b == 0 {
                    return None;
                }
                let q = if self == NamedFunction::Div { a / b } else { a % b };
                bin(q, m)
            }
        };
        Some(out)
    }
}

fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

impl fmt::Display for NamedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NamedFunction::Maj => "MAJ",
            NamedFunction::Sum => "SUM",
            NamedFunction::Sort => "SORT",
            NamedFunction::Mult => "MULT",
            NamedFunction::Sqr => "SQR",
            NamedFunction::Sqrt => "SQRT",
            NamedFunction::Div => "DIV",
            NamedFunction::Mod => "MOD",
        };
        f.write_str(s)
    }
}

impl FromStr for NamedFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedFunction::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown function `{s}`")))
    }
}

/// Table of a family member. `DIV`/`MOD` rows with `y = 0` are don't-cares;
/// every other table is total.
pub fn named_function(name: NamedFunction, n: usize) -> Result<PartialTruthTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("width must be positive".into()));
    }
    if name == NamedFunction::Sqrt && n % 2 == 1 {
        return Err(Error::InvalidArgument("SQRT is defined for even widths only".into()));
    }
    let (inputs, outputs) = name.shape(n);
    check_cap(inputs, DEFAULT_INPUT_CAP)?;
    PartialTruthTable::from_fn(inputs, outputs, |x| match name.eval(n, x) {
        Some(v) => v.into_iter().map(Some).collect(),
        None => vec![None; outputs],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::codec::int;

    #[test]
    fn majority_is_strict_half() {
        let t = named_function(NamedFunction::Maj, 3).unwrap();
        assert_eq!(t.to_binary_columns(), vec!["00010111"]);
        let t4 = named_function(NamedFunction::Maj, 4).unwrap();
        // two of four is not a majority
        assert_eq!(t4.get(0b0011, 0), crate::function::Ternary::Zero);
    }

    #[test]
    fn sort_is_ascending() {
        let out = NamedFunction::Sort.eval(3, &[false, true, false]).unwrap();
        assert_eq!(out, vec![false, false, true]);
    }

    #[test]
    fn mult_three_by_three() {
        let x = [bin(3, 2), bin(3, 2)].concat();
        assert_eq!(int(&NamedFunction::Mult.eval(2, &x).unwrap()), 9);
        assert_eq!(NamedFunction::Mult.shape(2), (4, 4));
    }

    #[test]
    fn square_is_mult_diagonal() {
        for n in 1..=5 {
            let sqr = named_function(NamedFunction::Sqr, n).unwrap();
            let mult = named_function(NamedFunction::Mult, n).unwrap();
            for x in 0..(1usize << n) {
                let diag = x | (x << n);
                for j in 0..2 * n {
                    assert_eq!(sqr.get(x, j), mult.get(diag, j));
                }
            }
        }
    }

    #[test]
    fn division_by_zero_is_dont_care() {
        let t = named_function(NamedFunction::Div, 2).unwrap();
        assert_eq!(t.dont_care_count(), 4 * 2);
        let x = [bin(3, 2), bin(2, 2)].concat();
        assert_eq!(NamedFunction::Div.eval(2, &x), Some(bin(1, 2)));
        assert_eq!(NamedFunction::Mod.eval(2, &x), Some(bin(1, 2)));
    }

    #[test]
    fn sqrt_rejects_odd_width() {
        assert!(named_function(NamedFunction::Sqrt, 3).is_err());
        let t = named_function(NamedFunction::Sqrt, 4).unwrap();
        assert_eq!(t.outputs(), 2);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
    }

    #[test]
    fn sum_width() {
        assert_eq!(NamedFunction::Sum.shape(7), (7, 3));
        assert_eq!(NamedFunction::Sum.shape(8), (8, 4));
        assert_eq!("sort".parse::<NamedFunction>().unwrap(), NamedFunction::Sort);
        assert!("nope".parse::<NamedFunction>().is_err());
    }
}
