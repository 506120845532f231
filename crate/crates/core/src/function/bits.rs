//! Packed bit vectors used for truth-table columns and bit-parallel simulation.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

const PROJECTION_WORDS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// A fixed-length vector of bits, 64 per word, least significant bit first.
///
/// Bits beyond `len` in the last word are kept at zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits {
            words: vec![!0; len.div_ceil(64)],
            len,
        };
        b.trim();
        b
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut b = Bits::zeros(len);
        for i in 0..len {
            if f(i) {
                b.set(i, true);
            }
        }
        b
    }

    /// Column of variable `var` over all `2^n` assignments, row `t` holding bit `var` of `t`.
    pub fn projection(n: usize, var: usize) -> Self {
        assert!(var < n);
        let len = 1usize << n;
        let mut b = Bits::zeros(len);
        if var < 6 {
            for w in b.words.iter_mut() {
                *w = PROJECTION_WORDS[var];
            }
        } else {
            let period = 1usize << (var - 6);
            for (i, w) in b.words.iter_mut().enumerate() {
                if (i / period) & 1 == 1 {
                    *w = !0;
                }
            }
        }
        b.trim();
        b
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        assert_eq!(words.len(), len.div_ceil(64));
        let mut b = Bits { words, len };
        b.trim();
        b
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// `true` where `self` and `other` agree on every position selected by `mask`.
    pub fn agrees_on(&self, other: &Bits, mask: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .zip(&mask.words)
            .all(|((a, b), m)| (a ^ b) & m == 0)
    }

    /// Bits as a string of `0`/`1`, row 0 first.
    pub fn to_binary_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Hex digits, most significant first, so that row 0 is the lowest bit of the last digit.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        (0..digits)
            .rev()
            .map(|d| {
                let mut v = 0u32;
                for k in 0..4 {
                    let i = d * 4 + k;
                    if i < self.len && self.get(i) {
                        v |= 1 << k;
                    }
                }
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    /// Inverse of [`Bits::to_hex`]; digits beyond `len` must be zero.
    pub fn from_hex(s: &str, len: usize) -> Option<Self> {
        let s = s.trim().trim_start_matches("0x");
        let mut b = Bits::zeros(len);
        for (d, c) in s.chars().rev().enumerate() {
            let v = c.to_digit(16)?;
            for k in 0..4 {
                if (v >> k) & 1 == 1 {
                    let i = d * 4 + k;
                    if i >= len {
                        return None;
                    }
                    b.set(i, true);
                }
            }
        }
        Some(b)
    }

    /// Small columns (up to 64 rows) as an integer, row 0 in bit 0.
    pub fn as_u64(&self) -> u64 {
        assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_u64(v: u64, len: usize) -> Self {
        assert!(len <= 64);
        Bits::from_words(vec![v; len.div_ceil(64)], len)
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({})", self.to_binary_string())
    }
}

macro_rules! bitop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Bits> for &Bits {
            type Output = Bits;
            fn $m(self, rhs: &Bits) -> Bits {
                assert_eq!(self.len, rhs.len);
                Bits {
                    words: self.words.iter().zip(&rhs.words).map(|(a, b)| a $op b).collect(),
                    len: self.len,
                }
            }
        }
    };
}

bitop!(BitAnd, bitand, &);
bitop!(BitOr, bitor, |);
bitop!(BitXor, bitxor, ^);

impl Not for &Bits {
    type Output = Bits;
    fn not(self) -> Bits {
        let mut b = Bits {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        b.trim();
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_matches_row_bits() {
        for n in 0..9 {
            for var in 0..n {
                let p = Bits::projection(n, var);
                for t in 0..(1 << n) {
                    assert_eq!(p.get(t), (t >> var) & 1 == 1, "n={n} var={var} t={t}");
                }
            }
        }
    }

    #[test]
    fn hex_round_trip() {
        let b = Bits::from_fn(8, |i| [3, 5, 6, 7].contains(&i));
        assert_eq!(b.to_hex(), "e8");
        assert_eq!(Bits::from_hex("e8", 8), Some(b));
        assert_eq!(Bits::from_hex("1", 1).unwrap().to_binary_string(), "1");
        assert!(Bits::from_hex("3", 1).is_none());
    }

    #[test]
    fn not_keeps_padding_clear() {
        let b = Bits::zeros(5);
        let n = !&b;
        assert_eq!(n.count_ones(), 5);
        assert_eq!(n.words()[0], 0b11111);
    }

    #[test]
    fn iter_ones_lists_set_positions() {
        let b = Bits::from_fn(130, |i| i % 61 == 0);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 61, 122]);
    }
}
