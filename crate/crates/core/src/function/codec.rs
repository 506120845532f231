//! Conversions between integers and bit strings.
//!
//! Bit strings are least significant bit first: `int(b) = sum 2^i * b_i`.

/// `k`-bit binary representation of `q`, least significant bit first.
///
/// Bits of `q` above position `k` are dropped.
pub fn bin(q: u64, k: usize) -> Vec<bool> {
    (0..k).map(|i| i < 64 && (q >> i) & 1 == 1).collect()
}

/// Integer value of a bit string, least significant bit first.
pub fn int(bits: &[bool]) -> u64 {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

/// Number of ones.
pub fn sum(bits: &[bool]) -> usize {
    bits.iter().filter(|&&b| b).count()
}

/// Iverson bracket.
pub fn iverson(p: bool) -> u64 {
    p as u64
}

/// Number of bits needed to write `n` in binary, i.e. `ceil(log2(n + 1))`.
pub fn bit_length(n: u64) -> usize {
    (64 - n.leading_zeros()) as usize
}
