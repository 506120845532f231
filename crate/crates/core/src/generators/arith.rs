use std::collections::VecDeque;

use super::blocks::{check_range, operand_names, Builder};
use crate::circuit::{Basis, BinOp, Circuit, NodeId};
use crate::error::{Error, Result};
use crate::function::codec::bit_length;
use crate::minimize::cleanup;

/// Reduces weighted bit columns to one bit per weight with full and half adders.
///
/// Column `w` holds bits of weight `2^w`. Each column is drained first in
/// first-out order: three bits go into a full adder whose sum rejoins the
/// column and whose carry moves to column `w + 1`; two remaining bits go into a
/// half adder. The returned vector has one entry per weight, `None` for an
/// empty column.
pub fn compress_weighted(
    circuit: &mut Circuit,
    basis: Basis,
    columns: Vec<Vec<NodeId>>,
) -> Result<Vec<Option<NodeId>>> {
    let mut b = Builder::new(std::mem::take(circuit), basis);
    let r = compress(&mut b, columns);
    *circuit = b.c;
    r
}

pub(crate) fn compress(b: &mut Builder, mut columns: Vec<Vec<NodeId>>) -> Result<Vec<Option<NodeId>>> {
    let mut out = Vec::new();
    let mut w = 0;
    while w < columns.len() {
        let mut q: VecDeque<NodeId> = std::mem::take(&mut columns[w]).into();
        let mut carries = Vec::new();
        while q.len() >= 3 {
            let (x, y, z) = (q.pop_front().unwrap(), q.pop_front().unwrap(), q.pop_front().unwrap());
            let (s, c) = if q.is_empty() {
                b.fa_carry_first(x, y, z)?
            } else {
                b.fa(x, y, z)?
            };
            q.push_back(s);
            carries.push(c);
        }
        if q.len() == 2 {
            let (s, c) = b.ha(q[0], q[1])?;
            q.clear();
            q.push_back(s);
            carries.push(c);
        }
        if !carries.is_empty() {
            if columns.len() == w + 1 {
                columns.push(Vec::new());
            }
            columns[w + 1].extend(carries);
        }
        out.push(q.pop_front());
        w += 1;
    }
    Ok(out)
}

fn bits_or_zero(b: &mut Builder, bits: Vec<Option<NodeId>>, width: usize) -> Vec<NodeId> {
    let mut zero = None;
    (0..width)
        .map(|i| match bits.get(i).copied().flatten() {
            Some(n) => n,
            None => *zero.get_or_insert_with(|| b.c.add_const(false)),
        })
        .collect()
}

/// Binary representation of the number of ones among `n` inputs, least
/// significant bit first.
pub fn gen_sum(n: usize, basis: Basis) -> Result<Circuit> {
    check_range("SUM", n, 1, 64)?;
    let mut b = Builder::new(Circuit::with_inputs(n), basis);
    let inputs = b.c.inputs().to_vec();
    let bits = compress(&mut b, vec![inputs])?;
    let out = bits_or_zero(&mut b, bits, bit_length(n as u64));
    b.finish(out)
}

/// Product of two `n`-bit numbers (inputs `x1..xn, y1..yn`), `2n` output bits.
pub fn gen_mult(n: usize, basis: Basis) -> Result<Circuit> {
    check_range("MULT", n, 1, 32)?;
    let mut b = Builder::with_named_inputs(&operand_names(n), basis)?;
    let mut columns = vec![Vec::new(); 2 * n - 1];
    for i in 0..n {
        for j in 0..n {
            let p = b.bin(BinOp::And, b.input(i), b.input(n + j))?;
            columns[i + j].push(p);
        }
    }
    let bits = compress(&mut b, columns)?;
    let out = bits_or_zero(&mut b, bits, 2 * n);
    Ok(cleanup(&b.finish(out)?))
}

/// Square of an `n`-bit number, `2n` output bits.
///
/// Uses `x_i x_j + x_j x_i = 2 x_i x_j` and `x_i x_i = x_i`, so only the pairs
/// `i < j` need a gate.
pub fn gen_square(n: usize, basis: Basis) -> Result<Circuit> {
    check_range("SQR", n, 1, 32)?;
    let mut b = Builder::new(Circuit::with_inputs(n), basis);
    let mut columns = vec![Vec::new(); 2 * n];
    for i in 0..n {
        columns[2 * i].push(b.input(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            let p = b.bin(BinOp::And, b.input(i), b.input(j))?;
            columns[i + j + 1].push(p);
        }
    }
    let bits = compress(&mut b, columns)?;
    let out = bits_or_zero(&mut b, bits, 2 * n);
    Ok(cleanup(&b.finish(out)?))
}

/// Restoring division: `floor(x / y)` for `n`-bit `x` and `y` (inputs
/// `x1..xn, y1..yn`), `n` output bits. Outputs for `y = 0` are unspecified.
pub fn gen_div(n: usize, basis: Basis) -> Result<Circuit> {
    check_range("DIV", n, 2, 12)?;
    let mut b = Builder::with_named_inputs(&operand_names(n), basis)?;
    let x: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    let y: Vec<NodeId> = (0..n).map(|i| b.input(n + i)).collect();
    let mut not_y = Vec::with_capacity(n);
    for &yi in &y {
        not_y.push(b.not(yi)?);
    }
    // high[j] = y_j | ... | y_{n-1}
    let mut high = vec![None; n + 1];
    for j in (1..n).rev() {
        high[j] = Some(match high[j + 1] {
            None => y[j],
            Some(h) => b.bin(BinOp::Or, y[j], h)?,
        });
    }
    let mut rem = x;
    let mut quotient = vec![NodeId::new(0); n];
    for i in (0..n).rev() {
        let width = n - i;
        // rem[i..] - y[..width]; the final carry means no borrow
        let mut diff = Vec::with_capacity(width);
        diff.push(b.xor(rem[i], y[0])?);
        let mut carry = b.bin(BinOp::Geq, rem[i], y[0])?;
        for k in 1..width {
            let (s, c) = b.fa_carry_first(rem[i + k], not_y[k], carry)?;
            diff.push(s);
            carry = c;
        }
        let z = match high[width] {
            Some(h) if i > 0 => b.bin(BinOp::Gt, carry, h)?,
            _ => carry,
        };
        quotient[i] = z;
        if i > 0 {
            for k in 0..width {
                rem[i + k] = b.ite(z, diff[k], rem[i + k])?;
            }
        }
    }
    Ok(cleanup(&b.finish(quotient)?))
}

/// Satisfiable iff `k` has a factorization `p * q` with `p, q > 1`.
///
/// Inputs are `p1..pm, q1..qm` with `m = bitlen(k) - 1`, least significant bit
/// first; the single output asserts that the `2m`-bit product equals `k`.
/// Neither factor can be one since an `m`-bit number is below `k`. Built in XAIG.
pub fn reduce_factoring(k: u64) -> Result<Circuit> {
    if k < 2 || k >= 1 << 32 {
        return Err(Error::InvalidArgument(format!(
            "factoring needs 2 <= k < 2^32, got {k}"
        )));
    }
    let m = (bit_length(k) - 1).max(1);
    let mult = gen_mult(m, Basis::Xaig)?;
    let mut names: Vec<String> = (1..=m).map(|i| format!("p{i}")).collect();
    names.extend((1..=m).map(|i| format!("q{i}")));
    let mut b = Builder::with_named_inputs(&names, Basis::Xaig)?;
    let ins = b.c.inputs().to_vec();
    let prod = b.c.connect_block(&mult, &ins, "MULT")?;
    let mut lits = Vec::with_capacity(prod.len());
    for (j, &p) in prod.iter().enumerate() {
        lits.push(if j < 64 && k >> j & 1 == 1 { p } else { b.not(p)? });
    }
    let all = b.and_tree(&lits)?;
    let o = b.lit(all);
    Ok(cleanup(&b.finish(vec![o])?))
}

/// Reads `(p, q)` off a satisfying assignment of [`reduce_factoring`].
pub fn decode_factors(k: u64, assignment: &[bool]) -> Result<(u64, u64)> {
    let m = (bit_length(k) - 1).max(1);
    if assignment.len() != 2 * m {
        return Err(Error::AssignmentLength {
            expected: 2 * m,
            got: assignment.len(),
        });
    }
    let int = |bits: &[bool]| bits.iter().rev().fold(0u64, |acc, &v| acc << 1 | v as u64);
    Ok((int(&assignment[..m]), int(&assignment[m..])))
}
