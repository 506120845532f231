use std::time::Duration;

use super::arith::compress;
use super::blocks::{check_range, Builder, Lit};
use crate::circuit::{Basis, Circuit, NodeId};
use crate::error::Result;
use crate::function::codec::{bit_length, int};
use crate::function::PartialTruthTable;
use crate::minimize::{cleanup, minimize_subcircuits};
use crate::synth::{synthesize_min, SynthesisOptions, SynthesisStatus};

/// Widest function for which a synthesized tail is attempted.
pub const HYBRID_MAX_INPUTS: usize = 16;
const TAIL_GROUP: usize = 3;

/// Budgets of the hybrid recipe: synthesized tails, then minimization of the whole.
#[derive(Clone, Debug)]
pub struct HybridOptions {
    /// Per solver call while synthesizing a tail.
    pub tail_timeout: Duration,
    /// Passed to [`minimize_subcircuits`] for the composed circuit; zero skips it.
    pub minimize_budget: Duration,
}

impl Default for HybridOptions {
    fn default() -> Self {
        HybridOptions {
            tail_timeout: Duration::from_secs(20),
            minimize_budget: Duration::from_secs(300),
        }
    }
}

fn ge(b: &mut Builder, bits: &[NodeId], t: u64) -> Result<Lit> {
    if t == 0 {
        return Ok(Lit::Const(true));
    }
    let k = bits.len();
    if k < 64 && t >= 1u64 << k {
        return Ok(Lit::Const(false));
    }
    let top = Lit::Node(bits[k - 1]);
    let half = 1u64 << (k - 1);
    if t >= half {
        let rest = ge(b, &bits[..k - 1], t - half)?;
        b.and_lit(top, rest)
    } else {
        let rest = ge(b, &bits[..k - 1], t)?;
        b.or_lit(top, rest)
    }
}

/// Appends a comparator `[int(bits) >= t]` to `circuit`, `bits` least
/// significant first. Returns the node carrying the comparison.
pub fn threshold_tail(circuit: &mut Circuit, basis: Basis, bits: &[NodeId], t: u64) -> Result<NodeId> {
    let mut b = Builder::new(std::mem::take(circuit), basis);
    let r = ge(&mut b, bits, t).map(|l| b.lit(l));
    *circuit = b.c;
    r
}

/// Comparators against each of `thresholds` over `k` sum bits.
fn manual_tail(k: usize, basis: Basis, thresholds: &[u64]) -> Result<Circuit> {
    let mut b = Builder::new(Circuit::with_inputs(k), basis);
    let bits = b.c.inputs().to_vec();
    let mut outs = Vec::with_capacity(thresholds.len());
    for &t in thresholds {
        let l = ge(&mut b, &bits, t)?;
        outs.push(b.lit(l));
    }
    Ok(cleanup(&b.finish(outs)?))
}

/// Smallest tail found within the time budget, given that the sum never exceeds `n`.
fn synthesized_tail(n: usize, k: usize, basis: Basis, thresholds: &[u64], timeout: Duration) -> Result<Circuit> {
    let manual = manual_tail(k, basis, thresholds)?;
    let target = PartialTruthTable::from_fn(k, thresholds.len(), |s| {
        let s = int(s);
        thresholds
            .iter()
            .map(|&t| (s <= n as u64).then_some(s >= t))
            .collect()
    })?;
    let opts = SynthesisOptions {
        symmetry_breaking: true,
        timeout: Some(timeout),
    };
    let found = match synthesize_min(&target, basis, manual.size(), &opts)?.status {
        SynthesisStatus::Found(c) | SynthesisStatus::Unknown(Some(c)) => c,
        _ => return Ok(manual),
    };
    Ok(if found.size() < manual.size() { found } else { manual })
}

/// Counts the inputs with a compressor and compares the count against each threshold.
fn counting_circuit(n: usize, basis: Basis, thresholds: &[u64], hybrid: Option<&HybridOptions>) -> Result<Circuit> {
    let k = bit_length(n as u64);
    let mut b = Builder::new(Circuit::with_inputs(n), basis);
    let inputs = b.c.inputs().to_vec();
    let bits = compress(&mut b, vec![inputs])?;
    let mut zero = None;
    let bits: Vec<NodeId> = (0..k)
        .map(|i| match bits.get(i).copied().flatten() {
            Some(x) => x,
            None => *zero.get_or_insert_with(|| b.c.add_const(false)),
        })
        .collect();
    let counter = b.c;
    let compose = |tails: &[Circuit]| -> Result<Circuit> {
        let mut c = counter.clone();
        let mut outs = Vec::with_capacity(thresholds.len());
        for (g, tail) in tails.iter().enumerate() {
            outs.extend(c.connect_block(tail, &bits, &format!("TAIL{}", g + 1))?);
        }
        c.set_outputs(outs)?;
        Ok(cleanup(&c))
    };
    let manual: Vec<Circuit> = thresholds
        .chunks(TAIL_GROUP)
        .map(|g| manual_tail(k, basis, g))
        .collect::<Result<_>>()?;
    let mut best = compose(&manual)?;
    let Some(opts) = hybrid else {
        return Ok(best);
    };
    let synthesized: Vec<Circuit> = thresholds
        .chunks(TAIL_GROUP)
        .map(|g| synthesized_tail(n, k, basis, g, opts.tail_timeout))
        .collect::<Result<_>>()?;
    let candidate = compose(&synthesized)?;
    if candidate.size() < best.size() {
        best = candidate;
    }
    if !opts.minimize_budget.is_zero() {
        best = minimize_subcircuits(&best, basis, opts.minimize_budget)?;
    }
    Ok(best)
}

/// `[more than n/2 of the n inputs are one]`.
///
/// With `hybrid` the comparator after the counter is replaced by a circuit
/// synthesized for the count range `0..=n` and the composition is minimized,
/// using the default [`HybridOptions`].
pub fn gen_maj(n: usize, basis: Basis, hybrid: bool) -> Result<Circuit> {
    if hybrid {
        return gen_maj_hybrid(n, basis, &HybridOptions::default());
    }
    check_range("MAJ", n, 1, 64)?;
    counting_circuit(n, basis, &[n as u64 / 2 + 1], None)
}

pub fn gen_maj_hybrid(n: usize, basis: Basis, opts: &HybridOptions) -> Result<Circuit> {
    check_range("MAJ", n, 1, HYBRID_MAX_INPUTS)?;
    counting_circuit(n, basis, &[n as u64 / 2 + 1], Some(opts))
}

/// Sorts the inputs ascending: output `i` (from 1) is `[count >= n - i + 1]`.
pub fn gen_sort(n: usize, basis: Basis, hybrid: bool) -> Result<Circuit> {
    if hybrid {
        return gen_sort_hybrid(n, basis, &HybridOptions::default());
    }
    check_range("SORT", n, 1, 64)?;
    counting_circuit(n, basis, &sort_thresholds(n), None)
}

pub fn gen_sort_hybrid(n: usize, basis: Basis, opts: &HybridOptions) -> Result<Circuit> {
    check_range("SORT", n, 1, HYBRID_MAX_INPUTS)?;
    counting_circuit(n, basis, &sort_thresholds(n), Some(opts))
}

fn sort_thresholds(n: usize) -> Vec<u64> {
    (1..=n as u64).map(|i| n as u64 - i + 1).collect()
}
