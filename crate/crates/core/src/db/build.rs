use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::key::{canonical_columns, check_dims, CanonicalKey};
use crate::circuit::{Basis, BinOp, Circuit, NodeId};
use crate::error::{Error, Result};
use crate::minimize::cleanup;
use crate::synth::{synthesize_min, SynthesisOptions, SynthesisStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Optimality {
    /// No smaller circuit exists.
    Proven,
    BestKnown,
}

/// An equivalence class with the number of functions it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub key: CanonicalKey,
    /// Functions counted as ordered output tuples.
    pub ordered: u64,
    /// Functions whose outputs are pairwise distinct, counted as output sets.
    pub distinct: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbEntry {
    pub key: CanonicalKey,
    pub circuit: Circuit,
    pub size: usize,
    pub optimality: Optimality,
    pub ordered: u64,
    pub distinct: u64,
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of sets of `m` distinct functions of `n` inputs, `C(2^(2^n), m)`.
pub fn function_count(n: usize, m: usize) -> u128 {
    binomial(1u128 << (1u32 << n), m as u128)
}

pub fn total_function_count(inputs: RangeInclusive<usize>, outputs: RangeInclusive<usize>) -> u128 {
    inputs
        .flat_map(|n| outputs.clone().map(move |m| function_count(n, m)))
        .sum()
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Every class of functions with `n` inputs and `m` outputs, sorted by key.
pub fn enumerate_classes(n: usize, m: usize) -> Result<Vec<ClassInfo>> {
    check_dims(n, m)?;
    let cols = 1usize << (1 << n);
    let merged = (0..cols)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Vec<u8>, (u64, u64)>, first| {
            let mut tuple = vec![first as u8];
            visit(n, m, cols, &mut tuple, &mut acc);
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, (o, d)) in b {
                let e = a.entry(k).or_insert((0, 0));
                e.0 += o;
                e.1 += d;
            }
            a
        });
    let mut out: Vec<ClassInfo> = merged
        .into_iter()
        .map(|(columns, (ordered, distinct))| ClassInfo {
            key: CanonicalKey { n, columns },
            ordered,
            distinct,
        })
        .collect();
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

/// Extends a non-decreasing column tuple to length `m` and records each multiset.
fn visit(n: usize, m: usize, cols: usize, tuple: &mut Vec<u8>, acc: &mut HashMap<Vec<u8>, (u64, u64)>) {
    if tuple.len() == m {
        let (key, _) = canonical_columns(n, tuple);
        let mut run = 1;
        let mut denom = 1;
        for i in 1..m {
            if tuple[i] == tuple[i - 1] {
                run += 1;
            } else {
                denom *= factorial(run);
                run = 1;
            }
        }
        denom *= factorial(run);
        let e = acc.entry(key.columns).or_insert((0, 0));
        e.0 += factorial(m) / denom;
        e.1 += (denom == 1) as u64;
        return;
    }
    let last = *tuple.last().unwrap() as usize;
    for c in last..cols {
        tuple.push(c as u8);
        visit(n, m, cols, tuple, acc);
        tuple.pop();
    }
}

/// Shannon expansion with shared cofactors; an upper bound for synthesis.
pub(crate) fn shannon_circuit(n: usize, columns: &[u8]) -> Circuit {
    fn rec(c: &mut Circuit, memo: &mut HashMap<(usize, u8), NodeId>, k: usize, f: u8) -> NodeId {
        let full = ((1u16 << (1 << k)) - 1) as u8;
        if let Some(&id) = memo.get(&(k, f)) {
            return id;
        }
        let id = if f == 0 || f == full {
            c.add_const(f != 0)
        } else {
            let half = 1 << (k - 1);
            let lo_mask = ((1u16 << half) - 1) as u8;
            let (lo, hi) = (f & lo_mask, f >> half);
            if lo == hi {
                rec(c, memo, k - 1, lo)
            } else {
                let s = c.inputs()[k - 1];
                let l = rec(c, memo, k - 1, lo);
                let h = rec(c, memo, k - 1, hi);
                let t = c.add_binary(BinOp::And, s, h).unwrap();
                let e = c.add_binary(BinOp::Lt, s, l).unwrap();
                c.add_binary(BinOp::Or, t, e).unwrap()
            }
        };
        memo.insert((k, f), id);
        id
    }
    let mut c = Circuit::with_inputs(n);
    let mut memo = HashMap::new();
    let outs = columns.iter().map(|&f| rec(&mut c, &mut memo, n, f)).collect();
    c.set_outputs(outs).unwrap();
    cleanup(&c)
}

/// Slices and budgets for [`build_database_with`].
#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub basis: Basis,
    /// `(inputs, outputs)` pairs to cover.
    pub slices: Vec<(usize, usize)>,
    pub budget: Duration,
    pub query_timeout: Duration,
}

impl BuildOptions {
    /// Every function with up to three inputs and one output, and every
    /// two-output function with up to three inputs.
    pub fn desk(basis: Basis, budget: Duration) -> Self {
        BuildOptions {
            basis,
            slices: vec![(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)],
            budget,
            query_timeout: Duration::from_secs(30),
        }
    }
}

/// Per-slice coverage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub n: usize,
    pub m: usize,
    pub classes: usize,
}

/// Optimal or best known circuits for class representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Database {
    pub basis: Basis,
    pub slices: Vec<Slice>,
    pub entries: BTreeMap<CanonicalKey, DbEntry>,
}

pub fn build_database(basis: Basis, n_max: usize, m_max: usize, budget: Duration) -> Result<Database> {
    let slices = (1..=m_max).flat_map(|m| (1..=n_max).map(move |n| (n, m))).collect();
    build_database_with(&BuildOptions {
        basis,
        slices,
        budget,
        query_timeout: Duration::from_secs(30),
    })
}

/// Synthesizes a circuit for every class in the requested slices, in parallel.
///
/// Classes not reached before the budget runs out are left out and the
/// database reports itself incomplete.
pub fn build_database_with(opts: &BuildOptions) -> Result<Database> {
    let deadline = Instant::now() + opts.budget;
    let mut db = Database {
        basis: opts.basis,
        slices: Vec::new(),
        entries: BTreeMap::new(),
    };
    for &(n, m) in &opts.slices {
        let classes = enumerate_classes(n, m)?;
        db.slices.push(Slice {
            n,
            m,
            classes: classes.len(),
        });
        let built: Vec<Option<DbEntry>> = classes
            .into_par_iter()
            .map(|class| build_entry(class, opts, deadline))
            .collect::<Result<_>>()?;
        for e in built.into_iter().flatten() {
            db.entries.insert(e.key.clone(), e);
        }
    }
    Ok(db)
}

fn build_entry(class: ClassInfo, opts: &BuildOptions, deadline: Instant) -> Result<Option<DbEntry>> {
    let now = Instant::now();
    if now >= deadline {
        return Ok(None);
    }
    let table = class.key.to_table();
    let naive = shannon_circuit(class.key.n, &class.key.columns);
    let sopts = SynthesisOptions {
        symmetry_breaking: true,
        timeout: Some(opts.query_timeout.min(deadline - now)),
    };
    let (circuit, optimality) = match synthesize_min(&table.to_partial(), opts.basis, naive.size(), &sopts)?.status {
        SynthesisStatus::Found(c) => (c, Optimality::Proven),
        SynthesisStatus::Unknown(Some(c)) => (c, Optimality::BestKnown),
        _ => (naive, Optimality::BestKnown),
    };
    if circuit.truth_table()? != table || !circuit.validate_basis(opts.basis).is_empty() {
        return Err(Error::Solver(format!("bad circuit for class {}", class.key)));
    }
    Ok(Some(DbEntry {
        size: circuit.size(),
        key: class.key,
        circuit,
        optimality,
        ordered: class.ordered,
        distinct: class.distinct,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(total_function_count(2..=3, 1..=3), 2_797_112);
        assert_eq!(enumerate_classes(2, 1).unwrap().len(), 4);
        assert_eq!(enumerate_classes(3, 1).unwrap().len(), 14);
        for (n, m) in [(1, 1), (2, 1), (3, 1), (2, 2), (1, 3)] {
            let classes = enumerate_classes(n, m).unwrap();
            let ordered: u64 = classes.iter().map(|c| c.ordered).sum();
            let distinct: u64 = classes.iter().map(|c| c.distinct).sum();
            assert_eq!(ordered as u128, 1u128 << ((1 << n) * m));
            assert_eq!(distinct as u128, function_count(n, m));
        }
    }

    #[test]
    fn shannon_is_correct() {
        for f in 0..=255u8 {
            let c = shannon_circuit(3, &[f]);
            assert_eq!(c.truth_table().unwrap().column(0).as_u64(), f as u64);
        }
    }
}
