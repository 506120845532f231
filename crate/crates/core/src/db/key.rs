use std::fmt;
use std::sync::OnceLock;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::function::{Bits, TruthTable};

/// Largest input and output counts handled by the classifier.
pub const MAX_DB_INPUTS: usize = 3;
pub const MAX_DB_OUTPUTS: usize = 3;

/// Representative of an equivalence class: its columns as bytes, row 0 in bit 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub n: usize,
    pub columns: Vec<u8>,
}

impl CanonicalKey {
    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn to_table(&self) -> TruthTable {
        let cols = self.columns.iter().map(|&c| Bits::from_u64(c as u64, 1 << self.n)).collect();
        TruthTable::new(self.n, cols).expect("key shape is valid")
    }

    pub fn to_hex(&self) -> String {
        self.columns.iter().map(|c| format!("{c:02x}")).collect()
    }

    pub fn from_hex(n: usize, s: &str) -> Option<Self> {
        if s.len() % 2 != 0 || n > MAX_DB_INPUTS || s.is_empty() {
            return None;
        }
        let columns = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        let full = full_mask(n);
        (columns.len() <= MAX_DB_OUTPUTS && columns.iter().all(|&c| c & !full == 0))
            .then_some(CanonicalKey { n, columns })
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{},{}:{}", self.n, self.m(), self.to_hex())
    }
}

/// Relabeling of inputs and outputs with negations.
///
/// Applied to `f` it yields `g` with `g_j(x) = f_{out_perm[j]}(y) ^ out_neg_j`
/// where `y_i = x_{perm[i]} ^ in_neg_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    pub perm: Vec<usize>,
    pub in_neg: u32,
    pub out_perm: Vec<usize>,
    pub out_neg: u32,
}

pub(crate) fn full_mask(n: usize) -> u8 {
    ((1u16 << (1 << n)) - 1) as u8
}

fn row_map(n: usize, perm: &[usize], in_neg: u32) -> Vec<usize> {
    (0..1usize << n)
        .map(|x| {
            (0..n).fold(0, |y, i| {
                let bit = (x >> perm[i] & 1) ^ (in_neg as usize >> i & 1);
                y | bit << i
            })
        })
        .collect()
}

fn permute_column(col: u8, rows: &[usize]) -> u8 {
    rows.iter()
        .enumerate()
        .fold(0, |acc, (x, &y)| acc | ((col >> y) & 1) << x)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub(crate) fn columns_of(f: &TruthTable) -> Result<Vec<u8>> {
    check_dims(f.inputs(), f.outputs())?;
    Ok(f.columns().iter().map(|c| c.as_u64() as u8).collect())
}

pub(crate) fn check_dims(n: usize, m: usize) -> Result<()> {
    if n > MAX_DB_INPUTS || m > MAX_DB_OUTPUTS || m == 0 {
        return Err(Error::InvalidArgument(format!(
            "classification covers up to {MAX_DB_INPUTS} inputs and 1..={MAX_DB_OUTPUTS} outputs, got {n}x{m}"
        )));
    }
    Ok(())
}

impl Transform {
    pub fn identity(n: usize, m: usize) -> Self {
        Transform {
            perm: (0..n).collect(),
            in_neg: 0,
            out_perm: (0..m).collect(),
            out_neg: 0,
        }
    }

    pub(crate) fn apply_columns(&self, n: usize, cols: &[u8]) -> Vec<u8> {
        let rows = row_map(n, &self.perm, self.in_neg);
        let full = full_mask(n);
        self.out_perm
            .iter()
            .enumerate()
            .map(|(j, &src)| {
                let c = permute_column(cols[src], &rows);
                if self.out_neg >> j & 1 == 1 { !c & full } else { c }
            })
            .collect()
    }

    pub fn apply(&self, f: &TruthTable) -> Result<TruthTable> {
        let cols = columns_of(f)?;
        if self.perm.len() != f.inputs() || self.out_perm.len() != f.outputs() {
            return Err(Error::ShapeMismatch("transform does not fit the table".into()));
        }
        let n = f.inputs();
        let out = self.apply_columns(n, &cols);
        TruthTable::new(n, out.iter().map(|&c| Bits::from_u64(c as u64, 1 << n)).collect())
    }

    /// Given a circuit for `self.apply(f)`, a circuit of the same size for `f`.
    pub fn pull_back(&self, rep: &Circuit) -> Result<Circuit> {
        let n = self.perm.len();
        if rep.num_inputs() != n || rep.num_outputs() != self.out_perm.len() {
            return Err(Error::ShapeMismatch("transform does not fit the circuit".into()));
        }
        let mut c = Circuit::with_inputs(n);
        let ys = c.inputs().to_vec();
        let mut bindings = vec![ys[0]; n];
        for i in 0..n {
            bindings[self.perm[i]] = if self.in_neg >> i & 1 == 1 { c.add_not(ys[i])? } else { ys[i] };
        }
        let r = c.connect_block(rep, &bindings, "REP")?;
        let mut outs = vec![r[0]; r.len()];
        for (j, &src) in self.out_perm.iter().enumerate() {
            outs[src] = if self.out_neg >> j & 1 == 1 { c.add_not(r[j])? } else { r[j] };
        }
        c.set_outputs(outs)?;
        Ok(c)
    }
}

/// Class key of `f` under input permutation and negation and output
/// permutation and negation, with one transform mapping `f` onto it.
pub fn canonical_key(f: &TruthTable) -> Result<(CanonicalKey, Transform)> {
    let cols = columns_of(f)?;
    Ok(canonical_columns(f.inputs(), &cols))
}

struct InputTransform {
    perm: Vec<usize>,
    in_neg: u32,
    /// column -> permuted column
    map: Vec<u8>,
}

fn input_transforms(n: usize) -> &'static [InputTransform] {
    static CACHE: [OnceLock<Vec<InputTransform>>; MAX_DB_INPUTS + 1] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[n].get_or_init(|| {
        let cols = 1usize << (1 << n);
        let mut out = Vec::new();
        for perm in permutations(n) {
            for in_neg in 0..1u32 << n {
                let rows = row_map(n, &perm, in_neg);
                let map = (0..cols).map(|c| permute_column(c as u8, &rows)).collect();
                out.push(InputTransform { perm: perm.clone(), in_neg, map });
            }
        }
        out
    })
}

pub(crate) fn canonical_columns(n: usize, cols: &[u8]) -> (CanonicalKey, Transform) {
    let full = full_mask(n);
    let m = cols.len();
    let mut best = [u8::MAX; MAX_DB_OUTPUTS];
    let mut best_t: Option<(usize, [(u8, usize, bool); MAX_DB_OUTPUTS])> = None;
    for (ti, t) in input_transforms(n).iter().enumerate() {
        let mut cand = [(u8::MAX, usize::MAX, false); MAX_DB_OUTPUTS];
        for (j, &c) in cols.iter().enumerate() {
            let c = t.map[c as usize];
            let nc = !c & full;
            cand[j] = if nc < c { (nc, j, true) } else { (c, j, false) };
        }
        cand[..m].sort_unstable();
        let key = cand.map(|e| e.0);
        if best_t.is_none() || key[..m] < best[..m] {
            best = key;
            best_t = Some((ti, cand));
        }
    }
    let (ti, cand) = best_t.expect("at least one transform");
    let it = &input_transforms(n)[ti];
    let t = Transform {
        perm: it.perm.clone(),
        in_neg: it.in_neg,
        out_perm: cand[..m].iter().map(|e| e.1).collect(),
        out_neg: cand[..m].iter().enumerate().fold(0, |acc, (j, e)| acc | (e.2 as u32) << j),
    };
    (CanonicalKey { n, columns: best[..m].to_vec() }, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{BinOp, NodeId};

    fn table(n: usize, cols: &[u8]) -> TruthTable {
        TruthTable::new(n, cols.iter().map(|&c| Bits::from_u64(c as u64, 1 << n)).collect()).unwrap()
    }

    #[test]
    fn and_or_share_a_class() {
        let and = table(2, &[0b1000]);
        let or = table(2, &[0b1110]);
        assert_eq!(canonical_key(&and).unwrap().0, canonical_key(&or).unwrap().0);
        let xor = table(2, &[0b0110]);
        assert_ne!(canonical_key(&and).unwrap().0, canonical_key(&xor).unwrap().0);
    }

    #[test]
    fn transform_maps_onto_key() {
        let f = table(3, &[0b1110_1000, 0b1001_0110]);
        let (k, t) = canonical_key(&f).unwrap();
        assert_eq!(t.apply(&f).unwrap(), k.to_table());
        assert_eq!(canonical_key(&k.to_table()).unwrap().0, k);
    }

    #[test]
    fn pull_back_realizes_the_original() {
        let f = table(2, &[0b0100]);
        let (k, t) = canonical_key(&f).unwrap();
        // a single AND-type gate computes every representative of this class
        let kt = k.to_table();
        let mut rep = Circuit::with_inputs(2);
        let col = kt.column(0).as_u64() as u8;
        let op = BinOp::from_table((0..4).fold(0, |acc, t| acc | (col >> t & 1) << ((t & 1) << 1 | t >> 1)));
        let g = rep.add_binary(op, NodeId::new(0), NodeId::new(1)).unwrap();
        rep.add_output(g).unwrap();
        assert_eq!(rep.truth_table().unwrap(), kt);
        let c = t.pull_back(&rep).unwrap();
        assert_eq!(c.truth_table().unwrap(), f);
        assert_eq!(c.size(), 1);
    }

    #[test]
    fn dimensions_are_checked() {
        let f = TruthTable::new(4, vec![Bits::zeros(16)]).unwrap();
        assert!(canonical_key(&f).is_err());
    }
}
