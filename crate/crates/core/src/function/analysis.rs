//! Symmetry and monotonicity checks by enumeration of all assignments.

use super::bits::Bits;
use super::table::TruthTable;

/// Output values of a symmetric function indexed by the number of ones in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricProfile {
    n: usize,
    /// `values[j][k]` is output `j` on inputs with exactly `k` ones.
    values: Vec<Vec<bool>>,
}

impl SymmetricProfile {
    pub fn new(n: usize, values: Vec<Vec<bool>>) -> Self {
        assert!(values.iter().all(|v| v.len() == n + 1));
        SymmetricProfile { n, values }
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn output(&self, j: usize) -> &[bool] {
        &self.values[j]
    }

    pub fn outputs(&self) -> usize {
        self.values.len()
    }

    pub fn to_truth_table(&self) -> TruthTable {
        let rows = 1usize << self.n;
        let columns = self
            .values
            .iter()
            .map(|v| Bits::from_fn(rows, |t| v[t.count_ones() as usize]))
            .collect();
        TruthTable::new(self.n, columns).expect("profile has at least one output")
    }
}

/// The popcount profile of `f` if its value depends only on the number of ones.
pub fn symmetric_profile(f: &TruthTable) -> Option<SymmetricProfile> {
    let n = f.inputs();
    let mut values = Vec::with_capacity(f.outputs());
    for col in f.columns() {
        let mut seen: Vec<Option<bool>> = vec![None; n + 1];
        for t in 0..f.rows() {
            let k = t.count_ones() as usize;
            let v = col.get(t);
            match seen[k] {
                None => seen[k] = Some(v),
                Some(prev) if prev != v => return None,
                _ => {}
            }
        }
        values.push(seen.into_iter().map(|v| v.unwrap_or(false)).collect());
    }
    Some(SymmetricProfile { n, values })
}

pub fn is_symmetric(f: &TruthTable) -> bool {
    symmetric_profile(f).is_some()
}

/// `true` iff raising any single input from 0 to 1 never lowers any output.
pub fn is_monotone(f: &TruthTable) -> bool {
    let n = f.inputs();
    f.columns()
        .iter()
        .all(|col| (0..n).all(|i| monotone_in(col, i)))
}

fn monotone_in(col: &Bits, var: usize) -> bool {
    let words = col.words();
    if var < 6 {
        let shift = 1u32 << var;
        let low = !projection_word(var);
        // rows with the variable at 0 that hold a 1 whose successor holds a 0
        words.iter().all(|&w| (w & low) & !(w >> shift) == 0)
    } else {
        let stride = 1usize << (var - 6);
        (0..words.len())
            .filter(|k| (k / stride) % 2 == 0)
            .all(|k| words[k] & !words[k + stride] == 0)
    }
}

fn projection_word(var: usize) -> u64 {
    Bits::projection(6, var).words()[0]
}
