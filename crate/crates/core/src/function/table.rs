//! Total and partial truth tables.
//!
//! Row `t` of a table over `n` inputs is the assignment `bin(t, n)`: input
//! `x1` is the least significant bit of `t`, `xn` the most significant.

use super::bits::Bits;
use super::codec::bin;
use crate::error::{Error, Result};

/// Largest input count for which a table is materialised by default.
pub const DEFAULT_INPUT_CAP: usize = 24;

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::TooManyInputs { inputs: n, cap })
    } else {
        Ok(())
    }
}

/// A function `{0,1}^n -> {0,1}^m` stored as `m` columns of `2^n` bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    columns: Vec<Bits>,
}

impl TruthTable {
    pub fn new(n: usize, columns: Vec<Bits>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::ShapeMismatch("a table needs at least one output".into()));
        }
        if let Some(c) = columns.iter().find(|c| c.len() != 1 << n) {
            return Err(Error::ShapeMismatch(format!(
                "column of length {} for {} inputs",
                c.len(),
                n
            )));
        }
        Ok(TruthTable { n, columns })
    }

    /// Tabulates `f` over every assignment, `f` receiving `x1..xn` and returning `m` bits.
    pub fn from_predicate<F>(n: usize, m: usize, f: F) -> Result<Self>
    where
        F: Fn(&[bool]) -> Vec<bool>,
    {
        Self::from_predicate_capped(n, m, DEFAULT_INPUT_CAP, f)
    }

    pub fn from_predicate_capped<F>(n: usize, m: usize, cap: usize, f: F) -> Result<Self>
    where
        F: Fn(&[bool]) -> Vec<bool>,
    {
        check_cap(n, cap)?;
        if m == 0 {
            return Err(Error::ShapeMismatch("a table needs at least one output".into()));
        }
        let rows = 1usize << n;
        let mut columns = vec![Bits::zeros(rows); m];
        for t in 0..rows {
            let out = f(&bin(t as u64, n));
            if out.len() != m {
                return Err(Error::AssignmentLength {
                    expected: m,
                    got: out.len(),
                });
            }
            for (c, v) in columns.iter_mut().zip(out) {
                if v {
                    c.set(t, true);
                }
            }
        }
        Ok(TruthTable { n, columns })
    }

    /// Parses one binary string per output, row 0 first.
    pub fn from_binary_columns<S: AsRef<str>>(cols: &[S]) -> Result<Self> {
        let partial = PartialTruthTable::from_binary_columns(cols)?;
        partial
            .to_total()
            .ok_or_else(|| Error::InvalidArgument("binary column contains don't-cares".into()))
    }

    /// Parses one hex string per output, the lowest bit of the last digit being row 0.
    pub fn from_hex_columns<S: AsRef<str>>(n: usize, cols: &[S]) -> Result<Self> {
        let columns = cols
            .iter()
            .map(|s| {
                Bits::from_hex(s.as_ref(), 1 << n).ok_or_else(|| {
                    Error::InvalidArgument(format!("bad hex column `{}`", s.as_ref()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TruthTable::new(n, columns)
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> usize {
        1 << self.n
    }

    pub fn columns(&self) -> &[Bits] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Bits {
        &self.columns[j]
    }

    pub fn into_columns(self) -> Vec<Bits> {
        self.columns
    }

    pub fn get(&self, row: usize, out: usize) -> bool {
        self.columns[out].get(row)
    }

    pub fn row(&self, t: usize) -> Vec<bool> {
        self.columns.iter().map(|c| c.get(t)).collect()
    }

    pub fn to_hex_columns(&self) -> Vec<String> {
        self.columns.iter().map(Bits::to_hex).collect()
    }

    pub fn to_binary_columns(&self) -> Vec<String> {
        self.columns.iter().map(Bits::to_binary_string).collect()
    }

    pub fn to_partial(&self) -> PartialTruthTable {
        PartialTruthTable {
            n: self.n,
            values: self.columns.clone(),
            care: vec![Bits::ones(self.rows()); self.columns.len()],
        }
    }
}

/// A function `{0,1}^n -> {0,1,*}^m`.
///
/// Each output stores a value column and a care column; `values` is zero
/// wherever `care` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialTruthTable {
    n: usize,
    values: Vec<Bits>,
    care: Vec<Bits>,
}

/// A single entry of a partial table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ternary {
    Zero,
    One,
    DontCare,
}

impl PartialTruthTable {
    pub fn new(n: usize, values: Vec<Bits>, care: Vec<Bits>) -> Result<Self> {
        if values.is_empty() || values.len() != care.len() {
            return Err(Error::ShapeMismatch(
                "value and care columns must be non-empty and paired".into(),
            ));
        }
        let rows = 1usize << n;
        if values.iter().chain(&care).any(|c| c.len() != rows) {
            return Err(Error::ShapeMismatch(format!("columns must have {rows} rows")));
        }
        let values = values.iter().zip(&care).map(|(v, c)| v & c).collect();
        Ok(PartialTruthTable { n, values, care })
    }

    /// Builds a table from a row evaluator returning `None` for don't-care entries.
    pub fn from_fn<F>(n: usize, m: usize, f: F) -> Result<Self>
    where
        F: Fn(&[bool]) -> Vec<Option<bool>>,
    {
        check_cap(n, DEFAULT_INPUT_CAP)?;
        let rows = 1usize << n;
        let mut values = vec![Bits::zeros(rows); m];
        let mut care = vec![Bits::zeros(rows); m];
        for t in 0..rows {
            let out = f(&bin(t as u64, n));
            if out.len() != m {
                return Err(Error::AssignmentLength {
                    expected: m,
                    got: out.len(),
                });
            }
            for (j, v) in out.into_iter().enumerate() {
                if let Some(v) = v {
                    care[j].set(t, true);
                    values[j].set(t, v);
                }
            }
        }
        PartialTruthTable::new(n, values, care)
    }

    /// Parses strings over `{0,1,*}`, one per output, row 0 first.
    pub fn from_binary_columns<S: AsRef<str>>(cols: &[S]) -> Result<Self> {
        let first = cols
            .first()
            .ok_or_else(|| Error::InvalidArgument("no columns given".into()))?
            .as_ref()
            .trim();
        let rows = first.len();
        if !rows.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "column length {rows} is not a power of two"
            )));
        }
        let n = rows.trailing_zeros() as usize;
        let mut values = Vec::new();
        let mut care = Vec::new();
        for s in cols {
            let s = s.as_ref().trim();
            if s.len() != rows {
                return Err(Error::ShapeMismatch("columns differ in length".into()));
            }
            let mut v = Bits::zeros(rows);
            let mut c = Bits::zeros(rows);
            for (t, ch) in s.chars().enumerate() {
                match ch {
                    '0' => c.set(t, true),
                    '1' => {
                        c.set(t, true);
                        v.set(t, true);
                    }
                    '*' | '-' | 'x' | 'X' => {}
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "unexpected character `{other}` in table"
                        )))
                    }
                }
            }
            values.push(v);
            care.push(c);
        }
        PartialTruthTable::new(n, values, care)
    }

    /// Parses hex value columns with matching hex care masks (1 = defined).
    pub fn from_hex_columns<S: AsRef<str>>(n: usize, values: &[S], care: &[S]) -> Result<Self> {
        let parse = |s: &S| {
            Bits::from_hex(s.as_ref(), 1 << n)
                .ok_or_else(|| Error::InvalidArgument(format!("bad hex column `{}`", s.as_ref())))
        };
        let values = values.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let care = care.iter().map(parse).collect::<Result<Vec<_>>>()?;
        PartialTruthTable::new(n, values, care)
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> usize {
        self.values.len()
    }

    pub fn rows(&self) -> usize {
        1 << self.n
    }

    pub fn values(&self) -> &[Bits] {
        &self.values
    }

    pub fn care(&self) -> &[Bits] {
        &self.care
    }

    pub fn get(&self, row: usize, out: usize) -> Ternary {
        if !self.care[out].get(row) {
            Ternary::DontCare
        } else if self.values[out].get(row) {
            Ternary::One
        } else {
            Ternary::Zero
        }
    }

    pub fn is_total(&self) -> bool {
        self.care.iter().all(|c| c.count_ones() == c.len())
    }

    pub fn dont_care_count(&self) -> usize {
        self.care.iter().map(|c| c.len() - c.count_ones()).sum()
    }

    pub fn to_total(&self) -> Option<TruthTable> {
        self.is_total().then(|| TruthTable {
            n: self.n,
            columns: self.values.clone(),
        })
    }

    /// Replaces every don't-care with `fill`.
    pub fn complete_with(&self, fill: bool) -> TruthTable {
        let columns = if fill {
            self.values
                .iter()
                .zip(&self.care)
                .map(|(v, c)| v | &!c)
                .collect()
        } else {
            self.values.clone()
        };
        TruthTable {
            n: self.n,
            columns,
        }
    }

    /// `true` if `tt` agrees with this table on every defined entry.
    pub fn is_matched_by(&self, tt: &TruthTable) -> bool {
        tt.inputs() == self.n
            && tt.outputs() == self.outputs()
            && self
                .values
                .iter()
                .zip(&self.care)
                .zip(tt.columns())
                .all(|((v, c), col)| v.agrees_on(col, c))
    }

    pub fn to_binary_columns(&self) -> Vec<String> {
        (0..self.outputs())
            .map(|j| {
                (0..self.rows())
                    .map(|t| match self.get(t, j) {
                        Ternary::Zero => '0',
                        Ternary::One => '1',
                        Ternary::DontCare => '*',
                    })
                    .collect()
            })
            .collect()
    }
}

impl From<TruthTable> for PartialTruthTable {
    fn from(tt: TruthTable) -> Self {
        tt.to_partial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn majority_three_column() {
        let t = TruthTable::from_predicate(3, 1, |x| {
            vec![x.iter().filter(|&&b| b).count() > 1]
        })
        .unwrap();
        assert_eq!(t.to_binary_columns(), vec!["00010111"]);
    }

    #[test]
    fn identity_column() {
        let t = TruthTable::from_predicate(1, 1, |x| vec![x[0]]).unwrap();
        assert_eq!(t.to_binary_columns(), vec!["01"]);
    }

    #[test]
    fn two_outputs_tabulated() {
        let t = TruthTable::from_predicate(2, 2, |x| vec![x[0] && x[1], x[0] || x[1]]).unwrap();
        assert_eq!(t.to_binary_columns(), vec!["0001", "0111"]);
    }

    #[test]
    fn cap_is_enforced() {
        let err = TruthTable::from_predicate_capped(5, 1, 4, |_| vec![false]).unwrap_err();
        assert!(matches!(err, Error::TooManyInputs { inputs: 5, cap: 4 }));
    }

    #[test]
    fn partial_parse_and_completion() {
        let p = PartialTruthTable::from_binary_columns(&["01*1"]).unwrap();
        assert_eq!(p.get(2, 0), Ternary::DontCare);
        assert_eq!(p.dont_care_count(), 1);
        assert_eq!(p.complete_with(true).to_binary_columns(), vec!["0111"]);
        assert_eq!(p.complete_with(false).to_binary_columns(), vec!["0101"]);
        assert_eq!(p.to_binary_columns(), vec!["01*1"]);
        assert!(p.is_matched_by(&p.complete_with(true)));
    }

    #[test]
    fn hex_columns_parse() {
        let t = TruthTable::from_hex_columns(3, &["e8", "96"]).unwrap();
        assert_eq!(t.to_binary_columns(), vec!["00010111", "01101001"]);
        assert_eq!(t.to_hex_columns(), vec!["e8", "96"]);
        let p = PartialTruthTable::from_hex_columns(2, &["8"], &["7"]).unwrap();
        assert_eq!(p.to_binary_columns(), vec!["000*"]);
    }
}
