use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::build::{Database, DbEntry, Optimality, Slice};
use super::key::{canonical_key, CanonicalKey, MAX_DB_INPUTS, MAX_DB_OUTPUTS};
use crate::circuit::{Basis, BinOp, Circuit, GateOp, NodeId, NodeKind};
use crate::error::{Error, Result};
use crate::function::{PartialTruthTable, TruthTable};

const HEADER: &str = "# boolcirc-db v1";

/// Largest number of unspecified entries expanded by [`Database::lookup_partial`].
pub const LOOKUP_DONT_CARE_CAP: usize = 3;

/// One-line circuit text: `inputs;gate gate ...;out,out`.
///
/// Gates refer to earlier nodes by index, inputs first. A gate is `0` or `1`
/// (constant), `~i` (negation), `=i` (copy) or `h:i,j` with `h` the hex table
/// of a binary operation.
pub fn to_compact(c: &Circuit) -> String {
    let mut index = vec![0usize; c.len()];
    for (k, &i) in c.inputs().iter().enumerate() {
        index[i.index()] = k;
    }
    let mut next = c.num_inputs();
    let mut gates = Vec::new();
    for id in c.node_ids() {
        let node = c.node(id);
        let NodeKind::Gate(op) = node.kind() else { continue };
        let f: Vec<usize> = node.fanins().iter().map(|f| index[f.index()]).collect();
        gates.push(match op {
            GateOp::Const(v) => (v as u8).to_string(),
            GateOp::Not => format!("~{}", f[0]),
            GateOp::Iden => format!("={}", f[0]),
            GateOp::Binary(op) => format!("{:x}:{},{}", op.table(), f[0], f[1]),
        });
        index[id.index()] = next;
        next += 1;
    }
    let outs: Vec<String> = c.outputs().iter().map(|o| index[o.index()].to_string()).collect();
    format!("{};{};{}", c.num_inputs(), gates.join(" "), outs.join(","))
}

pub fn parse_compact(s: &str) -> Result<Circuit> {
    let bad = |msg: &str| Error::parse(1, format!("compact circuit: {msg}"));
    let parts: Vec<&str> = s.trim().split(';').collect();
    let [n, gates, outs] = parts[..] else {
        return Err(bad("expected three `;`-separated fields"));
    };
    let n: usize = n.parse().map_err(|_| bad("bad input count"))?;
    let mut c = Circuit::with_inputs(n);
    let idx = |t: &str| -> Result<NodeId> { t.parse::<usize>().map(NodeId::new).map_err(|_| bad("bad node index")) };
    for g in gates.split_whitespace() {
        match g {
            "0" | "1" => {
                c.add_const(g == "1");
            }
            _ if g.starts_with('~') => {
                c.add_not(idx(&g[1..])?)?;
            }
            _ if g.starts_with('=') => {
                c.add_gate(GateOp::Iden, &[idx(&g[1..])?])?;
            }
            _ => {
                let (op, args) = g.split_once(':').ok_or_else(|| bad("bad gate"))?;
                let op = u8::from_str_radix(op, 16).ok().filter(|&t| t < 16).ok_or_else(|| bad("bad operation"))?;
                let (a, b) = args.split_once(',').ok_or_else(|| bad("bad operands"))?;
                c.add_binary(BinOp::from_table(op), idx(a)?, idx(b)?)?;
            }
        }
    }
    let outs = outs
        .split(',')
        .filter(|t| !t.is_empty())
        .map(idx)
        .collect::<Result<Vec<_>>>()?;
    c.set_outputs(outs)?;
    Ok(c)
}

/// Class and function counts of one circuit size within a slice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SizeBucket {
    pub classes: usize,
    pub ordered: u64,
    pub distinct: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceStats {
    pub n: usize,
    pub m: usize,
    pub classes: usize,
    pub built: usize,
    pub proven: usize,
    pub ordered: u64,
    pub distinct: u64,
    pub histogram: BTreeMap<usize, SizeBucket>,
}

impl Database {
    pub fn is_complete(&self) -> bool {
        self.slices.iter().all(|s| self.entries_of(s.n, s.m).count() == s.classes)
    }

    fn entries_of(&self, n: usize, m: usize) -> impl Iterator<Item = &DbEntry> {
        self.entries.values().filter(move |e| e.key.n == n && e.key.m() == m)
    }

    pub fn covers(&self, n: usize, m: usize) -> bool {
        self.slices.iter().any(|s| s.n == n && s.m == m)
    }

    pub fn stats(&self) -> Vec<SliceStats> {
        self.slices
            .iter()
            .map(|s| {
                let mut st = SliceStats {
                    n: s.n,
                    m: s.m,
                    classes: s.classes,
                    built: 0,
                    proven: 0,
                    ordered: 0,
                    distinct: 0,
                    histogram: BTreeMap::new(),
                };
                for e in self.entries_of(s.n, s.m) {
                    st.built += 1;
                    st.proven += (e.optimality == Optimality::Proven) as usize;
                    st.ordered += e.ordered;
                    st.distinct += e.distinct;
                    let b = st.histogram.entry(e.size).or_default();
                    b.classes += 1;
                    b.ordered += e.ordered;
                    b.distinct += e.distinct;
                }
                st
            })
            .collect()
    }

    /// A circuit for `f` of the stored size, verified by simulation.
    pub fn lookup(&self, f: &TruthTable) -> Option<Circuit> {
        if f.inputs() > MAX_DB_INPUTS || f.outputs() > MAX_DB_OUTPUTS {
            return None;
        }
        let (key, t) = canonical_key(f).ok()?;
        let entry = self.entries.get(&key)?;
        let c = t.pull_back(&entry.circuit).ok()?;
        (c.truth_table().ok()? == *f).then_some(c)
    }

    /// Smallest stored circuit over the completions of `f`; misses when `f`
    /// has more than [`LOOKUP_DONT_CARE_CAP`] unspecified entries.
    pub fn lookup_partial(&self, f: &PartialTruthTable) -> Option<Circuit> {
        if f.inputs() > MAX_DB_INPUTS || f.outputs() > MAX_DB_OUTPUTS {
            return None;
        }
        let free: Vec<(usize, usize)> = (0..f.outputs())
            .flat_map(|j| (0..f.rows()).filter(move |&t| !f.care()[j].get(t)).map(move |t| (t, j)))
            .collect();
        if free.len() > LOOKUP_DONT_CARE_CAP {
            return None;
        }
        let base = f.complete_with(false);
        let mut best: Option<Circuit> = None;
        for mask in 0..1u32 << free.len() {
            let mut cols: Vec<_> = base.columns().to_vec();
            for (b, &(t, j)) in free.iter().enumerate() {
                cols[j].set(t, mask >> b & 1 == 1);
            }
            let g = TruthTable::new(f.inputs(), cols).ok()?;
            if let Some(c) = self.lookup(&g) {
                if best.as_ref().is_none_or(|b| c.size() < b.size()) {
                    best = Some(c);
                }
            }
        }
        best
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\n# basis {}\n", self.basis);
        for s in &self.slices {
            out += &format!("# slice {} {} {}\n", s.n, s.m, s.classes);
        }
        for e in self.entries.values() {
            let opt = match e.optimality {
                Optimality::Proven => 'P',
                Optimality::BestKnown => 'B',
            };
            out += &format!(
                "{} {} {} {} {} {} {}\n",
                e.key.n,
                e.key.to_hex(),
                e.size,
                opt,
                e.ordered,
                e.distinct,
                to_compact(&e.circuit)
            );
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Database> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == HEADER => {}
            _ => return Err(Error::parse(1, "missing database header")),
        }
        let mut basis = None;
        let mut slices = Vec::new();
        let mut entries = BTreeMap::new();
        for (i, line) in lines {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let f: Vec<&str> = rest.split_whitespace().collect();
                match f.as_slice() {
                    ["basis", b] => basis = Some(b.parse::<Basis>().map_err(|_| Error::parse(ln, "bad basis"))?),
                    ["slice", n, m, k] => {
                        let p = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(ln, "bad slice"));
                        slices.push(Slice { n: p(n)?, m: p(m)?, classes: p(k)? });
                    }
                    _ => {}
                }
                continue;
            }
            let f: Vec<&str> = line.splitn(7, ' ').collect();
            let [n, key, size, opt, ordered, distinct, circuit] = f[..] else {
                return Err(Error::parse(ln, "expected 7 fields"));
            };
            let num = |s: &str| s.parse::<u64>().map_err(|_| Error::parse(ln, format!("bad number `{s}`")));
            let n = num(n)? as usize;
            let key = CanonicalKey::from_hex(n, key).ok_or_else(|| Error::parse(ln, "bad key"))?;
            let circuit = parse_compact(circuit).map_err(|e| Error::parse(ln, e.to_string()))?;
            let optimality = match opt {
                "P" => Optimality::Proven,
                "B" => Optimality::BestKnown,
                _ => return Err(Error::parse(ln, "bad optimality flag")),
            };
            let size = num(size)? as usize;
            if circuit.size() != size || circuit.truth_table()? != key.to_table() {
                return Err(Error::parse(ln, "circuit does not match its record"));
            }
            let entry = DbEntry {
                key: key.clone(),
                circuit,
                size,
                optimality,
                ordered: num(ordered)?,
                distinct: num(distinct)?,
            };
            entries.insert(key, entry);
        }
        Ok(Database {
            basis: basis.ok_or_else(|| Error::parse(2, "missing basis line"))?,
            slices,
            entries,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Database> {
        Database::from_text(&fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::db::build::{build_database_with, BuildOptions};
    use std::time::Duration;

    #[test]
    fn compact_round_trip() {
        let mut c = Circuit::with_inputs(2);
        let (x, y) = (NodeId::new(0), NodeId::new(1));
        let g = c.add_binary(BinOp::Xor, x, y).unwrap();
        let n = c.add_not(g).unwrap();
        let one = c.add_const(true);
        c.set_outputs(vec![n, one, x]).unwrap();
        let s = to_compact(&c);
        assert_eq!(s, "2;6:0,1 ~2 1;3,4,0");
        assert_eq!(parse_compact(&s).unwrap().truth_table().unwrap(), c.truth_table().unwrap());
    }

    #[test]
    fn small_database() {
        let opts = BuildOptions {
            slices: vec![(2, 1), (2, 2)],
            ..BuildOptions::desk(Basis::Xaig, Duration::from_secs(120))
        };
        let db = build_database_with(&opts).unwrap();
        assert!(db.is_complete());
        let xor = TruthTable::from_binary_columns(&["0110"]).unwrap();
        assert_eq!(db.lookup(&xor).unwrap().size(), 1);
        let ha = TruthTable::from_binary_columns(&["0110", "0001"]).unwrap();
        assert_eq!(db.lookup(&ha).unwrap().size(), 2);
        let part = PartialTruthTable::from_binary_columns(&["011*"]).unwrap();
        assert_eq!(db.lookup_partial(&part).unwrap().size(), 1);
        let back = Database::from_text(&db.to_text()).unwrap();
        assert_eq!(back, db);
        let st = db.stats();
        assert_eq!(st[0].ordered, 16);
        assert_eq!(st[1].ordered, 256);
    }
}
