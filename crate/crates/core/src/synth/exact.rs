use std::time::{Duration, Instant};

use crate::circuit::{Basis, BinOp, Circuit, NodeId};
use crate::error::{Error, Result};
use crate::function::{Bits, PartialTruthTable};
use crate::sat::{default_solver, solve_checked, Cnf, SatSolver, SolverVerdict, DEFAULT_TIMEOUT};

/// Largest number of target inputs accepted.
pub const MAX_SYNTHESIS_INPUTS: usize = 10;

#[derive(Clone, Debug)]
pub struct SynthesisOptions {
    pub symmetry_breaking: bool,
    /// Budget per solver call.
    pub timeout: Option<Duration>,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            symmetry_breaking: true,
            timeout: Some(DEFAULT_TIMEOUT),
        }
    }
}

/// "Is there a circuit with at most `size` binary gates in `basis` computing `target`?"
#[derive(Clone, Debug)]
pub struct SynthesisSpec {
    pub target: PartialTruthTable,
    pub basis: Basis,
    pub size: usize,
    pub options: SynthesisOptions,
}

impl SynthesisSpec {
    pub fn new(target: PartialTruthTable, basis: Basis, size: usize) -> Self {
        SynthesisSpec {
            target,
            basis,
            size,
            options: SynthesisOptions::default(),
        }
    }

    pub fn with_options(mut self, options: SynthesisOptions) -> Self {
        self.options = options;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SynthesisStatus {
    Found(Circuit),
    None,
    /// A solver call ran out of time; carries the best circuit seen, if any.
    Unknown(Option<Circuit>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SynthesisStats {
    pub queries: usize,
    pub solver_time: Duration,
    /// Size of the largest encoding built.
    pub variables: u32,
    pub clauses: usize,
}

impl SynthesisStats {
    fn absorb(&mut self, other: &SynthesisStats) {
        self.queries += other.queries;
        self.solver_time += other.solver_time;
        self.variables = self.variables.max(other.variables);
        self.clauses = self.clauses.max(other.clauses);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisResult {
    pub status: SynthesisStatus,
    pub stats: SynthesisStats,
}

impl SynthesisResult {
    pub fn circuit(&self) -> Option<&Circuit> {
        match &self.status {
            SynthesisStatus::Found(c) => Some(c),
            SynthesisStatus::Unknown(best) => best.as_ref(),
            SynthesisStatus::None => None,
        }
    }
}

/// How an output is realised without gates.
#[derive(Clone, Copy, Debug)]
enum Trivial {
    Const(bool),
    Input(usize, bool),
}

fn trivial_output(target: &PartialTruthTable, j: usize) -> Option<Trivial> {
    let n = target.inputs();
    let (values, care) = (&target.values()[j], &target.care()[j]);
    if values.is_zero() {
        return Some(Trivial::Const(false));
    }
    if (values ^ care).is_zero() {
        return Some(Trivial::Const(true));
    }
    for i in 0..n {
        let x = Bits::projection(n, i);
        let masked = &x & care;
        if masked == *values {
            return Some(Trivial::Input(i, false));
        }
        if &(!&x) & care == *values {
            return Some(Trivial::Input(i, true));
        }
    }
    None
}

/// Truth value of a candidate operand on one row.
#[derive(Clone, Copy)]
enum Val {
    Const(bool),
    Lit(i32),
}

struct Encoding {
    cnf: Cnf,
    n: usize,
    pairs: Vec<Vec<(usize, usize)>>,
    sel: Vec<Vec<i32>>,
    op: Vec<[i32; 3]>,
    active: Vec<i32>,
    out_sel: Vec<Vec<i32>>,
    out_neg: Vec<i32>,
}

fn encode(
    target: &PartialTruthTable,
    hard: &[usize],
    basis: Basis,
    r: usize,
    symmetry_breaking: bool,
) -> Encoding {
    let n = target.inputs();
    let mut cnf = Cnf::new();
    let rows: Vec<usize> = (1..target.rows())
        .filter(|&t| hard.iter().any(|&j| target.care()[j].get(t)))
        .collect();
    let pairs: Vec<Vec<(usize, usize)>> = (0..r)
        .map(|i| {
            let m = n + i;
            (0..m)
                .flat_map(|j| (j + 1..m).map(move |k| (j, k)))
                .collect()
        })
        .collect();
    let sel: Vec<Vec<i32>> = pairs
        .iter()
        .map(|ps| ps.iter().map(|_| cnf.new_var()).collect())
        .collect();
    let op: Vec<[i32; 3]> = (0..r)
        .map(|_| [cnf.new_var(), cnf.new_var(), cnf.new_var()])
        .collect();
    let active: Vec<i32> = (0..r).map(|_| cnf.new_var()).collect();
    let val: Vec<Vec<i32>> = (0..r)
        .map(|_| rows.iter().map(|_| cnf.new_var()).collect())
        .collect();
    let out_sel: Vec<Vec<i32>> = hard
        .iter()
        .map(|_| (0..r).map(|_| cnf.new_var()).collect())
        .collect();
    let out_neg: Vec<i32> = hard.iter().map(|_| cnf.new_var()).collect();

    let operand = |node: usize, ti: usize| -> Val {
        if node < n {
            Val::Const((rows[ti] >> node) & 1 == 1)
        } else {
            Val::Lit(val[node - n][ti])
        }
    };

    for i in 0..r {
        let [f01, f10, f11] = op[i];
        cnf.add_clause(&sel[i]);
        // no constants, no projections
        cnf.add_clause(&[f01, f10, f11]);
        cnf.add_clause(&[f01, -f10, -f11]);
        cnf.add_clause(&[-f01, f10, -f11]);
        if basis == Basis::Aig {
            cnf.add_clause(&[-f01, -f10, f11]);
        }
        for (p, &(j, k)) in pairs[i].iter().enumerate() {
            let s = sel[i][p];
            for ti in 0..rows.len() {
                let x = val[i][ti];
                'ab: for (a, b, f) in [(0, 0, 0), (0, 1, f01), (1, 0, f10), (1, 1, f11)] {
                    let mut lits = vec![-s];
                    for (v, want) in [(operand(j, ti), a == 1), (operand(k, ti), b == 1)] {
                        match v {
                            Val::Const(c) if c != want => continue 'ab,
                            Val::Const(_) => {}
                            Val::Lit(l) => lits.push(if want { -l } else { l }),
                        }
                    }
                    if f == 0 {
                        lits.push(-x);
                        cnf.add_clause(&lits);
                    } else {
                        let mut on = lits.clone();
                        on.extend([x, -f]);
                        cnf.add_clause(&on);
                        lits.extend([-x, f]);
                        cnf.add_clause(&lits);
                    }
                }
            }
        }
        // inactive gates form a suffix, read inputs 1 and 2 with AND, and feed nothing
        if i + 1 < r {
            cnf.add_clause(&[-active[i + 1], active[i]]);
        }
        cnf.add_clause(&[active[i], sel[i][0]]);
        cnf.add_clause(&[active[i], -f01]);
        cnf.add_clause(&[active[i], -f10]);
        cnf.add_clause(&[active[i], f11]);
    }

    for (h, &j) in hard.iter().enumerate() {
        cnf.add_clause(&out_sel[h]);
        let (values, care) = (&target.values()[j], &target.care()[j]);
        if care.get(0) {
            let b = values.get(0);
            cnf.add_clause(&[if b { out_neg[h] } else { -out_neg[h] }]);
        }
        for i in 0..r {
            let o = out_sel[h][i];
            cnf.add_clause(&[-o, active[i]]);
            for (ti, &t) in rows.iter().enumerate() {
                if !care.get(t) {
                    continue;
                }
                let x = val[i][ti];
                let g = out_neg[h];
                // gate value xor negation == target bit
                if values.get(t) {
                    cnf.add_clause(&[-o, x, g]);
                    cnf.add_clause(&[-o, -x, -g]);
                } else {
                    cnf.add_clause(&[-o, x, -g]);
                    cnf.add_clause(&[-o, -x, g]);
                }
            }
        }
    }

    if symmetry_breaking {
        for i in 0..r {
            // every active gate feeds a later gate or an output
            let mut users = vec![-active[i]];
            for (l, ps) in pairs.iter().enumerate().skip(i + 1) {
                for (p, &(j, k)) in ps.iter().enumerate() {
                    if j == n + i || k == n + i {
                        users.push(sel[l][p]);
                    }
                }
            }
            users.extend(out_sel.iter().map(|o| o[i]));
            cnf.add_clause(&users);
        }
        for i in 0..r.saturating_sub(1) {
            // gate i+1 either reads gate i or comes no earlier in operand order
            let me = n + i;
            for (p, &pi) in pairs[i].iter().enumerate() {
                for (q, &qi) in pairs[i + 1].iter().enumerate() {
                    if qi < pi && qi.0 != me && qi.1 != me {
                        cnf.add_clause(&[-sel[i][p], -sel[i + 1][q], -active[i + 1]]);
                    }
                }
            }
        }
    }

    Encoding {
        cnf,
        n,
        pairs,
        sel,
        op,
        active,
        out_sel,
        out_neg,
    }
}

fn decode(
    enc: &Encoding,
    model: &[bool],
    target: &PartialTruthTable,
    hard: &[usize],
    trivial: &[Option<Trivial>],
) -> Result<Circuit> {
    let n = enc.n;
    let lit = |v: i32| model[v as usize];
    let r = enc.active.iter().filter(|&&a| lit(a)).count();
    let mut gates: Vec<(BinOp, usize, usize)> = Vec::with_capacity(r);
    for i in 0..r {
        let p = enc.sel[i]
            .iter()
            .position(|&s| lit(s))
            .ok_or_else(|| Error::Solver("gate without operands".into()))?;
        let (j, k) = enc.pairs[i][p];
        let [f01, f10, f11] = enc.op[i];
        let table = (lit(f01) as u8) << 1 | (lit(f10) as u8) << 2 | (lit(f11) as u8) << 3;
        gates.push((BinOp::from_table(table), j, k));
    }
    let mut outs: Vec<(usize, bool)> = Vec::new();
    for h in 0..hard.len() {
        let i = (0..r)
            .find(|&i| lit(enc.out_sel[h][i]))
            .ok_or_else(|| Error::Solver("output bound to an inactive gate".into()))?;
        outs.push((n + i, lit(enc.out_neg[h])));
    }

    // keep gates reachable from the outputs
    let mut live = vec![false; n + r];
    for &(g, _) in &outs {
        live[g] = true;
    }
    for i in (0..r).rev() {
        if live[n + i] {
            let (_, j, k) = gates[i];
            live[j] = true;
            live[k] = true;
        }
    }
    let mut c = Circuit::with_inputs(n);
    let mut map: Vec<Option<NodeId>> = (0..n).map(|i| Some(NodeId::new(i))).collect();
    for (i, &(op, j, k)) in gates.iter().enumerate() {
        map.push(if live[n + i] {
            Some(c.add_binary(op, map[j].unwrap(), map[k].unwrap())?)
        } else {
            None
        });
    }
    let mut hard_iter = outs.into_iter();
    let mut outputs = Vec::with_capacity(target.outputs());
    for t in trivial {
        let id = match *t {
            Some(Trivial::Const(v)) => c.add_const(v),
            Some(Trivial::Input(i, false)) => NodeId::new(i),
            Some(Trivial::Input(i, true)) => c.add_not(NodeId::new(i))?,
            None => {
                let (g, neg) = hard_iter.next().unwrap();
                let id = map[g].unwrap();
                if neg {
                    c.add_not(id)?
                } else {
                    id
                }
            }
        };
        outputs.push(id);
    }
    c.set_outputs(outputs)?;
    if !target.is_matched_by(&c.truth_table()?) {
        return Err(Error::Solver("synthesised circuit does not match the target".into()));
    }
    Ok(c)
}

fn check_spec(target: &PartialTruthTable) -> Result<()> {
    if target.inputs() > MAX_SYNTHESIS_INPUTS {
        return Err(Error::TooManyInputs {
            inputs: target.inputs(),
            cap: MAX_SYNTHESIS_INPUTS,
        });
    }
    if target.outputs() == 0 {
        return Err(Error::ShapeMismatch("target has no outputs".into()));
    }
    Ok(())
}

pub fn synthesize_fixed_size(spec: &SynthesisSpec) -> Result<SynthesisResult> {
    synthesize_fixed_size_with(spec, default_solver().as_mut())
}

/// Decides whether `spec.target` has a circuit of at most `spec.size` gates.
///
/// Found circuits are checked against every defined row before being returned.
pub fn synthesize_fixed_size_with(
    spec: &SynthesisSpec,
    solver: &mut dyn SatSolver,
) -> Result<SynthesisResult> {
    check_spec(&spec.target)?;
    let target = &spec.target;
    let trivial: Vec<Option<Trivial>> = (0..target.outputs())
        .map(|j| trivial_output(target, j))
        .collect();
    let hard: Vec<usize> = (0..target.outputs())
        .filter(|&j| trivial[j].is_none())
        .collect();
    let mut stats = SynthesisStats::default();
    if hard.is_empty() {
        let c = decode(&encode(target, &[], spec.basis, 0, false), &[false], target, &[], &trivial)?;
        return Ok(SynthesisResult {
            status: SynthesisStatus::Found(c),
            stats,
        });
    }
    if spec.size == 0 {
        return Ok(SynthesisResult {
            status: SynthesisStatus::None,
            stats,
        });
    }
    let enc = encode(
        target,
        &hard,
        spec.basis,
        spec.size,
        spec.options.symmetry_breaking,
    );
    stats.queries = 1;
    stats.variables = enc.cnf.num_vars();
    stats.clauses = enc.cnf.num_clauses();
    let start = Instant::now();
    let verdict = solve_checked(solver, &enc.cnf, spec.options.timeout)?;
    stats.solver_time = start.elapsed();
    let status = match verdict {
        SolverVerdict::Sat(model) => {
            SynthesisStatus::Found(decode(&enc, &model, target, &hard, &trivial)?)
        }
        SolverVerdict::Unsat => SynthesisStatus::None,
        SolverVerdict::Unknown => SynthesisStatus::Unknown(None),
    };
    Ok(SynthesisResult { status, stats })
}

pub fn synthesize_min(
    target: &PartialTruthTable,
    basis: Basis,
    upper: usize,
    options: &SynthesisOptions,
) -> Result<SynthesisResult> {
    synthesize_min_with(target, basis, upper, options, default_solver().as_mut())
}

/// Smallest circuit of size at most `upper`, by descending fixed-size queries.
///
/// After each hit the next query asks for one gate fewer than the circuit
/// just found; the search stops at the first size with no circuit.
pub fn synthesize_min_with(
    target: &PartialTruthTable,
    basis: Basis,
    upper: usize,
    options: &SynthesisOptions,
    solver: &mut dyn SatSolver,
) -> Result<SynthesisResult> {
    let mut stats = SynthesisStats::default();
    let mut best: Option<Circuit> = None;
    let mut r = upper;
    loop {
        let spec = SynthesisSpec {
            target: target.clone(),
            basis,
            size: r,
            options: options.clone(),
        };
        let res = synthesize_fixed_size_with(&spec, solver)?;
        stats.absorb(&res.stats);
        match res.status {
            SynthesisStatus::Found(c) => {
                let s = c.size();
                best = Some(c);
                if s == 0 {
                    break;
                }
                r = s - 1;
            }
            SynthesisStatus::None => break,
            SynthesisStatus::Unknown(_) => {
                return Ok(SynthesisResult {
                    status: SynthesisStatus::Unknown(best),
                    stats,
                })
            }
        }
    }
    let status = match best {
        Some(c) => SynthesisStatus::Found(c),
        None => SynthesisStatus::None,
    };
    Ok(SynthesisResult { status, stats })
}
