//! A conflict-driven clause-learning solver.
//!
//! Two-watched-literal propagation, first-UIP learning with recursive clause
//! minimisation, VSIDS decisions with phase saving, Luby restarts and
//! LBD-based reduction of the learnt clause database.

use std::time::{Duration, Instant};

use super::cnf::Cnf;
use super::solver::{SatSolver, SolverVerdict};
use crate::error::Result;

type Lit = u32;
type CRef = u32;

#[inline]
fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

#[inline]
fn from_dimacs(l: i32) -> Lit {
    let v = l.unsigned_abs() - 1;
    (v << 1) | (l < 0) as u32
}

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const UNDEF: i8 = 0;

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    lbd: u32,
    activity: f64,
}

#[derive(Clone, Copy)]
struct Watch {
    cref: CRef,
    blocker: Lit,
}

/// Max-heap of variables ordered by activity.
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<i32>,
}

impl VarHeap {
    fn new(n: usize) -> Self {
        VarHeap {
            heap: Vec::with_capacity(n),
            pos: vec![-1; n],
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] >= 0
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if act[self.heap[parent] as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i] as usize] = i as i32;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as i32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && act[self.heap[r] as usize] > act[self.heap[l] as usize] {
                r
            } else {
                l
            };
            if act[self.heap[c] as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i] as usize] = i as i32;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as i32;
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v as u32);
        let i = self.heap.len() - 1;
        self.pos[v] = i as i32;
        self.up(i, act);
    }

    fn increased(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.up(self.pos[v] as usize, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.down(0, act);
        }
        Some(top as usize)
    }
}

fn luby(y: f64, mut x: u64) -> f64 {
    let (mut size, mut seq) = (1u64, 0i32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq)
}

struct Search {
    clauses: Vec<Clause>,
    learnts: Vec<CRef>,
    watches: Vec<Vec<Watch>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<Option<CRef>>,
    phase: Vec<bool>,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<u8>,
    to_clear: Vec<usize>,
    stack: Vec<Lit>,
    conflicts: u64,
}

enum Outcome {
    Sat,
    Unsat,
    Timeout,
}

impl Search {
    fn new(num_vars: usize) -> Self {
        let mut s = Search {
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![UNDEF; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            phase: vec![false; num_vars],
            activity: vec![0.0; num_vars],
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::new(num_vars),
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            seen: vec![0; num_vars],
            to_clear: Vec::new(),
            stack: Vec::new(),
            conflicts: 0,
        };
        for v in 0..num_vars {
            s.heap.insert(v, &s.activity);
        }
        s
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        let a = self.assigns[var(l)];
        if l & 1 == 1 {
            -a
        } else {
            a
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, from: Option<CRef>) {
        let v = var(l);
        self.assigns[v] = if l & 1 == 1 { FALSE } else { TRUE };
        self.level[v] = self.decision_level();
        self.reason[v] = from;
        self.trail.push(l);
    }

    /// Adds an original clause at level 0. Returns `false` if the formula became unsatisfiable.
    fn add_original(&mut self, lits: &[i32]) -> bool {
        let mut c: Vec<Lit> = lits.iter().map(|&l| from_dimacs(l)).collect();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return true;
        }
        c.retain(|&l| self.value(l) != FALSE);
        if c.iter().any(|&l| self.value(l) == TRUE) {
            return true;
        }
        match c.len() {
            0 => false,
            1 => {
                self.enqueue(c[0], None);
                self.propagate().is_none()
            }
            _ => {
                self.attach(c, false, 0);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> CRef {
        let cref = self.clauses.len() as CRef;
        self.watches[lits[0] as usize].push(Watch {
            cref,
            blocker: lits[1],
        });
        self.watches[lits[1] as usize].push(Watch {
            cref,
            blocker: lits[0],
        });
        self.clauses.push(Clause {
            lits,
            learnt,
            deleted: false,
            lbd,
            activity: 0.0,
        });
        if learnt {
            self.learnts.push(cref);
        }
        cref
    }

    fn propagate(&mut self) -> Option<CRef> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                if self.clauses[cref].deleted {
                    continue;
                }
                {
                    let lits = &mut self.clauses[cref].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                }
                let first = self.clauses[cref].lits[0];
                let nw = Watch {
                    cref: w.cref,
                    blocker: first,
                };
                if first != w.blocker && self.value(first) == TRUE {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[cref].lits[k];
                    if self.value(l) != FALSE {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[l as usize].push(nw);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = nw;
                j += 1;
                if self.value(first) == FALSE {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, Some(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: usize) {
        let c = &mut self.clauses[cref];
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn abstract_level(&self, v: usize) -> u32 {
        1 << (self.level[v] & 31)
    }

    fn redundant(&mut self, p: Lit, levels: u32) -> bool {
        self.stack.clear();
        self.stack.push(p);
        let top = self.to_clear.len();
        while let Some(q) = self.stack.pop() {
            let cref = self.reason[var(q)].expect("redundancy check on a decision") as usize;
            for k in 1..self.clauses[cref].lits.len() {
                let l = self.clauses[cref].lits[k];
                let v = var(l);
                if self.seen[v] == 0 && self.level[v] > 0 {
                    if self.reason[v].is_some() && self.abstract_level(v) & levels != 0 {
                        self.seen[v] = 1;
                        self.stack.push(l);
                        self.to_clear.push(v);
                    } else {
                        for &u in &self.to_clear[top..] {
                            self.seen[u] = 0;
                        }
                        self.to_clear.truncate(top);
                        return false;
                    }
                }
            }
        }
        true
    }

    fn analyze(&mut self, mut confl: CRef) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut path = 0;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let dl = self.decision_level();
        loop {
            let cref = confl as usize;
            if self.clauses[cref].learnt {
                self.bump_clause(cref);
            }
            let start = usize::from(p.is_some());
            for k in start..self.clauses[cref].lits.len() {
                let q = self.clauses[cref].lits[k];
                let v = var(q);
                if self.seen[v] == 0 && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = 1;
                    if self.level[v] >= dl {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var(self.trail[idx])] != 0 {
                    break;
                }
            }
            let pl = self.trail[idx];
            p = Some(pl);
            self.seen[var(pl)] = 0;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[var(pl)].expect("implied literal has a reason");
        }
        learnt[0] = p.unwrap() ^ 1;

        self.to_clear.clear();
        self.to_clear.extend(learnt.iter().map(|&l| var(l)));
        let levels = learnt[1..]
            .iter()
            .fold(0, |acc, &l| acc | self.abstract_level(var(l)));
        let mut kept = vec![learnt[0]];
        for k in 1..learnt.len() {
            let l = learnt[k];
            if self.reason[var(l)].is_none() || !self.redundant(l, levels) {
                kept.push(l);
            }
        }
        for &v in &self.to_clear {
            self.seen[v] = 0;
        }
        self.to_clear.clear();

        let mut bt = 0;
        if kept.len() > 1 {
            let mut max_i = 1;
            for k in 2..kept.len() {
                if self.level[var(kept[k])] > self.level[var(kept[max_i])] {
                    max_i = k;
                }
            }
            kept.swap(1, max_i);
            bt = self.level[var(kept[1])];
        }
        (kept, bt)
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|&l| self.level[var(l)]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let lim = self.trail_lim[lvl as usize];
        for k in (lim..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = var(l);
            self.phase[v] = l & 1 == 0;
            self.assigns[v] = UNDEF;
            self.reason[v] = None;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = lim;
    }

    fn locked(&self, cref: CRef) -> bool {
        let c = &self.clauses[cref as usize];
        let l = c.lits[0];
        self.value(l) == TRUE && self.reason[var(l)] == Some(cref)
    }

    fn reduce_db(&mut self) {
        let mut cands: Vec<CRef> = self
            .learnts
            .iter()
            .copied()
            .filter(|&c| {
                let cl = &self.clauses[c as usize];
                !cl.deleted && cl.lbd > 2 && cl.lits.len() > 2
            })
            .collect();
        cands.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            cb.lbd
                .cmp(&ca.lbd)
                .then(ca.activity.partial_cmp(&cb.activity).unwrap())
        });
        let remove = cands.len() / 2;
        for &c in &cands[..remove] {
            if !self.locked(c) {
                let cl = &mut self.clauses[c as usize];
                cl.deleted = true;
                cl.lits = Vec::new();
            }
        }
        let clauses = &self.clauses;
        self.learnts.retain(|&c| !clauses[c as usize].deleted);
        for ws in self.watches.iter_mut() {
            ws.retain(|w| !clauses[w.cref as usize].deleted);
        }
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == UNDEF {
                return Some(((v as u32) << 1) | (!self.phase[v]) as u32);
            }
        }
        None
    }

    fn search(&mut self, deadline: Option<Instant>) -> Outcome {
        let mut restart_no = 0u64;
        let mut max_learnts = (self.clauses.len() as f64 / 3.0).max(2000.0);
        loop {
            let budget = (luby(2.0, restart_no) * 100.0) as u64;
            restart_no += 1;
            let mut local = 0u64;
            loop {
                if let Some(confl) = self.propagate() {
                    self.conflicts += 1;
                    local += 1;
                    if self.decision_level() == 0 {
                        return Outcome::Unsat;
                    }
                    let (learnt, bt) = self.analyze(confl);
                    self.cancel_until(bt);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], None);
                    } else {
                        let lbd = self.lbd(&learnt);
                        let first = learnt[0];
                        let cref = self.attach(learnt, true, lbd);
                        self.bump_clause(cref as usize);
                        self.enqueue(first, Some(cref));
                    }
                    self.var_inc /= 0.95;
                    self.cla_inc /= 0.999;
                    if self.conflicts % 256 == 0 {
                        if let Some(d) = deadline {
                            if Instant::now() >= d {
                                return Outcome::Timeout;
                            }
                        }
                    }
                } else {
                    if local >= budget {
                        self.cancel_until(0);
                        break;
                    }
                    if self.learnts.len() as f64 >= max_learnts + self.trail.len() as f64 {
                        self.reduce_db();
                        max_learnts *= 1.1;
                    }
                    match self.pick_branch() {
                        None => return Outcome::Sat,
                        Some(l) => {
                            self.trail_lim.push(self.trail.len());
                            self.enqueue(l, None);
                        }
                    }
                }
            }
        }
    }
}

/// The embedded solver. Every call starts from scratch.
#[derive(Clone, Debug, Default)]
pub struct Cdcl {
    last_conflicts: u64,
}

impl Cdcl {
    pub fn new() -> Self {
        Cdcl::default()
    }

    /// Conflicts spent by the most recent call.
    pub fn conflicts(&self) -> u64 {
        self.last_conflicts
    }

    pub fn solve_formula(&mut self, cnf: &Cnf, timeout: Option<Duration>) -> SolverVerdict {
        let deadline = timeout.map(|t| Instant::now() + t);
        let n = cnf.num_vars() as usize;
        let mut s = Search::new(n);
        for c in cnf.clauses() {
            if !s.add_original(c) {
                self.last_conflicts = 0;
                return SolverVerdict::Unsat;
            }
        }
        let outcome = s.search(deadline);
        self.last_conflicts = s.conflicts;
        match outcome {
            Outcome::Unsat => SolverVerdict::Unsat,
            Outcome::Timeout => SolverVerdict::Unknown,
            Outcome::Sat => {
                let mut model = vec![false; n + 1];
                for v in 0..n {
                    model[v + 1] = s.assigns[v] == TRUE;
                }
                SolverVerdict::Sat(model)
            }
        }
    }
}

impl SatSolver for Cdcl {
    fn solve(&mut self, cnf: &Cnf, timeout: Option<Duration>) -> Result<SolverVerdict> {
        Ok(self.solve_formula(cnf, timeout))
    }

    fn name(&self) -> &str {
        "embedded-cdcl"
    }
}
