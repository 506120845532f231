mod common;

use std::collections::BTreeSet;
use std::time::Duration;

use boolcirc::db::*;
use boolcirc::{Basis, PartialTruthTable, TruthTable};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    for k in 0..n {
        all = all
            .into_iter()
            .flat_map(|p| (0..=k).map(move |pos| {
                let mut q = p.clone();
                q.insert(pos, k);
                q
            }))
            .collect();
    }
    all
}

/// Column of `f` after substituting `x_{p[i]} ^ neg_i` for input i.
fn substitute(n: usize, f: u8, p: &[usize], neg: usize) -> u8 {
    let mut g = 0u8;
    for x in 0..1usize << n {
        let y = (0..n).fold(0, |y, i| y | ((x >> p[i] & 1) ^ (neg >> i & 1)) << i);
        g |= (f >> y & 1) << x;
    }
    g
}

/// Number of orbits of `m`-tuples of `n`-input functions, counted by
/// brute-force closure under every input transform, output permutation and
/// output negation.
fn orbit_count(n: usize, m: usize) -> usize {
    let rows = 1usize << n;
    let full = ((1u16 << rows) - 1) as u8;
    let fns = 1usize << rows;
    let transforms: Vec<(Vec<usize>, usize)> =
        perms(n).into_iter().flat_map(|p| (0..1 << n).map(move |s| (p.clone(), s))).collect();
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    let mut tuple = vec![0u8; m];
    for code in 0..fns.pow(m as u32) {
        for (j, t) in tuple.iter_mut().enumerate() {
            *t = (code / fns.pow(j as u32) % fns) as u8;
        }
        if seen.contains(&tuple) {
            continue;
        }
        orbits += 1;
        for (p, s) in &transforms {
            let moved: Vec<u8> = tuple.iter().map(|&f| substitute(n, f, p, *s)).collect();
            for op in perms(m) {
                for neg in 0..1usize << m {
                    let img: Vec<u8> =
                        (0..m).map(|j| if neg >> j & 1 == 1 { !moved[op[j]] & full } else { moved[op[j]] }).collect();
                    seen.insert(img);
                }
            }
        }
    }
    orbits
}

#[test]
fn function_totals() {
    let mut want = 0u128;
    for n in 2..=3u32 {
        for m in 1..=3 {
            want += binomial(1u128 << (1u32 << n), m);
        }
    }
    assert_eq!(want, 2_797_112);
    assert_eq!(total_function_count(2..=3, 1..=3), want);
    assert_eq!(function_count(3, 2), 32_640);
}

#[test]
fn class_counts_match_orbit_closure() {
    for (n, m) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)] {
        let classes = enumerate_classes(n, m).unwrap();
        assert_eq!(classes.len(), orbit_count(n, m), "B_{n},{m}");
        let ordered: u64 = classes.iter().map(|c| c.ordered).sum();
        let distinct: u64 = classes.iter().map(|c| c.distinct).sum();
        let fns = 1u64 << (1 << n);
        assert_eq!(ordered, fns.pow(m as u32));
        assert_eq!(distinct as u128, function_count(n, m));
    }
    assert_eq!(enumerate_classes(2, 1).unwrap().len(), 4);
    assert_eq!(enumerate_classes(3, 1).unwrap().len(), 14);
}

#[test]
fn key_is_invariant_under_1000_random_transforms() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let rows = 1usize << n;
        let cols: Vec<String> = (0..m).map(|_| (0..rows).map(|_| if rng.gen() { '1' } else { '0' }).collect()).collect();
        let f = TruthTable::from_binary_columns(&cols).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut out_perm: Vec<usize> = (0..m).collect();
        out_perm.shuffle(&mut rng);
        let t = Transform {
            perm,
            in_neg: rng.gen_range(0..1 << n),
            out_perm,
            out_neg: rng.gen_range(0..1 << m),
        };
        let g = t.apply(&f).unwrap();
        let (kf, to_key) = canonical_key(&f).unwrap();
        assert_eq!(canonical_key(&g).unwrap().0, kf);
        assert_eq!(to_key.apply(&f).unwrap(), kf.to_table());
    }
}

#[test]
fn single_output_database_is_optimal() {
    let db = build_database(Basis::Xaig, 3, 1, Duration::from_secs(600)).unwrap();
    assert!(db.is_complete());
    let oracle = common::min_sizes3(4);
    for f in 0..=255u8 {
        let t = TruthTable::from_hex_columns(3, &[format!("{f:02x}")]).unwrap();
        let c = db.lookup(&t).expect("every function is covered");
        assert_eq!(c.truth_table().unwrap(), t);
        assert_eq!(c.size(), oracle[f as usize] as usize, "function {f:#04x}");
    }
    let s3 = db.stats().into_iter().find(|s| (s.n, s.m) == (3, 1)).unwrap();
    assert_eq!(s3.classes, 14);
    assert_eq!(s3.proven, 14);
    assert_eq!(*s3.histogram.keys().max().unwrap(), 4);
    assert!(db.entries.values().all(|e| e.optimality == Optimality::Proven));
}

#[test]
fn store_round_trip_and_partial_lookup() {
    let db = build_database(Basis::Aig, 2, 2, Duration::from_secs(600)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("small.db");
    db.save(&path).unwrap();
    let back = Database::load(&path).unwrap();
    same_entries(&back, &db);

    // half adder with the carry of row 3 left open
    let ha = PartialTruthTable::from_binary_columns(&["0110", "000*"]).unwrap();
    let c = back.lookup_partial(&ha).unwrap();
    assert!(ha.is_matched_by(&c.truth_table().unwrap()));
    assert!(c.validate_basis(Basis::Aig).is_empty());
    let three_in = TruthTable::from_hex_columns(3, &["e8"]).unwrap();
    assert!(back.lookup(&three_in).is_none());
    let open = PartialTruthTable::from_binary_columns(&["****"]).unwrap();
    assert!(back.lookup_partial(&open).is_none());
}

fn same_entries(a: &Database, b: &Database) {
    assert_eq!(a.basis, b.basis);
    assert_eq!(a.slices, b.slices);
    assert_eq!(a.entries.len(), b.entries.len());
    for (k, e) in &a.entries {
        let f = &b.entries[k];
        assert_eq!((e.size, e.optimality, e.ordered, e.distinct), (f.size, f.optimality, f.ordered, f.distinct));
        assert_eq!(e.circuit.truth_table().unwrap(), f.circuit.truth_table().unwrap());
    }
}

#[test]
fn corrupt_files_are_rejected() {
    let db = build_database(Basis::Xaig, 2, 1, Duration::from_secs(60)).unwrap();
    let text = db.to_text();
    same_entries(&Database::from_text(&text).unwrap(), &db);
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let records: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].starts_with("2 ")).collect();
    let (a, b) = (records[1], records[2]);
    let split = |l: &str| l.rsplit_once(' ').map(|(h, t)| (h.to_string(), t.to_string())).unwrap();
    let ((ha, ca), (hb, cb)) = (split(&lines[a]), split(&lines[b]));
    lines[a] = format!("{ha} {cb}");
    lines[b] = format!("{hb} {ca}");
    assert!(Database::from_text(&lines.join("\n")).is_err());
    assert!(Database::from_text("not a database").is_err());
}
