mod common;

use boolcirc::function::{named_function, NamedFunction};
use boolcirc::sat::Cdcl;
use boolcirc::synth::*;
use boolcirc::{Basis, PartialTruthTable, TruthTable};
use proptest::prelude::*;

fn untimed(symmetry_breaking: bool) -> SynthesisOptions {
    SynthesisOptions {
        symmetry_breaking,
        timeout: None,
    }
}

fn min_size(t: &PartialTruthTable, basis: Basis, upper: usize, sb: bool) -> Option<usize> {
    match synthesize_min_with(t, basis, upper, &untimed(sb), &mut Cdcl::new()).unwrap().status {
        SynthesisStatus::Found(c) => {
            assert!(c.validate_basis(basis).is_empty());
            assert!(t.is_matched_by(&c.truth_table().unwrap()));
            Some(c.size())
        }
        SynthesisStatus::None => None,
        SynthesisStatus::Unknown(_) => panic!("untimed query gave up"),
    }
}

fn fixed(t: &PartialTruthTable, basis: Basis, size: usize) -> SynthesisStatus {
    let spec = SynthesisSpec::new(t.clone(), basis, size).with_options(untimed(true));
    synthesize_fixed_size_with(&spec, &mut Cdcl::new()).unwrap().status
}

fn sum(n: usize) -> PartialTruthTable {
    named_function(NamedFunction::Sum, n).unwrap()
}

#[test]
fn adder_minimum_sizes() {
    assert_eq!(min_size(&sum(2), Basis::Xaig, 4, true), Some(2));
    assert_eq!(min_size(&sum(2), Basis::Aig, 5, true), Some(3));
    assert_eq!(min_size(&sum(3), Basis::Xaig, 6, true), Some(5));
    assert_eq!(min_size(&sum(3), Basis::Aig, 8, true), Some(7));
    assert_eq!(fixed(&sum(3), Basis::Xaig, 4), SynthesisStatus::None);
}

#[test]
fn single_output_sizes_match_enumeration() {
    let oracle = common::min_sizes3(4);
    for f in 0..=255u8 {
        let want = oracle[f as usize];
        assert_ne!(want, u8::MAX, "function {f:#04x} needs more than 4 gates");
        let t = TruthTable::from_hex_columns(3, &[format!("{f:02x}")]).unwrap().to_partial();
        assert_eq!(min_size(&t, Basis::Xaig, 5, true), Some(want as usize), "function {f:#04x}");
    }
}

#[test]
fn too_small_upper_bound_gives_none() {
    assert_eq!(min_size(&sum(3), Basis::Xaig, 4, true), None);
    match fixed(&sum(3), Basis::Xaig, 5) {
        SynthesisStatus::Found(c) => assert_eq!(c.size(), 5),
        other => panic!("{other:?}"),
    }
}

#[test]
fn dont_cares_are_exploited() {
    // x1 AND x2 where x1 = x2 = 1 never matters: constant zero suffices
    let t = PartialTruthTable::from_binary_columns(&["000*"]).unwrap();
    assert_eq!(min_size(&t, Basis::Xaig, 3, true), Some(0));
    let full = PartialTruthTable::from_binary_columns(&["0001"]).unwrap();
    assert_eq!(min_size(&full, Basis::Xaig, 3, true), Some(1));
}

#[test]
fn inputs_are_capped() {
    let t = PartialTruthTable::from_fn(11, 1, |_| vec![Some(false)]).unwrap();
    assert!(synthesize_min(&t, Basis::Xaig, 3, &SynthesisOptions::default()).is_err());
}

fn partial_table() -> impl Strategy<Value = PartialTruthTable> {
    (1usize..=2, prop::collection::vec(0u8..3, 16)).prop_map(|(m, cells)| {
        let cols: Vec<String> = (0..m)
            .map(|j| (0..8).map(|t| ['0', '1', '*'][cells[8 * j + t] as usize]).collect())
            .collect();
        PartialTruthTable::from_binary_columns(&cols).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Turning a care row into a don't care never increases the minimum.
    #[test]
    fn more_dont_cares_never_cost_more(t in partial_table(), row in 0usize..8, col in 0usize..2) {
        let before = min_size(&t, Basis::Xaig, 8, true).unwrap();
        let col = col % t.outputs();
        let mut care = t.care().to_vec();
        care[col].set(row, false);
        let mut values = t.values().to_vec();
        values[col].set(row, false);
        let relaxed = PartialTruthTable::new(3, values, care).unwrap();
        prop_assert!(min_size(&relaxed, Basis::Xaig, 8, true).unwrap() <= before);
    }

    #[test]
    fn symmetry_breaking_keeps_the_minimum(t in partial_table()) {
        prop_assert_eq!(min_size(&t, Basis::Xaig, 8, true), min_size(&t, Basis::Xaig, 8, false));
    }

    #[test]
    fn fixed_size_is_monotone(t in partial_table(), r in 0usize..7) {
        let found = |s| matches!(fixed(&t, Basis::Xaig, s), SynthesisStatus::Found(_));
        if found(r) {
            prop_assert!(found(r + 1));
        }
    }
}
