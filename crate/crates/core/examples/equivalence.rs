//! Miter-based equivalence checking with counterexamples.

use boolcirc::generators::{gen_maj, gen_sort};
use boolcirc::minimize::cleanup;
use boolcirc::sat::{build_miter, check_equivalence};
use boolcirc::{Basis, Circuit};

fn main() -> boolcirc::Result<()> {
    let maj = gen_maj(7, Basis::Xaig, false)?;
    let clean = cleanup(&maj);
    println!("MAJ_7 vs its cleanup: {:?}", check_equivalence(&maj, &clean)?);

    // the middle output of SORT_7 is MAJ_7
    let sort = gen_sort(7, Basis::Xaig, false)?;
    let mut mid = sort.clone();
    mid.set_outputs(vec![sort.outputs()[3]])?;
    println!("MAJ_7 vs SORT_7[3]: {:?}", check_equivalence(&maj, &mid)?);
    let mut low = sort.clone();
    low.set_outputs(vec![sort.outputs()[2]])?;
    println!("MAJ_7 vs SORT_7[2]: {:?}", check_equivalence(&maj, &low)?);

    let m: Circuit = build_miter(&maj, &low)?;
    println!("miter: {} inputs, size {}, blocks {:?}", m.num_inputs(), m.size(), m.blocks().iter().map(|b| &b.name).collect::<Vec<_>>());
    Ok(())
}
