//! Minimum circuits for small total and partial functions.

use std::time::Duration;

use boolcirc::circuit::bench;
use boolcirc::function::{named_function, NamedFunction};
use boolcirc::synth::{synthesize_min, SynthesisOptions, SynthesisStatus};
use boolcirc::{Basis, PartialTruthTable};

fn main() -> boolcirc::Result<()> {
    let opts = SynthesisOptions {
        timeout: Some(Duration::from_secs(60)),
        ..Default::default()
    };
    for basis in [Basis::Xaig, Basis::Aig] {
        for n in 2..=3 {
            let sum = named_function(NamedFunction::Sum, n)?;
            let res = synthesize_min(&sum, basis, 8, &opts)?;
            if let SynthesisStatus::Found(c) = &res.status {
                println!("SUM_{n} in {basis}: minimum {} ({} queries, {:.0?})", c.size(), res.stats.queries, res.stats.solver_time);
            }
        }
    }

    // [x1 + x2 + x3 >= 2] where rows with x1 = x2 = x3 are unspecified
    let t = PartialTruthTable::from_binary_columns(&["*001011*"])?;
    let res = synthesize_min(&t, Basis::Xaig, 6, &opts)?;
    if let Some(c) = res.circuit() {
        println!("\npartial majority {}: size {}", t.to_binary_columns()[0], c.size());
        print!("{}", bench::to_bench(c));
    }
    Ok(())
}
