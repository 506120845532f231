//! Majority and sorting with synthesized comparators after the counter.

use std::time::{Duration, Instant};

use boolcirc::generators::{gen_maj, gen_maj_hybrid, gen_sort, gen_sort_hybrid, HybridOptions};
use boolcirc::Basis;

fn main() -> boolcirc::Result<()> {
    let opts = HybridOptions {
        tail_timeout: Duration::from_secs(10),
        minimize_budget: Duration::from_secs(60),
    };
    for n in [5, 7, 9] {
        let start = Instant::now();
        let manual = gen_maj(n, Basis::Xaig, false)?.size();
        let hybrid = gen_maj_hybrid(n, Basis::Xaig, &opts)?.size();
        println!("MAJ_{n}: manual {manual}, hybrid {hybrid} ({:.1?})", start.elapsed());
    }
    let start = Instant::now();
    let manual = gen_sort(8, Basis::Xaig, false)?.size();
    let hybrid = gen_sort_hybrid(8, Basis::Xaig, &opts)?.size();
    println!("SORT_8: manual {manual}, hybrid {hybrid} ({:.1?})", start.elapsed());
    Ok(())
}
