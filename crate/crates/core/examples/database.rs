//! Builds the database of optimal small circuits and queries it.

use std::time::{Duration, Instant};

use boolcirc::db::{build_database, canonical_key, total_function_count};
use boolcirc::{Basis, PartialTruthTable, TruthTable};

fn main() -> boolcirc::Result<()> {
    println!("functions with 2..3 inputs and 1..3 outputs: {}", total_function_count(2..=3, 1..=3));
    let start = Instant::now();
    let db = build_database(Basis::Xaig, 3, 1, Duration::from_secs(600))?;
    println!("built {} classes in {:.1?}", db.entries.len(), start.elapsed());
    for s in db.stats() {
        let hist: Vec<String> = s.histogram.iter().map(|(size, b)| format!("{size}:{}", b.distinct)).collect();
        println!("  B{},{}: {} classes, {} proven, functions by size {}", s.n, s.m, s.classes, s.proven, hist.join(" "));
    }

    let maj3 = TruthTable::from_hex_columns(3, &["e8"])?;
    let (key, _) = canonical_key(&maj3)?;
    let c = db.lookup(&maj3).expect("covered");
    println!("\nMAJ_3 is in class {key}; circuit of size {}", c.size());

    let partial = PartialTruthTable::from_binary_columns(&["0110100*"])?;
    if let Some(c) = db.lookup_partial(&partial) {
        println!("{}: size {}", partial.to_binary_columns()[0], c.size());
    }

    let path = std::env::temp_dir().join("boolcirc-example.db");
    db.save(&path)?;
    println!("saved to {}", path.display());
    Ok(())
}
