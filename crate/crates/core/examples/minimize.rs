//! Shrinks the adder-based SUM_5 circuit by replacing small windows.

use std::time::Duration;

use boolcirc::generators::gen_sum;
use boolcirc::minimize::{minimize_subcircuits_with, MinimizeOptions};
use boolcirc::sat::{check_equivalence, Cdcl};
use boolcirc::Basis;

fn main() -> boolcirc::Result<()> {
    let sum5 = gen_sum(5, Basis::Xaig)?;
    println!("SUM_5 from full and half adders: size {}", sum5.size());
    for b in sum5.blocks() {
        println!("  block {} with {} gates", b.name, b.gates.len());
    }
    let opts = MinimizeOptions::new(Basis::Xaig, Duration::from_secs(300));
    let (min, stats) = minimize_subcircuits_with(&sum5, &opts, &mut Cdcl::new())?;
    println!(
        "minimized: size {} after {} windows, {} replacements",
        min.size(),
        stats.windows_tried,
        stats.replacements
    );
    println!("equivalence: {:?}", check_equivalence(&sum5, &min)?);
    Ok(())
}
