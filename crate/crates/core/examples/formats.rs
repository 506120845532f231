//! BENCH text, AIGER ASCII and DOT.

use boolcirc::circuit::{aiger, bench, dot};
use boolcirc::generators::gen_half_adder;
use boolcirc::Basis;

fn main() -> boolcirc::Result<()> {
    let ha = gen_half_adder(Basis::Aig);
    let text = bench::to_bench(&ha);
    println!("{text}");
    let aag = aiger::to_aiger(&ha)?;
    println!("{aag}");
    let back = aiger::parse_aiger(&aag)?;
    println!("AIGER round trip keeps the function: {}", back.truth_table()? == ha.truth_table()?);
    let reparsed = bench::parse_bench(&text)?;
    println!("BENCH round trip keeps the text: {}\n", bench::to_bench(&reparsed) == text);
    print!("{}", dot::to_dot(&ha));
    Ok(())
}
