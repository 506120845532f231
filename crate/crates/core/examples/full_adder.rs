//! Builds a full adder by hand and compares it with the generated ones.

use boolcirc::circuit::bench;
use boolcirc::generators::gen_full_adder;
use boolcirc::sat::{check_equivalence, Equivalence};
use boolcirc::{Basis, BinOp, Circuit};

fn main() -> boolcirc::Result<()> {
    let mut c = Circuit::new();
    let x = c.add_input("x")?;
    let y = c.add_input("y")?;
    let z = c.add_input("z")?;
    let a = c.add_binary(BinOp::Xor, x, y)?;
    let sum = c.add_binary(BinOp::Xor, a, z)?;
    let b = c.add_binary(BinOp::And, x, y)?;
    let d = c.add_binary(BinOp::And, a, z)?;
    let carry = c.add_binary(BinOp::Or, b, d)?;
    c.set_outputs(vec![sum, carry])?;

    println!("hand-made full adder, size {}", c.size());
    for t in 0..8u64 {
        let x: Vec<bool> = (0..3).map(|i| t >> i & 1 == 1).collect();
        println!("  {:?} -> {:?}", x, c.evaluate(&x)?);
    }

    for basis in [Basis::Xaig, Basis::Aig] {
        let g = gen_full_adder(basis);
        let same = check_equivalence(&c, &g)? == Equivalence::Equivalent;
        println!("\n{basis} full adder, size {}, equivalent: {same}", g.size());
        print!("{}", bench::to_bench(&g));
    }
    Ok(())
}
