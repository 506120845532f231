//! Sizes of the generated families in both bases.

use boolcirc::generators::*;
use boolcirc::Basis;

fn main() -> boolcirc::Result<()> {
    println!("{:>3} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}", "n", "SUM", "MAJ", "SORT", "MULT", "SQR", "DIV");
    for n in 2..=12 {
        let row = |basis| -> boolcirc::Result<String> {
            Ok(format!(
                "{:>4} {:>4} {:>4} {:>4} {:>4} {:>4}",
                gen_sum(n, basis)?.size(),
                gen_maj(n, basis, false)?.size(),
                gen_sort(n, basis, false)?.size(),
                gen_mult(n, basis)?.size(),
                gen_square(n, basis)?.size(),
                gen_div(n, basis)?.size(),
            ))
        };
        let (x, a) = (row(Basis::Xaig)?, row(Basis::Aig)?);
        let (x, a): (Vec<&str>, Vec<&str>) = (x.split_whitespace().collect(), a.split_whitespace().collect());
        let cells: Vec<String> = x.iter().zip(&a).map(|(x, a)| format!("{x:>4}/{a:<4}")).collect();
        println!("{n:>3} {}", cells.join(" "));
    }
    println!("\nentries are XAIG/AIG sizes");
    Ok(())
}
