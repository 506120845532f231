//! Circuit satisfiability through the Tseitin encoding.

use boolcirc::generators::gen_maj;
use boolcirc::sat::dimacs::to_dimacs;
use boolcirc::sat::{is_satisfiable, tseitin, Cdcl, SatSolver, Satisfiability};
use boolcirc::Basis;

fn main() -> boolcirc::Result<()> {
    let maj = gen_maj(5, Basis::Xaig, false)?;
    let cnf = tseitin(&maj);
    println!("MAJ_5: size {}, CNF with {} variables and {} clauses", maj.size(), cnf.num_vars(), cnf.num_clauses());
    println!("{}", to_dimacs(&cnf).lines().take(4).collect::<Vec<_>>().join("\n"));

    for target in [true, false] {
        match is_satisfiable(&maj, Some(&[target]))? {
            Satisfiability::Satisfiable(x) => println!("MAJ_5 = {} at {:?}", target as u8, x),
            other => println!("MAJ_5 = {}: {other:?}", target as u8),
        }
    }

    // x AND NOT x: the embedded solver refutes it directly
    let mut c = boolcirc::Circuit::with_inputs(1);
    let x = c.inputs()[0];
    let nx = c.add_not(x)?;
    let g = c.add_binary(boolcirc::BinOp::And, x, nx)?;
    c.set_outputs(vec![g])?;
    let mut f = tseitin(&c);
    f.add_clause(&[f.var_of(g).unwrap()]);
    let mut solver = Cdcl::new();
    println!("x & !x: {:?} ({})", solver.solve(&f, None)?, solver.name());
    Ok(())
}
