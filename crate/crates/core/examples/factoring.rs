//! Integer factoring as circuit satisfiability.

use boolcirc::generators::{decode_factors, reduce_factoring};
use boolcirc::sat::{is_satisfiable, Satisfiability};

fn main() -> boolcirc::Result<()> {
    for k in [15u64, 91, 221, 1009, 3127, 65_521, 999_997] {
        let c = reduce_factoring(k)?;
        match is_satisfiable(&c, None)? {
            Satisfiability::Satisfiable(x) => {
                let (p, q) = decode_factors(k, &x)?;
                println!("{k} = {p} * {q}   (circuit size {})", c.size());
            }
            Satisfiability::Unsatisfiable => println!("{k} is prime   (circuit size {})", c.size()),
            Satisfiability::Unknown => println!("{k}: gave up"),
        }
    }
    Ok(())
}
