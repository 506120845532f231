//! Reference functions, their tables and structural properties.

use boolcirc::function::{is_monotone, is_symmetric, named_function, NamedFunction};
use boolcirc::TruthTable;

fn main() -> boolcirc::Result<()> {
    for (f, n) in [
        (NamedFunction::Maj, 5),
        (NamedFunction::Sum, 4),
        (NamedFunction::Sort, 3),
        (NamedFunction::Mult, 2),
        (NamedFunction::Sqrt, 4),
        (NamedFunction::Div, 2),
    ] {
        let t = named_function(f, n)?;
        println!(
            "{f:?}_{n}: {} inputs, {} outputs, {} don't-care entries",
            t.inputs(),
            t.outputs(),
            t.dont_care_count()
        );
        for col in t.to_binary_columns() {
            println!("  {col}");
        }
        if let Some(total) = t.to_total() {
            println!("  symmetric {}, monotone {}", is_symmetric(&total), is_monotone(&total));
        }
    }

    let xor3 = TruthTable::from_hex_columns(3, &["96"])?;
    println!("\nx1^x2^x3 = {:?}, rows: {}", xor3.to_hex_columns(), xor3.to_binary_columns()[0]);
    Ok(())
}
