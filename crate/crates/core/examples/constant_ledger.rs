//! Per-root constants and the initial bound on the unit exponents.
//!
//! ```bash
//! cargo run --release --example constant_ledger -- 11
//! ```

use fibpow::bounds::{CaseSelector, FieldLedger};
use fibpow::numberfield::{load_units, NumberField};
use fibpow::polynomial::delta_minpoly_data;

fn main() -> fibpow::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let field = NumberField::new(n)?;
    let units = load_units(n)?;
    let dm = delta_minpoly_data(&field, 0, 1, 2)?;
    println!("delta minimal polynomial: degree {}, leading {}", dm.degree, dm.leading);

    let ledger = FieldLedger::new(&field, &units, dm.leading, dm.degree, 256)?;
    println!("c2 = {:.6}", ledger.c2.to_f64());
    println!(" j        c1       c6      c6T         c7         K1       K2      K2T  K3");
    for sel in CaseSelector::all(n as usize) {
        let c = ledger.case(sel, field.galois_degree())?;
        println!(
            "{:2} {:9.4} {:8.4} {:8.4} {:10.4e} {:10.4e} {:8.4} {:8.4}  1e{}",
            sel.j + 1,
            c.sep.c1.to_f64(),
            c.c6.c6.to_f64(),
            c.c6.c6_transposed.to_f64(),
            c.c7.to_f64(),
            c.k1.to_f64(),
            c.k2.to_f64(),
            c.k2_transposed.to_f64(),
            c.initial.exponent10,
        );
    }
    Ok(())
}
