//! Walk every unit product in a box and report those of the form `A − Bθ`.
//!
//! ```bash
//! cargo run --release --example unit_enumeration -- 5 12
//! ```

use fibpow::numberfield::{load_units, NumberField};
use fibpow::search::direct_enumeration;

fn main() -> fibpow::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(5);
    let bound = args.next().flatten().unwrap_or(12) as u32;

    let field = NumberField::new(n)?;
    let units = load_units(n)?;
    let t = std::time::Instant::now();
    let hits = direct_enumeration(&field, &units, bound, 1 << 40)?;
    println!("n = {n}, |a_i| <= {bound}: {:.1?}", t.elapsed());
    for h in hits {
        println!("  exponents {:?} give (A, B) = ({}, {})", h.exponents, h.a, h.b);
    }
    Ok(())
}
