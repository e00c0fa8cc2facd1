//! Coefficient growth of unit powers and the resulting bound on the
//! Fibonacci index.
//!
//! ```bash
//! cargo run --release --example growth_and_index -- 11 47
//! ```

use fibpow::numberfield::{load_units, NumberField};
use fibpow::search::{growth_constant, index_bound, max_power_coefficient};

fn main() -> fibpow::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(11);
    let k3 = args.next().flatten().unwrap_or(47);

    let field = NumberField::new(n)?;
    let units = load_units(n)?;
    let m = growth_constant(field.poly());
    let v = max_power_coefficient(&units, &field, k3)?;
    println!("M = {m}");
    println!("v = {v}");
    println!("m_max = {}", index_bound(&m, &v, n as usize)?);
    Ok(())
}
