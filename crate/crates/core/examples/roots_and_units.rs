//! Build `f_n`, certify it irreducible, print its real roots and check the
//! bundled unit system.
//!
//! ```bash
//! cargo run --release --example roots_and_units -- 7
//! ```

use fibpow::numberfield::{load_units, verify_unit_system, NumberField};
use fibpow::polynomial::{build_fn, certify_irreducible};

fn main() -> fibpow::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let f = build_fn(n)?;
    println!("f_{n}(x) = {f}");
    println!("irreducibility: {:?}", certify_irreducible(&f, 1000));

    let field = NumberField::new(n)?;
    for (i, r) in field.roots(128)?.iter().enumerate() {
        let (lo, hi) = r.to_decimal(15);
        println!("theta_{:<2} in [{lo}, {hi}]", i + 1);
    }

    let units = load_units(n)?;
    let rep = verify_unit_system(&units, &field)?;
    println!("{} units, norms {:?}, integral {}", rep.count, rep.norms, rep.integral);
    println!("regulator determinant in [{}, {}]", rep.regulator_det.0, rep.regulator_det.1);
    Ok(())
}
