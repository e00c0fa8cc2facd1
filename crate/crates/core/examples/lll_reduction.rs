//! Shrink the initial bound for one root index by repeated lattice
//! reduction.
//!
//! ```bash
//! cargo run --release --example lll_reduction -- 7 3
//! ```

use fibpow::bounds::{linear_form_data, CaseSelector, FieldLedger};
use fibpow::lll::{reduce_to_fixpoint, LinearForm, ReductionConfig};
use fibpow::numberfield::{load_units, unit_logs, NumberField};
use fibpow::polynomial::delta_minpoly_data;

fn main() -> fibpow::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(5);
    let j = args.next().flatten().unwrap_or(1) as usize;

    let field = NumberField::new(n)?;
    let units = load_units(n)?;
    let dm = delta_minpoly_data(&field, 0, 1, 2)?;
    let ledger = FieldLedger::new(&field, &units, dm.leading, dm.degree, 256)?;
    let sel = CaseSelector::new(n as usize, j - 1);
    let c = ledger.case(sel, field.galois_degree())?;

    let source = |prec: u32| {
        let roots: Vec<_> = field.roots(prec)?.iter().map(|r| r.with_precision(prec)).collect();
        let logs = unit_logs(&units, &field, prec)?;
        let (delta, mu) = linear_form_data(&roots, &logs, sel)?;
        Ok(LinearForm { delta, mu })
    };
    let trace = reduce_to_fixpoint(&source, &c.k1, &c.k2, &c.initial.k3, &ReductionConfig::default())?;
    for r in &trace.records {
        match &r.k3_out {
            Some(k) => println!("step {:2}: sigma1 2^{}, {} -> {}", r.iteration, r.sigma1.bits() - 1, r.k3_in, k),
            None => println!("step {:2}: sigma1 2^{}, {}", r.iteration, r.sigma1.bits() - 1, r.failure.as_deref().unwrap_or("")),
        }
    }
    println!("final bound for j = {j}: {}", trace.final_k3);
    Ok(())
}
