//! Power-residue sieve over Fibonacci indices, with the two classic
//! positive controls.
//!
//! ```bash
//! cargo run --release --example residue_sieve -- 11 75913
//! ```

use fibpow::search::{check_survivors, fib_mod_scan, fibonacci, ScanMode, SievePanel};

fn main() -> fibpow::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let q = args.next().flatten().unwrap_or(11);
    let m_max = args.next().flatten().unwrap_or(75913);

    let panel = SievePanel::new(q, 10)?;
    let t = std::time::Instant::now();
    let survivors = fib_mod_scan(m_max, &panel, ScanMode::Odd);
    println!("q = {q}, primes {:?}", panel.primes);
    println!("odd j <= {m_max}: {} survivors in {:.1?}", survivors.len(), t.elapsed());
    for s in check_survivors(&survivors, q as u32) {
        println!("  j = {}: power = {}", s.index, s.is_power);
    }

    // F_6 = 8 and F_12 = 144
    for (q, bound) in [(3, 100), (2, 200)] {
        let panel = SievePanel::new(q, 10)?;
        let hits = check_survivors(&fib_mod_scan(bound, &panel, ScanMode::All), q as u32);
        for s in hits.iter().filter(|s| s.is_power) {
            println!("q = {q}: F_{} = {}", s.index, fibonacci(s.index));
        }
    }
    Ok(())
}
