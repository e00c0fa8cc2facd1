//! Run every stage for one exponent and write the certificate.
//!
//! ```bash
//! cargo run --release --example full_case -- 7 target/reports
//! ```

use fibpow::pipeline::{run_case, RunConfig};

fn main() -> fibpow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let mut cfg = RunConfig::new(n);
    cfg.report_dir = args.next().map(Into::into);

    let cert = run_case(&cfg)?;
    for s in &cert.stages {
        println!("{:<14} {:?} {:>9.2?}  {}", s.stage, s.status, s.wall_time, s.detail);
    }
    println!("conclusion: {:?}", cert.conclusion);
    if let Some(d) = cfg.resolved_report_dir() {
        println!("certificate: {}", d.join(format!("n{n}")).join("certificate.json").display());
    }
    Ok(())
}
