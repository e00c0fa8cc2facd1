use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use fibpow::numberfield::{load_units, verify_unit_system, NumberField};
use fibpow::pipeline::{run_case, RunConfig, REPORT_DIR_ENV, SUPPORTED};
use fibpow::search::{check_survivors, fib_mod_scan, ScanMode, SievePanel};

#[derive(Parser)]
#[command(name = "fibpow", version, about = "Certified search for q-th powers among Fibonacci numbers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full pipeline for one exponent or for all of them.
    Verify {
        /// 5, 7, 11, 13, 17 or `all`.
        #[arg(long)]
        n: String,
        #[arg(long)]
        sigma1: Option<BigInt>,
        /// Working precision for the constant ledger, in bits.
        #[arg(long, default_value_t = 256)]
        precision: u32,
        #[arg(long, default_value_t = 10)]
        panel_size: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, env = REPORT_DIR_ENV)]
        report: Option<PathBuf>,
        /// Force the direct unit enumeration on or off.
        #[arg(long)]
        enumerate: Option<bool>,
        /// Also run the reduction with column-sum `c6`.
        #[arg(long)]
        column_c6: bool,
    },
    /// Residue sieve plus exact checks on `F_j`, `j <= max`.
    Sieve {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = 10)]
        primes: usize,
        /// Only odd `j >= 3`.
        #[arg(long)]
        odd: bool,
    },
    /// Verify the bundled unit table for `n`.
    CheckUnits {
        #[arg(long)]
        n: u64,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse().cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> fibpow::Result<bool> {
    match cmd {
        Cmd::Verify {
            n,
            sigma1,
            precision,
            panel_size,
            jobs,
            report,
            enumerate,
            column_c6,
        } => {
            let ns: Vec<u64> = if n == "all" {
                SUPPORTED.to_vec()
            } else {
                vec![n
                    .parse()
                    .map_err(|_| fibpow::Error::InvalidConfig(format!("bad --n {n}")))?]
            };
            let mut sound = true;
            for n in ns {
                let mut cfg = RunConfig::new(n);
                cfg.sigma1 = sigma1.clone();
                cfg.precision = precision;
                cfg.panel_size = panel_size;
                cfg.jobs = jobs;
                cfg.report_dir = report.clone();
                cfg.column_c6 = column_c6;
                if let Some(e) = enumerate {
                    cfg.enumeration = e;
                }
                let cert = run_case(&cfg)?;
                println!("n={n}: final K3 {:?}", cert.final_k3);
                if let Some(m) = &cert.index_bound {
                    println!("n={n}: index bound {m}, {} survivors", cert.survivors.len());
                }
                println!("n={n}: {:?}", cert.conclusion);
                sound &= cert.conclusion.is_sound_negative();
            }
            Ok(sound)
        }
        Cmd::Sieve { q, max, primes, odd } => {
            let panel = SievePanel::new(q, primes)?;
            let mode = if odd { ScanMode::Odd } else { ScanMode::All };
            let found = fib_mod_scan(max, &panel, mode);
            let checked = check_survivors(&found, q as u32);
            println!("primes {:?}", panel.primes);
            println!("{} survivors", checked.len());
            let powers: Vec<u64> = checked.iter().filter(|s| s.is_power).map(|s| s.index).collect();
            println!("q-th powers at j = {:?}", powers);
            Ok(true)
        }
        Cmd::CheckUnits { n } => {
            let field = NumberField::new(n)?;
            let units = load_units(n)?;
            let rep = verify_unit_system(&units, &field)?;
            println!("{}", serde_json::to_string_pretty(&rep)?);
            Ok(true)
        }
    }
}
