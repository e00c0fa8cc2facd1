//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.
//!
//! Reduction traces for the large cases are checkpointed under
//! `$CARGO_TARGET_TMPDIR/acceptance` (override with `FIBPOW_ACCEPTANCE_DIR`);
//! delete that directory to recompute them from scratch.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};

use fibpow::arith::{iv_log, Interval};
use fibpow::bounds::{CaseConstants, CaseSelector, FieldLedger};
use fibpow::lll::{lll_reduce, reduction_step, LatticeBasis, LinearForm};
use fibpow::numberfield::{load_units, verify_unit_system, FieldElement, NumberField};
use fibpow::pipeline::{pell_identity_check, run_case, Certificate, Conclusion, RunConfig};
use fibpow::polynomial::{build_fn, delta_minpoly_data, isolate_roots_prec, root_contains_decimal};
use fibpow::search::{
    check_survivors, direct_enumeration, exact_power_check, fib_mod_scan, growth_constant, index_bound,
    max_power_coefficient, ScanMode, SievePanel,
};

// Tolerances.
const ROOT_TOL: (i64, i64) = (1, 10_000);
const C7_REL: f64 = 0.01;
const K3_SLACK_SMALL: u64 = 5;
const K3_SLACK_LARGE: u64 = 15;
const INDEX_SLACK: i64 = 2;
const LEDGER_PREC: u32 = 256;

struct Reference {
    n: u64,
    poly: &'static [i64],
    roots: &'static [&'static str],
    c1: &'static [&'static str],
    c2: &'static str,
    c2a: &'static [&'static str],
    c3: &'static [&'static str],
    c5: &'static [&'static str],
    c6: &'static [&'static str],
    c7: &'static [&'static str],
    k1: &'static [&'static str],
    k2: &'static [&'static str],
    k3_initial: &'static [u32],
    k3_final: &'static [u64],
    /// Entries of c1, c2a, c3, c5, c6 too garbled to compare (0-based j).
    garbled: &'static [usize],
}

const N5: Reference = Reference {
    n: 5,
    poly: &[-16, 80, 40, -40, -5, 1],
    roots: &["-4.64105", "-1.1869", "0.185992", "1.75785", "8.88411"],
    c1: &["3.4541", "1.3728", "1.3728", "1.5718", "7.1262"],
    c2: "7.3356",
    c2a: &["3.9156", "7.3356", "6.3356", "4.5336", "1.8979"],
    c3: &["13.5251", "10.0710", "8.6981", "7.1262", "13.5251"],
    c5: &["2.8850", "2.6694", "2.5642", "2.4219", "2.8916"],
    c6: &["1.8086", "1.6734", "1.4252", "1.3461", "1.4617"],
    c7: &["1.7353e32", "2.3987e32", "2.2438e32", "1.89018e32", "9.70057e31"],
    k1: &["0.954799", "96.2577", "96.2577", "48.9276", "0.0255452"],
    k2: &["2.76452", "2.98782", "3.50828", "3.71432", "3.42053"],
    k3_initial: &[34; 5],
    k3_final: &[11, 12, 10, 10, 8],
    garbled: &[],
};

const N7: Reference = Reference {
    n: 7,
    poly: &[64, -448, -336, 560, 140, -84, -7, 1],
    roots: &["-6.68663", "-2.19286", "-0.804777", "0.132665", "1.13197", "2.88015", "12.5395"],
    c1: &["4.49377", "1.38808", "0.937441", "0.937441", "0.999309", "1.74818", "9.65932"],
    c2: "14.2348",
    c2a: &["4.27839", "10.6135", "14.2348", "13.2348", "11.4154", "5.52537", "1.99042"],
    c3: &["19.2261", "14.7323", "13.3443", "12.4068", "11.4075", "9.65932", "19.2261"],
    c5: &["3.13545", "2.94165", "2.86996", "2.81749", "2.75706", "2.63825", "3.13883"],
    c6: &["2.05127", "2.13505", "2.08302", "2.04265", "1.8492", "1.61462", "2.10145"],
    c7: &["1.03176e47", "1.59932e47", "1.78271e47", "1.7372e47", "1.6448e47", "1.19154e39", "5.53721e39"],
    k1: &["0.0984719", "367.017", "5727.71", "5727.71", "3661.77", "73.0283", "0.000464476"],
    k2: &["3.41253", "3.27862", "3.36051", "3.42691", "3.78542", "4.33539", "3.33104"],
    k3_initial: &[49; 7],
    k3_final: &[16, 17, 17, 18, 17, 15, 16],
    garbled: &[],
};

const N11: Reference = Reference {
    n: 11,
    poly: &[1024, -11264, -14080, 42240, 21120, -29568, -7392, 5280, 660, -220, -11, 1],
    roots: &[
        "-10.6902", "-3.93193", "-2.12056", "-1.16928", "-0.496752", "0.0843495", "0.680024", "1.40783",
        "2.51488", "4.91791", "19.8037",
    ],
    c1: &[
        "6.75826", "1.81137", "0.951281", "0.672528", "0.581101", "0.581101", "0.595674", "0.727806", "1.10705",
        "2.40303", "14.8858",
    ],
    c2: "34.9345",
    c2a: &[
        "4.5121", "13.1037", "23.0471", "31.1853", "34.9345", "33.9345", "32.1043", "25.2758", "15.6171",
        "6.49517", "2.04852",
    ],
    c3: &[
        "30.4939", "23.7356", "21.9243", "20.973", "20.3005", "19.7194", "19.1237", "18.3959", "17.2888",
        "15.6081", "30.4939",
    ],
    c5: &[
        "3.46637", "3.28489", "3.22745", "3.1954", "3.17187", "3.15092", "3.12881", "3.10086", "3.05622",
        "2.98291", "3.46774",
    ],
    c6: &[
        "3.03767", "2.38601", "3.34699", "3.39081", "2.34158", "3.44318", "3.15266", "3.38847", "2.68879",
        "2.40831", "3.06079",
    ],
    c7: &[
        "2.8731e78", "4.7491e78", "5.7427e78", "6.2748e78", "6.4746e78", "6.4235e78", "6.326e78", "5.9051e78",
        "5.0579e78", "3.5141e78", "1.4836e78",
    ],
    k1: &[
        "0.0001", "207.753", "247867.", "1.1241e7", "5.6085e7", "5.6085e7", "4.271e7", "4.7146e6", "46750.2",
        "9.2739", "1.7994e-8",
    ],
    k2: &[
        "3.6212", "4.61021", "3.28653", "3.24406", "4.69768", "3.19472", "3.48911", "3.2463", "4.09106",
        "4.56752", "3.59385",
    ],
    k3_initial: &[81, 81, 81, 81, 81, 81, 81, 81, 81, 81, 80],
    k3_final: &[32, 27, 41, 43, 29, 47, 40, 43, 32, 26, 28],
    garbled: &[],
};

const N13: Reference = Reference {
    n: 13,
    poly: &[
        -4096, 53248, 79872, -292864, -183040, 329472, 109824, -109824, -20592, 11440, 1144, -312, -13, 1,
    ],
    roots: &[
        "-12.6754", "-4.75486", "-2.68723", "-1.64838", "-0.960337", "-0.41792", "0.0713607", "0.569323",
        "1.14244", "1.90337", "3.13069", "5.90001", "23.4269",
    ],
    c1: &[
        "7.92054", "2.06763", "1.03885", "0.688043", "0.542417", "0.48928", "0.48928", "0.497963", "0.573112",
        "0.760936", "1.22732", "2.76932", "17.52696209",
    ],
    c2: "48.7346",
    c2a: &[
        "4.55807", "13.63", "25.1375", "36.4444", "44.9604", "48.7346", "47.7346", "45.9023", "38.8833",
        "28.2856", "16.537", "6.70758", "2.0598217.52",
    ],
    c3: &[
        "36.1023", "28.1818", "26.1142", "25.0753", "24.3873", "23.8449", "23.3556", "22.8576", "22.2845",
        "21.5236", "20.2963", "18.5754", "36.1023.52",
    ],
    c5: &[
        "3.58782", "3.40862", "3.35353", "3.3242", "3.30411", "3.28788", "3.27293", "3.25738", "3.23908",
        "3.21405", "3.17179", "3.10821", "3.588823.52",
    ],
    c6: &[
        "5.2067", "3.88525", "4.86669", "3.30557", "3.62425", "3.62461", "3.28336", "3.98813", "2.97576",
        "3.41762", "3.86076", "3.09418", "4.097533.52",
    ],
    c7: &[
        "1.30674e95", "2.18839e95", "2.68104e95", "2.97999e95", "3.14901e95", "3.21389e95", "3.1972e95",
        "3.1657e95", "3.03213e95", "2.77601e95", "2.34399e95", "1.6177e95", "6.67449e94",
    ],
    k1: &[
        "1.65365e-6", "63.2569", "486473.", "1.03099e8", "2.26948e9", "8.66973e9", "8.66973e9", "6.89763e9",
        "1.10954e9", "2.78439e7", "55693.3", "1.41715", "5.421e-11",
    ],
    k2: &[
        "2.49678", "3.34599", "2.67122", "3.93275", "3.58695", "3.5866", "3.95935", "3.25967", "4.36864",
        "3.80382", "3.36721", "4.20144", "3.17265",
    ],
    k3_initial: &[98, 98, 98, 98, 98, 98, 98, 98, 98, 98, 98, 97, 97],
    k3_final: &[53, 45, 58, 49, 55, 55, 43, 52, 44, 50, 55, 41, 47],
    garbled: &[12],
};

const N17: Reference = Reference {
    n: 17,
    poly: &[
        -65536, 1114112, 2228224, -11141120, -9748480, 25346048, 12673024, -19914752, -6223360, 6223360, 1244672,
        -792064, -99008, 38080, 2720, -544, -17, 1,
    ],
    roots: &[
        "-16.6323", "-6.36449", "-3.75619", "-2.50343", "-1.72576", "-1.16412", "-0.712712", "-0.317684",
        "0.0545603", "0.430621", "0.838223", "1.31512", "1.92569", "2.80429", "4.30707", "7.83505", "30.6661",
    ],
    c1: &[
        "10.2678", "2.60829", "1.25276", "0.777669", "0.561638", "0.451412", "0.395027", "0.372245", "0.372245",
        "0.376061", "0.407602", "0.476899", "0.61057", "0.878601", "1.50278", "3.52799", "22.831",
    ],
    c2: "83.2349",
    c2a: &[
        "4.60646", "14.1973", "27.4771", "42.6525", "57.6738", "70.5125", "79.4345", "83.2349", "82.2349",
        "80.4005", "73.1789", "61.5455", "47.0714", "31.7115", "17.5402", "6.93523", "2.07167",
    ],
    // last entries of c3, c5, c6 carry two stray trailing digits, dropped here
    c3: &[
        "47.2984", "37.0306", "34.4223", "33.1695", "32.3918", "31.8302", "31.3788", "30.9838", "30.6115",
        "30.2355", "29.8279", "29.351", "28.7404", "27.8618", "26.359", "24.4674", "47.2984",
    ],
    c5: &[
        "3.78233", "3.60548", "3.55271", "3.52594", "3.50882", "3.49619", "3.48589", "3.47675", "3.46803",
        "3.45911", "3.44932", "3.4377", "3.42255", "3.40018", "3.36024", "3.30671", "3.7829",
    ],
    c6: &[
        "6.96297", "6.95734", "5.89133", "6.24564", "4.71335", "4.94999", "5.6139", "7.93478", "7.87795",
        "4.98754", "6.01398", "7.84567", "6.87894", "5.26067", "5.08113", "5.13209", "8.3645",
    ],
    c7: &[
        "2.15293e126", "3.65902e126", "4.54254e126", "5.13093e126", "5.53464e126", "5.80357e126", "5.96299e126",
        "6.02552e126", "6.00935e126", "5.97916e126", "5.85324e126", "5.62158e126", "5.26283e126", "4.73432e126",
        "3.94195e126", "2.7004e126", "1.08369e126",
    ],
    k1: &[
        "1.3922e-10", "1.82303", "473234.", "1.56794e9", "3.9635e11", "1.62592e13", "1.57104e14", "4.3128e14",
        "4.3128e14", "3.62626e14", "9.22206e13", "6.39148e12", "9.57958e10", "1.96963e8", "21460.7", "0.01073",
        "1.75352e-16",
    ],
    k2: &[
        "2.44149", "2.44346", "2.88559", "2.7219", "3.60678", "3.43435", "3.0282", "2.14247", "2.15792",
        "3.40849", "2.82675", "2.1668", "2.47131", "3.23152", "3.34572", "3.31249", "2.03238",
    ],
    k3_initial: &[134, 134, 134, 134, 134, 134, 134, 134, 134, 134, 134, 134, 134, 134, 134, 134, 133],
    k3_final: &[93, 103, 91, 100, 76, 81, 93, 135, 134, 82, 102, 132, 113, 83, 77, 73, 106],
    garbled: &[],
};

const ALL: [&Reference; 5] = [&N5, &N7, &N11, &N13, &N17];

const M11: &str = "16564181057933828";
const M13: &str = "316357820342343521286";
const M17: &str = "416654165624561667592653373446";
const V11: (&str, u32) = (
    "2010746813015276210495865547535786806647859350616256350654502987105724151326017006680926209502499326050998267664485654586806568806547",
    512,
);
const V13: (&str, u32) = (
    "9315864786709065684041685612751685229423063714870285108653212480714095725945420926027317231443102991027842905976508393206322152405473550058771766196947352038793187460444181",
    4096,
);
const M_MAX: [(u64, u64); 3] = [(11, 75913), (13, 139720), (17, 616986)];

/// A reference decimal and one unit in its last digit.
fn decimal(s: &str) -> (f64, f64) {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i32>().unwrap()),
        None => (s, 0),
    };
    let decimals = mant.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    (s.parse::<f64>().unwrap(), 10f64.powi(exp - decimals))
}

fn within_last_digit(ours: &Interval, s: &str) -> bool {
    let (v, ulp) = decimal(s);
    let slack = ulp * (1.0 + 1e-9);
    ours.lo().to_f64() - slack <= v && v <= ours.hi().to_f64() + slack
}

fn rel_close(ours: &Interval, s: &str, rel: f64) -> bool {
    let (v, _) = decimal(s);
    ((ours.to_f64() - v) / v).abs() <= rel
}

/// Agreement of decimal mantissas only.
fn mantissa_close(ours: &Interval, s: &str) -> bool {
    let (v, _) = decimal(s);
    let x = ours.to_f64();
    let m = |y: f64| y / 10f64.powi(y.log10().floor() as i32);
    ((m(x) - m(v)) / m(v)).abs() <= C7_REL
}

struct Ledger {
    cases: Vec<CaseConstants>,
    cases_d156: Vec<CaseConstants>,
}

fn ledgers() -> &'static Vec<Ledger> {
    static L: OnceLock<Vec<Ledger>> = OnceLock::new();
    L.get_or_init(|| {
        ALL.iter()
            .map(|p| {
                let field = NumberField::new(p.n).unwrap();
                let units = load_units(p.n).unwrap();
                let dm = delta_minpoly_data(&field, 0, 1, 2).unwrap();
                let ledger = FieldLedger::new(&field, &units, dm.leading, dm.degree, LEDGER_PREC).unwrap();
                let sels = CaseSelector::all(p.n as usize);
                let cases = sels.iter().map(|&s| ledger.case(s, field.galois_degree()).unwrap()).collect();
                let cases_d156 = if p.n == 17 {
                    sels.iter().map(|&s| ledger.case(s, 156).unwrap()).collect()
                } else {
                    Vec::new()
                };
                Ledger { cases, cases_d156 }
            })
            .collect()
    })
}

fn report_dir() -> PathBuf {
    std::env::var_os("FIBPOW_ACCEPTANCE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance"))
}

fn certificates() -> &'static Vec<Certificate> {
    static C: OnceLock<Vec<Certificate>> = OnceLock::new();
    C.get_or_init(|| {
        ALL.iter()
            .map(|p| {
                let mut cfg = RunConfig::new(p.n);
                cfg.column_c6 = true;
                cfg.report_dir = Some(report_dir());
                run_case(&cfg).unwrap()
            })
            .collect()
    })
}

fn c1_polynomials() -> Result<String, String> {
    for p in ALL {
        let f = build_fn(p.n).map_err(|e| e.to_string())?;
        let want: Vec<BigInt> = p.poly.iter().map(|&c| BigInt::from(c)).collect();
        if f.coeffs() != &want[..] {
            return Err(format!("f_{} differs: {}", p.n, f));
        }
    }
    Ok("f_5, f_7, f_11, f_13, f_17 exact".into())
}

fn c2_roots() -> Result<String, String> {
    let tol = BigRational::new(ROOT_TOL.0.into(), ROOT_TOL.1.into());
    let mut count = 0;
    for p in ALL {
        let f = build_fn(p.n).unwrap();
        let boxes = isolate_roots_prec(&f, 64).map_err(|e| e.to_string())?;
        for (b, s) in boxes.iter().zip(p.roots) {
            if !root_contains_decimal(b, s, &tol).unwrap() {
                return Err(format!("n={} root {} not within 1e-4", p.n, s));
            }
            count += 1;
        }
    }
    Ok(format!("{count} reference zeros enclosed within 1e-4"))
}

fn c3_constants() -> Result<String, String> {
    let mut checked = 0;
    let mut skipped = 0;
    let mut bad = Vec::new();
    for (p, l) in ALL.iter().zip(ledgers()) {
        for (j, c) in l.cases.iter().enumerate() {
            let mut entries: Vec<(&str, &Interval, &str)> = vec![
                ("c2", &c.sep.c2, p.c2),
                ("K1", &c.k1, p.k1[j]),
                ("K2", &c.k2_transposed, p.k2[j]),
            ];
            let per_j = [
                ("c1", &c.sep.c1, p.c1[j]),
                ("c2a", &c.sep.c2a, p.c2a[j]),
                ("c3", &c.sep.c3, p.c3[j]),
                ("c5", &c.sep.c5, p.c5[j]),
                ("c6", &c.c6.c6_transposed, p.c6[j]),
            ];
            if p.garbled.contains(&j) {
                skipped += per_j.len();
            } else {
                entries.extend(per_j);
            }
            for (name, ours, s) in entries {
                checked += 1;
                if !within_last_digit(ours, s) {
                    bad.push(format!("n={} j={} {} reference {} ours {:.6e}", p.n, j + 1, name, s, ours.to_f64()));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{checked} entries inside enclosure +- 1 ulp ({skipped} garbled n=13 entries skipped; c6, K2 from column sums)"))
    } else {
        Err(bad.join("; "))
    }
}

fn c4_c7_and_initial_bound() -> Result<String, String> {
    let mut strict = 0;
    let mut d156 = 0;
    let mut exponent = 0;
    let mut bad = Vec::new();
    for (p, l) in ALL.iter().zip(ledgers()) {
        for (j, c) in l.cases.iter().enumerate() {
            let s = p.c7[j];
            if rel_close(&c.c7, s, C7_REL) {
                strict += 1;
            } else if p.n == 17 && rel_close(&l.cases_d156[j].c7, s, C7_REL) {
                // given with the n = 13 Galois degree
                d156 += 1;
            } else if p.n == 7 && mantissa_close(&c.c7, s) {
                exponent += 1;
            } else {
                bad.push(format!("n={} j={} c7 reference {} ours {:.5e}", p.n, j + 1, s, c.c7.to_f64()));
            }
            if c.initial_transposed.exponent10 != p.k3_initial[j] {
                bad.push(format!(
                    "n={} j={} K3 10^{} vs reference 10^{}",
                    p.n,
                    j + 1,
                    c.initial_transposed.exponent10,
                    p.k3_initial[j]
                ));
            }
        }
    }
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    if d156 != 17 || exponent != 2 {
        return Err(format!("unexpected defect pattern: {d156} n=17, {exponent} n=7"));
    }
    Ok(format!(
        "c7 within 1%: {strict} direct, 17 n=17 entries given with D=156, 2 n=7 entries match in mantissa only (reference exponent 39); all 43 initial K3 exact"
    ))
}

fn strictly_decreasing(b: &[BigInt]) -> bool {
    b.windows(2).all(|w| w[1] < w[0])
}

fn c5_reduction() -> Result<String, String> {
    let mut bad = Vec::new();
    let mut detail = Vec::new();
    for (p, cert) in ALL.iter().zip(certificates()) {
        let slack = if p.n <= 7 { K3_SLACK_SMALL } else { K3_SLACK_LARGE };
        let col = cert.reduction_column_c6.as_ref().ok_or("missing column-sum traces")?;
        let finals: Vec<u64> = col.iter().map(|t| t.final_k3.to_string().parse().unwrap()).collect();
        for (j, (&f, &want)) in finals.iter().zip(p.k3_final).enumerate() {
            if f > want + slack {
                bad.push(format!("n={} j={} K3 {} > {} + {}", p.n, j + 1, f, want, slack));
            }
        }
        for t in col.iter().chain(&cert.reduction) {
            let b = t.bounds();
            if !strictly_decreasing(&b) || b[0] != t.initial_k3 || b.last() != Some(&t.final_k3) {
                bad.push(format!("n={} trace not strictly decreasing", p.n));
            }
        }
        let row_max = cert.reduction.iter().map(|t| t.final_k3.clone()).max().unwrap();
        detail.push(format!("n={} {:?} (row max {})", p.n, finals, row_max));
    }
    if bad.is_empty() {
        Ok(detail.join(", "))
    } else {
        Err(bad.join("; "))
    }
}

fn growth_data(n: u64, k3: u64) -> (BigInt, BigRational) {
    let field = NumberField::new(n).unwrap();
    let units = load_units(n).unwrap();
    (growth_constant(field.poly()), max_power_coefficient(&units, &field, k3).unwrap())
}

fn c6_growth() -> Result<String, String> {
    let v = |(d, den): (&str, u32)| BigRational::new(d.parse().unwrap(), BigInt::from(den));
    let (m11, v11) = growth_data(11, 47);
    let (m13, v13) = growth_data(13, 58);
    let m17 = growth_constant(NumberField::new(17).unwrap().poly());
    let mut bad = Vec::new();
    for (n, got, want) in [(11, &m11, M11), (13, &m13, M13), (17, &m17, M17)] {
        if got.to_string() != want {
            bad.push(format!("M n={n}: {got}"));
        }
    }
    if v11 != v(V11) {
        bad.push("v n=11".into());
    }
    if v13 != v(V13) {
        bad.push("v n=13".into());
    }
    if bad.is_empty() {
        Ok("M for n=11, 13, 17 and v for n=11, 13 exact".into())
    } else {
        Err(bad.join("; "))
    }
}

fn c7_index_bounds() -> Result<String, String> {
    let mut got = Vec::new();
    for (&(n, want), k3) in M_MAX.iter().zip([47u64, 58, 135]) {
        let (m, v) = growth_data(n, k3);
        let b: i64 = index_bound(&m, &v, n as usize).unwrap().to_string().parse().unwrap();
        if (b - want as i64).abs() > INDEX_SLACK {
            return Err(format!("n={n}: {b} vs {want}"));
        }
        got.push(format!("n={n}: {b}"));
    }
    Ok(got.join(", "))
}

fn c8_final_search() -> Result<String, String> {
    let mut detail = Vec::new();
    for &(n, m) in &M_MAX {
        let t = Instant::now();
        let panel = SievePanel::new(n, 10).unwrap();
        let s = check_survivors(&fib_mod_scan(m, &panel, ScanMode::Odd), n as u32);
        if s.iter().any(|x| x.is_power) {
            return Err(format!("n={n}: power found"));
        }
        detail.push(format!("n={n} j<={m}: {} survivors ({:.1?})", s.len(), t.elapsed()));
    }
    let field = NumberField::new(5).unwrap();
    let hits = direct_enumeration(&field, &load_units(5).unwrap(), 12, 1 << 40).unwrap();
    let mut ab: Vec<(String, String)> = hits.iter().map(|h| (h.a.to_string(), h.b.to_string())).collect();
    ab.sort();
    if ab != [("-1".to_string(), "0".to_string()), ("1".to_string(), "0".to_string())] {
        return Err(format!("n=5 enumeration found {ab:?}"));
    }
    detail.push("n=5 box 12: only (+-1, 0)".into());
    for c in certificates() {
        if c.conclusion != Conclusion::NoNontrivialPower {
            return Err(format!("n={} pipeline: {:?}", c.n, c.conclusion));
        }
    }
    detail.push("pipeline conclusive for all five".into());
    Ok(detail.join(", "))
}

fn c9_positive_controls() -> Result<String, String> {
    for (q, j, bound) in [(3u64, 6u64, 100u64), (2, 12, 200)] {
        let panel = SievePanel::new(q, 10).unwrap();
        let s = fib_mod_scan(bound, &panel, ScanMode::All);
        if !s.contains(&j) || !exact_power_check(j, q as u32) {
            return Err(format!("q={q} missed j={j}"));
        }
    }
    Ok("q=3 flags F_6 = 8, q=2 flags F_12 = 144".into())
}

fn random_element(rng: &mut impl Rng, n: usize, k: i64) -> FieldElement {
    FieldElement::new((0..n).map(|_| BigInt::from(rng.gen_range(-k..=k))).collect(), BigInt::from(rng.gen_range(1..9)))
}

fn c10_properties() -> Result<String, String> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    // unit norms
    let mut units = 0;
    for p in ALL {
        let field = NumberField::new(p.n).unwrap();
        let rep = verify_unit_system(&load_units(p.n).unwrap(), &field).map_err(|e| e.to_string())?;
        if rep.norms.iter().any(|&x| x.abs() != 1) {
            return Err(format!("n={} norm", p.n));
        }
        units += rep.count;
    }
    // embedding homomorphism and norm multiplicativity
    let k7 = NumberField::new(7).unwrap();
    for _ in 0..50 {
        let a = random_element(&mut rng, 7, 50);
        let b = random_element(&mut rng, 7, 50);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let ab = k7.mul(&a, &b);
        if k7.norm(&ab).unwrap() != k7.norm(&a).unwrap() * k7.norm(&b).unwrap() {
            return Err("norm multiplicativity".into());
        }
        for i in 0..7 {
            let lhs = k7.embed(&ab, i, 128).unwrap();
            let rhs = k7.embed(&a, i, 128).unwrap().mul(&k7.embed(&b, i, 128).unwrap());
            if !lhs.overlaps(&rhs) {
                return Err("embedding homomorphism".into());
            }
        }
    }
    // interval containment
    for _ in 0..200 {
        let (x, y) = (rng.gen_range(1..1_000_000i64), rng.gen_range(1..1_000_000i64));
        let q = BigRational::new(x.into(), y.into());
        let a = Interval::from_rational(&q, 96);
        let l = iv_log(&a).unwrap();
        let want = (x as f64 / y as f64).ln();
        if !(l.lo().to_f64() <= want + 1e-12 && want - 1e-12 <= l.hi().to_f64()) || !a.contains_rational(&q) {
            return Err("interval containment".into());
        }
    }
    // Lovász and size reduction
    let half = BigRational::new(3.into(), 4.into());
    for _ in 0..30 {
        let n = rng.gen_range(2..7);
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-10_000i64..10_000))).collect())
            .collect();
        let b = LatticeBasis::new(rows).unwrap();
        if b.determinant().is_zero() {
            continue;
        }
        let r = lll_reduce(&b, &half).unwrap();
        if !r.basis.is_lll_reduced(&half) || r.transform.determinant().abs() != BigInt::one() {
            return Err("LLL output".into());
        }
    }
    // growth soundness
    let k11 = NumberField::new(11).unwrap();
    let m = growth_constant(k11.poly());
    for _ in 0..1000 {
        let k = rng.gen_range(1..1_000_000i64);
        let a = FieldElement::new((0..11).map(|_| BigInt::from(rng.gen_range(-k..=k))).collect(), BigInt::one());
        let b = FieldElement::new((0..11).map(|_| BigInt::from(rng.gen_range(-k..=k))).collect(), BigInt::one());
        if k11.mul(&a, &b).max_abs_numerator() > &m * k * k {
            return Err("growth soundness".into());
        }
    }
    // reduction-step soundness, q = 2, brute force
    let mut sound = 0;
    for _ in 0..10 {
        let den = 1u64 << 50;
        let mut r = || BigRational::new(BigInt::from(rng.gen_range(-(1i64 << 52)..(1i64 << 52))), BigInt::from(den));
        let (d, m1, m2) = (r(), r(), r());
        let form = LinearForm {
            delta: Interval::from_rational(&d, 256),
            mu: vec![Interval::from_rational(&m1, 256), Interval::from_rational(&m2, 256)],
        };
        let (k1, k2) = (Interval::from_i64(1, 128), Interval::from_i64(3, 128));
        let mut sigma = BigInt::from(1u32 << 12);
        let out = loop {
            let rec = reduction_step(&k1, &k2, &BigInt::from(30), &form, &sigma, 1, 16).unwrap();
            if rec.k3_out.is_some() || sigma.bits() > 40 {
                break rec.k3_out;
            }
            sigma <<= 4;
        };
        let Some(out) = out else { continue };
        let out: i64 = out.to_string().parse().unwrap();
        let f = |x: &BigRational| x.numer().to_string().parse::<f64>().unwrap() / den as f64;
        for a1 in -30i64..=30 {
            for a2 in -30i64..=30 {
                let mx = a1.abs().max(a2.abs());
                if mx <= out {
                    continue;
                }
                let lam = f(&d) + a1 as f64 * f(&m1) + a2 as f64 * f(&m2);
                if lam.abs() < (-3.0 * mx as f64).exp() * (1.0 + 1e-9) {
                    return Err("reduction step unsound".into());
                }
            }
        }
        sound += 1;
    }
    // Siegel identity for n = 7
    let th = k7.roots(192).unwrap();
    for _ in 0..50 {
        let (a, b) = (rng.gen_range(-10_000i64..10_000), rng.gen_range(1i64..10_000));
        let beta = |t: &Interval| Interval::from_i64(a, 192).sub(&t.mul(&Interval::from_i64(b, 192)));
        let (j, k, l) = (rng.gen_range(0..7), rng.gen_range(0..7), rng.gen_range(0..7));
        let s = th[j].sub(&th[k]).mul(&beta(&th[l]))
            .add(&th[k].sub(&th[l]).mul(&beta(&th[j])))
            .add(&th[l].sub(&th[j]).mul(&beta(&th[k])));
        if !s.contains_zero() {
            return Err("Siegel identity".into());
        }
    }
    if !pell_identity_check(10_000) {
        return Err("Pell identity".into());
    }
    Ok(format!(
        "{units} unit norms +-1, homomorphism, norm, containment, LLL, 1000 growth products, {sound} brute-forced reductions, Siegel, Pell to 1e4"
    ))
}

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Check, Duration); 10] = [
        ("polynomial fidelity", c1_polynomials, Duration::from_secs(1)),
        ("root tables", c2_roots, Duration::from_secs(10)),
        ("constant ledger", c3_constants, Duration::from_secs(300)),
        ("c7 and initial bound", c4_c7_and_initial_bound, Duration::from_secs(300)),
        ("LLL reduction", c5_reduction, Duration::from_secs(8 * 3600)),
        ("growth constants", c6_growth, Duration::from_secs(1800)),
        ("index bounds", c7_index_bounds, Duration::from_secs(1800)),
        ("final searches", c8_final_search, Duration::from_secs(900)),
        ("positive controls", c9_positive_controls, Duration::from_secs(60)),
        ("property suites", c10_properties, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed();
        let r = match r {
            Ok(_) if dt > *budget => Err(format!("took {dt:.1?}, budget {budget:?}")),
            r => r,
        };
        let (tag, msg) = match &r {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {:>2} {tag} {name} [{dt:.1?}]: {msg}", i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
