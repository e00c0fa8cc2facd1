//! Orchestration of one case: every stage from `f_n` to the sieve, with
//! checkpoints and a JSON certificate.

mod elementary;
mod report;

pub use elementary::{
    discriminant_chain_check, fibonacci_discriminant_is_square, lemma1_targets,
    pell_identity_check, DiscriminantReport,
};
pub use report::{emit_certificate, read_certificate_value, ReductionCheckpoint};

use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Interval;
use crate::bounds::{b_threshold, linear_form_data, CaseConstants, CaseSelector, FieldLedger};
use crate::error::{Error, Result};
use crate::lll::{reduce_to_fixpoint, LinearForm, ReductionConfig, ReductionTrace};
use crate::numberfield::{load_units, unit_logs, verify_unit_system, NumberField, UnitReport, UnitSystem};
use crate::polynomial::{build_fn, certify_irreducible, delta_minpoly_data, IrreducibilityCertificate};
use crate::search::{
    check_survivors, direct_enumeration, fib_mod_scan, growth_constant, index_bound,
    max_power_coefficient, GrowthData, LinearUnit, ScanMode, SievePanel, Survivor,
};

/// Exponents handled by the bundled unit tables.
pub const SUPPORTED: [u64; 5] = [5, 7, 11, 13, 17];

/// Environment variable overriding the report directory.
pub const REPORT_DIR_ENV: &str = "FIBPOW_REPORT_DIR";

const DIGITS: usize = 12;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: u64,
    /// Starting `σ1` for every reduction step.
    pub sigma1: Option<BigInt>,
    /// Working precision of the constant ledger, in bits.
    pub precision: u32,
    pub precision_ceiling: u32,
    pub panel_size: usize,
    pub report_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    /// Run the direct unit enumeration (default for `n = 5`).
    pub enumeration: bool,
    pub enumeration_box: u128,
    /// Also reduce with `c6` taken from column sums of `M^{-1}`.
    pub column_c6: bool,
}

impl RunConfig {
    pub fn new(n: u64) -> Self {
        RunConfig {
            n,
            sigma1: None,
            precision: 256,
            precision_ceiling: crate::arith::DEFAULT_PRECISION_CEILING,
            panel_size: 10,
            report_dir: None,
            jobs: None,
            enumeration: n == 5,
            enumeration_box: 1 << 24,
            column_c6: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !SUPPORTED.contains(&self.n) {
            return Err(Error::InvalidConfig(format!(
                "n = {} is not one of {:?}",
                self.n, SUPPORTED
            )));
        }
        if let Some(s) = &self.sigma1 {
            if s <= &BigInt::from(1) {
                return Err(Error::InvalidConfig("sigma1 must exceed 1".into()));
            }
        }
        if self.panel_size == 0 {
            return Err(Error::InvalidConfig("panel size must be positive".into()));
        }
        if self.precision < 64 || self.precision > self.precision_ceiling {
            return Err(Error::InvalidConfig("precision outside [64, ceiling]".into()));
        }
        Ok(())
    }

    /// The configured report directory, or the environment override.
    pub fn resolved_report_dir(&self) -> Option<PathBuf> {
        self.report_dir
            .clone()
            .or_else(|| std::env::var_os(REPORT_DIR_ENV).map(PathBuf::from))
    }

    fn reduction_config(&self) -> ReductionConfig {
        ReductionConfig {
            sigma1: self.sigma1.clone(),
            precision_ceiling: self.precision_ceiling,
            ..ReductionConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Ok,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageOutcome {
    pub stage: String,
    pub status: StageStatus,
    pub detail: String,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Conclusion {
    NoNontrivialPower,
    PowerFound { indices: Vec<u64> },
    Inconclusive { stage: String },
}

impl Conclusion {
    pub fn is_sound_negative(&self) -> bool {
        matches!(self, Conclusion::NoNontrivialPower)
    }
}

/// Interval written as decimal bounds.
pub type Bounds = [String; 2];

fn bounds(x: &Interval) -> Bounds {
    let (lo, hi) = x.to_decimal(DIGITS);
    [lo, hi]
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsRecord {
    /// 1-based root index.
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub c1: Bounds,
    pub c2: Bounds,
    pub c2a: Bounds,
    pub c3: Bounds,
    pub c4: Bounds,
    pub c5: Bounds,
    pub c6: Bounds,
    pub c6_transposed: Bounds,
    pub c7: Bounds,
    pub h_delta: Bounds,
    pub k1: Bounds,
    pub k2: Bounds,
    pub k2_transposed: Bounds,
    pub threshold: Bounds,
    pub k3_initial: String,
    pub k3_initial_transposed: String,
    pub b_threshold: String,
}

impl ConstantsRecord {
    fn new(c: &CaseConstants, b_thr: &BigInt) -> Self {
        ConstantsRecord {
            j: c.selector.j + 1,
            k: c.selector.k + 1,
            l: c.selector.l + 1,
            c1: bounds(&c.sep.c1),
            c2: bounds(&c.sep.c2),
            c2a: bounds(&c.sep.c2a),
            c3: bounds(&c.sep.c3),
            c4: bounds(&c.sep.c4),
            c5: bounds(&c.sep.c5),
            c6: bounds(&c.c6.c6),
            c6_transposed: bounds(&c.c6.c6_transposed),
            c7: bounds(&c.c7),
            h_delta: bounds(&c.heights.h_delta),
            k1: bounds(&c.k1),
            k2: bounds(&c.k2),
            k2_transposed: bounds(&c.k2_transposed),
            threshold: bounds(&c.initial.threshold),
            k3_initial: c.initial.k3.to_string(),
            k3_initial_transposed: c.initial_transposed.k3.to_string(),
            b_threshold: b_thr.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaRecord {
    pub degree: usize,
    pub leading: String,
    pub certificate: IrreducibilityCertificate,
}

/// Exhaustive check of `f_n(A, B) = ±1` for `0 < |B| < bound`.
#[derive(Clone, Debug, Serialize)]
pub struct SmallBReport {
    pub bound: String,
    pub candidates: u64,
    pub solutions: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub n: u64,
    pub decimal_digits: usize,
    pub polynomial: Vec<String>,
    pub irreducibility: Option<IrreducibilityCertificate>,
    pub roots: Vec<Bounds>,
    pub units: Option<UnitReport>,
    pub delta_minpoly: Option<DeltaRecord>,
    pub constants: Vec<ConstantsRecord>,
    pub reduction: Vec<ReductionTrace>,
    pub reduction_column_c6: Option<Vec<ReductionTrace>>,
    pub final_k3: Vec<String>,
    pub small_b: Option<SmallBReport>,
    pub growth: Option<GrowthData>,
    pub index_bound: Option<String>,
    pub panel: Option<SievePanel>,
    pub survivors: Vec<Survivor>,
    pub enumeration: Option<Vec<LinearUnit>>,
    pub stages: Vec<StageOutcome>,
    pub conclusion: Conclusion,
}

impl Certificate {
    fn empty(n: u64) -> Self {
        Certificate {
            n,
            decimal_digits: DIGITS,
            polynomial: Vec::new(),
            irreducibility: None,
            roots: Vec::new(),
            units: None,
            delta_minpoly: None,
            constants: Vec::new(),
            reduction: Vec::new(),
            reduction_column_c6: None,
            final_k3: Vec::new(),
            small_b: None,
            growth: None,
            index_bound: None,
            panel: None,
            survivors: Vec::new(),
            enumeration: None,
            stages: Vec::new(),
            conclusion: Conclusion::Inconclusive {
                stage: "not started".into(),
            },
        }
    }

    /// Recompute the conclusion from the recorded stages and search data.
    pub fn conclude(&self) -> Conclusion {
        if let Some(s) = self.stages.iter().find(|s| s.status == StageStatus::Failed) {
            return Conclusion::Inconclusive {
                stage: s.stage.clone(),
            };
        }
        for required in MANDATORY {
            if !self
                .stages
                .iter()
                .any(|s| s.stage == *required && s.status == StageStatus::Ok)
            {
                return Conclusion::Inconclusive {
                    stage: required.to_string(),
                };
            }
        }
        let found: Vec<u64> = self
            .survivors
            .iter()
            .filter(|s| s.is_power)
            .map(|s| s.index)
            .collect();
        if !found.is_empty() {
            return Conclusion::PowerFound { indices: found };
        }
        Conclusion::NoNontrivialPower
    }
}

const MANDATORY: &[&str] = &[
    "polynomial",
    "irreducibility",
    "roots",
    "units",
    "delta_minpoly",
    "constants",
    "reduction",
    "small_b",
    "growth",
    "index_bound",
    "sieve",
    "exact_checks",
];

struct Stages<'a> {
    cert: &'a mut Certificate,
}

impl Stages<'_> {
    fn run<T>(&mut self, name: &str, f: impl FnOnce(&mut Certificate) -> Result<(T, String)>) -> Option<T> {
        let t = Instant::now();
        let r = f(self.cert);
        let wall_time = t.elapsed();
        let (status, detail, out) = match r {
            Ok((v, d)) => (StageStatus::Ok, d, Some(v)),
            Err(e) => (StageStatus::Failed, e.to_string(), None),
        };
        log::info!("n={} stage {} {:?} ({:.1?}) {}", self.cert.n, name, status, wall_time, detail);
        self.cert.stages.push(StageOutcome {
            stage: name.into(),
            status,
            detail,
            wall_time,
        });
        out
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.cert.stages.push(StageOutcome {
            stage: name.into(),
            status: StageStatus::Skipped,
            detail: why.into(),
            wall_time: Duration::ZERO,
        });
    }
}

/// Roots and unit logs at one precision.
type FormData = Arc<(Vec<Interval>, Vec<Vec<Interval>>)>;

/// Unit logs and roots at the highest precision requested so far.
struct FormCache<'a> {
    field: &'a NumberField,
    units: &'a UnitSystem,
    data: Mutex<Option<(u32, FormData)>>,
}

impl FormCache<'_> {
    fn get(&self, prec: u32) -> Result<FormData> {
        let mut g = self.data.lock().unwrap();
        if let Some((p, d)) = g.as_ref() {
            if *p >= prec {
                return Ok(d.clone());
            }
        }
        let p = prec.next_multiple_of(1024) + 512;
        let roots: Vec<Interval> = self.field.roots(p)?.iter().map(|x| x.with_precision(p)).collect();
        let logs = unit_logs(self.units, self.field, p)?;
        let d = Arc::new((roots, logs));
        *g = Some((p, d.clone()));
        Ok(d)
    }

    fn form(&self, sel: CaseSelector, prec: u32) -> Result<LinearForm> {
        let d = self.get(prec)?;
        let (delta, mu) = linear_form_data(&d.0, &d.1, sel)?;
        Ok(LinearForm { delta, mu })
    }
}

fn reduce_all(
    cfg: &RunConfig,
    cache: &FormCache,
    cases: &[CaseConstants],
    transposed: bool,
) -> Result<Vec<ReductionTrace>> {
    let rc = cfg.reduction_config();
    let dir = cfg.resolved_report_dir().map(|d| d.join(format!("n{}", cfg.n)));
    cases
        .par_iter()
        .map(|c| {
            let (k2, k3) = if transposed {
                (&c.k2_transposed, &c.initial_transposed.k3)
            } else {
                (&c.k2, &c.initial.k3)
            };
            let key = ReductionCheckpoint::key(c.selector, transposed, &c.k1, k2, k3, &rc);
            let path = dir.as_ref().map(|d| {
                d.join(format!(
                    "reduction_{}_j{}.json",
                    if transposed { "col" } else { "row" },
                    c.selector.j + 1
                ))
            });
            if let Some(p) = &path {
                if let Some(t) = ReductionCheckpoint::load(p, &key) {
                    log::info!("n={} j={} reduction resumed from {}", cfg.n, c.selector.j + 1, p.display());
                    return Ok(t);
                }
            }
            let src = |prec: u32| cache.form(c.selector, prec);
            let t = reduce_to_fixpoint(&src, &c.k1, k2, k3, &rc)?;
            if let Some(p) = &path {
                ReductionCheckpoint::store(p, &key, &t)?;
            }
            Ok(t)
        })
        .collect()
}

fn small_b_check(field: &NumberField, roots: &[Interval], bound: &BigInt) -> Result<SmallBReport> {
    let mut candidates = 0u64;
    let mut solutions = Vec::new();
    let top = bound.to_i64().ok_or(Error::BoxTooLarge(u128::MAX))?;
    let one = BigInt::from(1);
    for b in (1..top).flat_map(|b| [b, -b]) {
        let bb = BigInt::from(b);
        let mut seen = std::collections::BTreeSet::new();
        for th in roots {
            let x = th.mul(&Interval::from_i64(b, th.precision()));
            let lo = x.lo().floor();
            for a in [lo.clone() - 1, lo.clone(), lo.clone() + 1, lo + 2] {
                if !seen.insert(a.clone()) {
                    continue;
                }
                candidates += 1;
                if field.unit_equation_residual(&a, &bb).abs() == one {
                    solutions.push([a.to_string(), bb.to_string()]);
                }
            }
        }
    }
    Ok(SmallBReport {
        bound: bound.to_string(),
        candidates,
        solutions,
    })
}

/// Run every stage for one `n`.
pub fn run_case(cfg: &RunConfig) -> Result<Certificate> {
    cfg.validate()?;
    match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(|| run_stages(cfg)),
        None => run_stages(cfg),
    }
}

fn run_stages(cfg: &RunConfig) -> Result<Certificate> {
    let n = cfg.n;
    let mut cert = Certificate::empty(n);
    let out_dir = cfg.resolved_report_dir().map(|d| d.join(format!("n{}", n)));
    if let Some(d) = &out_dir {
        std::fs::create_dir_all(d).map_err(|e| Error::io(d, e))?;
    }
    let mut st = Stages { cert: &mut cert };
    let result = (|| -> Option<()> {
        let f = st.run("polynomial", |c| {
            let f = build_fn(n)?;
            c.polynomial = f.coeffs().iter().map(|x| x.to_string()).collect();
            let d = format!("{}", f);
            Ok((f, d))
        })?;
        st.run("irreducibility", |c| {
            let cert = certify_irreducible(&f, 1000).ok_or_else(|| {
                Error::MinpolyMismatch("no irreducibility certificate for f_n".into())
            })?;
            c.irreducibility = Some(cert.clone());
            Ok(((), format!("{:?}", cert)))
        })?;
        let field = st.run("roots", |c| {
            let k = NumberField::new(n)?;
            c.roots = k.roots(cfg.precision)?.iter().map(bounds).collect();
            Ok((k, format!("{} real roots", n)))
        })?;
        let units = st.run("units", |c| {
            let u = load_units(n)?;
            let rep = verify_unit_system(&u, &field)?;
            c.units = Some(rep);
            let d = format!("{} units from {}", u.len(), u.source);
            Ok((u, d))
        })?;
        let dm = st.run("delta_minpoly", |c| {
            let m = delta_minpoly_data(&field, 0, 1, 2)?;
            c.delta_minpoly = Some(DeltaRecord {
                degree: m.degree,
                leading: m.leading.to_string(),
                certificate: m.certificate.clone(),
            });
            let d = format!("degree {}, leading {}", m.degree, m.leading);
            Ok((m, d))
        })?;
        let (cases, b_max) = st.run("constants", |c| {
            let ledger = FieldLedger::new(&field, &units, dm.leading.clone(), dm.degree, cfg.precision)?;
            let mut cases = Vec::new();
            let mut b_max = BigInt::zero();
            for sel in CaseSelector::all(n as usize) {
                let cc = ledger.case(sel, field.galois_degree())?;
                let bt = b_threshold(&cc.sep.c1, &cc.sep.c2, n as usize)?;
                c.constants.push(ConstantsRecord::new(&cc, &bt));
                b_max = b_max.max(bt);
                cases.push(cc);
            }
            if let Some(d) = &out_dir {
                report::write_json(&d.join("constants.json"), &c.constants)?;
            }
            Ok(((cases, b_max), format!("{} cases", n)))
        })?;
        let cache = FormCache {
            field: &field,
            units: &units,
            data: Mutex::new(None),
        };
        let k3max = st.run("reduction", |c| {
            let traces = reduce_all(cfg, &cache, &cases, false)?;
            c.final_k3 = traces.iter().map(|t| t.final_k3.to_string()).collect();
            let k3max = traces.iter().map(|t| t.final_k3.clone()).max().unwrap_or_default();
            c.reduction = traces;
            Ok((k3max.clone(), format!("final K3 {:?}, max {}", c.final_k3, k3max)))
        })?;
        if cfg.column_c6 {
            st.run("reduction_column_c6", |c| {
                let traces = reduce_all(cfg, &cache, &cases, true)?;
                let fin: Vec<String> = traces.iter().map(|t| t.final_k3.to_string()).collect();
                c.reduction_column_c6 = Some(traces);
                Ok(((), format!("final K3 {:?}", fin)))
            });
        }
        drop(cache);
        st.run("small_b", |c| {
            let roots = field.roots(cfg.precision)?;
            let rep = small_b_check(&field, &roots, &b_max)?;
            let d = format!("{} candidates below |B| = {}, {} solutions", rep.candidates, b_max, rep.solutions.len());
            let bad = !rep.solutions.is_empty();
            c.small_b = Some(rep);
            if bad {
                return Err(Error::Stage {
                    stage: "small_b".into(),
                    msg: "unexpected unit-equation solution with B != 0".into(),
                });
            }
            Ok(((), d))
        })?;
        let growth = st.run("growth", |c| {
            let m = growth_constant(field.poly());
            let k = k3max.to_u64().ok_or(Error::BoxTooLarge(u128::MAX))?;
            let v = max_power_coefficient(&units, &field, k)?;
            let g = GrowthData {
                m,
                v,
                k3max: k3max.clone(),
            };
            if let Some(d) = &out_dir {
                report::write_json(&d.join("growth.json"), &g)?;
            }
            c.growth = Some(g.clone());
            Ok((g, format!("M has {} digits", c.growth.as_ref().unwrap().m.to_string().len())))
        })?;
        let m_max = st.run("index_bound", |c| {
            let m = index_bound(&growth.m, &growth.v, n as usize)?;
            c.index_bound = Some(m.to_string());
            let v = m.to_u64().ok_or(Error::BoxTooLarge(u128::MAX))?;
            Ok((v, format!("m <= {}", v)))
        })?;
        let survivors = st.run("sieve", |c| {
            let panel = SievePanel::new(n, cfg.panel_size)?;
            let s = fib_mod_scan(m_max, &panel, ScanMode::Odd);
            let d = format!("primes {:?}, {} survivors", panel.primes, s.len());
            c.panel = Some(panel);
            Ok((s, d))
        })?;
        st.run("exact_checks", |c| {
            c.survivors = check_survivors(&survivors, n as u32);
            let powers = c.survivors.iter().filter(|s| s.is_power).count();
            Ok(((), format!("{} checked, {} powers", c.survivors.len(), powers)))
        })?;
        if cfg.enumeration {
            st.run("enumeration", |c| {
                let b = k3max.to_u32().ok_or(Error::BoxTooLarge(u128::MAX))?;
                let hits = direct_enumeration(&field, &units, b, cfg.enumeration_box)?;
                let bad = hits.iter().any(|h| !h.b.is_zero());
                let d = format!("bound {}, {} linear products", b, hits.len());
                c.enumeration = Some(hits);
                if bad {
                    return Err(Error::Stage {
                        stage: "enumeration".into(),
                        msg: "unit product with B != 0".into(),
                    });
                }
                Ok(((), d))
            });
        } else {
            st.skip("enumeration", "disabled");
        }
        Some(())
    })();
    let _ = result;
    cert.conclusion = cert.conclude();
    if let Some(d) = &out_dir {
        emit_certificate(&cert, &d.join("certificate.json"))?;
    }
    Ok(cert)
}
