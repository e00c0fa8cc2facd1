use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::basis::{lll_reduce_progressive, LatticeBasis};
use crate::arith::{iv_log, rational_to_decimal, Interval, Round};
use crate::error::{Error, Result};

/// `Λ = δ + Σ a_i μ_i`.
#[derive(Clone, Debug)]
pub struct LinearForm {
    pub delta: Interval,
    pub mu: Vec<Interval>,
}

impl LinearForm {
    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    pub fn precision(&self) -> u32 {
        self.mu
            .iter()
            .map(|m| m.precision())
            .chain(std::iter::once(self.delta.precision()))
            .min()
            .unwrap_or(0)
    }
}

/// Generators `e_i + [c0 μ_i] e_q` (`i < q`) and `[c0 μ_q] e_q`, one per
/// row. The displayed matrix with the rounded values along the bottom row
/// is the transpose.
pub fn build_reduction_lattice(mu: &[Interval], c0: &BigInt) -> Result<LatticeBasis> {
    let q = mu.len();
    if q == 0 {
        return Err(Error::RankDeficient);
    }
    let mut rows = Vec::with_capacity(q);
    for (i, m) in mu.iter().enumerate() {
        let v = m.mul(&Interval::from_int(c0, m.precision())).unique_integer()?;
        let mut r = vec![BigInt::zero(); q];
        if i + 1 < q {
            r[i] = BigInt::one();
        }
        r[q - 1] += v;
        rows.push(r);
    }
    if rows[q - 1][q - 1].is_zero() {
        return Err(Error::RankDeficient);
    }
    LatticeBasis::new(rows)
}

fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_opt_big<S: Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn de_big<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

fn de_opt_big<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<BigInt>, D::Error> {
    Option::<String>::deserialize(d)?
        .map(|s| s.parse().map_err(serde::de::Error::custom))
        .transpose()
}

fn de_rat<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    crate::arith::parse_decimal(&s).map_err(serde::de::Error::custom)
}

fn ser_rat<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_decimal(x, 12, Round::Down))
}

/// One attempt of the reduction step.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub iteration: usize,
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    pub k3_in: BigInt,
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    pub sigma1: BigInt,
    /// Decimal digits of `c0`.
    pub c0_digits: usize,
    pub i_star: Option<usize>,
    /// `||s_{i*}||² |b_1|²`.
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub test_lhs: BigRational,
    /// `2^(q−1) (4q² + 3q − 3/4) K3²`.
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub test_rhs: BigRational,
    #[serde(serialize_with = "ser_opt_big", deserialize_with = "de_opt_big")]
    pub k3_out: Option<BigInt>,
    pub failure: Option<String>,
    pub precision: u32,
    pub swaps: u64,
}

impl ReductionRecord {
    pub fn succeeded(&self) -> bool {
        self.k3_out.is_some()
    }
}

fn lll_delta() -> BigRational {
    BigRational::new(3.into(), 4.into())
}

/// Solve `Σ s_i b_i = x` over `Q` for the rows `b_i`.
fn solve_rows(b: &LatticeBasis, x: &[BigInt]) -> Result<Vec<BigRational>> {
    let n = b.dim();
    // augmented system with columns of Bᵀ
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..n).map(|c| BigRational::from(b.rows[c][r].clone())).collect();
            row.push(BigRational::from(x[r].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::RankDeficient)?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n].clone()).collect())
}

fn dist_to_int(x: &BigRational) -> BigRational {
    let f = x.floor();
    let d = x - &f;
    let e = BigRational::one() - &d;
    if d < e {
        d
    } else {
        e
    }
}

/// One bound-reduction step for `|Λ| < K1 exp(−K2 A)`, `A ≤ K3`.
pub fn reduction_step(
    k1: &Interval,
    k2: &Interval,
    k3: &BigInt,
    form: &LinearForm,
    sigma1: &BigInt,
    iteration: usize,
    chunk: u64,
) -> Result<ReductionRecord> {
    let q = form.rank();
    let prec = form.precision();
    let c0 = sigma1 * num_traits::pow(k3.clone(), q);
    let gens = build_reduction_lattice(&form.mu, &c0)?;
    let xq = form
        .delta
        .mul(&Interval::from_int(&c0, prec))
        .neg()
        .unique_integer()?;
    let mut x = vec![BigInt::zero(); q];
    x[q - 1] = xq;
    let red = lll_reduce_progressive(&gens, &lll_delta(), chunk)?;
    let s = solve_rows(&red.basis, &x)?;
    let qq = BigRational::from(BigInt::from(q));
    let rhs = BigRational::from(BigInt::one() << (q - 1))
        * (BigRational::from(BigInt::from(4)) * &qq * &qq + BigRational::from(BigInt::from(3)) * &qq
            - BigRational::new(3.into(), 4.into()))
        * BigRational::from(k3 * k3);
    let mut rec = ReductionRecord {
        iteration,
        k3_in: k3.clone(),
        sigma1: sigma1.clone(),
        c0_digits: c0.to_string().len(),
        i_star: None,
        test_lhs: BigRational::zero(),
        test_rhs: rhs.clone(),
        k3_out: None,
        failure: None,
        precision: prec,
        swaps: red.swaps,
    };
    let i_star = match (0..q).rev().find(|&i| !s[i].is_integer()) {
        Some(i) => i,
        None => {
            rec.failure = Some("all s_i integral".into());
            return Ok(rec);
        }
    };
    rec.i_star = Some(i_star);
    let d = dist_to_int(&s[i_star]);
    let lhs = &d * &d * BigRational::from(red.basis.norm_sq(0));
    rec.test_lhs = lhs.clone();
    if lhs < rhs {
        rec.failure = Some("hypothesis fails".into());
        return Ok(rec);
    }
    // K3' = floor((1/K2) log(c0 K1 / (q K3)))
    let p = k1.precision().max(64);
    let arg = Interval::from_int(&c0, p)
        .mul(k1)
        .div(&Interval::from_int(&(BigInt::from(q) * k3), p))?;
    let out = if arg.hi() <= &crate::arith::BigFloat::one() {
        BigInt::zero()
    } else {
        let v = iv_log(&arg)?.div(k2)?;
        v.hi().floor().max(BigInt::zero())
    };
    rec.k3_out = Some(out);
    Ok(rec)
}

/// Settings for [`reduce_to_fixpoint`].
#[derive(Clone, Debug)]
pub struct ReductionConfig {
    /// Starting `σ1`; `None` picks `(2^((q−1)/2) · sqrt(4q² + 3q))^q`.
    pub sigma1: Option<BigInt>,
    pub max_attempts: usize,
    /// Extra `σ1` starting points tried once the bound stops decreasing.
    pub polish: usize,
    pub chunk_bits: u64,
    pub precision_ceiling: u32,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            sigma1: None,
            max_attempts: 12,
            polish: 8,
            chunk_bits: 96,
            precision_ceiling: crate::arith::DEFAULT_PRECISION_CEILING,
        }
    }
}

pub fn default_sigma(q: usize) -> BigInt {
    let qf = q as f64;
    let base = 2f64.powf((qf - 1.0) / 2.0) * (4.0 * qf * qf + 3.0 * qf).sqrt();
    let log2 = qf * base.log2();
    BigInt::one() << (log2.ceil() as usize)
}

/// The full reduction trace.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionTrace {
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    pub initial_k3: BigInt,
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    pub final_k3: BigInt,
    pub records: Vec<ReductionRecord>,
}

impl ReductionTrace {
    /// Successive successful bounds, starting with the initial one.
    pub fn bounds(&self) -> Vec<BigInt> {
        std::iter::once(self.initial_k3.clone())
            .chain(
                self.records
                    .iter()
                    .filter_map(|r| r.k3_out.clone().filter(|v| v < &r.k3_in)),
            )
            .collect()
    }
}

/// Iterate [`reduction_step`] from `k3` until the bound stops decreasing.
/// `source(prec)` produces the linear form at `prec` bits. On a failed
/// hypothesis `σ1` grows by the observed shortfall.
pub fn reduce_to_fixpoint(
    source: &dyn Fn(u32) -> Result<LinearForm>,
    k1: &Interval,
    k2: &Interval,
    k3: &BigInt,
    cfg: &ReductionConfig,
) -> Result<ReductionTrace> {
    let mut form: Option<LinearForm> = None;
    let mut records = Vec::new();
    let mut current = k3.clone();
    let mut iteration = 0;
    let mut q = None;
    let mut polish = 0usize;
    loop {
        iteration += 1;
        let mut sigma = match (&cfg.sigma1, q) {
            (Some(s), _) => Some(s * (2 * polish + 1)),
            (None, Some(qv)) if polish > 0 => Some(default_sigma(qv) * (2 * polish + 1)),
            _ => None,
        };
        let mut attempts = 0;
        let out = loop {
            attempts += 1;
            let qv = match q {
                Some(v) => v,
                None => {
                    let f = source(128)?;
                    let v = f.rank();
                    q = Some(v);
                    v
                }
            };
            let s = sigma.get_or_insert_with(|| default_sigma(qv)).clone();
            let c0_bits = (&s * num_traits::pow(current.clone(), qv)).bits() as u32;
            let mut prec = (c0_bits + 96).next_multiple_of(256);
            let rec = loop {
                if form.as_ref().map_or(true, |f| f.precision() < prec) {
                    form = Some(source(prec)?);
                }
                let f = form.as_ref().unwrap();
                match reduction_step(k1, k2, &current, f, &s, iteration, cfg.chunk_bits) {
                    Err(e) if e.wants_more_precision() && prec < cfg.precision_ceiling => {
                        prec = (prec * 2).min(cfg.precision_ceiling);
                    }
                    r => break r?,
                }
            };
            let ok = rec.k3_out.clone();
            let lhs_log = log2_rat(&rec.test_lhs);
            let rhs_log = log2_rat(&rec.test_rhs);
            log::debug!(
                "step {} K3={} sigma=2^{} ok={:?}",
                iteration,
                current,
                s.bits().saturating_sub(1),
                ok
            );
            records.push(rec);
            if let Some(v) = ok {
                break v;
            }
            if attempts >= cfg.max_attempts {
                if polish > 0 {
                    break current.clone();
                }
                return Err(Error::HypothesisFailed(format!(
                    "K3 = {} after {} choices of sigma1",
                    current, attempts
                )));
            }
            let shortfall = match (lhs_log, rhs_log) {
                (Some(l), Some(r)) if r > l => ((r - l) * qv as f64 / 2.0).ceil() as usize,
                _ => 0,
            };
            sigma = Some(s << (shortfall + 1));
        };
        if out < current {
            current = out;
            polish = 0;
        } else if polish < cfg.polish {
            polish += 1;
        } else {
            break;
        }
    }
    Ok(ReductionTrace {
        initial_k3: k3.clone(),
        final_k3: current,
        records,
    })
}

fn log2_rat(x: &BigRational) -> Option<f64> {
    if !x.is_positive() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let sh = |v: &BigInt| -> (f64, i64) {
        let b = v.bits() as i64;
        let s = (b - 60).max(0);
        ((v >> s as usize).to_f64().unwrap_or(f64::NAN), s)
    };
    let (nf, ns) = sh(n);
    let (df, ds) = sh(d);
    Some(nf.log2() - df.log2() + (ns - ds) as f64)
}
