//! Per-case constant ledger: root-separation constants `c1 … c5`, the
//! unit-log constant `c6`, the Baker–Wüstholz constant `c7`, the linear-form
//! constants `K1`, `K2` and the initial exponent bound `K3`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{iv_log, iv_log_abs, Interval};
use crate::error::{Error, Result};
use crate::numberfield::{eta, from_logs, invert_certified, unit_logs, NumberField, UnitSystem};

/// `(n, j, k, l)` with `k = j + 1`, `l = j + 2` modulo `n`. Indices are
/// 0-based positions in the ascending list of roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSelector {
    pub n: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl CaseSelector {
    pub fn new(n: usize, j: usize) -> Self {
        assert!(j < n, "root index out of range");
        CaseSelector {
            n,
            j,
            k: (j + 1) % n,
            l: (j + 2) % n,
        }
    }

    pub fn all(n: usize) -> Vec<CaseSelector> {
        (0..n).map(|j| CaseSelector::new(n, j)).collect()
    }
}

/// Root-separation constants for one `j`.
#[derive(Clone, Debug)]
pub struct SeparationConstants {
    pub c1: Interval,
    pub c2: Interval,
    pub c2a: Interval,
    pub c3: Interval,
    pub c4: Interval,
    pub c5: Interval,
}

/// `c6` in both conventions: from the maximal absolute row sum of `M^{-1}`
/// (which bounds the exponents) and from the maximal column sum.
#[derive(Clone, Debug)]
pub struct C6 {
    pub c6: Interval,
    pub c6_transposed: Interval,
}

/// Weil-height data feeding `c7`.
#[derive(Clone, Debug)]
pub struct HeightBound {
    /// Upper bound for `h(δ_jkl)`.
    pub h_delta: Interval,
    /// `log η_i`, bounding `h(γ_i)`.
    pub h_gamma: Vec<Interval>,
    pub c_bw: Interval,
}

/// Everything computed for one `(n, j)`.
#[derive(Clone, Debug)]
pub struct CaseConstants {
    pub selector: CaseSelector,
    pub sep: SeparationConstants,
    pub c6: C6,
    pub heights: HeightBound,
    pub c7: Interval,
    pub k1: Interval,
    pub k2: Interval,
    pub k2_transposed: Interval,
    pub initial: InitialBound,
    pub initial_transposed: InitialBound,
}

/// Solution of `U / log U <= T`.
#[derive(Clone, Debug)]
pub struct InitialBound {
    pub threshold: Interval,
    /// Approximate largest solution `U`.
    pub u_approx: f64,
    /// Smallest `10^e` exceeding every solution.
    pub exponent10: u32,
    pub k3: BigInt,
}

fn max_iv(xs: impl IntoIterator<Item = Interval>) -> Interval {
    xs.into_iter().reduce(|a, b| a.max(&b)).expect("non-empty")
}

fn min_iv(xs: impl IntoIterator<Item = Interval>) -> Interval {
    xs.into_iter().reduce(|a, b| a.min(&b)).expect("non-empty")
}

/// `c2 = max |(θ_t − θ_r)/(θ_t − θ_s)|` over distinct `r, s, t`.
pub fn compute_c2(th: &[Interval]) -> Result<Interval> {
    let n = th.len();
    let mut best = None::<Interval>;
    for t in 0..n {
        for r in 0..n {
            for s in 0..n {
                if r == s || r == t || s == t {
                    continue;
                }
                let v = th[t].sub(&th[r]).div(&th[t].sub(&th[s]))?.abs();
                best = Some(match best {
                    None => v,
                    Some(b) => b.max(&v),
                });
            }
        }
    }
    best.ok_or(Error::InvalidConfig("need at least three roots".into()))
}

/// `c1, c2, c2a, c3, c4, c5` for root index `j`.
pub fn compute_c_constants(field: &NumberField, j: usize, prec: u32) -> Result<SeparationConstants> {
    let th = field.roots(prec)?;
    let th: Vec<Interval> = th.iter().map(|x| x.with_precision(prec)).collect();
    let c2 = compute_c2(&th)?;
    separation_with_c2(&th, j, c2)
}

fn separation_with_c2(th: &[Interval], j: usize, c2: Interval) -> Result<SeparationConstants> {
    let n = th.len();
    let prec = th[j].precision();
    let others = || (0..n).filter(move |&i| i != j);
    let c1 = min_iv(others().map(|i| th[j].sub(&th[i]).abs()));
    let c3 = max_iv(others().map(|i| th[j].sub(&th[i]).abs()));
    let mut ratios = Vec::new();
    for s in others() {
        for t in others() {
            if s != t {
                ratios.push(th[j].sub(&th[s]).div(&th[j].sub(&th[t]))?.abs());
            }
        }
    }
    let c2a = max_iv(ratios);
    let c4 = c3.add(&c1.div(&c2.mul_pow2(2))?);
    let log4 = iv_log(&Interval::from_i64(4, prec))?;
    let one = Interval::one(prec);
    let a = one.add(&iv_log(&c1.mul_pow2(-1))?.abs().div(&log4)?);
    let b = one.add(&iv_log(&c4)?.abs().div(&log4)?);
    Ok(SeparationConstants {
        c5: a.max(&b),
        c1,
        c2,
        c2a,
        c3,
        c4,
    })
}

/// `c6` from a precomputed table of unit logs (`logs[i][k]`).
pub fn c6_from_logs(logs: &[Vec<Interval>], j: usize, c5: &Interval) -> Result<C6> {
    let m = from_logs(logs, j);
    let inv = invert_certified(&m.entries)?;
    Ok(C6 {
        c6: inv.row_norm.mul(c5),
        c6_transposed: inv.col_norm.mul(c5),
    })
}

pub fn compute_c6(
    field: &NumberField,
    units: &UnitSystem,
    j: usize,
    c5: &Interval,
    prec: u32,
) -> Result<C6> {
    let logs = unit_logs(units, field, prec)?;
    c6_from_logs(&logs, j, c5)
}

/// `C(n, d) = 18 (n+1)! n^(n+1) (32 d)^(n+2) log(2 n d)`.
pub fn bw_constant(n: u64, d: u64, prec: u32) -> Result<Interval> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidConfig("Baker-Wustholz constant needs n >= 2, d >= 1".into()));
    }
    let fact: BigInt = (1..=n + 1).map(BigInt::from).product();
    let exact = BigInt::from(18)
        * fact
        * num_traits::pow(BigInt::from(n), (n + 1) as usize)
        * num_traits::pow(BigInt::from(32 * d), (n + 2) as usize);
    let lg = iv_log(&Interval::from_i64((2 * n * d) as i64, prec))?;
    Ok(Interval::from_int(&exact, prec).mul(&lg))
}

/// Height data and `c7` for one case.
#[allow(clippy::too_many_arguments)]
pub fn compute_c7(
    n: usize,
    galois_degree: usize,
    etas: &[Interval],
    c2a: &Interval,
    a0: &BigInt,
    d_g: usize,
    prec: u32,
) -> Result<(Interval, HeightBound)> {
    let c_bw = bw_constant(n as u64, galois_degree as u64, prec)?;
    let h_gamma: Vec<Interval> = etas.iter().map(iv_log).collect::<Result<_>>()?;
    let h_delta = iv_log(&Interval::from_int(a0, prec))?
        .div(&Interval::from_i64(d_g as i64, prec))?
        .add(&iv_log(c2a)?);
    let prod = h_gamma
        .iter()
        .fold(Interval::one(prec), |acc, h| acc.mul(h));
    let c7 = c_bw.mul(&prod).mul(&h_delta);
    Ok((
        c7,
        HeightBound {
            h_delta,
            h_gamma,
            c_bw,
        },
    ))
}

/// `K1 = 2^(n+1) c2 / c1^n`, `K2 = n / c6`.
pub fn compute_k1k2(c1: &Interval, c2: &Interval, c6: &Interval, n: usize) -> Result<(Interval, Interval)> {
    let prec = c1.precision();
    let k1 = c2.mul_pow2(n as i64 + 1).div(&c1.powi(n as i64)?)?;
    let k2 = Interval::from_i64(n as i64, prec).div(c6)?;
    Ok((k1, k2))
}

/// Threshold `T = c6 c7 / n + c6 |log(c1^n / (2^(n+1) c2))| / (n log 4)` and
/// the smallest power of ten above every `U` with `U / log U <= T`.
pub fn initial_bound(
    c1: &Interval,
    c2: &Interval,
    c6: &Interval,
    c7: &Interval,
    n: usize,
) -> Result<InitialBound> {
    let prec = c1.precision();
    let nn = Interval::from_i64(n as i64, prec);
    let log4 = iv_log(&Interval::from_i64(4, prec))?;
    let inner = c1.powi(n as i64)?.div(&c2.mul_pow2(n as i64 + 1))?;
    let t = c6
        .mul(c7)
        .div(&nn)?
        .add(&c6.mul(&iv_log(&inner)?.abs()).div(&nn.mul(&log4))?);
    let tf = t.hi().to_f64();
    if !(tf > std::f64::consts::E) {
        return Err(Error::InvalidConfig("threshold must exceed e".into()));
    }
    let mut u = tf * tf.ln();
    for _ in 0..200 {
        u = tf * u.ln();
    }
    // certify: 10^e / log(10^e) > T.hi, smallest such e
    let ratio = |e: u32| -> Result<Interval> {
        let p = Interval::from_int(&num_traits::pow(BigInt::from(10), e as usize), prec);
        p.div(&iv_log(&p)?)
    };
    let mut e = u.log10().ceil().max(1.0) as u32;
    while !ratio(e)?.certainly_gt(&t) {
        e += 1;
    }
    while e > 1 && ratio(e - 1)?.certainly_gt(&t) {
        e -= 1;
    }
    Ok(InitialBound {
        threshold: t,
        u_approx: u,
        exponent10: e,
        k3: num_traits::pow(BigInt::from(10), e as usize),
    })
}

/// Data shared by every `j` of one field.
pub struct FieldLedger {
    pub roots: Vec<Interval>,
    pub c2: Interval,
    pub logs: Vec<Vec<Interval>>,
    pub etas: Vec<Interval>,
    pub a0: BigInt,
    pub d_g: usize,
}

impl FieldLedger {
    pub fn new(field: &NumberField, units: &UnitSystem, a0: BigInt, d_g: usize, prec: u32) -> Result<Self> {
        let roots: Vec<Interval> = field.roots(prec)?.iter().map(|x| x.with_precision(prec)).collect();
        let c2 = compute_c2(&roots)?;
        let logs = unit_logs(units, field, prec)?;
        let etas = (0..units.len())
            .map(|k| eta(units, field, k, prec))
            .collect::<Result<_>>()?;
        Ok(FieldLedger {
            roots,
            c2,
            logs,
            etas,
            a0,
            d_g,
        })
    }

    pub fn case(&self, sel: CaseSelector, galois_degree: usize) -> Result<CaseConstants> {
        let n = sel.n;
        let sep = separation_with_c2(&self.roots, sel.j, self.c2.clone())?;
        let c6 = c6_from_logs(&self.logs, sel.j, &sep.c5)?;
        let (c7, heights) =
            compute_c7(n, galois_degree, &self.etas, &sep.c2a, &self.a0, self.d_g, sep.c1.precision())?;
        let (k1, k2) = compute_k1k2(&sep.c1, &sep.c2, &c6.c6, n)?;
        let (_, k2t) = compute_k1k2(&sep.c1, &sep.c2, &c6.c6_transposed, n)?;
        let initial = initial_bound(&sep.c1, &sep.c2, &c6.c6, &c7, n)?;
        let initial_transposed = initial_bound(&sep.c1, &sep.c2, &c6.c6_transposed, &c7, n)?;
        Ok(CaseConstants {
            selector: sel,
            sep,
            c6,
            heights,
            c7,
            k1,
            k2,
            k2_transposed: k2t,
            initial,
            initial_transposed,
        })
    }
}

/// `δ = log |(θ_j − θ_k)/(θ_j − θ_l)|` and `μ_r = log |ε_r^(l) / ε_r^(k)|`.
pub fn linear_form_data(
    roots: &[Interval],
    logs: &[Vec<Interval>],
    sel: CaseSelector,
) -> Result<(Interval, Vec<Interval>)> {
    let (j, k, l) = (sel.j, sel.k, sel.l);
    let delta = iv_log_abs(&roots[j].sub(&roots[k]).div(&roots[j].sub(&roots[l]))?)?;
    let mu = (0..logs[0].len())
        .map(|r| logs[l][r].sub(&logs[k][r]))
        .collect();
    Ok((delta, mu))
}

/// Lower bound on `|B|` from which the inequality chain applies:
/// `max{4, (2 c2)^(1/n) · 2 / c1}` rounded up.
pub fn b_threshold(c1: &Interval, c2: &Interval, n: usize) -> Result<BigInt> {
    let prec = c1.precision();
    let root = crate::arith::iv_exp(&iv_log(&c2.mul_pow2(1))?.div(&Interval::from_i64(n as i64, prec))?)?;
    let v = root.mul_pow2(1).div(c1)?;
    let b = v.hi().ceil();
    Ok(b.max(BigInt::from(4)))
}
