use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{iv_log, Interval};
use crate::error::Result;
use crate::numberfield::{NumberField, UnitSystem};
use crate::polynomial::IntPolynomial;

/// Inputs of the index bound.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthData {
    #[serde(serialize_with = "crate::search::ser_big")]
    pub m: BigInt,
    #[serde(serialize_with = "crate::search::ser_rat")]
    pub v: BigRational,
    #[serde(serialize_with = "crate::search::ser_big")]
    pub k3max: BigInt,
}

/// Rows `θ^k = Σ_i r_{k,i} θ^i` for `0 ≤ k ≤ 2n − 2`, for monic `f`.
pub fn reduction_table(f: &IntPolynomial) -> Vec<Vec<BigInt>> {
    let n = f.deg();
    let fc = f.coeffs();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(2 * n - 1);
    for k in 0..2 * n - 1 {
        let row = if k < n {
            let mut r = vec![BigInt::zero(); n];
            r[k] = 1.into();
            r
        } else {
            let prev = &rows[k - 1];
            let top = prev[n - 1].clone();
            (0..n)
                .map(|i| {
                    let shifted = if i == 0 { BigInt::zero() } else { prev[i - 1].clone() };
                    shifted - &top * &fc[i]
                })
                .collect()
        };
        rows.push(row);
    }
    rows
}

/// `M = max_i Σ_k d_k |r_{k,i}|` where `d_k` counts pairs `s + t = k` with
/// `0 ≤ s, t ≤ n − 1`.
pub fn growth_constant(f: &IntPolynomial) -> BigInt {
    assert!(f.is_monic(), "growth constant needs a monic polynomial");
    let n = f.deg();
    let rows = reduction_table(f);
    let d = |k: usize| (k.min(2 * n - 2 - k) + 1) as u64;
    (0..n)
        .map(|i| {
            rows.iter()
                .enumerate()
                .map(|(k, r)| r[i].abs() * d(k))
                .sum::<BigInt>()
        })
        .max()
        .unwrap_or_default()
}

/// Largest `|coefficient|` over `ε_r^i`, `0 < |i| ≤ k3max`, for every unit.
pub fn max_power_coefficient(units: &UnitSystem, field: &NumberField, k3max: u64) -> Result<BigRational> {
    let mut best = BigRational::zero();
    for u in &units.units {
        for base in [u.clone(), field.inverse(u)?] {
            let mut p = base.clone();
            for i in 1..=k3max {
                let c = p.max_abs_coeff();
                if c > best {
                    best = c;
                }
                if i < k3max {
                    p = field.mul(&p, &base);
                }
            }
        }
    }
    Ok(best)
}

/// Largest `m` with `φ^m / √5 ≤ (√5 M^(n−2) v^(n−1))^n`.
pub fn index_bound(m: &BigInt, v: &BigRational, n: usize) -> Result<BigInt> {
    let prec = 128;
    let half_log5 = iv_log(&Interval::from_i64(5, prec))?.mul_pow2(-1);
    let lm = iv_log(&Interval::from_int(m, prec))?;
    let lv = iv_log(&Interval::from_rational(v, prec))?;
    let nn = |k: usize| Interval::from_i64(k as i64, prec);
    let inner = half_log5
        .add(&lm.mul(&nn(n - 2)))
        .add(&lv.mul(&nn(n - 1)));
    let total = inner.mul(&nn(n)).add(&half_log5);
    let phi = Interval::from_i64(5, prec)
        .sqrt()?
        .add(&Interval::one(prec))
        .mul_pow2(-1);
    let r = total.div(&iv_log(&phi)?)?;
    Ok(r.hi().floor())
}
