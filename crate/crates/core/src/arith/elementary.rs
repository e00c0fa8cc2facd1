//! Certified `log` and `exp`.
//!
//! Both are evaluated by interval series at a working precision a little
//! above the target, with an explicit tail bound folded into the result.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::float::{BigFloat, Round};
use super::interval::Interval;
use crate::error::{Error, Result};

const GUARD: u32 = 40;

/// `atanh(t)` for an interval with `|t| <= 1/2`.
fn atanh_series(t: &Interval, wprec: u32) -> Interval {
    let t2 = t.sqr();
    let mut pow = t.clone();
    let mut sum = t.clone();
    let eps = BigFloat::new(BigInt::one(), -(wprec as i64) - 4);
    let mut i: i64 = 3;
    loop {
        pow = pow.mul(&t2);
        let term = pow.div(&Interval::from_i64(i, wprec)).expect("nonzero");
        sum = sum.add(&term);
        // remaining terms are bounded by 2 |t|^(i+2) since t^2 <= 1/4 leaves
        // a geometric tail of ratio at most 1/4
        let tail = pow.mag().mul_round(&t2.mag(), wprec, Round::Up).mul_pow2(1);
        if tail < eps || tail.is_zero() {
            return sum.widen(&tail);
        }
        i += 2;
    }
}

/// Certified `ln 2` at `prec` bits.
pub fn ln2(prec: u32) -> Interval {
    let w = prec + GUARD;
    let third = Interval::one(w).div(&Interval::from_i64(3, w)).unwrap();
    atanh_series(&third, w).mul_pow2(1).with_precision(prec)
}

/// Enclosure of `log x` for a positive point `x`.
fn log_point(x: &BigFloat, prec: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::NonPositiveArgument);
    }
    if *x == BigFloat::one() {
        return Ok(Interval::zero(prec));
    }
    let mut k = x.ilog2().unwrap();
    let mut y = x.mul_pow2(-k);
    let two = BigFloat::from_i64(2);
    if y.mul_exact(&y) > two {
        k += 1;
        y = y.mul_pow2(-1);
    }
    // y in [1/sqrt2, sqrt2]; pull it towards 1 with r square roots
    let r = ((prec as f64).sqrt() / 2.0) as u32;
    let w = prec + GUARD + r + 64 - (k.unsigned_abs().leading_zeros());
    let mut yi = Interval::point(y, w);
    for _ in 0..r {
        yi = yi.sqrt()?;
    }
    let one = Interval::one(w);
    let t = yi.sub(&one).div(&yi.add(&one))?;
    let logy = atanh_series(&t, w).mul_pow2(1 + r as i64);
    let out = if k == 0 {
        logy
    } else {
        ln2(w).mul(&Interval::from_i64(k, w)).add(&logy)
    };
    Ok(out.with_precision(prec))
}

/// Enclosure of `exp x` for a point `x`.
fn exp_point(x: &BigFloat, prec: u32) -> Result<Interval> {
    if x.is_zero() {
        return Ok(Interval::one(prec));
    }
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > 1e15 {
        return Err(Error::PrecisionExhausted(prec));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let s = ((prec as f64).sqrt() / 2.0) as u32;
    let extra = 64 - k.unsigned_abs().leading_zeros();
    let w = prec + GUARD + s + extra;
    let mut r = Interval::point(x.clone(), w);
    if k != 0 {
        r = r.sub(&ln2(w).mul(&Interval::from_i64(k, w)));
    }
    let r = r.mul_pow2(-(s as i64));
    let eps = BigFloat::new(BigInt::one(), -(w as i64) - 4);
    let mut term = Interval::one(w);
    let mut sum = Interval::one(w);
    let mut i: i64 = 1;
    loop {
        term = term.mul(&r).div(&Interval::from_i64(i, w))?;
        sum = sum.add(&term);
        // |r| < 1/2 here, so the tail is below the last term
        let m = term.mag();
        if m < eps {
            sum = sum.widen(&m);
            break;
        }
        i += 1;
    }
    for _ in 0..s {
        sum = sum.sqr();
    }
    Ok(sum.mul_pow2(k).with_precision(prec))
}

/// Enclosure of `log` over a positive interval.
pub fn iv_log(x: &Interval) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::NonPositiveArgument);
    }
    let p = x.precision();
    let lo = log_point(x.lo(), p)?;
    if x.is_point() {
        return Ok(lo);
    }
    let hi = log_point(x.hi(), p)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone(), p))
}

/// Enclosure of `exp` over an interval.
pub fn iv_exp(x: &Interval) -> Result<Interval> {
    let p = x.precision();
    let lo = exp_point(x.lo(), p)?;
    if x.is_point() {
        return Ok(lo);
    }
    let hi = exp_point(x.hi(), p)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone(), p))
}

/// `log |x|` for an interval that excludes zero.
pub fn iv_log_abs(x: &Interval) -> Result<Interval> {
    if x.contains_zero() {
        return Err(Error::NonPositiveArgument);
    }
    iv_log(&x.abs())
}

/// `log2` estimate of a big integer's magnitude, for sizing precisions.
pub fn approx_log2_int(n: &BigInt) -> f64 {
    let b = n.bits();
    if b <= 60 {
        n.to_f64().unwrap().abs().log2()
    } else {
        BigFloat::from_int(n.clone()).log2_approx()
    }
}
