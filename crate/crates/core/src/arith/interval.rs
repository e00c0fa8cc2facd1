use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::float::{decimal_string, BigFloat, Round};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with dyadic endpoints.
///
/// `prec` is the mantissa width used when rounding results outward. Binary
/// operations work at the larger precision of their operands.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
    prec: u32,
}

impl Interval {
    pub fn new(lo: BigFloat, hi: BigFloat, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, prec }
    }

    /// Exact point; the value is not rounded.
    pub fn point(x: BigFloat, prec: u32) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Interval::point(BigFloat::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Interval::point(BigFloat::one(), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Interval::from_int(&BigInt::from(n), prec)
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        let x = BigFloat::from_int(n.clone());
        Interval {
            lo: x.round(prec, Round::Down),
            hi: x.round(prec, Round::Up),
            prec,
        }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: BigFloat::from_rational(q, prec, Round::Down),
            hi: BigFloat::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    /// Enclosure of the rational bounds `[a, b]`.
    pub fn from_rationals(a: &BigRational, b: &BigRational, prec: u32) -> Self {
        assert!(a <= b, "interval endpoints out of order");
        Interval {
            lo: BigFloat::from_rational(a, prec, Round::Down),
            hi: BigFloat::from_rational(b, prec, Round::Up),
            prec,
        }
    }

    /// Parse a decimal literal such as `-1.8086`, `2.8731e78` or `10^34`.
    pub fn from_decimal(s: &str, prec: u32) -> Result<Self> {
        Ok(Interval::from_rational(&parse_decimal(s)?, prec))
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same enclosure, tagged with a different working precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        Interval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn width(&self) -> BigFloat {
        self.hi.sub_exact(&self.lo)
    }

    pub fn mid(&self) -> BigFloat {
        self.lo.add_exact(&self.hi).mul_pow2(-1)
    }

    /// Midpoint as an `f64`, for logging and heuristics only.
    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// `log2(width)`, or `-inf` for a point.
    pub fn width_log2(&self) -> f64 {
        self.width().log2_approx()
    }

    /// Relative width `log2(width / |mid|)`.
    pub fn rel_width_log2(&self) -> f64 {
        self.width().log2_approx() - self.mid().log2_approx()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains(&self, x: &BigFloat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Widen each endpoint by `ulps` units in the last place at `prec` bits.
    pub fn widen_ulps(&self, ulps: u32) -> Self {
        let step = |x: &BigFloat, up: bool| -> BigFloat {
            let e = match x.ilog2() {
                Some(t) => t - self.prec as i64 + 1,
                None => return x.clone(),
            };
            let d = BigFloat::new(BigInt::from(ulps), e);
            if up {
                x.add_exact(&d)
            } else {
                x.sub_exact(&d)
            }
        };
        Interval {
            lo: step(&self.lo, false),
            hi: step(&self.hi, true),
            prec: self.prec,
        }
    }

    /// Widen by an absolute amount `r >= 0` on both sides.
    pub fn widen(&self, r: &BigFloat) -> Self {
        let p = self.prec;
        Interval {
            lo: self.lo.sub_round(r, p, Round::Down),
            hi: self.hi.add_round(r, p, Round::Up),
            prec: p,
        }
    }

    pub fn hull(&self, other: &Interval) -> Self {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(Interval {
                lo,
                hi,
                prec: self.prec.max(other.prec),
            })
        } else {
            None
        }
    }

    fn p2(&self, other: &Interval) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn add(&self, other: &Interval) -> Self {
        let p = self.p2(other);
        Interval {
            lo: self.lo.add_round(&other.lo, p, Round::Down),
            hi: self.hi.add_round(&other.hi, p, Round::Up),
            prec: p,
        }
    }

    pub fn sub(&self, other: &Interval) -> Self {
        let p = self.p2(other);
        Interval {
            lo: self.lo.sub_round(&other.hi, p, Round::Down),
            hi: self.hi.sub_round(&other.lo, p, Round::Up),
            prec: p,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval {
                lo: BigFloat::zero(),
                hi: self.hi.clone().max(self.lo.neg()),
                prec: self.prec,
            }
        }
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> BigFloat {
        self.hi.abs().max(self.lo.abs())
    }

    /// Lower bound on `|x|` over the interval.
    pub fn mig(&self) -> BigFloat {
        if self.contains_zero() {
            BigFloat::zero()
        } else {
            self.hi.abs().min(self.lo.abs())
        }
    }

    pub fn mul(&self, other: &Interval) -> Self {
        let p = self.p2(other);
        let (a, b) = (&self.lo, &self.hi);
        let (c, d) = (&other.lo, &other.hi);
        let down = |x: &BigFloat, y: &BigFloat| x.mul_round(y, p, Round::Down);
        let up = |x: &BigFloat, y: &BigFloat| x.mul_round(y, p, Round::Up);
        let (lo, hi) = if !a.is_negative() {
            if !c.is_negative() {
                (down(a, c), up(b, d))
            } else if !d.is_positive() {
                (down(b, c), up(a, d))
            } else {
                (down(b, c), up(b, d))
            }
        } else if !b.is_positive() {
            if !c.is_negative() {
                (down(a, d), up(b, c))
            } else if !d.is_positive() {
                (down(b, d), up(a, c))
            } else {
                (down(a, d), up(a, c))
            }
        } else if !c.is_negative() {
            (down(a, d), up(b, d))
        } else if !d.is_positive() {
            (down(b, c), up(a, c))
        } else {
            (
                down(a, d).min(down(b, c)),
                up(a, c).max(up(b, d)),
            )
        };
        Interval { lo, hi, prec: p }
    }

    pub fn sqr(&self) -> Self {
        let a = self.abs();
        Interval {
            lo: a.lo.mul_round(&a.lo, self.prec, Round::Down),
            hi: a.hi.mul_round(&a.hi, self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::DivisionByIntervalContainingZero);
        }
        let one = BigFloat::one();
        let p = self.prec;
        Ok(Interval {
            lo: one.div_round(&self.hi, p, Round::Down),
            hi: one.div_round(&self.lo, p, Round::Up),
            prec: p,
        })
    }

    pub fn div(&self, other: &Interval) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::DivisionByIntervalContainingZero);
        }
        let p = self.p2(other);
        let (a, b) = (&self.lo, &self.hi);
        let (c, d) = (&other.lo, &other.hi);
        let down = |x: &BigFloat, y: &BigFloat| x.div_round(y, p, Round::Down);
        let up = |x: &BigFloat, y: &BigFloat| x.div_round(y, p, Round::Up);
        let (lo, hi) = if c.is_positive() {
            if !a.is_negative() {
                (down(a, d), up(b, c))
            } else if !b.is_positive() {
                (down(a, c), up(b, d))
            } else {
                (down(a, c), up(b, c))
            }
        } else if !a.is_negative() {
            (down(b, d), up(a, c))
        } else if !b.is_positive() {
            (down(b, c), up(a, d))
        } else {
            (down(b, d), up(a, d))
        };
        Ok(Interval { lo, hi, prec: p })
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        self.mul(&Interval::from_int(n, self.prec))
    }

    /// Integer power; negative exponents need `0` outside the interval.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.recip()?.powi(-e);
        }
        let mut result = Interval::one(self.prec);
        let mut base = self.clone();
        let mut k = e as u64;
        let even = e % 2 == 0;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        if even && result.lo.is_negative() {
            result.lo = BigFloat::zero();
        }
        Ok(result)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::NonPositiveArgument);
        }
        let lo = if self.lo.is_negative() {
            BigFloat::zero()
        } else {
            self.lo.sqrt_round(self.prec, Round::Down)
        };
        Ok(Interval {
            lo,
            hi: self.hi.sqrt_round(self.prec, Round::Up),
            prec: self.prec,
        })
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &Interval) -> Self {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.p2(other),
        }
    }

    /// Pointwise minimum.
    pub fn min(&self, other: &Interval) -> Self {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            prec: self.p2(other),
        }
    }

    /// Certified comparison. Overlapping non-identical intervals are
    /// undecided.
    pub fn compare(&self, other: &Interval) -> Result<Ordering> {
        if self.hi < other.lo {
            Ok(Ordering::Less)
        } else if other.hi < self.lo {
            Ok(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Ok(Ordering::Equal)
        } else {
            Err(Error::AmbiguousComparison)
        }
    }

    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        other.certainly_lt(self)
    }

    /// The unique integer nearest to every point of the interval.
    pub fn unique_integer(&self) -> Result<BigInt> {
        let a = self.lo.round_nearest();
        let b = self.hi.round_nearest();
        // ties round up, so a point exactly at k + 1/2 from below is unsafe
        let half = BigFloat::new(BigInt::one(), -1);
        let tie = |x: &BigFloat| x.sub_exact(&half).floor() == x.sub_exact(&half).ceil();
        if a == b && !tie(&self.lo) && !tie(&self.hi) {
            Ok(a)
        } else {
            Err(Error::AmbiguousRounding)
        }
    }

    pub fn floor(&self) -> Result<BigInt> {
        let a = self.lo.floor();
        if a == self.hi.floor() {
            Ok(a)
        } else {
            Err(Error::AmbiguousRounding)
        }
    }

    pub fn safe_bound(&self, dir: Round) -> BigRational {
        match dir {
            Round::Up => self.hi.to_rational(),
            Round::Down => self.lo.to_rational(),
        }
    }

    /// `[lo, hi]` rendered with `digits` significant digits, outward.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            self.lo.to_decimal(digits, Round::Down),
            self.hi.to_decimal(digits, Round::Up),
        )
    }
}

/// Parse `[-]ddd[.ddd][e[+-]ddd]` or `10^k` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::ParseError {
        line: 0,
        msg: format!("bad decimal literal `{}`", s),
    };
    let t = s.trim();
    if let Some(k) = t.strip_prefix("10^") {
        let k: i64 = k.parse().map_err(|_| bad())?;
        let ten = BigInt::from(10);
        return Ok(if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten, k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten, (-k) as usize))
        });
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (body, 0),
    };
    let (ip, fp) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    let digits = format!("{}{}", ip, fp);
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let m: BigInt = digits.parse().map_err(|_| bad())?;
    let e10 = exp - fp.len() as i64;
    let ten = BigInt::from(10);
    let mut q = if e10 >= 0 {
        BigRational::from_integer(m * num_traits::pow(ten, e10 as usize))
    } else {
        BigRational::new(m, num_traits::pow(ten, (-e10) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Exact decimal rendering helper re-exported for reports.
pub fn rational_to_decimal(q: &BigRational, digits: usize, dir: Round) -> String {
    decimal_string(q, digits, dir)
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::add(self, rhs)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::sub(self, rhs)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        Interval::mul(self, rhs)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_decimal(20);
        write!(f, "[{}, {}]", a, b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_decimal(12);
        write!(f, "[{}, {}]", a, b)
    }
}
