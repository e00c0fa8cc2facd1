//! Binary floating values `m * 2^e` with arbitrary mantissa and directed
//! rounding. These are the endpoints of [`Interval`](super::Interval).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// Exact dyadic number `mant * 2^exp`, kept normalized (odd mantissa, or
/// zero mantissa with zero exponent).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

pub(crate) fn bit_len(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

/// `floor(m / 2^s)` for any sign of `m`.
pub(crate) fn shr_floor(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let mag = m.magnitude();
    match m.sign() {
        Sign::Minus => {
            let q: BigUint = mag >> s;
            let exact = (&q << s) == *mag;
            let q = BigInt::from_biguint(Sign::Minus, q);
            if exact {
                q
            } else {
                q - 1
            }
        }
        _ => BigInt::from_biguint(Sign::Plus, mag >> s),
    }
}

/// `ceil(m / 2^s)` for any sign of `m`.
pub(crate) fn shr_ceil(m: &BigInt, s: u64) -> BigInt {
    -shr_floor(&-m, s)
}

fn shr_dir(m: &BigInt, s: u64, dir: Round) -> BigInt {
    match dir {
        Round::Down => shr_floor(m, s),
        Round::Up => shr_ceil(m, s),
    }
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        BigFloat::from_int(BigInt::one())
    }

    /// `mant * 2^exp`, normalized.
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return BigFloat::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            BigFloat { mant, exp }
        } else {
            BigFloat {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn from_int(n: BigInt) -> Self {
        BigFloat::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        BigFloat::from_int(BigInt::from(n))
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite f64");
        if x == 0.0 {
            return BigFloat::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        BigFloat::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn precision_bits(&self) -> u64 {
        bit_len(&self.mant)
    }

    /// `floor(log2 |x|)`; `None` for zero.
    pub fn ilog2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + bit_len(&self.mant) as i64 - 1)
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let b = bit_len(&self.mant);
        if b <= prec as u64 {
            return self.clone();
        }
        let s = b - prec as u64;
        BigFloat::new(shr_dir(&self.mant, s, dir), self.exp + s as i64)
    }

    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        BigFloat::new(a + b, e)
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        BigFloat::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Correctly directed `self + other` at `prec` bits. When the exponents
    /// are far apart the small operand is replaced by a sticky stand-in that
    /// has the same sign and sits below the rounding position, which leaves
    /// the directed result unchanged.
    pub fn add_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        if self.is_zero() {
            return other.round(prec, dir);
        }
        if other.is_zero() {
            return self.round(prec, dir);
        }
        let (big, small) = match self.ilog2().cmp(&other.ilog2()) {
            Ordering::Less => (other, self),
            _ => (self, other),
        };
        let top_small = small.ilog2().unwrap();
        let low_big = big.exp;
        let cutoff = big.ilog2().unwrap() - prec as i64 - 4;
        if top_small < cutoff && top_small < low_big {
            let k = cutoff.min(low_big) - 2;
            let sticky = BigFloat::new(BigInt::from(small.signum()), k);
            return big.add_exact(&sticky).round(prec, dir);
        }
        self.add_exact(other).round(prec, dir)
    }

    pub fn sub_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.add_round(&other.neg(), prec, dir)
    }

    pub fn mul_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.mul_exact(other).round(prec, dir)
    }

    /// Directed quotient at `prec` bits. Panics on a zero divisor.
    pub fn div_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let negative = self.is_negative() != other.is_negative();
        let a = self.mant.magnitude();
        let b = other.mant.magnitude();
        let want = prec as i64 + 2 + b.bits() as i64 - a.bits() as i64;
        let shift = want.max(0) as u64;
        let (q, r) = (a << shift).div_rem(b);
        // magnitude rounding: towards zero is floor of magnitude
        let mag_dir = if negative { dir.flip() } else { dir };
        let q = if mag_dir == Round::Up && !r.is_zero() {
            q + 1u32
        } else {
            q
        };
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        let out = BigFloat::new(
            BigInt::from_biguint(sign, q),
            self.exp - other.exp - shift as i64,
        );
        out.round(prec, dir)
    }

    /// Directed square root of a non-negative value.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let b = bit_len(&self.mant) as i64;
        let mut shift = (2 * prec as i64 + 4 - b).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = self.mant.magnitude() << shift as u64;
        let r = m.sqrt();
        let r = if dir == Round::Up && &r * &r != m {
            r + 1u32
        } else {
            r
        };
        BigFloat::new(BigInt::from(r), (self.exp - shift) / 2).round(prec, dir)
    }

    /// Directed conversion of an exact rational.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        let n = BigFloat::from_int(q.numer().clone());
        let d = BigFloat::from_int(q.denom().clone());
        n.div_round(&d, prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            shr_floor(&self.mant, (-self.exp) as u64)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            shr_ceil(&self.mant, (-self.exp) as u64)
        }
    }

    /// Nearest integer, ties rounded up.
    pub fn round_nearest(&self) -> BigInt {
        self.add_exact(&BigFloat::new(BigInt::one(), -1)).floor()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = bit_len(&self.mant) as i64;
        let s = (b - 60).max(0);
        let m = shr_floor(&self.mant, s as u64).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + s;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0 * m.signum();
        }
        m * 2f64.powi(e as i32)
    }

    /// Approximate `log2 |x|` as an `f64`; `-inf` for zero.
    pub fn log2_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = bit_len(&self.mant) as i64;
        let s = (b - 60).max(0);
        let m = shr_floor(&self.mant.abs(), s as u64).to_f64().unwrap();
        m.log2() + (self.exp + s) as f64
    }

    /// Decimal scientific notation with `digits` significant digits, rounded
    /// in direction `dir` (so the printed value is a safe bound).
    pub fn to_decimal(&self, digits: usize, dir: Round) -> String {
        decimal_string(&self.to_rational(), digits, dir)
    }
}

/// Directed decimal rendering of an exact rational: `d.ddd…e±X`.
pub fn decimal_string(q: &BigRational, digits: usize, dir: Round) -> String {
    let digits = digits.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let ten = BigInt::from(10);
    let absq = q.abs();
    // estimate the decimal exponent, then correct it
    let est = {
        let nb = q.numer().magnitude().bits() as f64;
        let db = q.denom().magnitude().bits() as f64;
        ((nb - db) * std::f64::consts::LOG10_2).floor() as i64
    };
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    let mut e10 = est;
    loop {
        let lo = pow10(e10);
        let hi = pow10(e10 + 1);
        if absq < lo {
            e10 -= 1;
        } else if absq >= hi {
            e10 += 1;
        } else {
            break;
        }
    }
    let scaled = q * pow10(digits as i64 - 1 - e10);
    let mut m = match dir {
        Round::Down => scaled.floor().to_integer(),
        Round::Up => scaled.ceil().to_integer(),
    };
    let limit = num_traits::pow(ten.clone(), digits);
    if m.abs() >= limit {
        // rounding carried into a new digit, e.g. 9.99 -> 10.0
        m = match dir {
            Round::Down => shr_dec_floor(&m),
            Round::Up => shr_dec_ceil(&m),
        };
        e10 += 1;
    }
    let neg = m.is_negative();
    let s = m.abs().to_string();
    let (head, tail) = s.split_at(1);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if e10 != 0 {
        out.push_str(&format!("e{}", e10));
    }
    out
}

fn shr_dec_floor(m: &BigInt) -> BigInt {
    m.div_floor(&BigInt::from(10))
}

fn shr_dec_ceil(m: &BigInt) -> BigInt {
    -(-m).div_floor(&BigInt::from(10))
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes via top bit position first
        let ta = self.ilog2().unwrap();
        let tb = other.ilog2().unwrap();
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.magnitude() << (self.exp - e) as u64;
            let b = other.mant.magnitude() << (other.exp - e) as u64;
            a.cmp(&b)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20, Round::Down))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(17, Round::Down))
    }
}
