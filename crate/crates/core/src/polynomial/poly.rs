use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{BigFloat, Interval};
use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        IntPolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        IntPolynomial::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("zero polynomial has no degree")
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs: c }
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    /// Exact division by an integer that divides every coefficient.
    pub fn div_exact_int(&self, k: &BigInt) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|x| x / k).collect(),
        }
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo-division by zero");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return self.clone();
        }
        let lb = b.leading();
        let mut e = self.deg() - db + 1;
        let mut r = self.coeffs.clone();
        while !r.is_empty() && r.len() > db {
            let lr = r.pop().unwrap();
            let off = r.len() - db;
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (i, bc) in b.coeffs[..db].iter().enumerate() {
                r[off + i] -= &lr * bc;
            }
            e -= 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        let r = IntPolynomial::new(r);
        if e == 0 {
            r
        } else {
            r.scale(&num_traits::pow(lb.clone(), e))
        }
    }

    /// Primitive gcd, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b.normalize_sign();
        }
        if b.is_zero() {
            return a.normalize_sign();
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.normalize_sign()
    }

    fn normalize_sign(self) -> Self {
        if !self.is_zero() && self.leading().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Exact value at a dyadic point.
    pub fn eval_float(&self, x: &BigFloat) -> BigFloat {
        self.coeffs.iter().rev().fold(BigFloat::zero(), |acc, c| {
            acc.mul_exact(x).add_exact(&BigFloat::from_int(c.clone()))
        })
    }

    /// Horner enclosure over an interval.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let p = x.precision();
        self.coeffs
            .iter()
            .rev()
            .fold(Interval::zero(p), |acc, c| {
                acc.mul(x).add(&Interval::from_int(c, p))
            })
    }

    /// `sum a_i A^i B^(d-i)`, i.e. `B^d f(A/B)` without division.
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let d = match self.degree() {
            Some(d) => d,
            None => return BigInt::zero(),
        };
        let mut acc = BigInt::zero();
        let mut apow = BigInt::one();
        let mut bpows = vec![BigInt::one(); d + 1];
        for i in 1..=d {
            bpows[i] = &bpows[i - 1] * b;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &apow * &bpows[d - i];
            apow *= a;
        }
        acc
    }

    /// Cauchy root bound `1 + max |a_i / a_n|`, rounded up to an integer.
    pub fn cauchy_bound(&self) -> BigInt {
        let lc = self.leading().abs();
        let m = self.coeffs[..self.deg()]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + m.div_ceil(&lc)
    }
}

/// The degree-`n` polynomial whose roots are the `θ_i` of the unit equation:
/// `sum_j (-1)^j 4^j (C(n,2j) x^(n-2j) - C(n,2j+1) x^(n-2j-1))`.
pub fn build_fn(n: u64) -> Result<IntPolynomial> {
    if n < 3 || !is_prime_u64(n) {
        return Err(Error::InvalidExponent(n));
    }
    let n = n as usize;
    let binom = binomials(n);
    let mut c = vec![BigInt::zero(); n + 1];
    for j in 0..=(n - 1) / 2 {
        let mut w = BigInt::one() << (2 * j);
        if j % 2 == 1 {
            w = -w;
        }
        c[n - 2 * j] += &w * &binom[2 * j];
        c[n - 2 * j - 1] -= &w * &binom[2 * j + 1];
    }
    Ok(IntPolynomial::new(c))
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}x", mag)?,
                (_, true) => write!(f, "x^{}", i)?,
                (_, false) => write!(f, "{}x^{}", mag, i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn f5_and_f3_coefficients() {
        assert_eq!(build_fn(5).unwrap(), p(&[-16, 80, 40, -40, -5, 1]));
        assert_eq!(build_fn(3).unwrap(), p(&[4, -12, -3, 1]));
        let f7 = build_fn(7).unwrap();
        assert_eq!(f7.coeff(0), BigInt::from(64));
        assert_eq!(f7.coeff(1), BigInt::from(-448));
        assert_eq!(f7.coeff(2), BigInt::from(-336));
        assert!(f7.is_monic() && f7.deg() == 7);
    }

    #[test]
    fn build_fn_rejects_bad_exponents() {
        for n in [0, 1, 2, 4, 9, 15] {
            assert!(matches!(build_fn(n), Err(Error::InvalidExponent(_))));
        }
    }

    #[test]
    fn fn_is_real_part_minus_half_imaginary() {
        // independent check: expand (x + 2i)^n with Gaussian integer Horner
        for n in [3u64, 5, 7, 11, 13, 17] {
            let f = build_fn(n).unwrap();
            for x in -6i64..=6 {
                let (mut re, mut im) = (BigInt::one(), BigInt::zero());
                for _ in 0..n {
                    let r2 = &re * x - &im * 2;
                    let i2 = &re * 2 + &im * x;
                    re = r2;
                    im = i2;
                }
                // 2 f(x) = 2 Re - Im
                assert_eq!(f.eval(&BigInt::from(x)) * 2, re * 2 - im, "n={} x={}", n, x);
            }
        }
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[3, -1, 0, 2, 5]);
        let b = p(&[1, 0, -3]);
        let r = a.pseudo_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        // lc(b)^3 a - r is divisible by b: check at the roots via rationals
        let lhs = a.scale(&BigInt::from(-27)).sub(&r);
        let g = lhs.gcd(&b);
        assert_eq!(g.deg(), 2);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert!(!b.is_squarefree());
        assert!(build_fn(17).unwrap().is_squarefree());
    }

    #[test]
    fn homogeneous_evaluation() {
        let f = build_fn(5).unwrap();
        assert_eq!(f.eval_homogeneous(&1.into(), &0.into()), BigInt::one());
        assert_eq!(f.eval_homogeneous(&0.into(), &1.into()), BigInt::from(-16));
        assert_eq!(f.eval_homogeneous(&3.into(), &1.into()), f.eval(&3.into()));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-16, 80, 0, 1]).to_string(), "x^3 + 80x - 16");
    }
}
