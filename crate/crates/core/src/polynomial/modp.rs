//! Factorization patterns over small prime fields, used to certify
//! irreducibility over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::poly::{is_prime_u64, IntPolynomial};
use crate::error::{Error, Result};

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn reduce(f: &IntPolynomial, p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let li = inv(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = mulmod(r[top], li, p);
        if c != 0 {
            for (i, bc) in b.iter().enumerate() {
                let k = top - db + i;
                r[k] = (r[k] + p - mulmod(c, *bc, p)) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn divexact(a: &Fp, b: &Fp, p: u64) -> Fp {
    let db = b.len() - 1;
    let li = inv(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = mulmod(r[top], li, p);
        q[top - db] = c;
        for (i, bc) in b.iter().enumerate() {
            let k = top - db + i;
            r[k] = (r[k] + p - mulmod(c, *bc, p)) % p;
        }
        r.pop();
    }
    debug_assert!(trim(r).is_empty());
    q
}

fn mul_rem(a: &Fp, b: &Fp, f: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(*x, *y, p)) % p;
        }
    }
    rem(&trim(out), f, p)
}

fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let li = inv(l, p);
        for c in a.iter_mut() {
            *c = mulmod(*c, li, p);
        }
    }
    a
}

fn derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| mulmod(*c, i as u64 % p, p))
            .collect(),
    )
}

/// Frobenius `g -> g^p mod f` as a matrix acting on coefficient vectors.
struct Frobenius {
    rows: Vec<Fp>,
    p: u64,
}

impl Frobenius {
    fn new(f: &Fp, p: u64) -> Self {
        let n = f.len() - 1;
        let mut xp = vec![0, 1];
        // x^p mod f by square and multiply
        let mut acc: Fp = vec![1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_rem(&acc, &xp, f, p);
            }
            xp = mul_rem(&xp, &xp, f, p);
            e >>= 1;
        }
        let mut rows = Vec::with_capacity(n);
        let mut cur: Fp = vec![1];
        for _ in 0..n {
            rows.push(cur.clone());
            cur = mul_rem(&cur, &acc, f, p);
        }
        Frobenius { rows, p }
    }

    fn apply(&self, g: &Fp) -> Fp {
        let p = self.p;
        let n = self.rows.len();
        let mut out = vec![0u64; n];
        for (i, c) in g.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (k, r) in self.rows[i].iter().enumerate() {
                out[k] = (out[k] + mulmod(*c, *r, p)) % p;
            }
        }
        trim(out)
    }
}

/// Degrees of the irreducible factors of `f mod p`, as `degree -> count`.
/// `None` if the reduction is not squarefree or drops degree.
pub fn factor_degrees_mod_p(f: &IntPolynomial, p: u64) -> Result<Option<BTreeMap<usize, usize>>> {
    if !is_prime_u64(p) || p >= 1 << 31 {
        return Err(Error::BadPrime(p));
    }
    let fp = reduce(f, p);
    if fp.len() != f.coeffs().len() {
        return Err(Error::BadPrime(p));
    }
    let n = fp.len() - 1;
    if gcd(&fp, &derivative(&fp, p), p).len() != 1 {
        return Ok(None);
    }
    let frob = Frobenius::new(&fp, p);
    let mut rest = fp.clone();
    let mut out = BTreeMap::new();
    let mut h: Fp = vec![0, 1];
    if n == 1 {
        out.insert(1, 1);
        return Ok(Some(out));
    }
    let x: Fp = vec![0, 1];
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.insert(rest.len() - 1, 1 + out.get(&(rest.len() - 1)).copied().unwrap_or(0));
            break;
        }
        h = frob.apply(&h);
        let g = gcd(&rem(&sub(&h, &x, p), &rest, p), &rest, p);
        if g.len() > 1 {
            let k = (g.len() - 1) / d;
            out.insert(d, k);
            rest = divexact(&rest, &g, p);
            h = rem(&h, &rest, p);
        }
    }
    Ok(Some(out))
}

/// True iff `f mod p` is irreducible over the field with `p` elements.
pub fn irreducible_mod_p(f: &IntPolynomial, p: u64) -> Result<bool> {
    let n = f.deg();
    Ok(matches!(factor_degrees_mod_p(f, p)?, Some(m) if m.get(&n) == Some(&1)))
}

/// Evidence that an integer polynomial is irreducible over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum IrreducibilityCertificate {
    /// `f` stays irreducible modulo this prime.
    Prime(u64),
    /// Factor degree patterns whose admissible rational factor degrees
    /// intersect to `{0, deg f}`.
    Patterns(Vec<(u64, Vec<usize>)>),
}

/// Degrees reachable as sums of sub-multisets of a factor pattern.
fn subset_sums(pattern: &BTreeMap<usize, usize>, n: usize) -> Vec<bool> {
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for (&d, &k) in pattern {
        for _ in 0..k {
            for s in (d..=n).rev() {
                if ok[s - d] {
                    ok[s] = true;
                }
            }
        }
    }
    ok
}

/// Scan primes below `limit` for an irreducibility certificate. A prime
/// where `f` stays irreducible is preferred; otherwise patterns are combined.
pub fn certify_irreducible(f: &IntPolynomial, limit: u64) -> Option<IrreducibilityCertificate> {
    let n = f.deg();
    let lc = f.leading();
    let mut allowed = vec![true; n + 1];
    let mut used = Vec::new();
    for p in 3..limit {
        if !is_prime_u64(p) || (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let pat = match factor_degrees_mod_p(f, p) {
            Ok(Some(m)) => m,
            _ => continue,
        };
        if pat.get(&n) == Some(&1) {
            return Some(IrreducibilityCertificate::Prime(p));
        }
        let sums = subset_sums(&pat, n);
        let before = allowed.iter().filter(|&&b| b).count();
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        if allowed.iter().filter(|&&b| b).count() < before {
            let flat = pat
                .iter()
                .flat_map(|(&d, &k)| std::iter::repeat(d).take(k))
                .collect();
            used.push((p, flat));
        }
        if allowed.iter().filter(|&&b| b).count() == 2 {
            return Some(IrreducibilityCertificate::Patterns(used));
        }
    }
    None
}
