use num_bigint::BigInt;
use num_traits::Signed;

use super::modp::{certify_irreducible, IrreducibilityCertificate};
use super::poly::IntPolynomial;
use super::sturm::RootBox;
use crate::arith::{with_escalation, Interval, DEFAULT_PRECISION_CEILING};
use crate::error::{Error, Result};

/// Anything that can hand out the real roots of `f_n`, sorted ascending, at
/// a requested precision.
pub trait RootSource {
    fn degree(&self) -> usize;
    fn roots_at(&self, prec: u32) -> Result<Vec<Interval>>;
}

impl RootSource for [RootBox] {
    fn degree(&self) -> usize {
        self.len()
    }

    fn roots_at(&self, prec: u32) -> Result<Vec<Interval>> {
        let p = self.first().map(|b| b.enclosure.precision()).unwrap_or(0);
        if p + 8 < prec {
            return Err(Error::AmbiguousRounding);
        }
        Ok(self.iter().map(|b| b.enclosure.clone()).collect())
    }
}

/// Minimal-polynomial data for `(θ_j − θ_k)/(θ_j − θ_l)`.
#[derive(Clone, Debug)]
pub struct DeltaMinpoly {
    pub poly: IntPolynomial,
    pub degree: usize,
    pub leading: BigInt,
    pub certificate: IrreducibilityCertificate,
}

/// The orbit of the index triple under `i -> a i + b (mod n)`. Sorted
/// positions of the roots of `f_n` are an affine image of their cotangent
/// labels, so this is the Galois orbit of the triple.
pub fn affine_orbit(n: usize, j: usize, k: usize, l: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1));
    for a in 1..n {
        for b in 0..n {
            let m = |i: usize| (a * i + b) % n;
            out.push((m(j), m(k), m(l)));
        }
    }
    out
}

/// Build `p(x) = prod ((θ_r − θ_t) x − (θ_r − θ_s))` over the orbit of
/// `(j, k, l)` (0-based, sorted positions), round it to integers, and
/// certify its irreducibility. Returns the degree and leading coefficient of
/// the primitive minimal polynomial.
pub fn delta_minpoly_data<R: RootSource + ?Sized>(
    roots: &R,
    j: usize,
    k: usize,
    l: usize,
) -> Result<DeltaMinpoly> {
    let n = roots.degree();
    if j == k || k == l || j == l || j >= n || k >= n || l >= n {
        return Err(Error::InvalidConfig(format!("bad triple ({}, {}, {})", j, k, l)));
    }
    let orbit = affine_orbit(n, j, k, l);
    let start = 64 + 4 * orbit.len() as u32;
    let poly = with_escalation(start, DEFAULT_PRECISION_CEILING, |prec| {
        let th = roots.roots_at(prec)?;
        let th: Vec<Interval> = th.iter().map(|t| t.with_precision(prec)).collect();
        let mut acc = vec![Interval::one(prec)];
        for &(r, s, t) in &orbit {
            let a = th[r].sub(&th[t]);
            let b = th[r].sub(&th[s]).neg();
            // acc * (a x + b)
            let mut next = vec![Interval::zero(prec); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i] = next[i].add(&c.mul(&b));
                next[i + 1] = next[i + 1].add(&c.mul(&a));
            }
            acc = next;
        }
        let coeffs = acc
            .iter()
            .map(|c| c.unique_integer())
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(coeffs))
    })?;
    let prim = poly.primitive_part();
    let limit = 20_000;
    let certificate = certify_irreducible(&prim, limit).ok_or_else(|| {
        Error::MinpolyMismatch(format!(
            "no irreducibility certificate for degree {} below {}",
            prim.deg(),
            limit
        ))
    })?;
    Ok(DeltaMinpoly {
        degree: prim.deg(),
        leading: prim.leading().abs(),
        poly: prim,
        certificate,
    })
}
