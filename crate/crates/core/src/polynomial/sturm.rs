use num_rational::BigRational;
use num_traits::Signed;

use super::poly::IntPolynomial;
use crate::arith::{BigFloat, Interval, Round};
use crate::error::{Error, Result};

/// Sturm sequence of a squarefree polynomial, stored as primitive parts.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPolynomial>,
}

/// One isolated real root. `index` counts from 0 in ascending order.
#[derive(Clone, Debug)]
pub struct RootBox {
    pub index: usize,
    pub enclosure: Interval,
}

impl SturmChain {
    pub fn new(f: &IntPolynomial) -> Result<Self> {
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let mut polys = vec![f.clone(), f.derivative()];
        loop {
            let k = polys.len();
            let b = &polys[k - 1];
            if b.deg() == 0 {
                break;
            }
            let a = &polys[k - 2];
            let mut r = a.pseudo_rem(b);
            // prem multiplies by lc(b)^e; undo a negative factor's sign
            let e = a.deg() - b.deg() + 1;
            if b.leading().is_negative() && e % 2 == 1 {
                r = r.neg();
            }
            if r.is_zero() {
                break;
            }
            polys.push(r.neg().primitive_part());
        }
        Ok(SturmChain { polys })
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigFloat) -> usize {
        Self::variations(self.polys.iter().map(|p| p.eval_float(x).signum()))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.polys.iter().map(|p| {
            let s = p.leading().signum();
            let s = if s.is_negative() { -1 } else { 1 };
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(
            self.polys
                .iter()
                .map(|p| if p.leading().is_negative() { -1 } else { 1 }),
        )
    }

    /// Distinct roots in `(a, b]`.
    pub fn count_in(&self, a: &BigFloat, b: &BigFloat) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

pub fn count_real_roots(f: &IntPolynomial) -> Result<usize> {
    let s = SturmChain::new(f)?;
    Ok(s.variations_at_neg_inf() - s.variations_at_pos_inf())
}

/// Isolate every real root of `f` and refine each box to width at most
/// `target_width`.
pub fn isolate_roots(f: &IntPolynomial, target_width: &BigRational) -> Result<Vec<RootBox>> {
    let chain = SturmChain::new(f)?;
    let raw = isolate_with(&chain, f)?;
    let tw = BigFloat::from_rational(target_width, 64, Round::Down);
    let bits = match tw.ilog2() {
        Some(k) => (-k).max(0) as u32 + 8,
        None => return Err(Error::AmbiguousComparison),
    };
    raw.into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let mut prec = bits + 16 + f.cauchy_bound().bits() as u32;
            loop {
                let iv = refine_root(f, &Interval::new(a.clone(), b.clone(), prec), prec)?;
                if iv.width() <= tw {
                    return Ok(RootBox {
                        index: i,
                        enclosure: iv,
                    });
                }
                prec *= 2;
            }
        })
        .collect()
}

/// Isolate and refine to a working precision of `prec` bits.
pub fn isolate_roots_prec(f: &IntPolynomial, prec: u32) -> Result<Vec<RootBox>> {
    let chain = SturmChain::new(f)?;
    let raw = isolate_with(&chain, f)?;
    raw.into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            Ok(RootBox {
                index: i,
                enclosure: refine_root(f, &Interval::new(a, b, prec), prec)?,
            })
        })
        .collect()
}

/// Sorted isolating intervals `[a, b]` with a sign change of `f` across
/// them, or degenerate `[r, r]` for dyadic roots.
fn isolate_with(chain: &SturmChain, f: &IntPolynomial) -> Result<Vec<(BigFloat, BigFloat)>> {
    let bound = BigFloat::from_int(f.cauchy_bound());
    let mut out = Vec::new();
    let mut stack = vec![(bound.neg(), bound)];
    while let Some((a, b)) = stack.pop() {
        let c = chain.count_in(&a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 {
            if f.eval_float(&b).is_zero() {
                out.push((b.clone(), b));
            } else {
                out.push((a, b));
            }
            continue;
        }
        let mid = a.add_exact(&b).mul_pow2(-1);
        // keep split points off exact roots so each half-open count is clean
        let mid = if f.eval_float(&mid).is_zero() {
            out.push((mid.clone(), mid.clone()));
            let eps = b.sub_exact(&a).mul_pow2(-40);
            let lo = mid.sub_exact(&eps);
            let hi = mid.add_exact(&eps);
            stack.push((hi, b));
            stack.push((a, lo));
            continue;
        } else {
            mid
        };
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Shrink an isolating interval of a simple root until its width is near
/// `2^-prec` relative to the root, first by bisection and then by interval
/// Newton steps.
pub fn refine_root(f: &IntPolynomial, x: &Interval, prec: u32) -> Result<Interval> {
    if x.is_point() {
        return Ok(x.with_precision(prec));
    }
    let df = f.derivative();
    let mut a = x.lo().clone();
    let mut b = x.hi().clone();
    let sa = f.eval_float(&a).signum();
    let sb = f.eval_float(&b).signum();
    if sa == 0 {
        return Ok(Interval::point(a, prec));
    }
    if sb == 0 {
        return Ok(Interval::point(b, prec));
    }
    if sa == sb {
        return Err(Error::AmbiguousComparison);
    }
    // bisect until the derivative is bounded away from zero
    loop {
        let iv = Interval::new(a.clone(), b.clone(), prec);
        if !df.eval_interval(&iv).contains_zero() {
            break;
        }
        let m = a.add_exact(&b).mul_pow2(-1);
        let sm = f.eval_float(&m).signum();
        if sm == 0 {
            return Ok(Interval::point(m, prec));
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    let mut iv = Interval::new(a, b, prec);
    let target = -(prec as f64) + 4.0;
    loop {
        let rel = iv.rel_width_log2();
        if rel <= target {
            break;
        }
        let m = iv.mid().round(prec, Round::Down);
        let m = if iv.contains(&m) { m } else { iv.mid() };
        let fm = Interval::point(f.eval_float(&m), prec).with_precision(prec);
        let dfx = df.eval_interval(&iv);
        let step = fm.div(&dfx)?;
        let n = Interval::point(m, prec).sub(&step);
        let next = match iv.intersect(&n) {
            Some(v) => v,
            None => return Err(Error::AmbiguousComparison),
        };
        let progress = next.width_log2() < iv.width_log2() - 0.5;
        iv = next;
        if !progress {
            break;
        }
    }
    Ok(iv)
}

/// Whether the decimal literal `s` lies within `tol` of the box.
pub fn root_contains_decimal(b: &RootBox, s: &str, tol: &BigRational) -> Result<bool> {
    let v = crate::arith::parse_decimal(s)?;
    let lo = b.enclosure.lo().to_rational() - tol;
    let hi = b.enclosure.hi().to_rational() + tol;
    Ok(lo <= v && v <= hi)
}
