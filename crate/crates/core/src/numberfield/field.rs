use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::Interval;
use crate::error::{Error, Result};
use crate::polynomial::{
    build_fn, isolate_roots_prec, refine_root, resultant, IntPolynomial, RootBox, RootSource,
};

/// `Q(θ)` with `θ` a root of `f_n`, together with certified enclosures of
/// all `n` real conjugates, sorted ascending.
pub struct NumberField {
    n: usize,
    f: IntPolynomial,
    roots: Vec<RootBox>,
    galois_degree: usize,
    cache: Mutex<BTreeMap<u32, Arc<Vec<Interval>>>>,
}

impl NumberField {
    /// The field of `f_n`. The Galois closure has degree `n(n-1)`: the
    /// conjugates are `2 cot((atan 2 + kπ)/n)` and the group acts on the
    /// labels `k` as the affine group of `Z/n`.
    pub fn new(n: u64) -> Result<Self> {
        let f = build_fn(n)?;
        let roots = isolate_roots_prec(&f, 128)?;
        let n = n as usize;
        if roots.len() != n {
            return Err(Error::Stage {
                stage: "roots".into(),
                msg: format!("expected {} real roots, found {}", n, roots.len()),
            });
        }
        Ok(NumberField {
            n,
            f,
            roots,
            galois_degree: n * (n - 1),
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.f
    }

    /// `D = [Q(θ_1, …, θ_n) : Q]`.
    pub fn galois_degree(&self) -> usize {
        self.galois_degree
    }

    pub fn root_boxes(&self) -> &[RootBox] {
        &self.roots
    }

    /// All conjugates at `prec` bits of relative accuracy.
    pub fn roots(&self, prec: u32) -> Result<Arc<Vec<Interval>>> {
        let prec = prec.max(64);
        if let Some(r) = self.cache.lock().unwrap().range(prec..).next() {
            return Ok(r.1.clone());
        }
        let out: Vec<Interval> = self
            .roots
            .iter()
            .map(|b| refine_root(&self.f, &b.enclosure.with_precision(prec), prec))
            .collect::<Result<_>>()?;
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(prec, out.clone());
        Ok(out)
    }

    pub fn root(&self, i: usize, prec: u32) -> Result<Interval> {
        Ok(self.roots(prec)?[i].clone())
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_int(self.n, BigInt::one())
    }

    pub fn theta(&self) -> FieldElement {
        let mut c = vec![BigInt::zero(); self.n];
        c[1] = BigInt::one();
        FieldElement::new(c, BigInt::one())
    }

    /// `A − θB`.
    pub fn linear(&self, a: &BigInt, b: &BigInt) -> FieldElement {
        let mut c = vec![BigInt::zero(); self.n];
        c[0] = a.clone();
        c[1] = -b;
        FieldElement::new(c, BigInt::one())
    }

    /// Exact product reduced modulo `f_n` (which is monic).
    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.n;
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let fc = self.f.coeffs();
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, fi) in fc[..n].iter().enumerate() {
                if !fi.is_zero() {
                    prod[k - n + i] -= &c * fi;
                }
            }
        }
        prod.truncate(n);
        FieldElement::new(prod, &a.den * &b.den)
    }

    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inverse(a)? } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut out = self.one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(&out, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(out)
    }

    /// Matrix of multiplication by `a` on the power basis, scaled by the
    /// denominator of `a`: column `i` holds `den * a * θ^i`.
    fn mult_matrix(&self, a: &FieldElement) -> Vec<Vec<BigInt>> {
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        let mut cur = FieldElement::new(a.num.clone(), BigInt::one());
        let th = self.theta();
        for _ in 0..n {
            cols.push(cur.num.clone());
            cur = self.mul(&cur, &th);
        }
        (0..n)
            .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
            .collect()
    }

    /// Exact inverse by solving `a x = 1`.
    pub fn inverse(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.n;
        let m = self.mult_matrix(a);
        let mut rhs = vec![BigRational::zero(); n];
        rhs[0] = BigRational::from_integer(a.den.clone());
        let sol = solve_rational(m, rhs).ok_or(Error::ZeroElement)?;
        Ok(FieldElement::from_rationals(&sol))
    }

    /// `N(a) = Res(f, A) / d^n` for `a = A(θ)/d`.
    pub fn norm(&self, a: &FieldElement) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let num = IntPolynomial::new(a.num.clone());
        let r = resultant(&self.f, &num);
        Ok(BigRational::new(r, num_traits::pow(a.den.clone(), self.n)))
    }

    /// Characteristic polynomial of `a` over `Q`, monic, ascending.
    pub fn char_poly(&self, a: &FieldElement) -> Vec<BigRational> {
        let n = self.n;
        let d = BigRational::from_integer(a.den.clone());
        let m: Vec<Vec<BigRational>> = self
            .mult_matrix(a)
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| BigRational::from_integer(x) / &d)
                    .collect()
            })
            .collect();
        // Faddeev–LeVerrier
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        let mut mk = vec![vec![BigRational::zero(); n]; n];
        for k in 1..=n {
            // mk <- m * (mk + c[n-k+1] I)
            let mut tmp = mk.clone();
            for (i, row) in tmp.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            let mut next = vec![vec![BigRational::zero(); n]; n];
            for i in 0..n {
                for l in 0..n {
                    if m[i][l].is_zero() {
                        continue;
                    }
                    for jj in 0..n {
                        if !tmp[l][jj].is_zero() {
                            next[i][jj] += &m[i][l] * &tmp[l][jj];
                        }
                    }
                }
            }
            mk = next;
            let tr: BigRational = (0..n).map(|i| mk[i][i].clone()).sum();
            c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
        }
        c
    }

    /// Enclosure of the image of `a` under `θ -> θ_i`.
    pub fn embed(&self, a: &FieldElement, i: usize, prec: u32) -> Result<Interval> {
        let th = self.root(i, prec)?;
        let p = th.precision();
        let v = a
            .num
            .iter()
            .rev()
            .fold(Interval::zero(p), |acc, c| acc.mul(&th).add(&Interval::from_int(c, p)));
        if a.den.is_one() {
            Ok(v)
        } else {
            v.div(&Interval::from_int(&a.den, p))
        }
    }

    /// `prod_k (A − θ_k B) = sum f_i A^i B^(n-i)`.
    pub fn unit_equation_residual(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.f.eval_homogeneous(a, b)
    }
}

impl RootSource for NumberField {
    fn degree(&self) -> usize {
        self.n
    }

    fn roots_at(&self, prec: u32) -> Result<Vec<Interval>> {
        Ok(self.roots(prec)?.as_ref().clone())
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.f)
    }
}

/// Fraction-free Gaussian elimination over the rationals.
fn solve_rational(m: Vec<Vec<BigInt>>, rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .into_iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut v: Vec<BigRational> = row.into_iter().map(BigRational::from_integer).collect();
            v.push(r);
            v
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let v = &factor * &a[col][c];
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Element of `Q(θ)` as `(sum num_i θ^i) / den` with `den > 0` and the
/// fraction in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    pub fn new(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        FieldElement { num, den }
    }

    pub fn from_int(n: usize, c: BigInt) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[0] = c;
        FieldElement::new(v, BigInt::one())
    }

    pub fn from_rationals(c: &[BigRational]) -> Self {
        let den = c
            .iter()
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let num = c
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        FieldElement::new(num, den)
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    /// Largest `|coefficient|` as a numerator over the common denominator.
    pub fn max_abs_numerator(&self) -> BigInt {
        self.num.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        BigRational::new(self.max_abs_numerator(), self.den.clone())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.num.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")/{}", self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(n: u64) -> NumberField {
        NumberField::new(n).unwrap()
    }

    fn elt(n: usize, c: &[i64], d: i64) -> FieldElement {
        let mut v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        v.resize(n, BigInt::zero());
        FieldElement::new(v, BigInt::from(d))
    }

    #[test]
    fn theta_power_reduces_by_f() {
        let k = field(5);
        let t4 = k.pow(&k.theta(), 4).unwrap();
        let t5 = k.mul(&t4, &k.theta());
        // θ^5 = 16 − 80θ − 40θ^2 + 40θ^3 + 5θ^4
        assert_eq!(t5, elt(5, &[16, -80, -40, 40, 5], 1));
        let a = elt(5, &[3, 1, 0, 2, -1], 7);
        assert_eq!(k.mul(&a, &k.one()), a);
    }

    #[test]
    fn norms() {
        let k = field(5);
        assert_eq!(k.norm(&k.one()).unwrap(), BigRational::one());
        assert_eq!(k.norm(&k.theta()).unwrap(), BigRational::from_integer(16.into()));
        assert!(matches!(k.norm(&elt(5, &[], 1)), Err(Error::ZeroElement)));
    }

    #[test]
    fn residual_examples() {
        let k = field(5);
        assert_eq!(k.unit_equation_residual(&1.into(), &0.into()), BigInt::one());
        // prod(−θ_k) = −N(θ) = f_5(0)
        assert_eq!(k.unit_equation_residual(&0.into(), &1.into()), BigInt::from(-16));
    }

    #[test]
    fn embeddings_of_theta_and_constants() {
        let k = field(7);
        for i in 0..7 {
            let e = k.embed(&k.theta(), i, 128).unwrap();
            assert_eq!(e, k.root(i, 128).unwrap());
            let c = k.embed(&elt(7, &[5], 3), i, 128).unwrap();
            assert!(c.contains_rational(&BigRational::new(5.into(), 3.into())));
        }
    }

    #[test]
    fn inverse_and_char_poly() {
        let k = field(5);
        let a = elt(5, &[1, 2, 0, -1, 3], 2);
        let b = k.inverse(&a).unwrap();
        assert_eq!(k.mul(&a, &b), k.one());
        let cp = k.char_poly(&k.theta());
        let want: Vec<BigRational> = k
            .poly()
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        assert_eq!(cp, want);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn homomorphism(a in prop::collection::vec(-20i64..20, 5),
                        b in prop::collection::vec(-20i64..20, 5),
                        i in 0usize..5) {
            let k = field(5);
            let x = elt(5, &a, 3);
            let y = elt(5, &b, 1);
            let lhs = k.embed(&k.mul(&x, &y), i, 128).unwrap();
            let rhs = k.embed(&x, i, 128).unwrap().mul(&k.embed(&y, i, 128).unwrap());
            prop_assert!(lhs.overlaps(&rhs.widen_ulps(2)));
        }

        #[test]
        fn norm_multiplicative(a in prop::collection::vec(-9i64..9, 5),
                               b in prop::collection::vec(-9i64..9, 5)) {
            let k = field(5);
            let x = elt(5, &a, 2);
            let y = elt(5, &b, 5);
            prop_assume!(!x.is_zero() && !y.is_zero());
            prop_assert_eq!(k.norm(&k.mul(&x, &y)).unwrap(),
                            k.norm(&x).unwrap() * k.norm(&y).unwrap());
        }

        #[test]
        fn residual_is_norm_of_linear(a in -50i64..50, b in -50i64..50) {
            prop_assume!(a != 0 || b != 0);
            let k = field(7);
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let r = k.unit_equation_residual(&a, &b);
            prop_assert_eq!(BigRational::from_integer(r), k.norm(&k.linear(&a, &b)).unwrap());
        }
    }
}
