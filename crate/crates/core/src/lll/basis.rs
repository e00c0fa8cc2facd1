use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row vectors generating a full-rank integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::RankDeficient);
        }
        Ok(LatticeBasis { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        LatticeBasis {
            rows: (0..n)
                .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        LatticeBasis {
            rows: (0..n)
                .map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect())
                .collect(),
        }
    }

    /// `self · other` with rows as vectors: row `i` of the result is
    /// `Σ_k self[i][k] · other.rows[k]`.
    pub fn compose(&self, other: &LatticeBasis) -> LatticeBasis {
        let n = self.dim();
        LatticeBasis {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .filter(|&k| !self.rows[i][k].is_zero())
                                .map(|k| &self.rows[i][k] * &other.rows[k][j])
                                .sum()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn norm_sq(&self, i: usize) -> BigInt {
        dot(&self.rows[i], &self.rows[i])
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        bareiss_det(self.rows.clone())
    }

    /// Gram determinant `det(B Bᵀ)`.
    pub fn gram_determinant(&self) -> BigInt {
        let n = self.dim();
        let g: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| dot(&self.rows[i], &self.rows[j])).collect())
            .collect();
        bareiss_det(g)
    }

    /// Exact Gram–Schmidt data: `(μ_{i,j}, |b_i*|²)`.
    pub fn gram_schmidt(&self) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let n = self.dim();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut bn = Vec::with_capacity(n);
        for i in 0..n {
            let bi: Vec<BigRational> = self.rows[i].iter().map(|x| BigRational::from(x.clone())).collect();
            let mut v = bi.clone();
            for j in 0..i {
                let num: BigRational = bi.iter().zip(&bstar[j]).map(|(a, b)| a * b).sum();
                mu[i][j] = num / &bn[j];
                for (vk, bk) in v.iter_mut().zip(&bstar[j]) {
                    *vk -= &mu[i][j] * bk;
                }
            }
            bn.push(v.iter().map(|x| x * x).sum());
            bstar.push(v);
        }
        (mu, bn)
    }

    /// Size reduction `|μ_{i,j}| ≤ 1/2` and the Lovász condition for `delta`.
    pub fn is_lll_reduced(&self, delta: &BigRational) -> bool {
        let (mu, bn) = self.gram_schmidt();
        let half = BigRational::new(1.into(), 2.into());
        for i in 0..self.dim() {
            for j in 0..i {
                if mu[i][j].abs() > half {
                    return false;
                }
            }
            if i > 0 && bn[i] < (delta - &mu[i][i - 1] * &mu[i][i - 1]) * &bn[i - 1] {
                return false;
            }
        }
        true
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Result of an LLL run: `reduced = transform · input`.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub basis: LatticeBasis,
    pub transform: LatticeBasis,
    pub swaps: u64,
}

/// Integral LLL (all Gram–Schmidt data kept as exact integers `d_i`,
/// `λ_{i,j}`) with Lovász parameter `delta`.
pub fn lll_reduce(basis: &LatticeBasis, delta: &BigRational) -> Result<Reduced> {
    let half = BigRational::new(1.into(), 4.into());
    if delta <= &half || delta >= &BigRational::one() {
        return Err(Error::InvalidConfig("LLL parameter must lie in (1/4, 1)".into()));
    }
    let n = basis.dim();
    let mut st = State {
        b: basis.rows.clone(),
        u: LatticeBasis::identity(n).rows,
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
        dn: delta.numer().clone(),
        dd: delta.denom().clone(),
        swaps: 0,
    };
    st.run()?;
    Ok(Reduced {
        basis: LatticeBasis { rows: st.b },
        transform: LatticeBasis { rows: st.u },
        swaps: st.swaps,
    })
}

struct State {
    b: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
    dn: BigInt,
    dd: BigInt,
    swaps: u64,
}

impl State {
    fn run(&mut self) -> Result<()> {
        let n = self.b.len();
        self.d[0] = BigInt::one();
        self.d[1] = dot(&self.b[0], &self.b[0]);
        if self.d[1].is_zero() {
            return Err(Error::RankDeficient);
        }
        let mut k = 1;
        let mut kmax = 0;
        while k < n {
            if k > kmax {
                kmax = k;
                for j in 0..=k {
                    let mut u = dot(&self.b[k], &self.b[j]);
                    for i in 0..j {
                        u = (&self.d[i + 1] * &u - &self.lam[k][i] * &self.lam[j][i]) / &self.d[i];
                    }
                    if j < k {
                        self.lam[k][j] = u;
                    } else {
                        if u.is_zero() {
                            return Err(Error::RankDeficient);
                        }
                        self.d[k + 1] = u;
                    }
                }
            }
            self.red(k, k - 1);
            let l = &self.lam[k][k - 1];
            let lhs = &self.dd * &self.d[k + 1] * &self.d[k - 1];
            let rhs = &self.dn * &self.d[k] * &self.d[k] - &self.dd * l * l;
            if lhs < rhs {
                self.swap(k, kmax);
                k = (k - 1).max(1);
            } else {
                for l in (0..k - 1).rev() {
                    self.red(k, l);
                }
                k += 1;
            }
        }
        Ok(())
    }

    fn red(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        let two_lam: BigInt = &self.lam[k][l] << 1usize;
        if two_lam.abs() <= *dl {
            return;
        }
        let q = (two_lam + dl).div_floor(&(dl << 1usize));
        let (lo, hi) = self.b.split_at_mut(k);
        for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
            if !y.is_zero() {
                *x -= &q * y;
            }
        }
        let (lo, hi) = self.u.split_at_mut(k);
        for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
            if !y.is_zero() {
                *x -= &q * y;
            }
        }
        self.lam[k][l] -= &q * &self.d[l + 1];
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.swaps += 1;
        self.b.swap(k, k - 1);
        self.u.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let bb = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k + 1] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k];
            self.lam[i][k - 1] = (&bb * &t + &lam * &self.lam[i][k]) / &self.d[k + 1];
        }
        self.d[k] = bb;
    }
}

/// Reduce a basis whose last column carries all the large entries by
/// feeding that column in `chunk` bits at a time. Each pass reduces the
/// image of the previous transform, so the final pass works on an almost
/// reduced basis of the exact lattice.
pub fn lll_reduce_progressive(basis: &LatticeBasis, delta: &BigRational, chunk: u64) -> Result<Reduced> {
    let n = basis.dim();
    let bits = basis
        .rows
        .iter()
        .map(|r| r[n - 1].bits())
        .max()
        .unwrap_or(0);
    let chunk = chunk.max(8);
    let mut shift = bits.saturating_sub(chunk.max(64));
    let mut transform = LatticeBasis::identity(n);
    let mut swaps = 0;
    loop {
        let mut scaled = basis.clone();
        if shift > 0 {
            for r in scaled.rows.iter_mut() {
                r[n - 1] = &r[n - 1] >> shift as usize;
            }
        }
        let image = transform.compose(&scaled);
        let step = match lll_reduce(&image, delta) {
            Ok(s) => s,
            Err(Error::RankDeficient) if shift > 0 => {
                shift = shift.saturating_sub(chunk);
                continue;
            }
            Err(e) => return Err(e),
        };
        transform = step.transform.compose(&transform);
        swaps += step.swaps;
        if shift == 0 {
            return Ok(Reduced {
                basis: step.basis,
                transform,
                swaps,
            });
        }
        shift = shift.saturating_sub(chunk);
    }
}
