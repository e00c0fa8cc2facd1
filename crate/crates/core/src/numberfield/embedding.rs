use crate::arith::{iv_log_abs, BigFloat, Interval};
use crate::error::{Error, Result};

use super::field::NumberField;
use super::units::UnitSystem;

/// `M[t][k] = log |ε_k^(i_t)|` with the row for conjugate `j` left out.
#[derive(Clone, Debug)]
pub struct EmbeddingMatrix {
    pub j: usize,
    /// Conjugate index of each row.
    pub rows: Vec<usize>,
    pub entries: Vec<Vec<Interval>>,
}

/// All `n` conjugates of every unit: `logs[i][k] = log |ε_k^(i)|`.
pub fn unit_logs(units: &UnitSystem, field: &NumberField, prec: u32) -> Result<Vec<Vec<Interval>>> {
    (0..field.degree())
        .map(|i| {
            units
                .units
                .iter()
                .map(|u| {
                    let e = field.embed(u, i, prec)?;
                    if e.contains_zero() {
                        return Err(Error::AmbiguousRounding);
                    }
                    iv_log_abs(&e)
                })
                .collect()
        })
        .collect()
}

pub fn log_embedding_matrix(
    units: &UnitSystem,
    field: &NumberField,
    j: usize,
    prec: u32,
) -> Result<EmbeddingMatrix> {
    let n = field.degree();
    if j >= n {
        return Err(Error::InvalidConfig(format!("root index {} out of range", j)));
    }
    let logs = unit_logs(units, field, prec)?;
    Ok(from_logs(&logs, j))
}

/// Drop row `j` of a precomputed full log table.
pub fn from_logs(logs: &[Vec<Interval>], j: usize) -> EmbeddingMatrix {
    let rows: Vec<usize> = (0..logs.len()).filter(|&i| i != j).collect();
    EmbeddingMatrix {
        j,
        entries: rows.iter().map(|&i| logs[i].clone()).collect(),
        rows,
    }
}

/// Enclosure of `M^{-1}` with the maximum absolute row and column sums.
#[derive(Clone, Debug)]
pub struct CertifiedInverse {
    pub inverse: Vec<Vec<Interval>>,
    pub row_norm: Interval,
    pub col_norm: Interval,
}

/// Gauss–Jordan elimination in interval arithmetic with pivots chosen by
/// largest magnitude lower bound. Every matrix inside the input box is
/// inverted by the enclosure.
pub fn invert_certified(m: &[Vec<Interval>]) -> Result<CertifiedInverse> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::SingularOrUnverifiable);
    }
    let prec = m[0][0].precision();
    let mut a: Vec<Vec<Interval>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|k| {
                if k == i {
                    Interval::one(prec)
                } else {
                    Interval::zero(prec)
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].mig().cmp(&a[y][col].mig()))
            .unwrap();
        if a[piv][col].mig().is_zero() {
            return Err(Error::SingularOrUnverifiable);
        }
        a.swap(col, piv);
        let p = a[col][col].clone();
        for c in col..2 * n {
            a[col][c] = a[col][c].div(&p)?;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..2 * n {
                let t = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
        }
    }
    let inverse: Vec<Vec<Interval>> = a.into_iter().map(|r| r[n..].to_vec()).collect();
    let abs_sum = |it: &mut dyn Iterator<Item = &Interval>| {
        it.fold(Interval::zero(prec), |s, x| s.add(&x.abs()))
    };
    let row_norm = (0..n)
        .map(|r| abs_sum(&mut inverse[r].iter()))
        .reduce(|x, y| x.max(&y))
        .unwrap();
    let col_norm = (0..n)
        .map(|c| abs_sum(&mut inverse.iter().map(|r| &r[c])))
        .reduce(|x, y| x.max(&y))
        .unwrap();
    Ok(CertifiedInverse {
        inverse,
        row_norm,
        col_norm,
    })
}

/// Determinant enclosure by interval elimination. When no pivot can be
/// separated from zero the result is widened to contain zero.
pub fn interval_determinant(m: &[Vec<Interval>]) -> Interval {
    let n = m.len();
    let prec = m.first().map(|r| r[0].precision()).unwrap_or(64);
    let mut a = m.to_vec();
    let mut det = Interval::one(prec);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].mig().cmp(&a[y][col].mig()))
            .unwrap();
        if a[piv][col].mig().is_zero() {
            let r = det.mag().mul_exact(&a[piv][col].mag());
            let r = if r.is_zero() { BigFloat::one() } else { r };
            return Interval::zero(prec).widen(&r);
        }
        if piv != col {
            a.swap(col, piv);
            det = det.neg();
        }
        let p = a[col][col].clone();
        det = det.mul(&p);
        for r in col + 1..n {
            let factor = a[r][col].div(&p).expect("pivot excludes zero");
            for c in col..n {
                let t = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
        }
    }
    det
}

/// `η_k = max_i |ε_k^(i)| / min_i |ε_k^(i)|`.
pub fn eta(units: &UnitSystem, field: &NumberField, k: usize, prec: u32) -> Result<Interval> {
    let u = &units.units[k];
    let mut hi: Option<Interval> = None;
    let mut lo: Option<Interval> = None;
    for i in 0..field.degree() {
        let e = field.embed(u, i, prec)?.abs();
        hi = Some(match hi {
            None => e.clone(),
            Some(h) => h.max(&e),
        });
        lo = Some(match lo {
            None => e,
            Some(l) => l.min(&e),
        });
    }
    hi.unwrap().div(&lo.unwrap())
}
