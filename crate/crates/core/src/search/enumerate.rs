use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, UnitSystem};

/// A unit product of the form `±(A − θB)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearUnit {
    pub exponents: Vec<i64>,
    #[serde(serialize_with = "crate::search::ser_big")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::search::ser_big")]
    pub b: BigInt,
}

fn as_linear(e: &FieldElement) -> Option<(BigInt, BigInt)> {
    if !e.denominator().is_zero() && e.denominator() != &BigInt::from(1) {
        return None;
    }
    let c = e.numerators();
    if c[2..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some((c[0].clone(), -&c[1]))
}

/// Visit every exponent vector in `[−bound, bound]^(n−1)` along a reflected
/// Gray code, with one exact multiplication per step.
pub fn gray_walk(
    field: &NumberField,
    units: &UnitSystem,
    bound: u32,
    mut visit: impl FnMut(&[i64], &FieldElement),
) -> Result<()> {
    let k = units.len();
    let b = bound as i64;
    let inverses: Vec<FieldElement> = units
        .units
        .iter()
        .map(|u| field.inverse(u))
        .collect::<Result<_>>()?;
    let mut digits = vec![-b; k];
    let mut dirs = vec![1i64; k];
    let mut cur = field.one();
    for u in &units.units {
        cur = field.mul(&cur, &field.pow(u, -b)?);
    }
    loop {
        visit(&digits, &cur);
        let mut moved = false;
        for i in 0..k {
            let next = digits[i] + dirs[i];
            if (-b..=b).contains(&next) {
                digits[i] = next;
                let step = if dirs[i] > 0 { &units.units[i] } else { &inverses[i] };
                cur = field.mul(&cur, step);
                moved = true;
                break;
            }
            dirs[i] = -dirs[i];
        }
        if !moved {
            return Ok(());
        }
    }
}

/// Unit products `±∏ ε_k^(u_k)` with `max |u_k| ≤ bound` that are linear in
/// `θ`. Each hit is reported with both signs.
pub fn direct_enumeration(
    field: &NumberField,
    units: &UnitSystem,
    bound: u32,
    max_box: u128,
) -> Result<Vec<LinearUnit>> {
    let side = 2 * bound as u128 + 1;
    let size = side.checked_pow(units.len() as u32).unwrap_or(u128::MAX);
    if size > max_box {
        return Err(Error::BoxTooLarge(size));
    }
    let mut hits = Vec::new();
    gray_walk(field, units, bound, |digits, cur| {
        if let Some((a, b)) = as_linear(cur) {
            hits.push(LinearUnit {
                exponents: digits.to_vec(),
                a: -&a,
                b: -&b,
            });
            hits.push(LinearUnit {
                exponents: digits.to_vec(),
                a,
                b,
            });
        }
    })?;
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::load_units;
    use num_traits::Signed;

    #[test]
    fn zero_box_is_unit_one() {
        let k = NumberField::new(5).unwrap();
        let u = load_units(5).unwrap();
        let h = direct_enumeration(&k, &u, 0, 1 << 40).unwrap();
        assert_eq!(h.len(), 2);
        assert!(h.iter().all(|x| x.b.is_zero() && x.a.abs() == BigInt::from(1)));
    }

    #[test]
    fn gray_walk_visits_every_vector() {
        let k = NumberField::new(5).unwrap();
        let u = load_units(5).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        gray_walk(&k, &u, 2, |d, e| {
            let mut direct = k.one();
            for (r, &x) in d.iter().enumerate() {
                direct = k.mul(&direct, &k.pow(u.get(r), x).unwrap());
            }
            assert_eq!(&direct, e);
            seen.insert(d.to_vec());
        })
        .unwrap();
        assert_eq!(seen.len(), 625);
        assert!(matches!(
            direct_enumeration(&k, &u, 1000, 1 << 20),
            Err(Error::BoxTooLarge(_))
        ));
    }

    #[test]
    fn n7_smoke_residuals() {
        let k = NumberField::new(7).unwrap();
        let u = load_units(7).unwrap();
        for h in direct_enumeration(&k, &u, 2, 1 << 40).unwrap() {
            let r = k.unit_equation_residual(&h.a, &h.b);
            assert_eq!(r.abs(), BigInt::from(1));
        }
    }
}
