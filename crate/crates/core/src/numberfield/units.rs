use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::embedding::{interval_determinant, log_embedding_matrix};
use super::field::{FieldElement, NumberField};
use crate::error::{Error, Result};

const TABLE_N5: &str = include_str!("../../data/units_n5.txt");
const TABLE_N7: &str = include_str!("../../data/units_n7.txt");
const TABLE_N11: &str = include_str!("../../data/units_n11.txt");
const TABLE_N13: &str = include_str!("../../data/units_n13.txt");
const TABLE_N17: &str = include_str!("../../data/units_n17.txt");

/// `n − 1` independent units of `Q(θ)`.
#[derive(Clone, Debug)]
pub struct UnitSystem {
    pub units: Vec<FieldElement>,
    pub source: String,
}

impl UnitSystem {
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn get(&self, k: usize) -> &FieldElement {
        &self.units[k]
    }
}

/// The bundled table for `n`, if there is one.
pub fn bundled_table(n: u64) -> Option<&'static str> {
    match n {
        5 => Some(TABLE_N5),
        7 => Some(TABLE_N7),
        11 => Some(TABLE_N11),
        13 => Some(TABLE_N13),
        17 => Some(TABLE_N17),
        _ => None,
    }
}

pub fn load_units(n: u64) -> Result<UnitSystem> {
    let text = bundled_table(n)
        .ok_or_else(|| Error::InvalidConfig(format!("no unit table for n = {}", n)))?;
    let mut u = parse_unit_table(text, n as usize)?;
    u.source = format!("data/units_n{}.txt", n);
    Ok(u)
}

/// Parse a unit table: a header line `n=<degree>` followed by one unit per
/// line written as a sum of `num/den * x^k` terms. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_unit_table(text: &str, n: usize) -> Result<UnitSystem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::ParseError {
        line: 0,
        msg: "empty unit table".into(),
    })?;
    let deg: usize = header
        .strip_prefix("n=")
        .or_else(|| header.strip_prefix("n ="))
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| Error::ParseError {
            line: hline,
            msg: format!("expected header `n=<degree>`, found `{}`", header),
        })?;
    if deg != n {
        return Err(Error::WrongDegree {
            expected: n,
            found: deg,
        });
    }
    let mut units = Vec::new();
    for (line, body) in lines {
        units.push(parse_element(body, n).map_err(|msg| Error::ParseError { line, msg })?);
    }
    if units.len() != n - 1 {
        return Err(Error::WrongCount {
            expected: n - 1,
            found: units.len(),
        });
    }
    Ok(UnitSystem {
        units,
        source: "inline".into(),
    })
}

/// Parse one `±c * x^k ± …` expression into an element of degree `< n`.
pub fn parse_element(s: &str, n: usize) -> std::result::Result<FieldElement, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty expression".into());
    }
    let mut coeffs = vec![BigRational::zero(); n];
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for t in terms {
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (coef, power) = match body.find('x') {
            Some(i) => {
                let c = body[..i].trim_end_matches('*');
                let rest = &body[i + 1..];
                let k = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| format!("bad power in term `{}`", t))?
                };
                (c, k)
            }
            None => (body, 0),
        };
        let c = if coef.is_empty() {
            BigRational::one()
        } else {
            parse_fraction(coef).ok_or_else(|| format!("bad coefficient `{}`", coef))?
        };
        if power >= n {
            return Err(format!("power {} exceeds degree bound {}", power, n - 1));
        }
        coeffs[power] += if neg { -c } else { c };
    }
    Ok(FieldElement::from_rationals(&coeffs))
}

fn parse_fraction(s: &str) -> Option<BigRational> {
    let (a, b) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let a: BigInt = a.parse().ok()?;
    let b: BigInt = b.parse().ok()?;
    if b.is_zero() {
        return None;
    }
    Some(BigRational::new(a, b))
}

/// Outcome of [`verify_unit_system`].
#[derive(Clone, Debug, Serialize)]
pub struct UnitReport {
    pub count: usize,
    /// `N(ε_k)` for each unit.
    pub norms: Vec<i32>,
    /// Every characteristic polynomial is integral with constant term ±1.
    pub integral: bool,
    /// Enclosure of the determinant of the log-embedding matrix.
    pub regulator_det: (String, String),
    /// Units are not checked to be fundamental.
    pub fundamentality_assumed: bool,
}

/// Check that every unit is an algebraic integer of norm ±1 and that the
/// system is multiplicatively independent.
pub fn verify_unit_system(units: &UnitSystem, field: &NumberField) -> Result<UnitReport> {
    let n = field.degree();
    if units.len() != n - 1 {
        return Err(Error::WrongCount {
            expected: n - 1,
            found: units.len(),
        });
    }
    let mut norms = Vec::new();
    for (k, u) in units.units.iter().enumerate() {
        let nm = field.norm(u).map_err(|_| Error::NotAUnit(k))?;
        if !nm.is_integer() || nm.numer().abs() != BigInt::one() {
            return Err(Error::NotAUnit(k));
        }
        let cp = field.char_poly(u);
        if !cp.iter().all(|c| c.is_integer()) {
            return Err(Error::NotAUnit(k));
        }
        norms.push(if nm.is_positive() { 1 } else { -1 });
    }
    let m = log_embedding_matrix(units, field, n - 1, 128).map_err(|e| match e {
        Error::NonPositiveArgument => Error::DependentUnits,
        e => e,
    })?;
    let det = interval_determinant(&m.entries);
    if det.contains_zero() {
        return Err(Error::DependentUnits);
    }
    Ok(UnitReport {
        count: units.len(),
        norms,
        integral: true,
        regulator_det: det.to_decimal(12),
        fundamentality_assumed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn first_units() {
        let u = load_units(5).unwrap();
        assert_eq!(u.get(0).coeffs(), vec![r(-1, 4), r(-1, 4), r(3, 16), r(1, 16), r(0, 1)]);
        let u = load_units(11).unwrap();
        assert_eq!(u.get(0).coeff(0), r(209, 256));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_unit_table("", 5), Err(Error::ParseError { .. })));
        assert!(matches!(
            parse_unit_table("n=7\n1 * x^0\n", 5),
            Err(Error::WrongDegree { .. })
        ));
        assert!(matches!(
            parse_unit_table("n=5\n1 * x^0\n", 5),
            Err(Error::WrongCount { .. })
        ));
        assert!(matches!(
            parse_unit_table("n=3\n1/0 * x^0\nx\n", 3),
            Err(Error::ParseError { line: 2, .. })
        ));
    }

    #[test]
    fn flexible_terms() {
        let e = parse_element("x^2 - 3/2*x + 5 + 1/2 * x^1", 3).unwrap();
        assert_eq!(e.coeffs(), vec![r(5, 1), r(-1, 1), r(1, 1)]);
    }

    #[test]
    fn all_tables_verify() {
        for n in [5u64, 7, 11, 13, 17] {
            let k = NumberField::new(n).unwrap();
            let u = load_units(n).unwrap();
            let rep = verify_unit_system(&u, &k).unwrap();
            assert_eq!(rep.norms.len(), n as usize - 1);
        }
    }

    #[test]
    fn broken_systems_are_rejected() {
        let k = NumberField::new(5).unwrap();
        let mut u = load_units(5).unwrap();
        let sq = k.mul(u.get(0), u.get(0));
        u.units[1] = sq;
        assert!(matches!(verify_unit_system(&u, &k), Err(Error::DependentUnits)));
        let mut u = load_units(5).unwrap();
        u.units[0] = k.theta();
        assert!(matches!(verify_unit_system(&u, &k), Err(Error::NotAUnit(0))));
    }
}
