use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::search::fib_pair;

/// `F_{m+1}² − F_{m+1} F_m − F_m² = (−1)^m` for `0 ≤ m ≤ m_limit`.
pub fn pell_identity_check(m_limit: u64) -> bool {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for m in 0..=m_limit {
        let lhs = &b * &b - &b * &a - &a * &a;
        let want = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        if lhs != want {
            return false;
        }
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    true
}

/// Indices whose `q`-th power status decides that of `F_m`: `{m}` for
/// `m ∈ {0, 1, 2, 6}`, otherwise the prime divisors of `m`.
pub fn lemma1_targets(m: u64) -> Vec<u64> {
    if matches!(m, 0 | 1 | 2 | 6) {
        return vec![m];
    }
    let mut out = Vec::new();
    let mut r = m;
    let mut p = 2;
    while p * p <= r {
        if r % p == 0 {
            out.push(p);
            while r % p == 0 {
                r /= p;
            }
        }
        p += 1;
    }
    if r > 1 {
        out.push(r);
    }
    out
}

/// Outcome of [`discriminant_chain_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantReport {
    pub is_square: bool,
    pub z: Option<String>,
    pub v: Option<String>,
    pub identity_holds: bool,
}

/// Test whether `5x^(2q) − 4 = z²`; if so take `z = 5v ± 1` and confirm
/// `x^(2q) = (2v)² + (v ± 1)²`.
pub fn discriminant_chain_check(x: &BigInt, q: u32) -> DiscriminantReport {
    let x2q = num_traits::pow(x.clone(), 2 * q as usize);
    let d: BigInt = &x2q * 5 - 4;
    let none = DiscriminantReport {
        is_square: false,
        z: None,
        v: None,
        identity_holds: false,
    };
    if d.is_negative() {
        return none;
    }
    let z = d.sqrt();
    if &z * &z != d {
        return none;
    }
    for s in [1i64, -1] {
        let t: BigInt = &z - s;
        if (&t % 5u32).is_zero() {
            let v: BigInt = t / 5u32;
            let w = &v + s;
            let two_v: BigInt = &v * 2;
            let ok = &two_v * &two_v + &w * &w == x2q;
            return DiscriminantReport {
                is_square: true,
                z: Some(z.to_string()),
                v: Some(v.to_string()),
                identity_holds: ok,
            };
        }
    }
    DiscriminantReport {
        is_square: true,
        z: Some(z.to_string()),
        v: None,
        identity_holds: false,
    }
}

/// `F_m` and `F_{m+1}` satisfy the quadratic whose discriminant is
/// `5 F_m² − 4(−1)^m`; used to cross-check survivors.
pub fn fibonacci_discriminant_is_square(m: u64) -> bool {
    let (a, _) = fib_pair(m);
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let d: BigInt = &a * &a * 5 + 4 * sign;
    let r = d.sqrt();
    r.clone() * r == d
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pell_small() {
        assert!(pell_identity_check(1));
        let (a, b) = fib_pair(12);
        assert_eq!(&b * &b - &b * &a - &a * &a, BigInt::one());
        assert!(pell_identity_check(10_000));
    }

    #[test]
    fn lemma_targets() {
        assert_eq!(lemma1_targets(6), vec![6]);
        assert_eq!(lemma1_targets(15), vec![3, 5]);
        assert_eq!(lemma1_targets(49), vec![7]);
        assert_eq!(lemma1_targets(97), vec![97]);
    }

    #[test]
    fn discriminant_examples() {
        let r = discriminant_chain_check(&BigInt::one(), 5);
        assert!(r.is_square && r.identity_holds);
        assert_eq!(r.z.as_deref(), Some("1"));
        assert_eq!(r.v.as_deref(), Some("0"));
        assert!(!discriminant_chain_check(&BigInt::from(2), 5).is_square);
        assert!(discriminant_chain_check(&BigInt::one(), 17).identity_holds);
    }

    #[test]
    fn fibonacci_discriminants() {
        assert!((0..200).all(fibonacci_discriminant_is_square));
    }

    proptest! {
        #[test]
        fn targets_divide(m in 0u64..1_000_000) {
            for t in lemma1_targets(m) {
                prop_assert!(matches!(m, 0 | 1 | 2 | 6) || m % t == 0);
            }
        }
    }
}
