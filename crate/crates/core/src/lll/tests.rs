use super::*;
use crate::arith::Interval;
use crate::error::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn three_quarters() -> BigRational {
    BigRational::new(3.into(), 4.into())
}

/// Shortest nonzero vector of a 2-D lattice by scanning small coefficients.
fn brute_svp(b: &LatticeBasis, range: i64) -> BigInt {
    let mut best: Option<BigInt> = None;
    for x in -range..=range {
        for y in -range..=range {
            if x == 0 && y == 0 {
                continue;
            }
            let v: Vec<BigInt> = (0..2)
                .map(|k| &b.rows[0][k] * x + &b.rows[1][k] * y)
                .collect();
            let n: BigInt = v.iter().map(|c| c * c).sum();
            if best.as_ref().map_or(true, |m| &n < m) {
                best = Some(n);
            }
        }
    }
    best.unwrap()
}

#[test]
fn identity_is_fixed() {
    let id = LatticeBasis::identity(4);
    let r = lll_reduce(&id, &three_quarters()).unwrap();
    assert_eq!(r.basis, id);
    assert_eq!(r.swaps, 0);
}

#[test]
fn two_dimensional_oracle() {
    let b = LatticeBasis::from_i64(&[&[1, 0], &[4, 1]]).unwrap();
    let r = lll_reduce(&b, &three_quarters()).unwrap();
    let svp = brute_svp(&b, 50);
    assert!(r.basis.norm_sq(0) <= &svp * 2);
    let b = LatticeBasis::from_i64(&[&[12, 2], &[13, 4]]).unwrap();
    let r = lll_reduce(&b, &three_quarters()).unwrap();
    assert_eq!(r.basis.norm_sq(0), brute_svp(&b, 50));
}

#[test]
fn rejects_dependent_rows_and_bad_delta() {
    let b = LatticeBasis::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
    assert!(matches!(lll_reduce(&b, &three_quarters()), Err(Error::RankDeficient)));
    let id = LatticeBasis::identity(2);
    assert!(lll_reduce(&id, &BigRational::one()).is_err());
    assert!(lll_reduce(&id, &BigRational::new(1.into(), 4.into())).is_err());
}

#[test]
fn display_matrix_layout() {
    let mu = [Interval::from_i64(1, 64), Interval::from_i64(2, 64)];
    let g = build_reduction_lattice(&mu, &BigInt::from(10)).unwrap();
    let want = LatticeBasis::from_i64(&[&[1, 0], &[10, 20]]).unwrap();
    assert_eq!(g.transpose(), want);
    let dec = Interval::from_decimal("0.05", 64).unwrap();
    let tie = Interval::from_rational(&BigRational::new(1.into(), 20.into()), 64);
    let r = build_reduction_lattice(&[tie.clone(), Interval::from_i64(1, 64)], &BigInt::from(10));
    assert!(matches!(r, Err(Error::AmbiguousRounding)));
    assert!(build_reduction_lattice(&[dec, Interval::from_i64(1, 64)], &BigInt::from(10)).is_err());
}

fn random_basis(rng: &mut impl Rng, n: usize, bound: i64) -> LatticeBasis {
    loop {
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
            .collect();
        let b = LatticeBasis::new(rows).unwrap();
        if !b.determinant().is_zero() {
            return b;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn output_is_reduced_and_unimodular(seed in any::<u64>(), n in 2usize..6, bound in 2i64..1000) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let b = random_basis(&mut rng, n, bound);
        let r = lll_reduce(&b, &three_quarters()).unwrap();
        prop_assert!(r.basis.is_lll_reduced(&three_quarters()));
        prop_assert_eq!(r.transform.determinant().abs(), BigInt::one());
        prop_assert_eq!(r.transform.compose(&b), r.basis.clone());
        prop_assert_eq!(r.basis.gram_determinant(), b.gram_determinant());
    }

    #[test]
    fn progressive_matches_lattice(seed in any::<u64>(), q in 2usize..6, bits in 80u32..400) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let c0 = BigInt::one() << bits as usize;
        let mu: Vec<Interval> = (0..q)
            .map(|_| Interval::from_rational(&BigRational::new(rng.gen_range(1i64..1 << 40).into(), (1i64 << 38).into()), bits + 64))
            .collect();
        let g = build_reduction_lattice(&mu, &c0).unwrap();
        let r = lll_reduce_progressive(&g, &three_quarters(), 24).unwrap();
        prop_assert!(r.basis.is_lll_reduced(&three_quarters()));
        prop_assert_eq!(r.transform.compose(&g), r.basis.clone());
        prop_assert_eq!(r.transform.determinant().abs(), BigInt::one());
    }
}

/// Exhaustive check that no vector with `K3_out < max|a_i| ≤ K3_in` satisfies
/// `|δ + Σ a_i μ_i| < K1 exp(−K2 max|a_i|)`.
fn violations(delta: f64, mu: &[f64], k1: f64, k2: f64, lo: i64, hi: i64) -> usize {
    let q = mu.len();
    let mut a = vec![-hi; q];
    let mut count = 0;
    loop {
        let m = a.iter().map(|x| x.abs()).max().unwrap();
        if m > lo {
            let lam: f64 = delta + a.iter().zip(mu).map(|(x, y)| *x as f64 * y).sum::<f64>();
            if lam.abs() < k1 * (-k2 * m as f64).exp() * (1.0 + 1e-9) {
                count += 1;
            }
        }
        let mut i = 0;
        while i < q {
            a[i] += 1;
            if a[i] <= hi {
                break;
            }
            a[i] = -hi;
            i += 1;
        }
        if i == q {
            return count;
        }
    }
}

#[test]
fn reduction_step_is_sound_on_small_instances() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut checked = 0;
    for trial in 0..40 {
        let q = 2 + trial % 2;
        let den = BigInt::from(1u64 << 50);
        let rat = |rng: &mut rand::rngs::StdRng| {
            BigRational::new(BigInt::from(rng.gen_range(-(1i64 << 52)..(1i64 << 52))), den.clone())
        };
        let mu_r: Vec<BigRational> = (0..q).map(|_| rat(&mut rng)).collect();
        let delta_r = rat(&mut rng);
        let form = LinearForm {
            delta: Interval::from_rational(&delta_r, 256),
            mu: mu_r.iter().map(|m| Interval::from_rational(m, 256)).collect(),
        };
        let k1 = Interval::from_i64(1, 128);
        let k2 = Interval::from_i64(3, 128);
        let k3 = BigInt::from(30);
        let mut sigma = default_sigma(q);
        let mut out = None;
        for _ in 0..6 {
            out = reduction_step(&k1, &k2, &k3, &form, &sigma, 1, 16).unwrap().k3_out;
            if out.is_some() {
                break;
            }
            sigma <<= q + 2;
        }
        let Some(out) = out else { continue };
        let out = out.to_i64().unwrap();
        if out >= 30 {
            continue;
        }
        let f = |x: &BigRational| x.to_f64().unwrap();
        let mu: Vec<f64> = mu_r.iter().map(f).collect();
        assert_eq!(violations(f(&delta_r), &mu, 1.0, 3.0, out, 30), 0, "trial {}", trial);
        checked += 1;
    }
    assert!(checked >= 20, "only {} instances reduced", checked);
}

#[test]
fn integral_target_is_reported() {
    // δ = 0 puts the target on the lattice
    let form = LinearForm {
        delta: Interval::zero(128),
        mu: vec![Interval::from_rational(&BigRational::new(3.into(), 7.into()), 128), Interval::from_i64(1, 128)],
    };
    let k = Interval::from_i64(1, 128);
    let rec = reduction_step(&k, &k, &BigInt::from(10), &form, &BigInt::from(100), 1, 16).unwrap();
    assert!(rec.k3_out.is_none());
    assert_eq!(rec.failure.as_deref(), Some("all s_i integral"));
}

#[test]
fn fixpoint_decreases_strictly() {
    // Λ = log 7 + a1 log 2 + a2 log 3 + a3 log 5 never vanishes
    let src = |prec: u32| -> crate::Result<LinearForm> {
        let lg = |p: i64| crate::arith::iv_log(&Interval::from_i64(p, prec));
        Ok(LinearForm {
            delta: lg(7)?,
            mu: vec![lg(2)?, lg(3)?, lg(5)?],
        })
    };
    let k1 = Interval::from_i64(10, 128);
    let k2 = Interval::from_i64(2, 128);
    let t = reduce_to_fixpoint(&src, &k1, &k2, &BigInt::from(10).pow(30), &ReductionConfig::default()).unwrap();
    let b = t.bounds();
    assert!(b.len() >= 3);
    assert!(b.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(b.last().unwrap(), &t.final_k3);
    assert!(t.final_k3 < BigInt::from(100));
}
