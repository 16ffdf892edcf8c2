use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sphvar::oracle::*;
use sphvar::unramified::RatLaurent;
use sphvar::Error;

fn qr(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn series(p: u64, c: &[i64], prec: i64) -> TruncSeries {
    TruncSeries::poly(p, c, prec)
}

#[test]
fn series_arithmetic() {
    let a = series(3, &[1, 1], 6);
    let b = a.inv().unwrap();
    assert_eq!(b, series(3, &[1, -1, 1, -1, 1, -1], 6));
    assert_eq!(a.mul(&b), series(3, &[1], 6));
    let t = TruncSeries::monomial(5, 2, -2, 4);
    assert_eq!(t.valuation(), Some(-2));
    assert_eq!(t.prec(), 2);
    let ti = t.inv().unwrap();
    assert_eq!(ti.valuation(), Some(2));
    assert_eq!(t.mul(&ti).valuation(), Some(0));
    let z = TruncSeries::zero(2, 3);
    assert_eq!(z.valuation(), None);
    assert!(matches!(z.inv(), Err(Error::Precision(_))));
    // precision of a product is limited by the other factor's valuation
    let x = TruncSeries::monomial(2, 1, 3, 2);
    assert_eq!(x.mul(&series(2, &[1, 1], 4)).prec(), 5);
    assert_eq!(a.sub(&a).valuation(), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn series_field_laws(seed in 0u64..1000, p in prop::sample::select(vec![2u64, 3, 5]), v in -3i64..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = TruncSeries::random_integral(p, 8, &mut rng);
        let b = TruncSeries::random_integral(p, 8, &mut rng).add(&TruncSeries::monomial(p, 1, 0, 8));
        let b = if b.valuation() == Some(0) { b } else { TruncSeries::monomial(p, 1, 0, 8) };
        let c = TruncSeries::monomial(p, 1, v, 8).mul(&b);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        let back = a.mul(&c).mul(&c.inv().unwrap());
        // agreement up to the common precision
        let d = back.sub(&a);
        prop_assert!(d.valuation().is_none());
    }
}

#[test]
fn orbit_invariant_examples() {
    let p = 2;
    let x = LatticePoint { space: Space::A2, x: Mat::from_entries(1, 2, vec![series(p, &[0, 0, 1], 10), series(p, &[0, 0, 0, 1], 10)]) };
    assert_eq!(orbit_invariant(&x).unwrap(), vec![2]);
    let m = Space::Mat2.representative(p, &[0, 1], 8).unwrap();
    assert_eq!(orbit_invariant(&m).unwrap(), vec![0, 1]);
    let u = Space::UGl2.representative(3, &[-2, 3], 8).unwrap();
    assert_eq!(orbit_invariant(&u).unwrap(), vec![-2, 3]);
    assert!(Space::Mat2.representative(p, &[1, 0], 8).is_err());
}

#[test]
fn random_translates_recover_elementary_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rel = precision_for(3);
    for a in 0..=3 {
        for b in a..=3 {
            let base = Space::Mat2.representative(2, &[a, b], rel).unwrap();
            for _ in 0..100 {
                let x = base.random_translate(rel as i64, &mut rng).unwrap();
                assert_eq!(orbit_invariant(&x).unwrap(), vec![a, b]);
            }
        }
    }
}

#[test]
fn labels_invariant_under_translation() {
    for q in [2, 3] {
        let r = orbit_invariance_check(q, 3, 25, 11).unwrap();
        assert!(r.ok(), "{}", r.mismatch_tsv());
    }
}

#[test]
fn low_precision_is_reported() {
    let x = LatticePoint {
        space: Space::A2,
        x: Mat::from_entries(1, 2, vec![TruncSeries::zero(2, 2), TruncSeries::zero(2, 3)]),
    };
    assert!(matches!(orbit_invariant(&x), Err(Error::Precision(_))));
    // a zero entry known only below the other entry's valuation
    let y = LatticePoint {
        space: Space::A2,
        x: Mat::from_entries(1, 2, vec![TruncSeries::zero(2, 1), TruncSeries::monomial(2, 1, 3, 4)]),
    };
    assert!(matches!(orbit_invariant(&y), Err(Error::Precision(_))));
}

#[test]
fn coset_counts() {
    for q in [2u64, 3, 5] {
        let c = |mu: &[i64]| coset_reps(q, mu, 6).unwrap().reps.len() as u64;
        assert_eq!(c(&[0, 0]), 1);
        assert_eq!(c(&[1, 0]), q + 1);
        assert_eq!(c(&[1, 1]), 1);
        assert_eq!(c(&[2, 0]), q * q + q);
        assert_eq!(c(&[0, -1]), q + 1);
        assert_eq!(c(&[1, 0, 0]), q * q + q + 1);
        assert_eq!(c(&[1, 1, 0]), q * q + q + 1);
    }
    assert!(coset_reps(2, &[0, 1], 4).is_err());
}

#[test]
fn coset_reps_are_distinct_lattices() {
    // reps in Hermite form: equal column lattices would give equal matrices
    let op = coset_reps(2, &[2, 0], 6).unwrap();
    for (i, a) in op.reps.iter().enumerate() {
        for b in &op.reps[i + 1..] {
            assert_ne!(a, b);
        }
        assert_eq!(a.elementary_divisors().unwrap(), vec![0, 2]);
    }
}

#[test]
fn identity_and_central_operators() {
    let f = |l: &[i64]| qr(l.iter().enumerate().map(|(i, x)| (i as i64 + 2) * x).sum::<i64>() + 1);
    let rel = precision_for(6);
    let one = coset_reps(3, &[0, 0], rel).unwrap();
    let z = coset_reps(3, &[1, 1], rel).unwrap();
    let none = || None::<&mut ChaCha8Rng>;
    for l in box_labels(2, 3) {
        assert_eq!(hecke_convolve(Space::UGl2, &one, &f, &l, rel, none()).unwrap(), f(&l));
        let shifted = [l[0] + 1, l[1] + 1];
        assert_eq!(hecke_convolve(Space::UGl2, &z, &f, &l, rel, none()).unwrap(), f(&shifted));
    }
    for n in 0..4 {
        assert_eq!(hecke_convolve(Space::A2, &z, &f, &[n], rel, none()).unwrap(), f(&[n + 1]));
    }
    assert!(hecke_convolve(Space::Mat2, &z, &f, &[0, 0], rel, none()).is_err());
    let g3 = coset_reps(3, &[1, 0, 0], rel).unwrap();
    assert!(hecke_convolve(Space::UGl2, &g3, &f, &[0, 0], rel, none()).is_err());
}

#[test]
fn degree_one_operator_values_interpolate() {
    let labels = vec![vec![0, 0], vec![1, -1], vec![0, 1], vec![2, 2]];
    let got = interpolated_convolution(Space::UGl2, &[1, 0], &[1, 0], &labels, &[2, 3, 5], 0, 1).unwrap();
    let q = RatLaurent::monomial(qr(1), 2);
    let one = RatLaurent::monomial(qr(1), 0);
    assert_eq!(got[&vec![0, 0]], Some(q));
    assert_eq!(got[&vec![1, -1]], Some(one));
    assert_eq!(got[&vec![0, 1]], Some(RatLaurent::zero()));
    assert_eq!(got[&vec![2, 2]], Some(RatLaurent::zero()));
    // A^2 under the degree-one operator: q + 1 cosets, all raising min val by 0 or 1
    let got = interpolated_convolution(Space::A2, &[1, 0], &[1], &[vec![0], vec![1]], &[2, 3, 5], 0, 1).unwrap();
    assert_eq!(got[&vec![0]], Some(RatLaurent::monomial(qr(1), 0)));
    assert_eq!(got[&vec![1]], Some(RatLaurent::monomial(qr(1), 2)));
}

#[test]
fn interpolation_rejects_inconsistent_samples() {
    let s = vec![(2, qr(4)), (3, qr(9)), (5, qr(25))];
    assert_eq!(interpolate(&s, 0, 1), None);
    assert_eq!(interpolate(&s, 0, 2), Some(RatLaurent::monomial(qr(1), 4)));
    let s = vec![(2, BigRational::new(BigInt::from(1), BigInt::from(2))), (3, BigRational::new(BigInt::from(1), BigInt::from(3)))];
    assert_eq!(interpolate(&s, -1, -1), Some(RatLaurent::monomial(qr(1), -2)));
}

#[test]
fn satake_compatibility_gl2() {
    for q in [2, 3] {
        for mu in [[0, 0], [1, 0], [1, 1], [2, 0], [0, -1]] {
            let r = satake_compatibility_check(&mu, q, 4, 3).unwrap();
            assert!(r.ok(), "mu={mu:?} q={q}\n{}", r.mismatch_tsv());
        }
    }
}

#[test]
fn hecke_relations_gl2() {
    for q in [2, 3] {
        let r = hecke_relation_check(q, 3, 5).unwrap();
        assert!(r.ok(), "{}", r.mismatch_tsv());
    }
}

#[test]
fn pp_gl3_oracle_values() {
    let o = pp_gl3_oracle(2, 3, 4, 1).unwrap();
    for (l, v) in &o {
        let expect = (l[1] >= 0 && l[0] + l[1] == 0) as i64;
        assert_eq!(*v, expect, "{l:?}");
    }
}

#[test]
fn pp_gl3_pins_the_sign() {
    for q in [2, 3] {
        assert!(pp_gl3_check(1, q, 2, 2, 9).unwrap().ok());
        let bad = pp_gl3_check(-1, q, 2, 2, 9).unwrap();
        assert!(!bad.ok());
        assert!(bad.mismatches.iter().all(|m| m.label[1] > 0));
    }
}

#[test]
fn godement_jacquet_gl2() {
    for q in [2, 3] {
        let r = gj_check(q, 4, 4, 3, 13).unwrap();
        assert!(r.ok(), "{}", r.mismatch_tsv());
    }
}

#[test]
fn named_checks() {
    assert!(matches!(run_named("nonsense", &[2], 2), Err(Error::Input(_))));
    assert!(matches!(run_named("pp-gl3", &[4], 2), Err(Error::Input(_))));
    let r = run_named("kappa", &[2], 2).unwrap();
    assert_eq!(r.iter().filter(|x| x.ok()).count(), 1);
    for name in CHECK_NAMES.iter().filter(|n| **n != "kappa") {
        for rep in run_named(name, &[2], 2).unwrap() {
            assert!(rep.ok(), "{name}: {}", rep.mismatch_tsv());
        }
    }
}
