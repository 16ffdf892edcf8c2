use num_bigint::BigInt;
use proptest::prelude::*;
use sphvar::roots::chars::{
    decompose, ext_power_bruteforce, freudenthal_multiplicity, irrep_char, kostant_multiplicity, sym_power_bruteforce,
    weyl_dimension,
};
use sphvar::roots::{ParabolicDatum, RootDatum, WeightChar};

fn ch(n: usize, ws: &[&[i64]]) -> WeightChar {
    WeightChar::from_weights(n, &ws.iter().map(|w| w.to_vec()).collect::<Vec<_>>())
}

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn build_examples() {
    let sl2 = RootDatum::parse("SL2").unwrap();
    assert_eq!(sl2.n, 1);
    assert_eq!(sl2.simple_roots, vec![vec![2]]);
    assert_eq!(sl2.simple_coroots, vec![vec![1]]);
    assert_eq!(sl2.cartan, vec![vec![2]]);
    let gl2 = RootDatum::parse("GL2").unwrap();
    assert_eq!(gl2.simple_roots, vec![vec![1, -1]]);
    assert_eq!(gl2.simple_coroots, vec![vec![1, -1]]);
    assert_eq!(gl2.two_rho(), vec![1, -1]);
    assert_eq!(RootDatum::parse("A1xA1").unwrap().weyl_order(), 4);
    assert!(RootDatum::parse("Q7").is_err());
}

#[test]
fn weyl_group_orders() {
    for (l, o) in [("SL3", 6), ("GL4", 24), ("PGL3", 6), ("B2", 8), ("C3", 48), ("B3", 48), ("D4", 192), ("G2", 12), ("Sp4", 8)] {
        assert_eq!(RootDatum::parse(l).unwrap().weyl_order(), o, "{l}");
    }
}

#[test]
fn positive_root_counts() {
    for (l, c) in [("SL3", 3), ("C2", 4), ("B3", 9), ("D4", 12), ("G2", 6)] {
        let rd = RootDatum::parse(l).unwrap();
        assert_eq!(rd.positive_roots.len(), c, "{l}");
        for (a, av) in rd.positive_roots.iter().zip(&rd.positive_coroots) {
            assert_eq!(sphvar::roots::dot(a, av), 2);
        }
    }
}

#[test]
fn orbit_examples() {
    let sl2 = RootDatum::parse("SL2").unwrap();
    assert_eq!(sl2.weyl_orbit(&[1]).into_iter().collect::<Vec<_>>(), vec![vec![-1], vec![1]]);
    let gl2 = RootDatum::parse("GL2").unwrap();
    assert_eq!(gl2.weyl_orbit(&[1, 0]).len(), 2);
    let c2 = RootDatum::parse("C2").unwrap();
    assert_eq!(c2.weyl_orbit(&[1, 0]).len(), 4);
}

#[test]
fn freudenthal_examples() {
    let sl2 = RootDatum::parse("SL2").unwrap();
    assert_eq!(freudenthal_multiplicity(&sl2, &[2], &[0]).unwrap(), b(1));
    let sl3 = RootDatum::parse("SL3").unwrap();
    assert_eq!(freudenthal_multiplicity(&sl3, &[1, 1], &[1, 1]).unwrap(), b(1));
    assert_eq!(freudenthal_multiplicity(&sl3, &[1, 1], &[0, 0]).unwrap(), b(2));
    assert!(freudenthal_multiplicity(&sl3, &[-1, 1], &[0, 0]).is_err());
}

#[test]
fn irrep_examples() {
    let sl2 = RootDatum::parse("SL2").unwrap();
    assert_eq!(irrep_char(&sl2, &[1]).unwrap(), ch(1, &[&[1], &[-1]]));
    assert_eq!(irrep_char(&sl2, &[2]).unwrap(), ch(1, &[&[2], &[0], &[-2]]));
    let sl3 = RootDatum::parse("SL3").unwrap();
    let adj = irrep_char(&sl3, &[1, 1]).unwrap();
    assert_eq!(adj.dim(), b(8));
    assert_eq!(adj.get(&[0, 0]), b(2));
    assert!(adj.is_weyl_invariant(&sl3));
}

#[test]
fn power_examples() {
    let std = ch(1, &[&[1], &[-1]]);
    assert_eq!(std.sym_power(2).unwrap(), ch(1, &[&[2], &[0], &[-2]]));
    assert_eq!(std.sym_power(0).unwrap(), WeightChar::unit(1));
    assert_eq!(std.ext_power(2).unwrap(), ch(1, &[&[0]]));
    assert!(std.sym_power(-1).is_err());
    let u = ch(2, &[&[1, 0], &[0, 1], &[1, 1]]);
    let s2 = u.sym_power(2).unwrap();
    assert_eq!(s2.dim(), b(6));
    assert_eq!(s2.get(&[1, 1]), b(1));
    assert_eq!(s2.get(&[2, 1]), b(1));
    assert_eq!(s2, sym_power_bruteforce(&u, 2));
}

#[test]
fn decompose_examples() {
    let sl2 = RootDatum::parse("SL2").unwrap();
    let std = irrep_char(&sl2, &[1]).unwrap();
    assert_eq!(decompose(&sl2, &std).unwrap(), vec![(vec![1], b(1))]);
    assert_eq!(decompose(&sl2, &std.mul(&std)).unwrap(), vec![(vec![2], b(1)), (vec![0], b(1))]);
    let gl3 = RootDatum::parse("GL3").unwrap();
    let m = gl3.levi(&[0]).unwrap();
    let u = ch(3, &[&[1, 0, -1], &[0, 1, -1]]);
    assert_eq!(decompose(&m, &u).unwrap(), vec![(vec![1, 0, -1], b(1))]);
    assert!(decompose(&sl2, &ch(1, &[&[1]])).is_err());
    let virt = ch(1, &[&[0]]).sub(&ch(1, &[&[1], &[-1]]));
    assert!(decompose(&sl2, &virt).is_err());
}

#[test]
fn parabolic_gl3_21() {
    let gl3 = RootDatum::parse("GL3").unwrap();
    let p = ParabolicDatum::new(&gl3, &[0]).unwrap();
    assert_eq!(p.ab_rows, vec![vec![1, 1, 0], vec![0, 0, 1]]);
    assert_eq!(p.radical_roots(), vec![vec![0, 1, -1], vec![1, 0, -1]]);
    assert_eq!(p.two_rho_m(), vec![1, -1, 0]);
    assert_eq!(p.pos_generators(), vec![vec![1, -1]]);
    assert_eq!(p.pos_coords(&[2, -2]), Some(vec![2]));
    assert_eq!(p.pos_coords(&[-1, 1]), None);
}

#[test]
fn rho_splits_for_all_parabolics() {
    for l in ["SL3", "GL4", "C2", "B3", "G2", "GL2xSL2"] {
        let rd = RootDatum::parse(l).unwrap();
        let r = rd.rank_ss();
        for mask in 0..(1u32 << r) {
            let levi: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
            let p = ParabolicDatum::new(&rd, &levi).unwrap();
            let sum: Vec<i64> = p.two_rho_m().iter().zip(p.two_rho_p()).map(|(a, b)| a + b).collect();
            assert_eq!(sum, rd.two_rho());
            assert_eq!(p.two_rho_p(), sphvar::roots::sum_vecs(&p.radical_roots(), rd.n));
            // rho_P kills Levi coroots
            for &j in &levi {
                assert_eq!(sphvar::roots::dot(&p.two_rho_p(), &rd.simple_coroots[j]), 0);
            }
        }
    }
}

fn small_char(max_dim: usize) -> impl Strategy<Value = WeightChar> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..=max_dim).prop_map(|ws| WeightChar::from_weights(2, &ws))
}

fn dominant_in(rank: usize, max_height: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..=max_height, rank).prop_filter("height", move |v| v.iter().sum::<i64>() <= max_height)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn newton_sym_matches_monomials(c in small_char(4), i in 0usize..=5) {
        prop_assert_eq!(c.sym_power(i as i64).unwrap(), sym_power_bruteforce(&c, i));
    }

    #[test]
    fn newton_ext_matches_monomials(c in small_char(4), i in 0usize..=5) {
        prop_assert_eq!(c.ext_power(i as i64).unwrap(), ext_power_bruteforce(&c, i));
    }

    #[test]
    fn ext_sym_generating_identity(c in small_char(3), j in 1usize..=4) {
        let e = c.ext_powers(j).unwrap();
        let h = c.sym_powers(j).unwrap();
        let mut s = WeightChar::zero(2);
        for i in 0..=j {
            let t = e[i].mul(&h[j - i]);
            s = if i % 2 == 0 { s.add(&t) } else { s.sub(&t) };
        }
        prop_assert!(s.is_zero());
    }

    #[test]
    fn weyl_dimension_rank2(which in 0usize..4, lam in dominant_in(2, 4)) {
        let rd = RootDatum::parse(["SL3", "C2", "B2", "G2"][which]).unwrap();
        let c = irrep_char(&rd, &lam).unwrap();
        prop_assert_eq!(num_rational::BigRational::from_integer(c.dim()), weyl_dimension(&rd, &lam));
        prop_assert!(c.is_weyl_invariant(&rd));
    }

    #[test]
    fn freudenthal_matches_kostant(which in 0usize..2, lam in dominant_in(2, 3), mu in prop::collection::vec(-3i64..=3, 2)) {
        let rd = RootDatum::parse(["SL3", "Sp4"][which]).unwrap();
        prop_assert_eq!(freudenthal_multiplicity(&rd, &lam, &mu).unwrap(), kostant_multiplicity(&rd, &lam, &mu));
    }

    #[test]
    fn decompose_round_trip(parts in prop::collection::vec((dominant_in(2, 3), 1i64..=2), 1..=3)) {
        let rd = RootDatum::parse("SL3").unwrap();
        let mut c = WeightChar::zero(2);
        for (l, m) in &parts {
            c = c.add(&irrep_char(&rd, l).unwrap().scale(&BigInt::from(*m)));
        }
        let dec = decompose(&rd, &c).unwrap();
        let mut back = WeightChar::zero(2);
        for (l, m) in &dec {
            back = back.add(&irrep_char(&rd, l).unwrap().scale(m));
        }
        prop_assert_eq!(back, c);
    }

    #[test]
    fn tensor_commutative_associative(a in small_char(3), b in small_char(3), c in small_char(3)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}
