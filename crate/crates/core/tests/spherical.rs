use num_bigint::BigInt;
use proptest::prelude::*;
use sphvar::catalog;
use sphvar::document::InputDocument;
use sphvar::geometry::Cone;
use sphvar::roots::RootDatum;
use sphvar::spherical::*;
use sphvar::Error;

fn datum(json: &str) -> SphericalDatum {
    InputDocument::parse(json).unwrap().to_datum().unwrap()
}

fn fixture(key: &str) -> SphericalDatum {
    catalog::load(key).unwrap().datum
}

fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
    Cone::from_i64(dim, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn cc(dim: usize, gens: &[&[i64]], colors: &[&str]) -> ColoredCone {
    ColoredCone::new(cone(dim, gens), colors.iter().map(|s| s.to_string()))
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

const SL2_ONLY: &str = r#"{"name": "a2-minus-0-sl2", "group": {"type": "SL", "rank": 2},
  "lattice_map": [[1]], "valuation_cone": {"generators": [[1], [-1]]},
  "colors": [{"label": "D", "rho": [-1]}]}"#;

const GL1_INDEX2: &str = r#"{"name": "index2", "group": {"type": "GL", "rank": 1},
  "lattice_map": [[2]], "valuation_cone": {"generators": [[1], [-1]]}}"#;

const HALF_LINE: &str = r#"{"name": "half-line", "group": {"type": "GL", "rank": 1},
  "lattice_map": [[1]], "valuation_cone": {"generators": [[1]]},
  "colors": [{"label": "D", "rho": [-1]}]}"#;

const U_SL2: &str = r#"{"name": "u-sl2", "group": {"type": "SL", "rank": 2},
  "lattice_map": [[1]], "valuation_cone": {"generators": [[1], [-1]]},
  "colors": [{"label": "D", "rho": [-1]}]}"#;

const ZERO_COLOR: &str = r#"{"name": "zero-color", "group": {"type": "GL", "rank": 1},
  "lattice_map": [[1]], "valuation_cone": {"generators": [[1], [-1]]},
  "colors": [{"label": "Z", "rho": [0]}]}"#;

/// SL3 with spherical roots alpha1 + alpha2 and alpha1, wavefront by construction.
const NEG_FAIL: &str = r#"{"name": "negligible-fail", "group": {"type": "SL", "rank": 3},
  "lattice_map": [[1, 0], [0, 1]], "valuation_cone": {"generators": [[-2, -1], [-1, -2]]},
  "spherical_roots": [[1, 1], [2, -1]]}"#;

#[test]
fn colored_cone_examples() {
    let a1 = fixture("a1-gl1");
    assert!(validate_colored_cone(&a1, &ColoredCone::trivial(1)).unwrap().ok);
    let v = validate_colored_cone(&a1, &cc(1, &[&[1], &[-1]], &[])).unwrap();
    assert!(!v.ok);
    assert!(v.detail.contains("(i)"), "{}", v.detail);
    assert!(validate_colored_cone(&a1, &cc(1, &[&[1]], &[])).unwrap().ok);
    let d = fixture("pp-gl3-21");
    assert!(matches!(validate_colored_cone(&d, &ColoredCone::trivial(3)), Err(Error::Input(_))));
}

#[test]
fn zero_color_rejected_by_condition_iii() {
    let d = datum(ZERO_COLOR);
    let v = validate_colored_cone(&d, &cc(1, &[], &["Z"])).unwrap();
    assert!(!v.ok);
    assert!(v.detail.contains("(iii)"));
}

#[test]
fn affine_examples() {
    // V is a full line here, so the only admissible witness is chi = 0.
    let a1 = fixture("a1-gl1");
    let r = is_affine(&a1, &cc(1, &[&[1]], &[])).unwrap();
    assert!(r.affine);
    assert_eq!(r.witness, Some(big(&[0])));

    let z = datum(ZERO_COLOR);
    let r = is_affine(&z, &ColoredCone::trivial(1)).unwrap();
    assert!(!r.affine);

    let g = fixture("pgl2-group");
    let r = is_affine(&g, &ColoredCone::trivial(1)).unwrap();
    assert!(r.affine);
    let w = r.witness.unwrap();
    assert!(w[0] < BigInt::from(0));

    assert!(matches!(is_affine(&a1, &cc(1, &[&[1], &[-1]], &[])), Err(Error::Input(_))));
}

#[test]
fn affine_closure_examples() {
    let a2 = fixture("a2-sl2");
    let c = affine_closure_data(&a2).unwrap();
    assert!(c.cone.same_as(&cone(1, &[&[-1]])));
    assert_eq!(c.colors.iter().cloned().collect::<Vec<_>>(), vec!["D".to_string()]);

    let g = fixture("pgl2-group");
    let c = affine_closure_data(&g).unwrap();
    assert_eq!(c, ColoredCone::trivial(1));

    let h = datum(HALF_LINE);
    let c = affine_closure_data(&h).unwrap();
    assert!(c.colors.is_empty());
    assert!(c.cone.same_as(&Cone::zero(1)));

    assert!(matches!(affine_closure_data(&datum(ZERO_COLOR)), Err(Error::NotQuasiAffine(_))));
}

#[test]
fn wavefront_examples() {
    assert!(is_wavefront(&fixture("a2-sl2")));
    assert!(!is_wavefront(&datum(SL2_ONLY)));
    assert!(is_wavefront(&fixture("pgl2-group")));
}

#[test]
fn arithmetic_multiplicity_examples() {
    assert_eq!(arithmetic_multiplicity(&fixture("a2-sl2")).unwrap(), BigInt::from(1));
    assert_eq!(arithmetic_multiplicity(&datum(GL1_INDEX2)).unwrap(), BigInt::from(2));
    assert_eq!(arithmetic_multiplicity(&fixture("a1-gl1")).unwrap(), BigInt::from(1));
}

#[test]
fn orbit_examples() {
    let a1 = fixture("a1-gl1");
    let mut o = enumerate_orbits(&a1, 3, true).unwrap();
    o.sort();
    assert_eq!(o, vec![vec![0], vec![1], vec![2], vec![3]]);
    let a2 = fixture("a2-sl2");
    assert_eq!(enumerate_orbits(&a2, 2, true).unwrap().len(), 3);
    for k in catalog::list_entries() {
        assert_eq!(enumerate_orbits(&fixture(k), 0, false).unwrap().len(), 1, "{k}");
    }
    assert!(matches!(enumerate_orbits(&datum(SL2_ONLY), 2, true), Err(Error::Input(_))));
}

#[test]
fn support_examples() {
    let sl3 = RootDatum::factor("SL", 3).unwrap();
    let a1 = sl3.simple_roots[0].clone();
    let a12: Vec<i64> = sl3.simple_roots[0].iter().zip(&sl3.simple_roots[1]).map(|(x, y)| x + y).collect();
    assert_eq!(support(&sl3, &[a1]).unwrap(), vec![0]);
    assert_eq!(support(&sl3, &[a12]).unwrap(), vec![0, 1]);
    assert_eq!(support(&sl3, &[]).unwrap(), Vec::<usize>::new());
    let gl2 = RootDatum::factor("GL", 2).unwrap();
    assert!(matches!(support(&gl2, &[vec![1, 1]]), Err(Error::Input(_))));
}

#[test]
fn parabolic_induction_examples() {
    assert_eq!(parabolic_induction(&datum(U_SL2)).unwrap(), Some(vec![]));
    assert_eq!(parabolic_induction(&fixture("pgl2-group")).unwrap(), None);
    assert_eq!(parabolic_induction(&datum(NEG_FAIL)).unwrap(), None);
}

#[test]
fn negligible_examples() {
    let r = negligible_orbit_check(&fixture("a2-sl2")).unwrap();
    assert!(r.ok);
    let r = negligible_orbit_check(&fixture("pgl2-group")).unwrap();
    assert!(r.ok);
    assert_eq!(r.certificate.len(), 1);
    assert!(r.certificate[0].1.is_some());

    let d = datum(NEG_FAIL);
    assert!(is_wavefront(&d));
    let r = negligible_orbit_check(&d).unwrap();
    assert!(!r.ok);
    let bad: Vec<&Vec<usize>> = r.certificate.iter().filter(|(_, w)| w.is_none()).map(|(t, _)| t).collect();
    assert_eq!(bad, vec![&vec![0]]);

    assert!(matches!(negligible_orbit_check(&datum(SL2_ONLY)), Err(Error::HypothesisNotMet(_))));
}

#[test]
fn aut_lineality_examples() {
    let (r, c) = aut_lineality(&fixture("a2-sl2")).unwrap();
    assert_eq!(r, 1);
    assert!(c.unwrap().same_as(&cone(1, &[&[-1]])));
    let (r, c) = aut_lineality(&fixture("pgl2-group")).unwrap();
    assert_eq!(r, 0);
    assert!(c.unwrap().same_as(&Cone::zero(1)));
}

#[test]
fn geometric_multiplicity_needs_little_weyl() {
    assert_eq!(geometric_multiplicity(&fixture("pgl2-group")), Some(1));
    assert_eq!(geometric_multiplicity(&fixture("a2-sl2")), None);
}

#[test]
fn fixture_invariants() {
    for e in catalog::load_all().unwrap() {
        let d = &e.datum;
        assert!(d.valuation_cone.contains_cone(&d.antidominant_image()), "{}", e.key);
        for g in &d.spherical_roots {
            for v in d.valuation_cone.generators() {
                let p: BigInt = v.iter().zip(g).map(|(a, b)| a * BigInt::from(*b)).sum();
                assert!(p <= BigInt::from(0), "{}: {g:?} vs {v:?}", e.key);
            }
        }
        assert!(d.consistency().is_empty(), "{}: {:?}", e.key, d.consistency());
        match affine_closure_data(d) {
            Ok(c) => {
                assert!(validate_colored_cone(d, &c).unwrap().ok, "{}", e.key);
                assert!(is_affine(d, &c).unwrap().affine, "{}", e.key);
            }
            Err(Error::NotQuasiAffine(_)) => {}
            Err(err) => panic!("{}: {err}", e.key),
        }
        if let Some(c) = &d.colored_cone {
            assert!(validate_colored_cone(d, c).unwrap().ok, "{}", e.key);
        }
        if e.flags.reductive_stabilizer {
            assert_eq!(parabolic_induction(d).unwrap(), None, "{}", e.key);
        }
        if e.flags.used_in_prop_equal && is_wavefront(d) {
            assert!(negligible_orbit_check(d).unwrap().ok, "{}", e.key);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integral_orbits_are_orbits(k in 0usize..15, h in 0u32..4) {
        let key = catalog::list_entries()[k];
        let d = fixture(key);
        if d.colored_cone.is_some() {
            let all = enumerate_orbits(&d, h, false).unwrap();
            for p in enumerate_orbits(&d, h, true).unwrap() {
                prop_assert!(all.contains(&p));
            }
        }
    }

    /// Colored cones built from a subset of colors plus valuations: when
    /// accepted, an affineness witness satisfies the defining system.
    #[test]
    fn affine_witness_is_sound(k in 0usize..15, mask in 0u32..64, vmask in 0u32..64) {
        let key = catalog::list_entries()[k];
        let d = fixture(key);
        let r = d.rank();
        let colors: Vec<String> =
            d.colors.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, c)| c.label.clone()).collect();
        let mut gens: Vec<Vec<BigInt>> = d.rhos(&colors).iter().map(|v| big(v)).collect();
        gens.extend(
            d.valuation_cone.generators().iter().enumerate().filter(|(i, _)| vmask & (1 << i) != 0).map(|(_, g)| g.clone()),
        );
        let c = ColoredCone::new(Cone::new(r, gens).unwrap(), colors);
        if validate_colored_cone(&d, &c).unwrap().ok {
            let a = is_affine(&d, &c).unwrap();
            if let Some(w) = a.witness {
                let dot = |v: &[BigInt]| -> BigInt { v.iter().zip(&w).map(|(x, y)| x * y).sum() };
                for g in d.valuation_cone.generators() {
                    prop_assert!(dot(g) >= BigInt::from(0));
                }
                for g in c.cone.generators() {
                    prop_assert!(dot(g) == BigInt::from(0));
                }
                for col in d.colors.iter().filter(|x| !c.colors.contains(&x.label)) {
                    prop_assert!(dot(&big(&col.rho)) < BigInt::from(0));
                }
            }
        }
    }
}
