use num_bigint::BigInt;
use sphvar::catalog::{self, compare_affine_closures, list_entries, load, metadata_problems};
use sphvar::document::InputDocument;
use sphvar::spherical::*;
use sphvar::Error;

#[test]
fn at_least_ten_entries_and_unknown_key() {
    assert!(list_entries().len() >= 10);
    assert!(matches!(load("no-such-thing"), Err(Error::Input(_))));
    for k in list_entries() {
        assert_eq!(load(k).unwrap().datum.name, k);
    }
}

#[test]
fn metadata_is_well_formed() {
    for e in catalog::load_all().unwrap() {
        assert!(metadata_problems(&e).is_empty(), "{}: {:?}", e.key, metadata_problems(&e));
    }
}

#[test]
fn flags_match_computation() {
    for e in catalog::load_all().unwrap() {
        let d = &e.datum;
        let f = &e.flags;
        assert_eq!(is_wavefront(d), f.wavefront_expected, "{} wavefront", e.key);
        assert_eq!(parabolic_induction(d).unwrap(), f.induced, "{} induced", e.key);
        let neg = match negligible_orbit_check(d) {
            Ok(r) => Some(r.ok),
            Err(Error::HypothesisNotMet(_)) => None,
            Err(err) => panic!("{}: {err}", e.key),
        };
        assert_eq!(neg, f.negligible, "{} negligible", e.key);
        assert_eq!(arithmetic_multiplicity(d).unwrap(), BigInt::from(f.arith_mult), "{} arith", e.key);
        assert_eq!(aut_lineality(d).unwrap().0, f.aut_rank, "{} aut", e.key);
    }
}

#[test]
fn conjectural_lvalues_are_flagged() {
    let t = load("tensor-4").unwrap();
    assert!(t.flags.conjecture);
    assert!(t.flags.expected_lvalue.is_some());
    assert!(!load("triple-product").unwrap().flags.conjecture);
}

#[test]
fn json_round_trip() {
    for k in list_entries() {
        let doc = InputDocument::parse(catalog::source(k).unwrap()).unwrap();
        let again = InputDocument::parse(&doc.render()).unwrap();
        assert_eq!(doc, again, "{k}");
    }
}

#[test]
fn triple_product_matches_siegel_closure() {
    let r = compare_affine_closures("triple-product").unwrap();
    assert!(r.equal, "{}", r.detail);
    assert_eq!(r.mine.colors.len(), 4);
    assert_eq!(r.collapsed, vec!["D1", "D2", "D3"]);
    assert!(matches!(compare_affine_closures("a1-gl1"), Err(Error::Input(_))));
}

#[test]
fn closure_examples_from_fixtures() {
    let kvs = load("kvs-1-15").unwrap();
    let c = affine_closure_data(&kvs.datum).unwrap();
    assert_eq!(c.colors.iter().cloned().collect::<Vec<_>>(), vec!["Da", "Db"]);
    let t = load("tensor-4").unwrap();
    assert_eq!(affine_closure_data(&t.datum).unwrap().colors.len(), 5);
}

#[test]
fn malformed_lvalue_rejected() {
    use sphvar::document::{LTerm, LValue};
    let term = |rep: &str, shift: &str| LTerm { rep: rep.into(), shift: shift.into() };
    let ok = LValue { numerator: vec![term("std", "1/2-s2")], denominator: vec![term("Ad", "1")] };
    assert!(catalog::lvalue_well_formed(&ok).is_ok());
    for bad in ["", "1/2+t", "s-", "1//2"] {
        let l = LValue { numerator: vec![term("std", bad)], denominator: vec![] };
        assert!(catalog::lvalue_well_formed(&l).is_err(), "{bad}");
    }
    let empty = LValue { numerator: vec![], denominator: vec![] };
    assert!(catalog::lvalue_well_formed(&empty).is_err());
}
