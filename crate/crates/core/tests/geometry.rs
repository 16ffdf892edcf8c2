use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sphvar::geometry::lattice::{qi, to_big};
use sphvar::geometry::{feasible, Cone, LatticeMap, LinearSystem, Rel};

fn cone(dim: usize, g: &[&[i64]]) -> Cone {
    Cone::from_i64(dim, &g.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn qv(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| qi(x)).collect()
}

#[test]
fn dual_examples() {
    let orth = cone(2, &[&[1, 0], &[0, 1]]);
    assert_eq!(orth.dual().generators(), cone(2, &[&[1, 0], &[0, 1]]).generators());
    let c = cone(2, &[&[1, 0], &[1, 1]]);
    assert!(c.dual().same_as(&cone(2, &[&[0, 1], &[1, -1]])));
    let z = Cone::zero(2);
    assert!(z.dual().same_as(&Cone::full(2)));
    assert_eq!(z.dual().generators().len(), 4);
}

#[test]
fn strict_convexity_examples() {
    assert!(cone(2, &[&[1, 0], &[0, 1]]).is_strictly_convex());
    assert!(!cone(2, &[&[1, 0], &[-1, 0]]).is_strictly_convex());
    // a(1,0) + b(1,1) + c(-1,-2) = 0 forces a = b = c = 0: no line
    assert!(cone(2, &[&[1, 0], &[1, 1], &[-1, -2]]).is_strictly_convex());
    assert!(!cone(2, &[&[1, 0], &[1, 1], &[-1, -2], &[0, 1]]).is_strictly_convex());
}

#[test]
fn relint_examples() {
    let orth = cone(2, &[&[1, 0], &[0, 1]]);
    assert!(orth.relative_interior_contains(&qv(&[1, 1])));
    assert!(!orth.relative_interior_contains(&qv(&[1, 0])));
    assert!(Cone::zero(2).relative_interior_contains(&qv(&[0, 0])));
    let ray = cone(2, &[&[1, 1]]);
    assert!(ray.relative_interior_contains(&qv(&[2, 2])));
    assert!(!ray.relative_interior_contains(&qv(&[0, 0])));
}

#[test]
fn feasible_examples() {
    let mut s = LinearSystem::new(1);
    s.push_i64(&[1], Rel::Ge);
    s.push_i64(&[-1], Rel::Gt);
    assert!(feasible(&s).is_none());
    let mut s = LinearSystem::new(2);
    s.push_i64(&[1, 1], Rel::Gt);
    s.push_i64(&[1, -1], Rel::Eq);
    let w = feasible(&s).unwrap();
    assert!(s.satisfied_by(&w));
}

#[test]
fn lattice_point_examples() {
    assert_eq!(cone(1, &[&[1]]).lattice_points(3), vec![vec![0], vec![1], vec![2], vec![3]]);
    assert_eq!(
        cone(2, &[&[1, 0], &[1, 2]]).lattice_points(2),
        vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 0]]
    );
    // (1,2) has l1-norm 3
    assert!(cone(2, &[&[1, 0], &[1, 2]]).lattice_points(3).contains(&vec![1, 2]));
    assert_eq!(Cone::zero(3).lattice_points(4), vec![vec![0, 0, 0]]);
}

#[test]
fn torsion_examples() {
    assert_eq!(LatticeMap::identity(2).torsion_order().unwrap(), BigInt::from(1));
    assert_eq!(LatticeMap::from_i64(&[vec![2]]).unwrap().torsion_order().unwrap(), BigInt::from(2));
    let d = LatticeMap::from_i64(&[vec![1, 0], vec![0, 6]]).unwrap();
    let u = LatticeMap::from_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
    let v = LatticeMap::from_i64(&[vec![1, 3], vec![0, 1]]).unwrap();
    let m = u.compose(&d).unwrap().compose(&v).unwrap();
    assert_eq!(m.torsion_order().unwrap(), BigInt::from(6));
    assert!(LatticeMap::from_i64(&[vec![1, 1]]).unwrap().torsion_order().is_err());
}

fn small_vec(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, dim)
}

fn cone_strategy() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=4).prop_flat_map(|d| (Just(d), proptest::collection::vec(small_vec(d), 0..=6)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn dual_of_dual((d, g) in cone_strategy()) {
        let c = Cone::from_i64(d, &g).unwrap();
        let dd = c.dual().dual();
        prop_assert!(dd.same_as(&c));
        prop_assert_eq!(dd.canonical_generators(), c.canonical_generators());
        for gen in c.generators() {
            prop_assert!(c.contains_z(gen));
        }
    }

    #[test]
    fn relint_points_avoid_facets((d, g) in cone_strategy(), v in small_vec(4)) {
        let c = Cone::from_i64(d, &g).unwrap();
        let v = qv(&v[..d]);
        if c.relative_interior_contains(&v) {
            prop_assert!(c.contains_q(&v));
            for f in c.facet_normals() {
                let on_facet = sphvar::geometry::lattice::dot_q(&sphvar::geometry::lattice::to_q(&f), &v) == qi(0);
                let facet_is_trivial = c.generators().iter().all(|x| sphvar::geometry::lattice::dot_z(&f, x) == BigInt::from(0));
                prop_assert!(!on_facet || facet_is_trivial);
            }
        }
    }

    #[test]
    fn witness_satisfies(d in 1usize..=3, rows in proptest::collection::vec((small_vec(3), 0u8..5), 0..6)) {
        let mut s = LinearSystem::new(d);
        for (a, r) in &rows {
            let rel = [Rel::Ge, Rel::Gt, Rel::Eq, Rel::Lt, Rel::Le][*r as usize];
            s.push_i64(&a[..d], rel);
        }
        if let Some(w) = feasible(&s) {
            prop_assert!(s.satisfied_by(&w));
        }
    }

    #[test]
    fn torsion_unimodular_invariance(a in -4i64..=4, b in -4i64..=4, c in 1i64..=6, e in 1i64..=6) {
        let d = LatticeMap::from_i64(&[vec![c, 0], vec![0, e]]).unwrap();
        let u = LatticeMap::from_i64(&[vec![1, a], vec![0, 1]]).unwrap();
        let v = LatticeMap::from_i64(&[vec![1, 0], vec![b, 1]]).unwrap();
        let m = u.compose(&d).unwrap().compose(&v).unwrap();
        prop_assert_eq!(m.torsion_order().unwrap(), d.torsion_order().unwrap());
    }
}

#[test]
fn hilbert_basis_of_quadrant_cone() {
    let c = cone(2, &[&[1, 0], &[1, 2]]);
    let hb = sphvar::geometry::hilbert_basis(&c, 3).unwrap();
    assert_eq!(hb, vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
    let _ = to_big(&[1]);
}
