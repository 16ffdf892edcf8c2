//! Linear growth certificates for `deg_q Phi^0` and the toric distance to
//! the boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::basic::BasicFunctionTable;
use crate::error::{input, Error, Result};
use crate::geometry::lattice::{kernel_z, nullspace_z, solve_columns, to_big, to_q};
use crate::geometry::{feasible, hilbert_basis, Cone, LinearSystem, Rel};
use crate::spherical::SphericalDatum;

/// Largest Hilbert-basis rank handled by [`toric_distance`].
pub const MAX_HILBERT_RANK: usize = 4;

/// `chi` with `deg_q Phi^0(lambda) <= <chi, lambda>` on every tabulated
/// stratum. `None` at finite height is inconclusive.
pub fn growth_certificate(t: &BasicFunctionTable) -> Option<Vec<BigRational>> {
    let r = t.rank;
    // twice the degree, as an integer
    let rows: Vec<(Vec<i64>, i64)> = t
        .nonzero()
        .map(|(l, v)| (l.clone(), v.terms().last().expect("nonzero").0))
        .collect();
    if rows.iter().all(|(_, h)| *h <= 0) {
        return Some(vec![BigRational::zero(); r]);
    }
    // variables (chi, t): 2 <chi, lambda> - hdeg t >= 0, t > 0
    let mut sys = LinearSystem::new(r + 1);
    let mut seen = std::collections::BTreeSet::new();
    for (l, h) in rows {
        let mut a: Vec<i64> = l.iter().map(|x| 2 * x).collect();
        a.push(-h);
        if seen.insert(a.clone()) {
            sys.push_i64(&a, Rel::Ge);
        }
    }
    let mut tpos = vec![0i64; r + 1];
    tpos[r] = 1;
    sys.push_i64(&tpos, Rel::Gt);
    let x = feasible(&sys)?;
    let tv = x[r].clone();
    Some(x[..r].iter().map(|c| c / &tv).collect())
}

/// `min_i <chi_i, lambda>` over the Hilbert basis of the dual of `C(X)`,
/// taken inside the saturated span of `C(X)`.
pub fn distance_exponent(d: &SphericalDatum, lambda: &[i64]) -> Result<i64> {
    let cc = d.colored_cone.as_ref().ok_or_else(|| Error::Input("toric distance needs a colored cone".into()))?;
    let r = d.rank();
    if lambda.len() != r {
        return input("stratum has wrong length");
    }
    if !cc.cone.contains_i64(lambda) || !d.valuation_cone.contains_i64(lambda) {
        return input(format!("{lambda:?} is not an integral stratum"));
    }
    let k = cc.cone.span_dim();
    if k == 0 {
        return Ok(0);
    }
    if !cc.cone.is_strictly_convex() {
        return input("colored cone is not strictly convex");
    }
    // basis of span(C) ∩ Z^r
    let gens = cc.cone.generators().to_vec();
    let perp = if gens.is_empty() { vec![] } else { nullspace_z(&gens.iter().map(|g| to_q(g)).collect::<Vec<_>>(), r) };
    let basis = kernel_z(&perp, r);
    let cols: Vec<Vec<BigRational>> = basis.iter().map(|b| to_q(b)).collect();
    let coords = |v: &[BigInt]| -> Result<Vec<i64>> {
        let c = solve_columns(&cols, &to_q(v)).ok_or_else(|| Error::Input("not in span".into()))?;
        c.iter().map(|x| x.to_integer().to_i64().ok_or_else(|| Error::Input("overflow".into()))).collect()
    };
    let local: Vec<Vec<i64>> = gens.iter().map(|g| coords(g)).collect::<Result<_>>()?;
    let dual = Cone::from_i64(k, &local)?.dual();
    let hb = hilbert_basis(&dual, MAX_HILBERT_RANK)?;
    let l = coords(&to_big(lambda))?;
    let m = hb.iter().map(|chi| chi.iter().zip(&l).map(|(a, b)| a * b).sum::<i64>()).min().unwrap_or(0);
    Ok(m)
}

/// `d(lambda) = q^{-m}` with `m` from [`distance_exponent`].
pub fn toric_distance(d: &SphericalDatum, lambda: &[i64], q: &BigRational) -> Result<BigRational> {
    if *q <= BigRational::one() {
        return input("q must exceed 1");
    }
    let m = distance_exponent(d, lambda)?;
    let mut v = BigRational::one();
    for _ in 0..m.abs() {
        v = if m > 0 { v / q } else { v * q };
    }
    Ok(v)
}

/// Smallest `n <= max_n` with `|Phi^0(lambda)|_{q} <= d(lambda)^{-n}` on
/// every nonzero stratum, comparing squares so that `q^{1/2}` never has to
/// be evaluated; `None` if no such `n`.
pub fn distance_bound_exponent(t: &BasicFunctionTable, d: &SphericalDatum, q: &BigRational, max_n: u32) -> Result<Option<u32>> {
    let mut data = vec![];
    for (l, v) in t.nonzero() {
        let m = distance_exponent(d, l)?;
        let sq = v * v;
        let val = match v.eval(q) {
            Some(x) => x.clone() * x,
            None => sq.eval(q).ok_or_else(|| Error::Input("value has odd powers of q^(1/2) after squaring".into()))?,
        };
        data.push((val, m));
    }
    'outer: for n in 0..=max_n {
        for (val, m) in &data {
            let mut bound = BigRational::one();
            for _ in 0..(2 * n as i64 * m).max(0) {
                bound *= q;
            }
            if (n as i64) * m < 0 || *val > bound {
                continue 'outer;
            }
        }
        return Ok(Some(n));
    }
    Ok(None)
}

