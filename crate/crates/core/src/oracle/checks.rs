//! Oracle-versus-engine comparisons at concrete small `q`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hecke::{coset_reps, hecke_convolve, HeckeOp};
use super::models::{orbit_invariant, precision_for, Space};
use super::series::check_prime;
use crate::catalog;
use crate::error::{input, Error, Result};
use crate::geometry::lattice::solve_columns;
use crate::roots::{RootDatum, Weight};
use crate::unramified::{godement_jacquet_coefficient, hecke_on_strata, table, HeckeElement, RatLaurent};
use crate::QLaurent;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub label: Weight,
    pub oracle: BigRational,
    pub engine: BigRational,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub q: u64,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.checked > 0
    }

    /// Mismatches as TSV: label, oracle value, engine value.
    pub fn mismatch_tsv(&self) -> String {
        let mut s = String::from("label\toracle\tengine\n");
        for m in &self.mismatches {
            let l: Vec<String> = m.label.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}\t{}\t{}", l.join(","), m.oracle, m.engine);
        }
        s
    }
}

fn qr(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn at(v: &QLaurent, q: u64) -> Result<BigRational> {
    v.eval(&qr(q as i64)).ok_or_else(|| Error::Input(format!("{v} has half-integral powers at q = {q}")))
}

/// Lattice points of `Z^r` with l1-norm at most `h`.
pub fn box_labels(r: usize, h: i64) -> Vec<Weight> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for rest in box_labels(r - 1, h) {
        let used: i64 = rest.iter().map(|x| x.abs()).sum();
        for x in -(h - used)..=(h - used) {
            let mut v = vec![x];
            v.extend(&rest);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Fit `sum_{e=lo}^{hi} c_e q^e` through `(q, value)` samples; the first
/// `hi - lo + 1` samples determine it and the rest must agree.
pub fn interpolate(samples: &[(i64, BigRational)], lo: i64, hi: i64) -> Option<RatLaurent> {
    let k = (hi - lo + 1) as usize;
    if hi < lo || samples.len() < k {
        return None;
    }
    let pow = |q: i64, e: i64| -> BigRational {
        let b = qr(q);
        let mut r = qr(1);
        for _ in 0..e.abs() {
            r = if e > 0 { r * &b } else { r / &b };
        }
        r
    };
    let cols: Vec<Vec<BigRational>> = (lo..=hi).map(|e| samples[..k].iter().map(|(q, _)| pow(*q, e)).collect()).collect();
    let rhs: Vec<BigRational> = samples[..k].iter().map(|(_, v)| v.clone()).collect();
    let c = solve_columns(&cols, &rhs)?;
    for (q, v) in &samples[k..] {
        let val: BigRational = (lo..=hi).zip(&c).map(|(e, ce)| ce * pow(*q, e)).fold(BigRational::zero(), |a, b| a + b);
        if &val != v {
            return None;
        }
    }
    let mut out = RatLaurent::zero();
    for (e, ce) in (lo..=hi).zip(c) {
        out = out.add(&RatLaurent::monomial(ce, 2 * e));
    }
    Some(out)
}

/// Small integer test function on labels of l1-norm at most `h`.
fn test_function(r: usize, h: i64, seed: u64) -> BTreeMap<Weight, i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    box_labels(r, h).into_iter().map(|l| (l, rng.gen_range(-3..=3))).collect()
}

/// Hecke operator of `GL_n` at a prime `q`.
pub fn operator(q: u64, mu: &[i64], rel: usize) -> Result<HeckeOp> {
    check_prime(q)?;
    coset_reps(q, mu, rel)
}

/// `1_{K t^mu K} * f` on `U\GL_2` by coset sums at random translates of
/// each stratum, against the torus-side action of `Sat(1_{K t^mu K})`.
pub fn satake_compatibility_check(mu: &[i64], q: u64, height: u32, seed: u64) -> Result<CheckReport> {
    if mu.len() != 2 {
        return input("the U\\GL2 check takes a GL2 coweight");
    }
    let reach: i64 = mu.iter().map(|x| x.abs()).sum();
    let h = height as i64;
    let rel = precision_for(height + reach as u32);
    let op = operator(q, mu, rel)?;
    let g = RootDatum::factor("GL", 2)?;
    let fvals = test_function(2, h + reach, seed);
    let f = |l: &[i64]| qr(*fvals.get(l).unwrap_or(&0));
    let fq = |l: &[i64]| QLaurent::constant(*fvals.get(l).unwrap_or(&0));
    let hecke: HeckeElement = [(mu.to_vec(), QLaurent::one())].into();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a7a_6b3e);
    let mut mismatches = vec![];
    let labels = box_labels(2, h);
    for l in &labels {
        let oracle = hecke_convolve(Space::UGl2, &op, &f, l, rel, Some(&mut rng))?;
        let engine = at(&hecke_on_strata(&g, &hecke, &fq, l)?, q)?;
        if oracle != engine {
            mismatches.push(Mismatch { label: l.clone(), oracle, engine });
        }
    }
    Ok(CheckReport { name: format!("satake-gl2 mu={mu:?}"), q, checked: labels.len(), mismatches })
}

/// Values of the indicator of the integral points of `A^3 x G_m` on the
/// strata `(A, c)` of `[P,P]\GL_3`, each checked on `samples` random
/// translates of a representative.
pub fn pp_gl3_oracle(q: u64, height: u32, samples: usize, seed: u64) -> Result<BTreeMap<Weight, i64>> {
    check_prime(q)?;
    let rel = precision_for(height);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeMap::new();
    for l in box_labels(2, height as i64) {
        let base = Space::PpGl3.representative(q, &l, rel)?;
        let mut value = None;
        for _ in 0..samples.max(1) {
            let x = base.random_translate(rel as i64, &mut rng)?;
            if orbit_invariant(&x)? != l {
                return Err(Error::Precision(format!("label of a translate of {l:?} moved")));
            }
            let v = x.is_integral()? as i64;
            if value.is_some_and(|w| w != v) {
                return Err(Error::Precision(format!("integrality not constant on the orbit of {l:?}")));
            }
            value = Some(v);
        }
        out.insert(l, value.expect("sampled"));
    }
    Ok(out)
}

/// The `PP` formula for the `(2,1)` fixture with sign `kappa` against
/// [`pp_gl3_oracle`].
pub fn pp_gl3_check(kappa: i32, q: u64, height: u32, samples: usize, seed: u64) -> Result<CheckReport> {
    let doc = catalog::load("pp-gl3-21")?.document;
    let t = table(&doc, None, height, kappa)?;
    let oracle = pp_gl3_oracle(q, height, samples, seed)?;
    let mut mismatches = vec![];
    for (l, o) in &oracle {
        let engine = match t.get(l) {
            Some(v) => at(v, q)?,
            None => return input(format!("engine table misses {l:?}")),
        };
        if engine != qr(*o) {
            mismatches.push(Mismatch { label: l.clone(), oracle: qr(*o), engine });
        }
    }
    Ok(CheckReport { name: format!("pp-gl3 kappa={kappa}"), q, checked: oracle.len(), mismatches })
}

/// Coefficient of `T^k` in `1_{Mat_2(o)}(x) |det x|^s`, `T = q^{-s}`, on
/// the `K x K` orbit with dominant label `(a, b)`, from random translates.
pub fn gj_oracle(q: u64, height: u32, degree: u32, samples: usize, seed: u64) -> Result<BTreeMap<(Weight, u32), i64>> {
    check_prime(q)?;
    let rel = precision_for(height);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeMap::new();
    for l in box_labels(2, height as i64).into_iter().filter(|l| l[0] >= l[1]) {
        let asc = vec![l[1], l[0]];
        let base = Space::Mat2.representative(q, &asc, rel)?;
        let mut seen = None;
        for _ in 0..samples.max(1) {
            let x = base.random_translate(rel as i64, &mut rng)?;
            if orbit_invariant(&x)? != asc {
                return Err(Error::Precision(format!("label of a translate of {l:?} moved")));
            }
            let d = x.x.det()?.valuation().ok_or_else(|| Error::Precision("det vanishes".into()))?;
            let v = (x.is_integral()?, d);
            if seen.is_some_and(|w| w != v) {
                return Err(Error::Precision(format!("invariants not constant on the orbit of {l:?}")));
            }
            seen = Some(v);
        }
        let (integral, d) = seen.expect("sampled");
        for k in 0..=degree {
            out.insert((l.clone(), k), (integral && d == k as i64) as i64);
        }
    }
    Ok(out)
}

pub fn gj_check(q: u64, height: u32, degree: u32, samples: usize, seed: u64) -> Result<CheckReport> {
    let oracle = gj_oracle(q, height, degree, samples, seed)?;
    let mut mismatches = vec![];
    for ((l, k), o) in &oracle {
        let engine = at(&godement_jacquet_coefficient(2, *k, l)?, q)?;
        if engine != qr(*o) {
            let mut label = l.clone();
            label.push(*k as i64);
            mismatches.push(Mismatch { label, oracle: qr(*o), engine });
        }
    }
    Ok(CheckReport { name: "godement-jacquet n=2".into(), q, checked: oracle.len(), mismatches })
}

/// `T_1 (T_1 f) = T_{(2,0)} f + (q+1) Z f` and `T_1 (Z f) = Z (T_1 f)` on
/// `U\GL_2`, all by coset sums.
pub fn hecke_relation_check(q: u64, height: u32, seed: u64) -> Result<CheckReport> {
    let h = height as i64;
    let rel = precision_for(height + 4);
    let t1 = operator(q, &[1, 0], rel)?;
    let t2 = operator(q, &[2, 0], rel)?;
    let z = operator(q, &[1, 1], rel)?;
    let fvals = test_function(2, h + 4, seed);
    let f = |l: &[i64]| qr(*fvals.get(l).unwrap_or(&0));
    let apply = |op: &HeckeOp, g: &dyn Fn(&[i64]) -> BigRational, l: &[i64]| {
        hecke_convolve(Space::UGl2, op, g, l, rel, None::<&mut ChaCha8Rng>)
    };
    let mut mismatches = vec![];
    let labels = box_labels(2, h);
    for l in &labels {
        let t1f = |m: &[i64]| apply(&t1, &f, m).expect("convolution");
        let zf = |m: &[i64]| apply(&z, &f, m).expect("convolution");
        let lhs = apply(&t1, &t1f, l)?;
        let rhs = apply(&t2, &f, l)? + qr(q as i64 + 1) * apply(&z, &f, l)?;
        if lhs != rhs {
            mismatches.push(Mismatch { label: l.clone(), oracle: lhs, engine: rhs });
        }
        let a = apply(&t1, &zf, l)?;
        let b = apply(&z, &t1f, l)?;
        if a != b {
            mismatches.push(Mismatch { label: l.clone(), oracle: a, engine: b });
        }
    }
    Ok(CheckReport { name: "hecke-relations gl2".into(), q, checked: labels.len(), mismatches })
}

/// Labels are constant on `samples` random translates of each
/// representative, for every space.
pub fn orbit_invariance_check(q: u64, height: u32, samples: usize, seed: u64) -> Result<CheckReport> {
    check_prime(q)?;
    let rel = precision_for(height);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut mismatches = vec![];
    for space in Space::ALL {
        for l in box_labels(space.label_len(), height as i64).into_iter().filter(|l| space.is_label(l)) {
            let base = space.representative(q, &l, rel)?;
            for _ in 0..samples {
                let got = orbit_invariant(&base.random_translate(rel as i64, &mut rng)?)?;
                checked += 1;
                if got != l {
                    let enc = |w: &[i64]| qr(w.iter().fold(0, |a, x| a * 1000 + x));
                    mismatches.push(Mismatch { label: l.clone(), oracle: enc(&got), engine: enc(&l) });
                }
            }
        }
    }
    Ok(CheckReport { name: "orbit-invariance".into(), q, checked, mismatches })
}

/// Coset sums of `op` applied to the indicator of `source`, at the
/// representative of each label, for several `q`, then fitted in `q^lo..q^hi`.
pub fn interpolated_convolution(
    space: Space,
    mu: &[i64],
    source: &[i64],
    labels: &[Weight],
    qs: &[u64],
    lo: i64,
    hi: i64,
) -> Result<BTreeMap<Weight, Option<RatLaurent>>> {
    let reach: i64 = mu.iter().map(|x| x.abs()).sum::<i64>() + source.iter().map(|x| x.abs()).sum::<i64>();
    let rel = precision_for(reach as u32 + labels.iter().flatten().map(|x| x.unsigned_abs() as u32).max().unwrap_or(0));
    let f = |l: &[i64]| qr((l == source) as i64);
    let mut per_label: BTreeMap<Weight, Vec<(i64, BigRational)>> = BTreeMap::new();
    for &q in qs {
        let op = operator(q, mu, rel)?;
        for l in labels {
            let v = hecke_convolve(space, &op, &f, l, rel, None::<&mut ChaCha8Rng>)?;
            per_label.entry(l.clone()).or_default().push((q as i64, v));
        }
    }
    Ok(per_label.into_iter().map(|(l, s)| (l, interpolate(&s, lo, hi))).collect())
}

pub const CHECK_NAMES: [&str; 6] = ["satake-gl2", "pp-gl3", "godement-jacquet", "hecke-relations", "orbit-invariance", "kappa"];

/// Runs a named check at each `q`.
pub fn run_named(name: &str, qs: &[u64], height: u32) -> Result<Vec<CheckReport>> {
    let seed = 20_240_601;
    let mut out = vec![];
    for &q in qs {
        match name {
            "satake-gl2" => {
                for mu in [[0, 0], [1, 0], [1, 1], [0, -1], [2, 0]] {
                    out.push(satake_compatibility_check(&mu, q, height, seed)?);
                }
            }
            "pp-gl3" => out.push(pp_gl3_check(crate::config::KAPPA, q, height, 3, seed)?),
            "godement-jacquet" => out.push(gj_check(q, height, 4, 3, seed)?),
            "hecke-relations" => out.push(hecke_relation_check(q, height, seed)?),
            "orbit-invariance" => out.push(orbit_invariance_check(q, height.min(3), 5, seed)?),
            "kappa" => {
                for kappa in [1, -1] {
                    out.push(pp_gl3_check(kappa, q, height, 2, seed)?);
                }
            }
            other => return input(format!("unknown oracle check {other}; known: {}", CHECK_NAMES.join(", "))),
        }
    }
    Ok(out)
}

/// Integer value of a rational, for reports.
pub fn as_int(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}
