//! Exact feasibility of homogeneous linear systems with strict
//! inequalities, by Fourier–Motzkin elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lattice::{dot_q, qi};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Rel {
    Ge,
    Gt,
    Eq,
    Lt,
    Le,
}

impl Rel {
    pub fn holds(self, v: &BigRational) -> bool {
        match self {
            Rel::Ge => !v.is_negative(),
            Rel::Gt => v.is_positive(),
            Rel::Eq => v.is_zero(),
            Rel::Lt => v.is_negative(),
            Rel::Le => !v.is_positive(),
        }
    }
}

/// Constraints `<normal, x> REL 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<(Vec<BigRational>, Rel)>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem { dim, constraints: vec![] }
    }

    pub fn push(&mut self, normal: Vec<BigRational>, rel: Rel) {
        assert_eq!(normal.len(), self.dim, "constraint dimension");
        self.constraints.push((normal, rel));
    }

    pub fn push_z(&mut self, normal: &[BigInt], rel: Rel) {
        self.push(normal.iter().map(|x| BigRational::from_integer(x.clone())).collect(), rel);
    }

    pub fn push_i64(&mut self, normal: &[i64], rel: Rel) {
        self.push(normal.iter().map(|&x| qi(x)).collect(), rel);
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        self.constraints.iter().all(|(a, r)| r.holds(&dot_q(a, x)))
    }
}

#[derive(Debug, Clone)]
struct Row {
    a: Vec<BigRational>,
    strict: bool,
    anc: Vec<u64>,
}

fn anc_union(x: &[u64], y: &[u64]) -> Vec<u64> {
    x.iter().zip(y).map(|(a, b)| a | b).collect()
}

fn anc_count(x: &[u64]) -> u32 {
    x.iter().map(|w| w.count_ones()).sum()
}

/// Scale so that the first nonzero coefficient has absolute value 1.
fn normalize(a: &mut [BigRational]) {
    if let Some(p) = a.iter().find(|x| !x.is_zero()).cloned() {
        let s = p.abs();
        for x in a.iter_mut() {
            *x = &*x / &s;
        }
    }
}

/// Drop tautologies and duplicates; `None` if a row reads `0 > 0`.
fn tidy(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut out: Vec<Row> = Vec::new();
    for mut r in rows {
        if r.a.iter().all(|x| x.is_zero()) {
            if r.strict {
                return None;
            }
            continue;
        }
        normalize(&mut r.a);
        if let Some(e) = out.iter_mut().find(|e| e.a == r.a) {
            if r.strict && !e.strict {
                *e = r;
            }
            continue;
        }
        out.push(r);
    }
    Some(out)
}

/// A witness satisfying every constraint, or `None` when the system has no
/// rational solution.
pub fn feasible(sys: &LinearSystem) -> Option<Vec<BigRational>> {
    let n = sys.dim;
    let words = sys.constraints.len() * 2 / 64 + 1;
    let mut rows = Vec::new();
    let mut k = 0usize;
    let mut fresh = |a: Vec<BigRational>, strict: bool| {
        let mut anc = vec![0u64; words];
        anc[k / 64] |= 1 << (k % 64);
        k += 1;
        Row { a, strict, anc }
    };
    for (a, rel) in &sys.constraints {
        let neg: Vec<BigRational> = a.iter().map(|x| -x).collect();
        match rel {
            Rel::Ge => rows.push(fresh(a.clone(), false)),
            Rel::Gt => rows.push(fresh(a.clone(), true)),
            Rel::Le => rows.push(fresh(neg, false)),
            Rel::Lt => rows.push(fresh(neg, true)),
            Rel::Eq => {
                rows.push(fresh(a.clone(), false));
                rows.push(fresh(neg, false));
            }
        }
    }
    let mut levels: Vec<Vec<Row>> = vec![tidy(rows)?];
    for var in 0..n {
        let cur = &levels[var];
        let (mut pos, mut neg, mut keep) = (vec![], vec![], vec![]);
        for r in cur {
            if r.a[var].is_positive() {
                pos.push(r);
            } else if r.a[var].is_negative() {
                neg.push(r);
            } else {
                keep.push(r.clone());
            }
        }
        let limit = var as u32 + 2;
        for p in &pos {
            for q in &neg {
                let anc = anc_union(&p.anc, &q.anc);
                if anc_count(&anc) > limit {
                    continue;
                }
                let cp = -q.a[var].clone();
                let cq = p.a[var].clone();
                let a: Vec<BigRational> = p.a.iter().zip(&q.a).map(|(x, y)| &cp * x + &cq * y).collect();
                keep.push(Row { a, strict: p.strict || q.strict, anc });
            }
        }
        let next = tidy(keep)?;
        levels.push(next);
    }
    // back substitution
    let mut x = vec![BigRational::zero(); n];
    for var in (0..n).rev() {
        let mut lo: Option<(BigRational, bool)> = None;
        let mut hi: Option<(BigRational, bool)> = None;
        for r in &levels[var] {
            let c = &r.a[var];
            if c.is_zero() {
                continue;
            }
            let rest: BigRational = (var + 1..n).fold(BigRational::zero(), |s, j| s + &r.a[j] * &x[j]);
            let b = -rest / c;
            if c.is_positive() {
                // x >= b
                lo = Some(match lo {
                    Some((v, s)) if v > b || (v == b && s) => (v, s),
                    Some((v, s)) if v == b => (v, s || r.strict),
                    _ => (b, r.strict),
                });
            } else {
                hi = Some(match hi {
                    Some((v, s)) if v < b || (v == b && s) => (v, s),
                    Some((v, s)) if v == b => (v, s || r.strict),
                    _ => (b, r.strict),
                });
            }
        }
        x[var] = choose(lo, hi);
    }
    if sys.satisfied_by(&x) {
        Some(x)
    } else {
        None
    }
}

fn ok_lo(v: &BigRational, lo: &Option<(BigRational, bool)>) -> bool {
    match lo {
        None => true,
        Some((b, s)) => v > b || (!s && v == b),
    }
}

fn ok_hi(v: &BigRational, hi: &Option<(BigRational, bool)>) -> bool {
    match hi {
        None => true,
        Some((b, s)) => v < b || (!s && v == b),
    }
}

/// Pick a value in the interval, preferring 0 and then small integers.
fn choose(lo: Option<(BigRational, bool)>, hi: Option<(BigRational, bool)>) -> BigRational {
    let zero = BigRational::zero();
    if ok_lo(&zero, &lo) && ok_hi(&zero, &hi) {
        return zero;
    }
    let mut cands = Vec::new();
    if let Some((b, _)) = &lo {
        cands.push(b.clone());
        cands.push(BigRational::from_integer(b.floor().to_integer() + BigInt::one()));
    }
    if let Some((b, _)) = &hi {
        cands.push(b.clone());
        cands.push(BigRational::from_integer(b.ceil().to_integer() - BigInt::one()));
    }
    for c in &cands {
        if ok_lo(c, &lo) && ok_hi(c, &hi) {
            return c.clone();
        }
    }
    match (lo, hi) {
        (Some((a, _)), Some((b, _))) => (a + b) / qi(2),
        (Some((a, _)), None) => a,
        (None, Some((b, _))) => b,
        (None, None) => zero,
    }
}

/// Integral primitive multiple of a witness of a homogeneous system.
pub fn integral_witness(x: &[BigRational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let w: Vec<BigInt> = x.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect();
    super::lattice::primitive(&w)
}
