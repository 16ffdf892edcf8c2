//! Rational polyhedral cones stored by integral generators; duals by
//! double description.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::lattice::{
    clear_denominators, dot_q, dot_z, hnf_rows, nullspace_z, primitive, rank_q, to_big, to_q,
};
use crate::error::{input, Error, Result};

/// Generators of `{y : <a, y> >= 0 for all a in constraints}`:
/// a lineality basis and a minimal set of extreme rays modulo lineality.
pub fn double_description(constraints: &[Vec<BigInt>], n: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lin: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    // tight[r] = indices of processed constraints vanishing on rays[r]
    let mut tight: Vec<Vec<usize>> = Vec::new();
    let mut processed: Vec<Vec<BigInt>> = Vec::new();
    for a in constraints {
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        let idx = processed.len();
        if let Some(p) = lin.iter().position(|l| !dot_z(a, l).is_zero()) {
            let mut l0 = lin.remove(p);
            if dot_z(a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let al0 = dot_z(a, &l0);
            let comb = |v: &Vec<BigInt>| -> Vec<BigInt> {
                let av = dot_z(a, v);
                primitive(&v.iter().zip(&l0).map(|(x, y)| &al0 * x - &av * y).collect::<Vec<_>>())
            };
            lin = lin.iter().map(comb).collect();
            rays = rays.iter().map(comb).collect();
            for t in tight.iter_mut() {
                t.push(idx);
            }
            // l0 is tight at every earlier constraint (it was lineality)
            rays.push(l0);
            tight.push((0..idx).collect());
        } else {
            let vals: Vec<BigInt> = rays.iter().map(|r| dot_z(a, r)).collect();
            let mut new_rays = Vec::new();
            let mut new_tight = Vec::new();
            for (i, r) in rays.iter().enumerate() {
                if !vals[i].is_negative() {
                    let mut t = tight[i].clone();
                    if vals[i].is_zero() {
                        t.push(idx);
                    }
                    new_rays.push(r.clone());
                    new_tight.push(t);
                }
            }
            for i in 0..rays.len() {
                if !vals[i].is_positive() {
                    continue;
                }
                for j in 0..rays.len() {
                    if !vals[j].is_negative() {
                        continue;
                    }
                    let common: Vec<usize> = tight[i].iter().filter(|x| tight[j].contains(x)).cloned().collect();
                    let blocked = (0..rays.len()).any(|k| {
                        k != i && k != j && common.iter().all(|c| tight[k].contains(c))
                    });
                    if blocked {
                        continue;
                    }
                    let v: Vec<BigInt> = rays[j]
                        .iter()
                        .zip(&rays[i])
                        .map(|(nj, pi)| &vals[i] * nj - &vals[j] * pi)
                        .collect();
                    let v = primitive(&v);
                    if v.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let mut t = common;
                    t.push(idx);
                    new_rays.push(v);
                    new_tight.push(t);
                }
            }
            rays = new_rays;
            tight = new_tight;
        }
        processed.push(a.clone());
    }
    (lin, rays)
}

#[derive(Debug, Clone)]
struct DualData {
    lin: Vec<Vec<BigInt>>,
    rays: Vec<Vec<BigInt>>,
}

/// A rational polyhedral cone `cone(generators)` in Q^dim.
#[derive(Debug, Clone)]
pub struct Cone {
    dim: usize,
    gens: Vec<Vec<BigInt>>,
    dual: OnceLock<DualData>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Cone {
    /// Generators are made primitive, zeros dropped, duplicates removed,
    /// order lexicographic.
    pub fn new(dim: usize, gens: Vec<Vec<BigInt>>) -> Result<Cone> {
        if gens.iter().any(|g| g.len() != dim) {
            return input("cone generators have mismatched dimension");
        }
        let mut g: Vec<Vec<BigInt>> = gens
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .map(|v| primitive(&v))
            .collect();
        g.sort();
        g.dedup();
        Ok(Cone { dim, gens: g, dual: OnceLock::new() })
    }

    pub fn from_i64(dim: usize, gens: &[Vec<i64>]) -> Result<Cone> {
        Cone::new(dim, gens.iter().map(|g| to_big(g)).collect())
    }

    pub fn from_rational(dim: usize, gens: &[Vec<BigRational>]) -> Result<Cone> {
        Cone::new(dim, gens.iter().map(|g| clear_denominators(g)).collect())
    }

    pub fn zero(dim: usize) -> Cone {
        Cone { dim, gens: vec![], dual: OnceLock::new() }
    }

    /// All of Q^dim.
    pub fn full(dim: usize) -> Cone {
        let mut g = Vec::new();
        for i in 0..dim {
            for s in [1i64, -1] {
                let mut v = vec![0i64; dim];
                v[i] = s;
                g.push(to_big(&v));
            }
        }
        Cone::new(dim, g).expect("consistent dimension")
    }

    /// The linear span of `basis` as a cone.
    pub fn span(dim: usize, basis: &[Vec<BigInt>]) -> Result<Cone> {
        let mut g = basis.to_vec();
        g.extend(basis.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        Cone::new(dim, g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.gens
    }

    pub fn generators_i64(&self) -> Vec<Vec<i64>> {
        self.gens.iter().map(|g| g.iter().map(|x| x.to_i64().expect("small generator")).collect()).collect()
    }

    fn dual_data(&self) -> &DualData {
        self.dual.get_or_init(|| {
            let (lin, rays) = double_description(&self.gens, self.dim);
            DualData { lin, rays }
        })
    }

    /// `{y : <y, x> >= 0 for all x in self}`.
    pub fn dual(&self) -> Cone {
        let d = self.dual_data();
        let mut g = d.rays.clone();
        for l in &d.lin {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        Cone::new(self.dim, g).expect("consistent dimension")
    }

    /// Facet normals: extreme rays of the dual modulo its lineality.
    pub fn facet_normals(&self) -> Vec<Vec<BigInt>> {
        self.dual_data().rays.clone()
    }

    /// Linear forms vanishing on the cone (basis of its orthogonal).
    pub fn orthogonal_basis(&self) -> Vec<Vec<BigInt>> {
        self.dual_data().lin.clone()
    }

    pub fn contains_q(&self, v: &[BigRational]) -> bool {
        let d = self.dual_data();
        d.rays.iter().all(|y| !dot_q(&to_q(y), v).is_negative())
            && d.lin.iter().all(|y| dot_q(&to_q(y), v).is_zero())
    }

    pub fn contains_z(&self, v: &[BigInt]) -> bool {
        let d = self.dual_data();
        d.rays.iter().all(|y| !dot_z(y, v).is_negative()) && d.lin.iter().all(|y| dot_z(y, v).is_zero())
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        self.contains_z(&to_big(v))
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.gens.iter().all(|g| self.contains_z(g))
    }

    /// Equality as point sets.
    pub fn same_as(&self, other: &Cone) -> bool {
        self.dim == other.dim && self.contains_cone(other) && other.contains_cone(self)
    }

    /// Basis of the lineality space `C ∩ -C`.
    pub fn lineality_basis(&self) -> Vec<Vec<BigInt>> {
        let dual = self.dual();
        let rows: Vec<Vec<BigRational>> = dual.gens.iter().map(|g| to_q(g)).collect();
        if rows.is_empty() {
            return (0..self.dim)
                .map(|i| (0..self.dim).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect();
        }
        hnf_rows(&nullspace_z(&rows, self.dim), self.dim)
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lineality_basis().is_empty()
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        let rows: Vec<Vec<BigRational>> = self.gens.iter().map(|g| to_q(g)).collect();
        rank_q(&rows, self.dim)
    }

    /// True iff `v` lies in the cone and on no proper face.
    pub fn relative_interior_contains(&self, v: &[BigRational]) -> bool {
        if !self.contains_q(v) {
            return false;
        }
        let d = self.dual_data();
        d.rays.iter().all(|y| {
            !dot_q(&to_q(y), v).is_zero() || self.gens.iter().all(|g| dot_z(y, g).is_zero())
        })
    }

    /// Sum of the generators: a point of the relative interior.
    pub fn interior_point(&self) -> Vec<BigInt> {
        let mut s = vec![BigInt::zero(); self.dim];
        for g in &self.gens {
            for (a, b) in s.iter_mut().zip(g) {
                *a += b;
            }
        }
        s
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.dim != other.dim {
            return input("cone intersection: dimension mismatch");
        }
        let mut g = self.dual().gens;
        g.extend(other.dual().gens);
        Ok(Cone::new(self.dim, g)?.dual())
    }

    /// Cone generated by both generator sets.
    pub fn join(&self, other: &Cone) -> Result<Cone> {
        if self.dim != other.dim {
            return input("cone join: dimension mismatch");
        }
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Cone::new(self.dim, g)
    }

    /// Minimal generators in canonical form: lineality basis in Hermite form
    /// (both signs), then extreme rays projected orthogonally to the
    /// lineality space.
    pub fn canonical_generators(&self) -> Vec<Vec<BigInt>> {
        let lin = self.lineality_basis();
        let (_, rays) = double_description(&self.dual().gens, self.dim);
        let linq: Vec<Vec<BigRational>> = lin.iter().map(|l| to_q(l)).collect();
        // orthogonal projection away from span(lin)
        let ortho = if linq.is_empty() { vec![] } else { gram_schmidt(&linq) };
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        for r in &rays {
            let mut v = to_q(r);
            for e in &ortho {
                let c = dot_q(&v, e) / dot_q(e, e);
                for (a, b) in v.iter_mut().zip(e) {
                    *a -= &c * b;
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                out.push(clear_denominators(&v));
            }
        }
        for l in &lin {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out.sort();
        out.dedup();
        out
    }

    /// Integer points with l1-norm at most `height`, lexicographically sorted.
    pub fn lattice_points(&self, height: u32) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.dim];
        self.enum_rec(0, height as i64, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enum_rec(&self, k: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == self.dim {
            if self.contains_i64(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for x in -budget..=budget {
            cur[k] = x;
            self.enum_rec(k + 1, budget - x.abs(), cur, out);
        }
        cur[k] = 0;
    }

    /// Image under the linear map with the given rows.
    pub fn image(&self, rows: &[Vec<BigInt>]) -> Result<Cone> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != self.dim) {
            return input("cone image: dimension mismatch");
        }
        let g = self.gens.iter().map(|g| rows.iter().map(|r| dot_z(r, g)).collect()).collect();
        Cone::new(m, g)
    }
}

fn gram_schmidt(vs: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for e in &out {
            let c = dot_q(&w, e) / dot_q(e, e);
            for (a, b) in w.iter_mut().zip(e) {
                *a -= &c * b;
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            out.push(w);
        }
    }
    out
}

/// Hilbert basis of the monoid `C ∩ Z^n` for a strictly convex cone of
/// dimension at most `max_rank`.
pub fn hilbert_basis(c: &Cone, max_rank: usize) -> Result<Vec<Vec<i64>>> {
    if c.dim() > max_rank {
        return Err(Error::UnsupportedRank(c.dim()));
    }
    if !c.is_strictly_convex() {
        return input("Hilbert basis requested for a cone with lineality");
    }
    let (_, rays) = double_description(&c.dual().gens, c.dim());
    let bound: i64 = rays
        .iter()
        .map(|r| r.iter().map(|x| x.abs().to_i64().expect("small ray")).sum::<i64>())
        .sum();
    let pts: Vec<Vec<i64>> = c
        .lattice_points(bound.max(0) as u32)
        .into_iter()
        .filter(|p| p.iter().any(|&x| x != 0))
        .collect();
    let mut basis = Vec::new();
    for v in &pts {
        let reducible = pts.iter().any(|u| {
            u != v && {
                let w: Vec<i64> = v.iter().zip(u).map(|(a, b)| a - b).collect();
                w.iter().any(|&x| x != 0) && c.contains_i64(&w)
            }
        });
        if !reducible {
            basis.push(v.clone());
        }
    }
    Ok(basis)
}
