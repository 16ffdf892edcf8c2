//! Spherical Hecke operators of `GL_n` by explicit coset representatives.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use super::matrix::Mat;
use super::models::{orbit_invariant, LatticePoint, Space};
use super::series::TruncSeries;
use crate::error::{input, Result};
use crate::roots::Weight;

/// `1_{K t^mu K}` as the list of `g` with `K t^mu K = sqcup g K`.
#[derive(Debug, Clone)]
pub struct HeckeOp {
    pub n: usize,
    pub mu: Weight,
    pub reps: Vec<Mat>,
}

fn compositions(total: i64, parts: usize, cap: i64) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for first in 0..=total.min(cap) {
        for mut rest in compositions(total - first, parts - 1, cap) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Upper-triangular representatives `diag(t^{d_i})` plus entries of row `i`
/// reduced modulo `t^{d_i}`, filtered by elementary divisors.
pub fn coset_reps(p: u64, mu: &[i64], rel: usize) -> Result<HeckeOp> {
    let n = mu.len();
    if n == 0 || mu.windows(2).any(|w| w[0] < w[1]) {
        return input(format!("{mu:?} is not a dominant coweight of GL_n"));
    }
    let shift = mu[n - 1];
    let nu: Vec<i64> = mu.iter().map(|x| x - shift).collect();
    let mut target = nu.clone();
    target.reverse();
    let total: i64 = nu.iter().sum();
    let prec = nu[0] + rel as i64;
    let mut reps = vec![];
    for d in compositions(total, n, nu[0]) {
        // free entries: (row i, column j > i) with d_i coefficients each
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let sizes: Vec<u32> = slots.iter().map(|&(i, _)| d[i] as u32).collect();
        let count: u64 = sizes.iter().map(|&s| p.pow(s)).product();
        for mut code in 0..count {
            let mut e = vec![TruncSeries::zero(p, prec); n * n];
            for i in 0..n {
                e[i * n + i] = TruncSeries::monomial(p, 1, d[i], rel);
            }
            for (k, &(i, j)) in slots.iter().enumerate() {
                let mut coeffs = vec![];
                for _ in 0..sizes[k] {
                    coeffs.push((code % p) as i64);
                    code /= p;
                }
                e[i * n + j] = TruncSeries::poly(p, &coeffs, prec);
            }
            let g = Mat::from_entries(n, n, e);
            if g.elementary_divisors()? == target {
                reps.push(scalar(&g, shift, rel)?);
            }
        }
    }
    Ok(HeckeOp { n, mu: mu.to_vec(), reps })
}

fn scalar(g: &Mat, s: i64, rel: usize) -> Result<Mat> {
    if s == 0 {
        return Ok(g.clone());
    }
    Mat::diag_powers(g.p(), &vec![s; g.rows], rel).mul(g)
}

/// `(h * f)(x) = sum_i f(x g_i)` at a point of the given stratum, optionally
/// moved by a random element of `K` first.
pub fn hecke_convolve<R: Rng>(
    space: Space,
    op: &HeckeOp,
    f: &dyn Fn(&[i64]) -> BigRational,
    label: &[i64],
    rel: usize,
    rng: Option<&mut R>,
) -> Result<BigRational> {
    if space.n() != op.n || space == Space::Mat2 {
        return input(format!("operator on GL_{} does not act on {}", op.n, space.name()));
    }
    let p = op.reps.first().map(|g| g.p()).unwrap_or(2);
    let mut x: LatticePoint = space.representative(p, label, rel)?;
    if let Some(r) = rng {
        x = x.random_translate(rel as i64, r)?;
    }
    let mut acc = BigRational::zero();
    for g in &op.reps {
        acc += f(&orbit_invariant(&x.act(g)?)?);
    }
    Ok(acc)
}
