//! Spherical Hecke algebra of a split group through the Satake transform,
//! with the normalization `Sat(1_lambda) = q^{<rho, lambda>} P_lambda(q^{-1})`.
//!
//! Coweights of `G` are weights of the dual group; the q-analogue of weight
//! multiplicity gives the inverse transform
//! `Sat^{-1}(chi_mu) = sum_{lambda <= mu} q^{-<rho, lambda>} m^lambda_mu(q^{-1}) 1_lambda`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::Result;
use crate::roots::chars::{decompose_q, dominant_weights_below, irrep_char, QChar};
use crate::roots::{dot, partition_counts, RootDatum, Weight};
use crate::QLaurent;

/// Finitely supported bi-`K`-invariant function: dominant coweight -> coefficient.
pub type HeckeElement = BTreeMap<Weight, QLaurent>;

/// `sum_i K_i(nu) q^i` over the positive roots of `d`.
fn q_partition(d: &RootDatum, nu: &[i64]) -> QLaurent {
    let Some(c) = d.nonneg_root_coeffs(nu) else { return QLaurent::zero() };
    let mut v = QLaurent::zero();
    for (i, k) in partition_counts(&d.root_coeffs, &c).iter().enumerate() {
        v += &QLaurent::monomial(k.clone(), 2 * i as i64);
    }
    v
}

/// Lusztig's q-analogue `m^lambda_mu(q)` for the dual datum `d`.
pub fn q_weight_multiplicity(d: &RootDatum, mu: &[i64], lambda: &[i64]) -> QLaurent {
    let two_rho = d.two_rho();
    let mut total = QLaurent::zero();
    for (w, s) in d.weyl_group() {
        let lr: Weight = mu.iter().zip(&two_rho).map(|(a, r)| 2 * a + r).collect();
        let wl: Weight = (0..d.n).map(|i| (0..d.n).map(|k| w[i][k] * lr[k]).sum()).collect();
        let diff: Weight = (0..d.n).map(|i| wl[i] - 2 * lambda[i] - two_rho[i]).collect();
        if diff.iter().any(|x| x % 2 != 0) {
            continue;
        }
        let half: Weight = diff.iter().map(|x| x / 2).collect();
        total += &q_partition(d, &half).scale(&BigInt::from(*s));
    }
    total
}

/// `q^{<rho, lambda>}`.
fn rho_power(g: &RootDatum, lambda: &[i64], sign: i64) -> QLaurent {
    QLaurent::q_half(sign * dot(&g.two_rho(), lambda))
}

/// `Sat^{-1}(chi_mu)` for a dominant coweight `mu` of `g`.
pub fn satake_inverse_irrep(g: &RootDatum, mu: &[i64]) -> HeckeElement {
    let d = g.dual();
    let mut out = HeckeElement::new();
    for lam in dominant_weights_below(&d, mu) {
        let m = q_weight_multiplicity(&d, mu, &lam).invert_q();
        if m.is_zero() {
            continue;
        }
        let c = &rho_power(g, &lam, -1) * &m;
        out.insert(lam, c);
    }
    out
}

fn add_into(acc: &mut HeckeElement, h: &HeckeElement, c: &QLaurent) {
    for (k, v) in h {
        let e = acc.entry(k.clone()).or_insert_with(QLaurent::zero);
        *e += &(v * c);
    }
    acc.retain(|_, v| !v.is_zero());
}

/// `Sat^{-1}` of a `W`-invariant character of the dual group.
pub fn satake_inverse(g: &RootDatum, chi: &QChar) -> Result<HeckeElement> {
    let mut out = HeckeElement::new();
    for (mu, c) in decompose_q(&g.dual(), chi)? {
        add_into(&mut out, &satake_inverse_irrep(g, &mu), &c);
    }
    Ok(out)
}

/// `Sat(1_lambda)` by inverting the unitriangular inverse transform.
pub fn satake_basis(g: &RootDatum, lambda: &[i64]) -> Result<QChar> {
    let d = g.dual();
    let inv = satake_inverse_irrep(g, lambda);
    let mut rest = irrep_char(&d, lambda)?.to_q();
    for (nu, c) in &inv {
        if nu.as_slice() == lambda {
            continue;
        }
        rest = rest.sub(&satake_basis(g, nu)?.scale(c));
    }
    Ok(rest.scale(&rho_power(g, lambda, 1)))
}

pub fn satake(g: &RootDatum, h: &HeckeElement) -> Result<QChar> {
    let mut out = QChar::zero(g.n);
    for (lam, c) in h {
        out = out.add(&satake_basis(g, lam)?.scale(c));
    }
    Ok(out)
}

/// Action of a dual-torus character on functions of `T(F)/T(o)`-strata:
/// `e^mu` sends `f` to `lambda -> q^{<rho, mu>} f(lambda + mu)`.
pub fn torus_action(g: &RootDatum, chi: &QChar, f: &dyn Fn(&[i64]) -> QLaurent, lambda: &[i64]) -> QLaurent {
    let mut v = QLaurent::zero();
    for (mu, c) in chi.terms() {
        let shifted: Weight = lambda.iter().zip(mu).map(|(a, b)| a + b).collect();
        v += &(&(c * &rho_power(g, mu, 1)) * &f(&shifted));
    }
    v
}

/// `h * f` on `U\G` strata through `Sat(h)` and the torus action.
pub fn hecke_on_strata(g: &RootDatum, h: &HeckeElement, f: &dyn Fn(&[i64]) -> QLaurent, lambda: &[i64]) -> Result<QLaurent> {
    Ok(torus_action(g, &satake(g, h)?, f, lambda))
}

/// Degree-`k` coefficient of `Sat^{-1}(sum_k q^{k(n-1)/2} h_k T^k)` at the
/// `K`-double coset `lambda` of `GL_n`, i.e. of `1_{Mat_n(o)} |det|^s` with
/// `T = q^{-s}`.
pub fn godement_jacquet_coefficient(n: usize, k: u32, lambda: &[i64]) -> Result<QLaurent> {
    let g = RootDatum::factor("GL", n)?;
    let mut top = vec![0i64; n];
    top[0] = k as i64;
    let h = satake_inverse_irrep(&g, &top);
    let twist = QLaurent::q_half(k as i64 * (n as i64 - 1));
    Ok(h.get(lambda).map_or_else(QLaurent::zero, |c| c * &twist))
}
