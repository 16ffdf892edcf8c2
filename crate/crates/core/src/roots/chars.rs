//! Finitely supported characters on a weight lattice, Freudenthal
//! multiplicities, Adams operations and Newton identities.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{dot, RootDatum, Weight};
use crate::error::{input, Error, Result};
use crate::geometry::lattice::{qi, to_q64};
use crate::qlaurent::QLaurent;

/// Coefficient rings for characters.
pub trait Coef: Clone + Debug + PartialEq {
    fn c_zero() -> Self;
    fn c_one() -> Self;
    fn c_is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Adams operation on the coefficient (identity on integers).
    fn adams(&self, k: u32) -> Self;
    /// Exact division by a positive integer.
    fn div_exact(&self, d: i64) -> Option<Self>;
}

impl Coef for BigInt {
    fn c_zero() -> Self {
        Zero::zero()
    }
    fn c_one() -> Self {
        One::one()
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn adams(&self, _k: u32) -> Self {
        self.clone()
    }
    fn div_exact(&self, d: i64) -> Option<Self> {
        let (q, r) = self.div_rem(&BigInt::from(d));
        Zero::is_zero(&r).then_some(q)
    }
}

impl Coef for QLaurent {
    fn c_zero() -> Self {
        QLaurent::zero()
    }
    fn c_one() -> Self {
        QLaurent::one()
    }
    fn c_is_zero(&self) -> bool {
        QLaurent::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    /// `q^{1/2} -> q^{k/2}`: q is treated as a line in the lambda-ring.
    fn adams(&self, k: u32) -> Self {
        let mut r = QLaurent::zero();
        for (e, c) in self.terms() {
            r += &QLaurent::monomial(c.clone(), e * k as i64);
        }
        r
    }
    fn div_exact(&self, d: i64) -> Option<Self> {
        let mut r = QLaurent::zero();
        let dd = BigInt::from(d);
        for (e, c) in self.terms() {
            let (q, rem) = c.div_rem(&dd);
            if !Zero::is_zero(&rem) {
                return None;
            }
            r += &QLaurent::monomial(q, e);
        }
        Some(r)
    }
}

/// `weight -> coefficient`, zero coefficients never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Character<C: Coef> {
    pub n: usize,
    terms: BTreeMap<Weight, C>,
}

pub type WeightChar = Character<BigInt>;
pub type QChar = Character<QLaurent>;

impl<C: Coef> Character<C> {
    pub fn zero(n: usize) -> Self {
        Character { n, terms: BTreeMap::new() }
    }

    pub fn unit(n: usize) -> Self {
        Self::monomial(vec![0; n], C::c_one())
    }

    pub fn monomial(w: Weight, c: C) -> Self {
        let mut s = Self::zero(w.len());
        s.add_term(w, c);
        s
    }

    pub fn from_weights(n: usize, ws: &[Weight]) -> Self {
        let mut s = Self::zero(n);
        for w in ws {
            s.add_term(w.clone(), C::c_one());
        }
        s
    }

    pub fn add_term(&mut self, w: Weight, c: C) {
        if c.c_is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e = e.add(&c);
                if e.c_is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn get(&self, w: &[i64]) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::c_zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Weight> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&C::c_one().neg()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut r = Self::zero(self.n);
        for (w, x) in &self.terms {
            r.add_term(w.clone(), x.mul(c));
        }
        r
    }

    /// Tensor product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let w: Weight = a.iter().zip(b).map(|(p, q)| p + q).collect();
                r.add_term(w, x.mul(y));
            }
        }
        r
    }

    /// `psi^k`: weights multiplied by `k`.
    pub fn adams(&self, k: u32) -> Self {
        let mut r = Self::zero(self.n);
        for (w, c) in &self.terms {
            r.add_term(w.iter().map(|x| x * k as i64).collect(), c.adams(k));
        }
        r
    }

    /// Map weights through a linear map (rows act on the weight).
    pub fn map_weights(&self, rows: &[Vec<i64>]) -> Self {
        let mut r = Self::zero(rows.len());
        for (w, c) in &self.terms {
            r.add_term(rows.iter().map(|row| dot(row, w)).collect(), c.clone());
        }
        r
    }

    fn divide(&self, d: i64) -> Result<Self> {
        let mut r = Self::zero(self.n);
        for (w, c) in &self.terms {
            let q = c.div_exact(d).ok_or_else(|| Error::NotACharacter("Newton identity division".into()))?;
            r.add_term(w.clone(), q);
        }
        Ok(r)
    }

    /// `[h_0, ..., h_i]` from `i h_i = sum_k p_k h_{i-k}`.
    pub fn sym_powers(&self, i: usize) -> Result<Vec<Self>> {
        let p: Vec<Self> = (0..=i).map(|k| if k == 0 { Self::unit(self.n) } else { self.adams(k as u32) }).collect();
        let mut h = vec![Self::unit(self.n)];
        for m in 1..=i {
            let mut s = Self::zero(self.n);
            for k in 1..=m {
                s = s.add(&p[k].mul(&h[m - k]));
            }
            h.push(s.divide(m as i64)?);
        }
        Ok(h)
    }

    /// `[e_0, ..., e_i]` from `i e_i = sum_k (-1)^{k-1} p_k e_{i-k}`.
    pub fn ext_powers(&self, i: usize) -> Result<Vec<Self>> {
        let p: Vec<Self> = (0..=i).map(|k| if k == 0 { Self::unit(self.n) } else { self.adams(k as u32) }).collect();
        let mut e = vec![Self::unit(self.n)];
        for m in 1..=i {
            let mut s = Self::zero(self.n);
            for k in 1..=m {
                let t = p[k].mul(&e[m - k]);
                s = if k % 2 == 1 { s.add(&t) } else { s.sub(&t) };
            }
            e.push(s.divide(m as i64)?);
        }
        Ok(e)
    }

    pub fn sym_power(&self, i: i64) -> Result<Self> {
        if i < 0 {
            return input("negative symmetric power");
        }
        Ok(self.sym_powers(i as usize)?.pop().unwrap())
    }

    pub fn ext_power(&self, i: i64) -> Result<Self> {
        if i < 0 {
            return input("negative exterior power");
        }
        Ok(self.ext_powers(i as usize)?.pop().unwrap())
    }

    pub fn is_weyl_invariant(&self, rd: &RootDatum) -> bool {
        self.terms.iter().all(|(w, c)| (0..rd.rank_ss()).all(|i| &self.get(&rd.reflect(i, w)) == c))
    }
}

impl WeightChar {
    pub fn dim(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_q(&self) -> QChar {
        let mut r = QChar::zero(self.n);
        for (w, c) in &self.terms {
            r.add_term(w.clone(), QLaurent::monomial(c.clone(), 0));
        }
        r
    }
}

/// Dominant weights `nu <= lambda`, ordered by increasing depth.
pub fn dominant_weights_below(rd: &RootDatum, lambda: &[i64]) -> Vec<Weight> {
    let mut seen: BTreeSet<Weight> = BTreeSet::new();
    let mut order = vec![];
    let mut q = VecDeque::new();
    seen.insert(lambda.to_vec());
    q.push_back(lambda.to_vec());
    while let Some(v) = q.pop_front() {
        order.push(v.clone());
        for b in &rd.positive_roots {
            let u: Weight = v.iter().zip(b).map(|(x, y)| x - y).collect();
            if rd.is_dominant(&u) && !seen.contains(&u) {
                seen.insert(u.clone());
                q.push_back(u);
            }
        }
    }
    let tr = rd.two_rho_check();
    order.sort_by_key(|w| (-dot(w, &tr), w.clone()));
    order
}

/// Dominant weight multiplicities of the irreducible of highest weight
/// `lambda`, by Freudenthal's recursion.
pub fn dominant_multiplicities(rd: &RootDatum, lambda: &[i64]) -> Result<BTreeMap<Weight, BigInt>> {
    if lambda.len() != rd.n {
        return input("weight has wrong length");
    }
    if !rd.is_dominant(lambda) {
        return input("highest weight is not dominant");
    }
    let doms = dominant_weights_below(rd, lambda);
    let two_rho = rd.two_rho();
    let shifted = |w: &[i64]| -> Vec<BigRational> {
        w.iter().zip(&two_rho).map(|(a, r)| qi(2 * a + r)).collect()
    };
    let lr = shifted(lambda);
    let norm_l = rd.form(&lr, &lr);
    let mut m: BTreeMap<Weight, BigInt> = BTreeMap::new();
    for nu in &doms {
        if nu.as_slice() == lambda {
            m.insert(nu.clone(), BigInt::one());
            continue;
        }
        let nr = shifted(nu);
        // (|lambda+rho|^2 - |nu+rho|^2) with the doubled weights: divide by 4
        let denom = (&norm_l - rd.form(&nr, &nr)) / qi(4);
        let mut num = BigRational::zero();
        for a in &rd.positive_roots {
            let aq = to_q64(a);
            for k in 1.. {
                let x: Weight = nu.iter().zip(a).map(|(p, q)| p + k * q).collect();
                let (d, _) = rd.to_dominant(&x);
                let Some(mx) = m.get(&d) else {
                    if doms.contains(&d) {
                        // reached weights are processed before nu
                        return Err(Error::Input("Freudenthal ordering violated".into()));
                    }
                    break;
                };
                num += BigRational::from_integer(mx.clone()) * rd.form(&to_q64(&x), &aq);
            }
        }
        let val = (num * qi(2)) / denom;
        if !val.is_integer() || val.is_negative() {
            return Err(Error::Input("Freudenthal recursion produced a non-integer".into()));
        }
        m.insert(nu.clone(), val.to_integer());
    }
    Ok(m)
}

pub fn freudenthal_multiplicity(rd: &RootDatum, lambda: &[i64], mu: &[i64]) -> Result<BigInt> {
    let m = dominant_multiplicities(rd, lambda)?;
    let (d, _) = rd.to_dominant(mu);
    Ok(m.get(&d).cloned().unwrap_or_default())
}

pub fn irrep_char(rd: &RootDatum, lambda: &[i64]) -> Result<WeightChar> {
    let m = dominant_multiplicities(rd, lambda)?;
    let mut ch = WeightChar::zero(rd.n);
    for (d, c) in &m {
        if Zero::is_zero(c) {
            continue;
        }
        for w in rd.weyl_orbit(d) {
            ch.add_term(w, c.clone());
        }
    }
    Ok(ch)
}

/// Weyl dimension formula.
pub fn weyl_dimension(rd: &RootDatum, lambda: &[i64]) -> BigRational {
    let two_rho = rd.two_rho();
    let mut p = BigRational::one();
    for c in &rd.positive_coroots {
        let a = 2 * dot(lambda, c) + dot(&two_rho, c);
        let b = dot(&two_rho, c);
        p *= BigRational::new(BigInt::from(a), BigInt::from(b));
    }
    p
}

/// Multiplicity by Kostant's formula, using the ordinary partition function
/// on positive roots. Independent of Freudenthal.
pub fn kostant_multiplicity(rd: &RootDatum, lambda: &[i64], mu: &[i64]) -> BigInt {
    let two_rho = rd.two_rho();
    let mut total = BigInt::zero();
    for (w, s) in rd.weyl_group() {
        // w(lambda + rho) - (mu + rho), doubled then halved
        let lr: Weight = lambda.iter().zip(&two_rho).map(|(a, r)| 2 * a + r).collect();
        let wl: Weight = (0..rd.n).map(|i| (0..rd.n).map(|k| w[i][k] * lr[k]).sum()).collect();
        let diff: Weight = (0..rd.n).map(|i| wl[i] - 2 * mu[i] - two_rho[i]).collect();
        if diff.iter().any(|x| x % 2 != 0) {
            continue;
        }
        let half: Weight = diff.iter().map(|x| x / 2).collect();
        let Some(c) = rd.nonneg_root_coeffs(&half) else { continue };
        let cnt: BigInt = super::partition_counts(&rd.root_coeffs, &c).iter().sum();
        total += cnt * BigInt::from(*s);
    }
    total
}

fn leading_key(rd: &RootDatum, w: &[i64]) -> (i64, Weight) {
    (dot(w, &rd.two_rho_check()), w.to_vec())
}

/// Greedy decomposition into irreducibles, taking at each step the dominant
/// support point of largest `<., 2 rho^vee>` (ties broken lexicographically).
pub fn decompose(rd: &RootDatum, chi: &WeightChar) -> Result<Vec<(Weight, BigInt)>> {
    if !chi.is_weyl_invariant(rd) {
        return Err(Error::NotACharacter("character is not Weyl-invariant".into()));
    }
    let mut rest = chi.clone();
    let mut out = vec![];
    while !rest.is_zero() {
        let lead = rest
            .terms()
            .filter(|(w, _)| rd.is_dominant(w))
            .map(|(w, _)| w.clone())
            .max_by_key(|w| leading_key(rd, w))
            .ok_or_else(|| Error::NotACharacter("no dominant weight in support".into()))?;
        let c = rest.get(&lead);
        if c.is_negative() {
            return Err(Error::NotACharacter(format!("negative multiplicity at {lead:?}")));
        }
        rest = rest.sub(&irrep_char(rd, &lead)?.scale(&c));
        out.push((lead, c));
    }
    out.sort_by(|a, b| leading_key(rd, &b.0).cmp(&leading_key(rd, &a.0)));
    Ok(out)
}

/// Same greedy decomposition with q-Laurent coefficients (no sign check).
pub fn decompose_q(rd: &RootDatum, chi: &QChar) -> Result<Vec<(Weight, QLaurent)>> {
    let mut rest = chi.clone();
    let mut out = vec![];
    let mut guard = 0;
    while !rest.is_zero() {
        guard += 1;
        if guard > 10_000 {
            return Err(Error::NotACharacter("decomposition does not terminate".into()));
        }
        let lead = rest
            .terms()
            .filter(|(w, _)| rd.is_dominant(w))
            .map(|(w, _)| w.clone())
            .max_by_key(|w| leading_key(rd, w))
            .ok_or_else(|| Error::NotACharacter("no dominant weight in support".into()))?;
        let c = rest.get(&lead);
        rest = rest.sub(&irrep_char(rd, &lead)?.to_q().scale(&c));
        out.push((lead, c));
    }
    Ok(out)
}

/// Brute-force `Sym^i` by enumerating multisets of weights (with
/// multiplicity); used as an oracle for the Newton identities.
pub fn sym_power_bruteforce(chi: &WeightChar, i: usize) -> WeightChar {
    let mut items: Vec<Weight> = vec![];
    for (w, c) in chi.terms() {
        for _ in 0..c.to_i64().expect("small multiplicity") {
            items.push(w.clone());
        }
    }
    let mut out = WeightChar::zero(chi.n);
    fn rec(items: &[Weight], start: usize, left: usize, acc: &mut Weight, out: &mut WeightChar) {
        if left == 0 {
            out.add_term(acc.clone(), BigInt::one());
            return;
        }
        for k in start..items.len() {
            for (a, b) in acc.iter_mut().zip(&items[k]) {
                *a += b;
            }
            rec(items, k, left - 1, acc, out);
            for (a, b) in acc.iter_mut().zip(&items[k]) {
                *a -= b;
            }
        }
    }
    rec(&items, 0, i, &mut vec![0; chi.n], &mut out);
    out
}

/// Brute-force exterior power: strictly increasing index choices.
pub fn ext_power_bruteforce(chi: &WeightChar, i: usize) -> WeightChar {
    let mut items: Vec<Weight> = vec![];
    for (w, c) in chi.terms() {
        for _ in 0..c.to_i64().expect("small multiplicity") {
            items.push(w.clone());
        }
    }
    let mut out = WeightChar::zero(chi.n);
    fn rec(items: &[Weight], start: usize, left: usize, acc: &mut Weight, out: &mut WeightChar) {
        if left == 0 {
            out.add_term(acc.clone(), BigInt::one());
            return;
        }
        for k in start..items.len() {
            for (a, b) in acc.iter_mut().zip(&items[k]) {
                *a += b;
            }
            rec(items, k + 1, left - 1, acc, out);
            for (a, b) in acc.iter_mut().zip(&items[k]) {
                *a -= b;
            }
        }
    }
    rec(&items, 0, i, &mut vec![0; chi.n], &mut out);
    out
}
