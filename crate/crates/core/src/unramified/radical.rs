//! The dual unipotent radical as a graded `M^vee`-representation and its
//! lowest-weight part for a principal `sl2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{input, Error, Result};
use crate::roots::chars::{decompose, QChar, WeightChar};
use crate::roots::{dot, ParabolicDatum, Weight};
use crate::QLaurent;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalWeight {
    pub coroot: Weight,
    /// Image in `Lambda_{G,P}`.
    pub theta: Weight,
    /// `<2 rho_M, coroot>`.
    pub grade: i64,
}

#[derive(Debug, Clone)]
pub struct DualRadicalRep {
    pub parabolic: ParabolicDatum,
    pub weights: Vec<RadicalWeight>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFixedEntry {
    pub theta: Weight,
    pub grade: i64,
    pub mult: u64,
}

#[derive(Debug, Clone)]
pub struct FFixedRep {
    pub parabolic: ParabolicDatum,
    pub entries: Vec<FFixedEntry>,
}

pub fn dual_radical(p: &ParabolicDatum) -> Result<DualRadicalRep> {
    if p.radical.is_empty() {
        return input("parabolic has no unipotent radical");
    }
    let two_rho_m = p.two_rho_m();
    let weights = p
        .radical_coroots()
        .into_iter()
        .map(|c| RadicalWeight { theta: p.project(&c), grade: dot(&two_rho_m, &c), coroot: c })
        .collect();
    Ok(DualRadicalRep { parabolic: p.clone(), weights })
}

impl DualRadicalRep {
    /// Grade multiplicities `d_m` per central class.
    pub fn grades(&self) -> BTreeMap<Weight, BTreeMap<i64, u64>> {
        let mut g: BTreeMap<Weight, BTreeMap<i64, u64>> = BTreeMap::new();
        for w in &self.weights {
            *g.entry(w.theta.clone()).or_default().entry(w.grade).or_default() += 1;
        }
        g
    }

    /// Character of `u_P^vee` as an `M^vee`-representation (weights are coroots).
    pub fn character(&self) -> WeightChar {
        let n = self.parabolic.parent.n;
        WeightChar::from_weights(n, &self.weights.iter().map(|w| w.coroot.clone()).collect::<Vec<_>>())
    }

    /// Irreducible constituents, highest weights for `M^vee`.
    pub fn constituents(&self) -> Result<Vec<(Weight, BigInt)>> {
        decompose(&self.parabolic.levi.dual(), &self.character())
    }
}

pub fn f_fixed(r: &DualRadicalRep) -> Result<FFixedRep> {
    let mut entries = vec![];
    for (theta, d) in r.grades() {
        let get = |m: i64| d.get(&m).copied().unwrap_or(0);
        for (&m, &c) in &d {
            if get(-m) != c {
                return Err(Error::NotSl2Character(format!("grade {m} has multiplicity {c}, grade {} has {}", -m, get(-m))));
            }
        }
        let lo = d.keys().next().copied().unwrap_or(0);
        let mut m = 0;
        if lo % 2 != 0 {
            m = -1;
        }
        while m >= lo {
            let mult = get(m) as i64 - get(m - 2) as i64;
            if mult < 0 {
                return Err(Error::NotSl2Character(format!("grades at {theta:?} are not unimodal")));
            }
            if mult > 0 {
                entries.push(FFixedEntry { theta: theta.clone(), grade: m, mult: mult as u64 });
            }
            m -= 2;
        }
        if d.keys().any(|k| (k - lo) % 2 != 0) {
            return Err(Error::NotSl2Character(format!("grades at {theta:?} mix parities")));
        }
    }
    Ok(FFixedRep { parabolic: r.parabolic.clone(), entries })
}

impl FFixedRep {
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.mult).sum()
    }

    /// `sum mult * q^{kappa m / 2} z^theta` on `Lambda_{G,P}`.
    pub fn restricted_character(&self, kappa: i32) -> QChar {
        let mut c = QChar::zero(self.parabolic.ab_rank());
        for e in &self.entries {
            c.add_term(e.theta.clone(), QLaurent::monomial(BigInt::from(e.mult), kappa as i64 * e.grade));
        }
        c
    }
}

/// `Sym^i(u_P^vee)` for `i <= d`, each decomposed into `M^vee`-irreducibles.
pub fn basic_function_graded(p: &ParabolicDatum, d: usize) -> Result<Vec<(usize, Vec<(Weight, BigInt)>)>> {
    let dual_levi = p.levi.dual();
    let n = p.parent.n;
    let ch = if p.radical.is_empty() { WeightChar::zero(n) } else { dual_radical(p)?.character() };
    let powers = ch.sym_powers(d)?;
    powers.iter().enumerate().map(|(i, s)| Ok((i, decompose(&dual_levi, s)?))).collect()
}
