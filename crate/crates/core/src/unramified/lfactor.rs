//! Local L-factors `prod (1 - m T)^{-1}` with `T = q^{-s}`, and the
//! generating series `sum_i T^i Sym^i` they should reproduce.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::radical::{DualRadicalRep, FFixedRep};
use crate::error::{input, Error, Result};
use crate::roots::chars::QChar;
use crate::roots::Weight;

/// Laurent polynomial in `q^{1/2}` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatLaurent(pub BTreeMap<i64, BigRational>);

impl RatLaurent {
    pub fn zero() -> Self {
        RatLaurent::default()
    }

    pub fn monomial(c: BigRational, half: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(half, c);
        }
        RatLaurent(m)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert_with(BigRational::zero);
            *e += v;
        }
        m.retain(|_, v| !v.is_zero());
        RatLaurent(m)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = RatLaurent::zero();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                r = r.add(&RatLaurent::monomial(x * y, a + b));
            }
        }
        r
    }
}

impl fmt::Display for RatLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let q = match k {
                0 => String::new(),
                2 => "q".into(),
                k if k % 2 == 0 => format!("q^{}", k / 2),
                k => format!("q^({k}/2)"),
            };
            if q.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{q}")?;
            } else {
                write!(f, "{mag}*{q}")?;
            }
        }
        Ok(())
    }
}

/// Value of one coordinate of the character `omega` of `Lambda_{G,P}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointValue {
    Rational(BigRational),
    Symbol(String),
}

impl PointValue {
    pub fn parse(s: &str) -> Result<PointValue> {
        let s = s.trim();
        if let Ok(q) = s.parse::<BigRational>() {
            if q.is_zero() {
                return input("point coordinate must be nonzero");
            }
            return Ok(PointValue::Rational(q));
        }
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || s.starts_with(|c: char| c.is_ascii_digit()) {
            return input(format!("bad point value {s:?}"));
        }
        Ok(PointValue::Symbol(s.to_string()))
    }
}

/// `scalar * prod symbol^e * q^{half/2} * T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LMonomial {
    pub scalar: BigRational,
    pub symbols: BTreeMap<String, i64>,
    pub half: i64,
}

impl fmt::Display for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec![];
        if !self.scalar.is_one() || (self.symbols.is_empty() && self.half == 0) {
            parts.push(format!("{}", self.scalar));
        }
        for (s, e) in &self.symbols {
            parts.push(if *e == 1 { s.clone() } else { format!("{s}^{e}") });
        }
        match self.half {
            0 => {}
            2 => parts.push("q".into()),
            h if h % 2 == 0 => parts.push(format!("q^{}", h / 2)),
            h => parts.push(format!("q^({h}/2)")),
        }
        parts.push("T".into());
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LFactor {
    pub monomials: Vec<LMonomial>,
}

impl fmt::Display for LFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "1");
        }
        let den: Vec<String> = self.monomials.iter().map(|m| format!("(1 - {m})")).collect();
        write!(f, "1/({})", den.join(""))
    }
}

impl LFactor {
    /// Power series coefficients of `T^0..T^degree`; needs a numeric point.
    pub fn expand(&self, degree: usize) -> Result<Vec<RatLaurent>> {
        let mut series = vec![RatLaurent::zero(); degree + 1];
        series[0] = RatLaurent::monomial(BigRational::one(), 0);
        for m in &self.monomials {
            if !m.symbols.is_empty() {
                return input("expansion needs a numeric point");
            }
            let x = RatLaurent::monomial(m.scalar.clone(), m.half);
            // multiply by 1/(1 - x T): s_k += x s_{k-1}, in increasing k
            for k in 1..=degree {
                let add = series[k - 1].mul(&x);
                series[k] = series[k].add(&add);
            }
        }
        Ok(series)
    }
}

fn omega(theta: &[i64], point: &[PointValue]) -> Result<(BigRational, BTreeMap<String, i64>)> {
    if theta.len() != point.len() {
        return input(format!("point has {} coordinates, expected {}", point.len(), theta.len()));
    }
    let mut scalar = BigRational::one();
    let mut syms = BTreeMap::new();
    for (e, v) in theta.iter().zip(point) {
        if *e == 0 {
            continue;
        }
        match v {
            PointValue::Rational(r) => {
                if r.is_zero() {
                    return input("point coordinate must be nonzero");
                }
                let base = if *e > 0 { r.clone() } else { r.recip() };
                for _ in 0..e.abs() {
                    scalar *= &base;
                }
            }
            PointValue::Symbol(s) => {
                *syms.entry(s.clone()).or_insert(0) += e;
            }
        }
    }
    syms.retain(|_, e| *e != 0);
    Ok((scalar, syms))
}

/// `prod (1 - omega(theta) q^{half/2} T)^{-mult}` over `(theta, half, mult)`.
pub fn local_lfactor(weights: &[(Weight, i64, u64)], point: &[PointValue]) -> Result<LFactor> {
    let mut monomials = vec![];
    for (theta, half, mult) in weights {
        let (scalar, symbols) = omega(theta, point)?;
        for _ in 0..*mult {
            monomials.push(LMonomial { scalar: scalar.clone(), symbols: symbols.clone(), half: *half });
        }
    }
    Ok(LFactor { monomials })
}

/// The factor for `u_P^f`, at `e^{-rho_M} omega`.
pub fn lfactor_ffixed(ff: &FFixedRep, point: &[PointValue], kappa: i32) -> Result<LFactor> {
    let w: Vec<(Weight, i64, u64)> = ff.entries.iter().map(|e| (e.theta.clone(), kappa as i64 * e.grade, e.mult)).collect();
    local_lfactor(&w, point)
}

/// The factor for the full `u_P`, graded the same way.
pub fn lfactor_radical(r: &DualRadicalRep, point: &[PointValue], kappa: i32) -> Result<LFactor> {
    let w: Vec<(Weight, i64, u64)> = r.weights.iter().map(|x| (x.theta.clone(), kappa as i64 * x.grade, 1)).collect();
    local_lfactor(&w, point)
}

/// `sum_{i <= degree} T^i Sym^i(chi)` evaluated at a numeric point.
pub fn sym_series(chi: &QChar, point: &[BigRational], degree: usize) -> Result<Vec<RatLaurent>> {
    if chi.n != point.len() {
        return Err(Error::Input("point dimension".into()));
    }
    let pv: Vec<PointValue> = point.iter().map(|x| PointValue::Rational(x.clone())).collect();
    let mut out = vec![];
    for s in chi.sym_powers(degree)? {
        let mut acc = RatLaurent::zero();
        for (w, c) in s.terms() {
            let (scalar, _) = omega(w, &pv)?;
            for (k, a) in c.terms() {
                acc = acc.add(&RatLaurent::monomial(&scalar * BigRational::from_integer(a.clone()), k));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

