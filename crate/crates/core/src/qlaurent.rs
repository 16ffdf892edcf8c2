//! Laurent polynomials in `q^{1/2}` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `sum_k c_k q^{k/2}`; keys are exponents of `q^{1/2}`, zero coefficients
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    /// `c * q^{half/2}`.
    pub fn monomial(c: BigInt, half: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half, c);
        }
        QLaurent { terms }
    }

    /// `q^{half/2}`.
    pub fn q_half(half: i64) -> Self {
        Self::monomial(BigInt::one(), half)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::q_half(2 * e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff_half(&self, half: i64) -> BigInt {
        self.terms.get(&half).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, half: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(half).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&half);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = QLaurent::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// Multiply by `q^{half/2}`.
    pub fn shift_half(&self, half: i64) -> Self {
        QLaurent { terms: self.terms.iter().map(|(k, v)| (k + half, v.clone())).collect() }
    }

    /// Substitute `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        QLaurent { terms: self.terms.iter().map(|(k, v)| (-k, v.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = QLaurent::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Largest exponent of `q`, as a rational.
    pub fn degree(&self) -> Option<BigRational> {
        self.terms.keys().next_back().map(|k| BigRational::new(BigInt::from(*k), BigInt::from(2)))
    }

    pub fn has_half_integral_powers(&self) -> bool {
        self.terms.keys().any(|k| k % 2 != 0)
    }

    /// Exact value at a rational `q > 0`. Odd powers of `q^{1/2}` need `q`
    /// to be a rational square; otherwise `None`.
    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        let root = if self.has_half_integral_powers() { Some(rational_sqrt(q)?) } else { None };
        let mut s = BigRational::zero();
        for (k, c) in &self.terms {
            let base = if k % 2 == 0 { q.clone() } else { root.clone().unwrap() };
            let e = if k % 2 == 0 { k / 2 } else { *k };
            let p = if e >= 0 { pow_q(&base, e as u32) } else { pow_q(&base.recip(), (-e) as u32) };
            s += p * BigRational::from_integer(c.clone());
        }
        Some(s)
    }

    pub fn eval_int(&self, q: i64) -> Option<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(q)))
    }
}

fn pow_q(b: &BigRational, e: u32) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..e {
        r *= b;
    }
    r
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, o: &QLaurent) -> QLaurent {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Add for QLaurent {
    type Output = QLaurent;
    fn add(self, o: QLaurent) -> QLaurent {
        &self + &o
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, o: &QLaurent) {
        for (k, v) in &o.terms {
            self.add_term(*k, v.clone());
        }
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, o: &QLaurent) -> QLaurent {
        self + &(-o)
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, o: &QLaurent) -> QLaurent {
        let mut r = QLaurent::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a + b, x * y);
            }
        }
        r
    }
}

impl Mul for QLaurent {
    type Output = QLaurent;
    fn mul(self, o: QLaurent) -> QLaurent {
        &self * &o
    }
}

fn fmt_power(half: i64) -> String {
    if half % 2 == 0 {
        match half / 2 {
            1 => "q".to_string(),
            e => format!("q^{e}"),
        }
    } else {
        format!("q^({half}/2)")
    }
}

impl fmt::Display for QLaurent {
    /// Descending exponents: `q + 1`, `q^-2`, `2q^(3/2) - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if *k == 0 {
                a.to_string()
            } else if a.is_one() {
                fmt_power(*k)
            } else {
                format!("{a}{}", fmt_power(*k))
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

impl FromStr for QLaurent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("malformed q-Laurent polynomial: {s:?}"));
        let t = s.replace(' ', "");
        if t == "0" {
            return Ok(QLaurent::zero());
        }
        let mut out = QLaurent::zero();
        let bytes: Vec<char> = t.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coef: BigInt = if i > start {
                bytes[start..i].iter().collect::<String>().parse().map_err(|_| bad())?
            } else {
                BigInt::one()
            };
            let mut half = 0i64;
            if i < bytes.len() && bytes[i] == 'q' {
                i += 1;
                half = 2;
                if i < bytes.len() && bytes[i] == '^' {
                    i += 1;
                    if i < bytes.len() && bytes[i] == '(' {
                        let end = bytes[i..].iter().position(|&c| c == ')').ok_or_else(bad)? + i;
                        let inner: String = bytes[i + 1..end].iter().collect();
                        let num = inner.strip_suffix("/2").ok_or_else(bad)?;
                        half = num.parse().map_err(|_| bad())?;
                        i = end + 1;
                    } else {
                        let st = i;
                        if i < bytes.len() && bytes[i] == '-' {
                            i += 1;
                        }
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        let e: i64 = bytes[st..i].iter().collect::<String>().parse().map_err(|_| bad())?;
                        half = 2 * e;
                    }
                }
            } else if i == start {
                return Err(bad());
            }
            out.add_term(half, sign * coef);
            if i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
                return Err(bad());
            }
        }
        Ok(out)
    }
}

impl serde::Serialize for QLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QLaurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
