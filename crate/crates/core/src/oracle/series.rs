//! Truncated Laurent series over a prime field `F_p`.

use std::fmt;

use rand::Rng;

use crate::error::{input, Error, Result};

/// `sum c[i] t^{start + i}`, known modulo `t^{start + c.len()}`. Leading
/// zeros are stripped, so an empty `c` means "zero to precision".
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    p: u64,
    start: i64,
    c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Supported residue characteristics.
pub fn check_prime(p: u64) -> Result<()> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return input(format!("q = {p} is not prime; only prime fields are modelled"));
    }
    Ok(())
}

impl TruncSeries {
    fn normalized(p: u64, start: i64, mut c: Vec<u64>) -> TruncSeries {
        let lead = c.iter().take_while(|&&x| x == 0).count();
        c.drain(..lead);
        TruncSeries { p, start: start + lead as i64, c }
    }

    /// Zero, known modulo `t^prec`.
    pub fn zero(p: u64, prec: i64) -> TruncSeries {
        TruncSeries { p, start: prec, c: vec![] }
    }

    /// `a t^e` with relative precision `rel`.
    pub fn monomial(p: u64, a: i64, e: i64, rel: usize) -> TruncSeries {
        let mut c = vec![0; rel];
        if rel > 0 {
            c[0] = a.rem_euclid(p as i64) as u64;
        }
        Self::normalized(p, e, c)
    }

    /// Polynomial `sum coeffs[i] t^i`, known modulo `t^prec`.
    pub fn poly(p: u64, coeffs: &[i64], prec: i64) -> TruncSeries {
        let n = prec.max(0) as usize;
        let c = (0..n).map(|i| coeffs.get(i).map_or(0, |a| a.rem_euclid(p as i64) as u64)).collect();
        Self::normalized(p, 0, c)
    }

    /// Uniform element of `o / t^prec`.
    pub fn random_integral<R: Rng>(p: u64, prec: i64, rng: &mut R) -> TruncSeries {
        let c = (0..prec.max(0)).map(|_| rng.gen_range(0..p)).collect();
        Self::normalized(p, 0, c)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Absolute precision: the series is known modulo `t^prec`.
    pub fn prec(&self) -> i64 {
        self.start + self.c.len() as i64
    }

    /// `None` when the series is zero to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    /// Lower bound for the valuation.
    fn low(&self) -> i64 {
        self.start
    }

    pub fn coeff(&self, e: i64) -> Option<u64> {
        if e >= self.prec() {
            None
        } else if e < self.start {
            Some(0)
        } else {
            Some(self.c[(e - self.start) as usize])
        }
    }

    fn same_field(&self, o: &TruncSeries) {
        assert_eq!(self.p, o.p, "series over different fields");
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        self.same_field(o);
        let prec = self.prec().min(o.prec());
        let lo = self.start.min(o.start).min(prec);
        let c = (lo..prec).map(|e| (self.coeff(e).unwrap() + o.coeff(e).unwrap()) % self.p).collect();
        Self::normalized(self.p, lo, c)
    }

    pub fn neg(&self) -> TruncSeries {
        let c = self.c.iter().map(|&x| (self.p - x) % self.p).collect();
        TruncSeries { p: self.p, start: self.start, c }
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        self.same_field(o);
        let (la, lb) = (self.low(), o.low());
        let prec = (self.prec() + lb).min(o.prec() + la);
        let lo = (la + lb).min(prec);
        let mut c = vec![0u64; (prec - lo) as usize];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate() {
                let k = (la + lb + (i + j) as i64 - lo) as usize;
                if k >= c.len() {
                    break;
                }
                c[k] = (c[k] + x * y) % self.p;
            }
        }
        Self::normalized(self.p, lo, c)
    }

    /// Inverse of a series with known valuation; relative precision is kept.
    pub fn inv(&self) -> Result<TruncSeries> {
        let Some(v) = self.valuation() else {
            return Err(Error::Precision("inverting a series that is zero to precision".into()));
        };
        let n = self.c.len();
        let p = self.p;
        let u0 = inv_mod(self.c[0], p);
        let mut b = vec![0u64; n];
        b[0] = u0;
        for k in 1..n {
            let mut s = 0u64;
            for i in 1..=k {
                s = (s + self.c[i] * b[k - i]) % p;
            }
            b[k] = (p - s) % p * u0 % p;
        }
        Ok(Self::normalized(p, -v, b))
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.c.is_empty()
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        for (i, &x) in self.c.iter().enumerate() {
            if x != 0 {
                parts.push(format!("{x}t^{}", self.start + i as i64));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(t^{})", parts.join(" + "), self.prec())
    }
}

/// Minimum valuation of a family, failing when precision could hide a
/// smaller one.
pub fn min_valuation(xs: &[&TruncSeries]) -> Result<i64> {
    let known = xs.iter().filter_map(|x| x.valuation()).min();
    let Some(m) = known else {
        return Err(Error::Precision("all entries vanish to precision".into()));
    };
    if xs.iter().any(|x| x.valuation().is_none() && x.prec() < m) {
        return Err(Error::Precision(format!("an entry is only known below t^{m}")));
    }
    Ok(m)
}
