//! Small matrices over truncated series.

use rand::Rng;

use super::series::{min_valuation, TruncSeries};
use crate::error::{input, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub e: Vec<TruncSeries>,
}

impl Mat {
    pub fn from_entries(rows: usize, cols: usize, e: Vec<TruncSeries>) -> Mat {
        assert_eq!(e.len(), rows * cols);
        Mat { rows, cols, e }
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncSeries {
        &self.e[i * self.cols + j]
    }

    pub fn p(&self) -> u64 {
        self.e[0].p()
    }

    /// `diag(t^{e_1}, ..., t^{e_n})` with relative precision `rel`, off-diagonal
    /// zeros known to the same absolute precision as their row.
    pub fn diag_powers(p: u64, exps: &[i64], rel: usize) -> Mat {
        let n = exps.len();
        let mut e = vec![];
        for i in 0..n {
            for j in 0..n {
                e.push(if i == j {
                    TruncSeries::monomial(p, 1, exps[i], rel)
                } else {
                    TruncSeries::zero(p, exps[i] + rel as i64)
                });
            }
        }
        Mat { rows: n, cols: n, e }
    }

    pub fn row(&self, i: usize) -> Vec<&TruncSeries> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn mul(&self, o: &Mat) -> Result<Mat> {
        if self.cols != o.rows {
            return input("matrix shapes do not match");
        }
        let mut e = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = self.get(i, 0).mul(o.get(0, j));
                for k in 1..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                e.push(acc);
            }
        }
        Ok(Mat { rows: self.rows, cols: o.cols, e })
    }

    /// Determinant of the submatrix on the given rows and columns.
    fn minor(&self, rs: &[usize], cs: &[usize]) -> TruncSeries {
        if rs.len() == 1 {
            return self.get(rs[0], cs[0]).clone();
        }
        let mut acc: Option<TruncSeries> = None;
        for (k, &c) in cs.iter().enumerate() {
            let rest: Vec<usize> = cs.iter().copied().filter(|&x| x != c).collect();
            let mut term = self.get(rs[0], c).mul(&self.minor(&rs[1..], &rest));
            if k % 2 == 1 {
                term = term.neg();
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.expect("nonempty")
    }

    pub fn det(&self) -> Result<TruncSeries> {
        if self.rows != self.cols || self.rows == 0 {
            return input("determinant of a non-square matrix");
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor(&idx, &idx))
    }

    /// All `k x k` minors.
    pub fn minors(&self, k: usize) -> Vec<TruncSeries> {
        let rs = subsets(self.rows, k);
        let cs = subsets(self.cols, k);
        let mut out = vec![];
        for r in &rs {
            for c in &cs {
                out.push(self.minor(r, c));
            }
        }
        out
    }

    /// Elementary-divisor valuations in increasing order, from minimal
    /// valuations of minors. Square matrices of full rank only.
    pub fn elementary_divisors(&self) -> Result<Vec<i64>> {
        if self.rows != self.cols {
            return input("elementary divisors need a square matrix");
        }
        let mut out = vec![];
        let mut prev = 0;
        for k in 1..=self.rows {
            let m = self.minors(k);
            let s = min_valuation(&m.iter().collect::<Vec<_>>())?;
            out.push(s - prev);
            prev = s;
        }
        Ok(out)
    }

    /// Uniform-ish element of `GL_n(o)` modulo `t^prec` (rejection on the
    /// residue determinant).
    pub fn random_k<R: Rng>(p: u64, n: usize, prec: i64, rng: &mut R) -> Mat {
        loop {
            let e: Vec<TruncSeries> = (0..n * n).map(|_| TruncSeries::random_integral(p, prec, rng)).collect();
            let m = Mat { rows: n, cols: n, e };
            if m.det().map(|d| d.valuation() == Some(0)).unwrap_or(false) {
                return m;
            }
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}
