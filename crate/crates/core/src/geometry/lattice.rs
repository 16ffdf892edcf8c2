//! Integer and rational linear algebra: Smith and Hermite normal forms,
//! exact solving, kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};

pub type IMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<BigRational>>;

pub fn zi(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn qi(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn to_q64(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| qi(x)).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn dot_z(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |s, (x, y)| s + x * y)
}

/// Gcd of the entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divide by the content.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Smallest positive integer multiple of a rational vector, made primitive.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let w: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(&w)
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect())
        .collect()
}

/// Smith normal form: returns `(u, d, v)` with `u * a * v = d`, `u` and `v`
/// unimodular and `d` diagonal with `d_ii | d_{i+1,i+1}`, nonnegative.
pub fn smith(a: &IMat, ncols: usize) -> (IMat, IMat, IMat) {
    let m = a.len();
    let n = ncols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero() {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => d[i][j].abs() < d[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for r in d.iter_mut() {
            r.swap(t, pj);
        }
        for r in v.iter_mut() {
            r.swap(t, pj);
        }
        let mut done = false;
        while !done {
            done = true;
            // clear column t
            for i in (t + 1)..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let qt = d[i][t].div_floor(&d[t][t]);
                for j in 0..n {
                    let x = &d[t][j] * &qt;
                    d[i][j] -= x;
                }
                for j in 0..m {
                    let x = &u[t][j] * &qt;
                    u[i][j] -= x;
                }
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    done = false;
                }
            }
            // clear row t
            for j in (t + 1)..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let qt = d[t][j].div_floor(&d[t][t]);
                for r in d.iter_mut() {
                    let x = &r[t] * &qt;
                    r[j] -= x;
                }
                for r in v.iter_mut() {
                    let x = &r[t] * &qt;
                    r[j] -= x;
                }
                if !d[t][j].is_zero() {
                    for r in d.iter_mut() {
                        r.swap(t, j);
                    }
                    for r in v.iter_mut() {
                        r.swap(t, j);
                    }
                    done = false;
                }
            }
            if done {
                // divisibility: d_tt must divide the rest of the block
                'outer: for i in (t + 1)..m {
                    for j in (t + 1)..n {
                        if !(&d[i][j] % &d[t][t]).is_zero() {
                            for c in 0..n {
                                let x = d[i][c].clone();
                                d[t][c] += x;
                            }
                            for c in 0..m {
                                let x = u[i][c].clone();
                                u[t][c] += x;
                            }
                            done = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if d[t][t].is_negative() {
            for j in 0..n {
                d[t][j] = -d[t][j].clone();
            }
            for j in 0..m {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }
    (u, d, v)
}

/// Diagonal of the Smith form (length `min(m, n)`).
pub fn elementary_divisors(a: &IMat, ncols: usize) -> Vec<BigInt> {
    let (_, d, _) = smith(a, ncols);
    (0..a.len().min(ncols)).map(|i| d[i][i].clone()).collect()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`:
/// echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, zero rows dropped.
pub fn hnf_rows(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r >= a.len() {
            break;
        }
        loop {
            // smallest nonzero in column c at or below r
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][c].is_zero() && best.map_or(true, |b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut clean = true;
            for i in (r + 1)..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let qt = a[i][c].div_floor(&a[r][c]);
                for j in 0..ncols {
                    let x = &a[r][j] * &qt;
                    a[i][j] -= x;
                }
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for j in 0..ncols {
                    a[r][j] = -a[r][j].clone();
                }
            }
            for i in 0..r {
                let qt = a[i][c].div_floor(&a[r][c]);
                if !qt.is_zero() {
                    for j in 0..ncols {
                        let x = &a[r][j] * &qt;
                        a[i][j] -= x;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Reduced row echelon form over Q; returns (rref, pivot columns).
pub fn rref(a: &QMat, ncols: usize) -> (QMat, Vec<usize>) {
    let mut m = a.clone();
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in 0..ncols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let x = &m[r][j] * &f;
                    m[i][j] -= x;
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, piv)
}

pub fn rank_q(a: &QMat, ncols: usize) -> usize {
    rref(a, ncols).1.len()
}

/// Basis of `{x : a x = 0}` over Q.
pub fn nullspace(a: &QMat, ncols: usize) -> QMat {
    let (r, piv) = rref(a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::one();
            for (row, &p) in r.iter().zip(&piv) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Integral basis (primitive vectors) of the rational span of a nullspace.
pub fn nullspace_z(a: &QMat, ncols: usize) -> IMat {
    nullspace(a, ncols).iter().map(|v| clear_denominators(v)).collect()
}

/// Solve `sum_j x_j cols[j] = b` over Q (columns given as vectors).
pub fn solve_columns(cols: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = cols.len();
    let m = b.len();
    let aug: QMat = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let (r, piv) = rref(&aug, n + 1);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &p) in r.iter().zip(&piv) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// An integer matrix viewed as a homomorphism Z^n -> Z^m (m rows, n columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    pub rows: usize,
    pub cols: usize,
    pub entries: IMat,
}

impl LatticeMap {
    pub fn new(entries: IMat, cols: usize) -> Result<Self> {
        if entries.iter().any(|r| r.len() != cols) {
            return input("lattice map rows have inconsistent length");
        }
        Ok(LatticeMap { rows: entries.len(), cols, entries })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::new(rows.iter().map(|r| to_big(r)).collect(), cols)
    }

    pub fn identity(n: usize) -> Self {
        LatticeMap { rows: n, cols: n, entries: identity(n) }
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.entries.iter().map(|r| dot_z(r, x)).collect()
    }

    pub fn apply_q(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.entries.iter().map(|r| dot_q(&to_q(r), x)).collect()
    }

    /// The transpose map Z^m -> Z^n.
    pub fn transpose(&self) -> LatticeMap {
        LatticeMap { rows: self.cols, cols: self.rows, entries: transpose(&self.entries, self.cols) }
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        transpose(&self.entries, self.cols)
    }

    pub fn compose(&self, other: &LatticeMap) -> Result<LatticeMap> {
        if self.cols != other.rows {
            return input("lattice map composition: dimension mismatch");
        }
        Ok(LatticeMap { rows: self.rows, cols: other.cols, entries: mat_mul(&self.entries, &other.entries) })
    }

    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        elementary_divisors(&self.entries, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.elementary_divisors().iter().filter(|d| !d.is_zero()).count()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    /// Order of the torsion subgroup of the cokernel.
    pub fn torsion_order(&self) -> Result<BigInt> {
        if !self.is_injective() {
            return input("lattice map is not injective");
        }
        Ok(self.elementary_divisors().iter().fold(BigInt::one(), |p, d| p * d))
    }

    /// A basis of the saturation of the image, as columns of the returned
    /// `rows x rank` matrix.
    pub fn image_saturation(&self) -> Vec<Vec<BigInt>> {
        let (u, d, _) = smith(&self.entries, self.cols);
        let r = (0..self.rows.min(self.cols)).filter(|&i| !d[i][i].is_zero()).count();
        let uinv = unimodular_inverse(&u);
        (0..r).map(|k| uinv.iter().map(|row| row[k].clone()).collect()).collect()
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(u: &IMat) -> IMat {
    let n = u.len();
    let aug: QMat = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = to_q(&u[i]);
            for j in 0..n {
                row.push(if i == j { BigRational::one() } else { BigRational::zero() });
            }
            row
        })
        .collect();
    let (r, _) = rref(&aug, 2 * n);
    r.iter().map(|row| row[n..].iter().map(|x| x.to_integer()).collect()).collect()
}

/// Basis (rows) of the saturated integer kernel `{x in Z^n : a x = 0}`,
/// in Hermite normal form.
pub fn kernel_z(a: &IMat, ncols: usize) -> IMat {
    if a.is_empty() {
        return identity(ncols);
    }
    let (_, d, v) = smith(a, ncols);
    let r = (0..a.len().min(ncols)).filter(|&i| !d[i][i].is_zero()).count();
    let basis: IMat = (r..ncols).map(|j| v.iter().map(|row| row[j].clone()).collect()).collect();
    hnf_rows(&basis, ncols)
}
