//! Split reductive root data, Weyl groups, characters.

pub mod chars;
pub mod parabolic;

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{input, Error, Result};
use crate::geometry::lattice::{qi, solve_columns, to_q64};

pub use chars::{QChar, WeightChar};
pub use parabolic::ParabolicDatum;

pub type Weight = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A root datum in coordinates: characters and cocharacters are both Z^n,
/// paired by the dot product.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub name: String,
    pub n: usize,
    pub simple_roots: Vec<Weight>,
    pub simple_coroots: Vec<Weight>,
    /// Positive roots with their coroots, listed in the same order.
    pub positive_roots: Vec<Weight>,
    pub positive_coroots: Vec<Weight>,
    /// Coefficients of each positive root in the simple roots.
    pub root_coeffs: Vec<Vec<i64>>,
    /// Coefficients of each positive coroot in the simple coroots.
    pub coroot_coeffs: Vec<Vec<i64>>,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub cartan: Vec<Vec<i64>>,
    weyl: OnceLock<Vec<(Vec<Vec<i64>>, i64)>>,
    gram: OnceLock<Vec<Vec<BigRational>>>,
}

impl PartialEq for RootDatum {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.simple_roots == o.simple_roots && self.simple_coroots == o.simple_coroots
    }
}

/// `cartan[i][j] = <alpha_i, alpha_j^vee>` for the finite types in scope.
fn cartan_matrix(kind: char, r: usize) -> Result<Vec<Vec<i64>>> {
    let mut a = vec![vec![0i64; r]; r];
    for i in 0..r {
        a[i][i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match kind {
        'A' => (0..r.saturating_sub(1)).for_each(|i| link(&mut a, i, i + 1)),
        'B' | 'C' => {
            if r < 2 {
                return input(format!("{kind}{r}: rank must be at least 2"));
            }
            (0..r - 1).for_each(|i| link(&mut a, i, i + 1));
            if kind == 'B' {
                // alpha_r short
                a[r - 2][r - 1] = -2;
            } else {
                a[r - 1][r - 2] = -2;
            }
        }
        'D' => {
            if r < 3 {
                return input(format!("D{r}: rank must be at least 3"));
            }
            (0..r - 2).for_each(|i| link(&mut a, i, i + 1));
            link(&mut a, r - 3, r - 1);
        }
        'G' => {
            if r != 2 {
                return input("G2 has rank 2");
            }
            // alpha_1 short, alpha_2 long
            a[0][1] = -1;
            a[1][0] = -3;
        }
        _ => return input(format!("unknown Cartan type {kind}")),
    }
    Ok(a)
}

impl RootDatum {
    /// Build from simple roots and coroots; derives positive roots by
    /// reflecting simple roots.
    pub fn from_simple(name: &str, n: usize, roots: Vec<Weight>, coroots: Vec<Weight>) -> Result<RootDatum> {
        if roots.len() != coroots.len() {
            return input("root datum: roots and coroots differ in number");
        }
        if roots.iter().chain(&coroots).any(|v| v.len() != n) {
            return input("root datum: vector length differs from lattice rank");
        }
        let r = roots.len();
        let cartan: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| dot(&roots[i], &coroots[j])).collect()).collect();
        for i in 0..r {
            if cartan[i][i] != 2 {
                return input(format!("root datum: <alpha_{i}, coroot_{i}> != 2"));
            }
            for j in 0..r {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return input("root datum: not a generalized Cartan matrix");
                }
            }
        }
        // positive roots as coefficient vectors, closed under simple reflections
        let unit = |i: usize| -> Vec<i64> { (0..r).map(|j| (i == j) as i64).collect() };
        let mut seen: BTreeSet<(Vec<i64>, Vec<i64>)> = BTreeSet::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
        for i in 0..r {
            seen.insert((unit(i), unit(i)));
            queue.push_back((unit(i), unit(i)));
        }
        while let Some((c, d)) = queue.pop_front() {
            for i in 0..r {
                // <beta, alpha_i^vee> and <alpha_i, beta^vee>
                let bi: i64 = (0..r).map(|j| c[j] * cartan[j][i]).sum();
                let ib: i64 = (0..r).map(|j| d[j] * cartan[i][j]).sum();
                let mut c2 = c.clone();
                c2[i] -= bi;
                let mut d2 = d.clone();
                d2[i] -= ib;
                if c2.iter().all(|&x| x >= 0) && c2.iter().any(|&x| x > 0) && !seen.contains(&(c2.clone(), d2.clone())) {
                    if seen.len() > 400 {
                        return input("root datum: root system is not of finite type");
                    }
                    seen.insert((c2.clone(), d2.clone()));
                    queue.push_back((c2, d2));
                }
            }
        }
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> = seen.into_iter().collect();
        pos.sort_by_key(|(c, _)| (c.iter().sum::<i64>(), std::cmp::Reverse(c.clone())));
        let comb = |coef: &[i64], basis: &[Weight]| -> Weight {
            (0..n).map(|k| coef.iter().zip(basis).map(|(a, b)| a * b[k]).sum()).collect()
        };
        let positive_roots = pos.iter().map(|(c, _)| comb(c, &roots)).collect();
        let positive_coroots = pos.iter().map(|(_, d)| comb(d, &coroots)).collect();
        Ok(RootDatum {
            name: name.to_string(),
            n,
            simple_roots: roots,
            simple_coroots: coroots,
            positive_roots,
            positive_coroots,
            root_coeffs: pos.iter().map(|(c, _)| c.clone()).collect(),
            coroot_coeffs: pos.iter().map(|(_, d)| d.clone()).collect(),
            cartan,
            weyl: OnceLock::new(),
            gram: OnceLock::new(),
        })
    }

    /// One factor: `GLn`, `SLn`, `PGLn`, `Bn`, `Cn`, `Dn`, `G2`, `Tn`.
    pub fn factor(kind: &str, k: usize) -> Result<RootDatum> {
        let name = format!("{kind}{k}");
        match kind {
            "T" => RootDatum::from_simple(&name, k, vec![], vec![]),
            "GL" => {
                if k == 0 {
                    return input("GL0");
                }
                let e = |i: usize| -> Weight { (0..k).map(|j| (i == j) as i64).collect() };
                let roots: Vec<Weight> =
                    (0..k - 1).map(|i| e(i).iter().zip(e(i + 1)).map(|(a, b)| a - b).collect()).collect();
                RootDatum::from_simple(&name, k, roots.clone(), roots)
            }
            "SL" | "PGL" => {
                if k < 2 {
                    return input(format!("{kind}{k}: need n >= 2"));
                }
                let a = cartan_matrix('A', k - 1)?;
                Self::from_cartan(&name, &a, kind == "PGL")
            }
            "B" | "C" | "D" | "G" => {
                let a = cartan_matrix(kind.chars().next().unwrap(), k)?;
                Self::from_cartan(&name, &a, false)
            }
            _ => input(format!("unknown group label {kind}{k}")),
        }
    }

    /// Simply connected form (fundamental-weight coordinates, coroots the
    /// standard basis) or, with `adjoint`, the adjoint form (simple-root
    /// coordinates).
    fn from_cartan(name: &str, a: &[Vec<i64>], adjoint: bool) -> Result<RootDatum> {
        let r = a.len();
        let e = |i: usize| -> Weight { (0..r).map(|j| (i == j) as i64).collect() };
        if adjoint {
            let coroots = (0..r).map(|j| (0..r).map(|i| a[i][j]).collect()).collect();
            RootDatum::from_simple(name, r, (0..r).map(e).collect(), coroots)
        } else {
            RootDatum::from_simple(name, r, a.to_vec(), (0..r).map(e).collect())
        }
    }

    /// Direct product, concatenating coordinates.
    pub fn product(name: &str, fs: &[RootDatum]) -> Result<RootDatum> {
        let n: usize = fs.iter().map(|f| f.n).sum();
        let mut roots = vec![];
        let mut coroots = vec![];
        let mut off = 0;
        for f in fs {
            let pad = |v: &Weight| -> Weight {
                let mut w = vec![0; n];
                w[off..off + f.n].copy_from_slice(v);
                w
            };
            roots.extend(f.simple_roots.iter().map(pad));
            coroots.extend(f.simple_coroots.iter().map(pad));
            off += f.n;
        }
        RootDatum::from_simple(name, n, roots, coroots)
    }

    /// Parse labels such as `SL2`, `GL3`, `GL1xSL2`, `C2`, `G2`, `A1xA1`.
    pub fn parse(label: &str) -> Result<RootDatum> {
        let parts: Vec<&str> = label.split(['x', '×', '*']).map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
        if parts.is_empty() {
            return input("empty group label");
        }
        let mut fs = vec![];
        for p in &parts {
            let p = p.replace('_', "");
            let split = p.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::Input(format!("bad label {p}")))?;
            let (kind, num) = p.split_at(split);
            let k: usize = num.parse().map_err(|_| Error::Input(format!("bad label {p}")))?;
            let f = match kind {
                "A" => RootDatum::factor("SL", k + 1)?,
                "G" if k == 2 => RootDatum::factor("G", 2)?,
                "G" => return input(format!("bad label {p}")),
                "Sp" if k % 2 == 0 && k >= 4 => RootDatum::factor("C", k / 2)?,
                "Sp" => return input(format!("bad label {p}")),
                _ => RootDatum::factor(kind, k)?,
            };
            fs.push(f);
        }
        if fs.len() == 1 {
            let mut f = fs.pop().unwrap();
            f.name = label.to_string();
            return Ok(f);
        }
        RootDatum::product(label, &fs)
    }

    pub fn rank_ss(&self) -> usize {
        self.simple_roots.len()
    }

    /// `2 rho` (sum of positive roots).
    pub fn two_rho(&self) -> Weight {
        sum_vecs(&self.positive_roots, self.n)
    }

    /// `2 rho^vee` (sum of positive coroots).
    pub fn two_rho_check(&self) -> Weight {
        sum_vecs(&self.positive_coroots, self.n)
    }

    pub fn reflect(&self, i: usize, w: &[i64]) -> Weight {
        let c = dot(w, &self.simple_coroots[i]);
        w.iter().zip(&self.simple_roots[i]).map(|(a, b)| a - c * b).collect()
    }

    pub fn coreflect(&self, i: usize, v: &[i64]) -> Weight {
        let c = dot(&self.simple_roots[i], v);
        v.iter().zip(&self.simple_coroots[i]).map(|(a, b)| a - c * b).collect()
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        self.simple_coroots.iter().all(|c| dot(w, c) >= 0)
    }

    /// Dominant conjugate and the parity of the number of reflections used.
    pub fn to_dominant(&self, w: &[i64]) -> (Weight, i64) {
        let mut v = w.to_vec();
        let mut sign = 1;
        loop {
            match (0..self.rank_ss()).find(|&i| dot(&v, &self.simple_coroots[i]) < 0) {
                Some(i) => {
                    v = self.reflect(i, &v);
                    sign = -sign;
                }
                None => return (v, sign),
            }
        }
    }

    pub fn weyl_orbit(&self, w: &[i64]) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        let mut q = VecDeque::new();
        seen.insert(w.to_vec());
        q.push_back(w.to_vec());
        while let Some(v) = q.pop_front() {
            for i in 0..self.rank_ss() {
                let u = self.reflect(i, &v);
                if seen.insert(u.clone()) {
                    q.push_back(u);
                }
            }
        }
        seen
    }

    /// Weyl group elements as matrices acting on characters, with signs.
    pub fn weyl_group(&self) -> &[(Vec<Vec<i64>>, i64)] {
        self.weyl.get_or_init(|| {
            let n = self.n;
            let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
            let gens: Vec<Vec<Vec<i64>>> = (0..self.rank_ss())
                .map(|k| {
                    (0..n)
                        .map(|r| {
                            (0..n)
                                .map(|c| (r == c) as i64 - self.simple_roots[k][r] * self.simple_coroots[k][c])
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
            let mut out = vec![];
            let mut q = VecDeque::new();
            seen.insert(id.clone());
            q.push_back((id, 1));
            while let Some((m, s)) = q.pop_front() {
                out.push((m.clone(), s));
                for g in &gens {
                    let p: Vec<Vec<i64>> =
                        (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| g[r][k] * m[k][c]).sum()).collect()).collect();
                    if seen.insert(p.clone()) {
                        q.push_back((p, -s));
                    }
                }
            }
            out
        })
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl_group().len()
    }

    /// W-invariant positive definite form on characters (averaged dot product).
    pub fn gram(&self) -> &Vec<Vec<BigRational>> {
        self.gram.get_or_init(|| {
            let n = self.n;
            let mut g = vec![vec![0i64; n]; n];
            for (m, _) in self.weyl_group() {
                for i in 0..n {
                    for j in 0..n {
                        g[i][j] += (0..n).map(|k| m[k][i] * m[k][j]).sum::<i64>();
                    }
                }
            }
            g.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
        })
    }

    pub fn form(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        let g = self.gram();
        let mut s = BigRational::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                s += &a[i] * &g[i][j] * &b[j];
            }
        }
        s
    }

    /// Coefficients of `w` in the simple roots, if `w` is in their rational span.
    pub fn root_coordinates(&self, w: &[BigRational]) -> Option<Vec<BigRational>> {
        let cols: Vec<Vec<BigRational>> = self.simple_roots.iter().map(|r| to_q64(r)).collect();
        solve_columns(&cols, w)
    }

    pub fn coroot_coordinates(&self, w: &[BigRational]) -> Option<Vec<BigRational>> {
        let cols: Vec<Vec<BigRational>> = self.simple_coroots.iter().map(|r| to_q64(r)).collect();
        solve_columns(&cols, w)
    }

    /// Integral nonnegative coefficients in simple roots, if they exist.
    pub fn nonneg_root_coeffs(&self, w: &[i64]) -> Option<Vec<i64>> {
        integral_nonneg(self.root_coordinates(&to_q64(w))?)
    }

    pub fn nonneg_coroot_coeffs(&self, w: &[i64]) -> Option<Vec<i64>> {
        integral_nonneg(self.coroot_coordinates(&to_q64(w))?)
    }

    /// The dual root datum (roots and coroots exchanged).
    pub fn dual(&self) -> RootDatum {
        RootDatum::from_simple(
            &format!("dual({})", self.name),
            self.n,
            self.simple_coroots.clone(),
            self.simple_roots.clone(),
        )
        .expect("dual of a valid root datum")
    }

    /// Levi sub-datum on a subset of simple roots.
    pub fn levi(&self, subset: &[usize]) -> Result<RootDatum> {
        if subset.iter().any(|&i| i >= self.rank_ss()) {
            return input("Levi subset: simple root index out of range");
        }
        RootDatum::from_simple(
            &format!("{}|M", self.name),
            self.n,
            subset.iter().map(|&i| self.simple_roots[i].clone()).collect(),
            subset.iter().map(|&i| self.simple_coroots[i].clone()).collect(),
        )
    }
}

fn integral_nonneg(c: Vec<BigRational>) -> Option<Vec<i64>> {
    c.iter()
        .map(|x| if x.is_integer() { x.to_integer().to_i64().filter(|v| *v >= 0) } else { None })
        .collect()
}

pub fn sum_vecs(vs: &[Weight], n: usize) -> Weight {
    let mut s = vec![0i64; n];
    for v in vs {
        for (a, b) in s.iter_mut().zip(v) {
            *a += b;
        }
    }
    s
}

/// `#{multisets of positive elements (given as coefficient vectors) summing to
/// target}`, graded by the number of parts: entry `i` counts `i`-part sums.
pub fn partition_counts(parts: &[Vec<i64>], target: &[i64]) -> Vec<BigInt> {
    if target.iter().any(|&x| x < 0) {
        return vec![];
    }
    let r = target.len();
    let dims: Vec<usize> = target.iter().map(|&x| x as usize + 1).collect();
    let size: usize = dims.iter().product();
    let index = |v: &[usize]| -> usize {
        let mut k = 0;
        for i in 0..r {
            k = k * dims[i] + v[i];
        }
        k
    };
    let maxparts: usize = target.iter().map(|&x| x as usize).sum::<usize>() + 1;
    // table[idx][i]
    let mut table: Vec<Vec<BigInt>> = vec![vec![]; size];
    table[index(&vec![0; r])] = vec![BigInt::from(1)];
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    for d in &dims {
        all = all.into_iter().flat_map(|p| (0..*d).map(move |x| { let mut q = p.clone(); q.push(x); q })).collect();
    }
    for part in parts {
        if part.iter().all(|&x| x == 0) {
            continue;
        }
        // unbounded knapsack, increasing order
        for v in &all {
            let prev: Option<Vec<usize>> = v.iter().zip(part).map(|(&a, &b)| if (a as i64) >= b { Some((a as i64 - b) as usize) } else { None }).collect();
            let Some(prev) = prev else { continue };
            let src = table[index(&prev)].clone();
            if src.is_empty() {
                continue;
            }
            let dst = &mut table[index(v)];
            if dst.len() < src.len() + 1 {
                dst.resize(src.len() + 1, BigInt::zero());
            }
            for (i, c) in src.iter().enumerate() {
                if i + 1 < maxparts + 1 {
                    dst[i + 1] += c;
                }
            }
        }
    }
    let mut out = table[index(&target.iter().map(|&x| x as usize).collect::<Vec<_>>())].clone();
    while out.last().is_some_and(|x| x.is_zero()) {
        out.pop();
    }
    out
}
