//! Spherical data and the combinatorial criteria on them: colored cones,
//! affineness, affine closures, wavefront, orbits, parabolic induction and
//! negligible orbits.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{input, Error, Result};
use crate::geometry::lattice::{qi, rank_q, to_big, to_q, to_q64};
use crate::geometry::{feasible, integral_witness, Cone, LatticeMap, LinearSystem, Rel};
use crate::roots::{dot, RootDatum, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Color {
    pub label: String,
    /// `rho(D)` in `Lambda_X` coordinates.
    pub rho: Vec<i64>,
}

/// `(C, F)`; equality compares `C` as a point set and `F` as a set.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredCone {
    pub cone: Cone,
    pub colors: BTreeSet<String>,
}

impl ColoredCone {
    pub fn new(cone: Cone, colors: impl IntoIterator<Item = String>) -> ColoredCone {
        ColoredCone { cone, colors: colors.into_iter().collect() }
    }

    pub fn trivial(dim: usize) -> ColoredCone {
        ColoredCone { cone: Cone::zero(dim), colors: BTreeSet::new() }
    }
}

/// Outcome of a check, with a human-readable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub detail: String,
}

impl Verdict {
    fn pass(detail: impl Into<String>) -> Verdict {
        Verdict { ok: true, detail: detail.into() }
    }
    fn fail(detail: impl Into<String>) -> Verdict {
        Verdict { ok: false, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AffineVerdict {
    pub affine: bool,
    /// Integral `chi` in `X(X)` coordinates when affine.
    pub witness: Option<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NegligibleReport {
    pub ok: bool,
    /// Each proper subset of spherical roots (by index) with a witnessing
    /// simple root, or `None` where none exists.
    pub certificate: Vec<(Vec<usize>, Option<usize>)>,
}

/// Combinatorial record of a spherical variety. All data are input.
#[derive(Debug, Clone)]
pub struct SphericalDatum {
    pub name: String,
    pub ambient: RootDatum,
    /// `X(X) -> X(A)`, an `n x r` matrix whose columns are a basis of `X(X)`.
    pub lattice_map: LatticeMap,
    pub valuation_cone: Cone,
    pub colors: Vec<Color>,
    pub levi_roots: Vec<usize>,
    /// In `X(X)` coordinates.
    pub spherical_roots: Vec<Weight>,
    pub normalization: Option<String>,
    /// Generators of `W_X`, as matrices acting on `X(X)`.
    pub little_weyl: Option<Vec<Vec<Vec<i64>>>>,
    pub colored_cone: Option<ColoredCone>,
}

impl SphericalDatum {
    /// Checks shapes and labels; mathematical consistency is reported
    /// separately by [`SphericalDatum::consistency`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        ambient: RootDatum,
        lattice_map: LatticeMap,
        valuation_cone: Cone,
        colors: Vec<Color>,
        levi_roots: Vec<usize>,
        spherical_roots: Vec<Weight>,
        colored_cone: Option<ColoredCone>,
    ) -> Result<SphericalDatum> {
        let r = lattice_map.cols;
        if lattice_map.rows != ambient.n {
            return input(format!(
                "lattice_map has {} rows but the group lattice has rank {}",
                lattice_map.rows, ambient.n
            ));
        }
        if valuation_cone.dim() != r {
            return input("valuation_cone: dimension differs from the rank of X(X)");
        }
        let mut labels = BTreeSet::new();
        for c in &colors {
            if c.rho.len() != r {
                return input(format!("color {}: rho has length {} (expected {r})", c.label, c.rho.len()));
            }
            if !labels.insert(c.label.clone()) {
                return input(format!("duplicate color label {}", c.label));
            }
        }
        if let Some(&i) = levi_roots.iter().find(|&&i| i >= ambient.rank_ss()) {
            return input(format!("levi_roots: index {i} out of range"));
        }
        if let Some(g) = spherical_roots.iter().find(|g| g.len() != r) {
            return input(format!("spherical root {g:?} has wrong length"));
        }
        if let Some(cc) = &colored_cone {
            if cc.cone.dim() != r {
                return input("colored_cone: dimension mismatch");
            }
            if let Some(l) = cc.colors.iter().find(|l| !labels.contains(*l)) {
                return input(format!("colored_cone: unknown color {l}"));
            }
        }
        let mut lr = levi_roots;
        lr.sort();
        lr.dedup();
        Ok(SphericalDatum {
            name: name.to_string(),
            ambient,
            lattice_map,
            valuation_cone,
            colors,
            levi_roots: lr,
            spherical_roots,
            normalization: None,
            little_weyl: None,
            colored_cone,
        })
    }

    pub fn with_little_weyl(mut self, gens: Vec<Vec<Vec<i64>>>) -> Result<SphericalDatum> {
        let r = self.rank();
        if gens.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
            return input("little_weyl: matrices must be r x r");
        }
        self.little_weyl = Some(gens);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.lattice_map.cols
    }

    pub fn color(&self, label: &str) -> Option<&Color> {
        self.colors.iter().find(|c| c.label == label)
    }

    pub fn rhos<'a>(&'a self, labels: impl IntoIterator<Item = &'a String>) -> Vec<Vec<i64>> {
        labels.into_iter().filter_map(|l| self.color(l)).map(|c| c.rho.clone()).collect()
    }

    /// The quotient `X(A)^* -> Lambda_X`, rows of `L^T`.
    pub fn quotient_rows(&self) -> Vec<Vec<BigInt>> {
        self.lattice_map.transpose().entries
    }

    /// Spherical roots as characters of `A`.
    pub fn spherical_roots_ambient(&self) -> Vec<Weight> {
        self.spherical_roots
            .iter()
            .map(|g| {
                self.lattice_map
                    .apply(&to_big(g))
                    .iter()
                    .map(|x| x.to_i64().expect("small root"))
                    .collect()
            })
            .collect()
    }

    /// Image of the antidominant Weyl chamber in `Lambda_X ⊗ Q`.
    pub fn antidominant_image(&self) -> Cone {
        let n = self.ambient.n;
        let neg: Vec<Vec<BigInt>> =
            self.ambient.simple_roots.iter().map(|a| a.iter().map(|x| BigInt::from(-x)).collect()).collect();
        let chamber = Cone::new(n, neg).expect("dimension").dual();
        chamber.image(&self.quotient_rows()).expect("dimension")
    }

    /// Internal consistency of the input data. Each failed item is listed.
    pub fn consistency(&self) -> Vec<String> {
        let mut bad = vec![];
        if !self.lattice_map.is_injective() {
            bad.push("lattice_map is not injective".to_string());
        }
        for g in &self.spherical_roots {
            for v in self.valuation_cone.generators() {
                if dot_zi(v, g) > BigInt::zero() {
                    bad.push(format!("spherical root {g:?} pairs positively with valuation {v:?}"));
                }
            }
        }
        if !self.valuation_cone.contains_cone(&self.antidominant_image()) {
            bad.push("valuation cone does not contain the image of the antidominant chamber".into());
        }
        if let Some(w) = &self.little_weyl {
            if !fundamental_domain_sample(self, w) {
                bad.push("sampled W_X-orbit misses the valuation cone".into());
            }
        }
        bad
    }
}

fn dot_zi(a: &[BigInt], b: &[i64]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * BigInt::from(*y)).sum()
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, v)).collect()
}

fn transpose_i64(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let c = m.first().map_or(0, |r| r.len());
    (0..c).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Orbit of `v` under the group generated by `gens`.
fn group_orbit(gens: &[Vec<Vec<i64>>], v: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![v.to_vec()];
    seen.insert(v.to_vec());
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = mat_vec(g, &x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
        if seen.len() > 100_000 {
            break;
        }
    }
    seen
}

/// Every sampled `Lambda_X` point has a `W_X`-conjugate in `V`.
fn fundamental_domain_sample(d: &SphericalDatum, gens: &[Vec<Vec<i64>>]) -> bool {
    let dual_gens: Vec<Vec<Vec<i64>>> = gens.iter().map(|g| transpose_i64(g)).collect();
    Cone::full(d.rank())
        .lattice_points(2)
        .iter()
        .all(|p| group_orbit(&dual_gens, p).iter().any(|x| d.valuation_cone.contains_i64(x)))
}

/// The three colored-cone conditions, in order; the first failure is named.
pub fn validate_colored_cone(d: &SphericalDatum, cc: &ColoredCone) -> Result<Verdict> {
    let r = d.rank();
    if cc.cone.dim() != r {
        return input("colored cone: dimension mismatch");
    }
    if let Some(l) = cc.colors.iter().find(|l| d.color(l).is_none()) {
        return input(format!("colored cone: unknown color {l}"));
    }
    let rho_f = d.rhos(&cc.colors);
    // (i)
    if !cc.cone.is_strictly_convex() {
        return Ok(Verdict::fail("condition (i): cone is not strictly convex"));
    }
    let mut span_gens: Vec<Vec<BigInt>> = rho_f.iter().map(|v| to_big(v)).collect();
    span_gens.extend(d.valuation_cone.generators().iter().cloned());
    let allowed = Cone::new(r, span_gens)?;
    if let Some(g) = cc.cone.generators().iter().find(|g| !allowed.contains_z(g)) {
        return Ok(Verdict::fail(format!(
            "condition (i): generator {g:?} is not in the cone spanned by rho(F) and V"
        )));
    }
    if let Some(v) = rho_f.iter().find(|v| !cc.cone.contains_i64(v)) {
        return Ok(Verdict::fail(format!("condition (i): rho(D) = {v:?} is not in C")));
    }
    // (ii): sum mu_i g_i in V with all mu_i > 0
    let gens = cc.cone.generators();
    let k = gens.len();
    let mut sys = LinearSystem::new(k);
    for i in 0..k {
        let mut e = vec![qi(0); k];
        e[i] = qi(1);
        sys.push(e, Rel::Gt);
    }
    for y in d.valuation_cone.facet_normals() {
        sys.push(gens.iter().map(|g| BigRational::from_integer(crate::geometry::lattice::dot_z(&y, g))).collect(), Rel::Ge);
    }
    for y in d.valuation_cone.orthogonal_basis() {
        sys.push(gens.iter().map(|g| BigRational::from_integer(crate::geometry::lattice::dot_z(&y, g))).collect(), Rel::Eq);
    }
    if k > 0 && feasible(&sys).is_none() {
        return Ok(Verdict::fail("condition (ii): relative interior of C misses V"));
    }
    // (iii)
    if let Some(c) = cc.colors.iter().find(|l| d.color(l).unwrap().rho.iter().all(|&x| x == 0)) {
        return Ok(Verdict::fail(format!("condition (iii): rho({c}) = 0")));
    }
    Ok(Verdict::pass("valid colored cone"))
}

/// The affineness criterion for the simple embedding with colored cone `cc`.
pub fn is_affine(d: &SphericalDatum, cc: &ColoredCone) -> Result<AffineVerdict> {
    let v = validate_colored_cone(d, cc)?;
    if !v.ok {
        return input(format!("invalid colored cone: {}", v.detail));
    }
    let r = d.rank();
    let mut sys = LinearSystem::new(r);
    for g in d.valuation_cone.generators() {
        sys.push_z(g, Rel::Ge);
    }
    for g in cc.cone.generators() {
        sys.push_z(g, Rel::Eq);
    }
    for c in d.colors.iter().filter(|c| !cc.colors.contains(&c.label)) {
        sys.push_i64(&c.rho, Rel::Lt);
    }
    Ok(match feasible(&sys) {
        Some(x) => {
            let w = integral_witness(&x);
            debug_assert!(sys.satisfied_by(&to_q(&w)));
            AffineVerdict { affine: true, witness: Some(w) }
        }
        None => AffineVerdict { affine: false, witness: None },
    })
}

/// Colored cone of the affine closure of the open orbit.
pub fn affine_closure_data(d: &SphericalDatum) -> Result<ColoredCone> {
    let r = d.rank();
    if let Some(c) = d.colors.iter().find(|c| c.rho.iter().all(|&x| x == 0)) {
        return Err(Error::NotQuasiAffine(format!("rho({}) = 0", c.label)));
    }
    let rho_cone = Cone::from_i64(r, &d.colors.iter().map(|c| c.rho.clone()).collect::<Vec<_>>())?;
    if !rho_cone.is_strictly_convex() {
        return Err(Error::NotQuasiAffine("rho(D) spans a cone containing a line".into()));
    }
    // R = {chi >= 0 on V, chi <= 0 on rho(D)}
    let mut g: Vec<Vec<BigInt>> = d.valuation_cone.generators().to_vec();
    g.extend(d.colors.iter().map(|c| c.rho.iter().map(|x| BigInt::from(-x)).collect()));
    let rr = Cone::new(r, g)?.dual();
    let chi0 = rr.interior_point();
    let f: Vec<String> =
        d.colors.iter().filter(|c| dot_zi(&chi0, &c.rho).is_zero()).map(|c| c.label.clone()).collect();
    let cone = Cone::from_i64(r, &d.rhos(&f))?;
    let cc = ColoredCone::new(cone, f);
    let v = validate_colored_cone(d, &cc)?;
    if !v.ok {
        return Err(Error::NotQuasiAffine(format!("affine closure data failed validation: {}", v.detail)));
    }
    Ok(cc)
}

pub fn is_wavefront(d: &SphericalDatum) -> bool {
    d.antidominant_image().same_as(&d.valuation_cone)
}

pub fn arithmetic_multiplicity(d: &SphericalDatum) -> Result<BigInt> {
    d.lattice_map.torsion_order()
}

/// Lattice points of `V` (or `V ∩ C` when `integral_only`) up to ℓ¹ height.
pub fn enumerate_orbits(d: &SphericalDatum, height: u32, integral_only: bool) -> Result<Vec<Vec<i64>>> {
    let pts = d.valuation_cone.lattice_points(height);
    if !integral_only {
        return Ok(pts);
    }
    let cc = d.colored_cone.as_ref().ok_or_else(|| Error::Input("integral orbits need a colored cone".into()))?;
    Ok(pts.into_iter().filter(|p| cc.cone.contains_i64(p)).collect())
}

/// Smallest set of simple roots whose span contains all `weights`.
pub fn support(rd: &RootDatum, weights: &[Weight]) -> Result<Vec<usize>> {
    let mut s = BTreeSet::new();
    for w in weights {
        if w.len() != rd.n {
            return input("support: weight has wrong length");
        }
        let c = rd
            .root_coordinates(&to_q64(w))
            .ok_or_else(|| Error::Input(format!("support: {w:?} is not in the root span")))?;
        s.extend(c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i));
    }
    Ok(s.into_iter().collect())
}

/// `Delta(X) ∪ support(Delta_X)` when it is a proper subset of `Delta`.
pub fn parabolic_induction(d: &SphericalDatum) -> Result<Option<Vec<usize>>> {
    let mut s: BTreeSet<usize> = d.levi_roots.iter().copied().collect();
    s.extend(support(&d.ambient, &d.spherical_roots_ambient())?);
    Ok((s.len() < d.ambient.rank_ss()).then(|| s.into_iter().collect()))
}

/// Rank of central cocharacters' image versus the lineality of `V`.
fn noncentral_lineality_rank(d: &SphericalDatum) -> usize {
    let lin = d.valuation_cone.lineality_basis().len();
    let n = d.ambient.n;
    let rows: Vec<Vec<BigRational>> = d.ambient.simple_roots.iter().map(|a| to_q64(a)).collect();
    let center = if rows.is_empty() {
        crate::geometry::lattice::identity(n)
    } else {
        crate::geometry::lattice::nullspace_z(&rows, n)
    };
    let q = d.quotient_rows();
    let img: Vec<Vec<BigRational>> = center
        .iter()
        .map(|z| q.iter().map(|row| BigRational::from_integer(crate::geometry::lattice::dot_z(row, z))).collect())
        .collect();
    lin - rank_q(&img, d.rank())
}

/// For every proper subset `Θ` of spherical roots, a simple root outside
/// `Delta(X)` and outside `support(Θ)`.
pub fn negligible_orbit_check(d: &SphericalDatum) -> Result<NegligibleReport> {
    if !is_wavefront(d) {
        return Err(Error::HypothesisNotMet("datum is not wavefront".into()));
    }
    if noncentral_lineality_rank(d) != 0 {
        return Err(Error::HypothesisNotMet("valuation cone has non-central lineality".into()));
    }
    let roots = d.spherical_roots_ambient();
    let k = roots.len();
    let mut cert = vec![];
    let mut ok = true;
    for mask in 0..(1usize << k) {
        if mask == (1 << k) - 1 {
            continue;
        }
        let theta: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Weight> = theta.iter().map(|&i| roots[i].clone()).collect();
        let supp = support(&d.ambient, &sub)?;
        let wit = (0..d.ambient.rank_ss()).find(|a| !d.levi_roots.contains(a) && !supp.contains(a));
        ok &= wit.is_some();
        cert.push((theta, wit));
    }
    Ok(NegligibleReport { ok, certificate: cert })
}

/// Rank of `Lambda_X ∩ V ∩ -V`, and the X-positive cone `lineality(V) ∩ C`.
pub fn aut_lineality(d: &SphericalDatum) -> Result<(usize, Option<Cone>)> {
    let lin = d.valuation_cone.lineality_basis();
    let rank = lin.len();
    let cone = match &d.colored_cone {
        Some(cc) => Some(Cone::span(d.rank(), &lin)?.intersect(&cc.cone)?),
        None => None,
    };
    Ok((rank, cone))
}

/// Size of the generic fiber of `X(X)/W_X -> X(A)/W`; needs `W_X`.
pub fn geometric_multiplicity(d: &SphericalDatum) -> Option<usize> {
    let wx = d.little_weyl.as_ref()?;
    let r = d.rank();
    // a generic character
    let chi: Vec<i64> = (0..r).map(|i| 1 + 7 * i as i64 + 3 * (i * i) as i64).collect();
    let lchi: Vec<i64> =
        d.lattice_map.apply(&to_big(&chi)).iter().map(|x| x.to_i64().expect("small")).collect();
    let cols: Vec<Vec<BigRational>> = d.lattice_map.columns().iter().map(|c| to_q(c)).collect();
    let mut preimages = BTreeSet::new();
    for w in d.ambient.weyl_orbit(&lchi) {
        if let Some(x) = crate::geometry::lattice::solve_columns(&cols, &to_q64(&w)) {
            if x.iter().all(|v| v.is_integer()) {
                preimages.insert(x.iter().map(|v| v.to_integer().to_i64().expect("small")).collect::<Vec<i64>>());
            }
        }
    }
    let mut orbits = 0;
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    for p in &preimages {
        if seen.contains(p) {
            continue;
        }
        orbits += 1;
        seen.extend(group_orbit(wx, p));
    }
    Some(orbits)
}

/// Summary used by `describe`.
pub fn describe(d: &SphericalDatum) -> Result<BTreeMap<&'static str, String>> {
    let mut m = BTreeMap::new();
    m.insert("name", d.name.clone());
    m.insert("group", d.ambient.name.clone());
    m.insert("rank", d.rank().to_string());
    m.insert("arithmetic_multiplicity", arithmetic_multiplicity(d)?.to_string());
    m.insert("wavefront", is_wavefront(d).to_string());
    m.insert("aut_lineality_rank", aut_lineality(d)?.0.to_string());
    if let Some(g) = geometric_multiplicity(d) {
        m.insert("geometric_multiplicity", g.to_string());
    }
    let sample: Vec<String> = enumerate_orbits(d, 1, false)?.iter().map(|p| format!("{p:?}")).collect();
    m.insert("lambda_plus_sample", sample.join(" "));
    Ok(m)
}
