//! Basic functions `Phi^0` on `Lambda_X^+`, by route.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::json;

use super::radical::{dual_radical, f_fixed, FFixedRep};
use crate::document::{InputDocument, Route};
use crate::error::{input, Error, Result};
use crate::geometry::lattice::{hnf_rows, to_big};
use crate::roots::{dot, partition_counts, ParabolicDatum, Weight};
use crate::spherical::SphericalDatum;
use crate::QLaurent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Case {
    Borel,
    Pp,
    Smooth,
    Homogeneous,
}

impl Case {
    pub fn tag(self) -> &'static str {
        match self {
            Case::Borel => "UP-Borel",
            Case::Pp => "PP-general",
            Case::Smooth => "smooth",
            Case::Homogeneous => "homogeneous",
        }
    }
}

/// How to evaluate `Phi^0` for one document.
#[derive(Debug, Clone)]
pub struct Plan {
    pub route: Route,
    /// For the horospherical routes; its `ab_rows` are the `Lambda_X`
    /// coordinates, read off the `G` block of the lattice map.
    pub parabolic: Option<ParabolicDatum>,
}

pub fn plan(doc: &InputDocument) -> Result<Plan> {
    let spec = doc.basic_function.as_ref().ok_or_else(|| Error::Input("document has no basic_function block".into()))?;
    match spec.route {
        Route::None => input("no basic-function route for this datum"),
        Route::Smooth | Route::Homogeneous => Ok(Plan { route: spec.route, parabolic: None }),
        Route::Borel | Route::Pp => {
            let k = spec.group_factor.ok_or_else(|| Error::Input("basic_function: group_factor missing".into()))?;
            let offs = doc.factor_offsets()?;
            let (off, g) = offs.get(k).ok_or_else(|| Error::Input(format!("group_factor {k} out of range")))?;
            let levi: Vec<usize> = if spec.route == Route::Borel { vec![] } else { spec.levi.clone() };
            if spec.route == Route::Borel && !spec.levi.is_empty() {
                return input("borel route takes no levi");
            }
            let mut p = ParabolicDatum::new(g, &levi)?;
            let r = doc.lattice_map.first().map_or(0, |row| row.len());
            let rows: Vec<Vec<i64>> = (0..r).map(|j| (0..g.n).map(|i| doc.lattice_map[off + i][j]).collect()).collect();
            for row in &rows {
                if let Some(&j) = p.levi_simple.iter().find(|&&j| dot(row, &g.simple_coroots[j]) != 0) {
                    return input(format!("lattice_map: G block does not vanish on Levi coroot {j}"));
                }
            }
            let h = |m: &[Vec<i64>]| hnf_rows(&m.iter().map(|x| to_big(x)).collect::<Vec<_>>(), g.n);
            if rows.len() != p.ab_rank() || h(&rows) != h(&p.ab_rows) {
                return input("lattice_map: G block is not a basis of the characters of M^ab");
            }
            p.ab_rows = rows;
            Ok(Plan { route: spec.route, parabolic: Some(p) })
        }
    }
}

/// `Phi^0(lambda) = q^{-<rho, lambda>} sum_i q^{-i} K_i(-lambda)` with `lambda`
/// a cocharacter of `T` given through the Borel's coordinates.
pub fn borel_value(p: &ParabolicDatum, theta: &[i64]) -> Result<QLaurent> {
    if !p.levi_simple.is_empty() {
        return input("borel_value needs P = B");
    }
    let g = &p.parent;
    let x = p.lift(theta)?;
    if x.iter().any(|v| !v.is_integer()) {
        return input("stratum is not a cocharacter");
    }
    let lam: Weight = x.iter().map(|v| v.to_integer().to_i64().expect("small")).collect();
    let neg: Weight = lam.iter().map(|v| -v).collect();
    let Some(c) = g.nonneg_coroot_coeffs(&neg) else { return Ok(QLaurent::zero()) };
    let counts = partition_counts(&g.coroot_coeffs, &c);
    let shift = -dot(&g.two_rho(), &lam);
    let mut v = QLaurent::zero();
    for (i, k) in counts.iter().enumerate() {
        v += &QLaurent::monomial(k.clone(), shift - 2 * i as i64);
    }
    Ok(v)
}

/// Weighted count of multisets of parts summing to `target`.
fn weighted_partitions(parts: &[(Vec<i64>, QLaurent)], target: &[i64]) -> QLaurent {
    fn go(
        parts: &[(Vec<i64>, QLaurent)],
        j: usize,
        t: &[i64],
        memo: &mut HashMap<(usize, Vec<i64>), QLaurent>,
    ) -> QLaurent {
        if t.iter().any(|&x| x < 0) {
            return QLaurent::zero();
        }
        if j == parts.len() {
            return if t.iter().all(|&x| x == 0) { QLaurent::one() } else { QLaurent::zero() };
        }
        if let Some(v) = memo.get(&(j, t.to_vec())) {
            return v.clone();
        }
        let (v, w) = &parts[j];
        let mut total = QLaurent::zero();
        let mut cur = t.to_vec();
        let mut wp = QLaurent::one();
        while cur.iter().all(|&x| x >= 0) {
            total += &(&wp * &go(parts, j + 1, &cur, memo));
            for (a, b) in cur.iter_mut().zip(v) {
                *a -= b;
            }
            wp = &wp * w;
        }
        memo.insert((j, t.to_vec()), total.clone());
        total
    }
    go(parts, 0, target, &mut HashMap::new())
}

/// `Phi^0(theta) = q^{-<rho_P, theta~>} sum_i q^{-i} c_i(-theta)`, where `c_i`
/// are the coefficients of `Sym^i` of the restricted `f`-fixed character.
pub fn pp_value(ff: &FFixedRep, theta: &[i64], kappa: i32) -> Result<QLaurent> {
    let p = &ff.parabolic;
    let mut parts = vec![];
    for e in &ff.entries {
        let c = p
            .pos_coords(&e.theta)
            .filter(|c| c.iter().any(|&x| x != 0))
            .ok_or_else(|| Error::Input(format!("radical class {:?} is not positive", e.theta)))?;
        for _ in 0..e.mult {
            parts.push((c.clone(), QLaurent::q_half(kappa as i64 * e.grade - 2)));
        }
    }
    let neg: Weight = theta.iter().map(|v| -v).collect();
    let Some(target) = p.pos_coords(&neg) else { return Ok(QLaurent::zero()) };
    let pair = p.two_rho_p_pairing(theta)?;
    if !pair.is_integer() {
        return input("<2 rho_P, theta> is not integral");
    }
    let shift = -pair.to_integer().to_i64().expect("small");
    Ok(&QLaurent::q_half(shift) * &weighted_partitions(&parts, &target))
}

#[derive(Debug, Clone)]
pub struct BasicFunctionTable {
    pub name: String,
    pub case: Case,
    pub rank: usize,
    pub height: u32,
    pub kappa: i32,
    /// Every point of `Lambda_X^+` up to the height, zeros included.
    pub values: BTreeMap<Weight, QLaurent>,
}

impl BasicFunctionTable {
    pub fn get(&self, l: &[i64]) -> Option<&QLaurent> {
        self.values.get(l)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&Weight, &QLaurent)> {
        self.values.iter().filter(|(_, v)| !v.is_zero())
    }

    /// `Phi^0(0) = 1`.
    pub fn normalized(&self) -> bool {
        self.values.get(&vec![0; self.rank]) == Some(&QLaurent::one())
    }

    /// Nonzero values outside `C(X)`.
    pub fn support_violations(&self, d: &SphericalDatum) -> Vec<Weight> {
        let Some(cc) = &d.colored_cone else { return self.nonzero().map(|(k, _)| k.clone()).collect() };
        self.nonzero().filter(|(k, _)| !cc.cone.contains_i64(k) || !d.valuation_cone.contains_i64(k)).map(|(k, _)| k.clone()).collect()
    }

    fn at_q(v: &QLaurent, q: Option<&BigRational>) -> String {
        match q {
            None => String::new(),
            Some(q) => v.eval(q).map_or("-".into(), |x| x.to_string()),
        }
    }

    pub fn to_tsv(&self, q: Option<&BigRational>) -> String {
        let mut s = String::new();
        let cols: Vec<String> = (1..=self.rank).map(|i| format!("l{i}")).collect();
        let _ = writeln!(s, "{}\tvalue{}", cols.join("\t"), if q.is_some() { "\tat_q" } else { "" });
        for (k, v) in &self.values {
            let coords: Vec<String> = k.iter().map(|x| x.to_string()).collect();
            let _ = write!(s, "{}\t{}", coords.join("\t"), v);
            if q.is_some() {
                let _ = write!(s, "\t{}", Self::at_q(v, q));
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self, q: Option<&BigRational>) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .values
            .iter()
            .map(|(k, v)| {
                let mut r = json!({"lambda": k, "value": v.to_string()});
                if q.is_some() {
                    r["at_q"] = json!(Self::at_q(v, q));
                }
                r
            })
            .collect();
        json!({
            "schema": 1,
            "name": self.name,
            "case": self.case.tag(),
            "rank": self.rank,
            "height": self.height,
            "kappa": self.kappa,
            "q": q.map(|x| x.to_string()),
            "rows": rows,
        })
    }
}

/// Tabulate `Phi^0` on `Lambda_X^+` up to `height`. `case` overrides the
/// document's route where meaningful (a Borel datum may be run through the
/// `PP` formula with an empty Levi).
pub fn table(doc: &InputDocument, case: Option<Case>, height: u32, kappa: i32) -> Result<BasicFunctionTable> {
    let d = doc.to_datum()?;
    let pl = plan(doc)?;
    let default = match pl.route {
        Route::Borel => Case::Borel,
        Route::Pp => Case::Pp,
        Route::Smooth => Case::Smooth,
        Route::Homogeneous => Case::Homogeneous,
        Route::None => unreachable!(),
    };
    let case = case.unwrap_or(default);
    let pts = d.valuation_cone.lattice_points(height);
    let mut values = BTreeMap::new();
    match (case, default) {
        (Case::Smooth, Case::Smooth) => {
            let cc = d.colored_cone.as_ref().ok_or_else(|| Error::Input("smooth route needs a colored cone".into()))?;
            for p in pts {
                let v = if cc.cone.contains_i64(&p) { QLaurent::one() } else { QLaurent::zero() };
                values.insert(p, v);
            }
        }
        (Case::Homogeneous, Case::Homogeneous) => {
            for p in pts {
                let v = if p.iter().all(|&x| x == 0) { QLaurent::one() } else { QLaurent::zero() };
                values.insert(p, v);
            }
        }
        (Case::Borel, Case::Borel) => {
            let p = pl.parabolic.as_ref().expect("plan");
            for l in pts {
                let v = borel_value(p, &l)?;
                values.insert(l, v);
            }
        }
        (Case::Pp, Case::Borel | Case::Pp) => {
            let p = pl.parabolic.as_ref().expect("plan");
            let ff = f_fixed(&dual_radical(p)?)?;
            for l in pts {
                let v = pp_value(&ff, &l, kappa)?;
                values.insert(l, v);
            }
        }
        (c, _) => return input(format!("case {} does not apply to this datum", c.tag())),
    }
    Ok(BasicFunctionTable { name: d.name.clone(), case, rank: d.rank(), height, kappa, values })
}
