//! The JSON input document shared by the CLI and the catalog.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::geometry::{Cone, LatticeMap};
use crate::roots::RootDatum;
use crate::spherical::{Color, ColoredCone, SphericalDatum};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_default() -> u32 {
    SCHEMA_VERSION
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default = "schema_default")]
    pub schema: u32,
    #[serde(default)]
    pub name: String,
    pub group: GroupSpec,
    pub lattice_map: Vec<Vec<i64>>,
    pub valuation_cone: GeneratorList,
    #[serde(default)]
    pub colors: Vec<ColorSpec>,
    #[serde(default)]
    pub levi_roots: Vec<usize>,
    #[serde(default)]
    pub spherical_roots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spherical_root_normalization: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colored_cone: Option<ColoredConeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub little_weyl: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basic_function: Option<BasicFunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<CatalogMeta>,
}

/// Either a list of factors, or one factor given inline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isogeny: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<FactorSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    /// `GL`, `SL`, `PGL` (rank = matrix size), `A` with isogeny, `B`, `C`,
    /// `D`, `G2`, `T`, or `custom`.
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isogeny: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_roots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_coroots: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorList {
    pub generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorSpec {
    pub label: String,
    pub rho: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoredConeSpec {
    pub generators: Vec<Vec<i64>>,
    #[serde(default)]
    pub colors: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Borel,
    Pp,
    Smooth,
    Homogeneous,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicFunctionSpec {
    pub route: Route,
    /// Index of the group factor `G` for the horospherical routes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_factor: Option<usize>,
    /// Levi simple roots (indices within that factor).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levi: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogMeta {
    pub provenance: String,
    pub flags: Flags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare_with: Option<Comparison>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    pub reductive_stabilizer: bool,
    pub wavefront_expected: bool,
    pub smooth_expected: bool,
    pub preflag_case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_lvalue: Option<LValue>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub conjecture: bool,
    /// Expected output of the parabolic-induction check.
    pub induced: Option<Vec<usize>>,
    /// Expected negligible-orbit verdict; `None` when the hypothesis fails.
    pub negligible: Option<bool>,
    pub arith_mult: u64,
    pub aut_rank: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    pub used_in_prop_equal: bool,
}

/// `prod L(rep, shift)^{sign}`; checked for well-formedness only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LValue {
    #[serde(default)]
    pub numerator: Vec<LTerm>,
    #[serde(default)]
    pub denominator: Vec<LTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LTerm {
    pub rep: String,
    /// Rational shift, e.g. `"1/2"`, possibly with `s`: `"s-1/2"`.
    pub shift: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Comparison {
    pub key: String,
    /// Matrix `Lambda_self -> Lambda_other`.
    pub identification: Vec<Vec<i64>>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument> {
        let doc: InputDocument = serde_json::from_str(text).map_err(|e| Error::Input(format!("JSON: {e}")))?;
        if doc.schema != SCHEMA_VERSION {
            return input(format!("unsupported schema version {}", doc.schema));
        }
        Ok(doc)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn factors(&self) -> Result<Vec<RootDatum>> {
        let g = &self.group;
        let specs: Vec<FactorSpec> = if g.factors.is_empty() {
            match (&g.kind, g.rank) {
                (Some(k), Some(r)) => vec![FactorSpec {
                    kind: k.clone(),
                    rank: r,
                    isogeny: g.isogeny.clone(),
                    simple_roots: None,
                    simple_coroots: None,
                }],
                _ => return input("group: give either factors or type and rank"),
            }
        } else {
            g.factors.clone()
        };
        specs.iter().enumerate().map(|(i, f)| build_factor(f).map_err(|e| prefix(e, &format!("group.factors[{i}]")))).collect()
    }

    pub fn ambient(&self) -> Result<RootDatum> {
        let fs = self.factors()?;
        let label: Vec<String> = fs.iter().map(|f| f.name.clone()).collect();
        if fs.len() == 1 {
            return Ok(fs.into_iter().next().unwrap());
        }
        RootDatum::product(&label.join("x"), &fs)
    }

    /// Offsets of each factor's coordinates in the ambient lattice.
    pub fn factor_offsets(&self) -> Result<Vec<(usize, RootDatum)>> {
        let mut off = 0;
        let mut out = vec![];
        for f in self.factors()? {
            let n = f.n;
            out.push((off, f));
            off += n;
        }
        Ok(out)
    }

    pub fn to_datum(&self) -> Result<SphericalDatum> {
        let ambient = self.ambient()?;
        if self.lattice_map.len() != ambient.n {
            return input(format!(
                "lattice_map: {} rows, but the group lattice has rank {}",
                self.lattice_map.len(),
                ambient.n
            ));
        }
        let lm = LatticeMap::from_i64(&self.lattice_map).map_err(|e| prefix(e, "lattice_map"))?;
        let r = lm.cols;
        let vc = Cone::from_i64(r, &self.valuation_cone.generators).map_err(|e| prefix(e, "valuation_cone"))?;
        let colors = self.colors.iter().map(|c| Color { label: c.label.clone(), rho: c.rho.clone() }).collect();
        let cc = match &self.colored_cone {
            Some(c) => Some(ColoredCone::new(
                Cone::from_i64(r, &c.generators).map_err(|e| prefix(e, "colored_cone"))?,
                c.colors.iter().cloned(),
            )),
            None => None,
        };
        let mut d = SphericalDatum::new(
            &self.name,
            ambient,
            lm,
            vc,
            colors,
            self.levi_roots.clone(),
            self.spherical_roots.clone(),
            cc,
        )?;
        d.normalization = self.spherical_root_normalization.clone();
        if let Some(w) = &self.little_weyl {
            d = d.with_little_weyl(w.clone())?;
        }
        Ok(d)
    }
}

fn prefix(e: Error, field: &str) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{field}: {m}")),
        other => other,
    }
}

fn build_factor(f: &FactorSpec) -> Result<RootDatum> {
    let k = f.rank;
    match f.kind.as_str() {
        "custom" => {
            let roots = f.simple_roots.clone().unwrap_or_default();
            let coroots = f.simple_coroots.clone().unwrap_or_default();
            RootDatum::from_simple(&format!("custom{k}"), k, roots, coroots)
        }
        "A" => match f.isogeny.as_deref().unwrap_or("simply_connected") {
            "simply_connected" | "sc" => RootDatum::factor("SL", k + 1),
            "adjoint" | "ad" => RootDatum::factor("PGL", k + 1),
            "GL" | "gl" => RootDatum::factor("GL", k + 1),
            other => input(format!("unknown isogeny {other}")),
        },
        "G2" => RootDatum::factor("G", 2),
        "GL" | "SL" | "PGL" | "B" | "C" | "D" | "T" | "G" => {
            if f.kind != "T" && f.kind != "GL" && k == 0 {
                return input("rank must be at least 1");
            }
            if matches!(f.isogeny.as_deref(), Some(i) if i != "simply_connected" && !f.kind.ends_with("L")) {
                return input(format!("isogeny {:?} not supported for type {}", f.isogeny, f.kind));
            }
            RootDatum::factor(&f.kind, k)
        }
        other => input(format!("unknown group type {other}")),
    }
}

/// Parse `k=v,k=v` assignments.
pub fn parse_assignments(s: &str) -> Result<BTreeMap<String, String>> {
    let mut m = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Input(format!("expected key=value, got {part}")))?;
        m.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(m)
}
