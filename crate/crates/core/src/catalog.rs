//! Fixture data for worked examples, stored in the CLI's JSON schema and
//! compiled into the library.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::document::{Flags, InputDocument, LValue, LTerm};
use crate::error::{input, Error, Result};
use crate::spherical::{affine_closure_data, ColoredCone, SphericalDatum};

const FIXTURES: &[(&str, &str)] = &[
    ("a1-gl1", include_str!("../fixtures/a1-gl1.json")),
    ("a2-sl2", include_str!("../fixtures/a2-sl2.json")),
    ("bump-friedberg", include_str!("../fixtures/bump-friedberg.json")),
    ("godement-jacquet-2", include_str!("../fixtures/godement-jacquet-2.json")),
    ("gsp6-siegel", include_str!("../fixtures/gsp6-siegel.json")),
    ("hecke-gl2", include_str!("../fixtures/hecke-gl2.json")),
    ("kvs-1-15", include_str!("../fixtures/kvs-1-15.json")),
    ("kvs-2-3", include_str!("../fixtures/kvs-2-3.json")),
    ("kvs-2-5", include_str!("../fixtures/kvs-2-5.json")),
    ("pgl2-group", include_str!("../fixtures/pgl2-group.json")),
    ("pp-gl3-21", include_str!("../fixtures/pp-gl3-21.json")),
    ("rankin-selberg", include_str!("../fixtures/rankin-selberg.json")),
    ("tensor-4", include_str!("../fixtures/tensor-4.json")),
    ("triple-product", include_str!("../fixtures/triple-product.json")),
    ("u-sl3", include_str!("../fixtures/u-sl3.json")),
];

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub document: InputDocument,
    pub datum: SphericalDatum,
    pub provenance: String,
    pub flags: Flags,
}

pub fn list_entries() -> Vec<&'static str> {
    FIXTURES.iter().map(|(k, _)| *k).collect()
}

/// Raw JSON of a fixture.
pub fn source(key: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::Input(format!("unknown catalog key {key}")))
}

pub fn load(key: &str) -> Result<CatalogEntry> {
    let document = InputDocument::parse(source(key)?)?;
    let meta = document
        .catalog
        .clone()
        .ok_or_else(|| Error::Input(format!("{key}: fixture has no catalog block")))?;
    let datum = document.to_datum()?;
    Ok(CatalogEntry { key: key.to_string(), document, datum, provenance: meta.provenance, flags: meta.flags })
}

pub fn load_all() -> Result<Vec<CatalogEntry>> {
    list_entries().into_iter().map(load).collect()
}

const PREFLAG_TAGS: [&str; 4] = ["U_P", "PP", "homogeneous", "vector-space"];

/// A shift such as `"1/2"`, `"s1-1/2"` or `"1/2-s"`: signed terms, each a
/// rational or a variable `s`, `s1`, `s2`, ... Returns the variables with
/// their signs and the constant part.
fn parse_shift(s: &str) -> Result<(Vec<(i32, String)>, BigRational)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return input("empty shift");
    }
    let mut vars = vec![];
    let mut constant = BigRational::from_integer(BigInt::from(0));
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => -1,
            b'+' => 1,
            _ if rest.len() == s.len() => 1,
            _ => return input(format!("bad shift {s}")),
        };
        if rest.starts_with(['+', '-']) {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        if let Some(idx) = term.strip_prefix('s') {
            if !idx.chars().all(|c| c.is_ascii_digit()) {
                return input(format!("bad shift variable {term}"));
            }
            vars.push((sign, term.to_string()));
        } else {
            let q: BigRational = term.parse().map_err(|_| Error::Input(format!("bad shift {s}")))?;
            constant += if sign < 0 { -q } else { q };
        }
    }
    Ok((vars, constant))
}

fn check_term(t: &LTerm) -> Result<()> {
    if t.rep.trim().is_empty() {
        return input("empty representation name");
    }
    parse_shift(&t.shift).map(|_| ())
}

pub fn lvalue_well_formed(l: &LValue) -> Result<()> {
    if l.numerator.is_empty() && l.denominator.is_empty() {
        return input("empty L-value");
    }
    l.numerator.iter().chain(&l.denominator).try_for_each(check_term)
}

/// Problems with the metadata itself (tags, L-value syntax, comparison key).
pub fn metadata_problems(e: &CatalogEntry) -> Vec<String> {
    let mut bad = vec![];
    if !PREFLAG_TAGS.contains(&e.flags.preflag_case.as_str()) {
        bad.push(format!("unknown preflag tag {}", e.flags.preflag_case));
    }
    if let Some(l) = &e.flags.expected_lvalue {
        if let Err(err) = lvalue_well_formed(l) {
            bad.push(format!("expected_lvalue: {err}"));
        }
    }
    if let Some(c) = e.document.catalog.as_ref().and_then(|m| m.compare_with.as_ref()) {
        if source(&c.key).is_err() {
            bad.push(format!("compare_with: unknown key {}", c.key));
        }
    }
    if e.provenance.trim().is_empty() {
        bad.push("missing provenance".into());
    }
    bad
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub equal: bool,
    pub mine: ColoredCone,
    pub theirs: ColoredCone,
    /// Colors whose `rho` is killed by the identification.
    pub collapsed: Vec<String>,
    pub detail: String,
}

/// Push the affine-closure colored cone of `key` through its fixture's
/// identification and compare with the target's affine closure.
pub fn compare_affine_closures(key: &str) -> Result<ComparisonReport> {
    let e = load(key)?;
    let cmp = e
        .document
        .catalog
        .as_ref()
        .and_then(|m| m.compare_with.clone())
        .ok_or_else(|| Error::Input(format!("{key} has no comparison")))?;
    let other = load(&cmp.key)?;
    let m = &cmp.identification;
    let (r_src, r_dst) = (e.datum.rank(), other.datum.rank());
    if m.len() != r_dst || m.iter().any(|row| row.len() != r_src) {
        return input(format!("identification must be {r_dst}x{r_src}"));
    }
    let mine = affine_closure_data(&e.datum)?;
    let theirs = affine_closure_data(&other.datum)?;
    let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let pushed = mine.cone.image(&rows)?;
    let apply = |v: &[i64]| -> Vec<i64> { m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect() };
    let mut collapsed = vec![];
    let mut images: BTreeSet<Vec<i64>> = BTreeSet::new();
    for l in &mine.colors {
        let img = apply(&e.datum.color(l).expect("closure color").rho);
        if img.iter().all(|&x| x == 0) {
            collapsed.push(l.clone());
        } else {
            images.insert(img);
        }
    }
    let target: BTreeSet<Vec<i64>> = other.datum.rhos(&theirs.colors).into_iter().collect();
    let cones_equal = pushed.same_as(&theirs.cone);
    let colors_equal = images == target;
    let detail = format!(
        "cone {} ; colors {} ; collapsed {:?}",
        if cones_equal { "equal" } else { "differ" },
        if colors_equal { "equal" } else { "differ" },
        collapsed
    );
    Ok(ComparisonReport { equal: cones_equal && colors_equal, mine, theirs, collapsed, detail })
}
