//! Fixture files: JSON descriptions of an algebroid, a Nambu structure and an
//! orientation form, with expressions in the coefficient grammar.

use algebroid_core::algebroid::{LieAlgebroid, Weights};
use algebroid_core::coeffring::{parse_rational, RingContext, RingSpec, ScalarExpr};
use algebroid_core::exterior::{AForm, Component, MultiVector};
use algebroid_core::modular::OrientationForm;
use algebroid_core::nambu::{NambuStructure, SampleLevel};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("{path}: cannot read: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {field}: {message}")]
    Validation { path: String, field: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FixtureKind {
    #[default]
    Nambu,
    Dorfman,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnchorSpec {
    /// "identity" (rank = number of coordinates) or "zero".
    Named(String),
    Matrix(Vec<Vec<String>>),
}

/// One structure function: ⟪e_i, e_j⟫ has coefficient `c` on e_k (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureEntry(pub usize, pub usize, pub usize, pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidSpec {
    pub rank: usize,
    pub anchor: AnchorSpec,
    #[serde(default)]
    pub structure: Vec<StructureEntry>,
    #[serde(default)]
    pub weights: Option<Weights>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NambuSpec {
    #[serde(default)]
    pub order: Option<usize>,
    pub pi: Vec<Component>,
}

fn one() -> String {
    "1".into()
}

fn zero() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrientationSpec {
    #[serde(default = "one")]
    pub constant: String,
    #[serde(default = "zero")]
    pub twist: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleForm {
    pub degree: usize,
    pub components: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SamplesSpec {
    #[serde(default)]
    pub level: SampleLevel,
    #[serde(default)]
    pub forms: Vec<SampleForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSpec {
    #[serde(default = "default_degree_bound")]
    pub degree_bound: u32,
    #[serde(default = "default_max_stratum")]
    pub max_stratum: i64,
}

fn default_degree_bound() -> u32 {
    2
}

fn default_max_stratum() -> i64 {
    4
}

impl Default for BoundsSpec {
    fn default() -> Self {
        BoundsSpec { degree_bound: default_degree_bound(), max_stratum: default_max_stratum() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub name: String,
    #[serde(default)]
    pub kind: FixtureKind,
    pub ring: RingSpec,
    pub algebroid: AlgebroidSpec,
    #[serde(default)]
    pub nambu: Option<NambuSpec>,
    #[serde(default)]
    pub orientation: Option<OrientationSpec>,
    #[serde(default)]
    pub samples: SamplesSpec,
    #[serde(default)]
    pub bounds: BoundsSpec,
}

/// A validated fixture with its objects built.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub file: FixtureFile,
    pub alg: LieAlgebroid,
    pub nambu: Option<NambuStructure>,
    pub nu: Option<OrientationForm>,
    pub extra_samples: Vec<AForm>,
}

const BUNDLED: &[(&str, &str)] = &[
    ("r3_standard", include_str!("../fixtures/r3_standard.json")),
    ("r3_exp_twist", include_str!("../fixtures/r3_exp_twist.json")),
    ("r3_x1_scaled", include_str!("../fixtures/r3_x1_scaled.json")),
    ("r4_pi123", include_str!("../fixtures/r4_pi123.json")),
    ("r5_nondecomposable", include_str!("../fixtures/r5_nondecomposable.json")),
    ("so3_point", include_str!("../fixtures/so3_point.json")),
    ("sl2_point", include_str!("../fixtures/sl2_point.json")),
    ("heisenberg_point", include_str!("../fixtures/heisenberg_point.json")),
    ("dorfman_r2", include_str!("../fixtures/dorfman_r2.json")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Reads a fixture from a path, or from the bundled set when no such file exists.
pub fn parse_fixture(path: &str) -> Result<Fixture, FixtureError> {
    let src = if Path::new(path).exists() {
        std::fs::read_to_string(path).map_err(|source| FixtureError::Io { path: path.into(), source })?
    } else if let Some(s) = bundled_source(path) {
        s.to_string()
    } else {
        return Err(FixtureError::Io {
            path: path.into(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or bundled fixture"),
        });
    };
    parse_fixture_str(path, &src)
}

pub fn parse_fixture_str(path: &str, src: &str) -> Result<Fixture, FixtureError> {
    let file: FixtureFile = serde_json::from_str(src).map_err(|e| FixtureError::Parse {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    build(path, file)
}

fn build(path: &str, file: FixtureFile) -> Result<Fixture, FixtureError> {
    let invalid = |field: &str, message: String| FixtureError::Validation {
        path: path.into(),
        field: field.into(),
        message,
    };
    let ctx = RingContext::from_spec(&file.ring).map_err(|e| invalid("ring", e.to_string()))?;
    let p = ctx.nvars();
    let spec = &file.algebroid;
    let m = spec.rank;
    if m == 0 {
        return Err(invalid("algebroid.rank", "rank must be positive".into()));
    }
    let anchor: Vec<Vec<ScalarExpr>> = match &spec.anchor {
        AnchorSpec::Named(s) if s == "identity" => {
            if m != p {
                return Err(invalid("algebroid.anchor", format!("identity anchor needs rank {p}, got {m}")));
            }
            (0..m).map(|i| (0..p).map(|j| ScalarExpr::int((i == j) as i64)).collect()).collect()
        }
        AnchorSpec::Named(s) if s == "zero" => vec![vec![ScalarExpr::zero(); p]; m],
        AnchorSpec::Named(s) => {
            return Err(invalid("algebroid.anchor", format!("unknown anchor `{s}`; use identity, zero or a matrix")))
        }
        AnchorSpec::Matrix(rows) => {
            if rows.len() != m || rows.iter().any(|r| r.len() != p) {
                return Err(invalid("algebroid.anchor", format!("anchor matrix must be {m}×{p}")));
            }
            let mut out = Vec::new();
            for (i, r) in rows.iter().enumerate() {
                let mut row = Vec::new();
                for (j, s) in r.iter().enumerate() {
                    row.push(ctx.parse(s).map_err(|e| invalid(&format!("algebroid.anchor[{i}][{j}]"), e.to_string()))?);
                }
                out.push(row);
            }
            out
        }
    };
    let mut table: Vec<Vec<Vec<Option<ScalarExpr>>>> = vec![vec![vec![None; m]; m]; m];
    for (n, StructureEntry(i, j, k, c)) in spec.structure.iter().enumerate() {
        let field = format!("algebroid.structure[{n}]");
        if [*i, *j, *k].iter().any(|&x| x == 0 || x > m) {
            return Err(invalid(&field, format!("indices must lie in 1..={m}")));
        }
        let v = ctx.parse(c).map_err(|e| invalid(&field, e.to_string()))?;
        let slot = &mut table[i - 1][j - 1][k - 1];
        if slot.is_some() {
            return Err(invalid(&field, format!("c[{i}][{j}][{k}] given twice")));
        }
        *slot = Some(v);
    }
    // A missing mirror entry is implied by antisymmetry; a present one must agree.
    let mut structure = vec![vec![vec![ScalarExpr::zero(); m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                structure[i][j][k] = match (&table[i][j][k], &table[j][i][k]) {
                    (Some(a), _) => a.clone(),
                    (None, Some(b)) => -b,
                    (None, None) => ScalarExpr::zero(),
                };
            }
        }
    }
    let weights = match (&spec.weights, p) {
        (Some(w), _) => Some(w.clone()),
        (None, 0) => Some(Weights { coordinates: vec![], sections: vec![0; m] }),
        (None, _) => None,
    };
    let alg = LieAlgebroid::new(ctx.clone(), anchor, structure, weights)
        .map_err(|e| invalid("algebroid", e.to_string()))?;

    let nambu = match &file.nambu {
        None if file.kind == FixtureKind::Nambu => {
            return Err(invalid("nambu", "a Nambu fixture needs a `nambu` section".into()));
        }
        None => None,
        Some(ns) => {
            let Some(first) = ns.pi.first() else {
                return Err(invalid("nambu.pi", "Π has no components".into()));
            };
            let degree = ns.order.unwrap_or(first.indices.len());
            let pi = MultiVector::from_components(m, degree, &ns.pi, &ctx)
                .map_err(|e| invalid("nambu.pi", e.to_string()))?;
            Some(NambuStructure::new(alg.clone(), pi).map_err(|e| invalid("nambu", e.to_string()))?)
        }
    };
    let nu = match &file.orientation {
        Some(o) => {
            let c = parse_rational(&o.constant).map_err(|e| invalid("orientation.constant", e.to_string()))?;
            let g = ctx
                .parse_poly(&o.twist)
                .map_err(|e| invalid("orientation.twist", e.to_string()))?;
            Some(OrientationForm::new(m, c, g).map_err(|_| invalid("orientation.constant", "must be nonzero".into()))?)
        }
        None => None,
    };
    let mut extra_samples = Vec::new();
    for (i, f) in file.samples.forms.iter().enumerate() {
        let a = AForm::from_components(m, f.degree, &f.components, &ctx)
            .map_err(|e| invalid(&format!("samples.forms[{i}]"), e.to_string()))?;
        extra_samples.push(a);
    }
    Ok(Fixture { file, alg, nambu, nu, extra_samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse() {
        for name in bundled_names() {
            let f = parse_fixture(name).unwrap_or_else(|e| panic!("{e}"));
            assert_eq!(f.file.name, name);
        }
        let r3 = parse_fixture("r3_standard").unwrap();
        assert_eq!(r3.alg.rank(), 3);
        assert_eq!(r3.nambu.unwrap().order(), 3);
    }

    fn with(src: &str, from: &str, to: &str) -> String {
        assert!(src.contains(from), "{from}");
        src.replacen(from, to, 1)
    }

    #[test]
    fn rejects_inconsistent_structure() {
        let src = with(
            bundled_source("so3_point").unwrap(),
            "[1, 2, 3, \"1\"],",
            "[1, 2, 3, \"1\"], [2, 1, 3, \"1\"],",
        );
        let e = parse_fixture_str("so3.json", &src).unwrap_err();
        assert!(matches!(e, FixtureError::Validation { .. }), "{e}");
    }

    #[test]
    fn rejects_out_of_range_pi() {
        let src = with(bundled_source("r4_pi123").unwrap(), "[1, 2, 3]", "[1, 2, 5]");
        let e = parse_fixture_str("r4.json", &src).unwrap_err();
        assert!(e.to_string().contains("nambu.pi"), "{e}");
    }

    #[test]
    fn rejects_low_order_and_reports_position() {
        let src = with(bundled_source("r3_standard").unwrap(), "[1, 2, 3]", "[1, 2]");
        let e = parse_fixture_str("r3.json", &src).unwrap_err();
        assert!(e.to_string().contains("below 3"), "{e}");
        let e = parse_fixture_str("bad.json", "{\n  \"name\": 3\n}").unwrap_err();
        assert!(matches!(e, FixtureError::Parse { line: 2, .. }), "{e}");
    }
}
