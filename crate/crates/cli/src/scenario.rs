//! The JSON scenario format.

use std::collections::BTreeMap;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

/// Multi-index key (`dx^dy`, `d/dz`, `1`) to expression text.
pub type Entries = BTreeMap<String, String>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Chart name to coordinate names.
    #[serde(default)]
    pub charts: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub structures: BTreeMap<String, Structure>,
    #[serde(default)]
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Structure {
    Jacobi {
        chart: String,
        #[serde(default)]
        lambda: Entries,
        #[serde(default)]
        e: Entries,
        #[serde(default)]
        omega: Entries,
    },
    Contact {
        chart: String,
        theta: Entries,
        #[serde(default)]
        omega: Entries,
    },
    Homogeneous {
        chart: String,
        #[serde(default)]
        lambda: Entries,
        #[serde(default)]
        omega: Entries,
        z: Entries,
    },
    Multivector {
        chart: String,
        degree: usize,
        #[serde(default)]
        entries: Entries,
    },
    /// The pair groupoid of a named contact structure.
    PairGroupoid { base: String },
    Groupoid(Box<GroupoidDef>),
    Suspended(Box<SuspendedDef>),
    Apath(PathDef),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Jacobi { .. } => "jacobi",
            Structure::Contact { .. } => "contact",
            Structure::Homogeneous { .. } => "homogeneous",
            Structure::Multivector { .. } => "multivector",
            Structure::PairGroupoid { .. } | Structure::Groupoid(_) => "groupoid",
            Structure::Suspended(_) => "suspended",
            Structure::Apath(_) => "apath",
        }
    }

    /// Names of the other structures this one is built from.
    pub fn dependencies(&self) -> Vec<&str> {
        match self {
            Structure::PairGroupoid { base } => vec![base],
            Structure::Groupoid(g) => g.pair_base.iter().map(String::as_str).collect(),
            Structure::Suspended(s) => vec![&s.of],
            Structure::Apath(p) => vec![&p.structure],
            _ => vec![],
        }
    }
}

/// A smooth map as component expressions in the source coordinates, with an
/// optional right inverse.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDef {
    pub source: String,
    pub target: String,
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposableDef {
    pub chart: String,
    pub pr1: MapDef,
    pub pr2: MapDef,
    pub mult: MapDef,
    pub pair_chart: String,
    pub join: MapDef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDef {
    pub chart: String,
    pub q1: MapDef,
    pub q2: MapDef,
    pub q3: MapDef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDef {
    pub base: String,
    pub total: String,
    pub alpha: MapDef,
    pub beta: MapDef,
    pub iota: MapDef,
    pub eps: MapDef,
    pub composable: ComposableDef,
    pub triple: TripleDef,
    pub r: String,
    pub theta: Entries,
    #[serde(default)]
    pub omega: Entries,
    #[serde(default)]
    pub omega0: Entries,
    /// Contact structure on the base when the model is its pair groupoid in
    /// block layout; enables the block-formula checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_base: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuspendedDef {
    /// The groupoid this is the suspension of.
    pub of: String,
    pub total: String,
    pub base: String,
    pub alpha: MapDef,
    pub beta: MapDef,
    pub composable: String,
    pub pr1: MapDef,
    pub pr2: MapDef,
    pub mult: MapDef,
    pub big_omega: Entries,
    #[serde(default)]
    pub omega0: Entries,
    pub z: Entries,
    pub z0: Entries,
}

fn default_time() -> String {
    "t".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathDef {
    /// A jacobi or contact structure.
    pub structure: String,
    #[serde(default = "default_time")]
    pub time: String,
    pub intervals: usize,
    pub gamma: Vec<String>,
    pub zeta: Vec<String>,
    pub f: String,
}

/// A section `(ζ, f)` of `T*M×ℝ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionDef {
    #[serde(default)]
    pub form: Entries,
    #[serde(default = "zero_text")]
    pub function: String,
}

fn zero_text() -> String {
    "0".into()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub check: String,
    pub structure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sections: Option<Vec<SectionDef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triples: Option<Vec<[String; 3]>>,
    /// Slice coordinate for the projections.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coord: Option<String>,
    /// Slice value, a rational constant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    /// Homogeneous factor `a` for `project_homogeneous`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<String>,
    /// Second path for `concatenation`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    /// Reparameterization `τ(t)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    /// Closed-form value for `cocycle`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    /// Source structure and construction for `derived`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
}

impl Check {
    pub fn new(check: &str, structure: &str) -> Check {
        Check { check: check.into(), structure: structure.into(), ..Check::default() }
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("{} {}", self.check, self.structure))
    }
}

pub fn parse(text: &str, origin: &str) -> Result<Scenario> {
    serde_json::from_str(text).with_context(|| format!("{origin}: schema violation"))
}

pub fn load(path: &std::path::Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text, &path.display().to_string())
}
