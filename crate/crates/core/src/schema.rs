//! JSON input documents and their conversion to the domain types.
//!
//! Every document carries `"schema": "realstack/v1"`. Malformed documents are reported with
//! the JSON path of the offending value; well-formed documents that violate a mathematical
//! invariant are reported with the path of the value responsible.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::curve::{
    BranchPoint, ComponentShape, CurveError, RealComponent as CurveComponent, StackyCurveSpec,
};
use crate::gerbe::{GerbeBase, GerbeError, MonodromyGerbe, RealComponent, RealShape, Word};
use crate::group::{parse_group_name, Automorphism, FiniteGroup, GGroup, GroupError};
use crate::quotient::{FiniteGSpace, SpaceError};

pub const SCHEMA: &str = "realstack/v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("malformed input at {path}: {message}")]
    Malformed { path: String, message: String },
    #[error("invalid input at {path}: {reason}")]
    Invalid { path: String, reason: String },
    #[error("unsupported schema {found:?}; expected {SCHEMA:?}")]
    UnsupportedSchema { found: String },
}

impl SchemaError {
    fn invalid(path: impl Into<String>, reason: impl ToString) -> Self {
        SchemaError::Invalid {
            path: path.into(),
            reason: reason.to_string(),
        }
    }
}

/// A group given by catalog name or by an explicit Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    Name(String),
    Table { table: Vec<Vec<usize>> },
}

impl GroupDoc {
    pub fn build(&self, path: &str) -> Result<FiniteGroup, SchemaError> {
        match self {
            GroupDoc::Name(n) => parse_group_name(n),
            GroupDoc::Table { table } => FiniteGroup::from_table(table.clone()),
        }
        .map_err(|e| SchemaError::invalid(path, e))
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDoc::Table { table: g.rows() }
    }
}

/// An automorphism: `"id"`, `"inv"` (inversion, abelian groups only) or an image list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutDoc {
    Named(String),
    Images(Vec<usize>),
}

impl AutDoc {
    pub fn build(&self, g: &FiniteGroup, path: &str) -> Result<Automorphism, SchemaError> {
        match self {
            AutDoc::Named(s) if s == "id" => Ok(Automorphism::identity(g)),
            AutDoc::Named(s) if s == "inv" => Automorphism::inversion(g),
            AutDoc::Named(s) => Err(GroupError::InvalidParameter(format!(
                "unknown automorphism name {s:?}"
            ))),
            AutDoc::Images(v) => Automorphism::new(g, v.clone()),
        }
        .map_err(|e| SchemaError::invalid(path, e))
    }

    pub fn from_aut(a: &Automorphism) -> Self {
        AutDoc::Images(a.images().to_vec())
    }
}

fn default_sigma() -> AutDoc {
    AutDoc::Named("id".into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GGroupDoc {
    pub group: GroupDoc,
    #[serde(default = "default_sigma")]
    pub sigma: AutDoc,
}

impl GGroupDoc {
    pub fn build(&self, path: &str) -> Result<GGroup, SchemaError> {
        let g = self.group.build(&join(path, "group"))?;
        let s = self.sigma.build(&g, &join(path, "sigma"))?;
        GGroup::new(g, s).map_err(|e| SchemaError::invalid(join(path, "sigma"), e))
    }

    pub fn from_ggroup(gg: &GGroup) -> Self {
        GGroupDoc {
            group: GroupDoc::from_group(gg.group()),
            sigma: AutDoc::from_aut(gg.sigma()),
        }
    }
}

fn join(prefix: &str, field: &str) -> String {
    if prefix.is_empty() || prefix == "." {
        field.to_string()
    } else {
        format!("{prefix}.{field}")
    }
}

/// Input of the quotient command: a finite `Γ`-set with real structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub group: GroupDoc,
    #[serde(default = "default_sigma")]
    pub sigma: AutDoc,
    pub sigma_x: Vec<usize>,
    /// `action[g][x] = g·x`.
    pub action: Vec<Vec<usize>>,
    /// Points whose fibers are reported; defaults to every real point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<usize>>,
}

impl SpaceDoc {
    pub fn build(&self) -> Result<FiniteGSpace, SchemaError> {
        let gg = GGroupDoc {
            group: self.group.clone(),
            sigma: self.sigma.clone(),
        }
        .build("")?;
        FiniteGSpace::new(gg, self.sigma_x.clone(), self.action.clone()).map_err(|e| {
            let path = match &e {
                SpaceError::SigmaNotAPermutation { .. } | SpaceError::SigmaNotInvolutive => {
                    "sigma_x".to_string()
                }
                SpaceError::ActionRowCount { .. } | SpaceError::IdentityMoves { .. } => {
                    "action".to_string()
                }
                SpaceError::ActionRowNotAPermutation { g, .. }
                | SpaceError::NotAnAction { g, .. } => format!("action[{g}]"),
                SpaceError::NotEquivariant { g, x } => format!("action[{g}][{x}]"),
            };
            SchemaError::invalid(path, e)
        })
    }

    pub fn from_space(s: &FiniteGSpace, description: Option<String>) -> Self {
        SpaceDoc {
            schema: SCHEMA.into(),
            description,
            group: GroupDoc::from_group(s.ggroup().group()),
            sigma: AutDoc::from_aut(s.ggroup().sigma()),
            sigma_x: s.sigma_x().images().to_vec(),
            action: s.action_rows(),
            fibers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchPointDoc {
    pub stabilizer: GroupDoc,
    pub real: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveComponentDoc {
    pub shape: ComponentShape,
    #[serde(default)]
    pub cut_points: usize,
}

/// A value copied from the literature rather than computed here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalValue {
    pub value: u64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveDoc {
    StackyCurve {
        schema: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        description: Option<String>,
        coarse_h_star: u64,
        #[serde(default = "one")]
        kernel_order: usize,
        #[serde(default)]
        abelian: bool,
        #[serde(default)]
        proper: bool,
        #[serde(default)]
        branch_points: Vec<BranchPointDoc>,
        real_components: Vec<CurveComponentDoc>,
    },
    /// `[A/±1]` for a real abelian variety `A` with `A(ℝ) = (S¹)^g × (ℤ/2)^k`.
    AbelianQuotient {
        schema: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        description: Option<String>,
        dimension: u32,
        real_torsion_rank: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inertia_h_star: Option<ExternalValue>,
    },
}

fn one() -> usize {
    1
}

impl CurveDoc {
    pub fn schema(&self) -> &str {
        match self {
            CurveDoc::StackyCurve { schema, .. } | CurveDoc::AbelianQuotient { schema, .. } => {
                schema
            }
        }
    }

    pub fn build_stacky(&self) -> Option<Result<StackyCurveSpec, SchemaError>> {
        let CurveDoc::StackyCurve {
            coarse_h_star,
            kernel_order,
            abelian,
            proper,
            branch_points,
            real_components,
            ..
        } = self
        else {
            return None;
        };
        let build = || {
            let mut bps = Vec::new();
            for (i, bp) in branch_points.iter().enumerate() {
                let stabilizer = bp
                    .stabilizer
                    .build(&format!("branch_points[{i}].stabilizer"))?;
                bps.push(BranchPoint {
                    stabilizer,
                    real: bp.real,
                    kernel: bp.kernel.clone(),
                });
            }
            let spec = StackyCurveSpec {
                coarse_h_star: *coarse_h_star,
                kernel_order: *kernel_order,
                abelian: *abelian,
                proper: *proper,
                branch_points: bps,
                real_components: real_components
                    .iter()
                    .map(|c| CurveComponent {
                        shape: c.shape,
                        cut_points: c.cut_points,
                    })
                    .collect(),
            };
            spec.validate().map_err(|e| {
                let path = match &e {
                    CurveError::KernelNotCentral { point, .. }
                    | CurveError::AmbiguousKernel { point, .. }
                    | CurveError::NonCyclicRealStabilizer { point }
                    | CurveError::NotAbelianStabilizer { point } => {
                        format!("branch_points[{point}]")
                    }
                    CurveError::InconsistentCutPoints { .. } => "real_components".into(),
                    CurveError::ZeroKernel => "kernel_order".into(),
                    _ => "".into(),
                };
                SchemaError::invalid(path, e)
            })?;
            Ok(spec)
        };
        Some(build())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseDoc {
    ProperCurve {
        genus: u32,
        #[serde(default)]
        standard_generators: bool,
    },
    OpenCurve {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inertia_h_star: Option<u64>,
    },
    TableDriven {
        cover_h_star: BTreeMap<String, u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeDoc {
    Circle,
    Interval,
    Table(BTreeMap<String, u64>),
}

/// Tables are keyed by sizes written as JSON object keys.
fn size_table(t: &BTreeMap<String, u64>, path: &str) -> Result<BTreeMap<usize, u64>, SchemaError> {
    t.iter()
        .map(|(k, &v)| {
            k.parse::<usize>()
                .map(|k| (k, v))
                .map_err(|_| SchemaError::Malformed {
                    path: format!("{path}.{k}"),
                    message: "table keys must be sizes".into(),
                })
        })
        .collect()
}

fn string_table(t: &BTreeMap<usize, u64>) -> BTreeMap<String, u64> {
    t.iter().map(|(k, &v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GerbeComponentDoc {
    #[serde(default)]
    pub label: String,
    pub shape: ShapeDoc,
    #[serde(default)]
    pub loops: Vec<AutDoc>,
    #[serde(default)]
    pub omega: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GerbeDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub fiber: GGroupDoc,
    #[serde(default)]
    pub generators: Vec<AutDoc>,
    pub base: BaseDoc,
    pub components: Vec<GerbeComponentDoc>,
}

impl GerbeDoc {
    pub fn build(&self) -> Result<MonodromyGerbe, SchemaError> {
        let fiber = self.fiber.build("fiber")?;
        let g = fiber.group();
        let generators = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, a)| a.build(g, &format!("generators[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let base = match &self.base {
            BaseDoc::ProperCurve {
                genus,
                standard_generators,
            } => GerbeBase::ProperCurve {
                genus: *genus,
                standard_generators: *standard_generators,
            },
            BaseDoc::OpenCurve { inertia_h_star } => GerbeBase::OpenCurve {
                inertia_h_star: *inertia_h_star,
            },
            BaseDoc::TableDriven { cover_h_star } => GerbeBase::TableDriven {
                cover_h_star: size_table(cover_h_star, "base.cover_h_star")?,
            },
        };
        let mut components = Vec::new();
        for (c, comp) in self.components.iter().enumerate() {
            let loops = comp
                .loops
                .iter()
                .enumerate()
                .map(|(j, a)| a.build(g, &format!("components[{c}].loops[{j}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let shape = match &comp.shape {
                ShapeDoc::Circle => RealShape::Circle,
                ShapeDoc::Interval => RealShape::Interval,
                ShapeDoc::Table(t) => {
                    RealShape::Table(size_table(t, &format!("components[{c}].shape.table"))?)
                }
            };
            components.push(RealComponent {
                label: comp.label.clone(),
                shape,
                loops,
                omega: Word(comp.omega.clone()),
            });
        }
        MonodromyGerbe::new(fiber, generators, base, components).map_err(|e| {
            let path = match &e {
                GerbeError::WordOutOfRange { component, .. }
                | GerbeError::OmegaNotCocycle { component } => {
                    format!("components[{component}].omega")
                }
                GerbeError::LoopNotEquivariant { component, index } => {
                    format!("components[{component}].loops[{index}]")
                }
                GerbeError::IntervalWithLoops { component, .. } => {
                    format!("components[{component}].loops")
                }
                GerbeError::SurfaceRelationBroken(_) => "generators".into(),
                _ => "".into(),
            };
            SchemaError::invalid(path, e)
        })
    }

    pub fn from_gerbe(g: &MonodromyGerbe, description: Option<String>) -> Self {
        let base = match g.base() {
            GerbeBase::ProperCurve {
                genus,
                standard_generators,
            } => BaseDoc::ProperCurve {
                genus: *genus,
                standard_generators: *standard_generators,
            },
            GerbeBase::OpenCurve { inertia_h_star } => BaseDoc::OpenCurve {
                inertia_h_star: *inertia_h_star,
            },
            GerbeBase::TableDriven { cover_h_star } => BaseDoc::TableDriven {
                cover_h_star: string_table(cover_h_star),
            },
        };
        GerbeDoc {
            schema: SCHEMA.into(),
            description,
            fiber: GGroupDoc::from_ggroup(g.fiber()),
            generators: g.generators().iter().map(AutDoc::from_aut).collect(),
            base,
            components: g
                .components()
                .iter()
                .map(|c| GerbeComponentDoc {
                    label: c.label.clone(),
                    shape: match &c.shape {
                        RealShape::Circle => ShapeDoc::Circle,
                        RealShape::Interval => ShapeDoc::Interval,
                        RealShape::Table(t) => ShapeDoc::Table(string_table(t)),
                    },
                    loops: c.loops.iter().map(AutDoc::from_aut).collect(),
                    omega: c.omega.0.clone(),
                })
                .collect(),
        }
    }
}

/// Parses a document after checking its schema tag, reporting the JSON path of any error.
pub fn parse_document<T: DeserializeOwned>(text: &str) -> Result<T, SchemaError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| SchemaError::Malformed {
            path: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
    match value.get("schema") {
        Some(serde_json::Value::String(s)) if s == SCHEMA => {}
        Some(other) => {
            return Err(SchemaError::UnsupportedSchema {
                found: other
                    .as_str()
                    .map_or_else(|| other.to_string(), String::from),
            })
        }
        None => {
            return Err(SchemaError::Malformed {
                path: "schema".into(),
                message: "missing field `schema`".into(),
            })
        }
    }
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        SchemaError::Malformed {
            path,
            message: e.into_inner().to_string(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrong_schema_is_rejected() {
        let err = parse_document::<SpaceDoc>(
            r#"{"schema":"realstack/v0","group":"C2","sigma_x":[0],"action":[[0],[0]]}"#,
        );
        assert_eq!(
            err,
            Err(SchemaError::UnsupportedSchema {
                found: "realstack/v0".into()
            })
        );
    }

    #[test]
    fn malformed_values_carry_their_path() {
        let err = parse_document::<SpaceDoc>(
            r#"{"schema":"realstack/v1","group":"C2","sigma_x":[0],"action":[[0],["a"]]}"#,
        );
        match err {
            Err(SchemaError::Malformed { path, .. }) => assert_eq!(path, "action[1][0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invariant_violations_carry_their_path() {
        let doc: GerbeDoc = parse_document(
            r#"{"schema":"realstack/v1","fiber":{"group":"V4"},"generators":[[0,2,1,3]],
                "base":{"kind":"proper_curve","genus":1},
                "components":[{"shape":"circle","loops":[[0,1,3,2]],"omega":[1]}]}"#,
        )
        .unwrap();
        match doc.build() {
            Err(SchemaError::Invalid { path, .. }) => assert_eq!(path, "components[0].loops[0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn group_tables_are_validated() {
        let doc: SpaceDoc = parse_document(r#"{"schema":"realstack/v1","group":{"table":[[0,1],[1,1]]},"sigma_x":[0],"action":[[0],[0]]}"#).unwrap();
        assert!(matches!(doc.build(), Err(SchemaError::Invalid { path, .. }) if path == "group"));
    }

    #[test]
    fn gerbe_round_trips_through_json() {
        let text = r#"{"schema":"realstack/v1","fiber":{"group":"V4","sigma":"id"},"generators":[[0,2,1,3]],
            "base":{"kind":"table_driven","cover_h_star":{"1":16,"2":24}},
            "components":[{"label":"a","shape":{"table":{"1":3,"2":2}},"loops":[[0,2,1,3]]}]}"#;
        let g = parse_document::<GerbeDoc>(text).unwrap().build().unwrap();
        let back = GerbeDoc::from_gerbe(&g, None);
        let json = serde_json::to_string(&back).unwrap();
        let again = parse_document::<GerbeDoc>(&json).unwrap().build().unwrap();
        assert_eq!(g, again);
    }
}
