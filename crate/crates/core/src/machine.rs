//! Machine descriptions and their validation.
//!
//! [`MachineSpec`] is the raw, serialisable description (it is also the
//! on-disk JSON schema). [`validate_machine`] turns it into a [`Machine`],
//! collecting every violated constraint rather than stopping at the first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evolution::Configuration;
use crate::expr::{Expression, ParseError};
use crate::ids::{ArrowId, ComputonId, DataTypeId, VertexId};
use crate::neighbourhood::{adjacency, derive_neighbourhoods, NeighbourhoodTable};
use crate::quiver::Quiver;
use crate::rules::{check_range, resolve_named, RuleError, RuleSet};

/// Optional value-domain tag of a data type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Abstract,
    Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataTypeDecl {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semantics: Option<Semantics>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputonDecl {
    pub id: String,
    pub dom: String,
    pub cod: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDecl {
    pub id: String,
    pub data_type: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDecl {
    pub id: String,
    pub source: String,
    pub target: String,
    pub computon: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDecl {
    pub vertices: Vec<VertexDecl>,
    pub arrows: Vec<ArrowDecl>,
}

/// A rule number or a rule name such as `"XOR"` or `"RULE54"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RuleValue {
    Number(u32),
    Name(String),
}

impl From<u8> for RuleValue {
    fn from(n: u8) -> Self {
        RuleValue::Number(n as u32)
    }
}

impl From<&str> for RuleValue {
    fn from(s: &str) -> Self {
        RuleValue::Name(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RulesDecl {
    pub delta1: RuleValue,
    pub delta2: RuleValue,
    pub delta3: RuleValue,
    pub delta4: RuleValue,
}

/// Initial configuration: a `'1'`/`'0'` string in arrow order, or an
/// explicit per-arrow object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConfigDecl {
    Bits(String),
    States(BTreeMap<String, u8>),
}

/// Raw machine description, as found in a machine file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineSpec {
    pub data_types: Vec<DataTypeDecl>,
    pub computons: Vec<ComputonDecl>,
    pub quiver: QuiverDecl,
    pub rules: RulesDecl,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_configuration: Option<ConfigDecl>,
}

impl MachineSpec {
    /// A machine description over `q` with one data type `d_<vertex>` per vertex and one
    /// computon `f_<arrow>` per arrow, typed to satisfy μ.
    pub fn for_quiver(q: &Quiver, rules: RuleSet, initial: &Configuration) -> Self {
        let dt = |v: &VertexId| format!("d_{v}");
        MachineSpec {
            data_types: q
                .vertices()
                .iter()
                .map(|v| DataTypeDecl {
                    id: dt(v),
                    semantics: None,
                })
                .collect(),
            computons: (0..q.arrow_count())
                .map(|a| ComputonDecl {
                    id: format!("f_{}", q.arrows()[a]),
                    dom: dt(&q.vertices()[q.source_index(a)]),
                    cod: dt(&q.vertices()[q.target_index(a)]),
                    expr: None,
                })
                .collect(),
            quiver: QuiverDecl {
                vertices: q
                    .vertices()
                    .iter()
                    .map(|v| VertexDecl {
                        id: v.to_string(),
                        data_type: dt(v),
                    })
                    .collect(),
                arrows: (0..q.arrow_count())
                    .map(|a| ArrowDecl {
                        id: q.arrows()[a].to_string(),
                        source: q.vertices()[q.source_index(a)].to_string(),
                        target: q.vertices()[q.target_index(a)].to_string(),
                        computon: format!("f_{}", q.arrows()[a]),
                    })
                    .collect(),
            },
            rules: RulesDecl {
                delta1: rules.delta1.into(),
                delta2: rules.delta2.into(),
                delta3: rules.delta3.into(),
                delta4: rules.delta4.into(),
            },
            initial_configuration: Some(ConfigDecl::Bits(initial.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataType {
    pub id: DataTypeId,
    pub semantics: Option<Semantics>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computon {
    pub id: ComputonId,
    pub dom: DataTypeId,
    pub cod: DataTypeId,
    /// Source text of the body, kept verbatim for re-serialisation.
    pub expr_text: Option<String>,
    pub expr: Option<Expression>,
}

/// One violated machine constraint. Displays name the offending ids.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("InvalidId({kind} {id:?})")]
    InvalidId { kind: &'static str, id: String },
    #[error("DuplicateId({kind} {id})")]
    DuplicateId { kind: &'static str, id: String },
    #[error("NoDataTypes: the set of data types is empty")]
    NoDataTypes,
    #[error("NoComputons: the set of computons is empty")]
    NoComputons,
    #[error("UnknownDataType({owner}): {id} is not declared")]
    UnknownDataType { owner: String, id: String },
    #[error("UnknownVertex({arrow}): {id} is not declared")]
    UnknownVertex { arrow: String, id: String },
    #[error("UnknownComputon({arrow}): {id} is not declared")]
    UnknownComputon { arrow: String, id: String },
    #[error("DomainEqualsCodomain({0}): dom and cod coincide")]
    DomainEqualsCodomain(ComputonId),
    #[error("DuplicateCodomain({0}, {1}): computons share a codomain")]
    DuplicateCodomain(ComputonId, ComputonId),
    #[error("Loop({0}): arrow source equals its target")]
    Loop(ArrowId),
    #[error("CyclicQuiver: the quiver contains a directed cycle")]
    CyclicQuiver,
    #[error("DuplicateTarget({0}, {1}): arrows share a target vertex")]
    DuplicateTarget(ArrowId, ArrowId),
    #[error("MultipleRightNeighbours({arrow}): {}", join(neighbours))]
    MultipleRightNeighbours {
        arrow: ArrowId,
        neighbours: Vec<ArrowId>,
    },
    #[error("NonInjectiveMu0({data_type}): assigned to {}", join(vertices))]
    NonInjectiveMu0 {
        data_type: DataTypeId,
        vertices: Vec<VertexId>,
    },
    #[error("NonSurjectiveMu0({0}): no vertex represents this data type")]
    NonSurjectiveMu0(DataTypeId),
    #[error("NonInjectiveMu1({computon}): assigned to {}", join(arrows))]
    NonInjectiveMu1 {
        computon: ComputonId,
        arrows: Vec<ArrowId>,
    },
    #[error("NonSurjectiveMu1({0}): no arrow represents this computon")]
    NonSurjectiveMu1(ComputonId),
    #[error("TypeMismatch({arrow}): computon {computon} is {dom}->{cod} but the arrow joins {source_type}->{target_type}")]
    TypeMismatch {
        arrow: ArrowId,
        computon: ComputonId,
        dom: DataTypeId,
        cod: DataTypeId,
        source_type: DataTypeId,
        target_type: DataTypeId,
    },
    #[error("InvalidRule({slot}): {error}")]
    InvalidRule {
        slot: &'static str,
        error: RuleError,
    },
    #[error("InvalidExpression({computon}): {error}")]
    InvalidExpression {
        computon: ComputonId,
        error: ParseError,
    },
    #[error("MissingConfiguration: no initial configuration given")]
    MissingConfiguration,
    #[error("IncompleteConfiguration: no state for {}", join(.0))]
    IncompleteConfiguration(Vec<ArrowId>),
    #[error("IncompleteConfiguration: expected {expected} states, found {found}")]
    ConfigurationLength { expected: usize, found: usize },
    #[error("InvalidConfiguration: {0}")]
    InvalidConfiguration(String),
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// All violations found while validating a [`MachineSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", self.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"))]
pub struct ValidationErrors(pub Vec<Violation>);

impl ValidationErrors {
    pub fn violations(&self) -> &[Violation] {
        &self.0
    }
}

/// A validated composition machine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Machine {
    data_types: Vec<DataType>,
    computons: Vec<Computon>,
    quiver: Quiver,
    vertex_type: Vec<usize>,
    arrow_computon: Vec<usize>,
    neighbourhoods: NeighbourhoodTable,
    rules: RuleSet,
    initial: Configuration,
    data_type_index: HashMap<DataTypeId, usize>,
    computon_index: HashMap<ComputonId, usize>,
}

impl Machine {
    pub fn data_types(&self) -> &[DataType] {
        &self.data_types
    }

    pub fn computons(&self) -> &[Computon] {
        &self.computons
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn neighbourhoods(&self) -> &NeighbourhoodTable {
        &self.neighbourhoods
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn initial_configuration(&self) -> &Configuration {
        &self.initial
    }

    /// Same machine with a different initial configuration.
    pub fn with_initial(&self, c: Configuration) -> Result<Machine, crate::ConfigurationError> {
        c.check_len(self.quiver.arrow_count())?;
        Ok(Machine {
            initial: c,
            ..self.clone()
        })
    }

    pub fn data_type_index(&self, id: &DataTypeId) -> Option<usize> {
        self.data_type_index.get(id).copied()
    }

    pub fn computon_index(&self, id: &ComputonId) -> Option<usize> {
        self.computon_index.get(id).copied()
    }

    pub fn computon(&self, id: &ComputonId) -> Option<&Computon> {
        self.computon_index(id).map(|i| &self.computons[i])
    }

    pub fn data_type(&self, id: &DataTypeId) -> Option<&DataType> {
        self.data_type_index(id).map(|i| &self.data_types[i])
    }

    /// μ0 on a vertex index, as a data-type index.
    pub fn vertex_type(&self, vertex: usize) -> usize {
        self.vertex_type[vertex]
    }

    /// μ1 on an arrow index, as a computon index.
    pub fn arrow_computon(&self, arrow: usize) -> usize {
        self.arrow_computon[arrow]
    }

    /// Canonical raw description: rules as numbers, configuration as a
    /// bit string, everything in declaration order.
    pub fn to_spec(&self) -> MachineSpec {
        let q = &self.quiver;
        MachineSpec {
            data_types: self
                .data_types
                .iter()
                .map(|d| DataTypeDecl {
                    id: d.id.to_string(),
                    semantics: d.semantics,
                })
                .collect(),
            computons: self
                .computons
                .iter()
                .map(|f| ComputonDecl {
                    id: f.id.to_string(),
                    dom: f.dom.to_string(),
                    cod: f.cod.to_string(),
                    expr: f.expr_text.clone(),
                })
                .collect(),
            quiver: QuiverDecl {
                vertices: q
                    .vertices()
                    .iter()
                    .enumerate()
                    .map(|(i, v)| VertexDecl {
                        id: v.to_string(),
                        data_type: self.data_types[self.vertex_type[i]].id.to_string(),
                    })
                    .collect(),
                arrows: q
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(i, a)| ArrowDecl {
                        id: a.to_string(),
                        source: q.vertices()[q.source_index(i)].to_string(),
                        target: q.vertices()[q.target_index(i)].to_string(),
                        computon: self.computons[self.arrow_computon[i]].id.to_string(),
                    })
                    .collect(),
            },
            rules: RulesDecl {
                delta1: self.rules.delta1.into(),
                delta2: self.rules.delta2.into(),
                delta3: self.rules.delta3.into(),
                delta4: self.rules.delta4.into(),
            },
            initial_configuration: Some(ConfigDecl::Bits(self.initial.to_string())),
        }
    }
}

/// Declares ids of one kind, reporting invalid tokens and duplicates.
fn index_ids<T, F>(
    kind: &'static str,
    ids: impl Iterator<Item = String>,
    make: F,
    out: &mut Vec<Violation>,
) -> (Vec<Option<T>>, HashMap<String, usize>)
where
    F: Fn(String) -> Option<T>,
{
    let mut parsed = Vec::new();
    let mut index = HashMap::new();
    for (i, raw) in ids.enumerate() {
        if index.contains_key(&raw) {
            out.push(Violation::DuplicateId {
                kind,
                id: raw.clone(),
            });
            parsed.push(None);
            continue;
        }
        match make(raw.clone()) {
            Some(id) => {
                index.insert(raw, i);
                parsed.push(Some(id));
            }
            None => {
                out.push(Violation::InvalidId { kind, id: raw });
                parsed.push(None);
            }
        }
    }
    (parsed, index)
}

fn resolve_rule(slot: &'static str, arity: u8, value: &RuleValue, out: &mut Vec<Violation>) -> u8 {
    let res = match value {
        RuleValue::Number(n) => check_range(arity, *n),
        RuleValue::Name(name) => resolve_named(name, arity),
    };
    res.unwrap_or_else(|error| {
        out.push(Violation::InvalidRule { slot, error });
        0
    })
}

/// Validates a raw description against every machine constraint.
///
/// Checks: non-empty D and F; acyclic, loop-free quiver; pairwise distinct
/// arrow targets and computon codomains; `dom ≠ cod`; μ0 and μ1 bijective
/// and type-respecting; at most one right neighbour per arrow; a total
/// initial configuration.
pub fn validate_machine(spec: &MachineSpec) -> Result<Machine, ValidationErrors> {
    let mut out = Vec::new();

    let (dt_ids, dt_index) = index_ids(
        "data type",
        spec.data_types.iter().map(|d| d.id.clone()),
        |s| DataTypeId::new(s).ok(),
        &mut out,
    );
    let (f_ids, f_index) = index_ids(
        "computon",
        spec.computons.iter().map(|f| f.id.clone()),
        |s| ComputonId::new(s).ok(),
        &mut out,
    );
    let (v_ids, v_index) = index_ids(
        "vertex",
        spec.quiver.vertices.iter().map(|v| v.id.clone()),
        |s| VertexId::new(s).ok(),
        &mut out,
    );
    let (a_ids, a_index) = index_ids(
        "arrow",
        spec.quiver.arrows.iter().map(|a| a.id.clone()),
        |s| ArrowId::new(s).ok(),
        &mut out,
    );
    let ids_ok = [dt_ids.len(), f_ids.len(), v_ids.len(), a_ids.len()]
        .iter()
        .zip([&dt_index, &f_index, &v_index, &a_index])
        .all(|(n, idx)| *n == idx.len());

    if spec.data_types.is_empty() {
        out.push(Violation::NoDataTypes);
    }
    if spec.computons.is_empty() {
        out.push(Violation::NoComputons);
    }

    // computon typing: (dom, cod) as data-type indices
    let mut computon_types: Vec<Option<(usize, usize)>> = Vec::new();
    let mut expressions = Vec::new();
    for f in &spec.computons {
        let lookup = |id: &str, out: &mut Vec<Violation>| {
            let r = dt_index.get(id).copied();
            if r.is_none() {
                out.push(Violation::UnknownDataType {
                    owner: f.id.clone(),
                    id: id.to_string(),
                });
            }
            r
        };
        let dom = lookup(&f.dom, &mut out);
        let cod = lookup(&f.cod, &mut out);
        computon_types.push(dom.zip(cod));
        let expr = match &f.expr {
            None => None,
            Some(text) => match Expression::parse(text) {
                Ok(e) => Some(e),
                Err(error) => {
                    if let Ok(computon) = ComputonId::new(f.id.clone()) {
                        out.push(Violation::InvalidExpression { computon, error });
                    }
                    None
                }
            },
        };
        expressions.push(expr);
    }
    for (i, t) in computon_types.iter().enumerate() {
        if let (Some((d, c)), Some(Some(id))) = (t, f_ids.get(i)) {
            if d == c {
                out.push(Violation::DomainEqualsCodomain(id.clone()));
            }
        }
    }
    let mut by_cod: HashMap<usize, usize> = HashMap::new();
    for (i, t) in computon_types.iter().enumerate() {
        if let Some((_, c)) = t {
            if let Some(&j) = by_cod.get(c) {
                if let (Some(Some(a)), Some(Some(b))) = (f_ids.get(j), f_ids.get(i)) {
                    out.push(Violation::DuplicateCodomain(a.clone(), b.clone()));
                }
            } else {
                by_cod.insert(*c, i);
            }
        }
    }

    // μ0
    let mut vertex_type: Vec<Option<usize>> = Vec::new();
    for v in &spec.quiver.vertices {
        let t = dt_index.get(&v.data_type).copied();
        if t.is_none() {
            out.push(Violation::UnknownDataType {
                owner: v.id.clone(),
                id: v.data_type.clone(),
            });
        }
        vertex_type.push(t);
    }

    // arrows: endpoints and μ1
    let mut endpoints: Vec<Option<(usize, usize)>> = Vec::new();
    let mut arrow_computon: Vec<Option<usize>> = Vec::new();
    for a in &spec.quiver.arrows {
        let vertex = |id: &str, out: &mut Vec<Violation>| {
            let r = v_index.get(id).copied();
            if r.is_none() {
                out.push(Violation::UnknownVertex {
                    arrow: a.id.clone(),
                    id: id.to_string(),
                });
            }
            r
        };
        let s = vertex(&a.source, &mut out);
        let t = vertex(&a.target, &mut out);
        endpoints.push(s.zip(t));
        let f = f_index.get(&a.computon).copied();
        if f.is_none() {
            out.push(Violation::UnknownComputon {
                arrow: a.id.clone(),
                id: a.computon.clone(),
            });
        }
        arrow_computon.push(f);
    }

    // Structural checks need a well-formed quiver.
    let quiver = if ids_ok && endpoints.iter().all(Option::is_some) {
        let vertices: Vec<VertexId> = v_ids.iter().map(|v| v.clone().expect("checked")).collect();
        let arrows = a_ids
            .iter()
            .zip(&endpoints)
            .map(|(a, e)| {
                let (s, t) = e.expect("checked");
                (
                    a.clone().expect("checked"),
                    vertices[s].clone(),
                    vertices[t].clone(),
                )
            })
            .collect();
        Some(Quiver::new(vertices, arrows).expect("ids and endpoints checked"))
    } else {
        None
    };

    if let Some(q) = &quiver {
        let loops = q.loops();
        for &l in &loops {
            out.push(Violation::Loop(q.arrows()[l].clone()));
        }
        // loops are reported on their own; look for longer cycles without them
        let keep: Vec<bool> = (0..q.arrow_count()).map(|a| !loops.contains(&a)).collect();
        let loop_free = if loops.is_empty() {
            q.clone()
        } else {
            q.subquiver_by_mask(&keep)
        };
        if !loop_free.is_acyclic() {
            out.push(Violation::CyclicQuiver);
        }
        let mut by_target: HashMap<usize, usize> = HashMap::new();
        for a in 0..q.arrow_count() {
            let t = q.target_index(a);
            match by_target.get(&t) {
                Some(&first) => out.push(Violation::DuplicateTarget(
                    q.arrows()[first].clone(),
                    q.arrows()[a].clone(),
                )),
                None => {
                    by_target.insert(t, a);
                }
            }
        }
        let (_, right) = adjacency(q);
        for (a, rs) in right.iter().enumerate() {
            if rs.len() > 1 {
                out.push(Violation::MultipleRightNeighbours {
                    arrow: q.arrows()[a].clone(),
                    neighbours: rs.iter().map(|&b| q.arrows()[b].clone()).collect(),
                });
            }
        }
    }

    // bijectivity of μ0 and μ1
    let mut preimage: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, t) in vertex_type.iter().enumerate() {
        if let Some(t) = t {
            preimage.entry(*t).or_default().push(v);
        }
    }
    for (d, vs) in &preimage {
        if vs.len() > 1 {
            if let Some(Some(data_type)) = dt_ids.get(*d) {
                out.push(Violation::NonInjectiveMu0 {
                    data_type: data_type.clone(),
                    vertices: vs.iter().filter_map(|&v| v_ids[v].clone()).collect(),
                });
            }
        }
    }
    if vertex_type.iter().all(Option::is_some) {
        for (d, id) in dt_ids.iter().enumerate() {
            if let (false, Some(id)) = (preimage.contains_key(&d), id) {
                out.push(Violation::NonSurjectiveMu0(id.clone()));
            }
        }
    }
    let mut preimage: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (a, f) in arrow_computon.iter().enumerate() {
        if let Some(f) = f {
            preimage.entry(*f).or_default().push(a);
        }
    }
    for (f, arrs) in &preimage {
        if arrs.len() > 1 {
            if let Some(Some(computon)) = f_ids.get(*f) {
                out.push(Violation::NonInjectiveMu1 {
                    computon: computon.clone(),
                    arrows: arrs.iter().filter_map(|&a| a_ids[a].clone()).collect(),
                });
            }
        }
    }
    if arrow_computon.iter().all(Option::is_some) {
        for (f, id) in f_ids.iter().enumerate() {
            if let (false, Some(id)) = (preimage.contains_key(&f), id) {
                out.push(Violation::NonSurjectiveMu1(id.clone()));
            }
        }
    }

    // μ respects typing
    for (a, (e, f)) in endpoints.iter().zip(&arrow_computon).enumerate() {
        let (Some((s, t)), Some(f)) = (e, f) else {
            continue;
        };
        let (Some(st), Some(tt)) = (vertex_type[*s], vertex_type[*t]) else {
            continue;
        };
        let Some((dom, cod)) = computon_types[*f] else {
            continue;
        };
        if dom != st || cod != tt {
            let (Some(arrow), Some(computon)) = (a_ids[a].clone(), f_ids[*f].clone()) else {
                continue;
            };
            let name = |i: usize| DataTypeId::new(spec.data_types[i].id.clone()).ok();
            if let (Some(dom), Some(cod), Some(source_type), Some(target_type)) =
                (name(dom), name(cod), name(st), name(tt))
            {
                out.push(Violation::TypeMismatch {
                    arrow,
                    computon,
                    dom,
                    cod,
                    source_type,
                    target_type,
                });
            }
        }
    }

    let r = &spec.rules;
    let rules = RuleSet {
        delta1: resolve_rule("delta1", 1, &r.delta1, &mut out),
        delta2: resolve_rule("delta2", 2, &r.delta2, &mut out),
        delta3: resolve_rule("delta3", 2, &r.delta3, &mut out),
        delta4: resolve_rule("delta4", 3, &r.delta4, &mut out),
    };

    let initial = resolve_configuration(spec, &a_index, &mut out);

    if !out.is_empty() {
        return Err(ValidationErrors(out));
    }
    let quiver = quiver.expect("no violations implies a quiver");
    let neighbourhoods =
        derive_neighbourhoods(&quiver).expect("neighbour multiplicity already validated");
    let data_types: Vec<DataType> = spec
        .data_types
        .iter()
        .zip(dt_ids)
        .map(|(d, id)| DataType {
            id: id.expect("checked"),
            semantics: d.semantics,
        })
        .collect();
    let computons: Vec<Computon> = spec
        .computons
        .iter()
        .zip(f_ids)
        .zip(computon_types.iter().zip(expressions))
        .map(|((f, id), (t, expr))| {
            let (dom, cod) = t.expect("checked");
            Computon {
                id: id.expect("checked"),
                dom: data_types[dom].id.clone(),
                cod: data_types[cod].id.clone(),
                expr_text: f.expr.clone(),
                expr,
            }
        })
        .collect();
    let data_type_index = data_types
        .iter()
        .enumerate()
        .map(|(i, d)| (d.id.clone(), i))
        .collect();
    let computon_index = computons
        .iter()
        .enumerate()
        .map(|(i, f)| (f.id.clone(), i))
        .collect();
    Ok(Machine {
        data_types,
        computons,
        quiver,
        vertex_type: vertex_type
            .into_iter()
            .map(|t| t.expect("checked"))
            .collect(),
        arrow_computon: arrow_computon
            .into_iter()
            .map(|f| f.expect("checked"))
            .collect(),
        neighbourhoods,
        rules,
        initial: initial.expect("checked"),
        data_type_index,
        computon_index,
    })
}

fn resolve_configuration(
    spec: &MachineSpec,
    arrow_index: &HashMap<String, usize>,
    out: &mut Vec<Violation>,
) -> Option<Configuration> {
    let n = spec.quiver.arrows.len();
    match &spec.initial_configuration {
        None => {
            out.push(Violation::MissingConfiguration);
            None
        }
        Some(ConfigDecl::Bits(bits)) => match bits.parse::<Configuration>() {
            Ok(c) if c.len() == n => Some(c),
            Ok(c) => {
                out.push(Violation::ConfigurationLength {
                    expected: n,
                    found: c.len(),
                });
                None
            }
            Err(e) => {
                out.push(Violation::InvalidConfiguration(e.to_string()));
                None
            }
        },
        Some(ConfigDecl::States(states)) => {
            let mut slots: Vec<Option<bool>> = vec![None; n];
            let mut ok = true;
            for (arrow, &state) in states {
                let Some(&i) = arrow_index.get(arrow) else {
                    out.push(Violation::InvalidConfiguration(format!(
                        "unknown arrow {arrow}"
                    )));
                    ok = false;
                    continue;
                };
                match state {
                    0 | 1 => slots[i] = Some(state == 1),
                    _ => {
                        out.push(Violation::InvalidConfiguration(format!(
                            "state of {arrow} must be 0 or 1, got {state}"
                        )));
                        ok = false;
                    }
                }
            }
            let missing: Vec<ArrowId> = slots
                .iter()
                .enumerate()
                .filter(|(_, s)| s.is_none())
                .filter_map(|(i, _)| ArrowId::new(spec.quiver.arrows[i].id.clone()).ok())
                .collect();
            if !missing.is_empty() {
                out.push(Violation::IncompleteConfiguration(missing));
                return None;
            }
            ok.then(|| {
                Configuration::new(slots.into_iter().map(|s| s.expect("complete")).collect())
            })
        }
    }
}
