//! Alive quivers and the program spaces that emerge on them.
//!
//! A program space is presented concretely: the data types of the alive
//! vertices, one identity per data type, and one morphism per non-trivial
//! path of the alive quiver, obtained by mapping each arrow to its
//! computon.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evolution::{Configuration, ConfigurationError};
use crate::ids::{ComputonId, DataTypeId};
use crate::machine::Machine;
use crate::quiver::{IndexPath, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("morphisms are not composable: {first} ends at {output}, {then} starts at {input}")]
    NotComposable {
        first: String,
        output: DataTypeId,
        then: String,
        input: DataTypeId,
    },
    #[error("unknown computon {0}")]
    UnknownComputon(String),
    #[error("unknown data type {0}")]
    UnknownDataType(String),
    #[error("invalid morphism selector {0:?}")]
    BadSelector(String),
}

/// The subquiver of alive organisms and their endpoints at time `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AliveQuiver {
    pub t: usize,
    quiver: Quiver,
}

impl AliveQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
}

pub fn alive_quiver(
    m: &Machine,
    c: &Configuration,
    t: usize,
) -> Result<AliveQuiver, ConfigurationError> {
    c.check_len(m.quiver().arrow_count())?;
    Ok(AliveQuiver {
        t,
        quiver: m.quiver().subquiver_by_mask(c.states()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    Identity,
    Primitive,
    Composite,
}

/// An identity, primitive or composite computon with its typing.
///
/// `computons` is in application order and empty for identities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Morphism {
    input: DataTypeId,
    output: DataTypeId,
    computons: Vec<ComputonId>,
}

#[allow(clippy::len_without_is_empty)]
impl Morphism {
    pub fn identity(d: DataTypeId) -> Self {
        Morphism {
            input: d.clone(),
            output: d,
            computons: Vec::new(),
        }
    }

    /// Composite of `chain` (application order), type-checked against `m`.
    pub fn chain(m: &Machine, chain: &[ComputonId]) -> Result<Self, SpaceError> {
        let mut acc: Option<Morphism> = None;
        for id in chain {
            let f = m
                .computon(id)
                .ok_or_else(|| SpaceError::UnknownComputon(id.to_string()))?;
            let prim = Morphism {
                input: f.dom.clone(),
                output: f.cod.clone(),
                computons: vec![id.clone()],
            };
            acc = Some(match acc {
                None => prim,
                Some(a) => compose(&a, &prim)?,
            });
        }
        acc.ok_or_else(|| SpaceError::BadSelector(String::new()))
    }

    pub fn kind(&self) -> MorphismKind {
        match self.computons.len() {
            0 => MorphismKind::Identity,
            1 => MorphismKind::Primitive,
            _ => MorphismKind::Composite,
        }
    }

    pub fn input(&self) -> &DataTypeId {
        &self.input
    }

    pub fn output(&self) -> &DataTypeId {
        &self.output
    }

    /// Constituent computons in application order.
    pub fn computons(&self) -> &[ComputonId] {
        &self.computons
    }

    pub fn len(&self) -> usize {
        self.computons.len()
    }

    pub fn is_identity(&self) -> bool {
        self.computons.is_empty()
    }
}

impl fmt::Display for Morphism {
    /// `id:d`, `f1`, or right-to-left `f3∘f2∘f1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.computons.is_empty() {
            return write!(f, "id:{}", self.input);
        }
        for (i, c) in self.computons.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("∘")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `first` then `then` (written `then ∘ first`). Identities are units.
pub fn compose(first: &Morphism, then: &Morphism) -> Result<Morphism, SpaceError> {
    if first.output != then.input {
        return Err(SpaceError::NotComposable {
            first: first.to_string(),
            output: first.output.clone(),
            then: then.to_string(),
            input: then.input.clone(),
        });
    }
    let mut computons = first.computons.clone();
    computons.extend(then.computons.iter().cloned());
    Ok(Morphism {
        input: first.input.clone(),
        output: then.output.clone(),
        computons,
    })
}

/// Parses `f3∘f2∘f1`, `f3.f2.f1`, `f1` or `id:d1` against `m`.
pub fn parse_morphism(m: &Machine, selector: &str) -> Result<Morphism, SpaceError> {
    let sel = selector.trim();
    if let Some(d) = sel.strip_prefix("id:") {
        let id = DataTypeId::new(d).map_err(|_| SpaceError::BadSelector(selector.to_string()))?;
        if m.data_type(&id).is_none() {
            return Err(SpaceError::UnknownDataType(d.to_string()));
        }
        return Ok(Morphism::identity(id));
    }
    let mut chain = sel
        .split(['∘', '.'])
        .map(|part| {
            ComputonId::new(part.trim()).map_err(|_| SpaceError::BadSelector(selector.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    chain.reverse();
    Morphism::chain(m, &chain)
}

/// The concrete presentation of the program space on an alive quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgramSpace {
    data_types: Vec<DataTypeId>,
    morphisms: Vec<Morphism>,
}

impl ProgramSpace {
    pub fn empty() -> Self {
        ProgramSpace {
            data_types: Vec::new(),
            morphisms: Vec::new(),
        }
    }

    pub fn data_types(&self) -> &[DataTypeId] {
        &self.data_types
    }

    /// Identities first, then paths in enumeration order.
    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn contains(&self, m: &Morphism) -> bool {
        self.morphisms.contains(m)
    }

    pub fn morphism_set(&self) -> BTreeSet<&Morphism> {
        self.morphisms.iter().collect()
    }

    pub fn stats(&self) -> SpaceStats {
        space_stats(self)
    }
}

/// Builds the space on `aq`: one identity per alive data type (in data
/// type declaration order) followed by one morphism per non-trivial path.
pub fn build_space(m: &Machine, aq: &AliveQuiver) -> ProgramSpace {
    let q = aq.quiver();
    let full = m.quiver();
    let mut present: Vec<usize> = q
        .vertices()
        .iter()
        .map(|v| {
            m.vertex_type(
                full.vertex_index(v)
                    .expect("alive vertex belongs to machine"),
            )
        })
        .collect();
    present.sort_unstable();
    let data_types: Vec<DataTypeId> = present
        .iter()
        .map(|&d| m.data_types()[d].id.clone())
        .collect();

    // alive arrow index -> machine computon
    let computon_of: Vec<usize> = q
        .arrows()
        .iter()
        .map(|a| m.arrow_computon(full.arrow_index(a).expect("alive arrow belongs to machine")))
        .collect();
    let paths = q
        .enumerate_index_paths(1)
        .expect("machine quivers are acyclic");

    let mut morphisms: Vec<Morphism> = data_types.iter().cloned().map(Morphism::identity).collect();
    morphisms.extend(paths.into_iter().map(|p| {
        let IndexPath::Arrows(seq) = p else {
            unreachable!("min_length 1 excludes trivial paths")
        };
        let computons: Vec<ComputonId> = seq
            .iter()
            .map(|&a| m.computons()[computon_of[a]].id.clone())
            .collect();
        let first = &m.computons()[computon_of[seq[0]]];
        let last = &m.computons()[computon_of[*seq.last().expect("non-empty")]];
        Morphism {
            input: first.dom.clone(),
            output: last.cod.clone(),
            computons,
        }
    }));
    ProgramSpace {
        data_types,
        morphisms,
    }
}

/// Space of the configuration at `t` (no time bookkeeping beyond that).
pub fn space_of(
    m: &Machine,
    c: &Configuration,
    t: usize,
) -> Result<ProgramSpace, ConfigurationError> {
    Ok(build_space(m, &alive_quiver(m, c, t)?))
}

/// The space with every organism alive; it contains every other space.
pub fn maximal_space(m: &Machine) -> ProgramSpace {
    let all = Configuration::all(m.quiver().arrow_count(), true);
    space_of(m, &all, 0).expect("full configuration has the right length")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SpaceStats {
    pub identities: usize,
    pub primitives: usize,
    pub composites: usize,
    pub total: usize,
    /// Longest non-identity morphism, in computons.
    pub max_length: usize,
}

pub fn space_stats(ps: &ProgramSpace) -> SpaceStats {
    let mut s = SpaceStats::default();
    for mo in &ps.morphisms {
        match mo.kind() {
            MorphismKind::Identity => s.identities += 1,
            MorphismKind::Primitive => s.primitives += 1,
            MorphismKind::Composite => s.composites += 1,
        }
        s.max_length = s.max_length.max(mo.len());
    }
    s.total = ps.morphisms.len();
    s
}

/// Extensional equality: same data types and same morphisms, ignoring order.
pub fn spaces_equal(a: &ProgramSpace, b: &ProgramSpace) -> bool {
    let da: HashSet<_> = a.data_types.iter().collect();
    let db: HashSet<_> = b.data_types.iter().collect();
    da == db && a.morphism_set() == b.morphism_set()
}
