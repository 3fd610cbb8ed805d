//! Quivers (directed multigraphs with loops), paths and path enumeration.
//!
//! Paths are stored in application order: the first arrow executed comes
//! first. Rendering in right-to-left composition notation is a display
//! concern handled elsewhere.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

pub use crate::ids::{ArrowId, InvalidId, VertexId};

/// Errors raised by quiver construction and path operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error(transparent)]
    InvalidId(#[from] InvalidId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate arrow {0}")]
    DuplicateArrow(ArrowId),
    #[error("arrow {arrow} references unknown vertex {vertex}")]
    UnknownVertex { arrow: ArrowId, vertex: VertexId },
    #[error("unknown arrow {0}")]
    UnknownArrow(ArrowId),
    #[error("a non-trivial path needs at least one arrow")]
    EmptyPath,
    #[error("quiver contains a directed cycle")]
    CyclicQuiver,
    #[error("paths are not composable: first ends at {end}, second starts at {start}")]
    NotComposable { end: VertexId, start: VertexId },
}

/// A finite quiver `(Q0, Q1, s, τ)` with declaration order preserved.
///
/// Arrows are addressed either by id or by their declaration index; the
/// index form is what the hot paths (enumeration, evolution) use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<VertexId>,
    arrows: Vec<ArrowId>,
    source: Vec<usize>,
    target: Vec<usize>,
    vertex_index: HashMap<VertexId, usize>,
    arrow_index: HashMap<ArrowId, usize>,
}

impl Quiver {
    /// Builds a quiver from vertices and `(arrow, source, target)` triples.
    pub fn new(
        vertices: Vec<VertexId>,
        arrows: Vec<(ArrowId, VertexId, VertexId)>,
    ) -> Result<Self, QuiverError> {
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut arrow_ids = Vec::with_capacity(arrows.len());
        let mut source = Vec::with_capacity(arrows.len());
        let mut target = Vec::with_capacity(arrows.len());
        let mut arrow_index = HashMap::with_capacity(arrows.len());
        for (i, (a, s, t)) in arrows.into_iter().enumerate() {
            if arrow_index.insert(a.clone(), i).is_some() {
                return Err(QuiverError::DuplicateArrow(a));
            }
            let lookup = |v: &VertexId| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| QuiverError::UnknownVertex {
                        arrow: a.clone(),
                        vertex: v.clone(),
                    })
            };
            source.push(lookup(&s)?);
            target.push(lookup(&t)?);
            arrow_ids.push(a);
        }
        Ok(Self {
            vertices,
            arrows: arrow_ids,
            source,
            target,
            vertex_index,
            arrow_index,
        })
    }

    /// Convenience constructor from string ids, for fixtures and tests.
    pub fn from_strs(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
    ) -> Result<Self, QuiverError> {
        let vs = vertices
            .iter()
            .map(|v| VertexId::new(*v))
            .collect::<Result<Vec<_>, _>>()?;
        let arrs = arrows
            .iter()
            .map(|(a, s, t)| Ok((ArrowId::new(*a)?, VertexId::new(*s)?, VertexId::new(*t)?)))
            .collect::<Result<Vec<_>, QuiverError>>()?;
        Self::new(vs, arrs)
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), Vec::new()).expect("empty quiver is valid")
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, v: &VertexId) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn arrow_index(&self, a: &ArrowId) -> Option<usize> {
        self.arrow_index.get(a).copied()
    }

    /// Source vertex index of the arrow at index `a`.
    pub fn source_index(&self, a: usize) -> usize {
        self.source[a]
    }

    /// Target vertex index of the arrow at index `a`.
    pub fn target_index(&self, a: usize) -> usize {
        self.target[a]
    }

    pub fn source(&self, a: &ArrowId) -> Option<&VertexId> {
        self.arrow_index(a).map(|i| &self.vertices[self.source[i]])
    }

    pub fn target(&self, a: &ArrowId) -> Option<&VertexId> {
        self.arrow_index(a).map(|i| &self.vertices[self.target[i]])
    }

    /// Outgoing arrow indices per vertex index, in declaration order.
    pub fn outgoing(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for a in 0..self.arrows.len() {
            out[self.source[a]].push(a);
        }
        out
    }

    /// Incoming arrow indices per vertex index, in declaration order.
    pub fn incoming(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for a in 0..self.arrows.len() {
            inc[self.target[a]].push(a);
        }
        inc
    }

    /// Arrow indices whose source equals their target.
    pub fn loops(&self) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.source[a] == self.target[a])
            .collect()
    }

    /// True iff the quiver has no directed cycle. Loops count as cycles.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm over vertex indices; `None` when a cycle exists.
    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for &t in &self.target {
            indegree[t] += 1;
        }
        let out = self.outgoing();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &a in &out[v] {
                let t = self.target[a];
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push(t);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Every path of length `>= min_length`, each exactly once.
    ///
    /// Ordered by length, then lexicographically by arrow declaration
    /// index. Trivial paths (length 0) come in vertex declaration order.
    pub fn enumerate_paths(&self, min_length: usize) -> Result<Vec<Path>, QuiverError> {
        Ok(self
            .enumerate_index_paths(min_length)?
            .into_iter()
            .map(|p| match p {
                IndexPath::Trivial(v) => Path::trivial(self.vertices[v].clone()),
                IndexPath::Arrows(seq) => self.path_from_indices(&seq),
            })
            .collect())
    }

    pub(crate) fn enumerate_index_paths(
        &self,
        min_length: usize,
    ) -> Result<Vec<IndexPath>, QuiverError> {
        if !self.is_acyclic() {
            return Err(QuiverError::CyclicQuiver);
        }
        let mut result = Vec::new();
        if min_length == 0 {
            result.extend((0..self.vertices.len()).map(IndexPath::Trivial));
        }
        let out = self.outgoing();
        // Level k is lexicographically sorted; extending each member in
        // order by successors in index order keeps level k+1 sorted.
        let mut level: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        let mut length = 1;
        while !level.is_empty() {
            let next: Vec<Vec<usize>> = level
                .iter()
                .flat_map(|p| {
                    let last = *p.last().expect("non-empty path");
                    out[self.target[last]].iter().map(move |&a| {
                        let mut q = p.clone();
                        q.push(a);
                        q
                    })
                })
                .collect();
            if length >= min_length {
                result.extend(level.into_iter().map(IndexPath::Arrows));
            }
            level = next;
            length += 1;
        }
        Ok(result)
    }

    pub(crate) fn path_from_indices(&self, seq: &[usize]) -> Path {
        let first = *seq.first().expect("non-trivial path");
        let last = *seq.last().expect("non-trivial path");
        Path {
            source: self.vertices[self.source[first]].clone(),
            target: self.vertices[self.target[last]].clone(),
            arrows: seq.iter().map(|&a| self.arrows[a].clone()).collect(),
        }
    }

    /// Builds a [`Path`] from arrow ids in application order, checking the
    /// chain condition.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path, QuiverError> {
        let idx = arrows
            .iter()
            .map(|a| {
                self.arrow_index(a)
                    .ok_or_else(|| QuiverError::UnknownArrow(a.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if idx.is_empty() {
            return Err(QuiverError::EmptyPath);
        }
        for w in idx.windows(2) {
            if self.target[w[0]] != self.source[w[1]] {
                return Err(QuiverError::NotComposable {
                    end: self.vertices[self.target[w[0]]].clone(),
                    start: self.vertices[self.source[w[1]]].clone(),
                });
            }
        }
        Ok(self.path_from_indices(&idx))
    }

    /// Subquiver on `keep`, retaining exactly the endpoints of kept arrows.
    ///
    /// Declaration order of both vertices and arrows is inherited.
    pub fn subquiver(&self, keep: &HashSet<ArrowId>) -> Result<Quiver, QuiverError> {
        let mut kept = vec![false; self.arrows.len()];
        for a in keep {
            let i = self
                .arrow_index(a)
                .ok_or_else(|| QuiverError::UnknownArrow(a.clone()))?;
            kept[i] = true;
        }
        Ok(self.subquiver_by_mask(&kept))
    }

    pub(crate) fn subquiver_by_mask(&self, kept: &[bool]) -> Quiver {
        let mut used = vec![false; self.vertices.len()];
        for (a, _) in kept.iter().enumerate().filter(|(_, &k)| k) {
            used[self.source[a]] = true;
            used[self.target[a]] = true;
        }
        let vertices = self
            .vertices
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let arrows = kept
            .iter()
            .enumerate()
            .filter(|(_, &k)| k)
            .map(|(a, _)| {
                (
                    self.arrows[a].clone(),
                    self.vertices[self.source[a]].clone(),
                    self.vertices[self.target[a]].clone(),
                )
            })
            .collect();
        Quiver::new(vertices, arrows).expect("restriction of a valid quiver is valid")
    }
}

/// Index-level path used internally by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum IndexPath {
    Trivial(usize),
    Arrows(Vec<usize>),
}

/// A path in a quiver. A trivial path has no arrows and equal endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

#[allow(clippy::len_without_is_empty)]
impl Path {
    pub fn trivial(vertex: VertexId) -> Self {
        Self {
            source: vertex.clone(),
            target: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn single(arrow: ArrowId, source: VertexId, target: VertexId) -> Self {
        Self {
            source,
            target,
            arrows: vec![arrow],
        }
    }

    pub fn source(&self) -> &VertexId {
        &self.source
    }

    pub fn target(&self) -> &VertexId {
        &self.target
    }

    /// Arrows in application order.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `first` followed by `then`; written `then ∗ first` in composition
    /// notation. Trivial paths are units.
    pub fn concatenate(first: &Path, then: &Path) -> Result<Path, QuiverError> {
        if first.target != then.source {
            return Err(QuiverError::NotComposable {
                end: first.target.clone(),
                start: then.source.clone(),
            });
        }
        let mut arrows = first.arrows.clone();
        arrows.extend(then.arrows.iter().cloned());
        Ok(Path {
            source: first.source.clone(),
            target: then.target.clone(),
            arrows,
        })
    }
}

impl fmt::Display for Path {
    /// Right-to-left notation: `(a3,a2,a1)`, or `1_x` for a trivial path.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "1_{}", self.source);
        }
        f.write_str("(")?;
        for (i, a) in self.arrows.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}
