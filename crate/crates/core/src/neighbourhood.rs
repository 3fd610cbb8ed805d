//! Classification of organisms by their neighbourhood shape.
//!
//! Arrow `l` is the left neighbour of `a` when `target(l) = source(a)`;
//! `r` is the right neighbour of `a` when `target(a) = source(r)`.

use thiserror::Error;

use crate::quiver::{ArrowId, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NeighbourhoodError {
    #[error("AmbiguousNeighbourhood({arrow}): {} {side} neighbours", neighbours.len())]
    Ambiguous {
        arrow: ArrowId,
        side: Side,
        neighbours: Vec<ArrowId>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Neighbourhood of one organism; neighbours are arrow indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighbourhood {
    /// N1: no neighbours.
    Isolated,
    /// N2: a right neighbour only.
    RightOnly { right: usize },
    /// N3: a left neighbour only.
    LeftOnly { left: usize },
    /// N4: one neighbour on each side.
    Both { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighbourhoodTable {
    arrows: Vec<ArrowId>,
    entries: Vec<Neighbourhood>,
}

/// Left and right neighbour indices of every arrow, excluding itself.
pub(crate) fn adjacency(q: &Quiver) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let outgoing = q.outgoing();
    let incoming = q.incoming();
    let n = q.arrow_count();
    let left = (0..n)
        .map(|a| {
            incoming[q.source_index(a)]
                .iter()
                .copied()
                .filter(|&b| b != a)
                .collect()
        })
        .collect();
    let right = (0..n)
        .map(|a| {
            outgoing[q.target_index(a)]
                .iter()
                .copied()
                .filter(|&b| b != a)
                .collect()
        })
        .collect();
    (left, right)
}

/// Classifies every arrow of `q` into N1..N4.
pub fn derive_neighbourhoods(q: &Quiver) -> Result<NeighbourhoodTable, NeighbourhoodError> {
    let (left, right) = adjacency(q);
    let ambiguous = |a: usize, side: Side, ns: &[usize]| NeighbourhoodError::Ambiguous {
        arrow: q.arrows()[a].clone(),
        side,
        neighbours: ns.iter().map(|&b| q.arrows()[b].clone()).collect(),
    };
    let mut entries = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let l = match left[a].as_slice() {
            [] => None,
            [l] => Some(*l),
            ns => return Err(ambiguous(a, Side::Left, ns)),
        };
        let r = match right[a].as_slice() {
            [] => None,
            [r] => Some(*r),
            ns => return Err(ambiguous(a, Side::Right, ns)),
        };
        entries.push(match (l, r) {
            (None, None) => Neighbourhood::Isolated,
            (None, Some(right)) => Neighbourhood::RightOnly { right },
            (Some(left), None) => Neighbourhood::LeftOnly { left },
            (Some(left), Some(right)) => Neighbourhood::Both { left, right },
        });
    }
    Ok(NeighbourhoodTable {
        arrows: q.arrows().to_vec(),
        entries,
    })
}

impl NeighbourhoodTable {
    pub fn get(&self, arrow: usize) -> Neighbourhood {
        self.entries[arrow]
    }

    pub fn entries(&self) -> &[Neighbourhood] {
        &self.entries
    }

    fn id(&self, i: usize) -> ArrowId {
        self.arrows[i].clone()
    }

    /// Unary neighbourhoods `(α)`.
    pub fn n1(&self) -> Vec<ArrowId> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, n)| matches!(n, Neighbourhood::Isolated))
            .map(|(a, _)| self.id(a))
            .collect()
    }

    /// Binary neighbourhoods `(α, right)`.
    pub fn n2(&self) -> Vec<(ArrowId, ArrowId)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(a, n)| match *n {
                Neighbourhood::RightOnly { right } => Some((self.id(a), self.id(right))),
                _ => None,
            })
            .collect()
    }

    /// Binary neighbourhoods `(left, α)`.
    pub fn n3(&self) -> Vec<(ArrowId, ArrowId)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(a, n)| match *n {
                Neighbourhood::LeftOnly { left } => Some((self.id(left), self.id(a))),
                _ => None,
            })
            .collect()
    }

    /// Ternary neighbourhoods `(left, α, right)`.
    pub fn n4(&self) -> Vec<(ArrowId, ArrowId, ArrowId)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(a, n)| match *n {
                Neighbourhood::Both { left, right } => {
                    Some((self.id(left), self.id(a), self.id(right)))
                }
                _ => None,
            })
            .collect()
    }
}
