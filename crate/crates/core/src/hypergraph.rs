//! Hypergraphs over small labeled vertex sets.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::set::{Bits, VertexSet, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("vertex label {0:?} appears more than once")]
    DuplicateLabel(String),
    #[error("edge refers to unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("vertex {0:?} is in no edge")]
    IsolatedVertex(String),
    #[error("edges {first} and {second} are the same set")]
    DuplicateEdge { first: usize, second: usize },
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("edge {0} uses a vertex index outside the ground set")]
    EdgeOutOfRange(usize),
    #[error("{0} vertices exceed the supported maximum of {MAX_GROUND}")]
    TooManyVertices(usize),
    #[error("edge index set must be nonempty")]
    EmptyIndexSet,
    #[error("edge index {0} out of range")]
    IndexOutOfRange(usize),
}

/// A finite hypergraph: labeled vertices and an ordered list of distinct,
/// nonempty edges covering every vertex.
///
/// Edges keep their input order because profiles and polymatroid tables are
/// indexed by edge position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertex_names: Vec<String>,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Builds a hypergraph from labels, validating every invariant.
    pub fn new<S: AsRef<str>>(
        vertex_names: Vec<String>,
        edges: &[Vec<S>],
    ) -> Result<Self, HypergraphError> {
        check_labels(&vertex_names)?;
        let mut masks = Vec::with_capacity(edges.len());
        for edge in edges {
            let mut set = VertexSet::EMPTY;
            for label in edge {
                let label = label.as_ref();
                let i = vertex_names
                    .iter()
                    .position(|v| v == label)
                    .ok_or_else(|| HypergraphError::UnknownLabel(label.into()))?;
                set.insert(i);
            }
            masks.push(set);
        }
        Self::from_masks(vertex_names, masks)
    }

    /// Builds a hypergraph from bitmask edges over `vertex_names`.
    pub fn from_masks(
        vertex_names: Vec<String>,
        edges: Vec<VertexSet>,
    ) -> Result<Self, HypergraphError> {
        check_labels(&vertex_names)?;
        let n = vertex_names.len();
        let ground = VertexSet::full(n);
        let mut covered = VertexSet::EMPTY;
        for (i, &e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge(i));
            }
            if !e.is_subset(ground) {
                return Err(HypergraphError::EdgeOutOfRange(i));
            }
            if let Some(j) = edges[..i].iter().position(|&f| f == e) {
                return Err(HypergraphError::DuplicateEdge {
                    first: j,
                    second: i,
                });
            }
            covered = covered.union(e);
        }
        if let Some(v) = ground.difference(covered).min() {
            return Err(HypergraphError::IsolatedVertex(vertex_names[v].clone()));
        }
        Ok(Hypergraph {
            vertex_names,
            edges,
        })
    }

    /// Like [`from_masks`](Self::from_masks) with vertices named `a`, `b`, ...
    pub fn with_alphabetic_names(n: usize, edges: Vec<VertexSet>) -> Result<Self, HypergraphError> {
        Self::from_masks(alphabetic_names(n), edges)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True iff no edge is a proper subset of another edge.
    pub fn is_sperner(&self) -> bool {
        is_antichain(&self.edges)
    }

    /// Keeps only the inclusion-maximal edges (in their original order) and
    /// drops vertices left in no edge.
    pub fn maximal_reduction(&self) -> Hypergraph {
        let kept: Vec<VertexSet> = self
            .edges
            .iter()
            .copied()
            .filter(|&e| !self.edges.iter().any(|&f| e.is_proper_subset(f)))
            .collect();
        let used = kept.iter().fold(VertexSet::EMPTY, |acc, &e| acc.union(e));
        let slots: Vec<usize> = used.iter().collect();
        let edges = kept
            .iter()
            .map(|&e| VertexSet::from_bits(crate::set::compress_mask(e.bits(), &slots)))
            .collect();
        let vertex_names = slots
            .iter()
            .map(|&v| self.vertex_names[v].clone())
            .collect();
        Hypergraph {
            vertex_names,
            edges,
        }
    }

    /// `|⋂_{i∈S} e_i|` for a nonempty edge-index mask `S`.
    pub fn intersection_size(&self, index_set: u32) -> Result<usize, HypergraphError> {
        if index_set == 0 {
            return Err(HypergraphError::EmptyIndexSet);
        }
        self.check_indices(index_set)?;
        Ok(intersection_of(&self.edges, index_set).len())
    }

    /// `|⋃_{i∈S} e_i|`; zero for the empty index set.
    pub fn union_size(&self, index_set: u32) -> Result<usize, HypergraphError> {
        self.check_indices(index_set)?;
        Ok(union_of(&self.edges, index_set).len())
    }

    fn check_indices(&self, index_set: u32) -> Result<(), HypergraphError> {
        match Bits::of(index_set).find(|&i| i >= self.edges.len()) {
            Some(i) => Err(HypergraphError::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    /// Relabels vertex `i` as vertex `perm[i]`, moving its name along.
    ///
    /// Panics if `perm` is not a permutation of the vertex indices.
    pub fn permuted(&self, perm: &[usize]) -> Hypergraph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut names = alloc::vec![String::new(); n];
        let mut seen = VertexSet::EMPTY;
        for (i, &j) in perm.iter().enumerate() {
            assert!(j < n && !seen.contains(j), "not a permutation");
            seen.insert(j);
            names[j] = self.vertex_names[i].clone();
        }
        let edges = self.edges.iter().map(|&e| permute_set(e, perm)).collect();
        Hypergraph {
            vertex_names: names,
            edges,
        }
    }

    /// The lexicographically least sorted edge-mask list over all vertex
    /// relabelings. Two hypergraphs are isomorphic iff their vertex counts
    /// and canonical forms agree. Factorial in the vertex count.
    pub fn canonical_form(&self) -> Vec<u32> {
        canonical_edges(self.vertex_count(), &self.edges)
    }

    /// The same edges as an indexed family.
    pub fn to_family(&self) -> EdgeFamily {
        EdgeFamily {
            ground_size: self.vertex_count(),
            edges: self.edges.clone(),
        }
    }
}

/// An indexed family of vertex sets over `{0, .., ground_size-1}`.
///
/// Unlike [`Hypergraph`], repeated, nested and empty edges are all allowed;
/// this is what profile synthesis and polymatroid recognition produce.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeFamily {
    pub ground_size: usize,
    pub edges: Vec<VertexSet>,
}

impl EdgeFamily {
    pub fn new(ground_size: usize, edges: Vec<VertexSet>) -> Self {
        EdgeFamily { ground_size, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn intersection_size(&self, index_set: u32) -> usize {
        intersection_of(&self.edges, index_set).len()
    }

    pub fn union_size(&self, index_set: u32) -> usize {
        union_of(&self.edges, index_set).len()
    }
}

pub(crate) fn intersection_of(edges: &[VertexSet], index_set: u32) -> VertexSet {
    Bits::of(index_set).fold(VertexSet::from_bits(u32::MAX), |acc, i| {
        acc.intersection(edges[i])
    })
}

pub(crate) fn union_of(edges: &[VertexSet], index_set: u32) -> VertexSet {
    Bits::of(index_set).fold(VertexSet::EMPTY, |acc, i| acc.union(edges[i]))
}

pub(crate) fn is_antichain(edges: &[VertexSet]) -> bool {
    edges.iter().enumerate().all(|(i, &e)| {
        edges
            .iter()
            .enumerate()
            .all(|(j, &f)| i == j || !e.is_subset(f))
    })
}

fn check_labels(names: &[String]) -> Result<(), HypergraphError> {
    if names.len() > MAX_GROUND {
        return Err(HypergraphError::TooManyVertices(names.len()));
    }
    let mut seen = BTreeSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(HypergraphError::DuplicateLabel(name.clone()));
        }
    }
    Ok(())
}

pub(crate) fn permute_set(s: VertexSet, perm: &[usize]) -> VertexSet {
    s.iter().map(|v| perm[v]).collect()
}

pub(crate) fn canonical_edges(n: usize, edges: &[VertexSet]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for_each_permutation(n, |perm| {
        let mut masks: Vec<u32> = edges.iter().map(|&e| permute_set(e, perm).bits()).collect();
        masks.sort_unstable();
        if best.as_ref().is_none_or(|b| masks < *b) {
            best = Some(masks);
        }
    });
    best.unwrap_or_default()
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = alloc::vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// `a`, `b`, ..., `z`, then `v26`, `v27`, ...
pub fn alphabetic_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                String::from(char::from(b'a' + i as u8))
            } else {
                format!("v{i}")
            }
        })
        .collect()
}

/// `v0`, `v1`, ...
pub fn indexed_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            Hypergraph::new(names(&["a", "b", "c"]), &[vec!["a", "b"]]),
            Err(HypergraphError::IsolatedVertex("c".into()))
        );
        assert_eq!(
            Hypergraph::new(names(&["a", "b"]), &[vec!["a", "b"], vec!["b", "a"]]),
            Err(HypergraphError::DuplicateEdge {
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            Hypergraph::new(names(&["a"]), &[vec!["a"], Vec::<&str>::new()]),
            Err(HypergraphError::EmptyEdge(1))
        );
        assert_eq!(
            Hypergraph::new(names(&["a"]), &[vec!["z"]]),
            Err(HypergraphError::UnknownLabel("z".into()))
        );
        assert_eq!(
            Hypergraph::new(names(&["a", "a"]), &[vec!["a"]]),
            Err(HypergraphError::DuplicateLabel("a".into()))
        );
        assert!(Hypergraph::new(Vec::new(), &Vec::<Vec<&str>>::new()).is_ok());
    }

    #[test]
    fn sperner_and_reduction() {
        assert!(triangle().is_sperner());
        assert!(one_edge().is_sperner());
        let nested = hg(&["a", "b"], &[&["a"], &["a", "b"]]);
        assert!(!nested.is_sperner());
        assert_eq!(nested.maximal_reduction(), one_edge());
        assert_eq!(triangle().maximal_reduction(), triangle());
        let incomparable = hg(&["a", "b", "c"], &[&["a"], &["b", "c"]]);
        assert_eq!(incomparable.maximal_reduction(), incomparable);
    }

    #[test]
    fn intersection_and_union_sizes() {
        let t = triangle();
        assert_eq!(t.intersection_size(0b011), Ok(1));
        assert_eq!(t.intersection_size(0b111), Ok(0));
        assert_eq!(t.intersection_size(0b001), Ok(2));
        assert_eq!(t.intersection_size(0), Err(HypergraphError::EmptyIndexSet));
        assert_eq!(
            t.intersection_size(0b1000),
            Err(HypergraphError::IndexOutOfRange(3))
        );
        assert_eq!(t.union_size(0b011), Ok(3));
        assert_eq!(t.union_size(0), Ok(0));
        assert_eq!(matching().union_size(0b11), Ok(4));
    }

    #[test]
    fn permutation_and_canonical_form() {
        let t = triangle();
        let swapped = t.permuted(&[2, 1, 0]);
        assert_eq!(swapped.vertex_names(), names(&["c", "b", "a"]).as_slice());
        assert_eq!(swapped.canonical_form(), t.canonical_form());
        assert_ne!(path().canonical_form(), t.canonical_form());
        let mut count = 0;
        for_each_permutation(4, |_| count += 1);
        assert_eq!(count, 24);
    }
}
