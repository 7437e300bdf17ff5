//! Finite implication algebras in their enveloping Boolean algebra.
//!
//! An algebra is stored as its ground set `V` (the coatoms of the envelope
//! `2^V`) and the antichain of maximal edges. Element `X ⊆ V` belongs to the
//! algebra iff `X ⊆ e` for some edge `e`; the order is reverse inclusion, so
//! `∅` is the top `1`, joins are intersections, and `x → y = y ∖ x`.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::hypergraph::{intersection_of, is_antichain, Hypergraph, HypergraphError};
use crate::set::{low_mask, nonempty_submasks, VertexSet};

/// Largest ground set for which [`ImplicationAlgebra::elements`] will run.
pub const ELEMENT_GROUND_LIMIT: usize = 20;
/// Largest element count for the cubic identity check.
pub const AXIOM_ELEMENT_LIMIT: usize = 256;
/// Largest number of minimal elements for inclusion-exclusion over them.
pub const MINIMAL_ELEMENT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an implication algebra needs at least one minimal element")]
    NoMinimalElements,
    #[error("minimal elements must be an antichain of distinct nonempty sets")]
    NotAnAntichain,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("{0:?} is not an element of the algebra")]
    NotAnElement(VertexSet),
    #[error("ground set of {size} exceeds the limit of {limit}")]
    GroundTooLarge { size: usize, limit: usize },
    #[error("{0} minimal elements exceed the supported maximum")]
    TooManyMinimalElements(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImplicationAlgebra {
    ground: Vec<String>,
    min_edges: Vec<VertexSet>,
}

impl ImplicationAlgebra {
    /// Builds an algebra directly from its ground labels and minimal
    /// elements. The edges must form a nonempty antichain covering the
    /// ground set.
    pub fn new(ground: Vec<String>, min_edges: Vec<VertexSet>) -> Result<Self, AlgebraError> {
        if min_edges.is_empty() {
            return Err(AlgebraError::NoMinimalElements);
        }
        let h = Hypergraph::from_masks(ground, min_edges)?;
        if !h.is_sperner() {
            return Err(AlgebraError::NotAnAntichain);
        }
        Ok(ImplicationAlgebra {
            ground: h.vertex_names().to_vec(),
            min_edges: h.edges().to_vec(),
        })
    }

    /// `{X | X ⊆ e for some e ∈ E}` under reverse inclusion. Non-maximal
    /// edges are dropped since they do not change the element set.
    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self, AlgebraError> {
        let reduced = h.maximal_reduction();
        Self::new(reduced.vertex_names().to_vec(), reduced.edges().to_vec())
    }

    /// Coatoms of the envelope as vertices, one edge per minimal element.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::from_masks(self.ground.clone(), self.min_edges.clone())
            .expect("algebra invariants imply a valid hypergraph")
    }

    /// Labels of the coatoms of the enveloping algebra `2^ground`.
    ///
    /// Every coatom of the envelope lies in the algebra because the meet of
    /// all minimal elements is `0`, i.e. no ground vertex is missed by every
    /// edge; the constructor enforces this.
    pub fn enveloping_ground(&self) -> &[String] {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    /// The minimal elements; their count is `n(I)`.
    pub fn minimal_elements(&self) -> &[VertexSet] {
        &self.min_edges
    }

    /// Singletons `{v}` for every ground vertex.
    pub fn coatoms(&self) -> Vec<VertexSet> {
        (0..self.ground.len()).map(VertexSet::singleton).collect()
    }

    pub fn is_element(&self, x: VertexSet) -> bool {
        self.min_edges.iter().any(|&e| x.is_subset(e))
    }

    fn element(&self, x: VertexSet) -> Result<VertexSet, AlgebraError> {
        if self.is_element(x) {
            Ok(x)
        } else {
            Err(AlgebraError::NotAnElement(x))
        }
    }

    /// `x ≤ y` in the algebra order, i.e. `y ⊆ x`.
    pub fn le(&self, x: VertexSet, y: VertexSet) -> bool {
        y.is_subset(x)
    }

    /// `x → y`, which is `y ∖ x` in this representation.
    pub fn implies(&self, x: VertexSet, y: VertexSet) -> Result<VertexSet, AlgebraError> {
        Ok(self.element(y)?.difference(self.element(x)?))
    }

    pub fn join(&self, x: VertexSet, y: VertexSet) -> Result<VertexSet, AlgebraError> {
        Ok(self.element(x)?.intersection(self.element(y)?))
    }

    /// The meet `x ∪ y` when it lies below some minimal element.
    pub fn meet_opt(&self, x: VertexSet, y: VertexSet) -> Result<Option<VertexSet>, AlgebraError> {
        let m = self.element(x)?.union(self.element(y)?);
        Ok(self.is_element(m).then_some(m))
    }

    /// Height of `[x, 1]`: the corank `|x|`.
    pub fn interval_height(&self, x: VertexSet) -> Result<usize, AlgebraError> {
        Ok(self.element(x)?.len())
    }

    /// All elements in increasing bitmask order.
    pub fn elements(&self) -> Result<Elements<'_>, AlgebraError> {
        let size = self.ground.len();
        if size > ELEMENT_GROUND_LIMIT {
            return Err(AlgebraError::GroundTooLarge {
                size,
                limit: ELEMENT_GROUND_LIMIT,
            });
        }
        Ok(Elements {
            algebra: self,
            next: 0,
            end: low_mask(size) as u64 + 1,
        })
    }

    /// `|⋃_e ↓e|` by inclusion-exclusion over the minimal elements:
    /// `Σ_{∅≠S} (-1)^{|S|+1} 2^{|⋂S|}`.
    pub fn element_count(&self) -> Result<u64, AlgebraError> {
        let m = self.min_edges.len();
        if m > MINIMAL_ELEMENT_LIMIT {
            return Err(AlgebraError::TooManyMinimalElements(m));
        }
        let total: i64 = nonempty_submasks(low_mask(m))
            .map(|s| {
                let term = 1i64 << intersection_of(&self.min_edges, s).len();
                if s.count_ones() % 2 == 1 {
                    term
                } else {
                    -term
                }
            })
            .sum();
        Ok(total as u64)
    }

    /// Checks the three implication-algebra identities over every
    /// element triple:
    /// `(a→b)→a = a`, `(a→b)→b = (b→a)→a`, `a→(b→c) = b→(a→c)`.
    pub fn check_abbott_axioms(&self) -> Result<bool, AlgebraError> {
        Ok(self
            .abbott_violation_with(|x, y| y.difference(x))?
            .is_none())
    }

    /// First triple `(a, b, c)` where `op` breaks one of the identities, if
    /// any. [`check_abbott_axioms`](Self::check_abbott_axioms) uses the
    /// algebra's own implication.
    pub fn abbott_violation_with(
        &self,
        op: impl Fn(VertexSet, VertexSet) -> VertexSet,
    ) -> Result<Option<(VertexSet, VertexSet, VertexSet)>, AlgebraError> {
        let elems: Vec<VertexSet> = self.elements()?.collect();
        if elems.len() > AXIOM_ELEMENT_LIMIT {
            return Err(AlgebraError::GroundTooLarge {
                size: elems.len(),
                limit: AXIOM_ELEMENT_LIMIT,
            });
        }
        for &a in &elems {
            for &b in &elems {
                let ab = op(a, b);
                if op(ab, a) != a || op(ab, b) != op(op(b, a), a) {
                    return Ok(Some((a, b, b)));
                }
                for &c in &elems {
                    if op(a, op(b, c)) != op(b, op(a, c)) {
                        return Ok(Some((a, b, c)));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Iterator returned by [`ImplicationAlgebra::elements`].
#[derive(Debug, Clone)]
pub struct Elements<'a> {
    algebra: &'a ImplicationAlgebra,
    next: u64,
    end: u64,
}

impl Iterator for Elements<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        while self.next < self.end {
            let x = VertexSet::from_bits(self.next as u32);
            self.next += 1;
            if self.algebra.is_element(x) {
                return Some(x);
            }
        }
        None
    }
}

/// Checks that `edges` could be the minimal elements of an algebra without
/// building one.
pub fn is_valid_minimal_family(ground_size: usize, edges: &[VertexSet]) -> bool {
    let covered = edges.iter().fold(VertexSet::EMPTY, |acc, &e| acc.union(e));
    !edges.is_empty()
        && covered == VertexSet::full(ground_size)
        && edges.iter().all(|e| !e.is_empty())
        && is_antichain(edges)
}
