//! Realizing a profile as the intersection profile of an edge family.
//!
//! The construction recurses on the lowest index `b`: edge `b` gets
//! `p({b})` fresh vertices, the family realizing `p_{b}` is placed inside
//! it, and the family realizing `q_{b}` goes on fresh vertices outside.
//! Edge `m ≠ b` is the union of its inside and outside parts.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::hypergraph::{indexed_names, EdgeFamily, Hypergraph};
use crate::profile::{
    check_realizability_conditions, ConditionFailure, Profile, ProfileError, Verdict,
};
use crate::set::{VertexSet, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("profile fails the realizability conditions: {0}")]
    ConditionsFail(ConditionFailure),
    #[error(
        "inside family for index {index} needs {needed} vertices but the edge has {available}"
    )]
    InsideOverflow {
        index: usize,
        needed: usize,
        available: usize,
    },
    #[error("derived outside profile is negative at {subset:#b}")]
    NegativeDerived { subset: u32 },
    #[error("construction needs more than {MAX_GROUND} vertices")]
    TooManyVertices,
    #[error("realized family has the wrong intersection size at {subset:#b}")]
    VerificationFail { subset: u32 },
}

/// Builds an indexed edge family whose intersection profile is `p`.
///
/// The result is verified against `p` on every nonempty subset before it is
/// returned, and its ground set contains only vertices some edge uses.
pub fn realize(p: &Profile) -> Result<EdgeFamily, SynthError> {
    if let Verdict::Fail(f) = check_realizability_conditions(p) {
        return Err(SynthError::ConditionsFail(f));
    }
    let slots: Vec<usize> = (0..p.m()).collect();
    let (edges, ground_size) = build(p, &slots)?;
    let family = EdgeFamily::new(ground_size, edges);
    if let Some((subset, _)) = p
        .iter()
        .find(|&(s, v)| family.intersection_size(s) != v as usize)
    {
        return Err(SynthError::VerificationFail { subset });
    }
    Ok(family)
}

/// `slots[j]` is the top-level index of local index `j`, for error reports.
fn build(p: &Profile, slots: &[usize]) -> Result<(Vec<VertexSet>, usize), SynthError> {
    let own = p.value(1) as usize;
    if own > MAX_GROUND {
        return Err(SynthError::TooManyVertices);
    }
    let edge_b = VertexSet::full(own);
    if p.m() == 1 {
        return Ok((alloc::vec![edge_b], own));
    }

    let inside = p.derive_pa(1).expect("{0} is a proper subset when m >= 2");
    let (inner, inner_size) = build(&inside, &slots[1..])?;
    if inner_size > own {
        return Err(SynthError::InsideOverflow {
            index: slots[0],
            needed: inner_size,
            available: own,
        });
    }

    let outside = p.derive_qa(1).map_err(|e| match e {
        ProfileError::NegativeValue { subset } => SynthError::NegativeDerived {
            subset: crate::set::expand_mask(subset, slots),
        },
        _ => unreachable!("only negativity can fail here"),
    })?;
    let (outer, outer_size) = build(&outside, &slots[1..])?;
    if own + outer_size > MAX_GROUND {
        return Err(SynthError::TooManyVertices);
    }

    // The inside family is already packed onto 0..inner_size, which is the
    // front of edge b, so it needs no renumbering.
    let mut edges = Vec::with_capacity(p.m());
    edges.push(edge_b);
    edges.extend(
        inner
            .iter()
            .zip(&outer)
            .map(|(&f, &g)| f.union(g.shifted(own))),
    );
    Ok((edges, own + outer_size))
}

/// Ways a realized family falls short of a strict Sperner hypergraph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegeneracyReport {
    /// Groups (size ≥ 2) of indices whose nonempty edges are equal.
    pub coinciding: Vec<Vec<usize>>,
    /// Pairs `(i, j)` with `∅ ≠ e_i ⊊ e_j`.
    pub nested: Vec<(usize, usize)>,
    /// Indices whose edge is empty.
    pub empty: Vec<usize>,
    pub distinct_maximal: usize,
    pub indices: usize,
}

impl DegeneracyReport {
    pub fn of_family(family: &EdgeFamily) -> Self {
        let edges = &family.edges;
        let mut report = DegeneracyReport {
            indices: edges.len(),
            ..Default::default()
        };
        let mut grouped = alloc::vec![false; edges.len()];
        for (i, &e) in edges.iter().enumerate() {
            if e.is_empty() {
                report.empty.push(i);
                continue;
            }
            if !grouped[i] {
                let group: Vec<usize> = (i..edges.len()).filter(|&j| edges[j] == e).collect();
                for &j in &group {
                    grouped[j] = true;
                }
                if group.len() > 1 {
                    report.coinciding.push(group);
                }
            }
            for (j, &f) in edges.iter().enumerate() {
                if e.is_proper_subset(f) {
                    report.nested.push((i, j));
                }
            }
        }
        report.distinct_maximal = maximal_distinct(edges).len();
        report
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.coinciding.is_empty() && self.nested.is_empty() && self.empty.is_empty())
    }
}

impl fmt::Display for DegeneracyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(
                f,
                "degenerate: {} distinct maximal edges of {} indices",
                self.distinct_maximal, self.indices
            )
        } else {
            write!(f, "strict: {} distinct edges", self.indices)
        }
    }
}

/// Distinct, nonempty, inclusion-maximal edges in order of first occurrence.
fn maximal_distinct(edges: &[VertexSet]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = Vec::new();
    for &e in edges {
        if !e.is_empty() && !out.contains(&e) && !edges.iter().any(|&f| e.is_proper_subset(f)) {
            out.push(e);
        }
    }
    out
}

/// Output of [`realize_to_hypergraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub family: EdgeFamily,
    /// The distinct maximal edges, with vertices `v0`, `v1`, ...; equal to
    /// the family itself when the report is clean.
    pub hypergraph: Hypergraph,
    pub degeneracy: DegeneracyReport,
}

/// [`realize`], then split the result into a strict hypergraph and a report
/// of coinciding, nested or empty edges.
pub fn realize_to_hypergraph(p: &Profile) -> Result<Realization, SynthError> {
    let family = realize(p)?;
    Ok(strict_realization(family))
}

pub(crate) fn strict_realization(family: EdgeFamily) -> Realization {
    let degeneracy = DegeneracyReport::of_family(&family);
    let names: Vec<String> = indexed_names(family.ground_size);
    let hypergraph = Hypergraph::from_masks(names, maximal_distinct(&family.edges))
        .expect("trimmed family covers its ground with its maximal edges");
    Realization {
        family,
        hypergraph,
        degeneracy,
    }
}
