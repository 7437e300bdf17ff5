//! Graphical polymatroids of edge families and recognition of Boolean
//! polymatroids.
//!
//! `ρ(S) = |⋃_{i∈S} e_i|` and the intersection profile `p(S) = |⋂_{i∈S} e_i|`
//! determine each other by the same alternating sum
//! `f'(S) = Σ_{∅≠T⊆S} (-1)^{|T|+1} f(T)`, computed here as a subset-sum
//! (zeta) transform of the signed table.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::hypergraph::{union_of, EdgeFamily, Hypergraph};
use crate::profile::{
    check_realizability_conditions, ConditionFailure, Profile, ProfileError, Verdict, MAX_INDEX,
};
use crate::set::{low_mask, Bits};
use crate::synth::{self, DegeneracyReport, Realization, SynthError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolymatroidError {
    #[error("a polymatroid table needs a nonempty index set")]
    EmptyIndexSet,
    #[error("{0} indices exceed the supported maximum of {MAX_INDEX}")]
    TooManyEdges(usize),
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("value at the empty set must be 0, got {0}")]
    NotNormalized(u32),
    #[error("alternating sum is negative at {subset:#b}")]
    NegativeResult { subset: u32 },
}

/// Dense table of a set function on all subsets of `{0, .., m-1}`,
/// normalized so the empty set maps to 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolymatroidFn {
    m: usize,
    values: Vec<u32>,
}

impl PolymatroidFn {
    /// `values[S]` is the value at mask `S`; `values[0]` must be 0.
    pub fn new(m: usize, values: Vec<u32>) -> Result<Self, PolymatroidError> {
        check_size(m)?;
        let expected = 1usize << m;
        if values.len() != expected {
            return Err(PolymatroidError::WrongLength {
                expected,
                got: values.len(),
            });
        }
        if values[0] != 0 {
            return Err(PolymatroidError::NotNormalized(values[0]));
        }
        Ok(PolymatroidFn { m, values })
    }

    /// `f` is consulted on nonempty masks only.
    pub fn from_fn(m: usize, mut f: impl FnMut(u32) -> u32) -> Result<Self, PolymatroidError> {
        check_size(m)?;
        let values = (0..=low_mask(m))
            .map(|s| if s == 0 { 0 } else { f(s) })
            .collect();
        Ok(PolymatroidFn { m, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Panics if `S` is outside the index set.
    pub fn value(&self, subset: u32) -> u32 {
        self.values[subset as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `(S, ρ(S))` in increasing mask order, starting at `∅`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.values.iter().enumerate().map(|(s, &v)| (s as u32, v))
    }

    /// The first failure of normalization, monotonicity or (standard)
    /// submodularity `ρ(S1) + ρ(S2) ≥ ρ(S1 ∪ S2) + ρ(S1 ∩ S2)`.
    ///
    /// Both properties are checked on covering steps and elementary squares
    /// `S+i, S+j` (ascending `S`, then `i < j`), which is equivalent to the
    /// full pairwise conditions on a Boolean lattice.
    pub fn polymatroid_violation(&self) -> Option<PolymatroidViolation> {
        if self.values[0] != 0 {
            return Some(PolymatroidViolation::NotNormalized);
        }
        let full = low_mask(self.m);
        for s in 0..=full {
            for i in Bits::of(full & !s) {
                if self.value(s) > self.value(s | 1 << i) {
                    return Some(PolymatroidViolation::NotMonotone {
                        subset: s,
                        superset: s | 1 << i,
                    });
                }
            }
        }
        for s in 0..=full {
            let outside = full & !s;
            for i in Bits::of(outside) {
                for j in Bits::of(outside & !((2u32 << i) - 1)) {
                    let (si, sj) = (s | 1 << i, s | 1 << j);
                    if self.value(si) + self.value(sj) < self.value(si | sj) + self.value(s) {
                        return Some(PolymatroidViolation::NotSubmodular { s1: si, s2: sj });
                    }
                }
            }
        }
        None
    }

    pub fn is_polymatroid(&self) -> bool {
        self.polymatroid_violation().is_none()
    }
}

impl fmt::Debug for PolymatroidFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolymatroidFn")
            .field("m", &self.m)
            .field("values", &self.values)
            .finish()
    }
}

fn check_size(m: usize) -> Result<(), PolymatroidError> {
    match m {
        0 => Err(PolymatroidError::EmptyIndexSet),
        m if m > MAX_INDEX => Err(PolymatroidError::TooManyEdges(m)),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolymatroidViolation {
    NotNormalized,
    NotMonotone { subset: u32, superset: u32 },
    NotSubmodular { s1: u32, s2: u32 },
}

impl fmt::Display for PolymatroidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolymatroidViolation::NotNormalized => f.write_str("value at the empty set is not 0"),
            PolymatroidViolation::NotMonotone { subset, superset } => {
                write!(f, "not monotone: {subset:#b} ⊆ {superset:#b}")
            }
            PolymatroidViolation::NotSubmodular { s1, s2 } => {
                write!(f, "not submodular at ({s1:#b}, {s2:#b})")
            }
        }
    }
}

/// `ρ(S) = |⋃_{i∈S} e_i|` for the edges of `h`.
pub fn rho_of_hypergraph(h: &Hypergraph) -> Result<PolymatroidFn, PolymatroidError> {
    PolymatroidFn::from_fn(h.edge_count(), |s| union_of(h.edges(), s).len() as u32)
}

/// `ρ` of an indexed family, repeated or empty edges included.
pub fn rho_of_family(family: &EdgeFamily) -> Result<PolymatroidFn, PolymatroidError> {
    PolymatroidFn::from_fn(family.len(), |s| union_of(&family.edges, s).len() as u32)
}

/// `Σ_{∅≠T⊆S} (-1)^{|T|+1} f(T)` for every `S`, with `f(∅)` ignored and the
/// result at `∅` equal to 0.
fn alternating_sums(m: usize, f: impl Fn(u32) -> u32) -> Vec<i64> {
    let mut table: Vec<i64> = (0..=low_mask(m))
        .map(|t| match t {
            0 => 0,
            t if t.count_ones() % 2 == 1 => f(t) as i64,
            t => -(f(t) as i64),
        })
        .collect();
    for bit in 0..m {
        let step = 1usize << bit;
        for s in 0..table.len() {
            if s & step != 0 {
                table[s] += table[s ^ step];
            }
        }
    }
    table
}

fn to_unsigned(sums: &[i64]) -> Result<Vec<u32>, PolymatroidError> {
    sums.iter()
        .enumerate()
        .map(|(s, &v)| {
            u32::try_from(v).map_err(|_| PolymatroidError::NegativeResult { subset: s as u32 })
        })
        .collect()
}

/// `ρ` from a profile by inclusion-exclusion.
pub fn rho_from_profile(p: &Profile) -> Result<PolymatroidFn, PolymatroidError> {
    let sums = alternating_sums(p.m(), |t| p.value(t));
    Ok(PolymatroidFn {
        m: p.m(),
        values: to_unsigned(&sums)?,
    })
}

/// The profile from `ρ`, by the same alternating sum.
pub fn profile_from_rho(r: &PolymatroidFn) -> Result<Profile, PolymatroidError> {
    let sums = alternating_sums(r.m(), |t| r.value(t));
    let values = to_unsigned(&sums[1..]).map_err(|e| match e {
        PolymatroidError::NegativeResult { subset } => {
            PolymatroidError::NegativeResult { subset: subset + 1 }
        }
        e => e,
    })?;
    Profile::new(r.m(), values).map_err(|e| match e {
        ProfileError::TooManyMinimalElements(m) => PolymatroidError::TooManyEdges(m),
        _ => unreachable!("table sizes already agree"),
    })
}

/// Why a table is not a Boolean polymatroid, tagged by pipeline stage.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("stage 1: not a polymatroid: {0}")]
    NotPolymatroid(PolymatroidViolation),
    #[error("stage 2: derived profile is negative at {subset:#b}")]
    NegativeProfile { subset: u32 },
    #[error("stage 3: derived profile fails the conditions: {0}")]
    ConditionsFail(ConditionFailure),
    #[error("stage 4: synthesis failed after the conditions passed: {0}")]
    Synthesis(SynthError),
    #[error("stage 5: realized family has a different ρ at {subset:#b}")]
    InternalInconsistency { subset: u32 },
}

impl Rejection {
    pub fn stage(&self) -> u8 {
        match self {
            Rejection::NotPolymatroid(_) => 1,
            Rejection::NegativeProfile { .. } => 2,
            Rejection::ConditionsFail(_) => 3,
            Rejection::Synthesis(_) => 4,
            Rejection::InternalInconsistency { .. } => 5,
        }
    }

    /// Stages 4 and 5 can only fail if the conditions are not sufficient.
    pub fn is_internal(&self) -> bool {
        self.stage() >= 4
    }
}

/// Which notion of Boolean polymatroid the recovered family satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reading {
    /// The edges are distinct and nonempty: `ρ` is the polymatroid of a
    /// hypergraph in the strict sense.
    DistinctEdges,
    /// Only an indexed family with repeated or empty edges realizes `ρ`.
    IndexedFamily,
}

impl Reading {
    pub fn name(self) -> &'static str {
        match self {
            Reading::DistinctEdges => "distinct-edges",
            Reading::IndexedFamily => "indexed-family",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub realization: Realization,
    pub reading: Reading,
}

impl Recognition {
    pub fn family(&self) -> &EdgeFamily {
        &self.realization.family
    }

    pub fn degeneracy(&self) -> &DegeneracyReport {
        &self.realization.degeneracy
    }
}

/// Decides whether `r` is the graphical polymatroid of an indexed edge
/// family, and produces one when it is.
///
/// Stages: (1) polymatroid axioms, (2) profile by inclusion-exclusion must
/// be nonnegative, (3) realizability conditions, (4) synthesis, (5) the
/// synthesized family's `ρ` must equal `r` exactly.
pub fn recognize_boolean(r: &PolymatroidFn) -> Result<Recognition, Rejection> {
    if let Some(v) = r.polymatroid_violation() {
        return Err(Rejection::NotPolymatroid(v));
    }
    let p = profile_from_rho(r).map_err(|e| match e {
        PolymatroidError::NegativeResult { subset } => Rejection::NegativeProfile { subset },
        _ => unreachable!("sizes were validated on construction"),
    })?;
    if let Verdict::Fail(f) = check_realizability_conditions(&p) {
        return Err(Rejection::ConditionsFail(f));
    }
    let family = synth::realize(&p).map_err(Rejection::Synthesis)?;
    let realized = rho_of_family(&family).expect("family has r.m() edges");
    if let Some((subset, _)) = realized.iter().find(|&(s, v)| r.value(s) != v) {
        return Err(Rejection::InternalInconsistency { subset });
    }
    let realization = synth::strict_realization(family);
    let d = &realization.degeneracy;
    let reading = if d.coinciding.is_empty() && d.empty.is_empty() {
        Reading::DistinctEdges
    } else {
        Reading::IndexedFamily
    };
    Ok(Recognition {
        realization,
        reading,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ImplicationAlgebra;
    use crate::hypergraph::fixtures::*;
    use crate::profile::compute_profile;
    use alloc::vec;

    fn profile_of(h: &Hypergraph) -> Profile {
        compute_profile(&ImplicationAlgebra::from_hypergraph(h).unwrap()).unwrap()
    }

    fn table(m: usize, values: &[u32]) -> PolymatroidFn {
        PolymatroidFn::new(m, values.to_vec()).unwrap()
    }

    #[test]
    fn rho_of_corpus_graphs() {
        let t = rho_of_hypergraph(&triangle()).unwrap();
        assert_eq!(t.values(), &[0, 2, 2, 3, 2, 3, 3, 3]);
        assert_eq!(rho_of_hypergraph(&matching()).unwrap().value(0b11), 4);
        assert!(matches!(
            rho_of_hypergraph(&Hypergraph::from_masks(vec![], vec![]).unwrap()),
            Err(PolymatroidError::EmptyIndexSet)
        ));
    }

    #[test]
    fn transforms() {
        let t = profile_of(&triangle());
        assert_eq!(rho_from_profile(&t).unwrap().value(0b111), 3);
        assert_eq!(
            rho_from_profile(&profile_of(&path())).unwrap().value(0b11),
            3
        );
        assert_eq!(
            rho_from_profile(&profile_of(&matching()))
                .unwrap()
                .value(0b11),
            4
        );
        let back = profile_from_rho(&rho_of_hypergraph(&triangle()).unwrap()).unwrap();
        assert_eq!(back.value(0b011), 1);
        assert_eq!(back, t);
        assert_eq!(
            profile_from_rho(&rho_of_hypergraph(&matching()).unwrap())
                .unwrap()
                .value(0b11),
            0
        );
    }

    #[test]
    fn negative_sums_are_errors() {
        // p({0}) = p({1}) = 0 but p({0,1}) = 1 gives ρ({0,1}) = -1.
        let p = Profile::new(2, vec![0, 0, 1]).unwrap();
        assert_eq!(
            rho_from_profile(&p),
            Err(PolymatroidError::NegativeResult { subset: 3 })
        );
        let r = table(2, &[0, 1, 1, 3]);
        assert_eq!(
            profile_from_rho(&r),
            Err(PolymatroidError::NegativeResult { subset: 3 })
        );
    }

    #[test]
    fn construction_checks() {
        assert_eq!(
            PolymatroidFn::new(1, vec![1, 1]),
            Err(PolymatroidError::NotNormalized(1))
        );
        assert_eq!(
            PolymatroidFn::new(1, vec![0]),
            Err(PolymatroidError::WrongLength {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn polymatroid_axioms() {
        assert!(rho_of_hypergraph(&triangle()).unwrap().is_polymatroid());
        assert_eq!(
            table(2, &[0, 2, 0, 1]).polymatroid_violation(),
            Some(PolymatroidViolation::NotMonotone {
                subset: 1,
                superset: 3
            })
        );
        assert_eq!(
            table(2, &[0, 1, 1, 3]).polymatroid_violation(),
            Some(PolymatroidViolation::NotSubmodular { s1: 1, s2: 2 })
        );
    }

    #[test]
    fn recognizer() {
        let rho_t = rho_of_hypergraph(&triangle()).unwrap();
        let rec = recognize_boolean(&rho_t).unwrap();
        assert_eq!(rec.reading, Reading::DistinctEdges);
        assert_eq!(rho_of_family(rec.family()).unwrap(), rho_t);
        assert_eq!(
            rec.realization.hypergraph.canonical_form(),
            triangle().canonical_form()
        );

        let dup = recognize_boolean(&table(2, &[0, 1, 1, 1])).unwrap();
        assert_eq!(dup.reading, Reading::IndexedFamily);
        assert_eq!(dup.family().edges[0], dup.family().edges[1]);
        assert_eq!(dup.degeneracy().coinciding, [vec![0, 1]]);

        let err = recognize_boolean(&table(2, &[0, 2, 2, 5])).unwrap_err();
        assert_eq!(err.stage(), 1);
        assert_eq!(
            err,
            Rejection::NotPolymatroid(PolymatroidViolation::NotSubmodular { s1: 1, s2: 2 })
        );
    }

    #[test]
    fn stage_two_and_three_rejections() {
        // Four singletons of one vertex each, disjoint in pairs, yet a common
        // vertex in all four: ρ passes the axioms and the profile is
        // nonnegative, but it is not decreasing.
        let r = table(4, &[0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 3]);
        assert!(r.is_polymatroid());
        let err = recognize_boolean(&r).unwrap_err();
        assert_eq!(err.stage(), 3);
        let Rejection::ConditionsFail(f) = err else {
            unreachable!()
        };
        assert_eq!(f.clause, crate::profile::Clause::Decreasing);
        assert_eq!((f.witness.s1, f.witness.s2), (0b0111, 0b1111));

        // A uniform rank-2 table on three indices: the triple region is -1.
        let u = table(3, &[0, 1, 1, 2, 1, 2, 2, 2]);
        assert!(u.is_polymatroid());
        assert_eq!(
            recognize_boolean(&u).unwrap_err(),
            Rejection::NegativeProfile { subset: 0b111 }
        );
    }
}
