//! Implication profiles and the conditions a profile must satisfy.
//!
//! A profile over an index set `M = {0, .., m-1}` assigns a nonnegative
//! integer to every nonempty subset. For an algebra with minimal elements
//! `e_0, .., e_{m-1}` the profile is `p(S) = ht[⋁S, 1] = |⋂_{i∈S} e_i|`.
//!
//! Subsets of `M` are `u32` bitmasks throughout.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::algebra::{ImplicationAlgebra, MINIMAL_ELEMENT_LIMIT};
use crate::hypergraph::{intersection_of, EdgeFamily};
use crate::set::{compress_mask, expand_mask, low_mask, Bits, VertexSet};

/// Largest supported index set.
pub const MAX_INDEX: usize = MINIMAL_ELEMENT_LIMIT;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("a profile needs a nonempty index set")]
    EmptyIndexSet,
    #[error("index set of size {0} exceeds the supported maximum of {MAX_INDEX}")]
    TooManyMinimalElements(usize),
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("{0:#b} must be a nonempty proper subset of the index set")]
    BadIndexSet(u32),
    #[error("derived value at {subset:#b} would be negative")]
    NegativeValue { subset: u32 },
}

/// Dense table of a function on the nonempty subsets of `{0, .., m-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    m: usize,
    // values[S - 1] = p(S)
    values: Vec<u32>,
}

impl Profile {
    /// `values[k]` is the value at mask `k + 1`.
    pub fn new(m: usize, values: Vec<u32>) -> Result<Self, ProfileError> {
        check_size(m)?;
        let expected = low_mask(m) as usize;
        if values.len() != expected {
            return Err(ProfileError::WrongLength {
                expected,
                got: values.len(),
            });
        }
        Ok(Profile { m, values })
    }

    pub fn from_fn(m: usize, f: impl FnMut(u32) -> u32) -> Result<Self, ProfileError> {
        check_size(m)?;
        Ok(Profile {
            m,
            values: (1..=low_mask(m)).map(f).collect(),
        })
    }

    /// Intersection profile `S ↦ |⋂_{i∈S} e_i|` of an indexed family.
    pub fn of_family(family: &EdgeFamily) -> Result<Self, ProfileError> {
        Self::from_fn(family.len(), |s| {
            intersection_of(&family.edges, s).len() as u32
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The full index set as a mask.
    pub fn full(&self) -> u32 {
        low_mask(self.m)
    }

    /// `p(S)`. Panics if `S` is empty or outside the index set.
    pub fn value(&self, subset: u32) -> u32 {
        assert!(
            subset != 0 && subset <= self.full(),
            "subset {subset:#b} outside the domain"
        );
        self.values[subset as usize - 1]
    }

    pub fn get(&self, subset: u32) -> Option<u32> {
        (subset != 0 && subset <= self.full()).then(|| self.values[subset as usize - 1])
    }

    /// `(S, p(S))` in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &v)| (k as u32 + 1, v))
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `p_A(X) = p(X ∪ A)` on `M ∖ A`, re-indexed so the surviving indices
    /// keep their relative order.
    pub fn derive_pa(&self, a: u32) -> Result<Profile, ProfileError> {
        let rest = self.complement_slots(a)?;
        let values = (1..=low_mask(rest.len()))
            .map(|x| self.value(expand_mask(x, &rest) | a))
            .collect();
        Ok(Profile {
            m: rest.len(),
            values,
        })
    }

    /// `q_A(X) = p(X) - p(X ∪ A)` on `M ∖ A`, re-indexed like
    /// [`derive_pa`](Self::derive_pa). Negative values are an error; the
    /// reported subset uses the original indices.
    pub fn derive_qa(&self, a: u32) -> Result<Profile, ProfileError> {
        let rest = self.complement_slots(a)?;
        let values = (1..=low_mask(rest.len()))
            .map(|x| {
                let orig = expand_mask(x, &rest);
                self.value(orig)
                    .checked_sub(self.value(orig | a))
                    .ok_or(ProfileError::NegativeValue { subset: orig })
            })
            .collect::<Result<_, _>>()?;
        Ok(Profile {
            m: rest.len(),
            values,
        })
    }

    /// Original indices surviving in `M ∖ A`, ascending.
    fn complement_slots(&self, a: u32) -> Result<Vec<usize>, ProfileError> {
        let full = self.full();
        if a == 0 || a & !full != 0 || a == full {
            return Err(ProfileError::BadIndexSet(a));
        }
        Ok(Bits::of(full & !a).collect())
    }

    /// First pair `S ⊂ S ∪ {i}` (by mask, then `i`) with `p(S) < p(S ∪ {i})`.
    ///
    /// Checking covering pairs is enough: a violation along any chain
    /// `S1 ⊆ S2` shows up on one of its steps.
    pub fn decreasing_violation(&self) -> Option<Violation> {
        let full = self.full();
        for s in 1..=full {
            for i in Bits::of(full & !s) {
                let t = s | 1 << i;
                if self.value(s) < self.value(t) {
                    return Some(Violation { s1: s, s2: t });
                }
            }
        }
        None
    }

    pub fn is_decreasing(&self) -> bool {
        self.decreasing_violation().is_none()
    }

    /// First non-disjoint pair breaking
    /// `p(S1) + p(S2) ≤ p(S1 ∪ S2) + p(S1 ∩ S2)`.
    ///
    /// Non-disjoint pairs sharing index `x` live in the Boolean lattice of
    /// sets containing `x`, where the inequality holds everywhere iff it
    /// holds on the squares `S+i, S+j` with `S ∋ x`. So only those squares
    /// (`S` nonempty) are scanned, in mask order of `S`, then `i < j`.
    pub fn paper_submodular_violation(&self) -> Option<Violation> {
        let full = self.full();
        for s in 1..=full {
            let outside = full & !s;
            for i in Bits::of(outside) {
                for j in Bits::of(outside & !((2u32 << i) - 1)) {
                    let (si, sj) = (s | 1 << i, s | 1 << j);
                    if self.value(si) + self.value(sj) > self.value(si | sj) + self.value(s) {
                        return Some(Violation { s1: si, s2: sj });
                    }
                }
            }
        }
        None
    }

    /// `p(S1) + p(S2) ≤ p(S1 ∪ S2) + p(S1 ∩ S2)` for all non-disjoint pairs.
    /// Note the direction: this is supermodularity in the usual polymatroid
    /// convention.
    pub fn is_paper_submodular(&self) -> bool {
        self.paper_submodular_violation().is_none()
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Profile")
            .field("m", &self.m)
            .field("values", &DebugMap(self))
            .finish()
    }
}

struct DebugMap<'a>(&'a Profile);

impl fmt::Debug for DebugMap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

fn check_size(m: usize) -> Result<(), ProfileError> {
    match m {
        0 => Err(ProfileError::EmptyIndexSet),
        m if m > MAX_INDEX => Err(ProfileError::TooManyMinimalElements(m)),
        _ => Ok(()),
    }
}

/// The implication profile: `p(S)` is the height of `[⋁S, 1]`, where the
/// join of minimal elements is the intersection of their edges.
pub fn compute_profile(algebra: &ImplicationAlgebra) -> Result<Profile, ProfileError> {
    let edges = algebra.minimal_elements();
    Profile::from_fn(edges.len(), |s| intersection_of(edges, s).len() as u32)
}

/// Profile at an element `b` of the envelope, given by its coatom set
/// `coatoms_of_b`: `p_b(S) = ht[⋁S ∨ b, 1] = |⋂S ∩ C_b|`.
///
/// `C_b = ground` is `b = 0` and gives the plain profile; `C_b = ∅` is
/// `b = 1` and gives zero everywhere.
pub fn profile_at(
    algebra: &ImplicationAlgebra,
    coatoms_of_b: VertexSet,
) -> Result<Profile, ProfileError> {
    let edges = algebra.minimal_elements();
    Profile::from_fn(edges.len(), |s| {
        intersection_of(edges, s).intersection(coatoms_of_b).len() as u32
    })
}

/// A pair of index subsets witnessing a failed condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub s1: u32,
    pub s2: u32,
}

/// Which part of the realizability conditions failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    Decreasing,
    PaperSubmodular,
    PaDecreasing,
    PaPaperSubmodular,
    QaDecreasing,
    QaPaperSubmodular,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::Decreasing => "decreasing",
            Clause::PaperSubmodular => "paper-submodular",
            Clause::PaDecreasing => "p_A decreasing",
            Clause::PaPaperSubmodular => "p_A paper-submodular",
            Clause::QaDecreasing => "q_A decreasing",
            Clause::QaPaperSubmodular => "q_A paper-submodular",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed clause with its witness. For derived clauses `a` is the set `A`
/// and the witness pair is expressed in the original indices of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConditionFailure {
    pub clause: Clause,
    pub a: Option<u32>,
    pub witness: Violation,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails", self.clause)?;
        if let Some(a) = self.a {
            write!(f, " for A = {a:#b}")?;
        }
        write!(f, " at ({:#b}, {:#b})", self.witness.s1, self.witness.s2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail(ConditionFailure),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failure(&self) -> Option<&ConditionFailure> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(f) => Some(f),
        }
    }
}

/// Runs the full condition suite: `p` decreasing, `p` paper-submodular, and
/// for every nonempty proper `A ⊂ M` (ascending masks) both `p_A` and `q_A`
/// decreasing and paper-submodular. Reports the first failure only.
pub fn check_realizability_conditions(p: &Profile) -> Verdict {
    let fail = |clause, a, witness| Verdict::Fail(ConditionFailure { clause, a, witness });
    if let Some(v) = p.decreasing_violation() {
        return fail(Clause::Decreasing, None, v);
    }
    if let Some(v) = p.paper_submodular_violation() {
        return fail(Clause::PaperSubmodular, None, v);
    }
    let full = p.full();
    for a in 1..full {
        let rest: Vec<usize> = Bits::of(full & !a).collect();
        let lift = |v: Violation| Violation {
            s1: expand_mask(v.s1, &rest),
            s2: expand_mask(v.s2, &rest),
        };
        let pa = p.derive_pa(a).expect("A is a nonempty proper subset");
        if let Some(v) = pa.decreasing_violation() {
            return fail(Clause::PaDecreasing, Some(a), lift(v));
        }
        if let Some(v) = pa.paper_submodular_violation() {
            return fail(Clause::PaPaperSubmodular, Some(a), lift(v));
        }
        let qa = p
            .derive_qa(a)
            .expect("p is decreasing, so q_A is nonnegative");
        if let Some(v) = qa.decreasing_violation() {
            return fail(Clause::QaDecreasing, Some(a), lift(v));
        }
        if let Some(v) = qa.paper_submodular_violation() {
            return fail(Clause::QaPaperSubmodular, Some(a), lift(v));
        }
    }
    Verdict::Pass
}

/// Re-indexes a profile on `M ∖ A` back to subsets of `M`.
pub fn lift_subset(compact: u32, a: u32, m: usize) -> u32 {
    let rest: Vec<usize> = Bits::of(low_mask(m) & !a).collect();
    expand_mask(compact, &rest)
}

/// Inverse of [`lift_subset`].
pub fn project_subset(subset: u32, a: u32, m: usize) -> u32 {
    let rest: Vec<usize> = Bits::of(low_mask(m) & !a).collect();
    compress_mask(subset, &rest)
}
