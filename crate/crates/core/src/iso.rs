//! Isomorphism of implication algebras and hypergraphs.
//!
//! Two finite implication algebras are isomorphic iff some bijection `φ`
//! between their minimal elements carries one profile onto the other:
//! `p1(X) = p2(φ[X])` for every nonempty `X`. [`algebra_iso`] searches for
//! such a bijection; [`poset_iso_oracle`] decides the same question by brute
//! force on the explicit element posets and exists to cross-check it.

use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{AlgebraError, ImplicationAlgebra};
use crate::hypergraph::Hypergraph;
use crate::profile::{compute_profile, Profile};
use crate::set::{expand_mask, nonempty_submasks, Bits};

/// Largest element count the poset oracle accepts.
pub const ORACLE_ELEMENT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("mapping is not a bijection between the minimal elements")]
    NotABijection,
    #[error("profiles differ at {0:#b} under the mapping")]
    ProfileMismatch(u32),
    #[error("algebra has {0} elements, more than the oracle limit of {ORACLE_ELEMENT_LIMIT}")]
    TooLarge(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A profile-preserving bijection between minimal-element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsoWitness {
    // mapping[i] = φ(i)
    mapping: Vec<usize>,
}

impl IsoWitness {
    /// Validates `mapping` (`mapping[i] = φ(i)`) against both profiles.
    pub fn new(p1: &Profile, p2: &Profile, mapping: Vec<usize>) -> Result<Self, IsoError> {
        let m = p1.m();
        let mut seen = alloc::vec![false; m];
        if p2.m() != m || mapping.len() != m {
            return Err(IsoError::NotABijection);
        }
        for &j in &mapping {
            if j >= m || core::mem::replace(&mut seen[j], true) {
                return Err(IsoError::NotABijection);
            }
        }
        for (x, v) in p1.iter() {
            if p2.value(map_mask(x, &mapping)) != v {
                return Err(IsoError::ProfileMismatch(x));
            }
        }
        Ok(IsoWitness { mapping })
    }

    pub fn image(&self, i: usize) -> usize {
        self.mapping[i]
    }

    /// `(i, φ(i))` for every index, ascending in `i`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mapping.iter().copied().enumerate()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }
}

fn map_mask(x: u32, mapping: &[usize]) -> u32 {
    Bits::of(x).fold(0, |acc, i| acc | 1 << mapping[i])
}

/// Pruning key for an index: its singleton value and the sorted values of
/// the pairs it belongs to.
fn signature(p: &Profile, i: usize) -> (u32, Vec<u32>) {
    let mut pairs: Vec<u32> = (0..p.m())
        .filter(|&j| j != i)
        .map(|j| p.value(1 << i | 1 << j))
        .collect();
    pairs.sort_unstable();
    (p.value(1 << i), pairs)
}

/// Profile-bijection search between two profiles of equal size.
pub fn profile_iso(p1: &Profile, p2: &Profile) -> Option<IsoWitness> {
    let m = p1.m();
    if p2.m() != m {
        return None;
    }
    let sig1: Vec<_> = (0..m).map(|i| signature(p1, i)).collect();
    let sig2: Vec<_> = (0..m).map(|i| signature(p2, i)).collect();
    {
        let (mut a, mut b) = (sig1.clone(), sig2.clone());
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    // Assign the most constrained indices first: signature descending, then
    // index ascending.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| sig1[j].cmp(&sig1[i]).then(i.cmp(&j)));

    let mut search = Search {
        p1,
        p2,
        sig1: &sig1,
        sig2: &sig2,
        order: &order,
        mapping: alloc::vec![usize::MAX; m],
        used: alloc::vec![false; m],
    };
    if search.extend(0) {
        let w = IsoWitness::new(p1, p2, search.mapping);
        debug_assert!(w.is_ok());
        w.ok()
    } else {
        None
    }
}

struct Search<'a> {
    p1: &'a Profile,
    p2: &'a Profile,
    sig1: &'a [(u32, Vec<u32>)],
    sig2: &'a [(u32, Vec<u32>)],
    order: &'a [usize],
    mapping: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        for j in 0..self.mapping.len() {
            if self.used[j] || self.sig1[i] != self.sig2[j] {
                continue;
            }
            self.mapping[i] = j;
            if self.consistent(depth) {
                self.used[j] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.used[j] = false;
            }
        }
        self.mapping[i] = usize::MAX;
        false
    }

    /// Checks every subset of the assigned indices that contains the newest
    /// one; older subsets were checked at earlier depths.
    fn consistent(&self, depth: usize) -> bool {
        let newest = self.order[depth];
        let earlier = &self.order[..depth];
        let rest = if depth == 0 { 0 } else { (1u32 << depth) - 1 };
        core::iter::once(0)
            .chain(nonempty_submasks(rest))
            .all(|sub| {
                let x = expand_mask(sub, earlier) | 1 << newest;
                self.p1.value(x) == self.p2.value(map_mask(x, &self.mapping))
            })
    }
}

/// Decides `I1 ≅ I2` by searching for a profile-preserving bijection of the
/// minimal elements.
pub fn algebra_iso(
    a: &ImplicationAlgebra,
    b: &ImplicationAlgebra,
) -> Result<Option<IsoWitness>, IsoError> {
    let p1 = compute_profile(a).map_err(|_| too_many(a))?;
    let p2 = compute_profile(b).map_err(|_| too_many(b))?;
    Ok(profile_iso(&p1, &p2))
}

fn too_many(a: &ImplicationAlgebra) -> IsoError {
    IsoError::Algebra(AlgebraError::TooManyMinimalElements(
        a.minimal_elements().len(),
    ))
}

/// Hypergraph isomorphism through the algebras. Non-Sperner inputs are
/// reduced to their maximal edges first.
pub fn hypergraph_iso(h1: &Hypergraph, h2: &Hypergraph) -> Result<bool, IsoError> {
    Ok(hypergraph_iso_witness(h1, h2)?.is_some())
}

/// Like [`hypergraph_iso`], returning the edge bijection of the reduced
/// hypergraphs.
pub fn hypergraph_iso_witness(
    h1: &Hypergraph,
    h2: &Hypergraph,
) -> Result<Option<IsoWitness>, IsoError> {
    let (r1, r2) = (h1.maximal_reduction(), h2.maximal_reduction());
    if r1.vertex_count() != r2.vertex_count() || r1.edge_count() != r2.edge_count() {
        return Ok(None);
    }
    if r1.edge_count() == 0 {
        return Ok(Some(IsoWitness {
            mapping: Vec::new(),
        }));
    }
    let a = ImplicationAlgebra::from_hypergraph(&r1)?;
    let b = ImplicationAlgebra::from_hypergraph(&r2)?;
    algebra_iso(&a, &b)
}

/// Explicit finite poset with its order as a boolean matrix.
struct Poset {
    len: usize,
    le: Vec<bool>,
    // (number of elements above, number below) for pruning
    profile: Vec<(usize, usize)>,
}

impl Poset {
    fn of(algebra: &ImplicationAlgebra) -> Result<Self, IsoError> {
        let elems: Vec<_> = algebra.elements()?.take(ORACLE_ELEMENT_LIMIT + 1).collect();
        if elems.len() > ORACLE_ELEMENT_LIMIT {
            let total = algebra.elements()?.count();
            return Err(IsoError::TooLarge(total));
        }
        let len = elems.len();
        let mut le = alloc::vec![false; len * len];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                le[i * len + j] = algebra.le(x, y);
            }
        }
        let profile = (0..len)
            .map(|i| {
                let up = (0..len).filter(|&j| le[i * len + j]).count();
                let down = (0..len).filter(|&j| le[j * len + i]).count();
                (up, down)
            })
            .collect();
        Ok(Poset { len, le, profile })
    }

    fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.len + j]
    }
}

/// Brute-force order-isomorphism test on the explicit element sets.
///
/// Backtracks over element bijections, matching elements only to elements
/// with the same numbers of elements above and below, and checking the
/// order relation against every earlier assignment in both directions.
pub fn poset_iso_oracle(a: &ImplicationAlgebra, b: &ImplicationAlgebra) -> Result<bool, IsoError> {
    let (pa, pb) = (Poset::of(a)?, Poset::of(b)?);
    if pa.len != pb.len {
        return Ok(false);
    }
    let (mut ka, mut kb) = (pa.profile.clone(), pb.profile.clone());
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return Ok(false);
    }
    let mut map = alloc::vec![usize::MAX; pa.len];
    let mut used = alloc::vec![false; pa.len];
    Ok(order_search(&pa, &pb, 0, &mut map, &mut used))
}

fn order_search(a: &Poset, b: &Poset, i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if i == a.len {
        return true;
    }
    for j in 0..b.len {
        if used[j] || a.profile[i] != b.profile[j] {
            continue;
        }
        let fits = (0..i).all(|k| a.le(i, k) == b.le(j, map[k]) && a.le(k, i) == b.le(map[k], j));
        if fits {
            map[i] = j;
            used[j] = true;
            if order_search(a, b, i + 1, map, used) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}
