//! Exhaustive generation of small hypergraphs, used as a test corpus.

use alloc::vec::Vec;

use thiserror::Error;

use crate::hypergraph::{for_each_permutation, is_antichain, permute_set, Hypergraph};
use crate::set::{low_mask, VertexSet, MAX_GROUND};

pub const DEFAULT_VERTEX_CAP: usize = 6;
pub const DEFAULT_EDGE_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("bounds ({max_vertices} vertices, {max_edges} edges) exceed the caps ({vertex_cap}, {edge_cap})")]
    BoundsTooLarge {
        max_vertices: usize,
        max_edges: usize,
        vertex_cap: usize,
        edge_cap: usize,
    },
}

/// Parameters of an enumeration run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub sperner_only: bool,
    /// Yield one representative per vertex-relabeling class.
    pub up_to_isomorphism: bool,
    pub vertex_cap: usize,
    pub edge_cap: usize,
}

impl Enumeration {
    pub fn new(max_vertices: usize, max_edges: usize) -> Self {
        Enumeration {
            max_vertices,
            max_edges,
            sperner_only: false,
            up_to_isomorphism: false,
            vertex_cap: DEFAULT_VERTEX_CAP,
            edge_cap: DEFAULT_EDGE_CAP,
        }
    }

    pub fn sperner_only(mut self, yes: bool) -> Self {
        self.sperner_only = yes;
        self
    }

    pub fn up_to_isomorphism(mut self, yes: bool) -> Self {
        self.up_to_isomorphism = yes;
        self
    }

    pub fn caps(mut self, vertex_cap: usize, edge_cap: usize) -> Self {
        self.vertex_cap = vertex_cap.min(MAX_GROUND);
        self.edge_cap = edge_cap;
        self
    }

    pub fn iter(&self) -> Result<HypergraphEnumerator, EnumerateError> {
        if self.max_vertices > self.vertex_cap || self.max_edges > self.edge_cap {
            return Err(EnumerateError::BoundsTooLarge {
                max_vertices: self.max_vertices,
                max_edges: self.max_edges,
                vertex_cap: self.vertex_cap,
                edge_cap: self.edge_cap,
            });
        }
        Ok(HypergraphEnumerator {
            config: self.clone(),
            n: 0,
            k: 0,
            combo: Vec::new(),
            perms: Vec::new(),
        })
    }
}

/// Every valid hypergraph with `1..=max_vertices` vertices (named `a`, `b`,
/// ...) and `1..=max_edges` edges.
pub fn enumerate_hypergraphs(
    max_vertices: usize,
    max_edges: usize,
    sperner_only: bool,
) -> Result<HypergraphEnumerator, EnumerateError> {
    Enumeration::new(max_vertices, max_edges)
        .sperner_only(sperner_only)
        .iter()
}

/// Pull-based stream over the corpus.
///
/// Order: by vertex count, then edge count, then the edge-mask list in
/// lexicographic order. Edges within a hypergraph are sorted by mask.
#[derive(Debug, Clone)]
pub struct HypergraphEnumerator {
    config: Enumeration,
    n: usize,
    k: usize,
    // Strictly increasing nonempty masks over `n` vertices; empty means the
    // (n, k) block has not started.
    combo: Vec<u32>,
    // Relabeling tables for the current `n` when deduplicating.
    perms: Vec<Vec<u32>>,
}

impl HypergraphEnumerator {
    /// Moves `combo` to the next k-combination of `1..2^n`, or to the first
    /// combination of the next (n, k) block. Returns false when exhausted.
    fn advance(&mut self) -> bool {
        loop {
            if self.n == 0 {
                if self.config.max_vertices == 0 || self.config.max_edges == 0 {
                    return false;
                }
                self.start_block(1, 1);
                if self.block_nonempty() {
                    return true;
                }
                continue;
            }
            if self.block_nonempty() && self.next_combination() {
                return true;
            }
            let (n, k) = if self.k < self.config.max_edges {
                (self.n, self.k + 1)
            } else if self.n < self.config.max_vertices {
                (self.n + 1, 1)
            } else {
                return false;
            };
            self.start_block(n, k);
            if self.block_nonempty() {
                return true;
            }
        }
    }

    fn start_block(&mut self, n: usize, k: usize) {
        if n != self.n && self.config.up_to_isomorphism {
            self.perms.clear();
            let size = 1usize << n;
            for_each_permutation(n, |perm| {
                self.perms.push(
                    (0..size as u32)
                        .map(|m| permute_set(VertexSet::from_bits(m), perm).bits())
                        .collect(),
                );
            });
        }
        self.n = n;
        self.k = k;
        self.combo = (1..=k as u32).collect();
    }

    fn block_nonempty(&self) -> bool {
        self.combo.last().is_some_and(|&m| m <= low_mask(self.n))
    }

    fn next_combination(&mut self) -> bool {
        let top = low_mask(self.n);
        let k = self.combo.len();
        for i in (0..k).rev() {
            // Position i can hold at most top - (k - 1 - i).
            if self.combo[i] < top - (k - 1 - i) as u32 {
                self.combo[i] += 1;
                for j in i + 1..k {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn accepts(&self) -> bool {
        let union = self.combo.iter().fold(0, |acc, &m| acc | m);
        if union != low_mask(self.n) {
            return false;
        }
        let edges: Vec<VertexSet> = self
            .combo
            .iter()
            .map(|&m| VertexSet::from_bits(m))
            .collect();
        if self.config.sperner_only && !is_antichain(&edges) {
            return false;
        }
        !self.config.up_to_isomorphism || self.is_canonical()
    }

    fn is_canonical(&self) -> bool {
        let mut image = Vec::with_capacity(self.combo.len());
        self.perms.iter().all(|table| {
            image.clear();
            image.extend(self.combo.iter().map(|&m| table[m as usize]));
            image.sort_unstable();
            image.as_slice() >= self.combo.as_slice()
        })
    }
}

impl Iterator for HypergraphEnumerator {
    type Item = Hypergraph;

    fn next(&mut self) -> Option<Hypergraph> {
        while self.advance() {
            if self.accepts() {
                let edges = self
                    .combo
                    .iter()
                    .map(|&m| VertexSet::from_bits(m))
                    .collect();
                return Some(
                    Hypergraph::with_alphabetic_names(self.n, edges)
                        .expect("enumerator only yields valid hypergraphs"),
                );
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::one_edge;
    use alloc::collections::BTreeSet;

    /// Independent count: scan every family of nonempty subsets as a bitmask
    /// over the power set.
    fn brute_force(max_v: usize, max_e: usize, sperner: bool, dedup: bool) -> usize {
        let mut total = 0;
        for n in 1..=max_v {
            let subsets = (1u32 << n) - 1;
            let mut classes = BTreeSet::new();
            for family in 1u64..(1u64 << subsets) {
                if family.count_ones() as usize > max_e {
                    continue;
                }
                let edges: Vec<VertexSet> = (0..subsets)
                    .filter(|i| family >> i & 1 == 1)
                    .map(|i| VertexSet::from_bits(i + 1))
                    .collect();
                let Ok(h) = Hypergraph::with_alphabetic_names(n, edges) else {
                    continue;
                };
                if sperner && !h.is_sperner() {
                    continue;
                }
                if dedup {
                    classes.insert(h.canonical_form());
                } else {
                    total += 1;
                }
            }
            total += classes.len();
        }
        total
    }

    #[test]
    fn tiny_bounds() {
        let all: Vec<Hypergraph> = enumerate_hypergraphs(2, 1, true).unwrap().collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1], one_edge());
        assert_eq!(all[0].edges(), &[VertexSet::singleton(0)]);
        assert_eq!(enumerate_hypergraphs(1, 1, true).unwrap().count(), 1);
        assert_eq!(enumerate_hypergraphs(0, 3, false).unwrap().count(), 0);
    }

    #[test]
    fn counts_match_brute_force() {
        // Frozen from an independent count (labeled, no dedup).
        assert_eq!(enumerate_hypergraphs(3, 2, true).unwrap().count(), 10);
        for (v, e) in [(1, 1), (2, 3), (3, 2), (3, 4), (4, 2)] {
            for sperner in [false, true] {
                for dedup in [false, true] {
                    let got = Enumeration::new(v, e)
                        .sperner_only(sperner)
                        .up_to_isomorphism(dedup)
                        .iter()
                        .unwrap()
                        .count();
                    assert_eq!(
                        got,
                        brute_force(v, e, sperner, dedup),
                        "{v} {e} {sperner} {dedup}"
                    );
                }
            }
        }
    }

    #[test]
    fn clutter_classes() {
        // Sperner hypergraphs without isolated vertices, up to isomorphism;
        // frozen from an independent count.
        for ((v, e), expected) in [((3, 2), 6), ((4, 4), 26), ((6, 4), 399)] {
            let got = Enumeration::new(v, e)
                .sperner_only(true)
                .up_to_isomorphism(true)
                .iter()
                .unwrap()
                .count();
            assert_eq!(got, expected, "({v}, {e})");
        }
    }

    #[test]
    fn bounds_guard() {
        assert!(matches!(
            enumerate_hypergraphs(7, 5, false),
            Err(EnumerateError::BoundsTooLarge { .. })
        ));
        assert!(Enumeration::new(7, 5).caps(7, 5).iter().is_ok());
    }

    #[test]
    fn deterministic_order() {
        let a: Vec<_> = enumerate_hypergraphs(3, 3, false).unwrap().collect();
        let b: Vec<_> = enumerate_hypergraphs(3, 3, false).unwrap().collect();
        assert_eq!(a, b);
        let distinct: BTreeSet<_> = a
            .iter()
            .map(|h| (h.vertex_count(), h.edges().to_vec()))
            .collect();
        assert_eq!(distinct.len(), a.len());
    }
}
