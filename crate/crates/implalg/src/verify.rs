//! Runs the structural checks over every small Sperner hypergraph.

use implalg_core::algebra::ImplicationAlgebra;
use implalg_core::enumerate::{EnumerateError, Enumeration};
use implalg_core::hypergraph::Hypergraph;
use implalg_core::iso::{algebra_iso, hypergraph_iso, poset_iso_oracle, ORACLE_ELEMENT_LIMIT};
use implalg_core::polymatroid::{
    profile_from_rho, recognize_boolean, rho_from_profile, rho_of_family, rho_of_hypergraph,
};
use implalg_core::profile::{check_realizability_conditions, compute_profile, profile_at};
use implalg_core::set::VertexSet;
use implalg_core::synth::realize_to_hypergraph;
use serde::Serialize;

use crate::format::HypergraphJson;

#[derive(Debug, Serialize)]
pub struct CorpusReport {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Sperner hypergraphs up to isomorphism, without isolated vertices.
    pub instances: usize,
    pub all_passed: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Serialize)]
pub struct Counterexample {
    /// Positions in enumeration order; two for pairwise checks.
    pub instances: Vec<usize>,
    #[serde(serialize_with = "as_json_hypergraphs")]
    pub hypergraphs: Vec<Hypergraph>,
    pub detail: String,
}

fn as_json_hypergraphs<S: serde::Serializer>(hs: &[Hypergraph], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(hs.iter().map(HypergraphJson::new))
}

type InstanceCheck = fn(&Hypergraph) -> Result<(), String>;

struct Check {
    report: CheckReport,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            report: CheckReport {
                name,
                passed: 0,
                failed: 0,
                counterexamples: Vec::new(),
            },
        }
    }

    fn record(&mut self, corpus: &[Hypergraph], ids: &[usize], outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.report.passed += 1,
            Err(detail) => {
                self.report.failed += 1;
                let hypergraphs = ids.iter().map(|&i| corpus[i].clone()).collect();
                self.report.counterexamples.push(Counterexample {
                    instances: ids.to_vec(),
                    hypergraphs,
                    detail,
                });
            }
        }
    }
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn algebra(h: &Hypergraph) -> Result<ImplicationAlgebra, String> {
    ImplicationAlgebra::from_hypergraph(h).map_err(|e| e.to_string())
}

fn profiles_at(h: &Hypergraph) -> Result<(), String> {
    let a = algebra(h)?;
    for b in 0..1u32 << a.ground_size() {
        let p = profile_at(&a, VertexSet::from_bits(b)).map_err(|e| e.to_string())?;
        if let Some(v) = p.decreasing_violation() {
            return Err(format!("b = {b:#b}: not decreasing at {v:?}"));
        }
        if let Some(v) = p.paper_submodular_violation() {
            return Err(format!("b = {b:#b}: not paper-submodular at {v:?}"));
        }
    }
    Ok(())
}

fn conditions(h: &Hypergraph) -> Result<(), String> {
    let p = compute_profile(&algebra(h)?).map_err(|e| e.to_string())?;
    match check_realizability_conditions(&p).failure() {
        None => Ok(()),
        Some(f) => Err(f.to_string()),
    }
}

fn roundtrip(h: &Hypergraph) -> Result<(), String> {
    let a = algebra(h)?;
    let back = a.to_hypergraph();
    ensure(back == *h, || {
        format!("hypergraph came back as {:?}", back.edges())
    })?;
    let again = algebra(&back)?;
    ensure(again == a, || "algebra changed after a round trip".into())
}

fn transforms(h: &Hypergraph) -> Result<(), String> {
    let p = compute_profile(&algebra(h)?).map_err(|e| e.to_string())?;
    let rho = rho_of_hypergraph(h).map_err(|e| e.to_string())?;
    let via_p = rho_from_profile(&p).map_err(|e| e.to_string())?;
    if let Some((s, _)) = rho.iter().zip(via_p.iter()).find(|(x, y)| x != y) {
        return Err(format!(
            "ρ and the transformed profile differ at {:#b}",
            s.0
        ));
    }
    let p_again = profile_from_rho(&rho).map_err(|e| e.to_string())?;
    ensure(p_again == p, || {
        "ρ to profile does not invert profile to ρ".into()
    })?;
    let rho_again = rho_from_profile(&p_again).map_err(|e| e.to_string())?;
    ensure(rho_again == rho, || {
        "profile to ρ does not invert ρ to profile".into()
    })
}

fn realize_verify(h: &Hypergraph) -> Result<(), String> {
    let p = compute_profile(&algebra(h)?).map_err(|e| e.to_string())?;
    let r = realize_to_hypergraph(&p).map_err(|e| e.to_string())?;
    if let Some((s, _)) = p
        .iter()
        .find(|&(s, v)| r.family.intersection_size(s) != v as usize)
    {
        return Err(format!("realized family misses the profile at {s:#b}"));
    }
    ensure(!r.degeneracy.is_degenerate(), || r.degeneracy.to_string())?;
    let iso = hypergraph_iso(&r.hypergraph, h).map_err(|e| e.to_string())?;
    ensure(iso, || {
        "realized hypergraph is not isomorphic to the input".into()
    })
}

fn recognize(h: &Hypergraph) -> Result<(), String> {
    let rho = rho_of_hypergraph(h).map_err(|e| e.to_string())?;
    let rec = recognize_boolean(&rho).map_err(|e| e.to_string())?;
    let got = rho_of_family(rec.family()).map_err(|e| e.to_string())?;
    ensure(got == rho, || "recognized family has a different ρ".into())
}

/// The vertex order reversed and the edge order rotated by one.
fn relabeled(h: &Hypergraph) -> Hypergraph {
    let n = h.vertex_count();
    let perm: Vec<usize> = (0..n).rev().collect();
    let shuffled = h.permuted(&perm);
    let mut edges = shuffled.edges().to_vec();
    edges.rotate_left(1);
    Hypergraph::from_masks(shuffled.vertex_names().to_vec(), edges).unwrap()
}

fn iso_pair(a: &ImplicationAlgebra, b: &ImplicationAlgebra) -> Result<bool, String> {
    let fast = algebra_iso(a, b).map_err(|e| e.to_string())?.is_some();
    let slow = poset_iso_oracle(a, b).map_err(|e| e.to_string())?;
    ensure(fast == slow, || {
        format!("profile search says {fast}, poset oracle says {slow}")
    })?;
    Ok(fast)
}

pub fn verify_corpus(
    max_vertices: usize,
    max_edges: usize,
) -> Result<CorpusReport, EnumerateError> {
    let corpus: Vec<Hypergraph> = Enumeration::new(max_vertices, max_edges)
        .sperner_only(true)
        .up_to_isomorphism(true)
        .iter()?
        .collect();

    let single: [(&'static str, InstanceCheck); 6] = [
        ("profile-at-every-element", profiles_at),
        ("realizability-conditions", conditions),
        ("roundtrip", roundtrip),
        ("transform-inverse", transforms),
        ("realize-and-verify", realize_verify),
        ("recognize", recognize),
    ];
    let mut checks = Vec::new();
    for (name, run) in single {
        let mut check = Check::new(name);
        for (id, h) in corpus.iter().enumerate() {
            check.record(&corpus, &[id], run(h));
        }
        checks.push(check);
    }

    // Pairwise agreement with the poset oracle on the small algebras. Every
    // instance is also compared with a relabeled copy of itself, and since
    // the corpus is deduplicated, distinct instances must come out
    // non-isomorphic.
    let mut check = Check::new("iso-oracle-agreement");
    let small: Vec<(usize, ImplicationAlgebra)> = corpus
        .iter()
        .enumerate()
        .filter_map(|(id, h)| {
            let a = ImplicationAlgebra::from_hypergraph(h).ok()?;
            (a.element_count().ok()? <= ORACLE_ELEMENT_LIMIT as u64).then_some((id, a))
        })
        .collect();
    for (x, (i, a)) in small.iter().enumerate() {
        let copy = ImplicationAlgebra::from_hypergraph(&relabeled(&corpus[*i])).unwrap();
        let outcome = iso_pair(a, &copy)
            .and_then(|iso| ensure(iso, || "not isomorphic to a relabeled copy".into()));
        check.record(&corpus, &[*i], outcome);
        for (j, b) in &small[x + 1..] {
            let outcome = iso_pair(a, b)
                .and_then(|iso| ensure(!iso, || "distinct corpus instances are isomorphic".into()));
            check.record(&corpus, &[*i, *j], outcome);
        }
    }
    checks.push(check);

    let checks: Vec<CheckReport> = checks.into_iter().map(|c| c.report).collect();
    Ok(CorpusReport {
        max_vertices,
        max_edges,
        instances: corpus.len(),
        all_passed: checks.iter().all(|c| c.failed == 0),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpora_pass() {
        for (v, e) in [(1, 1), (3, 2), (4, 3)] {
            let report = verify_corpus(v, e).unwrap();
            assert!(report.all_passed, "{report:#?}");
            assert!(report.checks.iter().all(|c| c.passed > 0));
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(verify_corpus(7, 5).is_err());
    }
}
