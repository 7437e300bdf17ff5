//! Graphviz text for the vertex/edge incidence graph of a hypergraph.

use std::fmt::Write;

use implalg_core::hypergraph::Hypergraph;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Vertices are circles named by their labels, edges are boxes `e0`, `e1`,
/// ...; edge nodes live in their own namespace so labels cannot clash.
pub fn incidence_dot(h: &Hypergraph) -> String {
    let mut out = String::from("graph hypergraph {\n");
    out.push_str("  node [shape=circle];\n");
    for (i, name) in h.vertex_names().iter().enumerate() {
        writeln!(out, "  v{i} [label={}];", quote(name)).unwrap();
    }
    out.push_str("  node [shape=box];\n");
    for (k, e) in h.edges().iter().enumerate() {
        writeln!(out, "  e{k} [label=\"e{k}\"];").unwrap();
        for i in e.iter() {
            writeln!(out, "  e{k} -- v{i};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
