use std::fmt::Write as _;

use super::ResolutionGraph;

/// Graphviz rendering of the dual graph. Components outside the boundary
/// divisor are dashed; edge labels give intersection counts above 1.
pub fn to_dot(graph: &ResolutionGraph) -> String {
    let mut out = String::from("graph resolution {\n  node [shape=box];\n");
    for (i, c) in graph.components.iter().enumerate() {
        let style = if c.in_divisor { "" } else { ", style=dashed" };
        writeln!(
            out,
            "  n{i} [label=\"{}\\n{}, g={}\"{style}];",
            c.label(),
            c.self_int,
            c.genus
        )
        .unwrap();
    }
    for e in &graph.edges {
        if e.count == 1 {
            writeln!(out, "  n{} -- n{};", e.a, e.b).unwrap();
        } else {
            writeln!(out, "  n{} -- n{} [label=\"{}\", weight={}];", e.a, e.b, e.count, e.count).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
