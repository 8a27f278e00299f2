use std::fmt::Write;

use lcpuso::uso::{edge_list, find_sink_bruteforce, ExplicitOrientationTable, Orientation};

use crate::{CliError, CliResult};

pub const MAX_DOT_VERTICES: u128 = 64;

/// Graphviz digraph with one arrow per edge, sinks drawn filled.
pub fn export_dot(t: &ExplicitOrientationTable) -> CliResult<String> {
    let spec = t.spec();
    if spec.vertex_count() > MAX_DOT_VERTICES {
        return Err(CliError::Schema(format!(
            "{} vertices, export is limited to {MAX_DOT_VERTICES}",
            spec.vertex_count()
        )));
    }
    let sinks = find_sink_bruteforce(t, None, MAX_DOT_VERTICES)?;
    let mut out = String::from("digraph uso {\n  node [shape=box];\n");
    for v in spec.vertices() {
        let name = spec.format_vertex(&v);
        if sinks.contains(&v) {
            writeln!(out, "  \"{name}\" [style=filled, fillcolor=gray80, peripheries=2];").unwrap();
        } else {
            writeln!(out, "  \"{name}\";").unwrap();
        }
    }
    for (v, dim, to) in edge_list(spec) {
        let mut w = v.clone();
        w[dim] = to;
        let (a, b) = if t.outgoing(&v, dim, to) { (&v, &w) } else { (&w, &v) };
        writeln!(out, "  \"{}\" -> \"{}\";", spec.format_vertex(a), spec.format_vertex(b)).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
