//! Graphviz rendering of the 2-skeleton.

use std::fmt::Write;

use sset_core::{SimplexId, SimplicialSet};

pub fn to_dot(x: &SimplicialSet) -> String {
    let mut out = String::from("digraph sset {\n  node [shape=circle];\n");
    let name = |id: SimplexId| x.display_name(id).replace('"', "\\\"");
    for v in x.simplices(0) {
        let _ = writeln!(out, "  v{} [label=\"{}\"];", v.index, name(v));
    }
    for e in x.simplices(1) {
        let vs = x.vertices_of(e);
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", vs[0], vs[1], name(e));
    }
    for t in x.simplices(2) {
        let _ = writeln!(
            out,
            "  t{} [shape=triangle, style=filled, fillcolor=gray85, label=\"{}\"];",
            t.index,
            name(t)
        );
        for v in x.vertices_of(t) {
            let _ = writeln!(out, "  t{} -> v{v} [style=dashed, arrowhead=none];", t.index);
        }
    }
    for n in 3..x.counts().len() {
        for s in x.simplices(n) {
            let _ = writeln!(out, "  // {n}-simplex {} on vertices {:?}", name(s), x.vertices_of(s));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sset_core::constructions::standard_simplex;

    #[test]
    fn renders_low_dimensions() {
        let d = to_dot(&standard_simplex(3));
        assert_eq!(d.matches(" -> ").count(), 6 + 4 * 3);
        assert_eq!(d.matches("// 3-simplex").count(), 1);
        assert!(d.starts_with("digraph"));
    }
}
