//! Graphviz export of Hasse diagrams.

use std::fmt::Write;

use crate::heyting::FiniteHeytingAlgebra;

/// Hasse diagram of `algebra`, bottom at the bottom. Edges are covering
/// pairs only. Regular elements are filled; central elements get a double
/// border. Node and edge order follow element indices, so the output is a
/// pure function of the algebra.
pub fn hasse_dot(graph_name: &str, algebra: &FiniteHeytingAlgebra) -> String {
    let l = algebra.lattice();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(graph_name)).unwrap();
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=ellipse];\n");
    for x in l.elements() {
        let regular = algebra.negation(algebra.negation(x)) == x;
        let central = algebra.is_boolean_element(x);
        let mut attrs = vec![format!("label={}", quote(l.name(x)))];
        if regular {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightgrey".into());
        }
        if central {
            attrs.push("peripheries=2".into());
        }
        writeln!(out, "  n{x} [{}];", attrs.join(", ")).unwrap();
    }
    for (a, b) in l.cover_pairs() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\n' => q.push_str("\\n"),
            c => q.push(c),
        }
    }
    q.push('"');
    q
}
