//! Text exports: DOT graphs and space-time diagrams.

use std::fmt::Write;

use crate::evolution::Orbit;
use crate::quiver::Quiver;
use crate::space::{AliveQuiver, MorphismKind, ProgramSpace};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn quiver_body(out: &mut String, q: &Quiver) {
    for v in q.vertices() {
        writeln!(out, "  {};", quote(v.as_str())).unwrap();
    }
    for (a, id) in q.arrows().iter().enumerate() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(q.vertices()[q.source_index(a)].as_str()),
            quote(q.vertices()[q.target_index(a)].as_str()),
            quote(id.as_str())
        )
        .unwrap();
    }
}

/// Something that renders as a DOT digraph.
pub trait ToDot {
    fn to_dot(&self) -> String;
}

impl ToDot for Quiver {
    fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        quiver_body(&mut out, self);
        out.push_str("}\n");
        out
    }
}

impl ToDot for AliveQuiver {
    fn to_dot(&self) -> String {
        let mut out = format!("digraph alive_t{} {{\n", self.t);
        quiver_body(&mut out, self.quiver());
        out.push_str("}\n");
        out
    }
}

impl ToDot for ProgramSpace {
    /// Nodes are data types; identities are omitted and composites dashed.
    fn to_dot(&self) -> String {
        let mut out = String::from("digraph space {\n");
        for d in self.data_types() {
            writeln!(out, "  {};", quote(d.as_str())).unwrap();
        }
        for m in self.morphisms() {
            let style = match m.kind() {
                MorphismKind::Identity => continue,
                MorphismKind::Primitive => "",
                MorphismKind::Composite => ", style=dashed",
            };
            writeln!(
                out,
                "  {} -> {} [label={}{}];",
                quote(m.input().as_str()),
                quote(m.output().as_str()),
                quote(&m.to_string()),
                style
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn export_dot(target: &impl ToDot) -> String {
    target.to_dot()
}

/// One `t=<n>\t<bits>` line per configuration.
pub fn render_diagram(orbit: &Orbit) -> String {
    let mut out = String::new();
    for (t, c) in orbit.configurations().iter().enumerate() {
        writeln!(out, "t={t}\t{c}").unwrap();
    }
    out
}

/// Human-readable listing: a header of data types, then one morphism per
/// line as `name : input -> output`.
pub fn render_space_text(ps: &ProgramSpace) -> String {
    let mut out = String::from("data_types:");
    for d in ps.data_types() {
        write!(out, " {d}").unwrap();
    }
    out.push('\n');
    for m in ps.morphisms() {
        writeln!(out, "{} : {} -> {}", m, m.input(), m.output()).unwrap();
    }
    out
}
