//! Deterministic exports of reports and plans as JSON, DOT or plain text.

use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::decomp::DecompositionPlan;
use crate::error::{Error, Result};
use crate::monoid::{DepthReport, GreensReport, Monoid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "text" | "txt" => Ok(Format::Text),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn export_greens(m: &Monoid, g: &GreensReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json(g),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{} (order {})", m.label(), m.len()).unwrap();
            for (name, p) in [("L", &g.l), ("R", &g.r), ("J", &g.j), ("H", &g.h)] {
                writeln!(out, "{name}-classes: {}", GreensReport::class_count(p)).unwrap();
            }
            writeln!(out, "regular J-classes: {}", g.regular_j_classes()).unwrap();
            writeln!(out, "idempotents: {}", g.idempotents.len()).unwrap();
            Ok(out)
        }
        Format::Dot => Err(Error::UnsupportedFormat("dot for Green's relations".into())),
    }
}

/// The J-order as a Hasse diagram, essential classes filled.
pub fn export_depth(m: &Monoid, d: &DepthReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json(d),
        Format::Dot => {
            let mut out = String::new();
            writeln!(out, "digraph \"{}\" {{", m.label().replace('"', "'")).unwrap();
            writeln!(out, "  rankdir=TB;").unwrap();
            for c in &d.classes {
                let mut label = format!("J{} ({})", c.id, c.members.len());
                if let (Some(o), Some(depth)) = (c.subgroup_order, c.depth) {
                    write!(label, "\\nH={o} depth={depth}").unwrap();
                }
                let style = if c.essential {
                    ", style=filled, fillcolor=lightblue"
                } else if c.regular {
                    ""
                } else {
                    ", style=dashed"
                };
                writeln!(out, "  j{} [label=\"{label}\"{style}];", c.id).unwrap();
            }
            for (upper, lower) in &d.edges {
                writeln!(out, "  j{upper} -> j{lower};").unwrap();
            }
            out.push_str("}\n");
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{} (order {}): depth {}", m.label(), m.len(), d.depth).unwrap();
            writeln!(out, "{:<6} {:>7} {:>8} {:>9} {:>6}", "class", "members", "regular", "subgroup", "depth").unwrap();
            for c in &d.classes {
                let sub = c.subgroup_order.map_or("-".into(), |o| o.to_string());
                let depth = c.depth.map_or("-".into(), |x| x.to_string());
                writeln!(out, "J{:<5} {:>7} {:>8} {:>9} {:>6}", c.id, c.members.len(), c.regular, sub, depth).unwrap();
            }
            writeln!(out, "essential classes per depth: {:?}", d.census).unwrap();
            writeln!(out, "group term orders: {:?}", d.k_orders()).unwrap();
            Ok(out)
        }
    }
}

pub fn export_plan(plan: &DecompositionPlan, format: Format) -> Result<String> {
    match format {
        Format::Json => json(&plan.record()),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{} pipeline, n = {}, over {}", plan.pipeline, plan.n, plan.ring).unwrap();
            writeln!(out, "{:<40} {:<10} {:>6}", "term", "tag", "order").unwrap();
            for t in &plan.terms {
                writeln!(out, "{:<40} {:<10} {:>6}", t.monoid.label(), t.tag.name(), t.monoid.len()).unwrap();
            }
            match plan.group_length {
                Some(g) => writeln!(out, "group_length={g}").unwrap(),
                None => writeln!(out, "group_length=undefined (mixed terms)").unwrap(),
            }
            for w in &plan.witnesses {
                let size = w.witness.closure_size().map_or("-".into(), |s| s.to_string());
                writeln!(out, "witness {:<24} closure {size}", w.name).unwrap();
            }
            if let Some(c) = &plan.composite {
                let size = c.closure_size().map_or("-".into(), |s| s.to_string());
                writeln!(out, "composite {} closure {size}", c.describe()).unwrap();
            }
            Ok(out)
        }
        Format::Dot => {
            let mut out = String::from("digraph plan {\n  rankdir=LR;\n");
            for (i, t) in plan.terms.iter().enumerate() {
                let shape = match t.tag {
                    crate::decomp::Tag::Group => "box",
                    crate::decomp::Tag::Aperiodic => "ellipse",
                    crate::decomp::Tag::Mixed => "diamond",
                };
                writeln!(out, "  t{i} [label=\"{} ({})\", shape={shape}];", t.monoid.label(), t.monoid.len()).unwrap();
                if i > 0 {
                    writeln!(out, "  t{} -> t{i} [label=\"≀\"];", i - 1).unwrap();
                }
            }
            out.push_str("}\n");
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_formats_are_rejected() {
        assert!(matches!("svg".parse::<Format>(), Err(Error::UnsupportedFormat(_))));
        assert_eq!("dot".parse::<Format>().unwrap(), Format::Dot);
    }
}
