//! Graphviz export. The designated world is double-circled, nodes are
//! labelled `name:props`, and edges carry their modality index when the model
//! has more than one.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::depth::DepthBoundMap;
use crate::generators::SPINE_MODALITY;
use crate::model::PointedModel;

#[derive(Clone, Debug)]
pub struct DotOptions<'a> {
    /// Adds depth and bound to each node label.
    pub annotate: Option<&'a DepthBoundMap>,
    /// Modalities drawn with dashed edges.
    pub dashed: BTreeSet<String>,
    /// Forces edge labels on or off; by default they appear only for
    /// multi-modal models.
    pub edge_labels: Option<bool>,
}

impl Default for DotOptions<'_> {
    fn default() -> Self {
        DotOptions {
            annotate: None,
            dashed: [SPINE_MODALITY.to_string()].into(),
            edge_labels: None,
        }
    }
}

pub fn export_dot(m: &PointedModel, annotate: Option<&DepthBoundMap>) -> String {
    export_dot_with(
        m,
        &DotOptions {
            annotate,
            ..DotOptions::default()
        },
    )
}

fn quote(s: &str) -> String {
    format!(
        "\"{}\"",
        s.replace('\\', "\\\\")
            .replace('"', "\\\"")
            .replace('\n', "\\n")
    )
}

pub fn export_dot_with(m: &PointedModel, opts: &DotOptions<'_>) -> String {
    let labels = opts.edge_labels.unwrap_or(m.modalities().len() > 1);
    let mut out = String::from("digraph model {\n  node [shape=circle];\n");
    for w in m.worlds() {
        let props: Vec<&str> = m.props(w).iter().map(String::as_str).collect();
        let mut label = format!("{}:{}", m.name(w), props.join(","));
        if let Some(db) = opts.annotate {
            let depth = db.depth(w).map_or("inf".to_string(), |d| d.to_string());
            write!(label, "\nd={depth} b={}", db.bound(w)).unwrap();
        }
        let shape = if w == m.designated() {
            ", shape=doublecircle"
        } else {
            ""
        };
        writeln!(
            out,
            "  {} [label={}{shape}];",
            quote(m.name(w)),
            quote(&label)
        )
        .unwrap();
    }
    for (modality, from, to) in m.edges() {
        let mut attrs = Vec::new();
        if labels {
            attrs.push(format!("label={}", quote(modality)));
        }
        if opts.dashed.contains(modality) {
            attrs.push("style=dashed".to_string());
        }
        let attrs = if attrs.is_empty() {
            String::new()
        } else {
            format!(" [{}]", attrs.join(", "))
        };
        writeln!(
            out,
            "  {} -> {}{attrs};",
            quote(m.name(from)),
            quote(m.name(to))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
