//! JSON model documents.
//!
//! ```json
//! {
//!   "worlds": [{"id": "wd", "props": ["p"]}, {"id": "w1", "props": []}],
//!   "relations": {"a": [["wd", "w1"]]},
//!   "designated": "wd"
//! }
//! ```
//!
//! The order of `worlds` is the model's world order.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PointedModel;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    worlds: Vec<WorldEntry>,
    #[serde(default)]
    relations: BTreeMap<String, Vec<(String, String)>>,
    designated: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WorldEntry {
    id: String,
    #[serde(default)]
    props: Vec<String>,
}

fn malformed(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Malformed {
        location: location.into(),
        message: message.into(),
    }
}

pub fn parse_model(text: &str) -> Result<PointedModel> {
    let doc: Document = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        malformed(format!("line {}, column {}", e.line(), e.column()), message)
    })?;

    if doc.worlds.is_empty() {
        return Err(malformed("worlds", "a model needs at least one world"));
    }
    let mut seen = HashSet::new();
    let mut b = PointedModel::builder();
    for (i, world) in doc.worlds.iter().enumerate() {
        if !seen.insert(world.id.as_str()) {
            return Err(malformed(
                format!("worlds[{i}].id"),
                format!("duplicate world id `{}`", world.id),
            ));
        }
        b.add_world(world.id.as_str(), world.props.iter().map(String::as_str))?;
    }
    for (modality, pairs) in &doc.relations {
        b.declare_modality(modality.as_str());
        for (j, (from, to)) in pairs.iter().enumerate() {
            for (slot, world) in [(0, from), (1, to)] {
                if !seen.contains(world.as_str()) {
                    return Err(Error::UnknownReference {
                        location: format!("relations.{modality}[{j}][{slot}]"),
                        world: world.clone(),
                    });
                }
            }
            b.add_edge(modality, from, to)?;
        }
    }
    if !seen.contains(doc.designated.as_str()) {
        return Err(Error::UnknownReference {
            location: "designated".into(),
            world: doc.designated,
        });
    }
    b.designate(doc.designated);
    b.build()
}

/// Canonical form: worlds in model order, props sorted, modalities sorted,
/// edges sorted by source then target position.
pub fn serialize_model(m: &PointedModel) -> String {
    let worlds = m
        .worlds()
        .map(|w| WorldEntry {
            id: m.name(w).to_string(),
            props: m.props(w).iter().cloned().collect(),
        })
        .collect();
    let mut relations: BTreeMap<String, Vec<(String, String)>> = m
        .modalities()
        .map(|i| (i.to_string(), Vec::new()))
        .collect();
    for (modality, from, to) in m.edges() {
        relations
            .get_mut(modality)
            .expect("declared modality")
            .push((m.name(from).to_string(), m.name(to).to_string()));
    }
    let doc = Document {
        worlds,
        relations,
        designated: m.name(m.designated()).to_string(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("documents always serialize");
    text.push('\n');
    text
}
