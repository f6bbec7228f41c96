//! Contractions of pointed models: the standard bisimulation quotient, its
//! depth-bounded variant, and the rooted `k`-contractions built from maximal
//! representatives.

mod redirect;
mod representatives;
mod rooted;
mod standard;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::{PointedModel, WorldId};

pub use redirect::redirect_and_delete;
pub use representatives::{
    representative_structure, representative_structure_with, RepresentativeStructure, WorldOrder,
};
pub use rooted::{
    rooted_k_contraction, rooted_k_contraction_edge_min, rooted_k_contraction_edge_min_with,
    rooted_k_contraction_with,
};
pub use standard::{
    standard_contraction, standard_contraction_with, standard_k_contraction,
    standard_k_contraction_with, StandardOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Quotient by full bisimilarity.
    StandardBisim,
    /// Quotient by `k`-bisimilarity, restricted to depth `k`.
    StandardK,
    /// Rooted `k`-contraction.
    RootedK,
    /// Rooted `k`-contraction keeping one edge per successor.
    RootedKEdgeMin,
}

impl Mode {
    pub fn needs_k(self) -> bool {
        self != Mode::StandardBisim
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::StandardBisim => "standard",
            Mode::StandardK => "standard-k",
            Mode::RootedK => "rooted",
            Mode::RootedKEdgeMin => "rooted-edge-min",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "standard" => Ok(Mode::StandardBisim),
            "standard-k" => Ok(Mode::StandardK),
            "rooted" => Ok(Mode::RootedK),
            "rooted-edge-min" => Ok(Mode::RootedKEdgeMin),
            other => Err(Error::InvalidParameter(format!(
                "unknown contraction mode `{other}`"
            ))),
        }
    }
}

/// A contracted model plus the map from source worlds to the contraction
/// worlds that stand in for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionResult {
    pub model: PointedModel,
    pub mode: Mode,
    pub k: Option<usize>,
    source_names: Vec<String>,
    witness: Vec<Option<WorldId>>,
    members: Vec<Vec<WorldId>>,
}

impl ContractionResult {
    pub(crate) fn new(
        source: &PointedModel,
        model: PointedModel,
        mode: Mode,
        k: Option<usize>,
        witness: Vec<Option<WorldId>>,
        members: Vec<Vec<WorldId>>,
    ) -> ContractionResult {
        debug_assert_eq!(witness.len(), source.world_count());
        debug_assert_eq!(members.len(), model.world_count());
        ContractionResult {
            model,
            mode,
            k,
            source_names: source.names().to_vec(),
            witness,
            members,
        }
    }

    /// The contraction world standing in for source world `w`. For the
    /// `k`-modes, `(source, w)` and `(model, witness)` are `b(w)`-bisimilar;
    /// worlds dropped by the construction have no witness.
    pub fn witness(&self, w: WorldId) -> Option<WorldId> {
        self.witness[w.0]
    }

    /// Witness map by world name.
    pub fn witness_named(&self) -> BTreeMap<String, String> {
        self.witness
            .iter()
            .enumerate()
            .filter_map(|(w, c)| {
                c.map(|c| (self.source_names[w].clone(), self.model.name(c).to_string()))
            })
            .collect()
    }

    /// Source worlds making up contraction world `c`.
    pub fn members(&self, c: WorldId) -> &[WorldId] {
        &self.members[c.0]
    }
}

/// Runs the contraction selected by `mode`. `k` is required by every mode
/// except [`Mode::StandardBisim`]; `order` only affects the rooted modes.
pub fn contract(
    m: &PointedModel,
    mode: Mode,
    k: Option<usize>,
    order: Option<&WorldOrder>,
    exec: Execution,
) -> Result<ContractionResult> {
    let need_k =
        || k.ok_or_else(|| Error::InvalidParameter(format!("mode `{mode}` needs a bound k")));
    let natural;
    let order = match order {
        Some(o) => o,
        None => {
            natural = WorldOrder::natural(m);
            &natural
        }
    };
    Ok(match mode {
        Mode::StandardBisim => standard_contraction_with(m, StandardOptions::default(), exec),
        Mode::StandardK => {
            standard_k_contraction_with(m, need_k()?, StandardOptions::default(), exec)
        }
        Mode::RootedK => rooted_k_contraction_with(m, need_k()?, order, exec),
        Mode::RootedKEdgeMin => rooted_k_contraction_edge_min_with(m, need_k()?, order, exec),
    })
}
