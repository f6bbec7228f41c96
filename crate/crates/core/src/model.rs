//! Finite pointed multi-modal Kripke models.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Index of a world inside one [`PointedModel`]. Index order is the model's
/// default total order on worlds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldId(pub usize);

impl WorldId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for WorldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite Kripke model `(W, R, V)` together with a designated world.
///
/// Worlds carry opaque string names; their insertion order is the default
/// total order used wherever a deterministic choice between worlds is needed.
/// Every modality maps each world to a sorted, deduplicated successor list.
/// The atom set of the model is the set of atoms true somewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedModel {
    names: Vec<String>,
    lookup: HashMap<String, WorldId>,
    props: Vec<BTreeSet<String>>,
    relations: BTreeMap<String, Vec<Vec<WorldId>>>,
    designated: WorldId,
}

impl PointedModel {
    pub fn builder() -> ModelBuilder {
        ModelBuilder::default()
    }

    pub fn world_count(&self) -> usize {
        self.names.len()
    }

    pub fn worlds(&self) -> impl ExactSizeIterator<Item = WorldId> + '_ {
        (0..self.names.len()).map(WorldId)
    }

    pub fn designated(&self) -> WorldId {
        self.designated
    }

    pub fn name(&self, w: WorldId) -> &str {
        &self.names[w.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<WorldId> {
        self.lookup.get(name).copied()
    }

    /// Like [`PointedModel::id`] but reports unknown names as an error.
    pub fn require(&self, name: &str) -> Result<WorldId> {
        self.id(name)
            .ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn contains(&self, w: WorldId) -> bool {
        w.0 < self.names.len()
    }

    pub fn props(&self, w: WorldId) -> &BTreeSet<String> {
        &self.props[w.0]
    }

    pub fn holds(&self, w: WorldId, atom: &str) -> bool {
        self.props[w.0].contains(atom)
    }

    /// All atoms true in at least one world.
    pub fn atoms(&self) -> BTreeSet<&str> {
        self.props.iter().flatten().map(String::as_str).collect()
    }

    /// Worlds where `atom` holds, in world order.
    pub fn valuation(&self, atom: &str) -> Vec<WorldId> {
        self.worlds().filter(|&w| self.holds(w, atom)).collect()
    }

    pub fn modalities(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.relations.keys().map(String::as_str)
    }

    pub fn has_modality(&self, modality: &str) -> bool {
        self.relations.contains_key(modality)
    }

    /// Per-world successor lists of one modality.
    pub fn relation(&self, modality: &str) -> Option<&[Vec<WorldId>]> {
        self.relations.get(modality).map(Vec::as_slice)
    }

    /// Successors of `w` under `modality`; empty for undeclared modalities.
    pub fn successors(&self, modality: &str, w: WorldId) -> &[WorldId] {
        self.relations
            .get(modality)
            .map(|adj| adj[w.0].as_slice())
            .unwrap_or(&[])
    }

    pub fn has_edge(&self, modality: &str, from: WorldId, to: WorldId) -> bool {
        self.successors(modality, from).binary_search(&to).is_ok()
    }

    /// Successors under the union of all modalities, sorted and deduplicated.
    pub fn all_successors(&self, w: WorldId) -> Vec<WorldId> {
        let mut out: Vec<WorldId> = self
            .relations
            .values()
            .flat_map(|adj| adj[w.0].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.relations
            .values()
            .map(|adj| adj.iter().map(Vec::len).sum::<usize>())
            .sum()
    }

    pub fn edge_count_for(&self, modality: &str) -> usize {
        self.relation(modality)
            .map(|adj| adj.iter().map(Vec::len).sum())
            .unwrap_or(0)
    }

    /// Every edge as `(modality, from, to)`, grouped by modality then source.
    pub fn edges(&self) -> impl Iterator<Item = (&str, WorldId, WorldId)> + '_ {
        self.relations.iter().flat_map(|(m, adj)| {
            adj.iter().enumerate().flat_map(move |(from, succ)| {
                succ.iter().map(move |&to| (m.as_str(), WorldId(from), to))
            })
        })
    }

    /// Edges as name triples, sorted. Handy for structural comparisons.
    pub fn named_edges(&self) -> BTreeSet<(String, String, String)> {
        self.edges()
            .map(|(m, a, b)| {
                (
                    m.to_string(),
                    self.name(a).to_string(),
                    self.name(b).to_string(),
                )
            })
            .collect()
    }

    /// The sub-model induced by the worlds flagged in `keep`, preserving their
    /// order and all edges between them. Modalities stay declared.
    pub(crate) fn induced(&self, keep: &[bool]) -> PointedModel {
        debug_assert!(keep[self.designated.0]);
        let mut remap = vec![None; self.names.len()];
        let mut names = Vec::new();
        let mut props = Vec::new();
        for w in self.worlds() {
            if keep[w.0] {
                remap[w.0] = Some(WorldId(names.len()));
                names.push(self.names[w.0].clone());
                props.push(self.props[w.0].clone());
            }
        }
        let relations = self
            .relations
            .iter()
            .map(|(m, adj)| {
                let new_adj = adj
                    .iter()
                    .enumerate()
                    .filter(|(from, _)| keep[*from])
                    .map(|(_, succ)| succ.iter().filter_map(|t| remap[t.0]).collect())
                    .collect();
                (m.clone(), new_adj)
            })
            .collect();
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), WorldId(i)))
            .collect();
        PointedModel {
            names,
            lookup,
            props,
            relations,
            designated: remap[self.designated.0].expect("designated world kept"),
        }
    }

    /// Same model with the designated world moved to `w`.
    pub fn with_designated(&self, w: WorldId) -> Result<PointedModel> {
        if !self.contains(w) {
            return Err(Error::UnknownWorld(w.to_string()));
        }
        let mut out = self.clone();
        out.designated = w;
        Ok(out)
    }

    /// Same model with worlds renamed through `rename`; names must stay unique.
    pub fn renamed<F>(&self, mut rename: F) -> Result<PointedModel>
    where
        F: FnMut(WorldId, &str) -> String,
    {
        let names: Vec<String> = self.worlds().map(|w| rename(w, self.name(w))).collect();
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if lookup.insert(n.clone(), WorldId(i)).is_some() {
                return Err(Error::DuplicateWorld(n.clone()));
            }
        }
        Ok(PointedModel {
            names,
            lookup,
            ..self.clone()
        })
    }

    /// Same model with worlds listed in a different order. `order` must be a
    /// permutation of the world names.
    pub fn reordered(&self, order: &[&str]) -> Result<PointedModel> {
        if order.len() != self.world_count() {
            return Err(Error::InvalidParameter(format!(
                "order lists {} worlds, model has {}",
                order.len(),
                self.world_count()
            )));
        }
        let mut b = ModelBuilder::default();
        for name in order {
            let w = self.require(name)?;
            b.add_world(*name, self.props(w).iter().map(String::as_str))?;
        }
        for m in self.modalities() {
            b.declare_modality(m);
        }
        for (m, from, to) in self.edges() {
            b.add_edge(m, self.name(from), self.name(to))?;
        }
        b.designate(self.name(self.designated));
        b.build()
    }
}

/// Incremental constructor for [`PointedModel`].
#[derive(Debug, Default, Clone)]
pub struct ModelBuilder {
    names: Vec<String>,
    lookup: HashMap<String, WorldId>,
    props: Vec<BTreeSet<String>>,
    relations: BTreeMap<String, BTreeSet<(WorldId, WorldId)>>,
    designated: Option<String>,
}

impl ModelBuilder {
    pub fn add_world<I, S>(&mut self, name: impl Into<String>, props: I) -> Result<WorldId>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        if self.lookup.contains_key(&name) {
            return Err(Error::DuplicateWorld(name));
        }
        let id = WorldId(self.names.len());
        self.lookup.insert(name.clone(), id);
        self.names.push(name);
        self.props.push(props.into_iter().map(Into::into).collect());
        Ok(id)
    }

    pub fn world_count(&self) -> usize {
        self.names.len()
    }

    pub fn declare_modality(&mut self, modality: impl Into<String>) -> &mut Self {
        self.relations.entry(modality.into()).or_default();
        self
    }

    pub fn add_edge(&mut self, modality: &str, from: &str, to: &str) -> Result<()> {
        let f = self.resolve(from)?;
        let t = self.resolve(to)?;
        self.add_edge_ids(modality, f, t)
    }

    pub fn add_edge_ids(&mut self, modality: &str, from: WorldId, to: WorldId) -> Result<()> {
        for w in [from, to] {
            if w.0 >= self.names.len() {
                return Err(Error::UnknownWorld(w.to_string()));
            }
        }
        self.relations
            .entry(modality.to_string())
            .or_default()
            .insert((from, to));
        Ok(())
    }

    pub fn designate(&mut self, name: impl Into<String>) -> &mut Self {
        self.designated = Some(name.into());
        self
    }

    fn resolve(&self, name: &str) -> Result<WorldId> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn build(self) -> Result<PointedModel> {
        if self.names.is_empty() {
            return Err(Error::EmptyModel);
        }
        let designated = match &self.designated {
            Some(name) => self.resolve(name)?,
            None => return Err(Error::MissingDesignated),
        };
        let n = self.names.len();
        let relations = self
            .relations
            .into_iter()
            .map(|(m, pairs)| {
                let mut adj = vec![Vec::new(); n];
                // BTreeSet iteration yields each source's targets in ascending order.
                for (f, t) in pairs {
                    adj[f.0].push(t);
                }
                (m, adj)
            })
            .collect();
        Ok(PointedModel {
            names: self.names,
            lookup: self.lookup,
            props: self.props,
            relations,
            designated,
        })
    }
}
