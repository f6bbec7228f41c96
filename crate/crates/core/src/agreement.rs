//! Modal agreement up to a depth, decided by finite formula enumeration.
//!
//! Over a finite signature every class of formulas of depth at most `h` is
//! pinned down by the characteristic formulas of depth `h`:
//!
//! ```text
//! chi_0(w)     = /\ { p : w |= p } /\ /\ { ~p : w |/= p }
//! chi_{h+1}(w) = chi_0(w) /\ /\_i ( /\_{w R_i v} <i> chi_h(v)  /\  [i] \/_{w R_i v} chi_h(v) )
//! ```
//!
//! Two pointed models agree on every formula of depth at most `k` iff they
//! agree on every `chi_h(w)` with `h <= k` and `w` ranging over both models.
//! Formulas are hash-consed into a DAG so shared subformulas are evaluated once.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::model::{PointedModel, WorldId};

/// Limit on distinct subformulas built during enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgreementBudget {
    pub max_nodes: usize,
}

impl Default for AgreementBudget {
    fn default() -> Self {
        AgreementBudget { max_nodes: 500_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Lit(usize, bool),
    And(Vec<usize>),
    Or(Vec<usize>),
    Box(usize, usize),
    Diamond(usize, usize),
}

struct Arena<'a> {
    atoms: Vec<&'a str>,
    modalities: Vec<&'a str>,
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
    max_nodes: usize,
}

impl<'a> Arena<'a> {
    fn intern(&mut self, node: Node) -> Result<usize> {
        let node = match node {
            Node::And(mut c) => {
                c.sort_unstable();
                c.dedup();
                Node::And(c)
            }
            Node::Or(mut c) => {
                c.sort_unstable();
                c.dedup();
                Node::Or(c)
            }
            other => other,
        };
        if let Some(&id) = self.index.get(&node) {
            return Ok(id);
        }
        if self.nodes.len() >= self.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "more than {} characteristic subformulas",
                self.max_nodes
            )));
        }
        let id = self.nodes.len();
        self.index.insert(node.clone(), id);
        self.nodes.push(node);
        Ok(id)
    }

    /// `chi_h(w)` for every world of `m` and every `h <= k`, as `[h][w]`.
    fn characteristic(&mut self, m: &PointedModel, k: usize) -> Result<Vec<Vec<usize>>> {
        let mut base = Vec::with_capacity(m.world_count());
        for w in m.worlds() {
            let mut lits = Vec::with_capacity(self.atoms.len());
            for a in 0..self.atoms.len() {
                let lit = Node::Lit(a, m.holds(w, self.atoms[a]));
                lits.push(self.intern(lit)?);
            }
            base.push(self.intern(Node::And(lits))?);
        }
        let mut levels = vec![base.clone()];
        for h in 0..k {
            let prev = &levels[h];
            let mut next = Vec::with_capacity(m.world_count());
            for w in m.worlds() {
                let mut parts = vec![base[w.0]];
                for (i, modality) in self.modalities.clone().into_iter().enumerate() {
                    let succ: Vec<usize> = m
                        .successors(modality, w)
                        .iter()
                        .map(|v| prev[v.0])
                        .collect();
                    for &s in &succ {
                        parts.push(self.intern(Node::Diamond(i, s))?);
                    }
                    let any = self.intern(Node::Or(succ))?;
                    parts.push(self.intern(Node::Box(i, any))?);
                }
                next.push(self.intern(Node::And(parts))?);
            }
            levels.push(next);
        }
        Ok(levels)
    }

    /// Truth value of every node at every world of `m`, as `[node][world]`.
    fn evaluate(&self, m: &PointedModel) -> Vec<Vec<bool>> {
        let mut ext: Vec<Vec<bool>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let row = match node {
                Node::Lit(a, pos) => m
                    .worlds()
                    .map(|w| m.holds(w, self.atoms[*a]) == *pos)
                    .collect(),
                Node::And(c) => m.worlds().map(|w| c.iter().all(|&x| ext[x][w.0])).collect(),
                Node::Or(c) => m.worlds().map(|w| c.iter().any(|&x| ext[x][w.0])).collect(),
                Node::Box(i, x) => m
                    .worlds()
                    .map(|w| {
                        m.successors(self.modalities[*i], w)
                            .iter()
                            .all(|v| ext[*x][v.0])
                    })
                    .collect(),
                Node::Diamond(i, x) => m
                    .worlds()
                    .map(|w| {
                        m.successors(self.modalities[*i], w)
                            .iter()
                            .any(|v| ext[*x][v.0])
                    })
                    .collect(),
            };
            ext.push(row);
        }
        ext
    }

    fn to_formula(&self, id: usize) -> Formula {
        match &self.nodes[id] {
            Node::Lit(a, true) => Formula::atom(self.atoms[*a]),
            Node::Lit(a, false) => Formula::atom(self.atoms[*a]).negated(),
            Node::And(c) => Formula::conjunction(c.iter().map(|&x| self.to_formula(x))),
            Node::Or(c) => Formula::disjunction(c.iter().map(|&x| self.to_formula(x))),
            Node::Box(i, x) => Formula::boxed(self.modalities[*i], self.to_formula(*x)),
            Node::Diamond(i, x) => Formula::diamond(self.modalities[*i], self.to_formula(*x)),
        }
    }
}

fn arena<'a>(
    models: &[&'a PointedModel],
    atoms: &'a [&'a str],
    budget: AgreementBudget,
) -> Result<Arena<'a>> {
    let declared: BTreeSet<&str> = atoms.iter().copied().collect();
    for m in models {
        if let Some(missing) = m.atoms().into_iter().find(|a| !declared.contains(a)) {
            return Err(Error::InvalidParameter(format!(
                "atom `{missing}` is not in the enumeration signature"
            )));
        }
    }
    let modalities: BTreeSet<&str> = models.iter().flat_map(|m| m.modalities()).collect();
    Ok(Arena {
        atoms: declared.into_iter().collect(),
        modalities: modalities.into_iter().collect(),
        nodes: Vec::new(),
        index: HashMap::new(),
        max_nodes: budget.max_nodes,
    })
}

/// Whether the designated worlds of `m1` and `m2` satisfy the same formulas of
/// modal depth at most `k` over `atoms` and the modalities of both models.
pub fn agree_to_depth(
    m1: &PointedModel,
    m2: &PointedModel,
    k: usize,
    atoms: &[&str],
) -> Result<bool> {
    agree_to_depth_with(m1, m2, k, atoms, AgreementBudget::default())
}

pub fn agree_to_depth_with(
    m1: &PointedModel,
    m2: &PointedModel,
    k: usize,
    atoms: &[&str],
    budget: AgreementBudget,
) -> Result<bool> {
    let mut arena = arena(&[m1, m2], atoms, budget)?;
    let mut formulas: Vec<usize> = Vec::new();
    for m in [m1, m2] {
        formulas.extend(arena.characteristic(m, k)?.into_iter().flatten());
    }
    let (e1, e2) = (arena.evaluate(m1), arena.evaluate(m2));
    let (d1, d2) = (m1.designated().0, m2.designated().0);
    Ok(formulas.into_iter().all(|f| e1[f][d1] == e2[f][d2]))
}

/// Agreement at a depth past the fixpoint of refinement on the disjoint union,
/// which is bounded by the total number of worlds.
pub fn agree_at_fixpoint(m1: &PointedModel, m2: &PointedModel, atoms: &[&str]) -> Result<bool> {
    agree_to_depth(m1, m2, m1.world_count() + m2.world_count(), atoms)
}

/// The depth-`h` characteristic formula of `(m, w)` over `atoms`.
pub fn characteristic_formula(
    m: &PointedModel,
    w: WorldId,
    h: usize,
    atoms: &[&str],
) -> Result<Formula> {
    if !m.contains(w) {
        return Err(Error::UnknownWorld(w.to_string()));
    }
    let mut arena = arena(&[m], atoms, AgreementBudget::default())?;
    let levels = arena.characteristic(m, h)?;
    Ok(arena.to_formula(levels[h][w.0]))
}
