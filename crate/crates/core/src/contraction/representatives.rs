//! Maximal representatives, representative classes and least representatives.

use crate::bisim::{refine_with, PartitionSequence};
use crate::depth::{compute_depth_bound, Bound, DepthBoundMap};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::{PointedModel, WorldId};

/// A total order on the worlds of one model, stored as a rank per world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorldOrder {
    rank: Vec<usize>,
}

impl WorldOrder {
    /// The model's own world order.
    pub fn natural(m: &PointedModel) -> WorldOrder {
        WorldOrder {
            rank: (0..m.world_count()).collect(),
        }
    }

    /// Order given by listing every world name exactly once, least first.
    pub fn from_names<S: AsRef<str>>(m: &PointedModel, names: &[S]) -> Result<WorldOrder> {
        let mut rank = vec![usize::MAX; m.world_count()];
        for (r, name) in names.iter().enumerate() {
            let w = m.require(name.as_ref())?;
            if rank[w.0] != usize::MAX {
                return Err(Error::InvalidParameter(format!(
                    "world `{}` listed twice in order",
                    name.as_ref()
                )));
            }
            rank[w.0] = r;
        }
        if let Some(w) = rank.iter().position(|&r| r == usize::MAX) {
            return Err(Error::InvalidParameter(format!(
                "order does not list world `{}`",
                m.name(WorldId(w))
            )));
        }
        Ok(WorldOrder { rank })
    }

    pub fn rank(&self, w: WorldId) -> usize {
        self.rank[w.0]
    }

    /// Least of `worlds` under this order.
    pub fn min<I: IntoIterator<Item = WorldId>>(&self, worlds: I) -> Option<WorldId> {
        worlds.into_iter().min_by_key(|&w| self.rank(w))
    }
}

/// Everything the rooted constructions need about one `(model, k, order)`:
/// bounds, the bisimilarity levels, the maximal representatives and, per
/// level and block, the least maximal representative in that block.
#[derive(Clone, Debug)]
pub struct RepresentativeStructure {
    k: usize,
    bounds: DepthBoundMap,
    levels: PartitionSequence,
    max_repr: Vec<bool>,
    order: WorldOrder,
    /// `least[h][block]`: least maximal representative in that level-`h` block.
    least: Vec<Vec<Option<WorldId>>>,
}

impl RepresentativeStructure {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bounds(&self) -> &DepthBoundMap {
        &self.bounds
    }

    pub fn levels(&self) -> &PartitionSequence {
        &self.levels
    }

    pub fn order(&self) -> &WorldOrder {
        &self.order
    }

    pub fn bound(&self, w: WorldId) -> Bound {
        self.bounds.bound(w)
    }

    /// Non-negative bound of `w`.
    pub fn level(&self, w: WorldId) -> Option<usize> {
        self.bounds.level(w)
    }

    pub fn is_max_repr(&self, w: WorldId) -> bool {
        self.max_repr[w.0]
    }

    /// Maximal representatives in world order.
    pub fn max_representatives(&self) -> Vec<WorldId> {
        (0..self.max_repr.len())
            .filter(|&w| self.max_repr[w])
            .map(WorldId)
            .collect()
    }

    /// `x` represents `y`: both have non-negative bound, `b(x) >= b(y)` and
    /// `x ~_{b(y)} y`.
    pub fn represents(&self, x: WorldId, y: WorldId) -> bool {
        match (self.level(x), self.level(y)) {
            (Some(bx), Some(by)) => bx >= by && self.levels.equiv(by, x, y),
            _ => false,
        }
    }

    /// `x` represents `y` with strictly larger bound.
    pub fn strictly_represents(&self, x: WorldId, y: WorldId) -> bool {
        self.represents(x, y) && self.level(x) > self.level(y)
    }

    /// The representative class `[w]_{b(w)}`, or `None` for negative bounds.
    pub fn repr_class(&self, w: WorldId) -> Option<Vec<WorldId>> {
        let b = self.level(w)?;
        let p = self.levels.level(b);
        Some(
            (0..p.len())
                .map(WorldId)
                .filter(|&v| p.same_block(v, w))
                .collect(),
        )
    }

    /// Least maximal representative `h`-bisimilar to `w`.
    pub fn least_representative(&self, w: WorldId, h: usize) -> Result<WorldId> {
        let missing = || Error::NoRepresentative {
            world: w.to_string(),
            level: h,
        };
        if h > self.k {
            return Err(missing());
        }
        let block = self.levels.level(h).block_of(w);
        self.least[h][block].ok_or_else(missing)
    }
}

pub fn representative_structure(
    m: &PointedModel,
    k: usize,
    order: &WorldOrder,
) -> RepresentativeStructure {
    representative_structure_with(m, k, order, Execution::default())
}

pub fn representative_structure_with(
    m: &PointedModel,
    k: usize,
    order: &WorldOrder,
    exec: Execution,
) -> RepresentativeStructure {
    let bounds = compute_depth_bound(m, k);
    let levels = refine_with(m, k, exec);

    // dominated[h][block]: the level-h block holds a world of bound > h.
    let mut dominated: Vec<Vec<bool>> = levels
        .levels()
        .iter()
        .map(|p| vec![false; p.block_count()])
        .collect();
    for w in m.worlds() {
        if let Some(b) = bounds.level(w) {
            for (h, row) in dominated.iter_mut().enumerate().take(b) {
                row[levels.level(h).block_of(w)] = true;
            }
        }
    }
    let max_repr: Vec<bool> = m
        .worlds()
        .map(|w| match bounds.level(w) {
            Some(b) => !dominated[b][levels.level(b).block_of(w)],
            None => false,
        })
        .collect();

    let mut least: Vec<Vec<Option<WorldId>>> = levels
        .levels()
        .iter()
        .map(|p| vec![None; p.block_count()])
        .collect();
    for w in m.worlds().filter(|w| max_repr[w.0]) {
        for (h, row) in least.iter_mut().enumerate() {
            let slot = &mut row[levels.level(h).block_of(w)];
            if slot.is_none_or(|cur| order.rank(w) < order.rank(cur)) {
                *slot = Some(w);
            }
        }
    }

    RepresentativeStructure {
        k,
        bounds,
        levels,
        max_repr,
        order: order.clone(),
        least,
    }
}
