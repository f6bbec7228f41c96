//! Depth, bound and depth-based restriction of pointed models.

use std::collections::VecDeque;
use std::fmt;

use crate::model::{PointedModel, WorldId};

/// `k - depth(w)`, or negative infinity for unreachable worlds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInfinity,
    Finite(i64),
}

impl Bound {
    /// The bound as a level, when it is non-negative.
    pub fn level(self) -> Option<usize> {
        match self {
            Bound::Finite(b) if b >= 0 => Some(b as usize),
            _ => None,
        }
    }

    pub fn is_nonneg(self) -> bool {
        self.level().is_some()
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInfinity => f.write_str("-inf"),
            Bound::Finite(b) => write!(f, "{b}"),
        }
    }
}

/// Shortest-path depth from the designated world and the induced bound for a
/// fixed depth budget `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthBoundMap {
    k: usize,
    depth: Vec<Option<usize>>,
}

impl DepthBoundMap {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `None` when `w` is unreachable from the designated world.
    pub fn depth(&self, w: WorldId) -> Option<usize> {
        self.depth[w.0]
    }

    pub fn bound(&self, w: WorldId) -> Bound {
        match self.depth[w.0] {
            Some(d) => Bound::Finite(self.k as i64 - d as i64),
            None => Bound::NegInfinity,
        }
    }

    /// Non-negative bound of `w`, if any.
    pub fn level(&self, w: WorldId) -> Option<usize> {
        self.bound(w).level()
    }

    pub fn depths(&self) -> &[Option<usize>] {
        &self.depth
    }

    /// Largest finite depth.
    pub fn max_depth(&self) -> usize {
        self.depth.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// Breadth-first depths over the union of all relations.
pub fn compute_depth_bound(m: &PointedModel, k: usize) -> DepthBoundMap {
    let mut depth = vec![None; m.world_count()];
    let mut queue = VecDeque::new();
    depth[m.designated().0] = Some(0);
    queue.push_back(m.designated());
    while let Some(w) = queue.pop_front() {
        let d = depth[w.0].expect("queued worlds have a depth");
        for modality in m.modalities() {
            for &v in m.successors(modality, w) {
                if depth[v.0].is_none() {
                    depth[v.0] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    DepthBoundMap { k, depth }
}

/// The sub-model of worlds at depth at most `k`, with all edges between them.
pub fn restrict(m: &PointedModel, k: usize) -> PointedModel {
    let db = compute_depth_bound(m, k);
    let keep: Vec<bool> = db
        .depth
        .iter()
        .map(|d| matches!(d, Some(d) if *d <= k))
        .collect();
    m.induced(&keep)
}

/// The sub-model of worlds reachable from the designated world.
pub fn prune_unreachable(m: &PointedModel) -> PointedModel {
    let db = compute_depth_bound(m, 0);
    let keep: Vec<bool> = db.depth.iter().map(Option::is_some).collect();
    m.induced(&keep)
}
