//! Bounded and unbounded bisimulation by iterated signature refinement.
//!
//! Level `h + 1` splits every block of level `h` by, for each modality, the set
//! of level-`h` blocks reachable in one step. Level 0 groups worlds by their
//! exact atom set. Two worlds share a level-`h` block iff they are
//! `h`-bisimilar.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use crate::exec::Execution;
use crate::model::{PointedModel, WorldId};

/// Below this many worlds a refinement pass always runs sequentially.
const PARALLEL_THRESHOLD: usize = 2048;

/// A partition of `0..n` with blocks numbered by first occurrence, so block
/// order follows the least member of each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<usize>,
    block_count: usize,
}

impl Partition {
    fn from_keys<K: Hash + Eq>(keys: Vec<K>) -> Partition {
        let mut ids: HashMap<K, usize> = HashMap::with_capacity(keys.len());
        let block_of = keys
            .into_iter()
            .map(|key| {
                let next = ids.len();
                *ids.entry(key).or_insert(next)
            })
            .collect();
        Partition {
            block_of,
            block_count: ids.len(),
        }
    }

    /// Number of elements partitioned.
    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_of(&self, w: WorldId) -> usize {
        self.block_of[w.0]
    }

    pub fn same_block(&self, a: WorldId, b: WorldId) -> bool {
        self.block_of[a.0] == self.block_of[b.0]
    }

    /// Members of each block, blocks in canonical order.
    pub fn blocks(&self) -> Vec<Vec<WorldId>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (w, &b) in self.block_of.iter().enumerate() {
            out[b].push(WorldId(w));
        }
        out
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let mut image: Vec<Option<usize>> = vec![None; self.block_count];
        self.block_of
            .iter()
            .zip(&coarser.block_of)
            .all(|(&fine, &coarse)| *image[fine].get_or_insert(coarse) == coarse)
    }
}

/// Levels `P_0 .. P_k` of bounded bisimilarity on one world set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSequence {
    k: usize,
    levels: Vec<Partition>,
    stable_from: Option<usize>,
}

impl PartitionSequence {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn level(&self, h: usize) -> &Partition {
        &self.levels[h]
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    /// First level at which refinement reached its fixpoint, if within `k`.
    pub fn stable_from(&self) -> Option<usize> {
        self.stable_from
    }

    /// `a` and `b` are `h`-bisimilar. `h` must not exceed `k`.
    pub fn equiv(&self, h: usize, a: WorldId, b: WorldId) -> bool {
        self.levels[h].same_block(a, b)
    }
}

/// Index-level transition structure: one label id per world and successor
/// lists per modality. Cross-model checks run on the disjoint union of two
/// models with modalities matched by name.
pub(crate) struct Structure {
    labels: Vec<usize>,
    succ: Vec<Vec<Vec<usize>>>,
}

impl Structure {
    pub(crate) fn of(m: &PointedModel) -> Structure {
        Structure::union(&[m])
    }

    pub(crate) fn union(models: &[&PointedModel]) -> Structure {
        let modalities: BTreeSet<&str> = models.iter().flat_map(|m| m.modalities()).collect();
        let mut label_ids: HashMap<&BTreeSet<String>, usize> = HashMap::new();
        let mut labels = Vec::new();
        for m in models {
            for w in m.worlds() {
                let next = label_ids.len();
                labels.push(*label_ids.entry(m.props(w)).or_insert(next));
            }
        }
        let succ = modalities
            .iter()
            .map(|i| {
                let mut adj = Vec::with_capacity(labels.len());
                let mut offset = 0;
                for m in models {
                    for w in m.worlds() {
                        adj.push(m.successors(i, w).iter().map(|v| v.0 + offset).collect());
                    }
                    offset += m.world_count();
                }
                adj
            })
            .collect();
        Structure { labels, succ }
    }

    fn initial(&self) -> Partition {
        Partition::from_keys(self.labels.clone())
    }

    fn step(&self, current: &Partition, exec: Execution) -> Partition {
        let signature = |w: usize| {
            let successors: Vec<Vec<usize>> = self
                .succ
                .iter()
                .map(|adj| {
                    let mut blocks: Vec<usize> =
                        adj[w].iter().map(|&v| current.block_of[v]).collect();
                    blocks.sort_unstable();
                    blocks.dedup();
                    blocks
                })
                .collect();
            (current.block_of[w], successors)
        };
        let n = self.labels.len();
        let exec = if n < PARALLEL_THRESHOLD {
            Execution::Sequential
        } else {
            exec
        };
        Partition::from_keys(exec.map_range(n, signature))
    }

    /// Levels `0..=k`, stopping early at the fixpoint and repeating it.
    pub(crate) fn refine(&self, k: usize, exec: Execution) -> PartitionSequence {
        let mut levels = vec![self.initial()];
        let mut stable_from = None;
        while levels.len() <= k {
            let last = levels.last().unwrap();
            if stable_from.is_some() {
                levels.push(last.clone());
                continue;
            }
            let next = self.step(last, exec);
            if next.block_count == last.block_count {
                stable_from = Some(levels.len() - 1);
            }
            levels.push(next);
        }
        PartitionSequence {
            k,
            levels,
            stable_from,
        }
    }

    /// The fixpoint partition (full bisimilarity) and the level it was reached at.
    pub(crate) fn refine_full(&self, exec: Execution) -> (Partition, usize) {
        let mut current = self.initial();
        let mut rounds = 0;
        loop {
            let next = self.step(&current, exec);
            if next.block_count == current.block_count {
                return (current, rounds);
            }
            current = next;
            rounds += 1;
        }
    }
}

/// Bounded bisimilarity levels `P_0 .. P_k` of one model.
pub fn refine(m: &PointedModel, k: usize) -> PartitionSequence {
    refine_with(m, k, Execution::default())
}

pub fn refine_with(m: &PointedModel, k: usize, exec: Execution) -> PartitionSequence {
    Structure::of(m).refine(k, exec)
}

/// Bisimilarity classes of one model.
pub fn refine_full(m: &PointedModel) -> Partition {
    Structure::of(m).refine_full(Execution::default()).0
}

/// `(m1, wd1)` and `(m2, wd2)` are `k`-bisimilar.
pub fn k_bisimilar(m1: &PointedModel, m2: &PointedModel, k: usize) -> bool {
    let seq = Structure::union(&[m1, m2]).refine(k, Execution::default());
    let b = WorldId(m1.world_count() + m2.designated().0);
    seq.equiv(k, m1.designated(), b)
}

/// `(m1, wd1)` and `(m2, wd2)` are bisimilar.
pub fn bisimilar(m1: &PointedModel, m2: &PointedModel) -> bool {
    let (p, _) = Structure::union(&[m1, m2]).refine_full(Execution::default());
    p.same_block(
        m1.designated(),
        WorldId(m1.world_count() + m2.designated().0),
    )
}

/// Number of refinement rounds after which the disjoint union of the two
/// models is stable; bisimilarity coincides with `h`-bisimilarity from here on.
pub fn union_fixpoint_level(m1: &PointedModel, m2: &PointedModel) -> usize {
    Structure::union(&[m1, m2])
        .refine_full(Execution::default())
        .1
}
