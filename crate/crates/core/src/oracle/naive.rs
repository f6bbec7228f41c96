//! Direct recursive k-bisimilarity game, independent of partition refinement.

use std::collections::{BTreeSet, HashMap};

use crate::model::{PointedModel, WorldId};

/// Integer-coded model: one label id per world and successor lists per
/// modality. Two compact models compared against each other must share the
/// label table and the modality order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Compact {
    pub labels: Vec<u32>,
    pub succ: Vec<Vec<Vec<u32>>>,
    pub designated: u32,
}

impl Compact {
    pub fn world_count(&self) -> usize {
        self.labels.len()
    }
}

/// Shared label table and modality order for a set of models.
pub(crate) struct Signature<'a> {
    pub modalities: Vec<&'a str>,
    labels: HashMap<&'a BTreeSet<String>, u32>,
}

impl<'a> Signature<'a> {
    pub fn new(models: &[&'a PointedModel]) -> Self {
        let modalities: BTreeSet<&str> = models.iter().flat_map(|m| m.modalities()).collect();
        let mut labels = HashMap::new();
        for m in models {
            for w in m.worlds() {
                let next = labels.len() as u32;
                labels.entry(m.props(w)).or_insert(next);
            }
        }
        Signature {
            modalities: modalities.into_iter().collect(),
            labels,
        }
    }

    pub fn label(&self, props: &BTreeSet<String>) -> u32 {
        self.labels[props]
    }

    pub fn compact(&self, m: &PointedModel) -> Compact {
        Compact {
            labels: m.worlds().map(|w| self.label(m.props(w))).collect(),
            succ: self
                .modalities
                .iter()
                .map(|i| {
                    m.worlds()
                        .map(|w| m.successors(i, w).iter().map(|v| v.0 as u32).collect())
                        .collect()
                })
                .collect(),
            designated: m.designated().0 as u32,
        }
    }
}

const UNKNOWN: u8 = 0;
const YES: u8 = 1;
const NO: u8 = 2;

/// Memoised `(a, w) ~_h (b, v)` from the atom / forth / back clauses.
pub(crate) struct Game<'a> {
    a: &'a Compact,
    b: &'a Compact,
    memo: Vec<u8>,
    levels: usize,
}

impl<'a> Game<'a> {
    pub fn new(a: &'a Compact, b: &'a Compact, max_h: usize) -> Self {
        Game {
            a,
            b,
            memo: vec![UNKNOWN; a.world_count() * b.world_count() * (max_h + 1)],
            levels: max_h + 1,
        }
    }

    pub fn check(&mut self, w: u32, v: u32, h: usize) -> bool {
        let slot = (w as usize * self.b.world_count() + v as usize) * self.levels + h;
        match self.memo[slot] {
            YES => return true,
            NO => return false,
            _ => {}
        }
        let result = self.a.labels[w as usize] == self.b.labels[v as usize]
            && (h == 0 || self.moves(w, v, h - 1));
        self.memo[slot] = if result { YES } else { NO };
        result
    }

    fn moves(&mut self, w: u32, v: u32, h: usize) -> bool {
        let (a, b) = (self.a, self.b);
        for (adj_a, adj_b) in a.succ.iter().zip(&b.succ) {
            let (ws, vs) = (&adj_a[w as usize], &adj_b[v as usize]);
            // forth
            for &x in ws {
                if !vs.iter().any(|&y| self.check(x, y, h)) {
                    return false;
                }
            }
            // back
            for &y in vs {
                if !ws.iter().any(|&x| self.check(x, y, h)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether `(m1, w)` and `(m2, v)` are `h`-bisimilar.
pub fn naive_k_bisim(
    m1: &PointedModel,
    w: WorldId,
    m2: &PointedModel,
    v: WorldId,
    h: usize,
) -> bool {
    let sig = Signature::new(&[m1, m2]);
    let (a, b) = (sig.compact(m1), sig.compact(m2));
    Game::new(&a, &b, h).check(w.0 as u32, v.0 as u32, h)
}

/// Whether the two pointed models are `h`-bisimilar at their designated worlds.
pub fn naive_pointed(m1: &PointedModel, m2: &PointedModel, h: usize) -> bool {
    naive_k_bisim(m1, m1.designated(), m2, m2.designated(), h)
}

/// `h`-bisimilarity table of one model against itself, indexed `[w][v]`.
pub fn naive_table(m: &PointedModel, h: usize) -> Vec<Vec<bool>> {
    let sig = Signature::new(&[m]);
    let a = sig.compact(m);
    let mut game = Game::new(&a, &a, h);
    let n = m.world_count() as u32;
    (0..n)
        .map(|w| (0..n).map(|v| game.check(w, v, h)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_figure, gen_random, Figure};

    #[test]
    fn figure_pairs() {
        let n1 = gen_figure(Figure::N1);
        let n2 = gen_figure(Figure::N2);
        assert!(naive_pointed(&n1, &n2, 2));
        assert!(!naive_pointed(&n1, &n2, 3));
        let w = |m: &PointedModel, n: &str| m.require(n).unwrap();
        assert!(naive_k_bisim(&n1, w(&n1, "w3"), &n2, w(&n2, "w2'"), 0));
        assert!(!naive_k_bisim(&n1, w(&n1, "w3"), &n2, w(&n2, "w2'"), 1));
        assert!(naive_k_bisim(&n1, w(&n1, "w1"), &n2, w(&n2, "w1'"), 1));
        assert!(naive_k_bisim(&n1, w(&n1, "w2"), &n2, w(&n2, "w2'"), 1));
    }

    #[test]
    fn reflexive_and_symmetric() {
        for seed in 0..50 {
            let m = gen_random(6, 2, 2, 0.4, seed).unwrap();
            for h in 0..5 {
                let t = naive_table(&m, h);
                for (w, row) in t.iter().enumerate() {
                    assert!(row[w]);
                    for (v, &same) in row.iter().enumerate() {
                        assert_eq!(same, t[v][w]);
                    }
                }
            }
        }
    }

    #[test]
    fn missing_modality_counts_as_empty() {
        let mut b = PointedModel::builder();
        b.add_world("x", ["p"]).unwrap();
        b.declare_modality("a");
        b.designate("x");
        let with_a = b.build().unwrap();
        let mut b = PointedModel::builder();
        b.add_world("y", ["p"]).unwrap();
        b.designate("y");
        let without = b.build().unwrap();
        assert!(naive_pointed(&with_a, &without, 3));
    }
}
