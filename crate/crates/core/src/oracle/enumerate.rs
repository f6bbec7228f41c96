//! Exhaustive search for the smallest models k-bisimilar to a given one.
//!
//! Candidates are pointed models over the modalities of the target whose
//! designated world is world 0. World labels are drawn from the labels of
//! target worlds at depth at most `k`: a minimum-size k-bisimilar model has
//! every world within depth `k`, and each such world is 0-bisimilar to a target
//! world within the same depth. Candidates are enumerated up to renaming of the
//! non-designated worlds and checked with the recursive game, not refinement.

use crate::depth::compute_depth_bound;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::PointedModel;
use crate::oracle::naive::{Compact, Game, Signature};

/// Hard limits on the exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_worlds: usize,
    pub max_indices: usize,
    pub max_atoms: usize,
    /// Upper bound on raw candidates examined for any single world count.
    pub max_models: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_worlds: 4,
            max_indices: 2,
            max_atoms: 3,
            max_models: 1 << 22,
        }
    }
}

impl EnumerationBudget {
    fn validate(&self) -> Result<()> {
        if self.max_worlds == 0
            || self.max_indices == 0
            || self.max_atoms == 0
            || self.max_models == 0
        {
            return Err(Error::InvalidParameter(
                "enumeration budget fields must be positive".into(),
            ));
        }
        Ok(())
    }
}

struct Search {
    target: Compact,
    modality_count: usize,
    /// Label ids allowed on non-designated candidate worlds.
    palette: Vec<u32>,
    k: usize,
    exec: Execution,
}

/// One candidate size: raw index space and decoding.
struct Space<'s> {
    search: &'s Search,
    n: usize,
    edge_bits: u32,
    total: u64,
    perms: Vec<Vec<usize>>,
}

impl Search {
    fn new(
        m: &PointedModel,
        k: usize,
        budget: &EnumerationBudget,
        exec: Execution,
    ) -> Result<Search> {
        budget.validate()?;
        let sig = Signature::new(&[m]);
        if sig.modalities.len() > budget.max_indices {
            return Err(Error::BudgetExceeded(format!(
                "{} modalities, budget allows {}",
                sig.modalities.len(),
                budget.max_indices
            )));
        }
        if m.atoms().len() > budget.max_atoms {
            return Err(Error::BudgetExceeded(format!(
                "{} atoms, budget allows {}",
                m.atoms().len(),
                budget.max_atoms
            )));
        }
        let target = sig.compact(m);
        let db = compute_depth_bound(m, k);
        let mut palette: Vec<u32> = m
            .worlds()
            .filter(|&w| db.level(w).is_some())
            .map(|w| target.labels[w.0])
            .collect();
        palette.sort_unstable();
        palette.dedup();
        Ok(Search {
            modality_count: sig.modalities.len().max(1),
            target,
            palette,
            k,
            exec,
        })
    }

    fn space(&self, n: usize, budget: &EnumerationBudget) -> Result<Space<'_>> {
        let edge_bits = (self.modality_count * n * n) as u32;
        let labelings = (self.palette.len() as u64).checked_pow((n - 1) as u32);
        let total = labelings
            .zip(1u64.checked_shl(edge_bits).filter(|_| edge_bits < 64))
            .and_then(|(l, e)| l.checked_mul(e))
            .filter(|&t| t <= budget.max_models)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "{n}-world candidate space exceeds {} models",
                    budget.max_models
                ))
            })?;
        Ok(Space {
            search: self,
            n,
            edge_bits,
            total,
            perms: permutations_fixing_zero(n),
        })
    }
}

impl Space<'_> {
    fn decode(&self, idx: u64) -> (Vec<u32>, u64) {
        let mask = idx & ((1u64 << self.edge_bits) - 1);
        let mut rest = idx >> self.edge_bits;
        let p = self.search.palette.len() as u64;
        let mut labels = vec![self.search.target.labels[self.search.target.designated as usize]];
        for _ in 1..self.n {
            labels.push(self.search.palette[(rest % p) as usize]);
            rest /= p;
        }
        (labels, mask)
    }

    fn bit(&self, modality: usize, from: usize, to: usize) -> u32 {
        (modality * self.n * self.n + from * self.n + to) as u32
    }

    /// Smallest encoding among all renamings fixing world 0.
    fn is_canonical(&self, labels: &[u32], mask: u64) -> bool {
        let key = |perm: &[usize]| {
            let mut l = vec![0u32; self.n];
            let mut m = 0u64;
            for (w, &pw) in perm.iter().enumerate() {
                l[pw] = labels[w];
            }
            for i in 0..self.search.modality_count {
                for a in 0..self.n {
                    for b in 0..self.n {
                        if mask >> self.bit(i, a, b) & 1 == 1 {
                            m |= 1 << self.bit(i, perm[a], perm[b]);
                        }
                    }
                }
            }
            (l, m)
        };
        let own = (labels.to_vec(), mask);
        self.perms.iter().all(|p| key(p) >= own)
    }

    fn build(&self, labels: Vec<u32>, mask: u64) -> Compact {
        let succ = (0..self.search.modality_count)
            .map(|i| {
                (0..self.n)
                    .map(|a| {
                        (0..self.n)
                            .filter(|&b| mask >> self.bit(i, a, b) & 1 == 1)
                            .map(|b| b as u32)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Compact {
            labels,
            succ,
            designated: 0,
        }
    }

    /// Edge count of candidate `idx` if it is canonical and k-bisimilar.
    fn accept(&self, idx: u64) -> Option<u32> {
        let (labels, mask) = self.decode(idx);
        if !self.is_canonical(&labels, mask) {
            return None;
        }
        let candidate = self.build(labels, mask);
        let target = &self.search.target;
        let k = self.search.k;
        Game::new(target, &candidate, k)
            .check(target.designated, 0, k)
            .then_some(mask.count_ones())
    }

    fn any(&self) -> bool {
        let total = self.total as usize;
        self.search
            .exec
            .any_range(total, |i| self.accept(i as u64).is_some())
    }

    fn min_edges(&self) -> Option<u32> {
        let total = self.total as usize;
        self.search.exec.min_range(total, |i| self.accept(i as u64))
    }
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(rest, prefix, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..n).collect(), &mut vec![0], &mut out);
    out
}

/// Least number of worlds of any pointed model `k`-bisimilar to `m`.
pub fn exhaustive_min_worlds(
    m: &PointedModel,
    k: usize,
    budget: &EnumerationBudget,
) -> Result<usize> {
    exhaustive_min_worlds_with(m, k, budget, Execution::default())
}

pub fn exhaustive_min_worlds_with(
    m: &PointedModel,
    k: usize,
    budget: &EnumerationBudget,
    exec: Execution,
) -> Result<usize> {
    let search = Search::new(m, k, budget, exec)?;
    for n in 1..=budget.max_worlds {
        if search.space(n, budget)?.any() {
            return Ok(n);
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no {k}-bisimilar model with at most {} worlds",
        budget.max_worlds
    )))
}

/// Least total edge count of any pointed model with exactly `n_worlds` worlds
/// that is `k`-bisimilar to `m`.
pub fn exhaustive_min_edges(
    m: &PointedModel,
    k: usize,
    n_worlds: usize,
    budget: &EnumerationBudget,
) -> Result<usize> {
    exhaustive_min_edges_with(m, k, n_worlds, budget, Execution::default())
}

pub fn exhaustive_min_edges_with(
    m: &PointedModel,
    k: usize,
    n_worlds: usize,
    budget: &EnumerationBudget,
    exec: Execution,
) -> Result<usize> {
    if n_worlds == 0 || n_worlds > budget.max_worlds {
        return Err(Error::BudgetExceeded(format!(
            "{n_worlds} worlds outside budget of {}",
            budget.max_worlds
        )));
    }
    let search = Search::new(m, k, budget, exec)?;
    search
        .space(n_worlds, budget)?
        .min_edges()
        .map(|e| e as usize)
        .ok_or_else(|| {
            Error::NoCandidate(format!(
                "no {k}-bisimilar model with exactly {n_worlds} worlds"
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_chain, gen_figure, gen_loop, Figure};

    #[test]
    fn permutations() {
        assert_eq!(permutations_fixing_zero(1), vec![vec![0]]);
        assert_eq!(permutations_fixing_zero(3).len(), 2);
        assert_eq!(permutations_fixing_zero(4).len(), 6);
    }

    #[test]
    fn min_worlds_examples() {
        let b = EnumerationBudget::default();
        assert_eq!(exhaustive_min_worlds(&gen_figure(Figure::N1), 2, &b), Ok(3));
        for k in 0..4 {
            assert_eq!(exhaustive_min_worlds(&gen_loop(), k, &b), Ok(1));
        }
        assert_eq!(exhaustive_min_worlds(&gen_chain(2), 2, &b), Ok(1));
        // depth 3 separates N1 from N2; four worlds are needed
        assert_eq!(exhaustive_min_worlds(&gen_figure(Figure::N1), 3, &b), Ok(4));
    }

    #[test]
    fn min_edges_examples() {
        let b = EnumerationBudget::default();
        assert_eq!(exhaustive_min_edges(&gen_chain(2), 2, 1, &b), Ok(1));
        assert_eq!(exhaustive_min_edges(&gen_chain(0), 0, 1, &b), Ok(0));
        assert_eq!(
            exhaustive_min_edges(&gen_figure(Figure::Fig2), 2, 4, &b),
            Ok(5)
        );
        assert!(matches!(
            exhaustive_min_edges(&gen_figure(Figure::Fig2), 2, 2, &b),
            Err(Error::NoCandidate(_))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let tight = EnumerationBudget {
            max_models: 10,
            ..EnumerationBudget::default()
        };
        assert!(matches!(
            exhaustive_min_worlds(&gen_figure(Figure::N1), 2, &tight),
            Err(Error::BudgetExceeded(_))
        ));
        let few_atoms = EnumerationBudget {
            max_atoms: 2,
            ..EnumerationBudget::default()
        };
        assert!(matches!(
            exhaustive_min_worlds(&gen_figure(Figure::N1), 2, &few_atoms),
            Err(Error::BudgetExceeded(_))
        ));
        let zero = EnumerationBudget {
            max_worlds: 0,
            ..EnumerationBudget::default()
        };
        assert!(exhaustive_min_worlds(&gen_loop(), 1, &zero).is_err());
    }

    #[test]
    fn sequential_matches_parallel() {
        let b = EnumerationBudget::default();
        let m = gen_figure(Figure::N1);
        assert_eq!(
            exhaustive_min_worlds_with(&m, 2, &b, Execution::Sequential),
            exhaustive_min_worlds_with(&m, 2, &b, Execution::Parallel)
        );
    }
}
