use crate::bisim::{refine_with, Partition, Structure};
use crate::contraction::{ContractionResult, Mode};
use crate::depth::{compute_depth_bound, restrict};
use crate::exec::Execution;
use crate::model::{PointedModel, WorldId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StandardOptions {
    /// Keep worlds that the default construction drops: unreachable classes
    /// for the full quotient, classes deeper than `k` for the bounded one.
    pub keep_unreachable: bool,
}

/// Quotient of `m` by full bisimilarity over the worlds reachable from the
/// designated world.
pub fn standard_contraction(m: &PointedModel) -> ContractionResult {
    standard_contraction_with(m, StandardOptions::default(), Execution::default())
}

pub fn standard_contraction_with(
    m: &PointedModel,
    opts: StandardOptions,
    exec: Execution,
) -> ContractionResult {
    let (partition, _) = Structure::of(m).refine_full(exec);
    let keep: Vec<bool> = if opts.keep_unreachable {
        vec![true; m.world_count()]
    } else {
        let db = compute_depth_bound(m, 0);
        db.depths().iter().map(Option::is_some).collect()
    };
    let (model, class_of, members) = quotient(m, &partition, &keep);
    ContractionResult::new(m, model, Mode::StandardBisim, None, class_of, members)
}

/// Quotient of `m` by `k`-bisimilarity, keeping the classes within depth `k`
/// of the designated class.
pub fn standard_k_contraction(m: &PointedModel, k: usize) -> ContractionResult {
    standard_k_contraction_with(m, k, StandardOptions::default(), Execution::default())
}

pub fn standard_k_contraction_with(
    m: &PointedModel,
    k: usize,
    opts: StandardOptions,
    exec: Execution,
) -> ContractionResult {
    let levels = refine_with(m, k, exec);
    let keep = vec![true; m.world_count()];
    let (full, class_of, members) = quotient(m, levels.level(k), &keep);
    if opts.keep_unreachable {
        return ContractionResult::new(m, full, Mode::StandardK, Some(k), class_of, members);
    }
    let model = restrict(&full, k);
    let remap = |c: WorldId| model.id(full.name(c));
    let witness = class_of.iter().map(|c| c.and_then(remap)).collect();
    let mut kept_members = vec![Vec::new(); model.world_count()];
    for (c, ms) in members.into_iter().enumerate() {
        if let Some(r) = remap(WorldId(c)) {
            kept_members[r.0] = ms;
        }
    }
    ContractionResult::new(m, model, Mode::StandardK, Some(k), witness, kept_members)
}

/// Quotient of the worlds flagged in `keep` (closed under successors) by
/// `partition`. Each class is named after its least member.
fn quotient(
    m: &PointedModel,
    partition: &Partition,
    keep: &[bool],
) -> (PointedModel, Vec<Option<WorldId>>, Vec<Vec<WorldId>>) {
    let mut class_of_block: Vec<Option<WorldId>> = vec![None; partition.block_count()];
    let mut class_of = vec![None; m.world_count()];
    let mut members: Vec<Vec<WorldId>> = Vec::new();
    let mut b = PointedModel::builder();
    for w in m.worlds().filter(|w| keep[w.0]) {
        let block = partition.block_of(w);
        let c = match class_of_block[block] {
            Some(c) => c,
            None => {
                let c = b
                    .add_world(
                        format!("c({})", m.name(w)),
                        m.props(w).iter().map(String::as_str),
                    )
                    .expect("class names are distinct");
                class_of_block[block] = Some(c);
                members.push(Vec::new());
                c
            }
        };
        class_of[w.0] = Some(c);
        members[c.0].push(w);
    }
    for modality in m.modalities() {
        b.declare_modality(modality);
    }
    for (modality, from, to) in m.edges() {
        if let (Some(f), Some(t)) = (class_of[from.0], class_of[to.0]) {
            b.add_edge_ids(modality, f, t).expect("class ids are valid");
        }
    }
    let designated = class_of[m.designated().0].expect("designated world kept");
    b.designate(format!("c({})", m.name(members[designated.0][0])));
    (
        b.build().expect("quotient is well formed"),
        class_of,
        members,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisim::{bisimilar, k_bisimilar};
    use crate::generators::{
        gen_chain, gen_figure, gen_loop, gen_random, gen_succinctness_tree, Figure,
    };

    #[test]
    fn chain_and_loop() {
        let c = standard_contraction(&gen_chain(4));
        assert_eq!(c.model.world_count(), 5);
        let l = standard_contraction(&gen_loop());
        assert_eq!(l.model.world_count(), 1);
        assert_eq!(l.model.edge_count(), 1);
    }

    #[test]
    fn bounded_quotient_of_figures() {
        let n1 = gen_figure(Figure::N1);
        let c = standard_k_contraction(&n1, 2);
        assert_eq!(c.model.world_count(), 4);
        assert_eq!(c.model.edge_count(), 4);
        assert!(k_bisimilar(&n1, &c.model, 2));
        let names: Vec<_> = c.model.names().to_vec();
        assert_eq!(names, ["c(wd)", "c(w1)", "c(w2)", "c(w3)"]);

        let f = gen_figure(Figure::Fig2);
        let c = standard_k_contraction(&f, 2);
        assert!(k_bisimilar(&f, &c.model, 2));
        assert_eq!(c.model.world_count(), 5);
        assert_eq!(c.witness(f.require("w4").unwrap()), c.model.id("c(w4)"));
    }

    #[test]
    fn tree_keeps_every_world() {
        for k in 1..6 {
            let t = gen_succinctness_tree(k);
            let c = standard_k_contraction(&t, k);
            assert_eq!(c.model.world_count(), (1 << (k + 1)) - 1);
            let full = standard_contraction(&t);
            assert_eq!(full.model.world_count(), (1 << (k + 1)) - 1);
        }
    }

    #[test]
    fn identical_successors_merge() {
        let mut b = PointedModel::builder();
        b.add_world("r", ["p"]).unwrap();
        b.add_world("s", ["q"]).unwrap();
        b.add_world("t", ["q"]).unwrap();
        b.add_edge("a", "r", "s").unwrap();
        b.add_edge("a", "r", "t").unwrap();
        b.designate("r");
        let c = standard_contraction(&b.build().unwrap());
        assert_eq!(c.model.names(), ["c(r)", "c(s)"]);
        assert_eq!(c.members(WorldId(1)), [WorldId(1), WorldId(2)]);
        assert_eq!(c.model.edge_count(), 1);
    }

    #[test]
    fn tree_without_spine_is_a_chain() {
        for k in 0..7 {
            let t = gen_succinctness_tree(k);
            let mut b = PointedModel::builder();
            for w in t.worlds() {
                b.add_world(t.name(w), t.props(w).iter().map(String::as_str))
                    .unwrap();
            }
            for (modality, from, to) in t.edges().filter(|e| e.0 != "d") {
                b.add_edge_ids(modality, from, to).unwrap();
            }
            b.designate(t.name(t.designated()));
            let c = standard_contraction(&b.build().unwrap());
            assert_eq!(c.model.world_count(), k + 1);
            assert_eq!(c.model.edge_count(), k);
            for (n, w) in c.model.worlds().enumerate() {
                assert!(c.model.holds(w, &format!("p{n}")));
            }
        }
    }

    #[test]
    fn chain_is_its_own_bounded_quotient() {
        for k in 0..8 {
            let chain = gen_chain(k);
            let c = standard_k_contraction(&chain, k);
            assert_eq!(c.model.world_count(), k + 1);
            assert_eq!(c.model.edge_count(), k);
        }
    }

    #[test]
    fn unreachable_worlds() {
        let mut b = PointedModel::builder();
        b.add_world("a", ["p"]).unwrap();
        b.add_world("b", ["q"]).unwrap();
        b.add_edge("r", "b", "a").unwrap();
        b.designate("a");
        let m = b.build().unwrap();
        let c = standard_contraction(&m);
        assert_eq!(c.model.world_count(), 1);
        assert_eq!(c.witness(WorldId(1)), None);
        let kept = standard_contraction_with(
            &m,
            StandardOptions {
                keep_unreachable: true,
            },
            Execution::Sequential,
        );
        assert_eq!(kept.model.world_count(), 2);
        assert_eq!(kept.model.edge_count(), 1);
    }

    #[test]
    fn quotients_preserve_bisimilarity() {
        for seed in 0..200 {
            let m = gen_random(1 + seed as usize % 8, 2, 2, 0.3, seed).unwrap();
            let c = standard_contraction(&m);
            assert!(bisimilar(&m, &c.model));
            for k in 0..4 {
                let ck = standard_k_contraction(&m, k);
                assert!(k_bisimilar(&m, &ck.model, k), "seed {seed} k {k}");
                let db = compute_depth_bound(&m, k);
                for w in m.worlds() {
                    if db.level(w).is_some() {
                        let c = ck.witness(w).expect("witness");
                        assert!(ck.members(c).contains(&w));
                    }
                }
            }
        }
    }
}
