use std::collections::HashMap;

use crate::contraction::representatives::{
    representative_structure_with, RepresentativeStructure, WorldOrder,
};
use crate::contraction::{ContractionResult, Mode};
use crate::exec::Execution;
use crate::model::{ModelBuilder, PointedModel, WorldId};

/// Rooted `k`-contraction: one world per representative class of a maximal
/// representative, with an edge to every class `b(x) - 1`-bisimilar to some
/// successor.
pub fn rooted_k_contraction(m: &PointedModel, k: usize) -> ContractionResult {
    rooted_k_contraction_with(m, k, &WorldOrder::natural(m), Execution::default())
}

pub fn rooted_k_contraction_with(
    m: &PointedModel,
    k: usize,
    order: &WorldOrder,
    exec: Execution,
) -> ContractionResult {
    let rs = representative_structure_with(m, k, order, exec);
    let classes = Classes::new(m, &rs);

    // targets[h][block]: classes holding a maximal representative in that level-h block
    let mut targets: Vec<Vec<Vec<usize>>> = rs
        .levels()
        .levels()
        .iter()
        .map(|p| vec![Vec::new(); p.block_count()])
        .collect();
    for x in rs.max_representatives() {
        let c = classes.class_of[x.0].expect("maximal representatives have a class");
        for (h, row) in targets.iter_mut().enumerate() {
            let slot = &mut row[rs.levels().level(h).block_of(x)];
            if slot.last() != Some(&c) && !slot.contains(&c) {
                slot.push(c);
            }
        }
    }

    let mut b = classes.builder(m);
    for (c, &x) in classes.canonical.iter().enumerate() {
        let Some(h) = rs.level(x).and_then(|bx| bx.checked_sub(1)) else {
            continue;
        };
        let partition = rs.levels().level(h);
        for modality in m.modalities() {
            for &z in m.successors(modality, x) {
                for &t in &targets[h][partition.block_of(z)] {
                    b.add_edge_ids(modality, WorldId(c), WorldId(t))
                        .expect("class ids");
                }
            }
        }
    }
    classes.finish(m, &rs, b, Mode::RootedK)
}

/// Rooted `k`-contraction that keeps, for each successor `y` of a maximal
/// representative `x`, only the edge to the class of the least maximal
/// representative `b(x) - 1`-bisimilar to `y`.
pub fn rooted_k_contraction_edge_min(
    m: &PointedModel,
    k: usize,
    order: &WorldOrder,
) -> ContractionResult {
    rooted_k_contraction_edge_min_with(m, k, order, Execution::default())
}

pub fn rooted_k_contraction_edge_min_with(
    m: &PointedModel,
    k: usize,
    order: &WorldOrder,
    exec: Execution,
) -> ContractionResult {
    let rs = representative_structure_with(m, k, order, exec);
    let classes = Classes::new(m, &rs);
    let mut b = classes.builder(m);
    for (c, &x) in classes.canonical.iter().enumerate() {
        let Some(h) = rs.level(x).and_then(|bx| bx.checked_sub(1)) else {
            continue;
        };
        for modality in m.modalities() {
            for &y in m.successors(modality, x) {
                let l = rs
                    .least_representative(y, h)
                    .expect("successors of positive-bound worlds have representatives");
                let t = classes.class_of[l.0].expect("class of maximal representative");
                b.add_edge_ids(modality, WorldId(c), WorldId(t))
                    .expect("class ids");
            }
        }
    }
    classes.finish(m, &rs, b, Mode::RootedKEdgeMin)
}

/// The worlds of a rooted contraction: classes `(b(x), [x]_{b(x)})` of the
/// maximal representatives, numbered by the order rank of their least member.
struct Classes {
    canonical: Vec<WorldId>,
    class_of: Vec<Option<usize>>,
}

impl Classes {
    fn new(m: &PointedModel, rs: &RepresentativeStructure) -> Classes {
        let mut canonical: Vec<WorldId> = Vec::new();
        let mut seen: HashMap<(usize, usize), WorldId> = HashMap::new();
        for x in rs.max_representatives() {
            let b = rs.level(x).expect("maximal representatives have a bound");
            let key = (b, rs.levels().level(b).block_of(x));
            seen.entry(key).or_insert_with(|| {
                let least = rs.least_representative(x, b).expect("own class");
                canonical.push(least);
                least
            });
        }
        canonical.sort_by_key(|&x| rs.order().rank(x));
        let mut class_of = vec![None; m.world_count()];
        for (c, &x) in canonical.iter().enumerate() {
            class_of[x.0] = Some(c);
        }
        for x in rs.max_representatives() {
            let b = rs.level(x).expect("bound");
            let l = rs.least_representative(x, b).expect("own class");
            class_of[x.0] = class_of[l.0];
        }
        Classes {
            canonical,
            class_of,
        }
    }

    fn name(m: &PointedModel, rs: &RepresentativeStructure, x: WorldId) -> String {
        format!("c({},{})", m.name(x), rs.level(x).expect("bound"))
    }

    fn builder(&self, m: &PointedModel) -> ModelBuilder {
        let mut b = PointedModel::builder();
        for &x in &self.canonical {
            // names are only fixed in `finish`; placeholders keep ids aligned
            b.add_world(m.name(x), m.props(x).iter().map(String::as_str))
                .expect("distinct canonical worlds");
        }
        for modality in m.modalities() {
            b.declare_modality(modality);
        }
        b
    }

    fn finish(
        self,
        m: &PointedModel,
        rs: &RepresentativeStructure,
        mut b: ModelBuilder,
        mode: Mode,
    ) -> ContractionResult {
        let wd = m.designated();
        let designated = self.class_of[wd.0].expect("designated world is a maximal representative");
        b.designate(m.name(self.canonical[designated]));
        let model = b
            .build()
            .expect("contraction is well formed")
            .renamed(|c, _| Classes::name(m, rs, self.canonical[c.0]))
            .expect("class names are distinct");

        let witness = m
            .worlds()
            .map(|w| {
                let b = rs.level(w)?;
                let l = rs.least_representative(w, b).ok()?;
                self.class_of[l.0].map(WorldId)
            })
            .collect();
        let members = self
            .canonical
            .iter()
            .map(|&x| rs.repr_class(x).expect("bound"))
            .collect();
        ContractionResult::new(m, model, mode, Some(rs.k()), witness, members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisim::k_bisimilar;
    use crate::generators::{gen_chain, gen_figure, gen_loop, gen_succinctness_tree, Figure};

    fn edges(c: &ContractionResult) -> Vec<(String, String)> {
        c.model
            .named_edges()
            .into_iter()
            .map(|(_, f, t)| (f, t))
            .collect()
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut v: Vec<_> = list
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn n1_contracts_to_three_worlds() {
        let n1 = gen_figure(Figure::N1);
        let c = rooted_k_contraction(&n1, 2);
        assert_eq!(c.model.world_count(), 3);
        assert!(k_bisimilar(&n1, &c.model, 2));
        assert!(k_bisimilar(&c.model, &gen_figure(Figure::N2), 3));
    }

    #[test]
    fn figure_rooted_k2_follows_the_definition() {
        let m = gen_figure(Figure::Fig2);
        let c = rooted_k_contraction(&m, 2);
        assert_eq!(c.model.world_count(), 4);
        assert_eq!(
            edges(&c),
            pairs(&[
                ("c(wd,2)", "c(w1,1)"),
                ("c(wd,2)", "c(w2,1)"),
                ("c(w1,1)", "c(w3,0)"),
                ("c(w2,1)", "c(w3,0)"),
                ("c(w2,1)", "c(wd,2)"),
                ("c(w2,1)", "c(w1,1)"),
                ("c(w2,1)", "c(w2,1)"),
            ])
        );
        assert!(k_bisimilar(&m, &c.model, 2));
    }

    #[test]
    fn figure_edge_min() {
        let m = gen_figure(Figure::Fig2);
        let order = WorldOrder::natural(&m);
        let c = rooted_k_contraction_edge_min(&m, 2, &order);
        assert_eq!(
            edges(&c),
            pairs(&[
                ("c(wd,2)", "c(w1,1)"),
                ("c(wd,2)", "c(w2,1)"),
                ("c(w1,1)", "c(w3,0)"),
                ("c(w2,1)", "c(w3,0)"),
                ("c(w2,1)", "c(wd,2)"),
            ])
        );
        let c3 = rooted_k_contraction_edge_min(&m, 3, &order);
        assert_eq!(c3.model.world_count(), 5);
        assert!(c3
            .model
            .named_edges()
            .contains(&("a".into(), "c(w3,1)".into(), "c(wd,3)".into())));
        assert!(k_bisimilar(&m, &c3.model, 3));
    }

    #[test]
    fn small_models() {
        for k in 1..5 {
            let l =
                rooted_k_contraction_edge_min(&gen_loop(), k, &WorldOrder::natural(&gen_loop()));
            assert_eq!(l.model.named_edges().len(), 1);
            assert_eq!(l.model.world_count(), 1);
        }
        let l = rooted_k_contraction(&gen_loop(), 5);
        assert_eq!(l.model.world_count(), 1);
        assert_eq!(l.model.edge_count(), 1);
        for k in 0..6 {
            let c = rooted_k_contraction(&gen_chain(k), k);
            assert_eq!(c.model.world_count(), 1, "k={k}");
            let t = rooted_k_contraction(&gen_succinctness_tree(k), k);
            assert_eq!(t.model.world_count(), k + 1);
        }
    }

    #[test]
    fn designated_world_is_first_class() {
        let m = gen_figure(Figure::Fig2);
        let c = rooted_k_contraction(&m, 1);
        assert_eq!(c.model.world_count(), 1);
        assert_eq!(c.model.name(c.model.designated()), "c(wd,1)");
        assert_eq!(c.witness(m.require("w3").unwrap()), None);
        assert_eq!(c.witness_named().len(), 3);
    }
}
