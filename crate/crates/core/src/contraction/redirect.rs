use crate::bisim::refine;
use crate::depth::compute_depth_bound;
use crate::error::{Error, Result};
use crate::model::{PointedModel, WorldId};

/// Deletes `y` and redirects every edge into `y` to `x`. Requires
/// `x, y` distinct and not designated, `b(x) >= b(y) >= 0`, and
/// `x ~_{b(y)} y`; the result is then `k`-bisimilar to `m`.
pub fn redirect_and_delete(
    m: &PointedModel,
    k: usize,
    x: WorldId,
    y: WorldId,
) -> Result<PointedModel> {
    for w in [x, y] {
        if !m.contains(w) {
            return Err(Error::UnknownWorld(w.to_string()));
        }
    }
    let fail = |clause: &str| Err(Error::Precondition(clause.to_string()));
    if x == y {
        return fail("x and y must be distinct");
    }
    if x == m.designated() || y == m.designated() {
        return fail("neither x nor y may be the designated world");
    }
    let db = compute_depth_bound(m, k);
    let (bx, by) = (db.bound(x), db.bound(y));
    let Some(hy) = by.level() else {
        return fail("b(y) >= 0");
    };
    if bx < by {
        return fail("b(x) >= b(y)");
    }
    if !refine(m, hy).equiv(hy, x, y) {
        return fail("x and y must be b(y)-bisimilar");
    }

    let mut b = PointedModel::builder();
    for w in m.worlds().filter(|&w| w != y) {
        b.add_world(m.name(w), m.props(w).iter().map(String::as_str))?;
    }
    for modality in m.modalities() {
        b.declare_modality(modality);
    }
    for (modality, from, to) in m.edges() {
        if from == y {
            continue;
        }
        let to = if to == y { x } else { to };
        b.add_edge(modality, m.name(from), m.name(to))?;
    }
    b.designate(m.name(m.designated()));
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisim::k_bisimilar;
    use crate::depth::prune_unreachable;
    use crate::generators::{gen_chain, gen_figure, gen_random, Figure};

    #[test]
    fn chain_redirect() {
        for k in 2..7 {
            let m = gen_chain(k);
            let (c1, c2) = (m.require("c1").unwrap(), m.require("c2").unwrap());
            let r = redirect_and_delete(&m, k, c1, c2).unwrap();
            assert_eq!(r.world_count(), k);
            assert!(r.has_edge("a", c1, c1));
            assert!(k_bisimilar(&m, &r, k));
            assert!(matches!(
                redirect_and_delete(&m, k, c2, c1),
                Err(Error::Precondition(c)) if c == "b(x) >= b(y)"
            ));
        }
    }

    #[test]
    fn precondition_clauses() {
        let m = gen_figure(Figure::Fig2);
        let w = |n: &str| m.require(n).unwrap();
        let clause = |r: Result<PointedModel>| match r {
            Err(Error::Precondition(c)) => c,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(
            clause(redirect_and_delete(&m, 2, w("w1"), w("w2"))),
            "x and y must be b(y)-bisimilar"
        );
        assert_eq!(
            clause(redirect_and_delete(&m, 2, w("wd"), w("w2"))),
            "neither x nor y may be the designated world"
        );
        assert_eq!(
            clause(redirect_and_delete(&m, 2, w("w1"), w("w1"))),
            "x and y must be distinct"
        );
        assert_eq!(
            clause(redirect_and_delete(&m, 1, w("w3"), w("w4"))),
            "b(y) >= 0"
        );
        assert!(matches!(
            redirect_and_delete(&m, 2, w("w1"), WorldId(9)),
            Err(Error::UnknownWorld(_))
        ));
        let r = redirect_and_delete(&m, 2, w("w3"), w("w4")).unwrap();
        assert!(k_bisimilar(&m, &r, 2));
    }

    #[test]
    fn n1_redirect_yields_n2() {
        let n1 = gen_figure(Figure::N1);
        let w = |n: &str| n1.require(n).unwrap();
        let r = prune_unreachable(&redirect_and_delete(&n1, 2, w("w2"), w("w3")).unwrap());
        let renamed = r.renamed(|_, n| format!("{n}'")).unwrap();
        assert_eq!(renamed, gen_figure(Figure::N2));
    }

    #[test]
    fn unreachable_y_is_rejected_and_siblings_merge() {
        let mut b = PointedModel::builder();
        for name in ["d", "x", "y"] {
            b.add_world(name, ["p"]).unwrap();
        }
        b.add_edge("a", "d", "x").unwrap();
        b.add_edge("a", "y", "x").unwrap();
        b.designate("d");
        let m = b.build().unwrap();
        let r = redirect_and_delete(&m, 3, m.require("x").unwrap(), m.require("y").unwrap());
        // y is unreachable, so b(y) is negative
        assert!(matches!(r, Err(Error::Precondition(_))));

        let mut b = PointedModel::builder();
        for name in ["d", "x", "y"] {
            b.add_world(name, ["p"]).unwrap();
        }
        b.add_edge("a", "d", "x").unwrap();
        b.add_edge("a", "d", "y").unwrap();
        b.designate("d");
        let m = b.build().unwrap();
        let r = redirect_and_delete(&m, 2, WorldId(1), WorldId(2)).unwrap();
        assert_eq!(r.names(), ["d", "x"]);
        assert_eq!(r.edge_count(), 1);
    }

    #[test]
    fn random_redirects_preserve_k_bisimilarity() {
        let mut applied = 0;
        for seed in 0..400 {
            let m = gen_random(2 + seed as usize % 7, 2, 1, 0.3, seed).unwrap();
            for k in 0..4 {
                for x in m.worlds() {
                    for y in m.worlds() {
                        if let Ok(r) = redirect_and_delete(&m, k, x, y) {
                            applied += 1;
                            assert!(k_bisimilar(&m, &r, k), "seed {seed} k {k}");
                        }
                    }
                }
            }
        }
        assert!(applied > 100);
    }
}
