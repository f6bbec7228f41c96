//! Constructors for the reference models, the chain and binary-tree families,
//! and seeded random models.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{ModelBuilder, PointedModel};

/// Modality used by every single-index generator.
pub const DEFAULT_MODALITY: &str = "a";
/// Solid (tree) edges of the succinctness family.
pub const TREE_MODALITY: &str = "s";
/// Dashed (leaf-to-left-spine) edges of the succinctness family.
pub const SPINE_MODALITY: &str = "d";

/// Named reference models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Five worlds over `p`/`q` with a loop and a two-cycle; used for depth,
    /// bound and contraction examples.
    Fig2,
    /// Five-world model over `p`, `q`, `r` whose rooted 2-contraction is `N2`.
    N1,
    /// Three-world model 2-bisimilar to `N1`.
    N2,
}

impl std::str::FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(Figure::Fig2),
            "n1" => Ok(Figure::N1),
            "n2" => Ok(Figure::N2),
            other => Err(Error::UnknownFigure(other.to_string())),
        }
    }
}

fn from_table(worlds: &[(&str, &[&str])], edges: &[(&str, &str)]) -> PointedModel {
    let mut b = ModelBuilder::default();
    for (name, props) in worlds {
        b.add_world(*name, props.iter().copied())
            .expect("fixed table");
    }
    b.declare_modality(DEFAULT_MODALITY);
    for (from, to) in edges {
        b.add_edge(DEFAULT_MODALITY, from, to).expect("fixed table");
    }
    b.designate(worlds[0].0);
    b.build().expect("fixed table")
}

pub fn gen_figure(figure: Figure) -> PointedModel {
    match figure {
        Figure::Fig2 => from_table(
            &[
                ("wd", &["p"]),
                ("w1", &["p"]),
                ("w2", &["p"]),
                ("w3", &["q"]),
                ("w4", &["q"]),
            ],
            &[
                ("wd", "w1"),
                ("wd", "w2"),
                ("w1", "w3"),
                ("w3", "w1"),
                ("w2", "w4"),
                ("w3", "w2"),
                ("w2", "w2"),
            ],
        ),
        Figure::N1 => from_table(
            &[
                ("wd", &["p"]),
                ("w1", &["q"]),
                ("w2", &["r"]),
                ("w3", &["r"]),
                ("w4", &["p"]),
            ],
            &[
                ("wd", "w1"),
                ("wd", "w2"),
                ("w1", "w3"),
                ("w2", "w2"),
                ("w3", "w4"),
            ],
        ),
        Figure::N2 => from_table(
            &[("wd'", &["p"]), ("w1'", &["q"]), ("w2'", &["r"])],
            &[
                ("wd'", "w1'"),
                ("wd'", "w2'"),
                ("w1'", "w2'"),
                ("w2'", "w2'"),
            ],
        ),
    }
}

/// Chain `c0 -> c1 -> ... -> ck` with `p` true everywhere, designated `c0`.
pub fn gen_chain(k: usize) -> PointedModel {
    let mut b = ModelBuilder::default();
    for i in 0..=k {
        b.add_world(format!("c{i}"), ["p"]).expect("fresh names");
    }
    b.declare_modality(DEFAULT_MODALITY);
    for i in 0..k {
        b.add_edge(DEFAULT_MODALITY, &format!("c{i}"), &format!("c{}", i + 1))
            .expect("worlds exist");
    }
    b.designate("c0");
    b.build().expect("non-empty")
}

/// A single `p` world with a self-loop.
pub fn gen_loop() -> PointedModel {
    from_table(&[("l", &["p"])], &[("l", "l")])
}

/// Name of a tree world given as a string over `{l, r}`; the root is `e`.
pub fn tree_world_name(path: &str) -> String {
    if path.is_empty() {
        "e".to_string()
    } else {
        path.to_string()
    }
}

/// The binary tree of height `k` over `{l, r}` in which every world at depth
/// `n` satisfies exactly `pn`, `s` links each node to its two children, and
/// each leaf has a `d` edge to the left-spine node `l^n` iff its `(n+1)`-th
/// letter is `l`. Designated world is the root `e`.
pub fn gen_succinctness_tree(k: usize) -> PointedModel {
    let mut levels: Vec<Vec<String>> = vec![vec![String::new()]];
    for _ in 0..k {
        let next = levels
            .last()
            .unwrap()
            .iter()
            .flat_map(|s| [format!("{s}l"), format!("{s}r")])
            .collect();
        levels.push(next);
    }

    let mut b = ModelBuilder::default();
    for (depth, level) in levels.iter().enumerate() {
        for path in level {
            b.add_world(tree_world_name(path), [format!("p{depth}")])
                .expect("fresh names");
        }
    }
    b.declare_modality(TREE_MODALITY);
    b.declare_modality(SPINE_MODALITY);
    for level in &levels[..k] {
        for path in level {
            let from = tree_world_name(path);
            b.add_edge(TREE_MODALITY, &from, &format!("{path}l"))
                .unwrap();
            b.add_edge(TREE_MODALITY, &from, &format!("{path}r"))
                .unwrap();
        }
    }
    for leaf in &levels[k] {
        for (n, letter) in leaf.chars().enumerate() {
            if letter == 'l' {
                let target = tree_world_name(&"l".repeat(n));
                b.add_edge(SPINE_MODALITY, leaf, &target).unwrap();
            }
        }
    }
    b.designate("e");
    b.build().expect("non-empty")
}

/// Uniform random model: worlds `w0..`, modalities `r0..`, atoms `p0..`.
/// Each atom holds at each world with probability 1/2 and each ordered pair is
/// an edge of each modality with probability `edge_density`. The designated
/// world is `w0`; reachability of the rest is not guaranteed.
pub fn gen_random(
    n_worlds: usize,
    n_indices: usize,
    n_atoms: usize,
    edge_density: f64,
    seed: u64,
) -> Result<PointedModel> {
    if n_worlds == 0 {
        return Err(Error::InvalidParameter(
            "n_worlds must be at least 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&edge_density) {
        return Err(Error::InvalidParameter(format!(
            "edge density {edge_density} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = ModelBuilder::default();
    for w in 0..n_worlds {
        let props: Vec<String> = (0..n_atoms)
            .filter(|_| rng.gen_bool(0.5))
            .map(|a| format!("p{a}"))
            .collect();
        b.add_world(format!("w{w}"), props)?;
    }
    for i in 0..n_indices {
        let modality = format!("r{i}");
        b.declare_modality(modality.clone());
        for from in 0..n_worlds {
            for to in 0..n_worlds {
                if rng.gen_bool(edge_density) {
                    b.add_edge(&modality, &format!("w{from}"), &format!("w{to}"))?;
                }
            }
        }
    }
    b.designate("w0");
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::WorldId;

    #[test]
    fn figures_have_expected_shape() {
        let fig2 = gen_figure(Figure::Fig2);
        assert_eq!(fig2.world_count(), 5);
        assert_eq!(fig2.edge_count(), 7);
        assert_eq!(fig2.name(fig2.designated()), "wd");

        let n1 = gen_figure(Figure::N1);
        let labels: Vec<Vec<&str>> = n1
            .worlds()
            .map(|w| n1.props(w).iter().map(String::as_str).collect())
            .collect();
        assert_eq!(
            labels,
            vec![vec!["p"], vec!["q"], vec!["r"], vec!["r"], vec!["p"]]
        );

        let n2 = gen_figure(Figure::N2);
        assert_eq!(n2.world_count(), 3);
        let w2 = n2.require("w2'").unwrap();
        assert!(n2.has_edge(DEFAULT_MODALITY, w2, w2));

        assert_eq!(
            "fig9".parse::<Figure>(),
            Err(Error::UnknownFigure("fig9".into()))
        );
    }

    #[test]
    fn chain_shape() {
        let c0 = gen_chain(0);
        assert_eq!((c0.world_count(), c0.edge_count()), (1, 0));
        let c3 = gen_chain(3);
        assert_eq!((c3.world_count(), c3.edge_count()), (4, 3));
        assert!(c3
            .worlds()
            .all(|w| c3.holds(w, "p") && c3.props(w).len() == 1));
    }

    #[test]
    fn tree_shape() {
        let t3 = gen_succinctness_tree(3);
        assert_eq!(t3.world_count(), 15);
        let lll = t3.require("lll").unwrap();
        let targets: Vec<&str> = t3
            .successors(SPINE_MODALITY, lll)
            .iter()
            .map(|&w| t3.name(w))
            .collect();
        assert_eq!(targets, vec!["e", "l", "ll"]);
        let rrr = t3.require("rrr").unwrap();
        assert!(t3.successors(SPINE_MODALITY, rrr).is_empty());
        let lrl = t3.require("lrl").unwrap();
        let targets: Vec<&str> = t3
            .successors(SPINE_MODALITY, lrl)
            .iter()
            .map(|&w| t3.name(w))
            .collect();
        assert_eq!(targets, vec!["e", "ll"]);
        // 12 dashed edges in the height-3 tree: each of 8 leaves has one per `l`.
        assert_eq!(t3.edge_count_for(SPINE_MODALITY), 12);
        assert_eq!(t3.edge_count_for(TREE_MODALITY), 14);

        let t0 = gen_succinctness_tree(0);
        assert_eq!(t0.world_count(), 1);
        assert_eq!(t0.edge_count(), 0);
        assert!(t0.holds(WorldId(0), "p0"));

        for k in 0..8 {
            assert_eq!(gen_succinctness_tree(k).world_count(), (1 << (k + 1)) - 1);
        }
    }

    #[test]
    fn random_models() {
        let m = gen_random(1, 1, 1, 0.0, 7).unwrap();
        assert_eq!((m.world_count(), m.edge_count()), (1, 0));

        let full = gen_random(4, 2, 1, 1.0, 3).unwrap();
        assert_eq!(full.edge_count(), 2 * 16);

        assert_eq!(
            gen_random(5, 2, 2, 0.4, 42).unwrap(),
            gen_random(5, 2, 2, 0.4, 42).unwrap()
        );
        assert!(gen_random(0, 1, 1, 0.5, 0).is_err());
        assert!(gen_random(2, 1, 1, 1.5, 0).is_err());
    }
}
