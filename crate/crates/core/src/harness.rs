//! Succinctness sweep: standard versus rooted `k`-contraction of the
//! succinctness trees.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::contraction::{
    rooted_k_contraction_with, standard_k_contraction_with, StandardOptions, WorldOrder,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::generators::gen_succinctness_tree;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuccinctnessRow {
    pub k: usize,
    pub worlds_standard: usize,
    pub edges_standard: usize,
    pub worlds_rooted: usize,
    pub edges_rooted: usize,
    pub ms_standard: f64,
    pub ms_rooted: f64,
}

fn row(k: usize) -> SuccinctnessRow {
    let tree = gen_succinctness_tree(k);
    // the sweep already fans out over k, so each contraction runs sequentially
    let exec = Execution::Sequential;
    let start = Instant::now();
    let standard = standard_k_contraction_with(&tree, k, StandardOptions::default(), exec);
    let ms_standard = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    let rooted = rooted_k_contraction_with(&tree, k, &WorldOrder::natural(&tree), exec);
    let ms_rooted = start.elapsed().as_secs_f64() * 1e3;
    SuccinctnessRow {
        k,
        worlds_standard: standard.model.world_count(),
        edges_standard: standard.model.edge_count(),
        worlds_rooted: rooted.model.world_count(),
        edges_rooted: rooted.model.edge_count(),
        ms_standard,
        ms_rooted,
    }
}

/// One row per `k` in `k_min..=k_max`, in ascending `k`.
pub fn succinctness_sweep(
    k_min: usize,
    k_max: usize,
    exec: Execution,
) -> Result<Vec<SuccinctnessRow>> {
    if k_min > k_max {
        return Err(Error::InvalidParameter(format!(
            "k-min {k_min} exceeds k-max {k_max}"
        )));
    }
    if k_max > 24 {
        return Err(Error::InvalidParameter(format!(
            "k-max {k_max} is too large: the tree has 2^(k+1)-1 worlds"
        )));
    }
    let ks: Vec<usize> = (k_min..=k_max).collect();
    Ok(exec.map(&ks, |&k| row(k)))
}

pub fn write_csv<W: Write>(rows: &[SuccinctnessRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()
}
