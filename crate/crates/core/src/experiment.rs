//! Monte Carlo estimates of edge-class counts under uniformly random
//! embeddings.
//!
//! Seeds are split by block: samples are grouped in blocks of
//! [`BLOCK`], and block `b` draws from ChaCha8 seeded with the root seed on
//! stream `b`. Block totals are exact integers merged in block order, so a
//! report is identical for any worker count.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::embedding::random_embedding;
use crate::error::Result;
use crate::faces::{count_classes, trace_faces};
use crate::graph::{random_cubic, CubicGraph};

pub const BLOCK: u64 = 1024;

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.575_829_303_548_901;

/// Generator for block `block` of a run seeded with `seed`.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct PerClass {
    pub bad: f64,
    pub good: f64,
    pub regular: f64,
}

impl PerClass {
    fn from_array([bad, good, regular]: [f64; 3]) -> PerClass {
        PerClass { bad, good, regular }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.bad, self.good, self.regular]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub samples: u64,
    pub seed: u64,
    pub mean: PerClass,
    /// Unbiased sample variance of the per-sample counts.
    pub variance: PerClass,
    /// `Z99 * sqrt(variance / samples)`.
    pub ci99: PerClass,
    pub conjectured: f64,
    /// Samples whose three class counts did not sum to `m`.
    pub partition_failures: u64,
    /// Exact expectations, when supplied by an exhaustive sweep.
    pub exact: Option<PerClass>,
}

impl ExperimentReport {
    pub fn std_error(&self) -> PerClass {
        let s = self.samples as f64;
        PerClass::from_array(self.variance.as_array().map(|v| (v / s).sqrt()))
    }

    /// Mean minus the conjectured `m / 3`, per class.
    pub fn deviation(&self) -> PerClass {
        PerClass::from_array(self.mean.as_array().map(|x| x - self.conjectured))
    }

    pub const CSV_HEADER: &'static str = "graph,n,m,samples,seed,mean_bad,mean_good,mean_regular,var_bad,var_good,var_regular,ci99_bad,ci99_good,ci99_regular,conjectured";

    pub fn csv_row(&self) -> String {
        let [mb, mg, mr] = self.mean.as_array();
        let [vb, vg, vr] = self.variance.as_array();
        let [cb, cg, cr] = self.ci99.as_array();
        format!(
            "{},{},{},{},{},{mb},{mg},{mr},{vb},{vg},{vr},{cb},{cg},{cr},{}",
            self.graph, self.n, self.m, self.samples, self.seed, self.conjectured
        )
    }
}

#[derive(Clone, Copy, Default)]
struct Block {
    sums: [u64; 3],
    squares: [u64; 3],
    partition_failures: u64,
}

fn sample_block(g: &CubicGraph, seed: u64, block: u64, count: u64) -> Block {
    let mut rng = block_rng(seed, block);
    let mut b = Block::default();
    for _ in 0..count {
        let c = count_classes(&trace_faces(g, &random_embedding(g, &mut rng)));
        if c.total() != g.m() {
            b.partition_failures += 1;
        }
        for (k, x) in [c.bad, c.good, c.regular].into_iter().enumerate() {
            b.sums[k] += x as u64;
            b.squares[k] += (x * x) as u64;
        }
    }
    b
}

/// Draws `samples` independent uniform embeddings of `g` and summarizes
/// the bad/good/regular counts.
pub fn monte_carlo_classes(
    g: &CubicGraph,
    graph_id: &str,
    samples: u64,
    seed: u64,
    workers: usize,
) -> ExperimentReport {
    assert!(samples >= 1, "at least one sample");
    let blocks: Vec<(u64, u64)> = (0..samples.div_ceil(BLOCK)).map(|b| (b, BLOCK.min(samples - b * BLOCK))).collect();
    let results: Vec<Block> = if workers <= 1 {
        blocks.iter().map(|&(b, c)| sample_block(g, seed, b, c)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
        pool.install(|| blocks.par_iter().map(|&(b, c)| sample_block(g, seed, b, c)).collect())
    };
    let mut total = Block::default();
    for r in results {
        for k in 0..3 {
            total.sums[k] += r.sums[k];
            total.squares[k] += r.squares[k];
        }
        total.partition_failures += r.partition_failures;
    }
    let s = samples as f64;
    let mean = total.sums.map(|x| x as f64 / s);
    let variance: [f64; 3] = std::array::from_fn(|k| {
        if samples < 2 {
            0.0
        } else {
            let (sum, sq) = (total.sums[k] as f64, total.squares[k] as f64);
            ((sq - sum * sum / s) / (s - 1.0)).max(0.0)
        }
    });
    let ci = variance.map(|v| Z99 * (v / s).sqrt());
    ExperimentReport {
        graph: graph_id.to_string(),
        n: g.n(),
        m: g.m(),
        samples,
        seed,
        mean: PerClass::from_array(mean),
        variance: PerClass::from_array(variance),
        ci99: PerClass::from_array(ci),
        conjectured: g.m() as f64 / 3.0,
        partition_failures: total.partition_failures,
        exact: None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub samples: u64,
    pub seed: u64,
    /// Class means divided by `m`.
    pub normalized: PerClass,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "graph,n,m,samples,seed,norm_bad,norm_good,norm_regular,conjectured";

    pub fn csv_row(&self) -> String {
        let [b, g, r] = self.normalized.as_array();
        format!("random,{},{},{},{},{b},{g},{r},{}", self.n, self.m, self.samples, self.seed, 1.0 / 3.0)
    }
}

/// For each `n`, draws `samples` fresh random cubic graphs with one random
/// embedding each, on stream `n` of the root seed.
pub fn sweep_families(n_list: &[usize], samples: u64, seed: u64) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let mut rng = block_rng(seed, n as u64);
        let mut sums = [0u64; 3];
        let mut m = 0;
        for _ in 0..samples {
            let g = random_cubic(n, &mut rng)?;
            m = g.m();
            let c = count_classes(&trace_faces(&g, &random_embedding(&g, &mut rng)));
            sums[0] += c.bad as u64;
            sums[1] += c.good as u64;
            sums[2] += c.regular as u64;
        }
        let denom = (samples as f64) * m.max(1) as f64;
        rows.push(SweepRow { n, m, samples, seed, normalized: PerClass::from_array(sums.map(|x| x as f64 / denom)) });
    }
    Ok(rows)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(SweepRow::CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{}", r.csv_row());
    }
    s
}
