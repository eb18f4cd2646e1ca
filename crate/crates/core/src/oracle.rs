//! Exhaustive sweeps over embedding space for small graphs.
//!
//! A configuration index packs `n` rotation bits (bit `v` selects the
//! descending rotation at vertex `v`) followed by `m` signature bits (bit
//! `n + e` makes edge `e` negative), little-endian. Sweeps are sharded into
//! fixed index ranges and merged in range order, so results do not depend on
//! the worker count.

use std::collections::HashSet;
use std::io::Write;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::diagram::{build_diagram, crossing_pairs};
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::faces::{count_classes, is_circular, trace_faces, FaceSet};
use crate::graph::{CubicGraph, Dart};
use crate::properties::{Claim, Violation};

/// Default cap on `n + m` for full sweeps (2^25 configurations).
pub const DEFAULT_ENUM_CAP_BITS: usize = 25;

const SHARD: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// Every rotation and every signature.
    Full,
    /// Every signature over the all-ascending rotation.
    SignaturesOnly,
}

impl Space {
    pub fn bits(self, g: &CubicGraph) -> usize {
        match self {
            Space::Full => g.n() + g.m(),
            Space::SignaturesOnly => g.m(),
        }
    }

    pub fn size(self, g: &CubicGraph) -> u64 {
        1u64 << self.bits(g)
    }

    /// Embedding for a configuration index within this space. For
    /// `SignaturesOnly` the index holds signature bits only.
    pub fn embedding(self, g: &CubicGraph, index: u64) -> Embedding {
        let n = g.n();
        match self {
            Space::Full => Embedding::from_bits(g, |v| index >> v & 1 == 1, |e| index >> (n + e) & 1 == 1),
            Space::SignaturesOnly => Embedding::from_bits(g, |_| false, |e| index >> e & 1 == 1),
        }
    }

    /// Position of a `SignaturesOnly` index in the full encoding.
    pub fn full_index(self, g: &CubicGraph, index: u64) -> u64 {
        match self {
            Space::Full => index,
            Space::SignaturesOnly => index << g.n(),
        }
    }
}

fn check_cap(g: &CubicGraph, space: Space, cap_bits: usize) -> Result<()> {
    let bits = space.bits(g);
    if bits > cap_bits || bits >= 63 {
        return Err(Error::CapExceeded { bits, cap: cap_bits });
    }
    Ok(())
}

/// Visits every configuration of `space` in index order.
pub fn enumerate_embeddings(
    g: &CubicGraph,
    space: Space,
    cap_bits: usize,
) -> Result<impl Iterator<Item = (u64, Embedding, FaceSet)> + '_> {
    check_cap(g, space, cap_bits)?;
    Ok((0..space.size(g)).map(move |i| {
        let emb = space.embedding(g, i);
        let fs = trace_faces(g, &emb);
        (i, emb, fs)
    }))
}

fn exact<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

fn exact_signed<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactExpectations {
    #[serde(serialize_with = "exact")]
    pub bad: Ratio<u64>,
    #[serde(serialize_with = "exact")]
    pub good: Ratio<u64>,
    #[serde(serialize_with = "exact")]
    pub regular: Ratio<u64>,
    /// `m / 3`.
    #[serde(serialize_with = "exact")]
    pub conjectured: Ratio<u64>,
    /// Each expectation minus `m / 3`, in (bad, good, regular) order.
    #[serde(serialize_with = "serialize_deviation")]
    pub deviation: [Ratio<i64>; 3],
}

fn serialize_deviation<S: Serializer>(d: &[Ratio<i64>; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    struct Wrap<'a>(&'a Ratio<i64>);
    impl Serialize for Wrap<'_> {
        fn serialize<S2: Serializer>(&self, s: S2) -> std::result::Result<S2::Ok, S2::Error> {
            exact_signed(self.0, s)
        }
    }
    let mut st = s.serialize_struct("Deviation", 3)?;
    st.serialize_field("bad", &Wrap(&d[0]))?;
    st.serialize_field("good", &Wrap(&d[1]))?;
    st.serialize_field("regular", &Wrap(&d[2]))?;
    st.end()
}

impl ExactExpectations {
    fn from_sums(sums: [u64; 3], total: u64, m: usize) -> ExactExpectations {
        let conjectured = Ratio::new(m as u64, 3);
        let dev = |r: Ratio<u64>| Ratio::new(*r.numer() as i64, *r.denom() as i64) - Ratio::new(m as i64, 3);
        let [bad, good, regular] = sums.map(|s| Ratio::new(s, total));
        ExactExpectations { bad, good, regular, conjectured, deviation: [dev(bad), dev(good), dev(regular)] }
    }

    pub fn sum(&self) -> Ratio<u64> {
        self.bad + self.good + self.regular
    }

    pub fn as_f64(&self) -> [f64; 3] {
        [self.bad, self.good, self.regular].map(|r| *r.numer() as f64 / *r.denom() as f64)
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    total: u64,
    sums: [u64; 3],
    min_singular: usize,
    witness_faces: usize,
    witness: u64,
    circular: u64,
}

impl Tally {
    fn empty() -> Tally {
        Tally { min_singular: usize::MAX, witness: u64::MAX, ..Tally::default() }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        for k in 0..3 {
            self.sums[k] += other.sums[k];
        }
        self.circular += other.circular;
        if other.key() < self.key() {
            self.min_singular = other.min_singular;
            self.witness_faces = other.witness_faces;
            self.witness = other.witness;
        }
        self
    }

    /// Witness preference: fewest singular edges, then most faces, then
    /// smallest index.
    fn key(&self) -> (usize, std::cmp::Reverse<usize>, u64) {
        (self.min_singular, std::cmp::Reverse(self.witness_faces), self.witness)
    }

    fn offer(&mut self, singular: usize, faces: usize, index: u64) {
        if (singular, std::cmp::Reverse(faces), index) < self.key() {
            self.min_singular = singular;
            self.witness_faces = faces;
            self.witness = index;
        }
    }
}

fn run_sharded<T: Send, F>(size: u64, workers: usize, f: F) -> Vec<T>
where
    F: Fn(u64, u64) -> T + Sync + Send,
{
    let shards: Vec<(u64, u64)> = (0..size.div_ceil(SHARD)).map(|s| (s * SHARD, ((s + 1) * SHARD).min(size))).collect();
    if workers <= 1 {
        return shards.into_iter().map(|(a, b)| f(a, b)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| shards.into_par_iter().map(|(a, b)| f(a, b)).collect())
}

fn tally(g: &CubicGraph, space: Space, workers: usize) -> Tally {
    run_sharded(space.size(g), workers, |lo, hi| {
        let mut t = Tally::empty();
        for i in lo..hi {
            let fs = trace_faces(g, &space.embedding(g, i));
            let c = count_classes(&fs);
            t.total += 1;
            t.sums[0] += c.bad as u64;
            t.sums[1] += c.good as u64;
            t.sums[2] += c.regular as u64;
            if c.singular() == 0 {
                t.circular += 1;
            }
            t.offer(c.singular(), fs.face_count(), i);
        }
        t
    })
    .into_iter()
    .fold(Tally::empty(), Tally::merge)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinSingular {
    pub count: usize,
    /// Index within `space` of the attaining configuration with the most
    /// faces, lowest index first among those.
    pub witness_index: u64,
    pub witness: Embedding,
    pub space: Space,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub space: Space,
    pub configurations: u64,
    pub min_singular: usize,
    pub witness_index: u64,
    pub witness: Embedding,
    pub witness_faces: usize,
    pub witness_euler_characteristic: i64,
    pub circular_embeddings: u64,
    pub expected: ExactExpectations,
}

/// One pass over `space` collecting the minimum singular count with its
/// witness, the circular count and exact class expectations.
pub fn summarize(
    g: &CubicGraph,
    graph_id: &str,
    space: Space,
    cap_bits: usize,
    workers: usize,
) -> Result<EnumerationSummary> {
    check_cap(g, space, cap_bits)?;
    let t = tally(g, space, workers);
    let witness = space.embedding(g, t.witness);
    let fs = trace_faces(g, &witness);
    Ok(EnumerationSummary {
        graph: graph_id.to_string(),
        n: g.n(),
        m: g.m(),
        space,
        configurations: t.total,
        min_singular: t.min_singular,
        witness_index: t.witness,
        witness,
        witness_faces: fs.face_count(),
        witness_euler_characteristic: crate::faces::euler_characteristic(g, &fs),
        circular_embeddings: t.circular,
        expected: ExactExpectations::from_sums(t.sums, t.total, g.m()),
    })
}

/// Exact minimum singular count. Uses the full sweep when it fits under
/// `cap_bits`, otherwise the signature-only sweep over a fixed rotation,
/// which reaches every face set.
pub fn min_singular(g: &CubicGraph, cap_bits: usize) -> Result<MinSingular> {
    let space = if Space::Full.bits(g) <= cap_bits { Space::Full } else { Space::SignaturesOnly };
    check_cap(g, space, cap_bits)?;
    let t = tally(g, space, 1);
    Ok(MinSingular { count: t.min_singular, witness_index: t.witness, witness: space.embedding(g, t.witness), space })
}

/// Exact class expectations under the uniform distribution on all
/// `(rotation, signature)` pairs.
pub fn exact_expected_classes(g: &CubicGraph, cap_bits: usize) -> Result<ExactExpectations> {
    check_cap(g, Space::Full, cap_bits)?;
    let t = tally(g, Space::Full, 1);
    Ok(ExactExpectations::from_sums(t.sums, t.total, g.m()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Property6Report {
    pub min_singular: usize,
    pub minimum_embeddings_checked: u64,
    /// (configuration index, crossing pairs) for each minimum embedding that
    /// has crossing links.
    pub violations: Vec<(u64, Vec<(usize, usize)>)>,
}

impl Property6Report {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn as_violations(&self) -> Vec<Violation> {
        self.violations
            .iter()
            .map(|(i, pairs)| Violation {
                claim: Claim::MinimumHasNoCrossings,
                walk: None,
                positions: Vec::new(),
                vertex: None,
                edge: None,
                detail: format!("minimum configuration {i} has crossing pairs {pairs:?}"),
            })
            .collect()
    }
}

/// Checks that every embedding attaining the minimum singular count over
/// the configurations accepted by `keep` has no crossing links. With
/// `keep = |_| true` this is the unrestricted check.
pub fn verify_property6_restricted(
    g: &CubicGraph,
    space: Space,
    cap_bits: usize,
    keep: impl Fn(u64, &FaceSet) -> bool,
) -> Result<Property6Report> {
    let mut min = usize::MAX;
    let mut minima: Vec<(u64, FaceSet)> = Vec::new();
    for (i, _, fs) in enumerate_embeddings(g, space, cap_bits)? {
        if !keep(i, &fs) {
            continue;
        }
        let s = crate::faces::singular_count(&fs);
        if s < min {
            min = s;
            minima.clear();
        }
        if s == min {
            minima.push((i, fs));
        }
    }
    let mut violations = Vec::new();
    for (i, fs) in &minima {
        let pairs = crossing_pairs(&build_diagram(g, fs));
        if !pairs.is_empty() {
            violations.push((*i, pairs));
        }
    }
    Ok(Property6Report { min_singular: min, minimum_embeddings_checked: minima.len() as u64, violations })
}

pub fn verify_property6(g: &CubicGraph, cap_bits: usize) -> Result<Property6Report> {
    verify_property6_restricted(g, Space::Full, cap_bits, |_, _| true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub signature_configs: u64,
    pub full_configs: u64,
    pub distinct_face_sets_signature: usize,
    pub distinct_face_sets_full: usize,
    pub equal: bool,
}

/// Compares the face sets reachable by signatures alone over a fixed
/// rotation with those of the full sweep.
pub fn verify_signature_coverage(g: &CubicGraph, cap_bits: usize) -> Result<CoverageReport> {
    let collect = |space: Space| -> Result<HashSet<Vec<Vec<Dart>>>> {
        Ok(enumerate_embeddings(g, space, cap_bits)?.map(|(_, _, fs)| fs.face_multiset()).collect())
    };
    let sig = collect(Space::SignaturesOnly)?;
    let full = collect(Space::Full)?;
    Ok(CoverageReport {
        signature_configs: Space::SignaturesOnly.size(g),
        full_configs: Space::Full.size(g),
        distinct_face_sets_signature: sig.len(),
        distinct_face_sets_full: full.len(),
        equal: sig == full,
    })
}

/// Per-configuration CSV: `config,faces,bad,good,regular,crossings`.
pub fn write_config_csv<W: Write>(g: &CubicGraph, space: Space, cap_bits: usize, mut out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Json(format!("csv output: {e}"));
    writeln!(out, "config,faces,bad,good,regular,crossings").map_err(io)?;
    for (i, _, fs) in enumerate_embeddings(g, space, cap_bits)? {
        let c = count_classes(&fs);
        let crossings = crossing_pairs(&build_diagram(g, &fs)).len();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            space.full_index(g, i),
            fs.face_count(),
            c.bad,
            c.good,
            c.regular,
            crossings
        )
        .map_err(io)?;
    }
    Ok(())
}

pub fn is_witness_circular(g: &CubicGraph, emb: &Embedding) -> bool {
    is_circular(&trace_faces(g, emb))
}
