//! Moving through twist space: greedy removal of `-` links, the `+`-link
//! cascade, exhaustive signature search for circular embeddings, and the
//! embedding built from a perfect matching and its complementary 2-factor.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, crossing_pairs, FacialDiagram};
use crate::embedding::{Embedding, Sign};
use crate::error::{Error, Result};
use crate::faces::{count_classes, is_circular, singular_count, trace_faces, ClassCounts};
use crate::graph::{CubicGraph, Dart};
use crate::matching::{perfect_matching, two_factor_cycles, Matching};
use crate::twist::{twist, TwistRecord};

/// Default cap on `m` for [`search_circular_exhaustive`].
pub const DEFAULT_SEARCH_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSequence {
    pub steps: Vec<TwistRecord>,
    pub initial: Embedding,
    #[serde(rename = "final")]
    pub final_embedding: Embedding,
    pub initial_counts: ClassCounts,
    pub final_counts: ClassCounts,
}

impl TwistSequence {
    fn start(g: &CubicGraph, emb: &Embedding) -> TwistSequence {
        let counts = count_classes(&trace_faces(g, emb));
        TwistSequence {
            steps: Vec::new(),
            initial: emb.clone(),
            final_embedding: emb.clone(),
            initial_counts: counts,
            final_counts: counts,
        }
    }

    fn push(&mut self, record: TwistRecord, emb: Embedding) {
        self.final_counts = record.after;
        self.final_embedding = emb;
        self.steps.push(record);
    }

    /// Re-applies every step to the initial embedding.
    pub fn replay(&self) -> Result<Embedding> {
        self.steps.iter().try_fold(self.initial.clone(), |emb, s| twist(&emb, s.edge))
    }
}

fn smallest_minus_link(fd: &FacialDiagram) -> Option<usize> {
    (0..fd.edge_count()).find(|&e| fd.sign_of_edge(e) == Some(Sign::Minus))
}

/// Twists `-` links, smallest edge id first, until none remain, at most
/// `budget` times. Returns whether the loop ran to completion.
fn greedy_steps(g: &CubicGraph, emb: &mut Embedding, seq: &mut TwistSequence, budget: &mut usize) -> bool {
    loop {
        let fs = trace_faces(g, emb);
        let fd = build_diagram(g, &fs);
        let Some(e) = smallest_minus_link(&fd) else {
            return true;
        };
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let (plus_before, minus_before) = fd.sign_counts();
        let next = twist(emb, e).expect("edge id from diagram");
        let after = trace_faces(g, &next);
        let (plus_after, minus_after) = build_diagram(g, &after).sign_counts();
        assert!(
            plus_after + minus_after < plus_before + minus_before,
            "twisting - link e{e} did not reduce the singular count"
        );
        assert!(plus_after <= plus_before, "twisting - link e{e} increased the + count");
        let record = TwistRecord {
            edge: e,
            before: count_classes(&fs),
            after: count_classes(&after),
            faces_before: fs.face_count(),
            faces_after: after.face_count(),
        };
        *emb = next;
        seq.push(record, emb.clone());
    }
}

/// Repeatedly twists the `-` link with the smallest edge id until the
/// diagram has no `-` links. Each step strictly lowers the singular count and
/// never raises the `+` count; both are asserted.
pub fn greedy_reduce(g: &CubicGraph, emb: &Embedding) -> (Embedding, TwistSequence) {
    let mut seq = TwistSequence::start(g, emb);
    let mut cur = emb.clone();
    let mut unlimited = usize::MAX;
    greedy_steps(g, &mut cur, &mut seq, &mut unlimited);
    (cur, seq)
}

/// Greedy reduction interleaved with `+` twists: once no `-` link is left,
/// a random `+` link with a crossing partner is twisted, which turns its
/// partners into `-` links for the next greedy round. Stops when the
/// embedding is circular, when no `+` link crosses anything, or after
/// `budget` twists in total. The singular count never increases along the
/// way, so the final embedding is also the best one seen.
pub fn plus_cascade<R: Rng + ?Sized>(
    g: &CubicGraph,
    emb: &Embedding,
    budget: usize,
    rng: &mut R,
) -> (Embedding, TwistSequence) {
    let mut seq = TwistSequence::start(g, emb);
    let mut cur = emb.clone();
    let mut left = budget;
    loop {
        if !greedy_steps(g, &mut cur, &mut seq, &mut left) {
            break;
        }
        let fs = trace_faces(g, &cur);
        if singular_count(&fs) == 0 || left == 0 {
            break;
        }
        let fd = build_diagram(g, &fs);
        let mut candidates: Vec<usize> = crossing_pairs(&fd)
            .into_iter()
            .flat_map(|(a, b)| [a, b])
            .filter(|&e| fd.sign_of_edge(e) == Some(Sign::Plus))
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        let Some(&e) = candidates.choose(rng) else {
            break;
        };
        left -= 1;
        let next = twist(&cur, e).expect("edge id from diagram");
        let after = trace_faces(g, &next);
        let record = TwistRecord {
            edge: e,
            before: count_classes(&fs),
            after: count_classes(&after),
            faces_before: fs.face_count(),
            faces_after: after.face_count(),
        };
        cur = next;
        seq.push(record, cur.clone());
    }
    (cur, seq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    CircularFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Embedding>,
    pub states_visited: u64,
    pub best_singular: usize,
}

/// Sweeps all `2^m` signatures over a fixed rotation in Gray-code order,
/// starting from the all-positive signature, and stops at the first circular
/// embedding. Bit `e` of the Gray code set means edge `e` is negative.
pub fn search_circular_exhaustive(g: &CubicGraph, rotation: &[[Dart; 3]], cap: usize) -> Result<SearchOutcome> {
    if g.m() > cap || g.m() >= 64 {
        return Err(Error::CapExceeded { bits: g.m(), cap });
    }
    let mut emb = Embedding::new(g, rotation.to_vec(), vec![Sign::Plus; g.m()])?;
    let total: u64 = 1 << g.m();
    let mut best = usize::MAX;
    for i in 0..total {
        if i > 0 {
            let e = i.trailing_zeros() as usize;
            emb.signature[e] = -emb.signature[e];
        }
        let fs = trace_faces(g, &emb);
        if is_circular(&fs) {
            return Ok(SearchOutcome {
                status: SearchStatus::CircularFound,
                witness: Some(emb),
                states_visited: i + 1,
                best_singular: 0,
            });
        }
        best = best.min(singular_count(&fs));
    }
    Ok(SearchOutcome {
        status: SearchStatus::BudgetExhausted,
        witness: None,
        states_visited: total,
        best_singular: best,
    })
}

fn dart_from(g: &CubicGraph, e: usize, tail: usize) -> Dart {
    let d = Dart::new(e, 0);
    if g.tail(d) == tail {
        d
    } else {
        d.reverse()
    }
}

/// All-positive embedding in which every cycle of the 2-factor complementary
/// to a perfect matching is a face. At each vertex the rotation sends the
/// incoming factor edge to the outgoing one, so only matching edges can be
/// singular.
pub fn matching_bound_embedding(g: &CubicGraph) -> Result<(Embedding, Matching)> {
    let matching = perfect_matching(g)?;
    let cycles = two_factor_cycles(g, &matching)?;
    let mut rotation = vec![[Dart(0); 3]; g.n()];
    for c in &cycles {
        let k = c.vertices.len();
        for i in 0..k {
            let prev = c.vertices[i];
            let v = c.vertices[(i + 1) % k];
            let f_in = dart_from(g, c.edges[i], prev);
            let f_out = dart_from(g, c.edges[(i + 1) % k], v);
            let m_edge = g.incident(v).into_iter().find(|&e| matching.contains(e)).expect("perfect matching covers v");
            rotation[v] = [f_in.reverse(), f_out, dart_from(g, m_edge, v)];
        }
    }
    let emb = Embedding::new(g, rotation, vec![Sign::Plus; g.m()])?;
    Ok((emb, matching))
}
