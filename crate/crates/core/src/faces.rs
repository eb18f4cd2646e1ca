//! Face tracing for signed rotation systems, and the per-edge quantities
//! derived from the traced faces.
//!
//! A trace state is a dart together with the local orientation (`sense`)
//! carried while walking it. From `(d, s)` along edge `e` into vertex `v`,
//! the next sense is `s * λ(e)` and the next dart is the rotation successor
//! of `reverse(d)` at `v` when that sense is positive, its predecessor
//! otherwise. The `4m` states split into orbits that come in mirror pairs,
//! each pair describing one face read in both directions; one orbit per pair
//! is kept.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::embedding::{Embedding, Sign};
use crate::graph::{CubicGraph, Dart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceState {
    pub dart: Dart,
    pub sense: Sign,
}

impl TraceState {
    /// Dense id in `0..4m`.
    pub fn id(self) -> usize {
        2 * self.dart.0 + usize::from(self.sense == Sign::Minus)
    }

    pub fn from_id(id: usize) -> TraceState {
        TraceState { dart: Dart(id >> 1), sense: if id & 1 == 0 { Sign::Plus } else { Sign::Minus } }
    }

    pub fn next(self, emb: &Embedding, succ: &[Dart], pred: &[Dart]) -> TraceState {
        let sense = self.sense * emb.sign(self.dart.edge());
        let back = self.dart.reverse();
        let dart = if sense.is_plus() { succ[back.0] } else { pred[back.0] };
        TraceState { dart, sense }
    }

    /// The state that walks the same face backwards through this edge.
    pub fn mirror(self, emb: &Embedding) -> TraceState {
        TraceState { dart: self.dart.reverse(), sense: -(self.sense * emb.sign(self.dart.edge())) }
    }
}

/// One face boundary, as a cyclic sequence of trace states starting at the
/// smallest state id of its orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialWalk {
    pub states: Vec<TraceState>,
}

impl FacialWalk {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.states.iter().map(|s| s.dart)
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.states.iter().map(|s| s.dart.edge())
    }

    /// `(v0, e1, v1, e2, ..)`: the tail of each traversal followed by its edge.
    pub fn vertex_edge_sequence(&self, g: &CubicGraph) -> Vec<(usize, usize)> {
        self.states.iter().map(|s| (g.tail(s.dart), s.dart.edge())).collect()
    }
}

/// One of the two traversals of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrence {
    pub walk: usize,
    pub pos: usize,
    pub dart: Dart,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub walks: Vec<FacialWalk>,
    /// Per edge id, its two traversals ordered by (walk, pos).
    pub edge_index: Vec<[Occurrence; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    Regular,
    GoodSingular,
    BadSingular,
}

impl EdgeClass {
    pub fn is_singular(self) -> bool {
        self != EdgeClass::Regular
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassCounts {
    pub bad: usize,
    pub good: usize,
    pub regular: usize,
}

impl ClassCounts {
    pub fn singular(&self) -> usize {
        self.bad + self.good
    }

    pub fn total(&self) -> usize {
        self.bad + self.good + self.regular
    }
}

/// Traces all faces. Panics if the traced orbits violate the double-cover
/// invariants, which would indicate a bug rather than bad input.
pub fn trace_faces(g: &CubicGraph, emb: &Embedding) -> FaceSet {
    assert_eq!(emb.n(), g.n(), "embedding/graph vertex count mismatch");
    assert_eq!(emb.m(), g.m(), "embedding/graph edge count mismatch");
    let (succ, pred) = emb.successor_tables();
    let states = 4 * g.m();
    let mut orbit_of = vec![usize::MAX; states];
    let mut orbits: Vec<Vec<TraceState>> = Vec::new();
    for start in 0..states {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        let mut s = TraceState::from_id(start);
        loop {
            orbit_of[s.id()] = id;
            orbit.push(s);
            s = s.next(emb, &succ, &pred);
            if s.id() == start {
                break;
            }
            assert_eq!(orbit_of[s.id()], usize::MAX, "successor map is not a permutation");
        }
        orbits.push(orbit);
    }

    let mut paired = vec![false; orbits.len()];
    let mut walks = Vec::with_capacity(orbits.len() / 2);
    for (id, orbit) in orbits.iter().enumerate() {
        if paired[id] {
            continue;
        }
        let mirror = orbit_of[orbit[0].mirror(emb).id()];
        assert_ne!(mirror, id, "orbit {id} is its own mirror");
        assert!(!paired[mirror], "orbit {mirror} paired twice");
        assert!(
            is_reversed_cyclic(orbit, &orbits[mirror]),
            "orbit {id} and its mirror {mirror} do not traverse the same edges in reverse"
        );
        paired[id] = true;
        paired[mirror] = true;
        walks.push(FacialWalk { states: orbit.clone() });
    }

    let edge_index = build_edge_index(g.m(), &walks).expect("every edge is traversed exactly twice");
    FaceSet { walks, edge_index }
}

fn is_reversed_cyclic(a: &[TraceState], b: &[TraceState]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let rev: Vec<Dart> = a.iter().rev().map(|s| s.dart.reverse()).collect();
    (0..b.len()).any(|offset| (0..rev.len()).all(|i| b[(offset + i) % b.len()].dart == rev[i]))
}

fn build_edge_index(m: usize, walks: &[FacialWalk]) -> Result<Vec<[Occurrence; 2]>, String> {
    let mut index: Vec<Vec<Occurrence>> = vec![Vec::with_capacity(2); m];
    for (w, walk) in walks.iter().enumerate() {
        for (pos, s) in walk.states.iter().enumerate() {
            let e = s.dart.edge();
            if e >= m {
                return Err(format!("edge {e} out of range"));
            }
            index[e].push(Occurrence { walk: w, pos, dart: s.dart });
        }
    }
    index
        .into_iter()
        .enumerate()
        .map(
            |(e, occ)| {
                if occ.len() == 2 {
                    Ok([occ[0], occ[1]])
                } else {
                    Err(format!("edge {e} traversed {} times", occ.len()))
                }
            },
        )
        .collect()
}

impl FaceSet {
    /// Builds a face set from raw dart walks without an embedding. Senses
    /// are set to `+`. Consecutive darts must chain head-to-tail (cyclically)
    /// and every edge must be traversed exactly twice. Intended for synthetic
    /// inputs to the diagram and property checkers.
    pub fn from_dart_walks(g: &CubicGraph, walks: Vec<Vec<Dart>>) -> crate::error::Result<FaceSet> {
        use crate::error::Error;
        let mut out = Vec::with_capacity(walks.len());
        for (w, darts) in walks.into_iter().enumerate() {
            if darts.is_empty() {
                return Err(Error::InvalidWalks(format!("walk {w} is empty")));
            }
            for (i, &d) in darts.iter().enumerate() {
                if d.0 >= g.dart_count() {
                    return Err(Error::InvalidWalks(format!("walk {w}: dart {} out of range", d.0)));
                }
                let next = darts[(i + 1) % darts.len()];
                if next.0 < g.dart_count() && g.head(d) != g.tail(next) {
                    return Err(Error::InvalidWalks(format!(
                        "walk {w}: dart {} ends at {} but dart {} starts at {}",
                        d.0,
                        g.head(d),
                        next.0,
                        g.tail(next)
                    )));
                }
            }
            out.push(FacialWalk {
                states: darts.into_iter().map(|dart| TraceState { dart, sense: Sign::Plus }).collect(),
            });
        }
        let edge_index = build_edge_index(g.m(), &out).map_err(Error::InvalidWalks)?;
        Ok(FaceSet { walks: out, edge_index })
    }

    pub fn face_count(&self) -> usize {
        self.walks.len()
    }

    pub fn total_length(&self) -> usize {
        self.walks.iter().map(|w| w.len()).sum()
    }

    /// Faces as dart sequences, each reduced to the least of its cyclic
    /// rotations in either reading direction, sorted. Two embeddings have the
    /// same set of facial walks iff these are equal.
    pub fn face_multiset(&self) -> Vec<Vec<Dart>> {
        let mut faces: Vec<Vec<Dart>> = self
            .walks
            .iter()
            .map(|w| {
                let fwd: Vec<Dart> = w.darts().collect();
                let bwd: Vec<Dart> = fwd.iter().rev().map(|d| d.reverse()).collect();
                least_rotation(&fwd).min(least_rotation(&bwd))
            })
            .collect();
        faces.sort();
        faces
    }

    /// Walk ids containing edge `e`.
    pub fn walks_of_edge(&self, e: usize) -> (usize, usize) {
        let [a, b] = self.edge_index[e];
        (a.walk, b.walk)
    }

    pub fn to_json(&self, g: &CubicGraph) -> String {
        #[derive(Serialize)]
        struct Step {
            edge: usize,
            from: usize,
            to: usize,
        }
        let walks: Vec<Vec<Step>> = self
            .walks
            .iter()
            .map(|w| w.darts().map(|d| Step { edge: d.edge(), from: g.tail(d), to: g.head(d) }).collect())
            .collect();
        serde_json::to_string(&walks).expect("faces serialize")
    }
}

fn least_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    (0..seq.len()).map(|k| seq[k..].iter().chain(&seq[..k]).cloned().collect::<Vec<T>>()).min().unwrap_or_default()
}

pub fn euler_characteristic(g: &CubicGraph, fs: &FaceSet) -> i64 {
    g.n() as i64 - g.m() as i64 + fs.face_count() as i64
}

/// True iff every cycle has positive signature product: vertex signs are
/// propagated along a spanning forest and every edge is checked against them.
pub fn is_orientable(g: &CubicGraph, emb: &Embedding) -> bool {
    let mut side: Vec<Option<Sign>> = vec![None; g.n()];
    for root in 0..g.n() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(Sign::Plus);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].unwrap();
            for e in g.incident(v) {
                let (a, b) = g.endpoints(e);
                let w = if a == v { b } else { a };
                let want = sv * emb.sign(e);
                match side[w] {
                    None => {
                        side[w] = Some(want);
                        queue.push_back(w);
                    }
                    Some(sw) if sw != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

pub fn classify_edge(fs: &FaceSet, e: usize) -> EdgeClass {
    let [a, b] = fs.edge_index[e];
    if a.walk != b.walk {
        EdgeClass::Regular
    } else if a.dart == b.dart {
        EdgeClass::GoodSingular
    } else {
        EdgeClass::BadSingular
    }
}

pub fn classify_edges(fs: &FaceSet) -> Vec<EdgeClass> {
    (0..fs.edge_index.len()).map(|e| classify_edge(fs, e)).collect()
}

pub fn count_classes(fs: &FaceSet) -> ClassCounts {
    let mut c = ClassCounts::default();
    for class in classify_edges(fs) {
        match class {
            EdgeClass::Regular => c.regular += 1,
            EdgeClass::GoodSingular => c.good += 1,
            EdgeClass::BadSingular => c.bad += 1,
        }
    }
    c
}

pub fn singular_count(fs: &FaceSet) -> usize {
    (0..fs.edge_index.len()).filter(|&e| classify_edge(fs, e).is_singular()).count()
}

/// No edge is traversed twice by one face.
pub fn is_circular(fs: &FaceSet) -> bool {
    fs.edge_index.iter().all(|[a, b]| a.walk != b.walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    pub(crate) fn planar_k4() -> (CubicGraph, Embedding) {
        let g = named_graph("k4").unwrap();
        let e = Embedding::from_neighbor_rotation(&g, &[[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]).unwrap();
        (g, e)
    }

    #[test]
    fn planar_k4_has_four_triangles() {
        let (g, e) = planar_k4();
        let fs = trace_faces(&g, &e);
        assert_eq!(fs.face_count(), 4);
        assert!(fs.walks.iter().all(|w| w.len() == 3));
        assert_eq!(euler_characteristic(&g, &fs), 2);
        assert!(is_circular(&fs));
        assert_eq!(count_classes(&fs), ClassCounts { bad: 0, good: 0, regular: 6 });
    }

    #[test]
    fn walks_start_at_least_state() {
        let g = named_graph("petersen").unwrap();
        let e = Embedding::from_bits(&g, |v| v % 3 == 0, |e| e % 4 == 1);
        let fs = trace_faces(&g, &e);
        for w in &fs.walks {
            let min = w.states.iter().map(|s| s.id()).min().unwrap();
            assert_eq!(w.states[0].id(), min);
        }
        assert_eq!(fs.total_length(), 30);
    }

    #[test]
    fn theta_faces() {
        let g = named_graph("theta").unwrap();
        for bits in 0..32u32 {
            let e = Embedding::from_bits(&g, |v| bits >> v & 1 == 1, |x| bits >> (2 + x) & 1 == 1);
            let fs = trace_faces(&g, &e);
            let chi = euler_characteristic(&g, &fs);
            assert!((0..=2).contains(&chi), "chi {chi}");
            assert_eq!(fs.total_length(), 6);
        }
    }

    #[test]
    fn orientability() {
        let (g, e) = planar_k4();
        assert!(is_orientable(&g, &e));
        let mut f = e.clone();
        for x in g.incident(2) {
            f.signature[x] = -f.signature[x];
        }
        assert!(is_orientable(&g, &f));
        let mut h = e.clone();
        h.signature[4] = Sign::Minus;
        assert!(!is_orientable(&g, &h));
    }

    #[test]
    fn synthetic_walks_are_validated() {
        let g = named_graph("theta").unwrap();
        let ok =
            FaceSet::from_dart_walks(&g, vec![vec![Dart(0), Dart(3)], vec![Dart(2), Dart(5)], vec![Dart(4), Dart(1)]]);
        assert!(ok.is_ok());
        let bad = FaceSet::from_dart_walks(&g, vec![vec![Dart(0), Dart(2)]]);
        assert!(bad.is_err());
    }
}
