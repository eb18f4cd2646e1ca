//! Falsifiable checkers for the structural claims about faces, facial
//! diagrams and twists. Every checker returns the list of violations it
//! found, each with enough positional context to reproduce it; an empty list
//! means the claim held on that input.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, crossing_partners, saturated_vertices, FacialDiagram};
use crate::embedding::{Embedding, Sign};
use crate::error::{Error, Result};
use crate::faces::{classify_edge, singular_count, trace_faces, EdgeClass, FaceSet};
use crate::graph::{CubicGraph, Dart};
use crate::twist::twist;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Numbered structural property of facial diagrams (1..=9).
    Property(u8),
    /// Twisting a regular edge merges its two faces into one.
    RegularTwistMerges,
    /// Twisting a `-` link makes it and every crossing partner regular.
    MinusTwistResolves,
    /// Twisting a `+` link flips every crossing partner and keeps its own sign.
    PlusTwistFlips,
    /// Minimum-singular embeddings have no crossing links.
    MinimumHasNoCrossings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub claim: Claim,
    pub walk: Option<usize>,
    pub positions: Vec<usize>,
    pub vertex: Option<usize>,
    pub edge: Option<usize>,
    pub detail: String,
}

impl Violation {
    fn at_walk(claim: Claim, walk: usize, positions: Vec<usize>, detail: String) -> Violation {
        Violation { claim, walk: Some(walk), positions, vertex: None, edge: None, detail }
    }

    fn at_edge(claim: Claim, edge: usize, detail: String) -> Violation {
        Violation { claim, walk: None, positions: Vec::new(), vertex: None, edge: Some(edge), detail }
    }
}

fn walk_darts(fd: &FacialDiagram, w: usize) -> Vec<Dart> {
    fd.walks[w].iter().map(|&id| fd.nodes[id].dart).collect()
}

/// First position of every consecutive dart pair `(d[i], d[i+1])` of a walk.
fn pair_positions(darts: &[Dart]) -> HashMap<(Dart, Dart), Vec<usize>> {
    let mut map: HashMap<(Dart, Dart), Vec<usize>> = HashMap::new();
    for i in 0..darts.len() {
        map.entry((darts[i], darts[(i + 1) % darts.len()])).or_default().push(i);
    }
    map
}

/// Checks structural property `k` in `1..=5` on a diagram of `g`.
///
/// 1. no walk contains the directed pattern `a e1 b e2 c` twice;
/// 2. no walk contains `a e1 b e2 c` and also `c e2 b e1 a`;
/// 3. when `e1`, `e2` are consecutive `-` links meeting at `b`, with `e3` the
///    third edge at `b`, the walk also contains `a e1 b e3 d` and `d e3 b e2 c`;
/// 4. when they are consecutive `+` links, it also contains `c e2 b e3 d` and
///    `d e3 b e1 a`;
/// 5. every saturated vertex has one or three incident `+` links.
///
/// For 3 and 4 the three segments are only required to be present: the two
/// admissible orders are the two cyclic orders of three segments.
pub fn check_structural_property(fd: &FacialDiagram, g: &CubicGraph, k: u8) -> Result<Vec<Violation>> {
    let claim = Claim::Property(k);
    let mut out = Vec::new();
    match k {
        1 => {
            for w in 0..fd.walks.len() {
                let darts = walk_darts(fd, w);
                let mut repeats: Vec<_> = pair_positions(&darts).into_iter().filter(|(_, p)| p.len() > 1).collect();
                repeats.sort_by_key(|(_, p)| p[0]);
                for ((d1, d2), positions) in repeats {
                    out.push(Violation::at_walk(
                        claim,
                        w,
                        positions,
                        format!("pattern (e{}, e{}) via vertex {} repeats", d1.edge(), d2.edge(), g.head(d1)),
                    ));
                }
            }
        }
        2 => {
            for w in 0..fd.walks.len() {
                let darts = walk_darts(fd, w);
                let pairs = pair_positions(&darts);
                for i in 0..darts.len() {
                    let (d1, d2) = (darts[i], darts[(i + 1) % darts.len()]);
                    if let Some(js) = pairs.get(&(d2.reverse(), d1.reverse())) {
                        for &j in js.iter().filter(|&&j| j > i) {
                            out.push(Violation::at_walk(
                                claim,
                                w,
                                vec![i, j],
                                format!("pattern (e{}, e{}) occurs with its reversal", d1.edge(), d2.edge()),
                            ));
                        }
                    }
                }
            }
        }
        3 | 4 => {
            let wanted = if k == 3 { Sign::Minus } else { Sign::Plus };
            for w in 0..fd.walks.len() {
                let darts = walk_darts(fd, w);
                let pairs = pair_positions(&darts);
                for i in 0..darts.len() {
                    let (d1, d2) = (darts[i], darts[(i + 1) % darts.len()]);
                    let (e1, e2) = (d1.edge(), d2.edge());
                    if e1 == e2 || fd.sign_of_edge(e1) != Some(wanted) || fd.sign_of_edge(e2) != Some(wanted) {
                        continue;
                    }
                    let b = g.head(d1);
                    let d3 = g
                        .darts_at(b)
                        .into_iter()
                        .find(|&d| d != d1.reverse() && d != d2)
                        .expect("cubic vertex has a third dart");
                    let segments = if k == 3 {
                        [(d1, d3), (d3.reverse(), d2)]
                    } else {
                        [(d2.reverse(), d3), (d3.reverse(), d1.reverse())]
                    };
                    let mut positions = vec![i];
                    let mut missing = Vec::new();
                    for (x, y) in segments {
                        match pairs.get(&(x, y)) {
                            Some(p) => positions.push(p[0]),
                            None => missing.push(format!("(e{} -> e{})", x.edge(), y.edge())),
                        }
                    }
                    if !missing.is_empty() {
                        out.push(Violation {
                            claim,
                            walk: Some(w),
                            positions,
                            vertex: Some(b),
                            edge: Some(d3.edge()),
                            detail: format!(
                                "consecutive {wanted} links e{e1}, e{e2} at vertex {b}: missing segment(s) {}",
                                missing.join(", ")
                            ),
                        });
                    }
                }
            }
        }
        5 => {
            for v in saturated_vertices(fd, g) {
                let plus = g.incident(v).iter().filter(|&&e| fd.sign_of_edge(e) == Some(Sign::Plus)).count();
                if plus != 1 && plus != 3 {
                    out.push(Violation {
                        claim,
                        walk: None,
                        positions: Vec::new(),
                        vertex: Some(v),
                        edge: None,
                        detail: format!("saturated vertex {v} has {plus} incident + links"),
                    });
                }
            }
        }
        other => return Err(Error::PropertyOutOfRange(other)),
    }
    Ok(out)
}

/// All of properties 1..=5 on one diagram.
pub fn check_all_structural(fd: &FacialDiagram, g: &CubicGraph) -> Vec<Violation> {
    (1..=5).flat_map(|k| check_structural_property(fd, g, k).expect("k in range")).collect()
}

/// Twists the regular edge `e` and checks: the two faces through `e` merge
/// into one walk holding every traversal of both and the rest are untouched;
/// the singular count grows by the number of edges the two faces share
/// (property 7); `e` becomes a `-` link (property 8); no pre-existing
/// singular link changes sign (property 9).
pub fn check_regular_twist(g: &CubicGraph, emb: &Embedding, before: &FaceSet, e: usize) -> Result<Vec<Violation>> {
    let (w1, w2) = before.walks_of_edge(e);
    if w1 == w2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let after_emb = twist(emb, e)?;
    let after = trace_faces(g, &after_emb);

    let edge_bag = |fs: &FaceSet, w: usize| {
        let mut v: Vec<usize> = fs.walks[w].edges().collect();
        v.sort_unstable();
        v
    };
    let mut merged: Vec<usize> = edge_bag(before, w1);
    merged.extend(edge_bag(before, w2));
    merged.sort_unstable();
    if after.face_count() + 1 != before.face_count() {
        out.push(Violation::at_edge(
            Claim::RegularTwistMerges,
            e,
            format!("face count {} -> {}", before.face_count(), after.face_count()),
        ));
    }
    let (a1, a2) = after.walks_of_edge(e);
    if a1 != a2 || edge_bag(&after, a1) != merged {
        out.push(Violation::at_edge(
            Claim::RegularTwistMerges,
            e,
            "no single walk holds every traversal of the two former faces".into(),
        ));
    }
    let untouched = |fs: &FaceSet, skip: &[usize]| {
        let keep = FaceSet {
            walks: fs.walks.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, w)| w.clone()).collect(),
            edge_index: Vec::new(),
        };
        keep.face_multiset()
    };
    if untouched(before, &[w1, w2]) != untouched(&after, &[a1]) {
        out.push(Violation::at_edge(Claim::RegularTwistMerges, e, "faces away from the edge changed".into()));
    }

    let mut shared: Vec<usize> =
        before.walks[w1].edges().filter(|x| before.walks[w2].edges().any(|y| y == *x)).collect();
    shared.sort_unstable();
    shared.dedup();
    let (s0, s1) = (singular_count(before), singular_count(&after));
    if s1 != s0 + shared.len() {
        out.push(Violation::at_edge(
            Claim::Property(7),
            e,
            format!("singular count {s0} -> {s1}, expected +{}", shared.len()),
        ));
    }
    if classify_edge(&after, e) != EdgeClass::GoodSingular {
        out.push(Violation::at_edge(Claim::Property(8), e, format!("twisted edge is {:?}", classify_edge(&after, e))));
    }
    for x in 0..g.m() {
        let was = classify_edge(before, x);
        if was.is_singular() && classify_edge(&after, x) != was {
            out.push(Violation::at_edge(
                Claim::Property(9),
                x,
                format!("twisting e{e} changed e{x} from {was:?} to {:?}", classify_edge(&after, x)),
            ));
        }
    }
    Ok(out)
}

/// Twists the singular link `e` and checks the crossing behaviour: a `-`
/// link becomes regular together with all its crossing partners, so the
/// singular count drops by at least `1 + partners`; a `+` link keeps its sign,
/// flips every crossing partner and leaves the singular count unchanged.
pub fn check_singular_twist(
    g: &CubicGraph,
    emb: &Embedding,
    fd_before: &FacialDiagram,
    e: usize,
) -> Result<Vec<Violation>> {
    let Some(sign) = fd_before.sign_of_edge(e) else {
        return Ok(Vec::new());
    };
    let partners = crossing_partners(fd_before, e);
    let after = trace_faces(g, &twist(emb, e)?);
    let fd_after = build_diagram(g, &after);
    let singular_before = fd_before.sign_counts();
    let singular_before = singular_before.0 + singular_before.1;
    let singular_after = singular_count(&after);
    let mut out = Vec::new();
    match sign {
        Sign::Minus => {
            for &x in std::iter::once(&e).chain(&partners) {
                if fd_after.is_singular(x) {
                    out.push(Violation::at_edge(
                        Claim::MinusTwistResolves,
                        x,
                        format!("e{x} still singular after twisting - link e{e}"),
                    ));
                }
            }
            if singular_after + 1 + partners.len() > singular_before {
                out.push(Violation::at_edge(
                    Claim::MinusTwistResolves,
                    e,
                    format!(
                        "singular count {singular_before} -> {singular_after} with {} crossing partners",
                        partners.len()
                    ),
                ));
            }
        }
        Sign::Plus => {
            if fd_after.sign_of_edge(e) != Some(Sign::Plus) {
                out.push(Violation::at_edge(
                    Claim::PlusTwistFlips,
                    e,
                    format!("+ link e{e} became {:?}", fd_after.sign_of_edge(e)),
                ));
            }
            for &x in &partners {
                let want = fd_before.sign_of_edge(x).map(|s| -s);
                if fd_after.sign_of_edge(x) != want {
                    out.push(Violation::at_edge(
                        Claim::PlusTwistFlips,
                        x,
                        format!(
                            "partner e{x} is {:?} after twisting e{e}, expected {want:?}",
                            fd_after.sign_of_edge(x)
                        ),
                    ));
                }
            }
            if singular_after != singular_before {
                out.push(Violation::at_edge(
                    Claim::PlusTwistFlips,
                    e,
                    format!("singular count {singular_before} -> {singular_after}"),
                ));
            }
        }
    }
    Ok(out)
}

/// Every claim checkable on a single embedding: properties 1..=5 on its
/// diagram, the regular-twist claims on each regular edge, and the crossing
/// claims on each singular link.
pub fn check_embedding(g: &CubicGraph, emb: &Embedding) -> Vec<Violation> {
    let fs = trace_faces(g, emb);
    let fd = build_diagram(g, &fs);
    let mut out = check_all_structural(&fd, g);
    for e in 0..g.m() {
        let found =
            if fd.is_singular(e) { check_singular_twist(g, emb, &fd, e) } else { check_regular_twist(g, emb, &fs, e) };
        out.extend(found.expect("edge id in range"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    /// Six-vertex multigraph used for hand-built walks:
    /// e0 0-1, e1 1-2, e2 2-0, e3 2-0, e4 1-3, e5 3-4, e6 4-5, e7 4-5, e8 5-3.
    fn gadget() -> CubicGraph {
        CubicGraph::from_edges(6, vec![(0, 1), (1, 2), (2, 0), (2, 0), (1, 3), (3, 4), (4, 5), (4, 5), (5, 3)]).unwrap()
    }

    fn d(g: &CubicGraph, e: usize, from: usize) -> Dart {
        let dart = Dart::new(e, 0);
        if g.tail(dart) == from {
            dart
        } else {
            dart.reverse()
        }
    }

    #[test]
    fn detects_repeated_pattern() {
        let g = gadget();
        let walks = vec![
            vec![d(&g, 0, 0), d(&g, 1, 1), d(&g, 2, 2), d(&g, 0, 0), d(&g, 1, 1), d(&g, 3, 2)],
            vec![d(&g, 2, 0), d(&g, 3, 2)],
            vec![d(&g, 4, 1), d(&g, 5, 3), d(&g, 6, 4), d(&g, 8, 5), d(&g, 4, 3)],
            vec![d(&g, 5, 3), d(&g, 7, 4), d(&g, 8, 5)],
            vec![d(&g, 6, 4), d(&g, 7, 5)],
        ];
        let fs = FaceSet::from_dart_walks(&g, walks).unwrap();
        let fd = build_diagram(&g, &fs);
        let v = check_structural_property(&fd, &g, 1).unwrap();
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].walk, Some(0));
        assert_eq!(v[0].positions, vec![0, 3]);
    }

    #[test]
    fn detects_reversed_pattern() {
        let g = named_graph("theta").unwrap();
        // 0 -e0-> 1 -e1-> 0 then back 0 -e1-> 1 -e0-> 0; e2 on its own walk
        let walks = vec![vec![d(&g, 0, 0), d(&g, 1, 1), d(&g, 1, 0), d(&g, 0, 1)], vec![d(&g, 2, 0), d(&g, 2, 1)]];
        let fs = FaceSet::from_dart_walks(&g, walks).unwrap();
        let fd = build_diagram(&g, &fs);
        let v = check_structural_property(&fd, &g, 2).unwrap();
        assert!(v.iter().any(|x| x.walk == Some(0) && x.positions == vec![0, 2]), "{v:?}");
    }

    #[test]
    fn detects_bad_saturated_vertex() {
        // Arrivals and departures balance at every vertex of a closed walk
        // system, which forces an odd + count; a violation needs a doctored
        // diagram.
        let g = named_graph("theta").unwrap();
        let walks = vec![vec![d(&g, 0, 0), d(&g, 1, 1), d(&g, 2, 0), d(&g, 0, 1), d(&g, 1, 0), d(&g, 2, 1)]];
        let fs = FaceSet::from_dart_walks(&g, walks).unwrap();
        let mut fd = build_diagram(&g, &fs);
        assert_eq!(fd.sign_counts(), (3, 0));
        assert!(check_structural_property(&fd, &g, 5).unwrap().is_empty());
        let link = fd.edge_link[0];
        fd.links[link].kind = crate::diagram::LinkKind::Singular { sign: Sign::Minus };
        let v = check_structural_property(&fd, &g, 5).unwrap();
        assert_eq!(v.iter().map(|x| x.vertex).collect::<Vec<_>>(), vec![Some(0), Some(1)]);
    }

    #[test]
    fn property_index_is_checked() {
        let g = named_graph("k4").unwrap();
        let fd = build_diagram(&g, &trace_faces(&g, &Embedding::canonical(&g)));
        assert!(matches!(check_structural_property(&fd, &g, 0), Err(Error::PropertyOutOfRange(0))));
        assert!(matches!(check_structural_property(&fd, &g, 6), Err(Error::PropertyOutOfRange(6))));
    }

    #[test]
    fn planar_k4_is_clean() {
        let g = named_graph("k4").unwrap();
        let e = Embedding::from_neighbor_rotation(&g, &[[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]).unwrap();
        assert!(check_embedding(&g, &e).is_empty());
    }
}
