//! Facial diagrams.
//!
//! The diagram has one node per edge traversal (`2m` nodes). Consecutive
//! traversals of a walk are joined by a facial link carrying the shared
//! vertex; the two traversals of each edge are joined by a singular link when
//! they lie on the same walk and a regular link otherwise. A singular link is
//! signed `+` when the walk runs the edge in opposite directions and `-` when
//! it runs it the same way twice.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::embedding::Sign;
use crate::faces::FaceSet;
use crate::graph::{CubicGraph, Dart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdNode {
    pub id: usize,
    pub walk: usize,
    pub pos: usize,
    pub edge: usize,
    /// Direction of the traversal.
    pub dart: Dart,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum LinkKind {
    Facial { vertex: usize },
    Singular { sign: Sign },
    Regular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdLink {
    pub a: usize,
    pub b: usize,
    #[serde(flatten)]
    pub kind: LinkKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacialDiagram {
    pub nodes: Vec<FdNode>,
    pub links: Vec<FdLink>,
    /// Node ids of each walk in cyclic order.
    pub walks: Vec<Vec<usize>>,
    /// Per edge id, the index into `links` of its singular or regular link.
    pub edge_link: Vec<usize>,
}

/// Nodes are numbered by walk, then position. Links are listed as all facial
/// links (walk order) followed by one edge link per edge id.
pub fn build_diagram(g: &CubicGraph, fs: &FaceSet) -> FacialDiagram {
    let mut nodes = Vec::with_capacity(2 * g.m());
    let mut walks = Vec::with_capacity(fs.walks.len());
    let mut first = Vec::with_capacity(fs.walks.len());
    for (w, walk) in fs.walks.iter().enumerate() {
        first.push(nodes.len());
        let mut ids = Vec::with_capacity(walk.len());
        for (pos, s) in walk.states.iter().enumerate() {
            ids.push(nodes.len());
            nodes.push(FdNode { id: nodes.len(), walk: w, pos, edge: s.dart.edge(), dart: s.dart });
        }
        walks.push(ids);
    }
    let mut links = Vec::with_capacity(3 * g.m());
    for (w, walk) in fs.walks.iter().enumerate() {
        let ids = &walks[w];
        for (pos, s) in walk.states.iter().enumerate() {
            let next = (pos + 1) % ids.len();
            links.push(FdLink { a: ids[pos], b: ids[next], kind: LinkKind::Facial { vertex: g.head(s.dart) } });
        }
    }
    let mut edge_link = Vec::with_capacity(g.m());
    for [x, y] in &fs.edge_index {
        let a = first[x.walk] + x.pos;
        let b = first[y.walk] + y.pos;
        let kind = if x.walk != y.walk {
            LinkKind::Regular
        } else if x.dart == y.dart {
            LinkKind::Singular { sign: Sign::Minus }
        } else {
            LinkKind::Singular { sign: Sign::Plus }
        };
        edge_link.push(links.len());
        links.push(FdLink { a, b, kind });
    }
    FacialDiagram { nodes, links, walks, edge_link }
}

impl FacialDiagram {
    pub fn edge_count(&self) -> usize {
        self.edge_link.len()
    }

    pub fn link_of_edge(&self, e: usize) -> &FdLink {
        &self.links[self.edge_link[e]]
    }

    /// `Some(sign)` for singular links, `None` for regular ones.
    pub fn sign_of_edge(&self, e: usize) -> Option<Sign> {
        match self.link_of_edge(e).kind {
            LinkKind::Singular { sign } => Some(sign),
            _ => None,
        }
    }

    pub fn is_singular(&self, e: usize) -> bool {
        self.sign_of_edge(e).is_some()
    }

    /// Number of `+` and `-` links.
    pub fn sign_counts(&self) -> (usize, usize) {
        (0..self.edge_count()).fold((0, 0), |(p, m), e| match self.sign_of_edge(e) {
            Some(Sign::Plus) => (p + 1, m),
            Some(Sign::Minus) => (p, m + 1),
            None => (p, m),
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for l in &self.links {
            deg[l.a] += 1;
            deg[l.b] += 1;
        }
        deg
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }
}

/// Unordered pairs `(e1, e2)`, `e1 < e2`, of singular links on the same walk
/// whose occurrences interleave in cyclic order. Sorted.
pub fn crossing_pairs(fd: &FacialDiagram) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for ids in &fd.walks {
        // (edge, first position, second position) of singular links on this walk
        let mut chords: Vec<(usize, usize, usize)> = Vec::new();
        let mut seen: Vec<Option<usize>> = vec![None; fd.edge_count()];
        for (pos, &node) in ids.iter().enumerate() {
            let e = fd.nodes[node].edge;
            if !fd.is_singular(e) {
                continue;
            }
            match seen[e] {
                None => seen[e] = Some(pos),
                Some(p) => chords.push((e, p, pos)),
            }
        }
        for (i, &(e1, p1, q1)) in chords.iter().enumerate() {
            for &(e2, p2, q2) in &chords[i + 1..] {
                let inside = |x: usize| p1 < x && x < q1;
                if inside(p2) != inside(q2) {
                    out.push((e1.min(e2), e1.max(e2)));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Singular partners crossing edge `e`'s link.
pub fn crossing_partners(fd: &FacialDiagram, e: usize) -> Vec<usize> {
    crossing_pairs(fd)
        .into_iter()
        .filter_map(|(a, b)| {
            if a == e {
                Some(b)
            } else if b == e {
                Some(a)
            } else {
                None
            }
        })
        .collect()
}

/// Vertices whose three incident edges are all singular.
pub fn saturated_vertices(fd: &FacialDiagram, g: &CubicGraph) -> Vec<usize> {
    (0..g.n()).filter(|&v| g.incident(v).iter().all(|&e| fd.is_singular(e))).collect()
}

/// Graphviz rendering. Facial links solid and labelled with their vertex,
/// singular links dashed and labelled with their sign, regular links dotted.
pub fn to_dot(fd: &FacialDiagram) -> String {
    let mut s = String::from("graph facial_diagram {\n");
    for (w, ids) in fd.walks.iter().enumerate() {
        let _ = writeln!(s, "  subgraph cluster_f{w} {{");
        let _ = writeln!(s, "    label=\"F{w}\";");
        for &id in ids {
            let _ = writeln!(s, "    n{id} [label=\"e{}\"];", fd.nodes[id].edge);
        }
        s.push_str("  }\n");
    }
    for l in &fd.links {
        let attrs = match l.kind {
            LinkKind::Facial { vertex } => format!("style=solid, label=\"v{vertex}\""),
            LinkKind::Singular { sign } => format!("style=dashed, label=\"{}\"", sign.symbol()),
            LinkKind::Regular => "style=dotted".to_string(),
        };
        let _ = writeln!(s, "  n{} -- n{} [{attrs}];", l.a, l.b);
    }
    s.push_str("}\n");
    s
}
