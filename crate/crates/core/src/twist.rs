//! Edge twists and local rotation changes.

use serde::{Deserialize, Serialize};

use crate::embedding::{Embedding, Sign};
use crate::error::{Error, Result};
use crate::faces::{count_classes, trace_faces, ClassCounts};
use crate::graph::{CubicGraph, Dart};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRecord {
    pub edge: usize,
    pub before: ClassCounts,
    pub after: ClassCounts,
    pub faces_before: usize,
    pub faces_after: usize,
}

/// Negates the signature of `e`.
pub fn twist(emb: &Embedding, e: usize) -> Result<Embedding> {
    if e >= emb.m() {
        return Err(Error::EdgeOutOfRange { edge: e, m: emb.m() });
    }
    let mut out = emb.clone();
    out.signature[e] = -out.signature[e];
    Ok(out)
}

/// Twists `e` and records class and face counts on both sides.
pub fn twist_recorded(g: &CubicGraph, emb: &Embedding, e: usize) -> Result<(Embedding, TwistRecord)> {
    let after = twist(emb, e)?;
    let fb = trace_faces(g, emb);
    let fa = trace_faces(g, &after);
    let record = TwistRecord {
        edge: e,
        before: count_classes(&fb),
        after: count_classes(&fa),
        faces_before: fb.face_count(),
        faces_after: fa.face_count(),
    };
    Ok((after, record))
}

/// Reverses the cyclic order at `v`; signature untouched.
pub fn local_rotation_flip(emb: &Embedding, v: usize) -> Result<Embedding> {
    if v >= emb.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: emb.n() });
    }
    let mut out = emb.clone();
    let [a, b, c] = out.rotation[v];
    out.rotation[v] = [a, c, b];
    Ok(out)
}

/// Twists every edge incidence at `v`. Loops are excluded by construction,
/// so this flips three distinct edges, parallel ones included.
pub fn triple_twist(g: &CubicGraph, emb: &Embedding, v: usize) -> Result<Embedding> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let mut out = emb.clone();
    for e in g.incident(v) {
        out.signature[e] = -out.signature[e];
    }
    Ok(out)
}

/// Given rotation `rotation_b` obtained from `rotation_a` by local flips at
/// the vertex set `flipped`, returns the signature `λ'` for which
/// `(rotation_a, λ')` has the same faces as `(rotation_b, signature)`: each
/// edge changes sign once per endpoint in `flipped`. Panics if the face sets
/// differ.
pub fn reachability_equivalence_check(
    g: &CubicGraph,
    rotation_a: &[[Dart; 3]],
    rotation_b: &[[Dart; 3]],
    signature: &[Sign],
    flipped: &[usize],
) -> Result<Vec<Sign>> {
    let mut lhs = Embedding::new(g, rotation_a.to_vec(), signature.to_vec())?;
    for &v in flipped {
        lhs = triple_twist(g, &lhs, v)?;
    }
    let rhs = Embedding::new(g, rotation_b.to_vec(), signature.to_vec())?;
    assert_eq!(
        trace_faces(g, &lhs).face_multiset(),
        trace_faces(g, &rhs).face_multiset(),
        "twist-equivalent embedding has different faces"
    );
    Ok(lhs.signature)
}
