//! Signed rotation systems `(rotation, signature)` on cubic graphs.

use std::fmt;
use std::ops::{Mul, Neg};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CubicGraph, Dart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Sign, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A rotation system plus edge signature.
///
/// `rotation[v]` is the cyclic order of the three darts leaving `v`, stored
/// with its smallest dart first, so each vertex has exactly two possible
/// values: ascending (rotation bit 0) or descending after the first (bit 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    pub rotation: Vec<[Dart; 3]>,
    pub signature: Vec<Sign>,
}

fn canonical_triple(t: [Dart; 3]) -> [Dart; 3] {
    let i = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
}

impl Embedding {
    /// Validates and canonicalizes a rotation/signature pair.
    pub fn new(g: &CubicGraph, rotation: Vec<[Dart; 3]>, signature: Vec<Sign>) -> Result<Embedding> {
        if rotation.len() != g.n() {
            return Err(Error::InvalidEmbedding(format!(
                "rotation has {} entries for {} vertices",
                rotation.len(),
                g.n()
            )));
        }
        if signature.len() != g.m() {
            return Err(Error::InvalidEmbedding(format!(
                "signature has {} entries for {} edges",
                signature.len(),
                g.m()
            )));
        }
        let rotation: Vec<[Dart; 3]> = rotation
            .into_iter()
            .enumerate()
            .map(|(v, t)| {
                let mut got = t;
                got.sort_unstable();
                if got != g.darts_at(v) {
                    return Err(Error::InvalidEmbedding(format!(
                        "rotation at vertex {v} lists darts {:?}, expected a permutation of {:?}",
                        t.map(|d| d.0),
                        g.darts_at(v).map(|d| d.0)
                    )));
                }
                Ok(canonical_triple(t))
            })
            .collect::<Result<_>>()?;
        Ok(Embedding { rotation, signature })
    }

    /// Every rotation ascending and every edge positive.
    pub fn canonical(g: &CubicGraph) -> Embedding {
        Embedding { rotation: (0..g.n()).map(|v| g.darts_at(v)).collect(), signature: vec![Sign::Plus; g.m()] }
    }

    /// Builds an embedding from per-vertex rotation bits and per-edge
    /// signature bits (`true` means negative).
    pub fn from_bits(
        g: &CubicGraph,
        rotation_bit: impl Fn(usize) -> bool,
        negative: impl Fn(usize) -> bool,
    ) -> Embedding {
        let rotation = (0..g.n())
            .map(|v| {
                let [a, b, c] = g.darts_at(v);
                if rotation_bit(v) {
                    [a, c, b]
                } else {
                    [a, b, c]
                }
            })
            .collect();
        let signature = (0..g.m()).map(|e| if negative(e) { Sign::Minus } else { Sign::Plus }).collect();
        Embedding { rotation, signature }
    }

    /// Simple graphs only: `order[v]` lists the neighbours of `v` in cyclic
    /// order. All edges positive.
    pub fn from_neighbor_rotation(g: &CubicGraph, order: &[[usize; 3]]) -> Result<Embedding> {
        if order.len() != g.n() {
            return Err(Error::InvalidEmbedding(format!(
                "neighbour rotation has {} entries for {} vertices",
                order.len(),
                g.n()
            )));
        }
        let rotation = order
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                let darts = g.darts_at(v);
                let mut out = [Dart(0); 3];
                for (slot, &w) in nbrs.iter().enumerate() {
                    let hits: Vec<Dart> = darts.iter().copied().filter(|&d| g.head(d) == w).collect();
                    if hits.len() != 1 {
                        return Err(Error::InvalidEmbedding(format!(
                            "vertex {v}: neighbour {w} matches {} edges",
                            hits.len()
                        )));
                    }
                    out[slot] = hits[0];
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Embedding::new(g, rotation, vec![Sign::Plus; g.m()])
    }

    pub fn rotation_bit(&self, v: usize) -> bool {
        let [_, b, c] = self.rotation[v];
        b > c
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.signature[e]
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn m(&self) -> usize {
        self.signature.len()
    }

    /// Next dart after `d` in the rotation at its tail, as a lookup table
    /// indexed by dart id. Second table is the predecessor.
    pub fn successor_tables(&self) -> (Vec<Dart>, Vec<Dart>) {
        let mut succ = vec![Dart(0); 2 * self.m()];
        let mut pred = vec![Dart(0); 2 * self.m()];
        for t in &self.rotation {
            for i in 0..3 {
                succ[t[i].0] = t[(i + 1) % 3];
                pred[t[(i + 1) % 3].0] = t[i];
            }
        }
        (succ, pred)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("embedding serializes")
    }

    pub fn from_json(g: &CubicGraph, text: &str) -> Result<Embedding> {
        let raw: Embedding = serde_json::from_str(text).map_err(|e| Error::Json(format!("embedding JSON: {e}")))?;
        for t in &raw.rotation {
            for d in t {
                if d.0 >= g.dart_count() {
                    return Err(Error::InvalidEmbedding(format!("dart {} out of range", d.0)));
                }
            }
        }
        Embedding::new(g, raw.rotation, raw.signature)
    }
}

/// Independent uniform choices: one of the two cyclic rotations per vertex
/// and one sign per edge.
pub fn random_embedding<R: Rng + ?Sized>(g: &CubicGraph, rng: &mut R) -> Embedding {
    let rot: Vec<bool> = (0..g.n()).map(|_| rng.gen()).collect();
    let neg: Vec<bool> = (0..g.m()).map(|_| rng.gen()).collect();
    Embedding::from_bits(g, |v| rot[v], |e| neg[e])
}
