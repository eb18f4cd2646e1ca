//! Signed combinatorial embeddings of bridgeless cubic graphs.
//!
//! The crate traces the faces of a rotation system with edge signature,
//! classifies edges as regular or (good/bad) singular, applies edge twists,
//! builds facial diagrams with signed singular links, and provides reduction
//! heuristics, exhaustive oracles and Monte Carlo experiments over the space
//! of embeddings.

pub mod diagram;
pub mod embedding;
pub mod error;
pub mod experiment;
pub mod faces;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod properties;
pub mod reduce;
pub mod twist;

pub use embedding::{random_embedding, Embedding, Sign};
pub use error::{Error, Result};
pub use faces::{
    classify_edges, count_classes, euler_characteristic, is_circular, is_orientable, trace_faces, ClassCounts,
    EdgeClass, FaceSet, FacialWalk, TraceState,
};
pub use graph::{named_graph, parse_graph, random_cubic, CubicGraph, Dart};
pub use matching::{perfect_matching, two_factor_cycles, FactorCycle, Matching};
