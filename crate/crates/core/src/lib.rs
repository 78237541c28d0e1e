//! Combinatorial calculus of surface-braid charts.
//!
//! The crate models charts as combinatorial maps on the 2-sphere, checks the
//! chart axioms, extracts label subgraphs and their features, performs
//! IO-Calculation over regions, enumerates the possible connected
//! components of a label subgraph, and runs a rule-based case engine showing
//! that no minimal chart of type `(m; 7)` exists.

pub mod component;
pub mod diagram;
pub mod embed;
pub mod engine;
pub mod enumerate;
pub mod format;
pub mod model;
pub mod pairing;
pub mod reference;
pub mod region;
pub mod subgraph;

pub use component::{AbstractComponent, CanonicalCode, Orientation, Slot};
pub use embed::{EmbedError, Embedding, FaceId};
pub use model::{
    assemble, ro_transform, validate, Chart, ChartBuilder, ChartSpec, Clause, Direction, Label,
    ModelError, ValidationMode, VertexKind, Violation,
};
