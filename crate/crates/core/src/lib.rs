//! Kempe-change transformations between proper edge colorings.
//!
//! For a graph that is triangle-free or chordless, any two colorings using
//! `max_degree + 1` colors (or `chromatic_index + 1` for Class 2 graphs)
//! are connected by a sequence of Kempe changes. [`engine::transform`] and
//! [`engine::class2_transform`] produce such a sequence as a replayable
//! [`coloring::KempeTrace`]; [`oracle`] checks the same question by brute
//! force on small graphs.

pub mod coloring;
pub mod engine;
pub mod error;
pub mod factory;
pub mod fan;
pub mod graph;
pub mod oracle;
pub mod procedures;
pub mod solver;

pub use coloring::{
    apply_trace, kempe_component, kempe_swap, verify_trace, Color, EdgeColoring, KempeStep, KempeTrace,
};
pub use engine::{align_first_class, class2_transform, transform};
pub use error::{Error, Result};
pub use graph::{ChordWitness, Graph};
