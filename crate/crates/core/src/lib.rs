//! Recognition and canonical labeling of chordal line graphs.
//!
//! The [`canon`] module assigns every chordal line graph a labeled copy on
//! `[1..n]` that is identical for isomorphic inputs. Around it sit chordality
//! and line-graph recognition, the hat construction that embeds arbitrary
//! graphs into chordal ones, exact isomorphism oracles, and seeded
//! generators.

pub mod canon;
pub mod chordal;
pub mod cli;
pub mod error;
pub mod generators;
pub mod graph;
pub mod iso;
pub mod linegraph;
pub mod reductions;

pub use canon::{canon, canon_connected, CanonicalForm};
pub use chordal::{is_chordal, Chordality};
pub use error::{Error, Obstruction, Result};
pub use graph::{parse_graph, serialize_graph, slex_compare, Graph, LabeledGraph, Vertex};
pub use iso::are_isomorphic;
pub use linegraph::{is_chordal_line, is_line_graph, line_graph, root_graph, ChordalLine};
