//! A finite-model-theory workbench for digraph kernels.
//!
//! The crate decides kernel existence for finite digraphs, evaluates
//! first-order formulas over `{R, s, =}` on finite structures, models the
//! theory of an injective successor function, and replays a set of
//! theorem-level checks at desk scale (see [`verify`]).

pub mod graph;
pub mod kernel;
pub mod logic;
pub mod successor;
pub mod verify;
pub mod vertex_set;

pub use graph::{Digraph, GraphError};
pub use kernel::{solve, SolveResult, Verdict};
pub use logic::{Formula, Term};
pub use successor::SuccessorStructure;
pub use vertex_set::VertexSet;
