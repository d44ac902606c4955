//! Finitely generated subgroups of free groups: folded core graphs for
//! membership and rank, and presentations of generating tuples.

mod fold;
mod graph;
mod tuple;

pub use graph::StallingsGraph;
pub use tuple::{is_abelian_tuple, presentation_of_tuple, TuplePresentation};
