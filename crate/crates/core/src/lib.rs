//! Na-equations and defining equations for subgroups of products of free and
//! free-abelian groups.
//!
//! A subgroup `G = ⟨S⟩ ⊂ L₁ × … × Lₙ` is described by a [`ProductSubgroup`].
//! [`naeq::na_equations`] produces a finite presentation whose largest
//! quotient residually free with non-abelian images agrees with that of `G`,
//! and [`pipeline::defining_equations`] saturates it with trivial words of `G`
//! until the first Betti number reaches a user-supplied value.

pub mod error;
pub mod exec;
pub mod free_subgroups;
pub mod naeq;
pub mod oracle;
pub mod pipeline;
pub mod presentation;
pub mod product;
pub mod word;

pub use error::{Error, Result};
pub use exec::Execution;
pub use free_subgroups::{is_abelian_tuple, presentation_of_tuple, StallingsGraph, TuplePresentation};
pub use naeq::{na_equations, NaEquations, RelatorSet};
pub use pipeline::{defining_equations, SaturationReport, Seed};
pub use presentation::{smith_normal_form, IntMatrix, Presentation, SmithForm};
pub use product::{Factor, FactorKind, GeneratorTuple, ProductSubgroup};
pub use word::{Alphabet, Letter, Word};
