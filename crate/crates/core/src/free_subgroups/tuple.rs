use std::collections::HashSet;

use super::graph::StallingsGraph;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Alphabet, Word};

/// Relators `R` over the names `S` with `⟨S | R⟩ ≅ ⟨tuple⟩` via `sᵢ ↦ tupleᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuplePresentation {
    pub relators: Vec<Word>,
    pub basis_rank: usize,
}

impl TuplePresentation {
    pub fn presentation(&self, names: &Alphabet) -> Presentation {
        Presentation::new(names.clone(), self.relators.iter().cloned())
            .expect("relators are over the tuple positions")
    }
}

/// Whether the entries generate an abelian (hence cyclic) subgroup of a free
/// group, i.e. they pairwise commute.
pub fn is_abelian_tuple(words: &[Word]) -> bool {
    words
        .iter()
        .enumerate()
        .all(|(i, x)| words[i + 1..].iter().all(|y| Word::commutes(x, y)))
}

/// A presentation of the subgroup generated by `tuple`, on the names `names`.
///
/// The relators generate the kernel of `F(S) → F(rank)` as a normal subgroup;
/// there are exactly `|S| − basis_rank` of them before deduplication. Each is
/// stored cyclically reduced, as the least rotation of itself or its inverse.
pub fn presentation_of_tuple(
    rank: usize,
    tuple: &[Word],
    names: &Alphabet,
) -> Result<TuplePresentation> {
    if tuple.len() != names.len() {
        return Err(Error::AlphabetMismatch {
            expected: names.len(),
            found: tuple.len(),
        });
    }
    let (graph, raw) = StallingsGraph::fold_tuple(rank, tuple)?;
    let mut seen = HashSet::new();
    let relators = raw
        .iter()
        .map(Word::canonical_relator)
        .filter(|r| !r.is_identity() && seen.insert(r.clone()))
        .collect();
    Ok(TuplePresentation {
        relators,
        basis_rank: graph.graph_rank(),
    })
}
