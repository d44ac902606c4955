//! na-equations: conjugate closures, commutator sets and the nested
//! commutator set
//!
//! ```text
//! R̃ = [Rₙ^{S₀}, [Rₙ₋₁^{S₀}, … [R₃^{S₀}, [R₂^{S₀}, R₁]] … ]]
//! ```
//!
//! where `S₀ = S ∪ {1}`. For `G ≤ A₁ × … × Aₙ` with `pᵢ(G) = RF_na(⟨S | Rᵢ⟩)`,
//! a morphism `F(S) → 𝔽` with non-abelian image kills `R̃` exactly when it kills
//! some `Rᵢ`, hence `RF_na(⟨S | R̃⟩) = RF_na(G)`.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::free_subgroups::presentation_of_tuple;
use crate::presentation::Presentation;
use crate::product::ProductSubgroup;
use crate::word::{Alphabet, Word};

/// Duplicate-free list of nonempty reduced words, in construction order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelatorSet {
    words: Vec<Word>,
}

impl RelatorSet {
    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> Self {
        let mut seen = HashSet::new();
        let words = words
            .into_iter()
            .filter(|w| !w.is_identity() && seen.insert(w.clone()))
            .collect();
        RelatorSet { words }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }
}

impl FromIterator<Word> for RelatorSet {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        RelatorSet::new(iter)
    }
}

/// `S₀ = [1, s₁, …, sₖ]`.
fn conjugators(rank: usize) -> Vec<Word> {
    std::iter::once(Word::identity())
        .chain((0..rank).map(Word::generator))
        .collect()
}

fn closure_raw(r: &[Word], rank: usize, exec: Execution) -> Vec<Word> {
    let s0 = conjugators(rank);
    let width = s0.len();
    exec.map(r.len() * width, |k| r[k / width].conjugate(&s0[k % width]))
}

fn commutators_raw(a: &[Word], b: &[Word], exec: Execution) -> Vec<Word> {
    let width = b.len();
    exec.map(a.len() * width, |k| {
        Word::commutator(&a[k / width], &b[k % width])
    })
}

/// `R^{S₀} = { s⁻¹ r s : r ∈ R, s ∈ S₀ }`, ordered by `(r, s)` with the
/// identity conjugator first.
pub fn conjugate_closure(r: &RelatorSet, names: &Alphabet) -> RelatorSet {
    conjugate_closure_with(r, names, Execution::default())
}

pub fn conjugate_closure_with(r: &RelatorSet, names: &Alphabet, exec: Execution) -> RelatorSet {
    RelatorSet::new(closure_raw(&r.words, names.len(), exec))
}

/// `[A, B] = { x⁻¹ y⁻¹ x y : x ∈ A, y ∈ B }`, ordered by `(x, y)`.
pub fn commutator_set(a: &RelatorSet, b: &RelatorSet) -> RelatorSet {
    commutator_set_with(a, b, Execution::default())
}

pub fn commutator_set_with(a: &RelatorSet, b: &RelatorSet, exec: Execution) -> RelatorSet {
    RelatorSet::new(commutators_raw(&a.words, &b.words, exec))
}

fn check_arity(sets: &[RelatorSet]) -> Result<()> {
    if sets.len() < 2 {
        return Err(Error::Precondition(format!(
            "nested commutator set needs at least 2 relator sets, got {}",
            sets.len()
        )));
    }
    Ok(())
}

/// The nested commutator set of `R₁, …, Rₙ` (`n ≥ 2`); `R₁` is not
/// conjugated.
pub fn tilde_r(sets: &[RelatorSet], names: &Alphabet) -> Result<RelatorSet> {
    tilde_r_with(sets, names, Execution::default())
}

pub fn tilde_r_with(sets: &[RelatorSet], names: &Alphabet, exec: Execution) -> Result<RelatorSet> {
    check_arity(sets)?;
    let mut inner = sets[0].clone();
    for r in &sets[1..] {
        inner = commutator_set_with(&conjugate_closure_with(r, names, exec), &inner, exec);
    }
    Ok(inner)
}

/// The same construction with neither deduplication nor removal of empty
/// words; its length is [`raw_count`].
pub fn tilde_r_multiset(sets: &[RelatorSet], names: &Alphabet) -> Result<Vec<Word>> {
    check_arity(sets)?;
    let exec = Execution::default();
    let mut inner = sets[0].words.clone();
    for r in &sets[1..] {
        let closure = closure_raw(&r.words, names.len(), exec);
        inner = commutators_raw(&closure, &inner, exec);
    }
    Ok(inner)
}

/// `|R₁| · ∏_{i≥2} |Rᵢ| (|S| + 1)`.
pub fn raw_count(sizes: &[usize], generator_count: usize) -> BigUint {
    let mut count = BigUint::from(sizes.first().copied().unwrap_or(0));
    for &size in sizes.iter().skip(1) {
        count *= BigUint::from(size) * BigUint::from(generator_count + 1);
    }
    count
}

/// Output of [`NaEquations::compute`], with the bookkeeping the CLI reports.
#[derive(Clone, Debug)]
pub struct NaEquations {
    pub presentation: Presentation,
    /// `n`, the number of factors.
    pub factor_count: usize,
    /// Indices (into the original factors) with non-abelian projection.
    pub surviving: Vec<usize>,
    /// `Rᵢ` for each surviving factor, in order.
    pub factor_relators: Vec<RelatorSet>,
    /// Size of the nested set before deduplication, when `n' ≥ 2`.
    pub raw_count: Option<BigUint>,
}

impl NaEquations {
    pub fn compute(ps: &ProductSubgroup) -> Self {
        Self::compute_with(ps, Execution::default())
    }

    pub fn compute_with(ps: &ProductSubgroup, exec: Execution) -> Self {
        let names = ps.names();
        let abelian = ps.abelian_indices();
        let surviving: Vec<usize> = (0..ps.factors().len())
            .filter(|i| !abelian.contains(i))
            .collect();
        let factor_relators = factor_relator_sets(ps, &surviving);

        let (relators, raw) = match factor_relators.len() {
            0 => (
                RelatorSet::new((0..names.len()).map(Word::generator)),
                None,
            ),
            1 => (factor_relators[0].clone(), None),
            _ => {
                let sizes: Vec<usize> = factor_relators.iter().map(RelatorSet::len).collect();
                let set = tilde_r_with(&factor_relators, names, exec)
                    .expect("at least two surviving factors");
                (set, Some(raw_count(&sizes, names.len())))
            }
        };
        let presentation = Presentation::new(names.clone(), relators.into_words())
            .expect("relators are over the names");
        NaEquations {
            presentation,
            factor_count: ps.factors().len(),
            surviving,
            factor_relators,
            raw_count: raw,
        }
    }
}

/// `Rᵢ` from the tuple presentation of each listed (free) factor.
pub(crate) fn factor_relator_sets(ps: &ProductSubgroup, indices: &[usize]) -> Vec<RelatorSet> {
    indices
        .iter()
        .map(|&i| {
            let tuple = ps.project(i).expect("valid factor index");
            let rank = ps.factors()[i].rank();
            let tp = presentation_of_tuple(rank, &tuple, ps.names())
                .expect("projection matches the names");
            RelatorSet::new(tp.relators)
        })
        .collect()
}

/// A finite set of na-equations for `G`: `RF_na(⟨S | R⟩) = RF_na(G)`.
pub fn na_equations(ps: &ProductSubgroup) -> Presentation {
    NaEquations::compute(ps).presentation
}
