//! Randomized falsification of the factorization properties behind the
//! na-equations.
//!
//! Homomorphisms `F(S) → 𝔽₂ = F(a, b)` are sampled by drawing, for every name,
//! a length uniformly in `0..=max_len` and then a uniform reduced word of that
//! length. This samples words, not the (infinite) space of morphisms: a clean
//! report is evidence, never a proof.
//!
//! Every random draw is keyed by `(seed, sample index, name index)`, so a
//! report does not depend on how samples are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::Execution;
use crate::free_subgroups::is_abelian_tuple;
use crate::naeq::{tilde_r, RelatorSet};
use crate::presentation::Presentation;
use crate::product::{FactorKind, ProductSubgroup};
use crate::word::{Alphabet, Letter, Word};

/// Rank of the target free group.
pub const TARGET_RANK: usize = 2;

/// `φ: F(S) → F(a, b)`, given by the images of the names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeHom {
    pub images: Vec<Word>,
    pub seed: u64,
    pub max_len: usize,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub(crate) fn keyed_rng(seed: u64, sample: u64, slot: u64) -> ChaCha8Rng {
    let key = splitmix(splitmix(splitmix(seed) ^ sample) ^ slot);
    ChaCha8Rng::seed_from_u64(key)
}

/// Uniform reduced word of exactly `len` letters over `rank` generators.
pub(crate) fn random_reduced_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        let l = match letters.last() {
            None => Letter::from_code(rng.random_range(0..2 * rank)),
            Some(prev) => {
                // Uniform over the 2·rank − 1 letters that do not cancel.
                let forbidden = prev.inverse().code();
                let mut code = rng.random_range(0..2 * rank - 1);
                if code >= forbidden {
                    code += 1;
                }
                Letter::from_code(code)
            }
        };
        letters.push(l);
    }
    Word::from_letters(letters)
}

fn bounded_word(seed: u64, sample: u64, slot: u64, max_len: usize) -> Word {
    let mut rng = keyed_rng(seed, sample, slot);
    let len = rng.random_range(0..=max_len);
    random_reduced_word(&mut rng, TARGET_RANK, len)
}

impl FreeHom {
    /// The `sample`-th homomorphism of the stream keyed by `seed`.
    pub fn sample(name_count: usize, max_len: usize, seed: u64, sample: u64) -> Self {
        let images = (0..name_count)
            .map(|j| bounded_word(seed, sample, j as u64, max_len))
            .collect();
        FreeHom {
            images,
            seed,
            max_len,
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

pub fn random_hom(names: &Alphabet, max_len: usize, seed: u64) -> FreeHom {
    FreeHom::sample(names.len(), max_len, seed, 0)
}

/// Exact for free targets: some pair of images fails to commute.
pub fn has_nonabelian_image(h: &FreeHom) -> bool {
    !is_abelian_tuple(&h.images)
}

pub fn kills(h: &FreeHom, relators: &[Word]) -> bool {
    relators.iter().all(|r| h.apply(r).is_identity())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `φ` kills some `Rᵢ` but not `R̃`.
    If,
    /// `φ` has non-abelian image and kills `R̃` but no `Rᵢ`.
    OnlyIf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub sample: u64,
    pub direction: Direction,
    pub images: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub tested: usize,
    pub nonabelian_count: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
}

/// Samples `φ` and checks "kills some `Rᵢ` ⇒ kills `R̃`" always, and the
/// converse when `φ` has non-abelian image.
pub fn check_factorization_equivalence(
    sets: &[RelatorSet],
    names: &Alphabet,
    sampling: Sampling,
) -> crate::Result<FactorizationReport> {
    let tilde = tilde_r(sets, names)?;
    Ok(check_against(sets, tilde.words(), names.len(), sampling, Execution::default()))
}

/// Like [`check_factorization_equivalence`], against a caller-supplied `R̃`
/// (used for mutation testing).
pub fn check_against(
    sets: &[RelatorSet],
    tilde: &[Word],
    name_count: usize,
    sampling: Sampling,
    exec: Execution,
) -> FactorizationReport {
    let outcomes = exec.map(sampling.samples, |k| {
        let h = FreeHom::sample(name_count, sampling.max_len, sampling.seed, k as u64);
        let nonabelian = has_nonabelian_image(&h);
        let kills_some = sets.iter().any(|r| kills(&h, r.words()));
        let kills_tilde = kills(&h, tilde);
        let direction = if kills_some && !kills_tilde {
            Some(Direction::If)
        } else if nonabelian && kills_tilde && !kills_some {
            Some(Direction::OnlyIf)
        } else {
            None
        };
        let violation = direction.map(|direction| Violation {
            sample: k as u64,
            direction,
            images: h.images,
        });
        (nonabelian, violation)
    });
    FactorizationReport {
        tested: sampling.samples,
        nonabelian_count: outcomes.iter().filter(|(n, _)| *n).count(),
        violations: outcomes.into_iter().filter_map(|(_, v)| v).collect(),
    }
}

/// Whether `G` is a quotient of the presented group: every relator is
/// trivial in `G`.
pub fn check_quotient(ps: &ProductSubgroup, p: &Presentation) -> bool {
    p.relators().iter().all(|r| ps.is_trivial(r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMapViolation {
    pub factor: usize,
    pub sample: u64,
    /// Whether `ψ ∘ pᵢ` has non-abelian image.
    pub nonabelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMapReport {
    pub tested: usize,
    pub nonabelian_count: usize,
    pub violations: Vec<FactorMapViolation>,
}

impl FactorMapReport {
    pub fn nonabelian_violations(&self) -> usize {
        self.violations.iter().filter(|v| v.nonabelian).count()
    }
}

/// Images in `F(a, b)` of the generators of factor `i` under a sampled
/// homomorphism `ψ: Lᵢ → F(a, b)`. Free-abelian factors map into a cyclic
/// subgroup `⟨w⟩`, with exponents in `-2..=2`.
fn factor_map(ps: &ProductSubgroup, i: usize, sampling: Sampling, sample: u64) -> Vec<Word> {
    let factor = &ps.factors()[i];
    // Slots above any name index keep factor maps independent of φ draws.
    let slot = |j: usize| ((i as u64 + 1) << 32) | j as u64;
    match factor.kind {
        FactorKind::Free => (0..factor.rank())
            .map(|j| bounded_word(sampling.seed, sample, slot(j), sampling.max_len))
            .collect(),
        FactorKind::FreeAbelian => {
            let root = bounded_word(sampling.seed, sample, slot(factor.rank()), sampling.max_len);
            (0..factor.rank())
                .map(|j| {
                    let mut rng = keyed_rng(sampling.seed, sample, slot(j));
                    root.pow(rng.random_range(-2..=2))
                })
                .collect()
        }
    }
}

/// For every factor `i` and sampled `ψ: Lᵢ → F(a, b)`, checks that `ψ ∘ pᵢ`
/// kills `relators`. Maps factoring through `G` kill every relator trivial in
/// `G`; maps with non-abelian image kill every na-equation of `G`.
pub fn check_factor_maps(
    ps: &ProductSubgroup,
    relators: &[Word],
    sampling: Sampling,
    exec: Execution,
) -> FactorMapReport {
    let n = ps.factors().len();
    let outcomes = exec.map(n * sampling.samples, |k| {
        let (i, sample) = (k / sampling.samples, (k % sampling.samples) as u64);
        let psi = factor_map(ps, i, sampling, sample);
        let composed: Vec<Word> = ps
            .project(i)
            .expect("valid factor index")
            .iter()
            .map(|c| c.substitute(&psi))
            .collect();
        let nonabelian = !is_abelian_tuple(&composed);
        let killed = relators.iter().all(|r| r.substitute(&composed).is_identity());
        let violation = (!killed).then_some(FactorMapViolation {
            factor: i,
            sample,
            nonabelian,
        });
        (nonabelian, violation)
    });
    FactorMapReport {
        tested: n * sampling.samples,
        nonabelian_count: outcomes.iter().filter(|(n, _)| *n).count(),
        violations: outcomes.into_iter().filter_map(|(_, v)| v).collect(),
    }
}
