//! Defining equations from a known first Betti number.
//!
//! The seed presentation has the same `RF_na` as `G` and maps onto `G`. Adding
//! trivial words of `G` keeps both properties, and once `b₁` of the presented
//! group matches `b₁(G)` its residually free quotient is `G` itself. The loop
//! cannot tell a wrong target from a slow enumeration, so it runs under an
//! explicit budget of scanned candidate words.

use crate::error::{Error, Result};
use crate::naeq::{commutator_set, conjugate_closure, factor_relator_sets, tilde_r, RelatorSet};
use crate::presentation::Presentation;
use crate::product::ProductSubgroup;
use crate::word::Word;

/// Which seed the loop started from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    /// `n' ≥ 2`: the nested commutator set.
    NestedCommutators,
    /// `n' = 1 < n`: `[R₁^{S₀}, R₁]`.
    Duplicated,
    /// `n = n' = 1`: the tuple presentation itself, no saturation.
    Direct,
    /// `n' = 0`: all `[sᵢ, sⱼ]`, `i < j`.
    Abelian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationReport {
    pub seed: Seed,
    pub seed_relator_count: usize,
    pub added_relators: Vec<Word>,
    /// `b₁` of the seed, then after every addition.
    pub b1_trace: Vec<usize>,
    pub terminated: bool,
    /// Candidate words examined by the enumeration.
    pub scanned: u64,
}

fn seed_presentation(ps: &ProductSubgroup) -> (Seed, Presentation) {
    let names = ps.names();
    let abelian = ps.abelian_indices();
    let surviving: Vec<usize> = (0..ps.factors().len())
        .filter(|i| !abelian.contains(i))
        .collect();
    let sets = factor_relator_sets(ps, &surviving);
    let (seed, relators) = match (sets.len(), ps.factors().len()) {
        (0, _) => {
            let k = names.len();
            let comms = (0..k).flat_map(|i| {
                (i + 1..k).map(move |j| Word::commutator(&Word::generator(i), &Word::generator(j)))
            });
            (Seed::Abelian, RelatorSet::new(comms))
        }
        (1, 1) => (Seed::Direct, sets[0].clone()),
        (1, _) => (
            Seed::Duplicated,
            commutator_set(&conjugate_closure(&sets[0], names), &sets[0]),
        ),
        _ => (
            Seed::NestedCommutators,
            tilde_r(&sets, names).expect("at least two surviving factors"),
        ),
    };
    let p = Presentation::new(names.clone(), relators.into_words())
        .expect("relators are over the names");
    (seed, p)
}

/// A finite presentation `⟨S | R⟩` with `RF(⟨S | R⟩) = G`, given `b₁(G)`.
///
/// `budget` bounds the number of candidate words scanned by the trivial-word
/// enumeration.
pub fn defining_equations(
    ps: &ProductSubgroup,
    b1_target: usize,
    budget: u64,
) -> Result<(Presentation, SaturationReport)> {
    let (seed, mut p) = seed_presentation(ps);
    let seed_b1 = p.b1();
    let mut report = SaturationReport {
        seed,
        seed_relator_count: p.relators().len(),
        added_relators: Vec::new(),
        b1_trace: vec![seed_b1],
        terminated: false,
        scanned: 0,
    };
    if seed_b1 < b1_target || (seed == Seed::Direct && seed_b1 != b1_target) {
        return Err(Error::InconsistentTarget {
            target: b1_target,
            seed_b1,
        });
    }
    if seed_b1 == b1_target {
        report.terminated = true;
        return Ok((p, report));
    }

    let mut stream = ps.trivial_words();
    let mut b1 = seed_b1;
    while b1 > b1_target {
        let Some(w) = stream.next_within(budget) else {
            report.scanned = stream.scanned();
            return Err(Error::BudgetExhausted {
                budget,
                target: b1_target,
                report: Box::new(report),
            });
        };
        debug_assert!(ps.is_trivial(&w));
        if p.push_relator(w.clone())? {
            b1 = p.b1();
            report.added_relators.push(w);
            report.b1_trace.push(b1);
        }
    }
    report.scanned = stream.scanned();
    report.terminated = true;
    Ok((p, report))
}
