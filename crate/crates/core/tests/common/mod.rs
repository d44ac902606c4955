#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rfeq::{Alphabet, Factor, GeneratorTuple, IntMatrix, Letter, ProductSubgroup, Word};

pub fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

/// Free reduction by repeated adjacent-pair deletion, independent of the
/// stack-based reduction used by the library.
pub fn naive_reduce(mut letters: Vec<Letter>) -> Vec<Letter> {
    loop {
        let hit = letters
            .windows(2)
            .position(|p| p[0] == p[1].inverse());
        match hit {
            Some(i) => {
                letters.drain(i..i + 2);
            }
            None => return letters,
        }
    }
}

pub fn random_letters<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| Letter::from_code(rng.random_range(0..2 * rank)))
        .collect()
}

/// A reduced word of length at most `max_len`.
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    loop {
        let w = Word::from_letters(random_letters(rng, rank, max_len));
        if w.len() <= max_len {
            return w;
        }
    }
}

pub fn free_factor() -> Factor {
    Factor::free(ab())
}

/// `⟨gens⟩ ⊂ F(a, b) × F(a, b)`.
pub fn f2xf2(gens: &[(Word, Word)]) -> ProductSubgroup {
    let tuples = gens
        .iter()
        .map(|(x, y)| GeneratorTuple {
            components: vec![x.clone(), y.clone()],
        })
        .collect();
    ProductSubgroup::new(vec![free_factor(), free_factor()], tuples).unwrap()
}

/// A random subgroup of `F₂ × F₂` with 2..=4 generators whose components have
/// length at most `max_len`, redrawn until both projections are non-abelian.
pub fn random_nonabelian_f2xf2<R: Rng>(rng: &mut R, max_len: usize) -> ProductSubgroup {
    loop {
        let k = rng.random_range(2..=4);
        let gens: Vec<(Word, Word)> = (0..k)
            .map(|_| (random_word(rng, 2, max_len), random_word(rng, 2, max_len)))
            .collect();
        let ps = f2xf2(&gens);
        if ps.abelian_indices().is_empty() {
            return ps;
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.random_range(0..=max_dim);
    let cols = rng.random_range(0..=max_dim);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(-bound..=bound)).collect())
        .collect();
    let mut m = IntMatrix::zeros(rows, cols);
    for (i, row) in data.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            m.set(i, j, BigInt::from(x));
        }
    }
    m
}

/// All reduced words over `rank` generators of length at most `max_len`,
/// built by extending words one letter at a time.
pub fn ball(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for code in 0..2 * rank {
                let l = Letter::from_code(code);
                if w.letters().last() == Some(&l.inverse()) {
                    continue;
                }
                let mut letters = w.letters().to_vec();
                letters.push(l);
                next.push(Word::from_letters(letters));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect()
}

/// Rank over ℚ by Gaussian elimination.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = to_rows(m)
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let delta = &f * &a[rank][j];
                    a[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
