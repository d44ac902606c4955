mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rfeq::{smith_normal_form, IntMatrix, Presentation, Word};

use common::{random_matrix, rational_rank, to_rows};

fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for j in c..n {
                let delta = &f * &a[c][j];
                a[r][j] -= delta;
            }
        }
    }
    d
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k = D_k / D_{k-1}` with `D_k` the gcd of all `k × k` minors.
fn determinantal_factors(m: &IntMatrix) -> Vec<BigInt> {
    let rows = to_rows(m);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<BigRational>> = rs
                    .iter()
                    .map(|&i| {
                        cs.iter()
                            .map(|&j| BigRational::from_integer(rows[i][j].clone()))
                            .collect()
                    })
                    .collect();
                g = g.gcd(&det(minor).to_integer());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..=4, 0usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
            .prop_map(move |rows| {
                let rows: Vec<Vec<BigInt>> = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect();
                from_rows(&rows, c)
            })
    })
}

fn divisibility_chain(d: &[BigInt]) -> bool {
    d.iter().all(|x| x.is_positive()) && d.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_matches_rational_elimination(m in small_matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.rank, rational_rank(&m));
        prop_assert!(divisibility_chain(snf.invariant_factors()));
        prop_assert!(snf.diagonal[snf.rank..].iter().all(Zero::is_zero));
    }

    #[test]
    fn diagonal_matches_determinantal_divisors(m in small_matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.invariant_factors().to_vec(), determinantal_factors(&m));
    }

    #[test]
    fn invariant_under_unimodular_operations(
        m in small_matrix(),
        ops in proptest::collection::vec((0usize..4, 0usize..4, -3i64..=3, any::<bool>()), 0..12),
    ) {
        let mut rows = to_rows(&m);
        let cols = m.cols();
        for (i, j, k, on_rows) in ops {
            if on_rows && rows.len() > 1 {
                let (i, j) = (i % rows.len(), j % rows.len());
                if i != j {
                    for c in 0..cols {
                        let x = &rows[j][c] * k;
                        rows[i][c] += x;
                    }
                }
            } else if !on_rows && cols > 1 {
                let (i, j) = (i % cols, j % cols);
                if i != j {
                    for r in rows.iter_mut() {
                        let x = &r[j] * k;
                        r[i] += x;
                    }
                }
            }
        }
        let moved = from_rows(&rows, cols);
        prop_assert_eq!(
            smith_normal_form(&moved).invariant_factors().to_vec(),
            smith_normal_form(&m).invariant_factors().to_vec()
        );
    }
}

#[test]
fn random_eight_by_eight_against_rational_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let m = random_matrix(&mut rng, 8, 9);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, rational_rank(&m));
        assert!(divisibility_chain(snf.invariant_factors()));
    }
}

#[test]
fn presentation_b1_is_generators_minus_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..100 {
        let k = 1 + rand::Rng::random_range(&mut rng, 0..5);
        let names = rfeq::Alphabet::numbered("s", k);
        let count = rand::Rng::random_range(&mut rng, 0..6);
        let relators: Vec<Word> = (0..count).map(|_| common::random_word(&mut rng, k, 8)).collect();
        let p = Presentation::new(names, relators).unwrap();
        assert_eq!(p.b1(), k - rational_rank(&p.abelianization_matrix()));
    }
}
