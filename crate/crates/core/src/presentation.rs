//! Finite presentations, integer Smith normal form and first Betti numbers.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// `⟨S | R⟩` with reduced, nonempty, pairwise distinct relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, dropping empty and repeated relators while
    /// keeping first occurrences in order.
    pub fn new<I: IntoIterator<Item = Word>>(generators: Alphabet, relators: I) -> Result<Self> {
        let mut p = Presentation {
            generators,
            relators: Vec::new(),
        };
        let mut seen = HashSet::new();
        for r in relators {
            p.generators.check(&r)?;
            if !r.is_identity() && seen.insert(r.clone()) {
                p.relators.push(r);
            }
        }
        Ok(p)
    }

    pub fn free(generators: Alphabet) -> Self {
        Presentation {
            generators,
            relators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &Alphabet {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn into_relators(self) -> Vec<Word> {
        self.relators
    }

    /// Returns a copy with `w` appended, unless it is empty or already listed.
    pub fn add_relator(&self, w: Word) -> Result<Presentation> {
        let mut p = self.clone();
        p.push_relator(w)?;
        Ok(p)
    }

    /// In-place variant of [`Presentation::add_relator`]; returns whether the
    /// relator list changed.
    pub fn push_relator(&mut self, w: Word) -> Result<bool> {
        self.generators.check(&w)?;
        if w.is_identity() || self.relators.contains(&w) {
            return Ok(false);
        }
        self.relators.push(w);
        Ok(true)
    }

    /// `|R| × |S|` matrix of exponent sums.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let cols = self.generators.len();
        let mut m = IntMatrix::zeros(self.relators.len(), cols);
        for (i, r) in self.relators.iter().enumerate() {
            for (j, e) in r.exponent_sums(cols).into_iter().enumerate() {
                m.set(i, j, BigInt::from(e));
            }
        }
        m
    }

    /// Torsion-free rank of the abelianization.
    pub fn b1(&self) -> usize {
        self.generators.len() - smith_normal_form(&self.abelianization_matrix()).rank
    }

    /// Parses the `gens …` / `rel …` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators: Option<Alphabet> = None;
        let mut relators = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = strip_comment(line);
            let mut parts = line.splitn(2, char::is_whitespace);
            let keyword = parts.next().unwrap_or("");
            let rest = parts.next().unwrap_or("").trim();
            match keyword {
                "" => {}
                "gens" => {
                    if generators.is_some() {
                        return Err(Error::parse(line_no, "duplicate `gens` line"));
                    }
                    let alphabet = Alphabet::new(rest.split_whitespace())
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    generators = Some(alphabet);
                }
                "rel" => {
                    let alphabet = generators
                        .as_ref()
                        .ok_or_else(|| Error::parse(line_no, "`rel` before `gens`"))?;
                    let w = alphabet
                        .parse_word(rest)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    relators.push(w);
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown keyword `{other}`")));
                }
            }
        }
        let generators = generators.ok_or_else(|| Error::parse(1, "missing `gens` line"))?;
        Presentation::new(generators, relators)
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens")?;
        for name in self.generators.names() {
            write!(f, " {name}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "rel {}", self.generators.format_word(r))?;
        }
        Ok(())
    }
}

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Precondition(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += q * row[src]`, touching columns `from..` only.
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for j in from..self.cols {
            let delta = q * self.get(src, j);
            self.data[dst * self.cols + j] += delta;
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for i in from..self.rows {
            let delta = q * self.get(i, src);
            self.data[i * self.cols + dst] += delta;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `d₁ | d₂ | …`, length `min(rows, cols)`, zeros last.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero invariant factors.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }
}

/// Smallest nonzero `|a[i][j]|` with `i, j >= k`, ties to lowest row then
/// column.
fn find_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows {
        for j in k..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let dim = a.rows.min(a.cols);
    let mut rank = 0;
    'outer: for k in 0..dim {
        loop {
            let Some((pi, pj)) = find_pivot(&a, k) else {
                break 'outer;
            };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            let pivot = a.get(k, k).clone();

            let mut remainder = false;
            for i in k + 1..a.rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let q = -(a.get(i, k) / &pivot);
                a.add_row_multiple(i, k, &q, k);
                remainder |= !a.get(i, k).is_zero();
            }
            for j in k + 1..a.cols {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let q = -(a.get(k, j) / &pivot);
                a.add_col_multiple(j, k, &q, k);
                remainder |= !a.get(k, j).is_zero();
            }
            if remainder {
                continue;
            }

            let offender = (k + 1..a.rows)
                .find(|&i| (k + 1..a.cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => a.add_row_multiple(k, i, &BigInt::from(1), k),
                None => break,
            }
        }
        rank += 1;
    }
    let diagonal = (0..dim).map(|k| a.get(k, k).abs()).collect();
    SmithForm { diagonal, rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn abelianization_examples() {
        let m = pres("gens a b\nrel a^-1 b^-1 a b\n").abelianization_matrix();
        assert_eq!(m, matrix(&[vec![0, 0]]));
        let m = pres("gens a\nrel a^3\n").abelianization_matrix();
        assert_eq!(m, matrix(&[vec![3]]));
        let m = pres("gens a b\nrel a^2 b^-1\nrel a b\n").abelianization_matrix();
        assert_eq!(m, matrix(&[vec![2, -1], vec![1, 1]]));
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&matrix(&[vec![2, 0], vec![0, 3]]));
        assert_eq!((s.diagonal, s.rank), (big(&[1, 6]), 2));
        let s = smith_normal_form(&matrix(&[vec![0]]));
        assert_eq!((s.diagonal, s.rank), (big(&[0]), 0));
        let s = smith_normal_form(&matrix(&[vec![2, 4], vec![1, 2]]));
        assert_eq!((s.diagonal, s.rank), (big(&[1, 0]), 1));
    }

    #[test]
    fn smith_of_empty_matrices() {
        let s = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert!(s.diagonal.is_empty());
        assert_eq!(s.rank, 0);
        let s = smith_normal_form(&IntMatrix::zeros(2, 0));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn smith_handles_large_intermediates() {
        // Entries far beyond i64 still reduce exactly.
        let huge = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let mut m = IntMatrix::zeros(2, 2);
        m.set(0, 0, huge.clone());
        m.set(0, 1, &huge + 1);
        m.set(1, 0, BigInt::from(3));
        let s = smith_normal_form(&m);
        assert_eq!(s.rank, 2);
        assert_eq!(s.diagonal[0], BigInt::from(1));
        assert_eq!(s.diagonal[1], BigInt::from(3) * (&huge + 1));
    }

    #[test]
    fn b1_examples() {
        assert_eq!(pres("gens a b\nrel a^-1 b^-1 a b\n").b1(), 2);
        assert_eq!(pres("gens a\nrel a^3\n").b1(), 0);
        let p = pres(
            "gens s1 s2 s3 s4\n\
             rel s1^-1 s3^-1 s1 s3\n\
             rel s2^-1 s4^-1 s2 s4\n\
             rel s1^-1 s2^-1 s4^-1 s2 s1 s3^-1 s1^-1 s2^-1 s4 s2 s1 s3\n",
        );
        assert_eq!(p.b1(), 4);
    }

    #[test]
    fn add_relator_examples() {
        let p = pres("gens s1 s2\nrel s1^-1 s2^-1 s1 s2\n");
        let w = p.generators().parse_word("s1 s2^-1").unwrap();
        let q = p.add_relator(w.clone()).unwrap();
        assert_eq!(q.relators().len(), 2);
        assert_eq!(q.relators()[1], w);
        assert_eq!(p.add_relator(Word::identity()).unwrap(), p);
        assert_eq!(q.add_relator(w).unwrap(), q);
        assert!(p.add_relator(Word::generator(5)).is_err());
    }

    #[test]
    fn construction_drops_duplicates_and_empties() {
        let s = Alphabet::numbered("s", 1);
        let p = Presentation::new(
            s,
            [Word::generator(0), Word::identity(), Word::generator(0)],
        )
        .unwrap();
        assert_eq!(p.relators(), &[Word::generator(0)]);
    }

    #[test]
    fn text_format_round_trip() {
        let text = "gens s1 s2\nrel s1 s2^-1\nrel s1^-1 s2^-1 s1 s2\n";
        let p = pres(text);
        assert_eq!(p.to_string(), text);
        let commented = "# header\ngens s1 s2 # names\n\nrel s1 s2^-1\nrel s1^-1 s2^-1 s1 s2 # commutator\n";
        assert_eq!(pres(commented).to_string(), text);
        assert_eq!(pres("gens\n").to_string(), "gens\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Presentation::parse("gens a\nrel b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = Presentation::parse("rel a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Presentation::parse("gens a\nfoo\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(Presentation::parse("# nothing\n").is_err());
    }
}
