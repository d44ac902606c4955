//! Subgroups `G = ⟨S⟩` of a product `L₁ × … × Lₙ` of free and free-abelian
//! groups.
//!
//! Components in free-abelian factors are kept in abelian normal form
//! (`x₁^e₁ x₂^e₂ …`), so triviality of any component is a structural check and
//! the word problem of `G` is decided componentwise.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::free_subgroups::is_abelian_tuple;
use crate::presentation::strip_comment;
use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Free,
    FreeAbelian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub alphabet: Alphabet,
}

impl Factor {
    pub fn free(alphabet: Alphabet) -> Self {
        Factor {
            kind: FactorKind::Free,
            alphabet,
        }
    }

    pub fn free_abelian(alphabet: Alphabet) -> Self {
        Factor {
            kind: FactorKind::FreeAbelian,
            alphabet,
        }
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    /// Normal form of a word in this factor.
    pub fn normalize(&self, w: Word) -> Word {
        match self.kind {
            FactorKind::Free => w,
            FactorKind::FreeAbelian => Word::from_exponents(&w.exponent_sums(self.rank())),
        }
    }
}

/// One component per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorTuple {
    pub components: Vec<Word>,
}

impl GeneratorTuple {
    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(Word::is_identity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSubgroup {
    factors: Vec<Factor>,
    gens: Vec<GeneratorTuple>,
    names: Alphabet,
}

impl ProductSubgroup {
    /// Generators are named `s1, s2, …` in order.
    pub fn new(factors: Vec<Factor>, gens: Vec<GeneratorTuple>) -> Result<Self> {
        for (k, g) in gens.iter().enumerate() {
            if g.components.len() != factors.len() {
                return Err(Error::Precondition(format!(
                    "generator {} has {} components for {} factors",
                    k + 1,
                    g.components.len(),
                    factors.len()
                )));
            }
        }
        let gens = gens
            .into_iter()
            .map(|g| {
                let components = g
                    .components
                    .into_iter()
                    .zip(&factors)
                    .map(|(w, f)| {
                        f.alphabet.check(&w)?;
                        Ok(f.normalize(w))
                    })
                    .collect::<Result<_>>()?;
                Ok(GeneratorTuple { components })
            })
            .collect::<Result<Vec<_>>>()?;
        let names = Alphabet::numbered("s", gens.len());
        Ok(ProductSubgroup {
            factors,
            gens,
            names,
        })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn gens(&self) -> &[GeneratorTuple] {
        &self.gens
    }

    pub fn names(&self) -> &Alphabet {
        &self.names
    }

    /// `pᵢ(S)`, in generator order. `index` is zero-based.
    pub fn project(&self, index: usize) -> Result<Vec<Word>> {
        if index >= self.factors.len() {
            return Err(Error::FactorIndex {
                index,
                count: self.factors.len(),
            });
        }
        Ok(self
            .gens
            .iter()
            .map(|g| g.components[index].clone())
            .collect())
    }

    /// Factors whose projection of `G` is abelian.
    pub fn abelian_indices(&self) -> BTreeSet<usize> {
        (0..self.factors.len())
            .filter(|&i| match self.factors[i].kind {
                FactorKind::FreeAbelian => true,
                FactorKind::Free => {
                    let p: Vec<Word> = self.gens.iter().map(|g| g.components[i].clone()).collect();
                    is_abelian_tuple(&p)
                }
            })
            .collect()
    }

    /// Image of `G` in the product of the factors with non-abelian projection.
    pub fn nonabelian_restriction(&self) -> ProductSubgroup {
        let dropped = self.abelian_indices();
        let keep: Vec<usize> = (0..self.factors.len())
            .filter(|i| !dropped.contains(i))
            .collect();
        ProductSubgroup {
            factors: keep.iter().map(|&i| self.factors[i].clone()).collect(),
            gens: self
                .gens
                .iter()
                .map(|g| GeneratorTuple {
                    components: keep.iter().map(|&i| g.components[i].clone()).collect(),
                })
                .collect(),
            names: self.names.clone(),
        }
    }

    /// Image of a word over `S` in `L`.
    pub fn evaluate(&self, w: &Word) -> GeneratorTuple {
        let components = (0..self.factors.len())
            .map(|i| self.evaluate_component(i, w))
            .collect();
        GeneratorTuple { components }
    }

    fn evaluate_component(&self, i: usize, w: &Word) -> Word {
        let factor = &self.factors[i];
        match factor.kind {
            FactorKind::Free => {
                let mut out = Word::identity();
                for l in w.letters() {
                    let c = &self.gens[l.generator()].components[i];
                    if l.is_inverse() {
                        for &m in c.letters().iter().rev() {
                            out.push(m.inverse());
                        }
                    } else {
                        for &m in c.letters() {
                            out.push(m);
                        }
                    }
                }
                out
            }
            FactorKind::FreeAbelian => {
                let mut sums = vec![0i64; factor.rank()];
                for l in w.letters() {
                    let c = &self.gens[l.generator()].components[i];
                    for m in c.letters() {
                        sums[m.generator()] += l.sign() * m.sign();
                    }
                }
                Word::from_exponents(&sums)
            }
        }
    }

    /// Decides `w = 1` in `G`.
    pub fn is_trivial(&self, w: &Word) -> bool {
        (0..self.factors.len()).all(|i| self.evaluate_component(i, w).is_identity())
    }

    /// Whether `w` lies in the centre of `G`: trivial in every coordinate with
    /// non-abelian projection.
    pub fn is_central(&self, w: &Word) -> bool {
        let abelian = self.abelian_indices();
        (0..self.factors.len())
            .filter(|i| !abelian.contains(i))
            .all(|i| self.evaluate_component(i, w).is_identity())
    }

    /// The nonempty reduced words over `S` that are trivial in `G`, in
    /// length-lex order.
    pub fn trivial_words(&self) -> TrivialWords<'_> {
        TrivialWords {
            group: self,
            words: ReducedWords::new(self.names.len()),
            scanned: 0,
        }
    }

    /// Parses the `factor …` / `gen …` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut gens = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = strip_comment(line);
            let mut parts = line.splitn(2, char::is_whitespace);
            let keyword = parts.next().unwrap_or("");
            let rest = parts.next().unwrap_or("").trim();
            match keyword {
                "" => {}
                "factor" => {
                    if !gens.is_empty() {
                        return Err(Error::parse(line_no, "`factor` after `gen`"));
                    }
                    let mut tokens = rest.split_whitespace();
                    let kind = match tokens.next() {
                        Some("free") => FactorKind::Free,
                        Some("abelian") => FactorKind::FreeAbelian,
                        other => {
                            return Err(Error::parse(
                                line_no,
                                format!("expected `free` or `abelian`, found {:?}", other.unwrap_or("")),
                            ))
                        }
                    };
                    let alphabet =
                        Alphabet::new(tokens).map_err(|e| Error::parse(line_no, e.to_string()))?;
                    factors.push(Factor { kind, alphabet });
                }
                "gen" => {
                    let pieces: Vec<&str> = if factors.is_empty() && rest.is_empty() {
                        Vec::new()
                    } else {
                        rest.split('|').collect()
                    };
                    if pieces.len() != factors.len() {
                        return Err(Error::parse(
                            line_no,
                            format!("expected {} components, found {}", factors.len(), pieces.len()),
                        ));
                    }
                    let components = pieces
                        .iter()
                        .zip(&factors)
                        .map(|(piece, f)| {
                            if piece.trim().is_empty() {
                                return Err(Error::parse(line_no, "empty component (use `1`)"));
                            }
                            f.alphabet
                                .parse_word(piece)
                                .map_err(|e| Error::parse(line_no, e.to_string()))
                        })
                        .collect::<Result<_>>()?;
                    gens.push(GeneratorTuple { components });
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown keyword `{other}`")));
                }
            }
        }
        ProductSubgroup::new(factors, gens)
    }
}

impl fmt::Display for ProductSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            let kind = match factor.kind {
                FactorKind::Free => "free",
                FactorKind::FreeAbelian => "abelian",
            };
            write!(f, "factor {kind}")?;
            for name in factor.alphabet.names() {
                write!(f, " {name}")?;
            }
            writeln!(f)?;
        }
        for g in &self.gens {
            let parts: Vec<String> = g
                .components
                .iter()
                .zip(&self.factors)
                .map(|(w, factor)| factor.alphabet.format_word(w))
                .collect();
            writeln!(f, "gen {}", parts.join(" | "))?;
        }
        Ok(())
    }
}

/// All reduced words over an alphabet of the given rank, in length-lex order
/// (`s₁ < s₁⁻¹ < s₂ < …` within a length), starting with the empty word.
#[derive(Clone, Debug)]
pub struct ReducedWords {
    rank: usize,
    current: Option<Vec<Letter>>,
}

impl ReducedWords {
    pub fn new(rank: usize) -> Self {
        ReducedWords {
            rank,
            current: Some(Vec::new()),
        }
    }

    /// Smallest letter at position `pos` compatible with `prev`, at least
    /// `from`.
    fn next_letter(&self, prev: Option<Letter>, from: usize) -> Option<Letter> {
        (from..2 * self.rank)
            .map(Letter::from_code)
            .find(|&l| prev != Some(l.inverse()))
    }

    fn fill_from(&self, letters: &mut Vec<Letter>, len: usize) {
        while letters.len() < len {
            let prev = letters.last().copied();
            let l = self.next_letter(prev, 0).expect("rank >= 1");
            letters.push(l);
        }
    }

    fn advance(&self, mut letters: Vec<Letter>) -> Option<Vec<Letter>> {
        if self.rank == 0 {
            return None;
        }
        let len = letters.len();
        while let Some(last) = letters.pop() {
            let prev = letters.last().copied();
            if let Some(l) = self.next_letter(prev, last.code() + 1) {
                letters.push(l);
                self.fill_from(&mut letters, len);
                return Some(letters);
            }
        }
        self.fill_from(&mut letters, len + 1);
        Some(letters)
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let letters = self.current.take()?;
        let word = Word::from_letters(letters.iter().copied());
        self.current = self.advance(letters);
        Some(word)
    }
}

/// Stream of nonempty trivial words of a [`ProductSubgroup`].
///
/// Confined to one consumer; [`TrivialWords::scanned`] counts every candidate
/// word examined so far, trivial or not.
pub struct TrivialWords<'a> {
    group: &'a ProductSubgroup,
    words: ReducedWords,
    scanned: u64,
}

impl TrivialWords<'_> {
    pub fn scanned(&self) -> u64 {
        self.scanned
    }

    /// Next trivial word, examining at most `limit` candidates in total
    /// (counted from the start of the stream).
    pub fn next_within(&mut self, limit: u64) -> Option<Word> {
        while self.scanned < limit {
            let w = self.words.next()?;
            if w.is_identity() {
                continue;
            }
            self.scanned += 1;
            if self.group.is_trivial(&w) {
                return Some(w);
            }
        }
        None
    }
}

impl Iterator for TrivialWords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        self.next_within(u64::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subgroup(text: &str) -> ProductSubgroup {
        ProductSubgroup::parse(text).unwrap()
    }

    fn word(ps: &ProductSubgroup, text: &str) -> Word {
        ps.names().parse_word(text).unwrap()
    }

    const DIAGONAL: &str = "factor free a b\nfactor free a b\ngen a | a\ngen b | b\n";

    #[test]
    fn projections() {
        let ps = subgroup(DIAGONAL);
        let p = ps.project(0).unwrap();
        assert_eq!(p, vec![Word::generator(0), Word::generator(1)]);
        let ps = subgroup("factor free a b\nfactor abelian x\ngen a | x\ngen b | 1\n");
        assert_eq!(ps.project(1).unwrap(), vec![Word::generator(0), Word::identity()]);
        assert!(ps.project(2).is_err());
        let ps = subgroup("factor free a b\n");
        assert!(ps.project(0).unwrap().is_empty());
    }

    #[test]
    fn abelian_index_detection() {
        assert!(subgroup(DIAGONAL).abelian_indices().is_empty());
        let ps = subgroup("factor free a b\nfactor abelian x\ngen a | x\ngen b | x\n");
        assert_eq!(ps.abelian_indices(), BTreeSet::from([1]));
        let ps = subgroup("factor free a b\nfactor free a b\ngen a | a\ngen a^2 | a^-1\n");
        assert_eq!(ps.abelian_indices(), BTreeSet::from([0, 1]));
    }

    #[test]
    fn restriction() {
        let ps = subgroup("factor free a b\nfactor abelian x\ngen a | x\ngen b | x\n");
        let r = ps.nonabelian_restriction();
        assert_eq!(r, subgroup("factor free a b\ngen a\ngen b\n"));
        let d = subgroup(DIAGONAL);
        assert_eq!(d.nonabelian_restriction(), d);
        let ps = subgroup("factor free a b\nfactor abelian x\ngen a | x\ngen a^2 | 1\n");
        let r = ps.nonabelian_restriction();
        assert!(r.factors().is_empty());
        assert_eq!(r.gens().len(), 2);
        assert!(r.is_trivial(&word(&r, "s1")));
    }

    #[test]
    fn evaluation() {
        let ps = subgroup(DIAGONAL);
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let e = ps.evaluate(&word(&ps, "s1 s2"));
        let ab_word = ab.parse_word("a b").unwrap();
        assert_eq!(e.components, vec![ab_word.clone(), ab_word]);

        let ps = subgroup("factor abelian x y\ngen x y^2\ngen y^-1 x^3\n");
        let e = ps.evaluate(&word(&ps, "s1^-1 s2^-1 s1 s2"));
        assert!(e.is_trivial());

        let ps = subgroup("factor free a b\nfactor abelian x\ngen a | x\ngen a | 1\n");
        let e = ps.evaluate(&word(&ps, "s1 s2^-1"));
        assert_eq!(e.components, vec![Word::identity(), Word::generator(0)]);
    }

    #[test]
    fn abelian_components_are_normalized() {
        let ps = subgroup("factor abelian x y\ngen y x y^-1 x\n");
        assert_eq!(ps.gens()[0].components[0], Word::from_exponents(&[2, 0]));
        assert_eq!(ps.to_string(), "factor abelian x y\ngen x^2\n");
    }

    #[test]
    fn triviality() {
        let ps = subgroup("factor abelian x\ngen x\ngen x\n");
        assert!(ps.is_trivial(&word(&ps, "s1 s2^-1")));
        let ps = subgroup("factor free a b\nfactor free a b\ngen a | a\n");
        assert!(!ps.is_trivial(&word(&ps, "s1")));
        assert!(ps.is_trivial(&Word::identity()));
    }

    #[test]
    fn centrality() {
        let ps = subgroup("factor free a b\nfactor abelian x y\ngen a | x\ngen b | 1\ngen 1 | y\n");
        assert!(ps.is_central(&word(&ps, "s3")));
        assert!(!ps.is_central(&word(&ps, "s1")));
        let d = subgroup(DIAGONAL);
        assert!(!d.is_central(&word(&d, "s1")));
        assert!(d.is_central(&Word::identity()));
    }

    #[test]
    fn reduced_words_in_length_lex_order() {
        let s = Alphabet::numbered("s", 2);
        let shown: Vec<String> = ReducedWords::new(2)
            .take(9)
            .map(|w| s.format_word(&w))
            .collect();
        assert_eq!(
            shown,
            ["1", "s1", "s1^-1", "s2", "s2^-1", "s1^2", "s1 s2", "s1 s2^-1", "s1^-2"]
        );
        // 1 + 4 + 12 + 36 words of length <= 3.
        assert_eq!(ReducedWords::new(2).take_while(|w| w.len() <= 3).count(), 53);
        assert_eq!(ReducedWords::new(0).count(), 1);
    }

    #[test]
    fn first_trivial_words() {
        let ps = subgroup("factor abelian x\ngen x\ngen x\n");
        let first = ps.trivial_words().next().unwrap();
        assert_eq!(ps.names().format_word(&first), "s1 s2^-1");

        let ps = subgroup(DIAGONAL);
        let mut stream = ps.trivial_words();
        assert_eq!(stream.next_within(5000), None);
        assert_eq!(stream.scanned(), 5000);

        // Independent scan: the shortest trivial word of F₂ × F₂ ∋ (a,1),(1,b)
        // is the commutator of s1^±1 and s2^±1, in lex order first.
        let ps = subgroup("factor free a b\nfactor free a b\ngen a | 1\ngen 1 | b\n");
        let first = ps.trivial_words().next().unwrap();
        let brute = ReducedWords::new(2)
            .skip(1)
            .find(|w| {
                let e = ps.evaluate(w);
                e.components.iter().all(Word::is_identity)
            })
            .unwrap();
        assert_eq!(first, brute);
        assert_eq!(first.len(), 4);
        assert_eq!(ps.names().format_word(&first), "s1 s2 s1^-1 s2^-1");
    }

    #[test]
    fn parse_errors() {
        let err = ProductSubgroup::parse("factor free a\ngen a | a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = ProductSubgroup::parse("factor weird a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = ProductSubgroup::parse("factor free a\ngen b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = ProductSubgroup::parse("gen 1\nfactor free a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn text_round_trip() {
        let text = "factor free a b\nfactor abelian x y\ngen a b^-1 | x^2 y^-1\ngen 1 | 1\n";
        assert_eq!(subgroup(text).to_string(), text);
    }
}
