//! Freely reduced words over a finite alphabet.
//!
//! A [`Word`] never stores an adjacent cancelling pair, so two words are equal
//! as group elements exactly when they are structurally equal. Words carry
//! generator indices only; the [`Alphabet`] is needed to parse and print them.
//!
//! Conventions used throughout the crate:
//!
//! * conjugation `r^s = s⁻¹ r s`
//! * commutator `[x, y] = x⁻¹ y⁻¹ x y`

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A generator or its inverse, packed as `2 * generator + inverse`.
///
/// The derived order is `s₁ < s₁⁻¹ < s₂ < s₂⁻¹ < …`, which is the letter order
/// used by the length-lex enumerations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Dense index in `0..2 * rank`, suitable for adjacency tables.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "x{}^-1", self.generator())
        } else {
            write!(f, "x{}", self.generator())
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![Letter::new(index, false)])
    }

    pub fn letter(letter: Letter) -> Self {
        Word(vec![letter])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out = Word::identity();
        for l in letters {
            out.push(l);
        }
        out
    }

    /// Like [`Word::from_letters`], but rejects letters outside an alphabet of
    /// the given size.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I, rank: usize) -> Result<Self> {
        let mut out = Word::identity();
        for l in letters {
            if l.generator() >= rank {
                return Err(Error::UnknownGenerator {
                    index: l.generator(),
                    size: rank,
                });
            }
            out.push(l);
        }
        Ok(out)
    }

    /// Appends a letter, cancelling against the last letter if needed.
    pub fn push(&mut self, letter: Letter) {
        if self.0.last() == Some(&letter.inverse()) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut out = self.clone();
        for &l in &other.0 {
            out.push(l);
        }
        out
    }

    /// `self^k`, negative exponents allowed.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `s⁻¹ self s`.
    pub fn conjugate(&self, by: &Word) -> Self {
        by.inverse().concat(self).concat(by)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    pub fn commutes(x: &Word, y: &Word) -> bool {
        Word::commutator(x, y).is_identity()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    /// Image under the homomorphism sending generator `i` to `images[i]`.
    ///
    /// # Panics
    ///
    /// Panics if the word uses a generator with no image.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &l in &self.0 {
            let image = &images[l.generator()];
            if l.is_inverse() {
                for &m in image.0.iter().rev() {
                    out.push(m.inverse());
                }
            } else {
                for &m in &image.0 {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Signed letter counts per generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for &l in &self.0 {
            sums[l.generator()] += l.sign();
        }
        sums
    }

    /// Abelian normal form `x₁^e₁ x₂^e₂ …` of a vector of exponents.
    pub fn from_exponents(exponents: &[i64]) -> Self {
        let mut out = Word::identity();
        for (g, &e) in exponents.iter().enumerate() {
            let l = Letter::new(g, e < 0);
            for _ in 0..e.unsigned_abs() {
                out.0.push(l);
            }
        }
        out
    }

    /// Strips matching letters from both ends; the result is conjugate to
    /// `self`.
    pub fn cyclically_reduced(&self) -> Self {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == self.0[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(self.0[lo..hi].to_vec())
    }

    /// Canonical representative of the relator `self` up to cyclic
    /// permutation and inversion: cyclically reduce, then take the
    /// lexicographically least rotation of the word or its inverse.
    pub fn canonical_relator(&self) -> Self {
        let base = self.cyclically_reduced();
        let n = base.len();
        if n == 0 {
            return base;
        }
        let inv = base.inverse();
        let mut best: Option<Vec<Letter>> = None;
        for w in [&base, &inv] {
            for r in 0..n {
                let rot: Vec<Letter> = w.0[r..].iter().chain(&w.0[..r]).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Word(best.unwrap_or_default())
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word::letter(l)
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

/// Ordered list of distinct generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Alphabet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if !valid_name(&name) {
                return Err(Error::Syntax(format!("invalid generator name `{name}`")));
            }
            if out.index.insert(name.clone(), out.names.len()).is_some() {
                return Err(Error::Syntax(format!("duplicate generator name `{name}`")));
            }
            out.names.push(name);
        }
        Ok(out)
    }

    /// `prefix1, prefix2, …, prefixK`.
    pub fn numbered(prefix: &str, count: usize) -> Self {
        Alphabet::new((1..=count).map(|i| format!("{prefix}{i}")))
            .expect("numbered names are valid and distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Checks that `w` only uses generators of this alphabet.
    pub fn check(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.len() => Err(Error::UnknownGenerator {
                index: g,
                size: self.len(),
            }),
            _ => Ok(()),
        }
    }

    /// Parses whitespace-separated tokens `name`, `name^-1`, `name^k` or `1`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Word::identity();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let k: i64 = exp
                        .parse()
                        .map_err(|_| Error::Syntax(format!("bad exponent in `{token}`")))?;
                    if k == 0 {
                        return Err(Error::Syntax(format!("zero exponent in `{token}`")));
                    }
                    (name, k)
                }
                None => (token, 1),
            };
            let g = self
                .index_of(name)
                .ok_or_else(|| Error::Syntax(format!("unknown generator `{name}`")))?;
            let l = Letter::new(g, exp < 0);
            for _ in 0..exp.unsigned_abs() {
                out.push(l);
            }
        }
        Ok(out)
    }

    /// Prints a word with maximal runs collapsed into powers, `1` for the
    /// identity. `parse_word(format_word(w)) == w` for every word over this
    /// alphabet.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign();
            let name = self.name(l.generator());
            parts.push(if run == 1 {
                name.to_string()
            } else {
                format!("{name}^{run}")
            });
            i = j;
        }
        parts.join(" ")
    }
}
