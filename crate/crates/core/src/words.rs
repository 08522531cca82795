//! Reduced words in a finitely generated free group and the integral group
//! ring over it.
//!
//! Words store generator *indices* into an [`Alphabet`]; names only matter
//! for parsing and rendering. Every [`Word`] is kept freely reduced, so
//! structural equality is equality in the free group.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("malformed factor `{0}`")]
    MalformedFactor(String),
    #[error("group ring elements over different alphabets")]
    AlphabetMismatch,
}

/// A named free generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Result<Self, WordError> {
        if is_identifier(name) {
            Ok(Generator(Arc::from(name)))
        } else {
            Err(WordError::InvalidName(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Letters, digits and underscores, starting with a letter.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Ordered list of distinct generators of a free group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet(Arc<[Generator]>);

impl Alphabet {
    pub fn new(generators: Vec<Generator>) -> Result<Self, WordError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(WordError::DuplicateGenerator(g.to_string()));
            }
        }
        Ok(Alphabet(generators.into()))
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self, WordError> {
        let gens = names
            .iter()
            .map(|n| Generator::new(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(gens)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn get(&self, index: usize) -> &Generator {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|g| g.name() == name)
    }

    /// Parses whitespace-separated factors `name` or `name^k`. A lone `1`
    /// is the identity, as printed by [`Alphabet::render_word`].
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for factor in text.split_whitespace() {
            if factor == "1" {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((name, k)) => {
                    let k: i64 = k
                        .parse()
                        .map_err(|_| WordError::MalformedFactor(factor.to_string()))?;
                    if k == 0 {
                        return Err(WordError::MalformedFactor(factor.to_string()));
                    }
                    (name, k)
                }
                None => (factor, 1),
            };
            if !is_identifier(name) {
                return Err(WordError::MalformedFactor(factor.to_string()));
            }
            let generator = self
                .index_of(name)
                .ok_or_else(|| WordError::UndeclaredGenerator(name.to_string()))?;
            let letter = Letter {
                generator,
                inverse: exp < 0,
            };
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(Word::reduce(letters))
    }

    pub fn render_word(&self, word: &Word) -> String {
        if word.is_identity() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (generator, exp) in word.runs() {
            let name = self.get(generator).name();
            if exp == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
        }
        parts.join(" ")
    }
}

/// One letter `g` or `g⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![Letter::new(index, false)])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// `g^k` as a word.
    pub fn power(generator: usize, k: i64) -> Self {
        let letter = Letter::new(generator, k < 0);
        Word(vec![letter; k.unsigned_abs() as usize])
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

    pub fn multiply(&self, other: &Word) -> Word {
        // Cancellation only happens at the seam.
        let mut left = self.0.len();
        let mut right = 0;
        while left > 0 && right < other.0.len() && self.0[left - 1] == other.0[right].inv() {
            left -= 1;
            right += 1;
        }
        let mut letters = Vec::with_capacity(left + other.0.len() - right);
        letters.extend_from_slice(&self.0[..left]);
        letters.extend_from_slice(&other.0[right..]);
        Word(letters)
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.invert())
    }

    /// Maximal runs as `(generator, signed exponent)`.
    pub fn runs(&self) -> Vec<(usize, i64)> {
        let mut runs: Vec<(usize, i64)> = Vec::new();
        for l in &self.0 {
            match runs.last_mut() {
                Some((g, e)) if *g == l.generator && (*e > 0) == !l.inverse => *e += l.sign(),
                _ => runs.push((l.generator, l.sign())),
            }
        }
        runs
    }

    /// Exponent sum of each generator, indexed by generator.
    pub fn exponent_sums(&self, alphabet_len: usize) -> Vec<i64> {
        let mut sums = vec![0; alphabet_len];
        for l in &self.0 {
            sums[l.generator] += l.sign();
        }
        sums
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Replaces each generator by a word, reducing the result.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for l in &self.0 {
            let img = &images[l.generator];
            out = if l.inverse {
                out.multiply(&img.invert())
            } else {
                out.multiply(img)
            };
        }
        out
    }
}

/// Element of ℤ\[F\]: finite integer combination of reduced words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    alphabet: Alphabet,
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero(alphabet: &Alphabet) -> Self {
        GroupRingElement {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        Self::from_word(alphabet, Word::identity(), 1)
    }

    pub fn from_word(alphabet: &Alphabet, word: Word, coeff: i64) -> Self {
        let mut e = Self::zero(alphabet);
        e.add_term(word, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, i64)>>(alphabet: &Alphabet, terms: I) -> Self {
        let mut e = Self::zero(alphabet);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, word: &Word) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, word: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(word) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, WordError> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WordError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, WordError> {
        self.check(other)?;
        let mut out = Self::zero(&self.alphabet);
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.multiply(v), a * b);
            }
        }
        Ok(out)
    }

    /// Left multiplication by a single word.
    pub fn left_mul_word(&self, word: &Word) -> Self {
        Self::from_terms(
            &self.alphabet,
            self.terms().map(|(w, c)| (word.multiply(w), c)),
        )
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let body = self.alphabet.render_word(w);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag == 1 {
                out.push_str(&body);
            } else if w.is_identity() {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("{mag}*{body}"));
            }
        }
        out
    }

    fn check(&self, other: &Self) -> Result<(), WordError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(WordError::AlphabetMismatch)
        }
    }
}
