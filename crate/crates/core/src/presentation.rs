//! Finite presentations, the epimorphism ε onto ℤ^d, and augmented group
//! systems `(G, ε, x)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::words::{Alphabet, Generator, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("ε must have positive rank")]
    ZeroRank,
    #[error("ε is defined on {found} generators, presentation has {expected}")]
    MissingImages { expected: usize, found: usize },
    #[error("ε({generator}) has length {found}, expected {expected}")]
    ImageLength {
        generator: String,
        expected: usize,
        found: usize,
    },
    #[error("relator {index} uses a generator outside the alphabet")]
    RelatorOutOfRange { index: usize },
    #[error("distinguished generator index {0} out of range")]
    DistinguishedOutOfRange(usize),
    #[error("ε({0}) is zero")]
    TrivialDistinguished(String),
    #[error("ε is not a homomorphism: relator {index} maps to {image:?}")]
    NotHomomorphism { index: usize, image: Vec<i64> },
    #[error("fewer relators ({m}) than non-distinguished generators ({n})")]
    Deficiency { m: usize, n: usize },
}

/// `⟨generators | relators⟩` with relators freely reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (index, r) in relators.iter().enumerate() {
            if r.max_generator().is_some_and(|g| g >= alphabet.len()) {
                return Err(PresentationError::RelatorOutOfRange { index });
            }
        }
        let relators = relators
            .into_iter()
            .map(|r| Word::reduce(r.letters().to_vec()))
            .collect();
        Ok(Presentation { alphabet, relators })
    }

    /// Convenience constructor from generator names and relator strings.
    pub fn parse<S: AsRef<str>>(generators: &[S], relators: &[&str]) -> Result<Self, PresentationError> {
        let alphabet = Alphabet::from_names(generators)?;
        let relators = relators
            .iter()
            .map(|r| alphabet.parse_word(r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(alphabet, relators)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }
}

/// Images of the generators in ℤ^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonMap {
    d: usize,
    images: Vec<Vec<i64>>,
}

impl EpsilonMap {
    pub fn new(d: usize, images: Vec<Vec<i64>>) -> Result<Self, PresentationError> {
        if d == 0 {
            return Err(PresentationError::ZeroRank);
        }
        for (i, img) in images.iter().enumerate() {
            if img.len() != d {
                return Err(PresentationError::ImageLength {
                    generator: format!("#{i}"),
                    expected: d,
                    found: img.len(),
                });
            }
        }
        Ok(EpsilonMap { d, images })
    }

    /// The d = 1 case from one integer per generator.
    pub fn scalar(images: &[i64]) -> Self {
        EpsilonMap {
            d: 1,
            images: images.iter().map(|&e| vec![e]).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn image(&self, generator: usize) -> &[i64] {
        &self.images[generator]
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    /// ε of a word: exponent-weighted sum of generator images.
    pub fn of_word(&self, word: &Word) -> Vec<i64> {
        let mut out = vec![0; self.d];
        for l in word.letters() {
            for (o, e) in out.iter_mut().zip(&self.images[l.generator]) {
                *o += l.sign() * e;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonReport {
    /// ε of every relator.
    pub relator_images: Vec<Vec<i64>>,
    /// Indices of relators with nonzero image.
    pub failing: Vec<usize>,
    /// Index of the image lattice in ℤ^d; `None` when it has lower rank.
    pub lattice_index: Option<BigInt>,
}

impl EpsilonReport {
    pub fn is_homomorphism(&self) -> bool {
        self.failing.is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        self.lattice_index.as_ref().is_some_and(|i| *i == BigInt::from(1))
    }
}

/// Checks that ε kills every relator and whether it is onto ℤ^d.
pub fn validate_epsilon(
    presentation: &Presentation,
    epsilon: &EpsilonMap,
) -> Result<EpsilonReport, PresentationError> {
    if epsilon.images.len() != presentation.num_generators() {
        return Err(PresentationError::MissingImages {
            expected: presentation.num_generators(),
            found: epsilon.images.len(),
        });
    }
    let relator_images: Vec<Vec<i64>> = presentation
        .relators
        .iter()
        .map(|r| epsilon.of_word(r))
        .collect();
    let failing = relator_images
        .iter()
        .enumerate()
        .filter(|(_, img)| img.iter().any(|&e| e != 0))
        .map(|(i, _)| i)
        .collect();
    Ok(EpsilonReport {
        relator_images,
        failing,
        lattice_index: lattice_index(&epsilon.images, epsilon.d),
    })
}

/// Index of the row lattice of `rows` in ℤ^d via Hermite-style row
/// reduction; `None` if the rows do not have rank d.
pub fn lattice_index(rows: &[Vec<i64>], d: usize) -> Option<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    let mut index = BigInt::from(1);
    let mut top = 0;
    for col in 0..d {
        // Euclid on column `col` among rows top.. until one nonzero remains
        loop {
            let pivot = (top..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by_key(|&i| m[i][col].abs());
            m.swap(top, pivot?);
            let mut done = true;
            for i in top + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[top][col]);
                let (head, tail) = m.split_at_mut(i);
                for (x, y) in tail[0][col..d].iter_mut().zip(&head[top][col..d]) {
                    *x -= &q * y;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        index *= m[top][col].abs();
        top += 1;
    }
    Some(index)
}

/// `(G, ε, x)` with `x` one of the presentation's generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedSystem {
    presentation: Presentation,
    epsilon: EpsilonMap,
    distinguished: usize,
}

impl AugmentedSystem {
    /// Validates ε on the relators and that ε(x) ≠ 0. The relator count is
    /// not checked here; see [`AugmentedSystem::check_deficiency`].
    pub fn new(
        presentation: Presentation,
        epsilon: EpsilonMap,
        distinguished: usize,
    ) -> Result<Self, PresentationError> {
        if distinguished >= presentation.num_generators() {
            return Err(PresentationError::DistinguishedOutOfRange(distinguished));
        }
        let report = validate_epsilon(&presentation, &epsilon)?;
        if let Some(&index) = report.failing.first() {
            return Err(PresentationError::NotHomomorphism {
                index,
                image: report.relator_images[index].clone(),
            });
        }
        if epsilon.image(distinguished).iter().all(|&e| e == 0) {
            return Err(PresentationError::TrivialDistinguished(
                presentation.alphabet.get(distinguished).to_string(),
            ));
        }
        Ok(AugmentedSystem {
            presentation,
            epsilon,
            distinguished,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.presentation.alphabet
    }

    pub fn epsilon(&self) -> &EpsilonMap {
        &self.epsilon
    }

    pub fn distinguished(&self) -> usize {
        self.distinguished
    }

    pub fn distinguished_generator(&self) -> &Generator {
        self.alphabet().get(self.distinguished)
    }

    /// Number of non-distinguished generators.
    pub fn n(&self) -> usize {
        self.presentation.num_generators() - 1
    }

    /// Number of relators.
    pub fn m(&self) -> usize {
        self.presentation.num_relators()
    }

    pub fn d(&self) -> usize {
        self.epsilon.d
    }

    /// Generator indices other than the distinguished one, in order.
    pub fn column_generators(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.presentation.num_generators()).filter(move |&g| g != self.distinguished)
    }

    pub fn check_deficiency(&self) -> Result<(), PresentationError> {
        if self.m() < self.n() {
            Err(PresentationError::Deficiency {
                m: self.m(),
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    pub fn epsilon_report(&self) -> EpsilonReport {
        validate_epsilon(&self.presentation, &self.epsilon).expect("validated at construction")
    }

    /// Same system with an extra relator (which must be a consequence of
    /// the others for the group to be unchanged).
    pub fn with_extra_relator(&self, relator: Word) -> Result<Self, PresentationError> {
        let mut relators = self.presentation.relators.clone();
        relators.push(relator);
        let p = Presentation::new(self.presentation.alphabet.clone(), relators)?;
        Self::new(p, self.epsilon.clone(), self.distinguished)
    }

    /// Tietze move: a new generator `name` with defining relator
    /// `name · word⁻¹`, and ε extended accordingly.
    pub fn with_new_generator(&self, name: &str, word: &Word) -> Result<Self, PresentationError> {
        let mut gens = self.presentation.alphabet.generators().to_vec();
        gens.push(Generator::new(name)?);
        let alphabet = Alphabet::new(gens)?;
        let y = alphabet.len() - 1;
        let mut relators = self.presentation.relators.clone();
        relators.push(Word::generator(y).multiply(&word.invert()));
        let mut images = self.epsilon.images.clone();
        images.push(self.epsilon.of_word(word));
        let p = Presentation::new(alphabet, relators)?;
        Self::new(p, EpsilonMap::new(self.epsilon.d, images)?, self.distinguished)
    }

    /// Relators reordered by `order` (a permutation of relator indices).
    pub fn with_relator_order(&self, order: &[usize]) -> Result<Self, PresentationError> {
        let relators = order
            .iter()
            .map(|&i| self.presentation.relators[i].clone())
            .collect();
        let p = Presentation::new(self.presentation.alphabet.clone(), relators)?;
        Self::new(p, self.epsilon.clone(), self.distinguished)
    }
}
