//! Exhaustive search for representations over ℤ/p on which every relator
//! vanishes.
//!
//! Candidates are tuples of invertible N×N matrices, one per generator.
//! Each matrix runs through its row-major entry tuples in lexicographic
//! order, and the tuple is an odometer whose last generator moves fastest.

use thiserror::Error;

use crate::coeff::{CoeffError, ModularField};
use crate::laurent::{LaurentRing, VariableSet};
use crate::matrices::LambdaMatrix;
use crate::presentation::AugmentedSystem;
use crate::rep::{validate_representation, PhiMap, Representation};
use crate::twisted::{alexander_lin, TwistedResult};
use crate::words::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("dimension must be positive")]
    ZeroDimension,
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub system: AugmentedSystem,
    pub dim: usize,
    pub modulus: u64,
    pub max_solutions: usize,
    pub max_candidates: u64,
    /// Keep only tuples with two non-commuting images.
    pub nonabelian: bool,
}

impl SearchSpec {
    pub fn new(system: AugmentedSystem, dim: usize, modulus: u64) -> Self {
        SearchSpec {
            system,
            dim,
            modulus,
            max_solutions: usize::MAX,
            max_candidates: 1_000_000,
            nonabelian: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchHit {
    /// Zero-based position of the tuple in the enumeration.
    pub index: u64,
    /// Row-major entries of each generator's image.
    pub matrices: Vec<Vec<u64>>,
    pub representation: Representation<ModularField>,
    pub is_abelian_image: bool,
    /// D over ℤ/p, when the system has one (n ≥ 1, m ≥ n).
    pub result: Option<TwistedResult<ModularField>>,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    /// Tuples examined.
    pub candidates: u64,
    /// Every tuple was examined.
    pub exhausted: bool,
    /// The candidate cap stopped the enumeration.
    pub capped: bool,
}

impl SearchOutcome {
    /// Stopped at the candidate cap rather than by exhaustion or the
    /// solution limit.
    pub fn is_partial(&self) -> bool {
        self.capped
    }
}

type Mat = Vec<u64>;

struct Arith {
    p: u64,
    n: usize,
}

impl Arith {
    fn identity(&self) -> Mat {
        (0..self.n * self.n)
            .map(|k| u64::from(k / self.n == k % self.n))
            .collect()
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % self.p;
                }
            }
        }
        out
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a, self.p - 2, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    /// Gauss-Jordan inverse, or `None` when singular.
    fn inverse(&self, m: &Mat) -> Option<Mat> {
        let n = self.n;
        let p = self.p;
        let mut a = m.clone();
        let mut inv = self.identity();
        for c in 0..n {
            let r = (c..n).find(|&r| a[r * n + c] != 0)?;
            for j in 0..n {
                a.swap(c * n + j, r * n + j);
                inv.swap(c * n + j, r * n + j);
            }
            let s = self.inv_scalar(a[c * n + c]);
            for j in 0..n {
                a[c * n + j] = a[c * n + j] * s % p;
                inv[c * n + j] = inv[c * n + j] * s % p;
            }
            for r in 0..n {
                let f = a[r * n + c];
                if r == c || f == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = (a[r * n + j] + (p - f) * a[c * n + j]) % p;
                    inv[r * n + j] = (inv[r * n + j] + (p - f) * inv[c * n + j]) % p;
                }
            }
        }
        Some(inv)
    }

    /// Next matrix in row-major lexicographic order, if any.
    fn increment(&self, m: &mut Mat) -> bool {
        for e in m.iter_mut().rev() {
            *e += 1;
            if *e < self.p {
                return true;
            }
            *e = 0;
        }
        false
    }

    /// Next invertible matrix strictly after `m`, with its inverse.
    fn next_invertible(&self, m: &mut Mat) -> Option<Mat> {
        while self.increment(m) {
            if let Some(inv) = self.inverse(m) {
                return Some(inv);
            }
        }
        None
    }

    fn first_invertible(&self) -> (Mat, Mat) {
        let mut m = vec![0; self.n * self.n];
        let inv = self.next_invertible(&mut m).expect("GL_N(p) is nonempty");
        (m, inv)
    }

    fn evaluate(&self, word: &Word, images: &[Mat], inverses: &[Mat]) -> Mat {
        word.letters().iter().fold(self.identity(), |acc, l| {
            let m = if l.inverse {
                &inverses[l.generator]
            } else {
                &images[l.generator]
            };
            self.mul(&acc, m)
        })
    }
}

/// Runs the enumeration described in the module docs.
pub fn search(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    let field = ModularField::new(spec.modulus)?;
    if spec.dim == 0 {
        return Err(SearchError::ZeroDimension);
    }
    let ar = Arith {
        p: spec.modulus,
        n: spec.dim,
    };
    let gens = spec.system.alphabet().len();
    let relators = spec.system.presentation().relators();
    let ring = LaurentRing::new(
        field,
        VariableSet::standard::<&str>(spec.system.d(), &[]).expect("standard names"),
    );
    let id = ar.identity();
    let (first, first_inv) = ar.first_invertible();
    let mut images = vec![first.clone(); gens];
    let mut inverses = vec![first_inv.clone(); gens];
    let mut outcome = SearchOutcome {
        hits: Vec::new(),
        candidates: 0,
        exhausted: false,
        capped: false,
    };
    if spec.max_solutions == 0 {
        return Ok(outcome);
    }
    loop {
        if outcome.candidates >= spec.max_candidates {
            outcome.capped = true;
            return Ok(outcome);
        }
        let index = outcome.candidates;
        outcome.candidates += 1;
        if relators.iter().all(|r| ar.evaluate(r, &images, &inverses) == id) {
            let is_abelian_image = (0..gens)
                .all(|i| (i + 1..gens).all(|j| ar.mul(&images[i], &images[j]) == ar.mul(&images[j], &images[i])));
            if !spec.nonabelian || !is_abelian_image {
                outcome
                    .hits
                    .push(make_hit(&spec.system, &ring, spec.dim, index, &images, is_abelian_image));
                if outcome.hits.len() >= spec.max_solutions {
                    return Ok(outcome);
                }
            }
        }
        // advance the odometer
        let mut g = gens;
        loop {
            if g == 0 {
                outcome.exhausted = true;
                return Ok(outcome);
            }
            g -= 1;
            if let Some(inv) = ar.next_invertible(&mut images[g]) {
                inverses[g] = inv;
                break;
            }
            images[g] = first.clone();
            inverses[g] = first_inv.clone();
        }
    }
}

fn make_hit(
    system: &AugmentedSystem,
    ring: &LaurentRing<ModularField>,
    dim: usize,
    index: u64,
    images: &[Mat],
    is_abelian_image: bool,
) -> SearchHit {
    let mats = images
        .iter()
        .map(|m| {
            let rows = m
                .chunks(dim)
                .map(|r| r.iter().map(|&e| ring.constant(e)).collect())
                .collect();
            LambdaMatrix::from_rows(ring, rows).expect("square")
        })
        .collect();
    let representation = Representation::new(ring, dim, mats).expect("invertible by construction");
    let result = PhiMap::new(system, &representation)
        .ok()
        .and_then(|phi| alexander_lin(&phi).ok());
    SearchHit {
        index,
        matrices: images.to_vec(),
        representation,
        is_abelian_image,
        result,
    }
}

/// Re-checks a hit through the Λ-matrix path: every image invertible and
/// every relator mapped to the identity.
pub fn revalidate(system: &AugmentedSystem, hit: &SearchHit) -> bool {
    validate_representation(system, &hit.representation).is_ok_and(|r| r.is_valid())
}
