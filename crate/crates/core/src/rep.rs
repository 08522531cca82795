//! Representations γ and the induced map Φ = γ ⊗ ε from ℤ[F] to matrices
//! over Λ.

use thiserror::Error;

use crate::coeff::CoeffDomain;
use crate::laurent::{LaurentPoly, LaurentRing};
use crate::matrices::{LambdaMatrix, MatrixError};
use crate::presentation::AugmentedSystem;
use crate::words::{GroupRingElement, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("representation dimension must be positive")]
    ZeroDimension,
    #[error("image of generator {generator} is {rows}×{cols}, expected {dim}×{dim}")]
    ImageShape {
        generator: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("representation has {found} images, system has {expected} generators")]
    ImageCount { expected: usize, found: usize },
    #[error("image of generator {generator} involves an ε-graded variable")]
    GradedEntry { generator: usize },
    #[error("representation ring has {found} graded variables, ε has rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("γ({generator}) is not invertible: determinant {det}")]
    NotInvertible { generator: String, det: String },
    #[error("γ maps relator {index} ({relator}) to a non-identity matrix")]
    RelatorNotIdentity { index: usize, relator: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `γ`: one N×N matrix per generator. Entries live in Λ but may only
/// involve parameter variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<R: CoeffDomain> {
    ring: LaurentRing<R>,
    dim: usize,
    images: Vec<LambdaMatrix<R>>,
    inverses: Vec<Option<LambdaMatrix<R>>>,
}

impl<R: CoeffDomain> Representation<R> {
    /// Checks shapes and gradings; inverses are computed for every image
    /// whose determinant is a unit.
    pub fn new(ring: &LaurentRing<R>, dim: usize, images: Vec<LambdaMatrix<R>>) -> Result<Self, RepError> {
        if dim == 0 {
            return Err(RepError::ZeroDimension);
        }
        let graded = ring.vars().t_count();
        for (generator, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(RepError::ImageShape {
                    generator,
                    rows: m.rows(),
                    cols: m.cols(),
                    dim,
                });
            }
            if m.entries().iter().any(|e| (0..graded).any(|v| e.involves(v))) {
                return Err(RepError::GradedEntry { generator });
            }
        }
        let inverses = images.iter().map(|m| m.inverse().ok()).collect();
        Ok(Representation {
            ring: ring.clone(),
            dim,
            images,
            inverses,
        })
    }

    /// The representation sending every generator to the identity.
    pub fn trivial(ring: &LaurentRing<R>, dim: usize, generators: usize) -> Self {
        let id = LambdaMatrix::identity(ring, dim);
        Representation::new(ring, dim, vec![id; generators]).expect("identity images are valid")
    }

    pub fn ring(&self) -> &LaurentRing<R> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_images(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, generator: usize) -> &LambdaMatrix<R> {
        &self.images[generator]
    }

    pub fn images(&self) -> &[LambdaMatrix<R>] {
        &self.images
    }

    pub fn inverse_image(&self, generator: usize) -> Option<&LambdaMatrix<R>> {
        self.inverses[generator].as_ref()
    }

    /// γ(w), or `None` if `w` uses the inverse of a non-invertible image.
    pub fn of_word(&self, word: &Word) -> Option<LambdaMatrix<R>> {
        let mut acc = LambdaMatrix::identity(&self.ring, self.dim);
        for l in word.letters() {
            let m = if l.inverse {
                self.inverses[l.generator].as_ref()?
            } else {
                &self.images[l.generator]
            };
            acc = acc.mul(m).expect("square images");
        }
        Some(acc)
    }
}

/// Outcome of checking γ against a system.
#[derive(Debug, Clone, PartialEq)]
pub struct RepReport<R: CoeffDomain> {
    /// Generators whose image has a non-unit determinant, with it.
    pub non_invertible: Vec<(usize, LaurentPoly<R>)>,
    /// Relators with γ(r) ≠ I, with the product.
    pub failing_relators: Vec<(usize, LambdaMatrix<R>)>,
}

impl<R: CoeffDomain> RepReport<R> {
    pub fn is_valid(&self) -> bool {
        self.non_invertible.is_empty() && self.failing_relators.is_empty()
    }
}

/// Checks invertibility of every image and γ(r) = I for every relator.
/// Relators are only evaluated once all images are invertible.
pub fn validate_representation<R: CoeffDomain>(
    sys: &AugmentedSystem,
    rep: &Representation<R>,
) -> Result<RepReport<R>, RepError> {
    let expected = sys.alphabet().len();
    if rep.num_images() != expected {
        return Err(RepError::ImageCount {
            expected,
            found: rep.num_images(),
        });
    }
    let mut report = RepReport {
        non_invertible: Vec::new(),
        failing_relators: Vec::new(),
    };
    for (g, inv) in rep.inverses.iter().enumerate() {
        if inv.is_none() {
            report.non_invertible.push((g, rep.images[g].determinant()?));
        }
    }
    if !report.non_invertible.is_empty() {
        return Ok(report);
    }
    for (i, r) in sys.presentation().relators().iter().enumerate() {
        let product = rep.of_word(r).expect("all images invertible");
        if !product.is_identity() {
            report.failing_relators.push((i, product));
        }
    }
    Ok(report)
}

/// Φ = γ ⊗ ε for a validated pair.
#[derive(Debug, Clone)]
pub struct PhiMap<R: CoeffDomain> {
    system: AugmentedSystem,
    rep: Representation<R>,
    // Φ(g) and Φ(g⁻¹) per generator
    letters: Vec<(LambdaMatrix<R>, LambdaMatrix<R>)>,
}

impl<R: CoeffDomain> PhiMap<R> {
    pub fn new(system: &AugmentedSystem, rep: &Representation<R>) -> Result<Self, RepError> {
        let found = rep.ring().vars().t_count();
        if found != system.d() {
            return Err(RepError::RankMismatch {
                expected: system.d(),
                found,
            });
        }
        let report = validate_representation(system, rep)?;
        if let Some((g, det)) = report.non_invertible.first() {
            return Err(RepError::NotInvertible {
                generator: system.alphabet().get(*g).to_string(),
                det: det.render(),
            });
        }
        if let Some((index, _)) = report.failing_relators.first() {
            return Err(RepError::RelatorNotIdentity {
                index: *index,
                relator: system
                    .alphabet()
                    .render_word(&system.presentation().relators()[*index]),
            });
        }
        let ring = rep.ring();
        let letters = (0..system.alphabet().len())
            .map(|g| {
                let t = grading_monomial(ring, system.epsilon().image(g), 1);
                let t_inv = grading_monomial(ring, system.epsilon().image(g), -1);
                let inv = rep.inverse_image(g).expect("validated");
                (rep.image(g).scale(&t), inv.scale(&t_inv))
            })
            .collect();
        Ok(PhiMap {
            system: system.clone(),
            rep: rep.clone(),
            letters,
        })
    }

    pub fn system(&self) -> &AugmentedSystem {
        &self.system
    }

    pub fn rep(&self) -> &Representation<R> {
        &self.rep
    }

    pub fn ring(&self) -> &LaurentRing<R> {
        self.rep.ring()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn of_letter(&self, l: Letter) -> &LambdaMatrix<R> {
        let (pos, neg) = &self.letters[l.generator];
        if l.inverse {
            neg
        } else {
            pos
        }
    }

    pub fn of_word(&self, word: &Word) -> LambdaMatrix<R> {
        word.letters()
            .iter()
            .fold(LambdaMatrix::identity(self.ring(), self.dim()), |acc, &l| {
                acc.mul(self.of_letter(l)).expect("square")
            })
    }

    /// Φ extended linearly to ℤ[F].
    pub fn phi(&self, e: &GroupRingElement) -> LambdaMatrix<R> {
        let mut acc = LambdaMatrix::zeros(self.ring(), self.dim(), self.dim());
        for (w, c) in e.terms() {
            let m = self.of_word(w).scale(&self.ring().from_i64(c));
            acc = acc.add(&m).expect("square");
        }
        acc
    }

    /// Φ(∂w/∂g) from prefix products, without forming the derivative.
    pub fn fox_image(&self, word: &Word, generator: usize) -> LambdaMatrix<R> {
        let mut acc = LambdaMatrix::zeros(self.ring(), self.dim(), self.dim());
        let mut prefix = LambdaMatrix::identity(self.ring(), self.dim());
        for &l in word.letters() {
            let next = prefix.mul(self.of_letter(l)).expect("square");
            if l.generator == generator {
                acc = if l.inverse {
                    acc.sub(&next)
                } else {
                    acc.add(&prefix)
                }
                .expect("square");
            }
            prefix = next;
        }
        acc
    }
}

/// `t^(sign·v)` in the graded variables of `ring`.
fn grading_monomial<R: CoeffDomain>(ring: &LaurentRing<R>, v: &[i64], sign: i64) -> LaurentPoly<R> {
    let mut exps = vec![0i32; ring.nvars()];
    for (e, &k) in exps.iter_mut().zip(v) {
        *e = i32::try_from(sign * k).expect("ε exponent fits in i32");
    }
    ring.monomial(exps, ring.domain().one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Cyclotomic, Integers};
    use crate::foxcalc::fox_derivative;
    use crate::laurent::VariableSet;
    use crate::presentation::{EpsilonMap, Presentation};
    use proptest::prelude::*;

    fn example2() -> (AugmentedSystem, Representation<Integers>) {
        let p = Presentation::parse(&["x", "a"], &["x^2 a x^-2 a^2 x a^-1 x^-1 a^-1"]).unwrap();
        let sys = AugmentedSystem::new(p, EpsilonMap::scalar(&[1, 0]), 0).unwrap();
        let ring = LaurentRing::univariate(Integers);
        let x = LambdaMatrix::from_ints(&ring, &[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]).unwrap();
        let a = LambdaMatrix::from_ints(&ring, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        (sys, Representation::new(&ring, 3, vec![x, a]).unwrap())
    }

    fn virtual_knot() -> (AugmentedSystem, Representation<Cyclotomic>) {
        let p = Presentation::parse(&["x", "a"], &["x a x^-1 a^-2", "a^3"]).unwrap();
        let sys = AugmentedSystem::new(p, EpsilonMap::scalar(&[1, 0]), 0).unwrap();
        let k = Cyclotomic::new(3).unwrap();
        let ring = LaurentRing::new(k.clone(), VariableSet::standard(1, &["alpha"]).unwrap());
        let alpha = ring.var(1);
        let w = ring.constant(k.generator().unwrap());
        let x = LambdaMatrix::from_rows(&ring, vec![vec![ring.zero(), alpha.clone()], vec![alpha, ring.zero()]]).unwrap();
        let a = LambdaMatrix::from_rows(&ring, vec![vec![w.clone(), ring.zero()], vec![ring.zero(), &w * &w]]).unwrap();
        (sys, Representation::new(&ring, 2, vec![x, a]).unwrap())
    }

    #[test]
    fn golden_representations_validate() {
        let (sys, rep) = example2();
        assert!(validate_representation(&sys, &rep).unwrap().is_valid());
        let (sys, rep) = virtual_knot();
        assert!(validate_representation(&sys, &rep).unwrap().is_valid());
        let triv = Representation::trivial(rep.ring(), 2, 2);
        assert!(validate_representation(&sys, &triv).unwrap().is_valid());
    }

    #[test]
    fn corrupted_representations_fail() {
        let (sys, rep) = example2();
        let ring = rep.ring().clone();
        // a ↦ γ(x), which breaks the relator
        let a = rep.image(0).clone();
        let bad = Representation::new(&ring, 3, vec![rep.image(0).clone(), a]).unwrap();
        let report = validate_representation(&sys, &bad).unwrap();
        assert_eq!(report.failing_relators.len(), 1);
        assert!(matches!(PhiMap::new(&sys, &bad), Err(RepError::RelatorNotIdentity { index: 0, .. })));

        let singular = LambdaMatrix::from_ints(&ring, &[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let bad = Representation::new(&ring, 3, vec![singular, rep.image(1).clone()]).unwrap();
        let report = validate_representation(&sys, &bad).unwrap();
        assert_eq!(report.non_invertible, vec![(0, ring.from_i64(2))]);
        match PhiMap::new(&sys, &bad) {
            Err(RepError::NotInvertible { generator, det }) => {
                assert_eq!(generator, "x");
                assert_eq!(det, "2");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_errors() {
        let ring = LaurentRing::univariate(Integers);
        let id2 = LambdaMatrix::identity(&ring, 2);
        assert!(matches!(Representation::new(&ring, 3, vec![id2.clone()]), Err(RepError::ImageShape { .. })));
        assert_eq!(Representation::new(&ring, 0, vec![]), Err(RepError::ZeroDimension));
        let graded = id2.scale(&ring.var(0));
        assert_eq!(Representation::new(&ring, 2, vec![graded]), Err(RepError::GradedEntry { generator: 0 }));
        let (sys, _) = example2();
        let short = Representation::new(&ring, 2, vec![id2]).unwrap();
        assert!(matches!(validate_representation(&sys, &short), Err(RepError::ImageCount { .. })));
    }

    #[test]
    fn phi_of_distinguished_generator() {
        let (sys, rep) = virtual_knot();
        let phi = PhiMap::new(&sys, &rep).unwrap();
        let ring = phi.ring().clone();
        let x = phi.of_word(&Word::generator(0));
        assert_eq!(x, rep.image(0).scale(&ring.var(0)));
        let i_minus_x = LambdaMatrix::identity(&ring, 2).sub(&x).unwrap();
        let at = &ring.var(0) * &ring.var(1);
        assert_eq!(i_minus_x.determinant().unwrap(), &ring.one() - &(&at * &at));
        assert!(phi.of_word(&Word::identity()).is_identity());
        let xx = Word::reduce([Letter::new(0, false), Letter::new(0, true)]);
        assert!(phi.of_word(&xx).is_identity());
    }

    #[test]
    fn fox_image_matches_phi_of_derivative() {
        let (sys, rep) = example2();
        let phi = PhiMap::new(&sys, &rep).unwrap();
        let r = &sys.presentation().relators()[0];
        for g in 0..2 {
            let d = fox_derivative(sys.alphabet(), r, g).unwrap();
            assert_eq!(phi.fox_image(r, g), phi.phi(&d));
        }
    }

    fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
            .prop_map(|ls| Word::reduce(ls.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn phi_is_multiplicative(u in word(2, 8), v in word(2, 8)) {
            let (sys, rep) = example2();
            let phi = PhiMap::new(&sys, &rep).unwrap();
            prop_assert_eq!(phi.of_word(&u.multiply(&v)), phi.of_word(&u).mul(&phi.of_word(&v)).unwrap());
        }

        #[test]
        fn phi_is_graded(w in word(2, 10)) {
            let (sys, rep) = virtual_knot();
            let phi = PhiMap::new(&sys, &rep).unwrap();
            let deg = sys.epsilon().of_word(&w)[0] as i32;
            let m = phi.of_word(&w);
            for e in m.entries() {
                prop_assert!(e.terms().all(|(mono, _)| mono[0] == deg));
            }
        }

        #[test]
        fn fox_image_agrees(w in word(2, 10), g in 0usize..2) {
            let (sys, rep) = virtual_knot();
            let phi = PhiMap::new(&sys, &rep).unwrap();
            let d = fox_derivative(sys.alphabet(), &w, g).unwrap();
            prop_assert_eq!(phi.fox_image(&w, g), phi.phi(&d));
        }
    }
}
