//! Random mapping-torus presentations `⟨x, a_1..a_n | x a_i x⁻¹ = μ(a_i)⟩`
//! for automorphisms μ of the free group, with integer representations.
//! The kernel of ε(x) = 1, ε(a_i) = 0 is free of rank n.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::coeff::Integers;
use crate::laurent::LaurentRing;
use crate::matrices::LambdaMatrix;
use crate::presentation::{AugmentedSystem, EpsilonMap, Presentation};
use crate::rep::Representation;
use crate::words::{Alphabet, Word};

type IntMatrix = Vec<Vec<i64>>;

/// Elementary Nielsen move on the images `μ(a_1), …, μ(a_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NielsenMove {
    Swap(usize, usize),
    Invert(usize),
    /// `a_i ↦ a_j · a_i`
    LeftMultiply { target: usize, by: usize },
}

impl NielsenMove {
    pub fn apply(self, images: &mut [Word]) {
        match self {
            NielsenMove::Swap(i, j) => images.swap(i, j),
            NielsenMove::Invert(i) => images[i] = images[i].invert(),
            NielsenMove::LeftMultiply { target, by } => {
                images[target] = images[by].multiply(&images[target]);
            }
        }
    }

    pub fn random<Rg: Rng + ?Sized>(rng: &mut Rg, n: usize) -> Self {
        let i = rng.gen_range(0..n);
        if n == 1 {
            return NielsenMove::Invert(i);
        }
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..3) {
            0 => NielsenMove::Swap(i, j),
            1 => NielsenMove::Invert(i),
            _ => NielsenMove::LeftMultiply { target: i, by: j },
        }
    }
}

/// Images of `a_1..a_n` (alphabet indices `offset..offset + n`) under a
/// composition of `moves` random Nielsen moves.
pub fn random_automorphism<Rg: Rng + ?Sized>(rng: &mut Rg, n: usize, offset: usize, moves: usize) -> Vec<Word> {
    let mut images: Vec<Word> = (0..n).map(|i| Word::generator(offset + i)).collect();
    for _ in 0..moves {
        NielsenMove::random(rng, n).apply(&mut images);
    }
    images
}

/// All N×N signed permutation matrices.
pub fn signed_permutations(dim: usize) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for perm in (0..dim).permutations(dim) {
        for signs in 0..1u32 << dim {
            let mut m = vec![vec![0; dim]; dim];
            for (row, &col) in perm.iter().enumerate() {
                m[row][col] = if signs >> row & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn transpose(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Evaluates a word on signed permutation matrices; their inverse is the
/// transpose.
fn evaluate(word: &Word, images: &[IntMatrix], dim: usize) -> IntMatrix {
    let id: IntMatrix = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
    word.letters().iter().fold(id, |acc, l| {
        let m = &images[l.generator];
        if l.inverse {
            mat_mul(&acc, &transpose(m))
        } else {
            mat_mul(&acc, m)
        }
    })
}

#[derive(Debug, Clone)]
pub struct FiberedSystem {
    pub system: AugmentedSystem,
    pub representation: Representation<Integers>,
    /// μ(a_i) over the system's alphabet.
    pub automorphism: Vec<Word>,
    pub n: usize,
}

/// A random fibered system of fiber rank `n` with an N-dimensional
/// signed-permutation representation. Random tuples `γ(a_i)` are tried
/// until some `γ(x)` conjugates them to `μ(γ(a))`; after `attempts`
/// failures every `γ(a_i)` is the identity and `γ(x)` is random.
pub fn random_fibered<Rg: Rng + ?Sized>(
    rng: &mut Rg,
    n: usize,
    dim: usize,
    moves: usize,
    attempts: usize,
) -> FiberedSystem {
    assert!(n >= 1 && dim >= 1);
    let names: Vec<String> = std::iter::once("x".to_string())
        .chain((1..=n).map(|i| format!("a{i}")))
        .collect();
    let alphabet = Alphabet::from_names(&names).expect("valid names");
    let mu = random_automorphism(rng, n, 1, moves);
    let relators: Vec<Word> = (0..n)
        .map(|i| {
            Word::generator(0)
                .multiply(&Word::generator(i + 1))
                .multiply(&Word::generator(0).invert())
                .multiply(&mu[i].invert())
        })
        .collect();
    let presentation = Presentation::new(alphabet, relators).expect("relators in range");
    let mut eps = vec![0; n + 1];
    eps[0] = 1;
    let system = AugmentedSystem::new(presentation, EpsilonMap::scalar(&eps), 0).expect("ε kills every relator");

    let perms = signed_permutations(dim);
    let mut images = find_conjugating(rng, &perms, &mu, n, dim, attempts).unwrap_or_else(|| {
        let id = evaluate(&Word::identity(), &[], dim);
        let mut v = vec![perms.choose(rng).expect("nonempty").clone()];
        v.extend(std::iter::repeat_n(id, n));
        v
    });
    let ring = LaurentRing::univariate(Integers);
    let mats = images
        .drain(..)
        .map(|m| LambdaMatrix::from_ints(&ring, &m).expect("square"))
        .collect();
    let representation = Representation::new(&ring, dim, mats).expect("signed permutations are invertible");
    FiberedSystem {
        system,
        representation,
        automorphism: mu,
        n,
    }
}

fn find_conjugating<Rg: Rng + ?Sized>(
    rng: &mut Rg,
    perms: &[IntMatrix],
    mu: &[Word],
    n: usize,
    dim: usize,
    attempts: usize,
) -> Option<Vec<IntMatrix>> {
    for _ in 0..attempts {
        // index 0 is a placeholder for x so word letters index directly
        let mut images = vec![perms[0].clone()];
        images.extend((0..n).map(|_| perms.choose(rng).expect("nonempty").clone()));
        let targets: Vec<IntMatrix> = mu.iter().map(|w| evaluate(w, &images, dim)).collect();
        let mut xs: Vec<&IntMatrix> = perms
            .iter()
            .filter(|x| (0..n).all(|i| mat_mul(x, &images[i + 1]) == mat_mul(&targets[i], x)))
            .collect();
        if !xs.is_empty() {
            xs.shuffle(rng);
            images[0] = xs[0].clone();
            return Some(images);
        }
    }
    None
}
