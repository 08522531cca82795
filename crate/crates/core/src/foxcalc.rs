//! Fox free differential calculus.
//!
//! Left convention: `∂(uv)/∂g = ∂u/∂g + u·∂v/∂g`, so
//! `∂g/∂g = 1` and `∂(g⁻¹)/∂g = −g⁻¹`.

use crate::words::{Alphabet, GroupRingElement, Word, WordError};

/// `∂w/∂g` for the generator with index `generator`.
pub fn fox_derivative(
    alphabet: &Alphabet,
    word: &Word,
    generator: usize,
) -> Result<GroupRingElement, WordError> {
    if generator >= alphabet.len() {
        return Err(WordError::UndeclaredGenerator(format!("#{generator}")));
    }
    if word.max_generator().is_some_and(|g| g >= alphabet.len()) {
        return Err(WordError::AlphabetMismatch);
    }
    let mut out = GroupRingElement::zero(alphabet);
    let mut prefix = Word::identity();
    for &letter in word.letters() {
        let next = prefix.multiply(&Word::reduce([letter]));
        if letter.generator == generator {
            if letter.inverse {
                // prefix · (−g⁻¹)
                out.add_term(next.clone(), -1);
            } else {
                out.add_term(prefix.clone(), 1);
            }
        }
        prefix = next;
    }
    Ok(out)
}

/// The full Jacobian row `(∂w/∂g)_g` over every generator.
pub fn fox_gradient(alphabet: &Alphabet, word: &Word) -> Result<Vec<GroupRingElement>, WordError> {
    (0..alphabet.len())
        .map(|g| fox_derivative(alphabet, word, g))
        .collect()
}
