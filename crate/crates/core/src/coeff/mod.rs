//! Exact coefficient domains.
//!
//! A domain is a small context value (`Integers`, `Cyclotomic`, ...) that
//! performs arithmetic on its element type. Elements are kept in a canonical
//! form so that `==` on elements is equality in the domain.

mod cyclotomic;
mod modular;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, CycElem, Cyclotomic};
pub use modular::ModularField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),
    #[error("cyclotomic order must be positive")]
    InvalidOrder,
}

/// Commutative ring with 1 and no zero divisors, with exact division and
/// a gcd defined up to units.
#[allow(clippy::wrong_self_convention)]
pub trait CoeffDomain: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// `None` when the denominator is not invertible in the domain.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    /// The distinguished algebraic generator (ζ for cyclotomic fields).
    fn generator(&self) -> Option<Self::Elem> {
        None
    }

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `Some(q)` with `a = q·b`, if it exists. `b = 0` yields `None`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn is_field(&self) -> bool;
    /// Unit-normal gcd; fields return 1 unless both arguments vanish.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The unit `u` such that `a / u` is in unit normal form (`a ≠ 0`).
    fn normal_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn render(&self, a: &Self::Elem) -> String;
    /// Whether `render` produces a sum that needs parentheses as a factor.
    fn is_compound(&self, _a: &Self::Elem) -> bool {
        false
    }
    /// Short description, e.g. `cyclotomic 3`.
    fn describe(&self) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut k: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.exact_div(&self.one(), a)
    }
}

/// ℤ with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl CoeffDomain for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigInt> {
        q.is_integer().then(|| q.to_integer())
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn is_field(&self) -> bool {
        false
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
    fn normal_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        "integers".to_string()
    }
}

/// ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl CoeffDomain for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn is_field(&self) -> bool {
        true
    }
    fn gcd(&self, a: &BigRational, b: &BigRational) -> BigRational {
        field_gcd(a.is_zero() && b.is_zero())
    }
    fn normal_unit(&self, a: &BigRational) -> BigRational {
        if a.is_negative() {
            -BigRational::one()
        } else {
            BigRational::one()
        }
    }
    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
    fn describe(&self) -> String {
        "rationals".to_string()
    }
}

fn field_gcd<T: Zero + One>(both_zero: bool) -> T {
    if both_zero {
        T::zero()
    } else {
        T::one()
    }
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
