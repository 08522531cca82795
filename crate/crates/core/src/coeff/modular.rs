use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{CoeffDomain, CoeffError};

/// ℤ/p for a prime p below 2³².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularField {
    p: u64,
}

impl ModularField {
    pub fn new(p: u64) -> Result<Self, CoeffError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        Ok(ModularField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }

    fn pow_mod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffDomain for ModularField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        self.reduce_big(n)
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let den = self.reduce_big(q.denom());
        self.exact_div(&self.reduce_big(q.numer()), &den)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        if *b == 0 {
            return None;
        }
        // Fermat inverse
        Some(a * self.pow_mod(*b, self.p - 2) % self.p)
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn is_field(&self) -> bool {
        true
    }
    fn gcd(&self, a: &u64, b: &u64) -> u64 {
        u64::from(*a != 0 || *b != 0)
    }
    fn normal_unit(&self, _a: &u64) -> u64 {
        1
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        format!("zmod {}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites() {
        assert_eq!(ModularField::new(6), Err(CoeffError::NotPrime(6)));
        assert_eq!(ModularField::new(1), Err(CoeffError::NotPrime(1)));
        assert!(ModularField::new(7).is_ok());
    }

    #[test]
    fn conversions() {
        let f = ModularField::new(5).unwrap();
        assert_eq!(f.from_i64(-1), 4);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half), Some(3));
        let fifth = BigRational::new(1.into(), 5.into());
        assert_eq!(f.from_rational(&fifth), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 101]), a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
            let f = ModularField::new(p).unwrap();
            let (a, b, c) = (a % p, b % p, c % p);
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if b != 0 {
                prop_assert!(f.is_unit(&b));
                prop_assert_eq!(f.exact_div(&f.mul(&a, &b), &b), Some(a));
            }
        }
    }
}
