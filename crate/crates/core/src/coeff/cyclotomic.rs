use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{render_rational, CoeffDomain, CoeffError};

/// The m-th cyclotomic polynomial, ascending integer coefficients.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m > 0, "cyclotomic order must be positive");
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = div_monic_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn div_monic_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// ℚ(ζ_m), elements in the basis `1, ζ, …, ζ^{φ(m)−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u32,
    modulus: Arc<[BigInt]>,
}

/// Coordinates in the power basis; always reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycElem(Vec<BigRational>);

impl CycElem {
    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }
}

impl Cyclotomic {
    pub fn new(order: u32) -> Result<Self, CoeffError> {
        if order == 0 {
            return Err(CoeffError::InvalidOrder);
        }
        Ok(Cyclotomic {
            order,
            modulus: cyclotomic_polynomial(order).into(),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(m), the extension degree.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces an arbitrary-length coordinate vector modulo Φ_m.
    pub fn reduce(&self, mut coeffs: Vec<BigRational>) -> CycElem {
        let deg = self.degree();
        for k in (deg..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..deg {
                let m = BigRational::from_integer(self.modulus[j].clone());
                coeffs[k - deg + j] -= &c * m;
            }
        }
        coeffs.resize(deg, BigRational::zero());
        CycElem(coeffs)
    }

    pub fn element(&self, coeffs: &[i64]) -> CycElem {
        self.reduce(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    fn invert(&self, a: &CycElem) -> Option<CycElem> {
        if self.is_zero(a) {
            return None;
        }
        // extended Euclid in ℚ[x]: s·a + u·Φ = g, g a nonzero constant
        let modulus: Vec<BigRational> = self
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (modulus, trim(a.0.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_m irreducible, so the last remainder is a nonzero constant
        let g = r1.first().cloned()?;
        let inv: Vec<BigRational> = s1.into_iter().map(|c| c / &g).collect();
        Some(self.reduce(inv))
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl CoeffDomain for Cyclotomic {
    type Elem = CycElem;

    fn zero(&self) -> CycElem {
        CycElem(vec![BigRational::zero(); self.degree()])
    }
    fn one(&self) -> CycElem {
        self.reduce(vec![BigRational::one()])
    }
    fn from_int(&self, n: &BigInt) -> CycElem {
        self.reduce(vec![BigRational::from_integer(n.clone())])
    }
    fn from_rational(&self, q: &BigRational) -> Option<CycElem> {
        Some(self.reduce(vec![q.clone()]))
    }
    fn generator(&self) -> Option<CycElem> {
        Some(self.reduce(vec![BigRational::zero(), BigRational::one()]))
    }
    fn is_zero(&self, a: &CycElem) -> bool {
        a.0.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
    fn neg(&self, a: &CycElem) -> CycElem {
        CycElem(a.0.iter().map(|x| -x).collect())
    }
    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        let deg = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * deg.max(1) - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }
    fn exact_div(&self, a: &CycElem, b: &CycElem) -> Option<CycElem> {
        self.invert(b).map(|inv| self.mul(a, &inv))
    }
    fn is_unit(&self, a: &CycElem) -> bool {
        !self.is_zero(a)
    }
    fn is_field(&self) -> bool {
        true
    }
    fn gcd(&self, a: &CycElem, b: &CycElem) -> CycElem {
        if self.is_zero(a) && self.is_zero(b) {
            self.zero()
        } else {
            self.one()
        }
    }
    fn normal_unit(&self, a: &CycElem) -> CycElem {
        match a.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(&self.one()),
            _ => self.one(),
        }
    }
    fn render(&self, a: &CycElem) -> String {
        let mut out = String::new();
        for (k, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => render_rational(&mag),
                (1, true) => "w".to_string(),
                (_, true) => format!("w^{k}"),
                (1, false) => format!("{}*w", render_rational(&mag)),
                (_, false) => format!("{}*w^{k}", render_rational(&mag)),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
    fn is_compound(&self, a: &CycElem) -> bool {
        a.0.iter().filter(|c| !c.is_zero()).count() > 1
    }
    fn describe(&self) -> String {
        format!("cyclotomic {}", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cube_roots() {
        let k = Cyclotomic::new(3).unwrap();
        let w = k.generator().unwrap();
        let w2 = k.mul(&w, &w);
        assert_eq!(k.mul(&w, &w2), k.one());
        let one = k.one();
        // (1+ω)(1+ω²) = 1
        let lhs = k.mul(&k.add(&one, &w), &k.add(&one, &w2));
        assert_eq!(lhs, one);
        assert!(k.is_zero(&k.add(&k.add(&one, &w), &w2)));
        assert_eq!(k.render(&w2), "-1 - w");
        assert_eq!(k.render(&k.add(&one, &w)), "1 + w");
    }

    #[test]
    fn fourth_roots() {
        let k = Cyclotomic::new(4).unwrap();
        let i = k.generator().unwrap();
        assert_eq!(k.mul(&i, &i), k.from_i64(-1));
    }

    #[test]
    fn normal_unit_sign() {
        let k = Cyclotomic::new(3).unwrap();
        let e = k.element(&[0, -2]);
        assert_eq!(k.normal_unit(&e), k.from_i64(-1));
        assert_eq!(k.normal_unit(&k.element(&[3, -2])), k.one());
    }

    fn coords() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-4i64..=4, 1..=6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(
            m in prop::sample::select(vec![3u32, 4, 5, 8, 12]),
            a in coords(),
            b in coords(),
            c in coords(),
        ) {
            let k = Cyclotomic::new(m).unwrap();
            let (a, b, c) = (k.element(&a), k.element(&b), k.element(&c));
            prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
            prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
            prop_assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
            if !k.is_zero(&b) {
                prop_assert_eq!(k.exact_div(&k.mul(&a, &b), &b), Some(a.clone()));
            }
            // ζ^m = 1
            let z = k.generator().unwrap();
            prop_assert_eq!(k.pow(&z, m), k.one());
        }
    }
}
