//! Multivariate Laurent polynomials over a coefficient domain.
//!
//! Variables are the ε-graded `t` variables followed by invertible
//! parameters. Monomials are exponent vectors compared lexicographically,
//! which is the term order used for both normalization and rendering.

mod gcd;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::coeff::CoeffDomain;
use crate::words::is_identifier;

pub type Monomial = Vec<i32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("polynomials over different variable sets or domains")]
    VariableMismatch,
    #[error("invalid variable set: {0}")]
    InvalidVariables(String),
}

/// Ordered variable names: `t` variables first, then parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSet {
    t_vars: Vec<String>,
    params: Vec<String>,
}

impl VariableSet {
    pub fn new(t_vars: Vec<String>, params: Vec<String>) -> Result<Self, LaurentError> {
        let all: Vec<&String> = t_vars.iter().chain(&params).collect();
        for (i, name) in all.iter().enumerate() {
            if !is_identifier(name) {
                return Err(LaurentError::InvalidVariables(format!("bad name `{name}`")));
            }
            if all[..i].contains(name) {
                return Err(LaurentError::InvalidVariables(format!("duplicate `{name}`")));
            }
        }
        Ok(VariableSet { t_vars, params })
    }

    /// `t` when `d = 1`, else `t1, …, td`, followed by `params`.
    pub fn standard<S: AsRef<str>>(d: usize, params: &[S]) -> Result<Self, LaurentError> {
        let t_vars = if d == 1 {
            vec!["t".to_string()]
        } else {
            (1..=d).map(|i| format!("t{i}")).collect()
        };
        Self::new(t_vars, params.iter().map(|p| p.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.t_vars.len() + self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn t_count(&self) -> usize {
        self.t_vars.len()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn name(&self, index: usize) -> &str {
        if index < self.t_vars.len() {
            &self.t_vars[index]
        } else {
            &self.params[index - self.t_vars.len()]
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.name(i) == name)
    }
}

/// The ring Λ: a coefficient domain plus a variable set.
#[derive(Debug, Clone)]
pub struct LaurentRing<R> {
    domain: R,
    vars: Arc<VariableSet>,
}

impl<R: PartialEq> PartialEq for LaurentRing<R> {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
    }
}

impl<R: CoeffDomain> LaurentRing<R> {
    pub fn new(domain: R, vars: VariableSet) -> Self {
        LaurentRing {
            domain,
            vars: Arc::new(vars),
        }
    }

    /// Single variable `t`, no parameters.
    pub fn univariate(domain: R) -> Self {
        Self::new(domain, VariableSet::standard::<&str>(1, &[]).unwrap())
    }

    pub fn domain(&self) -> &R {
        &self.domain
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn zero(&self) -> LaurentPoly<R> {
        LaurentPoly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> LaurentPoly<R> {
        self.constant(self.domain.one())
    }

    pub fn constant(&self, c: R::Elem) -> LaurentPoly<R> {
        self.monomial(vec![0; self.nvars()], c)
    }

    pub fn from_i64(&self, n: i64) -> LaurentPoly<R> {
        self.constant(self.domain.from_i64(n))
    }

    pub fn monomial(&self, exps: Monomial, c: R::Elem) -> LaurentPoly<R> {
        assert_eq!(exps.len(), self.nvars(), "monomial length");
        let mut p = self.zero();
        p.add_term(exps, c);
        p
    }

    /// The variable with the given index, to the power `k`.
    pub fn var_pow(&self, index: usize, k: i32) -> LaurentPoly<R> {
        let mut exps = vec![0; self.nvars()];
        exps[index] = k;
        self.monomial(exps, self.domain.one())
    }

    pub fn var(&self, index: usize) -> LaurentPoly<R> {
        self.var_pow(index, 1)
    }

    /// Builds from `(exponents, integer coefficient)` pairs.
    pub fn from_int_terms<I: IntoIterator<Item = (Monomial, i64)>>(&self, terms: I) -> LaurentPoly<R> {
        let mut p = self.zero();
        for (m, c) in terms {
            p.add_term(m, self.domain.from_i64(c));
        }
        p
    }

    /// Univariate helper: `coeffs[k]` is the coefficient of `t^(low + k)`.
    pub fn from_coeffs_in(&self, var: usize, low: i32, coeffs: &[i64]) -> LaurentPoly<R> {
        self.from_int_terms(coeffs.iter().enumerate().map(|(k, &c)| {
            let mut m = vec![0; self.nvars()];
            m[var] = low + k as i32;
            (m, c)
        }))
    }
}

/// Element of Λ. Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct LaurentPoly<R: CoeffDomain> {
    ring: LaurentRing<R>,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: CoeffDomain> PartialEq for LaurentPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<R: CoeffDomain> Eq for LaurentPoly<R> {}

impl<R: CoeffDomain> LaurentPoly<R> {
    pub fn ring(&self) -> &LaurentRing<R> {
        &self.ring
    }

    pub fn domain(&self) -> &R {
        &self.ring.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[i32]) -> R::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.domain().zero())
    }

    /// Largest term in the term order.
    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    /// Smallest term in the term order.
    pub fn lowest_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next()
    }

    pub fn compatible(&self, other: &Self) -> Result<(), LaurentError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(LaurentError::VariableMismatch)
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.ring == other.ring,
            "Laurent polynomials over different rings"
        );
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: R::Elem) {
        let dom = &self.ring.domain;
        if dom.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let sum = dom.add(o.get(), &c);
                if dom.is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// `self + c·x^m·other`, in place.
    fn add_scaled_shift(&mut self, other: &Self, c: &R::Elem, m: &[i32]) {
        for (e, d) in &other.terms {
            let prod = self.ring.domain.mul(c, d);
            self.add_term(add_exps(e, m), prod);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.try_add(&other.negate())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.compatible(other)?;
        let mut out = self.ring.zero();
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (m, c) in &small.terms {
            out.add_scaled_shift(big, c, m);
        }
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        let dom = &self.ring.domain;
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), dom.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = self.ring.zero();
        out.add_scaled_shift(self, c, &vec![0; self.ring.nvars()]);
        out
    }

    pub fn shift(&self, m: &[i32]) -> Self {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exps(e, m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| {
            acc.iter().zip(m).map(|(a, b)| *a.min(b)).collect()
        }))
    }

    pub fn max_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| {
            acc.iter().zip(m).map(|(a, b)| *a.max(b)).collect()
        }))
    }

    /// Whether some term has a nonzero exponent in `var`.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m[var] != 0)
    }

    /// Units of Λ: a single term with a unit coefficient.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .values()
                .all(|c| self.ring.domain.is_unit(c))
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (m, c) = self.leading_term()?;
        let inv = self.ring.domain.inverse(c)?;
        Some(self.ring.monomial(m.iter().map(|e| -e).collect(), inv))
    }

    /// Splits `self = unit · canonical`, where `canonical` has minimal
    /// exponent 0 in every variable and its lowest term has a coefficient in
    /// unit normal form.
    pub fn unit_normalize(&self) -> Result<(Self, Self), LaurentError> {
        let low = self.min_exponents().ok_or(LaurentError::ZeroPolynomial)?;
        let neg_low: Monomial = low.iter().map(|e| -e).collect();
        let shifted = self.shift(&neg_low);
        let dom = &self.ring.domain;
        let (_, c) = shifted.lowest_term().expect("nonzero");
        let u = dom.normal_unit(c);
        let u_inv = dom.inverse(&u).expect("normal unit is invertible");
        let canonical = shifted.scale(&u_inv);
        let unit = self.ring.monomial(low, u);
        Ok((canonical, unit))
    }

    /// Canonical representative modulo units; zero stays zero.
    pub fn canonical(&self) -> Self {
        match self.unit_normalize() {
            Ok((c, _)) => c,
            Err(_) => self.clone(),
        }
    }

    /// Exact quotient `self / divisor` in Λ.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LaurentError> {
        self.compatible(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.ring.zero());
        }
        // Any quotient's exponents lie in this box.
        let lo: Monomial = sub_exps(&self.min_exponents().unwrap(), &divisor.min_exponents().unwrap());
        let hi: Monomial = sub_exps(&self.max_exponents().unwrap(), &divisor.max_exponents().unwrap());
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(LaurentError::NotDivisible);
        }
        let dom = &self.ring.domain;
        let (lead_m, lead_c) = divisor.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quot = self.ring.zero();
        while let Some((m, c)) = rem.leading_term() {
            let e = sub_exps(m, lead_m);
            if e.iter().zip(&lo).any(|(x, l)| x < l) || e.iter().zip(&hi).any(|(x, h)| x > h) {
                return Err(LaurentError::NotDivisible);
            }
            let q = dom.exact_div(c, lead_c).ok_or(LaurentError::NotDivisible)?;
            rem.add_scaled_shift(divisor, &dom.neg(&q), &e);
            quot.add_term(e, q);
        }
        Ok(quot)
    }

    /// Width of the exponent range of `var`.
    pub fn span_degree(&self, var: usize) -> Result<i64, LaurentError> {
        let (lo, hi) = self.degree_range(var).ok_or(LaurentError::ZeroPolynomial)?;
        Ok(i64::from(hi) - i64::from(lo))
    }

    pub fn degree_range(&self, var: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Coefficient of `var^k`, as an element of Λ without `var`.
    pub fn coefficient_in(&self, var: usize, k: i32) -> Self {
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            if m[var] == k {
                let mut e = m.clone();
                e[var] = 0;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Substitutes `var ↦ value` (an arbitrary scalar of the domain).
    pub fn evaluate_var(&self, var: usize, value: &R::Elem) -> Result<Self, LaurentError> {
        let dom = &self.ring.domain;
        let inv = dom.inverse(value);
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let k = m[var];
            let factor = if k >= 0 {
                dom.pow(value, k as u32)
            } else {
                dom.pow(inv.as_ref().ok_or(LaurentError::DivisionByZero)?, (-k) as u32)
            };
            let mut e = m.clone();
            e[var] = 0;
            out.add_term(e, dom.mul(c, &factor));
        }
        Ok(out)
    }

    /// Rendering in descending term order, e.g. `t^2 - t + 1`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let dom = &self.ring.domain;
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = render_monomial(self.ring.vars(), m);
            let (negative, mag) = if !dom.is_compound(c) && dom.render(c).starts_with('-') {
                (true, dom.neg(c))
            } else {
                (false, c.clone())
            };
            let body = if mono.is_empty() && dom.is_compound(&mag) {
                format!("({})", dom.render(&mag))
            } else if mono.is_empty() {
                dom.render(&mag)
            } else if dom.is_one(&mag) {
                mono
            } else if dom.is_compound(&mag) {
                format!("({})*{mono}", dom.render(&mag))
            } else {
                format!("{}*{mono}", dom.render(&mag))
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

fn render_monomial(vars: &VariableSet, m: &[i32]) -> String {
    m.iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, e)| {
            if *e == 1 {
                vars.name(i).to_string()
            } else {
                format!("{}^{}", vars.name(i), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub(crate) fn add_exps(a: &[i32], b: &[i32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_exps(a: &[i32], b: &[i32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl<R: CoeffDomain> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<R: CoeffDomain> $trait<&LaurentPoly<R>> for &LaurentPoly<R> {
            type Output = LaurentPoly<R>;
            fn $method(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
                self.assert_compatible(rhs);
                self.$try(rhs).expect("compatible rings")
            }
        }
        impl<R: CoeffDomain> $trait<LaurentPoly<R>> for LaurentPoly<R> {
            type Output = LaurentPoly<R>;
            fn $method(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
                (&self).$method(&rhs)
            }
        }
        impl<R: CoeffDomain> $trait<&LaurentPoly<R>> for LaurentPoly<R> {
            type Output = LaurentPoly<R>;
            fn $method(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<R: CoeffDomain> Neg for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        self.negate()
    }
}

impl<R: CoeffDomain> Neg for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        self.negate()
    }
}
