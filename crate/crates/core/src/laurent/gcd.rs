//! GCD in Λ by recursive content extraction and subresultant PRS.
//!
//! Inputs are shifted to ordinary polynomials (all exponents ≥ 0); the
//! last variable is the main variable and coefficients are polynomials in
//! the remaining ones.

use super::{add_exps, LaurentPoly};
use crate::coeff::CoeffDomain;

/// Dense univariate polynomial over a coefficient ring, index = degree.
/// The zero polynomial is the empty vector.
type Dense<R> = Vec<LaurentPoly<R>>;

impl<R: CoeffDomain> LaurentPoly<R> {
    /// Greatest common divisor up to units of Λ.
    ///
    /// `gcd(p, 0)` is the canonical form of `p`. Over field coefficients a
    /// nontrivial gcd is additionally scaled so its lowest coefficient is 1.
    ///
    /// Panics if the operands live in different rings.
    pub fn gcd(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return self.clone(),
            (true, false) => return other.canonical(),
            (false, true) => return self.canonical(),
            _ => {}
        }
        let a = self.shift_to_polynomial();
        let b = other.shift_to_polynomial();
        let g = poly_gcd(&a, &b, self.ring.nvars());
        let canon = g.canonical();
        if self.domain().is_field() {
            let dom = self.domain();
            let low = canon.lowest_term().expect("gcd of nonzero inputs").1;
            canon.scale(&dom.inverse(low).expect("field"))
        } else {
            canon
        }
    }

    /// `self` times the monomial making every exponent ≥ 0 with minimum 0.
    pub fn shift_to_polynomial(&self) -> Self {
        match self.min_exponents() {
            Some(low) => self.shift(&low.iter().map(|e| -e).collect::<Vec<_>>()),
            None => self.clone(),
        }
    }
}

fn poly_gcd<R: CoeffDomain>(a: &LaurentPoly<R>, b: &LaurentPoly<R>, nv: usize) -> LaurentPoly<R> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if nv == 0 {
        let dom = a.domain();
        let ca = a.lowest_term().unwrap().1;
        let cb = b.lowest_term().unwrap().1;
        return a.ring.constant(dom.gcd(ca, cb));
    }
    let v = nv - 1;
    if !a.involves(v) && !b.involves(v) {
        return poly_gcd(a, b, v);
    }
    let ua = to_dense(a, v);
    let ub = to_dense(b, v);
    let ca = content(&ua, v);
    let cb = content(&ub, v);
    let c = poly_gcd(&ca, &cb, v);
    let pa = divide_all(&ua, &ca);
    let pb = divide_all(&ub, &cb);
    if pa.len() == 1 || pb.len() == 1 {
        return c;
    }
    let last = subresultant_last(pa, pb);
    let g = if last.len() == 1 {
        a.ring.one()
    } else {
        let cl = content(&last, v);
        from_dense(&divide_all(&last, &cl), v)
    };
    &c * &g
}

fn to_dense<R: CoeffDomain>(p: &LaurentPoly<R>, v: usize) -> Dense<R> {
    let (lo, hi) = p.degree_range(v).expect("nonzero");
    debug_assert!(lo >= 0);
    (0..=hi).map(|k| p.coefficient_in(v, k)).collect()
}

fn from_dense<R: CoeffDomain>(coeffs: &[LaurentPoly<R>], v: usize) -> LaurentPoly<R> {
    let ring = coeffs[0].ring.clone();
    let mut out = ring.zero();
    for (k, c) in coeffs.iter().enumerate() {
        let mut m = vec![0; ring.nvars()];
        m[v] = k as i32;
        for (e, x) in c.terms() {
            out.add_term(add_exps(e, &m), x.clone());
        }
    }
    out
}

/// GCD of the coefficients, which involve only variables `< nv`.
fn content<R: CoeffDomain>(coeffs: &[LaurentPoly<R>], nv: usize) -> LaurentPoly<R> {
    let mut acc = coeffs[0].ring.zero();
    for c in coeffs {
        acc = poly_gcd(&acc, c, nv);
        // a monomial is a unit of Λ but not of the polynomial ring
        if acc.is_unit() && acc.lowest_term().is_some_and(|(m, _)| m.iter().all(|e| *e == 0)) {
            break;
        }
    }
    acc
}

fn divide_all<R: CoeffDomain>(coeffs: &[LaurentPoly<R>], d: &LaurentPoly<R>) -> Dense<R> {
    coeffs
        .iter()
        .map(|c| c.exact_div(d).expect("content divides every coefficient"))
        .collect()
}

fn trim<R: CoeffDomain>(p: &mut Dense<R>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn degree<R: CoeffDomain>(p: &Dense<R>) -> usize {
    p.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1)·a mod b`.
fn prem<R: CoeffDomain>(a: &Dense<R>, b: &Dense<R>) -> Dense<R> {
    let db = degree(b);
    let lc = &b[db];
    let mut r = a.clone();
    let mut e = degree(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = degree(&r);
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x = &*x * lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] = &r[dr - db + j] - &(&c * bj);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lc.pow(e as u32);
        for x in r.iter_mut() {
            *x = &*x * &f;
        }
    }
    r
}

/// Last nonzero remainder of the subresultant PRS of two polynomials of
/// positive degree. Returns a constant when they are coprime.
fn subresultant_last<R: CoeffDomain>(a: Dense<R>, b: Dense<R>) -> Dense<R> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let one = a[0].ring.one();
    let mut g = one.clone();
    let mut h = one;
    loop {
        let delta = degree(&a) - degree(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return r;
        }
        let denom = &g * &h.pow(delta as u32);
        a = b;
        b = divide_all(&r, &denom);
        g = a[degree(&a)].clone();
        if delta > 0 {
            h = g
                .pow(delta as u32)
                .exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant h is exact");
        }
    }
}
