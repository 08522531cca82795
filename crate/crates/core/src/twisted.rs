//! The Alexander-Lin polynomial, Wada's invariant, divisibility and the
//! fibering obstruction on the extreme coefficients.

use thiserror::Error;

use crate::coeff::CoeffDomain;
use crate::laurent::{LaurentError, LaurentPoly, LaurentRing};
use crate::matrices::{LambdaMatrix, MatrixError};
use crate::rep::PhiMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistedError {
    #[error("no generator besides the distinguished one")]
    NoColumns,
    #[error("fewer relators ({m}) than non-distinguished generators ({n})")]
    Deficiency { m: usize, n: usize },
    #[error("det(I - Φ(x)) is zero")]
    ZeroDenominator,
    #[error("the fibering check needs ε onto ℤ, got rank {0}")]
    NotUnivariate(usize),
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("division by zero")]
    ZeroDivisor,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// `M_γ`: block `(i, j)` is Φ(∂r_i/∂x_j) over relators `r_i` and the
/// non-distinguished generators `x_j`, flattened to `mN × nN`.
pub fn build_matrix<R: CoeffDomain>(phi: &PhiMap<R>) -> LambdaMatrix<R> {
    let sys = phi.system();
    let dim = phi.dim();
    let cols: Vec<usize> = sys.column_generators().collect();
    let mut out = LambdaMatrix::zeros(phi.ring(), sys.m() * dim, cols.len() * dim);
    for (i, r) in sys.presentation().relators().iter().enumerate() {
        for (j, &g) in cols.iter().enumerate() {
            let block = phi.fox_image(r, g);
            for a in 0..dim {
                for b in 0..dim {
                    out.set(i * dim + a, j * dim + b, block.get(a, b).clone());
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwistedResult<R: CoeffDomain> {
    /// Canonical D_γ; zero when every maximal minor vanishes.
    pub polynomial: LaurentPoly<R>,
    pub unit_ambiguity: String,
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub matrix: LambdaMatrix<R>,
}

impl<R: CoeffDomain> TwistedResult<R> {
    pub fn ring(&self) -> &LaurentRing<R> {
        self.polynomial.ring()
    }
}

/// Describes the units of Λ, by which D is only determined.
pub fn unit_note<R: CoeffDomain>(ring: &LaurentRing<R>) -> String {
    let scalars = if ring.domain().is_field() {
        "a nonzero scalar"
    } else {
        "±1"
    };
    let vars: Vec<&str> = (0..ring.nvars()).map(|v| ring.vars().name(v)).collect();
    format!("up to {scalars} times a monomial in {}", vars.join(", "))
}

/// D_γ: the gcd of the `nN × nN` minors of `M_γ`.
pub fn alexander_lin<R: CoeffDomain>(phi: &PhiMap<R>) -> Result<TwistedResult<R>, TwistedError> {
    let sys = phi.system();
    let (n, m) = (sys.n(), sys.m());
    if n == 0 {
        return Err(TwistedError::NoColumns);
    }
    if m < n {
        return Err(TwistedError::Deficiency { m, n });
    }
    let matrix = build_matrix(phi);
    let polynomial = matrix.minors_gcd(n * phi.dim())?;
    Ok(TwistedResult {
        polynomial,
        unit_ambiguity: unit_note(phi.ring()),
        n,
        m,
        dim: phi.dim(),
        matrix,
    })
}

/// `det(I − Φ(x))` for the distinguished generator `x`.
pub fn wada_denominator<R: CoeffDomain>(phi: &PhiMap<R>) -> Result<LaurentPoly<R>, TwistedError> {
    let x = crate::words::Word::generator(phi.system().distinguished());
    let id = LambdaMatrix::identity(phi.ring(), phi.dim());
    Ok(id.sub(&phi.of_word(&x))?.determinant()?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WadaResult<R: CoeffDomain> {
    pub numerator: LaurentPoly<R>,
    pub denominator: LaurentPoly<R>,
    /// The denominator cancelled to 1.
    pub is_polynomial: bool,
    /// The quotient when it is a unit of Λ.
    pub value_if_unit: Option<LaurentPoly<R>>,
}

/// W_γ = D_γ / det(I − Φ(x)) in lowest terms.
pub fn wada<R: CoeffDomain>(phi: &PhiMap<R>, res: &TwistedResult<R>) -> Result<WadaResult<R>, TwistedError> {
    let den = wada_denominator(phi)?;
    if den.is_zero() {
        return Err(TwistedError::ZeroDenominator);
    }
    Ok(reduce_fraction(&res.polynomial, &den))
}

/// `num / den` with the common gcd cancelled, each part canonical. A unit
/// denominator is folded into the numerator.
pub fn reduce_fraction<R: CoeffDomain>(num: &LaurentPoly<R>, den: &LaurentPoly<R>) -> WadaResult<R> {
    let ring = num.ring();
    if num.is_zero() {
        return WadaResult {
            numerator: ring.zero(),
            denominator: ring.one(),
            is_polynomial: true,
            value_if_unit: None,
        };
    }
    let g = num.gcd(den);
    let mut p = num.exact_div(&g).expect("gcd divides");
    let mut q = den.exact_div(&g).expect("gcd divides");
    if let Some(inv) = q.unit_inverse() {
        p = &p * &inv;
        q = ring.one();
    }
    let numerator = p.canonical();
    let denominator = q.canonical();
    let is_polynomial = denominator.is_one();
    let value_if_unit = (is_polynomial && numerator.is_unit()).then(|| numerator.clone());
    WadaResult {
        numerator,
        denominator,
        is_polynomial,
        value_if_unit,
    }
}

/// Necessary conditions for ker ε to be free of rank n.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport<R: CoeffDomain> {
    pub expected_degree: usize,
    pub actual_span: i64,
    /// Extreme coefficients in t, as polynomials in the parameters.
    pub leading_coeff: LaurentPoly<R>,
    pub trailing_coeff: LaurentPoly<R>,
    pub degree_ok: bool,
    pub leading_unit: bool,
    pub trailing_unit: bool,
    pub reasons: Vec<String>,
}

impl<R: CoeffDomain> ObstructionReport<R> {
    pub fn passes(&self) -> bool {
        self.degree_ok && self.leading_unit && self.trailing_unit
    }
}

/// Compares the t-span of D with `nN` and tests the extreme coefficients
/// for units. `kernel_rank` defaults to the presentation's `n`.
pub fn fiber_check<R: CoeffDomain>(
    res: &TwistedResult<R>,
    kernel_rank: Option<usize>,
) -> Result<ObstructionReport<R>, TwistedError> {
    let d = res.ring().vars().t_count();
    if d != 1 {
        return Err(TwistedError::NotUnivariate(d));
    }
    let p = &res.polynomial;
    let (lo, hi) = p.degree_range(0).ok_or(TwistedError::ZeroPolynomial)?;
    let expected_degree = kernel_rank.unwrap_or(res.n) * res.dim;
    let actual_span = i64::from(hi) - i64::from(lo);
    let leading_coeff = p.coefficient_in(0, hi);
    let trailing_coeff = p.coefficient_in(0, lo);
    let degree_ok = actual_span == expected_degree as i64;
    let leading_unit = leading_coeff.is_unit();
    let trailing_unit = trailing_coeff.is_unit();
    let mut reasons = Vec::new();
    if !degree_ok {
        reasons.push(format!("degree span {actual_span} differs from nN = {expected_degree}"));
    }
    if !leading_unit {
        reasons.push(format!("leading coefficient {} is not a unit", leading_coeff.render()));
    }
    if !trailing_unit {
        reasons.push(format!("trailing coefficient {} is not a unit", trailing_coeff.render()));
    }
    Ok(ObstructionReport {
        expected_degree,
        actual_span,
        leading_coeff,
        trailing_coeff,
        degree_ok,
        leading_unit,
        trailing_unit,
        reasons,
    })
}

/// Whether `divisor` divides `target` in Λ, with the quotient if so.
pub fn divides<R: CoeffDomain>(
    divisor: &LaurentPoly<R>,
    target: &LaurentPoly<R>,
) -> Result<(bool, Option<LaurentPoly<R>>), TwistedError> {
    if divisor.is_zero() {
        return Err(TwistedError::ZeroDivisor);
    }
    match target.exact_div(divisor) {
        Ok(q) => Ok((true, Some(q))),
        Err(LaurentError::NotDivisible) => Ok((false, None)),
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Cyclotomic, Integers};
    use crate::laurent::VariableSet;
    use crate::presentation::{AugmentedSystem, EpsilonMap, Presentation};
    use crate::rep::Representation;

    fn zt() -> LaurentRing<Integers> {
        LaurentRing::univariate(Integers)
    }

    fn trefoil() -> PhiMap<Integers> {
        let p = Presentation::parse(&["x", "a"], &["x^2 a x^-2 x a^-1 x^-1 a"]).unwrap();
        let sys = AugmentedSystem::new(p, EpsilonMap::scalar(&[1, 0]), 0).unwrap();
        PhiMap::new(&sys, &Representation::trivial(&zt(), 1, 2)).unwrap()
    }

    fn virtual_knot() -> PhiMap<Cyclotomic> {
        let p = Presentation::parse(&["x", "a"], &["x a x^-1 a^-2", "a^3"]).unwrap();
        let sys = AugmentedSystem::new(p, EpsilonMap::scalar(&[1, 0]), 0).unwrap();
        let k = Cyclotomic::new(3).unwrap();
        let ring = LaurentRing::new(k.clone(), VariableSet::standard(1, &["alpha"]).unwrap());
        let alpha = ring.var(1);
        let w = ring.constant(k.generator().unwrap());
        let x = LambdaMatrix::from_rows(&ring, vec![vec![ring.zero(), alpha.clone()], vec![alpha, ring.zero()]]).unwrap();
        let a = LambdaMatrix::from_rows(&ring, vec![vec![w.clone(), ring.zero()], vec![ring.zero(), &w * &w]]).unwrap();
        PhiMap::new(&sys, &Representation::new(&ring, 2, vec![x, a]).unwrap()).unwrap()
    }

    #[test]
    fn trefoil_polynomial_and_wada() {
        let phi = trefoil();
        let res = alexander_lin(&phi).unwrap();
        assert_eq!(res.polynomial, zt().from_coeffs_in(0, 0, &[1, -1, 1]));
        let w = wada(&phi, &res).unwrap();
        assert_eq!(w.numerator, res.polynomial);
        assert_eq!(w.denominator, zt().from_coeffs_in(0, 0, &[1, -1]));
        assert!(!w.is_polynomial);
        assert!(w.numerator.gcd(&w.denominator).is_one());
        let report = fiber_check(&res, Some(2)).unwrap();
        assert!(report.passes(), "{:?}", report.reasons);
        let report = fiber_check(&res, None).unwrap();
        assert!(!report.degree_ok);
        assert!(report.leading_unit && report.trailing_unit);
    }

    #[test]
    fn virtual_knot_matrix_and_invariants() {
        let phi = virtual_knot();
        let ring = phi.ring().clone();
        let m = build_matrix(&phi);
        let w = ring.constant(ring.domain().generator().unwrap());
        let w2 = &w * &w;
        let at = &ring.var(0) * &ring.var(1);
        let one = ring.one();
        let zero = ring.zero();
        // [[tX − I − A], [I + A + A²]]
        let expected = LambdaMatrix::from_rows(
            &ring,
            vec![
                vec![-&one - &w, at.clone()],
                vec![at.clone(), -&one - &w2],
                vec![zero.clone(), zero.clone()],
                vec![zero.clone(), zero.clone()],
            ],
        )
        .unwrap();
        assert_eq!(m, expected);
        let res = alexander_lin(&phi).unwrap();
        assert_eq!(res.polynomial, &one - &(&at * &at));
        let w = wada(&phi, &res).unwrap();
        assert!(w.numerator.is_one() && w.denominator.is_one());
        assert_eq!(w.value_if_unit, Some(one));
        // span 2 = nN and −α² is a unit of Λ
        assert!(fiber_check(&res, None).unwrap().passes());
    }

    #[test]
    fn degenerate_inputs() {
        let p = Presentation::parse(&["x"], &[]).unwrap();
        let sys = AugmentedSystem::new(p, EpsilonMap::scalar(&[1]), 0).unwrap();
        let phi = PhiMap::new(&sys, &Representation::trivial(&zt(), 1, 1)).unwrap();
        assert_eq!(alexander_lin(&phi), Err(TwistedError::NoColumns));

        let p = Presentation::parse(&["x", "a", "b"], &["a b a^-1 b^-1"]).unwrap();
        let sys = AugmentedSystem::new(p, EpsilonMap::scalar(&[1, 0, 0]), 0).unwrap();
        let phi = PhiMap::new(&sys, &Representation::trivial(&zt(), 1, 3)).unwrap();
        assert_eq!(alexander_lin(&phi), Err(TwistedError::Deficiency { m: 1, n: 2 }));

        // free group of rank 2 with a trivial relator: zero row, D = 0
        let p = Presentation::parse(&["x", "a"], &[""]).unwrap();
        let sys = AugmentedSystem::new(p, EpsilonMap::scalar(&[1, 0]), 0).unwrap();
        let phi = PhiMap::new(&sys, &Representation::trivial(&zt(), 1, 2)).unwrap();
        let res = alexander_lin(&phi).unwrap();
        assert!(res.polynomial.is_zero());
        assert!(wada(&phi, &res).unwrap().numerator.is_zero());
        assert_eq!(fiber_check(&res, None), Err(TwistedError::ZeroPolynomial));
        assert_eq!(build_matrix(&phi).rows(), 1);
    }

    #[test]
    fn constant_unit_fails_on_degree() {
        let phi = trefoil();
        let mut res = alexander_lin(&phi).unwrap();
        res.polynomial = zt().one();
        let report = fiber_check(&res, None).unwrap();
        assert!(!report.degree_ok && report.leading_unit && report.trailing_unit);
        assert!(!report.passes());
    }

    #[test]
    fn rank_two_epsilon_is_rejected() {
        let p = Presentation::parse(&["x", "a"], &["x a x^-1 a^-1"]).unwrap();
        let sys = AugmentedSystem::new(p, EpsilonMap::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap(), 0).unwrap();
        let ring = LaurentRing::new(Integers, VariableSet::standard::<&str>(2, &[]).unwrap());
        let phi = PhiMap::new(&sys, &Representation::trivial(&ring, 1, 2)).unwrap();
        let res = alexander_lin(&phi).unwrap();
        // the single 1×1 minor is Φ(∂r/∂a) = t1 − 1
        assert_eq!(res.polynomial, ring.from_int_terms([(vec![1, 0], 1), (vec![0, 0], -1)]).canonical());
        assert_eq!(fiber_check(&res, None), Err(TwistedError::NotUnivariate(2)));
    }

    #[test]
    fn divisibility() {
        let r = zt();
        let (ok, q) = divides(&r.from_coeffs_in(0, 0, &[-1, 1]), &r.from_coeffs_in(0, 0, &[-1, 0, 1])).unwrap();
        assert!(ok);
        assert_eq!(q.unwrap(), r.from_coeffs_in(0, 0, &[1, 1]));
        let (ok, q) = divides(&r.from_coeffs_in(0, 0, &[2, 1]), &r.from_coeffs_in(0, 0, &[1, -1, 1])).unwrap();
        assert!(!ok && q.is_none());
        // units divide everything
        let (ok, q) = divides(&r.var_pow(0, -3).negate(), &r.from_coeffs_in(0, 0, &[1, 1])).unwrap();
        assert!(ok);
        assert_eq!(q.unwrap(), r.from_coeffs_in(0, 3, &[-1, -1]));
        assert_eq!(divides(&r.zero(), &r.one()), Err(TwistedError::ZeroDivisor));
    }
}
