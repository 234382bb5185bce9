//! Rational functions in partially reduced form.
//!
//! A fraction is kept with integer content and common monomial factors
//! cancelled between numerator and denominator and with a sign-normalized
//! denominator; no full multivariate gcd is attempted. Equality is decided by
//! cross-multiplication, so two representations of the same function always
//! compare equal.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{Exp, Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::vars::VarId;

#[derive(Clone, Debug)]
pub struct RationalFunction<C: Scalar> {
    num: Polynomial<C>,
    den: Polynomial<C>,
}

impl<C: Scalar> RationalFunction<C> {
    pub fn new(num: Polynomial<C>, den: Polynomial<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(mut num: Polynomial<C>, mut den: Polynomial<C>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(),
            };
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        if !g.is_one() {
            num = Polynomial::from_terms(
                num.terms()
                    .map(|(m, c)| (m.try_div(&g).unwrap(), c.clone())),
            );
            den = Polynomial::from_terms(
                den.terms()
                    .map(|(m, c)| (m.try_div(&g).unwrap(), c.clone())),
            );
        }
        let num_coeffs: Vec<C> = num.terms().map(|(_, c)| c.clone()).collect();
        let den_coeffs: Vec<C> = den.terms().map(|(_, c)| c.clone()).collect();
        let den_lead = den.leading().unwrap().1.clone();
        let scale = C::canonical_scale(&num_coeffs, &den_coeffs, &den_lead);
        if !scale.is_one() {
            num = num.map_coeffs(|c| c.clone() / scale.clone());
            den = den.map_coeffs(|c| c.clone() / scale.clone());
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial<C>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn num(&self) -> &Polynomial<C> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The function as a polynomial, if the denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial<C>> {
        let c = self.den.as_constant()?;
        Some(self.num.map_coeffs(|x| x.clone() / c.clone()))
    }

    pub fn as_constant(&self) -> Option<C> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Term count of numerator plus denominator; the expression-size measure
    /// used by the normalization engine.
    pub fn size(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<VarId> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn reciprocal(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Integer power; negative exponents invert (zero base fails).
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.reciprocal()?.pow(-k);
        }
        Ok(RationalFunction::canonical(
            self.num.pow(k as Exp),
            self.den.pow(k as Exp),
        ))
    }

    /// Quotient-rule derivative with respect to `v`.
    pub fn derivative(&self, v: VarId) -> Self {
        let n = &self.num.derivative(v) * &self.den;
        let d = &self.num * &self.den.derivative(v);
        Self::canonical(&n - &d, &self.den * &self.den)
    }

    /// Simultaneous substitution of variables by rational functions.
    /// Unbound variables are left alone.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, RationalFunction<C>>) -> Result<Self> {
        self.substitute_with(bindings, &|f| f)
    }

    /// Substitution with a caller-supplied simplifier applied after every
    /// intermediate accumulation. Long substitution chains can otherwise pile
    /// up reducible denominators faster than any final cleanup can remove
    /// them.
    pub fn substitute_with(
        &self,
        bindings: &BTreeMap<VarId, RationalFunction<C>>,
        simplify: &dyn Fn(RationalFunction<C>) -> RationalFunction<C>,
    ) -> Result<Self> {
        let num = substitute_poly(&self.num, bindings, simplify);
        let den = substitute_poly(&self.den, bindings, simplify);
        if den.is_zero() {
            return Err(Error::SingularSubstitution);
        }
        simplify(num).checked_div(&simplify(den))
    }

    /// Exact evaluation at a point indexed by variable id; `None` when the
    /// denominator vanishes.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }
}

fn substitute_poly<C: Scalar>(
    p: &Polynomial<C>,
    bindings: &BTreeMap<VarId, RationalFunction<C>>,
    simplify: &dyn Fn(RationalFunction<C>) -> RationalFunction<C>,
) -> RationalFunction<C> {
    // evaluate term by term, bucketing equal denominators so that fractions
    // with a shared denominator combine by plain numerator addition
    let mut buckets: Vec<RationalFunction<C>> = Vec::new();
    'terms: for (m, c) in p.terms() {
        let mut plain = Vec::new();
        let mut bound = RationalFunction::constant(c.clone());
        for &(v, e) in m.pairs() {
            match bindings.get(&v) {
                Some(r) => {
                    // exponents are nonnegative here, so this cannot fail
                    bound = simplify(&bound * &r.pow(e as i64).expect("nonnegative power"));
                }
                None => plain.push((v, e)),
            }
        }
        let term = RationalFunction {
            num: bound.num.mul_monomial(&Monomial::from_pairs(plain)),
            den: bound.den,
        };
        for b in buckets.iter_mut() {
            if b.den == term.den {
                *b = RationalFunction::canonical(&b.num + &term.num, term.den);
                continue 'terms;
            }
        }
        buckets.push(term);
    }
    let mut acc = RationalFunction::zero();
    for b in buckets {
        acc = simplify(&acc + &b);
    }
    acc
}

/// Solve `eq = 0` for `v`, requiring the numerator to be of degree exactly 1
/// in `v`. Returns `r` with `substitute(eq, {v -> r})` identically zero.
pub fn solve_linear_for<C: Scalar>(
    eq: &RationalFunction<C>,
    v: VarId,
) -> Result<RationalFunction<C>> {
    let deg = eq.num().degree_in(v);
    if deg == 0 || deg > 1 {
        return Err(Error::NotLinear);
    }
    let a = eq.num().coeff_of(v, 1);
    let b = eq.num().coeff_of(v, 0);
    if a.is_zero() {
        return Err(Error::NoSolution);
    }
    RationalFunction::new(-&b, a)
}

impl<C: Scalar> PartialEq for RationalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<C: Scalar> Eq for RationalFunction<C> {}

impl<C: Scalar> Add for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn add(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<C: Scalar> Sub for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn sub(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num - &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<C: Scalar> Mul for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn mul(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<C: Scalar> Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Scalar> Neg for RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        -&self
    }
}
