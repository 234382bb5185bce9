//! Invariant expressions: plain rational functions, affine-plus-rational
//! combinations and power products with rational exponents.

use num_traits::{One, Zero};

use crate::vars::VarId;
use crate::{Poly, Rat, RatFn};

/// Product of rational-function factors raised to rational exponents.
/// Fractional exponents are never expanded; such expressions are verified in
/// logarithmic-derivative form.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerProduct {
    pub factors: Vec<(RatFn, Rat)>,
}

impl PowerProduct {
    pub fn new(factors: Vec<(RatFn, Rat)>) -> Self {
        let factors = factors.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        PowerProduct { factors }
    }

    /// Expand into a single rational function when all exponents are integers.
    pub fn expand(&self) -> Option<RatFn> {
        let mut acc = RatFn::one();
        for (f, e) in &self.factors {
            if !e.denom().is_one() {
                return None;
            }
            let k: i64 = e.numer().try_into().ok()?;
            acc = &acc * &f.pow(k).ok()?;
        }
        Some(acc)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<VarId> {
        let mut s = std::collections::BTreeSet::new();
        for (f, _) in &self.factors {
            s.extend(f.vars());
        }
        s
    }
}

/// A basis element of an invariant set.
#[derive(Clone, Debug, PartialEq)]
pub enum InvariantExpression {
    /// A rational function of the coordinates.
    Rational(RatFn),
    /// A degree-one polynomial (a nilindependent coordinate or a combination
    /// of them) plus a rational correction.
    Affine { linear: Poly, rest: RatFn },
    /// A power product, possibly with fractional exponents.
    PowerProduct(PowerProduct),
}

impl InvariantExpression {
    /// Collapse to a single rational function where possible. Power products
    /// collapse only when every exponent is an integer.
    pub fn as_ratfn(&self) -> Option<RatFn> {
        match self {
            InvariantExpression::Rational(r) => Some(r.clone()),
            InvariantExpression::Affine { linear, rest } => {
                Some(&RatFn::from_poly(linear.clone()) + rest)
            }
            InvariantExpression::PowerProduct(p) => p.expand(),
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<VarId> {
        match self {
            InvariantExpression::Rational(r) => r.vars(),
            InvariantExpression::Affine { linear, rest } => {
                let mut s = linear.vars();
                s.extend(rest.vars());
                s
            }
            InvariantExpression::PowerProduct(p) => p.vars(),
        }
    }

    /// Logarithmic-derivative rows exist for every kind: a rational `F` is
    /// treated as the single factor `F^1`.
    pub fn log_factors(&self) -> Vec<(RatFn, Rat)> {
        match self {
            InvariantExpression::PowerProduct(p) => p.factors.clone(),
            other => vec![(
                other.as_ratfn().expect("rational kinds always collapse"),
                Rat::one(),
            )],
        }
    }

    /// True when the expression needs fractional powers.
    pub fn has_fractional_exponent(&self) -> bool {
        match self {
            InvariantExpression::PowerProduct(p) => {
                p.factors.iter().any(|(_, e)| !e.denom().is_one())
            }
            _ => false,
        }
    }
}

/// Gradient rows for Jacobian rank checks: for rational kinds the exact
/// derivative evaluated at `point`; for power products the logarithmic
/// derivative sum_i e_i * dF_i/F_i. Returns `None` at inadmissible points.
pub fn gradient_at(
    expr: &InvariantExpression,
    coords: &[VarId],
    point: &[Rat],
) -> Option<Vec<Rat>> {
    match expr {
        InvariantExpression::PowerProduct(p) => {
            let mut row = vec![Rat::zero(); coords.len()];
            for (f, e) in &p.factors {
                let val = f.eval(point)?;
                if val.is_zero() {
                    return None;
                }
                for (idx, &v) in coords.iter().enumerate() {
                    let d = f.derivative(v).eval(point)?;
                    row[idx] += e * d / &val;
                }
            }
            Some(row)
        }
        other => {
            let f = other.as_ratfn().expect("rational kinds collapse");
            let mut row = Vec::with_capacity(coords.len());
            for &v in coords {
                row.push(f.derivative(v).eval(point)?);
            }
            Some(row)
        }
    }
}
