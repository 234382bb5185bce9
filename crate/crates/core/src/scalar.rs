//! Coefficient abstraction for the polynomial layer.
//!
//! The polynomial, rational-function and matrix code is generic over the
//! scalar type through [`Scalar`]; the rest of the crate instantiates it with
//! arbitrary-precision rationals ([`crate::Rat`]). Floating point types do not
//! qualify: exactness (`Eq` + `Hash`) is part of the contract.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// An exact field usable as polynomial coefficients.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + Eq + Hash + Debug + Display + Send + Sync + 'static
{
    /// Joint scale factor that puts the fraction with coefficient lists
    /// `num` and `den` into canonical form once every coefficient is divided
    /// by it. `den_lead` is the leading coefficient of the denominator. The
    /// default makes the denominator monic.
    fn canonical_scale(num: &[Self], den: &[Self], den_lead: &Self) -> Self {
        let _ = (num, den);
        den_lead.clone()
    }
}

impl Scalar for BigRational {
    /// Scale so that all coefficients become integers with overall content 1
    /// and the denominator's leading coefficient is positive.
    fn canonical_scale(num: &[Self], den: &[Self], den_lead: &Self) -> Self {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in num.iter().chain(den.iter()) {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            g = BigInt::one();
        }
        let mut scale = BigRational::new(g, l);
        if den_lead.is_negative() {
            scale = -scale;
        }
        scale
    }
}

/// Parse an exact rational from `p`, `-p` or `p/q` notation.
pub fn rat_from_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(p))
    }
}

/// Display an exact rational as `p` or `p/q`.
pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
