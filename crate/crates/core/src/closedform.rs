//! Closed-form invariant bases for the triangular families.
//!
//! The coadjoint and algebra presentations carry the same polynomial data:
//! the substitution x_ij -> e_ji together with matrix transposition leaves
//! every determinant unchanged, and both spellings of a coordinate resolve to
//! the same variable id. `coadjoint_basis` and `algebra_basis` therefore
//! return identical expressions; only the print space differs.

use num_traits::{One, Zero};

use crate::algebra::{
    build_t_gamma, kappa, reduce_gamma, strict_pair_position, upper_pair_position, Family,
    LieAlgebra, ReducedGamma, TriangularSpec,
};
use crate::error::{Error, Result};
use crate::invariant::{InvariantExpression, PowerProduct};
use crate::vars::VarId;
use crate::{Mat, Rat, RatFn};

/// The strictly lower coordinate matrix X of t_gamma(n): X_ij = x_ij for
/// i > j, zero otherwise.
pub fn coordinate_matrix(n: usize) -> Mat {
    Mat::from_fn(n, n, |r, c| {
        if r > c {
            RatFn::var(VarId(strict_pair_position(c + 1, r + 1, n) as u32))
        } else {
            RatFn::zero()
        }
    })
}

/// Determinant of the lower-left block X^{kappa,n}_{1,k} (rows kappa..n,
/// columns 1..k).
pub fn antidiagonal_det(x: &Mat, k: usize) -> Result<RatFn> {
    let n = x.rows();
    let kap = kappa(n, k);
    let block = Mat::from_fn(k, k, |r, c| x[(kap - 1 + r, c)].clone());
    block.determinant()
}

/// The bordered determinant
/// `| X^{i,i}_{1,k}  0 ; X^{kappa,n}_{1,k}  X^{kappa,n}_{i,i} |`
/// of size (k+1) x (k+1), for 1 <= k <= [n/2] and k < i < kappa.
pub fn bordered_det_x(x: &Mat, i: usize, k: usize) -> Result<RatFn> {
    let n = x.rows();
    let kap = kappa(n, k);
    if !(1 <= k && k <= n / 2) {
        return Err(Error::IndexError(format!("k = {k} outside 1..=[n/2]")));
    }
    if !(k < i && i < kap) {
        return Err(Error::IndexError(format!("i = {i} outside {k}..{kap}")));
    }
    let m = Mat::from_fn(k + 1, k + 1, |r, c| {
        if r == 0 {
            if c < k {
                x[(i - 1, c)].clone()
            } else {
                RatFn::zero()
            }
        } else if c < k {
            x[(kap - 1 + (r - 1), c)].clone()
        } else {
            x[(kap - 1 + (r - 1), i - 1)].clone()
        }
    });
    m.determinant()
}

/// Basis of the coadjoint invariants of t_gamma(n) with gamma in reduced
/// form: power products of antidiagonal determinants for k outside the pivot
/// list, and affine-plus-rational expressions for the rows p > s'. When the
/// original gamma was not already reduced, the nilindependent coordinates are
/// expressed through the recorded row transform, so the result is a basis for
/// the original algebra.
pub fn coadjoint_basis(
    spec: &TriangularSpec,
    reduced: &ReducedGamma,
) -> Result<Vec<InvariantExpression>> {
    let n = spec.n();
    let s = spec.s();
    if reduced.n() != n || reduced.s() != s {
        return Err(Error::SpecError(
            "reduced data does not match the spec".into(),
        ));
    }
    let h = n / 2;
    let x = coordinate_matrix(n);
    let mut dets = Vec::with_capacity(h + 1);
    dets.push(RatFn::one()); // padding so dets[k] is |X^{kappa,n}_{1,k}|
    for k in 1..=h {
        dets.push(antidiagonal_det(&x, k)?);
    }
    let mut basis = Vec::new();
    for k in 1..=h {
        if reduced.k_list.contains(&k) {
            continue;
        }
        let mut factors = vec![(dets[k].clone(), Rat::one())];
        if let Some(betas) = reduced.beta.get(&k) {
            for (q, beta) in betas.iter().enumerate() {
                if !beta.is_zero() {
                    factors.push((dets[reduced.k_list[q]].clone(), beta.clone()));
                }
            }
        }
        let pp = PowerProduct::new(factors);
        match pp.expand() {
            Some(r) => basis.push(InvariantExpression::Rational(r)),
            None => basis.push(InvariantExpression::PowerProduct(pp)),
        }
    }
    let np = n * (n - 1) / 2;
    for p in reduced.s_prime + 1..=s {
        let row = &reduced.gamma[p - 1];
        let mut rest = RatFn::zero();
        for k in 1..=h {
            let coeff = &row[k - 1] - &row[k]; // gamma_pk - gamma_p,k+1
            if coeff.is_zero() {
                continue;
            }
            let mut inner = RatFn::zero();
            for i in k + 1..kappa(n, k) {
                inner = &inner + &bordered_det_x(&x, i, k)?;
            }
            if inner.is_zero() {
                continue;
            }
            let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
            let term = (&RatFn::constant(&sign * &coeff) * &inner).checked_div(&dets[k])?;
            rest = &rest + &term;
        }
        // x_p0 of the reduced basis expands through the row transform
        let mut linear = crate::Poly::zero();
        for (pp, coef) in reduced.lambda[p - 1].iter().enumerate() {
            if !coef.is_zero() {
                linear.add_term(
                    crate::poly::Monomial::var(VarId((np + pp) as u32)),
                    coef.clone(),
                );
            }
        }
        basis.push(InvariantExpression::Affine { linear, rest });
    }
    debug_assert_eq!(basis.len(), h + s - 2 * reduced.s_prime);
    Ok(basis)
}

/// Basis of the algebra invariants of t_gamma(n): formally derived from the
/// coadjoint basis by x_ij -> e_ji, x_p0 -> f_p and transposition, which is
/// the identity on the underlying expressions.
pub fn algebra_basis(
    spec: &TriangularSpec,
    reduced: &ReducedGamma,
) -> Result<Vec<InvariantExpression>> {
    coadjoint_basis(spec, reduced)
}

/// Basis of the invariants of t(n): the central trace and the bordered
/// ratios, k = 0..[(n-1)/2].
pub fn t_basis(n: usize) -> Result<Vec<InvariantExpression>> {
    if n < 2 {
        return Err(Error::SpecError("n must be at least 2".into()));
    }
    let var = |i: usize, j: usize| -> RatFn {
        debug_assert!(i <= j);
        RatFn::var(VarId(upper_pair_position(i, j, n) as u32))
    };
    let mut basis = Vec::new();
    // k = 0: the trace, with |E^{1,0}_{n+1,n}| read as 1
    let mut trace = RatFn::zero();
    for j in 1..=n {
        trace = &trace + &var(j, j);
    }
    basis.push(InvariantExpression::Rational(trace));
    for k in 1..=(n - 1) / 2 {
        let kap = kappa(n, k);
        let dk = Mat::from_fn(k, k, |r, c| var(r + 1, kap + c)).determinant()?;
        let mut sum = RatFn::zero();
        for j in k + 1..=n - k {
            let m = Mat::from_fn(k + 1, k + 1, |r, c| {
                if c == 0 {
                    if r < k {
                        var(r + 1, j)
                    } else {
                        var(j, j)
                    }
                } else if r < k {
                    var(r + 1, kap + (c - 1))
                } else {
                    var(j, kap + (c - 1))
                }
            });
            sum = &sum + &m.determinant()?;
        }
        basis.push(InvariantExpression::Rational(sum.checked_div(&dk)?));
    }
    Ok(basis)
}

/// The relative invariants |X^{kappa,n}_{1,k}|, k = 1..[n/2]; each scales by
/// a constant under every generator.
pub fn relative_invariants(spec: &TriangularSpec) -> Result<Vec<RatFn>> {
    let x = coordinate_matrix(spec.n());
    (1..=spec.n() / 2)
        .map(|k| antidiagonal_det(&x, k))
        .collect()
}

/// Rational-basis criterion: the invariant set admits a rational basis if and
/// only if every beta_qk is rational. With rational gamma this always holds;
/// the evaluation is kept explicit to document the criterion.
pub fn has_rational_basis(reduced: &ReducedGamma) -> bool {
    reduced
        .beta
        .values()
        .all(|row| row.iter().all(|b| !b.denom().is_zero()))
}

/// Closed-form basis for any family-tagged algebra. The g4.8(b) table goes
/// through its triangular realization with gamma = (-1, 0, b) and the basis
/// is relabeled back to e1..e4 coordinates.
pub fn closed_form_basis(alg: &LieAlgebra) -> Result<Vec<InvariantExpression>> {
    match alg.family() {
        Some(Family::TGamma(spec)) => {
            let reduced = reduce_gamma(spec)?;
            coadjoint_basis(spec, &reduced)
        }
        Some(Family::T { n }) => t_basis(*n),
        Some(Family::G48 { b }) => g48_closed_form(b),
        None => Err(Error::SpecError(
            "closed form requires a family algebra; use the normalization method".into(),
        )),
    }
}

fn substitute_expr(
    expr: &InvariantExpression,
    bindings: &std::collections::BTreeMap<VarId, RatFn>,
) -> Result<InvariantExpression> {
    Ok(match expr {
        InvariantExpression::Rational(f) => InvariantExpression::Rational(f.substitute(bindings)?),
        InvariantExpression::PowerProduct(p) => {
            let factors = p
                .factors
                .iter()
                .map(|(f, e)| Ok((f.substitute(bindings)?, e.clone())))
                .collect::<Result<Vec<_>>>()?;
            InvariantExpression::PowerProduct(PowerProduct::new(factors))
        }
        InvariantExpression::Affine { linear, rest } => {
            let combined = &RatFn::from_poly(linear.clone()) + rest;
            InvariantExpression::Rational(combined.substitute(bindings)?)
        }
    })
}

fn g48_closed_form(b: &Rat) -> Result<Vec<InvariantExpression>> {
    let spec = TriangularSpec::new(3, vec![vec![-Rat::one(), Rat::zero(), b.clone()]])?;
    let reduced = reduce_gamma(&spec)?;
    let basis = coadjoint_basis(&spec, &reduced)?;
    // identification e1 ~ e13, e2 ~ e12, e3 ~ e23, e4 ~ f; the spec scaled
    // its gamma row by q = den(b), so the triangular f is q e4 and its dual
    // coordinate is q x4
    let q = Rat::from_integer(b.denom().clone());
    let mut bindings = std::collections::BTreeMap::new();
    bindings.insert(VarId(0), RatFn::var(VarId(1))); // x[2,1] -> x2
    bindings.insert(VarId(1), RatFn::var(VarId(0))); // x[3,1] -> x1
    bindings.insert(VarId(2), RatFn::var(VarId(2))); // x[3,2] -> x3
    bindings.insert(
        VarId(3),
        &RatFn::constant(q.clone()) * &RatFn::var(VarId(3)), // x[1,0] -> q x4
    );
    let mut out = Vec::with_capacity(basis.len());
    for expr in &basis {
        let mapped = substitute_expr(expr, &bindings)?;
        // keep the affine normalization: divide the nilindependent expression
        // by q so that the leading coordinate has unit coefficient
        let mapped = match (expr, mapped) {
            (InvariantExpression::Affine { .. }, InvariantExpression::Rational(f)) => {
                let scaled = f.checked_div(&RatFn::constant(q.clone()))?;
                let linear = crate::Poly::var(VarId(3));
                let rest = &scaled - &RatFn::var(VarId(3));
                InvariantExpression::Affine { linear, rest }
            }
            (_, m) => m,
        };
        out.push(mapped);
    }
    Ok(out)
}

/// Build the algebra a closed-form basis refers to (shares variable ids with
/// the basis expressions).
pub fn family_algebra(spec: &TriangularSpec) -> LieAlgebra {
    build_t_gamma(spec)
}
