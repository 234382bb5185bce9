//! Independent correctness oracles: infinitesimal invariance, the generic
//! invariant count from the rank of the structure matrix, and functional
//! independence through Jacobian ranks at random rational points.
//!
//! Invariance is decided symbolically (the applied vector field must vanish
//! identically); random points appear only in rank computations, where a
//! generic-point rank lower-bounds the generic rank.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::invariant::{gradient_at, InvariantExpression};
use crate::matrix::scalar_rank;
use crate::rng::Rng;
use crate::vars::VarId;
use crate::{Poly, Rat, RatFn};

/// Default seed for the rank checks; identical seeds give identical reports.
pub const DEFAULT_SEED: u64 = 0;

const POINT_RETRIES: usize = 25;
const SAMPLE_RANGE: (i64, i64) = (-20, 20);

/// Apply the coadjoint vector field of generator `i`:
/// `X_i F = sum_{j,k} c_ij^k x_k dF/dx_j`.
pub fn infinitesimal_apply(alg: &LieAlgebra, i: usize, f: &RatFn) -> Result<RatFn> {
    if i == 0 || i > alg.dim() {
        return Err(Error::IndexError(format!("generator {i}")));
    }
    for v in f.vars() {
        if v.index() >= alg.dim() {
            return Err(Error::DomainError(format!(
                "variable id {} is not a coordinate of the algebra",
                v.0
            )));
        }
    }
    let mut acc = RatFn::zero();
    for j in 1..=alg.dim() {
        let terms = alg.bracket(i, j);
        if terms.is_empty() {
            continue;
        }
        let df = f.derivative(VarId((j - 1) as u32));
        if df.is_zero() {
            continue;
        }
        let mut coeff = Poly::zero();
        for (k, c) in terms {
            coeff.add_term(crate::poly::Monomial::var(VarId((k - 1) as u32)), c);
        }
        acc = &acc + &(&RatFn::from_poly(coeff) * &df);
    }
    Ok(acc)
}

/// Symbolic invariance check. Rational and affine expressions must be
/// annihilated by every generator; power products satisfy the logarithmic
/// derivative rule sum_j r_j X_i(F_j)/F_j = 0.
pub fn is_invariant(alg: &LieAlgebra, expr: &InvariantExpression) -> Result<bool> {
    for i in 1..=alg.dim() {
        let mut acc = RatFn::zero();
        for (f, e) in expr.log_factors() {
            let applied = infinitesimal_apply(alg, i, &f)?;
            if applied.is_zero() {
                continue;
            }
            let term = (&RatFn::constant(e) * &applied).checked_div(&f)?;
            acc = &acc + &term;
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The constant lambda with `X_i F = lambda F`, when F is a relative
/// invariant for generator i. Proportionality is decided by
/// cross-multiplication, since quotients stay unreduced.
pub fn relative_weight(alg: &LieAlgebra, i: usize, f: &RatFn) -> Result<Option<Rat>> {
    let applied = infinitesimal_apply(alg, i, f)?;
    if applied.is_zero() {
        return Ok(Some(Rat::zero()));
    }
    let p = applied.num() * f.den();
    let q = f.num() * applied.den();
    let (pm, pc) = p.leading().expect("nonzero");
    let (qm, qc) = q.leading().expect("nonzero");
    if pm != qm {
        return Ok(None);
    }
    let lambda = pc / qc;
    if q.scale(&lambda) == p {
        Ok(Some(lambda))
    } else {
        Ok(None)
    }
}

fn sample_point(rng: &mut Rng, dim: usize) -> Vec<Rat> {
    (0..dim)
        .map(|_| Rat::from_integer(rng.int_in(SAMPLE_RANGE.0, SAMPLE_RANGE.1).into()))
        .collect()
}

/// Number of functionally independent invariants: dim minus the generic rank
/// of the matrix M(x)_ij = sum_k c_ij^k x_k, evaluated at random integer
/// points. Three points must agree; persistent disagreement is reported.
pub fn generic_invariant_count(alg: &LieAlgebra, seed: u64) -> Result<usize> {
    let dim = alg.dim();
    let mut rng = Rng::new(seed);
    for _ in 0..POINT_RETRIES {
        let mut ranks = Vec::with_capacity(3);
        for _ in 0..3 {
            let pt = sample_point(&mut rng, dim);
            let mut m = vec![vec![Rat::zero(); dim]; dim];
            for i in 1..=dim {
                for j in i + 1..=dim {
                    let mut val = Rat::zero();
                    for (k, c) in alg.bracket(i, j) {
                        val += &c * &pt[k - 1];
                    }
                    if !val.is_zero() {
                        m[i - 1][j - 1] = val.clone();
                        m[j - 1][i - 1] = -val;
                    }
                }
            }
            ranks.push(scalar_rank(m));
        }
        if ranks[0] == ranks[1] && ranks[1] == ranks[2] {
            return Ok(dim - ranks[0]);
        }
    }
    Err(Error::Inconclusive(
        "rank of the structure matrix did not stabilize across sampled points".into(),
    ))
}

fn jacobian_rows(
    exprs: &[InvariantExpression],
    coords: &[VarId],
    point: &[Rat],
) -> Option<Vec<Vec<Rat>>> {
    exprs
        .iter()
        .map(|e| gradient_at(e, coords, point))
        .collect()
}

/// Functional independence: the Jacobian (logarithmic rows for power
/// products) has rank equal to the number of expressions at a random
/// admissible point.
pub fn functionally_independent(
    exprs: &[InvariantExpression],
    alg: &LieAlgebra,
    seed: u64,
) -> Result<bool> {
    if exprs.is_empty() {
        return Ok(true);
    }
    let coords: Vec<VarId> = (0..alg.dim() as u32).map(VarId).collect();
    let mut rng = Rng::new(seed);
    let mut saw_admissible = false;
    for _ in 0..POINT_RETRIES {
        let pt = sample_point(&mut rng, alg.dim());
        let Some(rows) = jacobian_rows(exprs, &coords, &pt) else {
            continue;
        };
        saw_admissible = true;
        if scalar_rank(rows) == exprs.len() {
            return Ok(true);
        }
    }
    if saw_admissible {
        Ok(false)
    } else {
        Err(Error::Inconclusive(
            "no admissible evaluation point found".into(),
        ))
    }
}

/// Two invariant sets generate the same field when each is independent and
/// augmenting one with the other does not raise the Jacobian rank. Checked
/// exactly at three admissible random points.
pub fn same_invariant_field(
    a: &[InvariantExpression],
    b: &[InvariantExpression],
    alg: &LieAlgebra,
    seed: u64,
) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    if a.is_empty() {
        return Ok(true);
    }
    let coords: Vec<VarId> = (0..alg.dim() as u32).map(VarId).collect();
    let mut rng = Rng::new(seed);
    let mut checked = 0;
    for _ in 0..POINT_RETRIES {
        if checked == 3 {
            break;
        }
        let pt = sample_point(&mut rng, alg.dim());
        let Some(rows_a) = jacobian_rows(a, &coords, &pt) else {
            continue;
        };
        let Some(rows_b) = jacobian_rows(b, &coords, &pt) else {
            continue;
        };
        let rank_a = scalar_rank(rows_a.clone());
        let rank_b = scalar_rank(rows_b.clone());
        let mut union = rows_a;
        union.extend(rows_b);
        let rank_union = scalar_rank(union);
        if rank_a != a.len() || rank_b != b.len() || rank_union != a.len() {
            return Ok(false);
        }
        checked += 1;
    }
    if checked == 3 {
        Ok(true)
    } else {
        Err(Error::Inconclusive(
            "not enough admissible evaluation points".into(),
        ))
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct GeneratorResidual {
    pub generator: String,
    pub zero: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct ExpressionReport {
    pub expression: String,
    pub invariant: bool,
    pub residuals: Vec<GeneratorResidual>,
}

/// Per-expression, per-generator residual report.
pub fn verification_report(
    alg: &LieAlgebra,
    items: &[(String, InvariantExpression)],
) -> Result<Vec<ExpressionReport>> {
    let mut out = Vec::with_capacity(items.len());
    for (text, expr) in items {
        let mut residuals = Vec::with_capacity(alg.dim());
        let mut all_zero = true;
        for i in 1..=alg.dim() {
            let mut acc = RatFn::zero();
            for (f, e) in expr.log_factors() {
                let applied = infinitesimal_apply(alg, i, &f)?;
                if applied.is_zero() {
                    continue;
                }
                acc = &acc + &(&RatFn::constant(e) * &applied).checked_div(&f)?;
            }
            let zero = acc.is_zero();
            all_zero &= zero;
            residuals.push(GeneratorResidual {
                generator: alg.basis_label(i).to_string(),
                zero,
            });
        }
        out.push(ExpressionReport {
            expression: text.clone(),
            invariant: all_zero,
            residuals,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_g48, build_t0, build_t_gamma, TriangularSpec};
    use crate::closedform::{algebra_basis, coordinate_matrix, relative_invariants};
    use crate::grammar::parse_ratfn;
    use crate::rat;

    #[test]
    fn infinitesimal_examples() {
        // central coordinate of t0(3) is annihilated by every generator
        let alg = build_t0(3).unwrap();
        let t = alg.base_table();
        let f = parse_ratfn("x[3,1]", &t).unwrap();
        for i in 1..=3 {
            assert!(infinitesimal_apply(&alg, i, &f).unwrap().is_zero());
        }
        // x[2,1] is moved by e23 onto a multiple of x[3,1]
        let f = parse_ratfn("x[2,1]", &t).unwrap();
        let moved = infinitesimal_apply(&alg, 3, &f).unwrap();
        let x31 = parse_ratfn("x[3,1]", &t).unwrap();
        assert!(!moved.is_zero());
        assert!(moved.checked_div(&x31).unwrap().is_constant());
        // and e12 moves x[3,2]
        let f = parse_ratfn("x[3,2]", &t).unwrap();
        let moved = infinitesimal_apply(&alg, 1, &f).unwrap();
        assert!(moved.checked_div(&x31).unwrap().is_constant());
        // the displayed invariant of g4.8(-1)
        let alg = build_g48(rat(-1));
        let t = alg.base_table();
        let f = parse_ratfn("x4 - x2*x3/x1", &t).unwrap();
        for i in 1..=4 {
            assert!(infinitesimal_apply(&alg, i, &f).unwrap().is_zero(), "i={i}");
        }
        // parameters are rejected
        let spec = TriangularSpec::new(3, vec![]).unwrap();
        let lifted = crate::coadjoint::lifted_triangular(&spec).unwrap();
        let alg3 = build_t_gamma(&spec);
        let entry = lifted.entry("I[2,1]").unwrap();
        assert!(matches!(
            infinitesimal_apply(&alg3, 1, entry),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn invariance_checks() {
        let alg = build_t0(3).unwrap();
        let t = alg.base_table();
        let good = InvariantExpression::Rational(parse_ratfn("x[3,1]", &t).unwrap());
        let bad = InvariantExpression::Rational(parse_ratfn("x[2,1]", &t).unwrap());
        assert!(is_invariant(&alg, &good).unwrap());
        assert!(!is_invariant(&alg, &bad).unwrap());
    }

    #[test]
    fn counts() {
        assert_eq!(
            generic_invariant_count(&build_g48(Rat::new(1.into(), 2.into())), 0).unwrap(),
            0
        );
        assert_eq!(generic_invariant_count(&build_g48(rat(-1)), 0).unwrap(), 2);
        assert_eq!(
            generic_invariant_count(&build_t0(6).unwrap(), 0).unwrap(),
            3
        );
        // abelian: everything is invariant
        use crate::vars::VarKind;
        let abelian = LieAlgebra::new(
            3,
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec!["x1".into(), "x2".into(), "x3".into()],
            (1..=3).map(|i| VarKind::CoordPlain { index: i }).collect(),
            vec![],
            None,
        )
        .unwrap();
        assert_eq!(generic_invariant_count(&abelian, 0).unwrap(), 3);
    }

    #[test]
    fn independence() {
        let alg = build_t0(4).unwrap();
        let t = alg.base_table();
        let d1 = InvariantExpression::Rational(parse_ratfn("x[4,1]", &t).unwrap());
        let d2 = InvariantExpression::Rational(
            parse_ratfn("x[3,1]*x[4,2] - x[4,1]*x[3,2]", &t).unwrap(),
        );
        assert!(functionally_independent(&[d1.clone(), d2], &alg, 0).unwrap());
        let scaled = InvariantExpression::Rational(parse_ratfn("2*x[4,1]", &t).unwrap());
        assert!(!functionally_independent(&[d1, scaled], &alg, 0).unwrap());
    }

    #[test]
    fn relative_invariants_scale_by_constants() {
        let spec = TriangularSpec::new(4, vec![vec![rat(1), rat(0), rat(0), rat(0)]]).unwrap();
        let alg = build_t_gamma(&spec);
        for f in relative_invariants(&spec).unwrap() {
            for i in 1..=alg.dim() {
                assert!(relative_weight(&alg, i, &f).unwrap().is_some());
            }
        }
        let _ = coordinate_matrix(4);
    }

    #[test]
    fn closed_form_bases_verify() {
        let spec = TriangularSpec::new(4, vec![vec![rat(1), rat(0), rat(0), rat(1)]]).unwrap();
        let reduced = crate::algebra::reduce_gamma(&spec).unwrap();
        let alg = build_t_gamma(&spec);
        let basis = algebra_basis(&spec, &reduced).unwrap();
        for expr in &basis {
            assert!(is_invariant(&alg, expr).unwrap());
        }
        assert!(functionally_independent(&basis, &alg, 0).unwrap());
    }
}
