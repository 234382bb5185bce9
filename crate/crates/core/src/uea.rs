//! Universal enveloping algebra arithmetic in the PBW basis, the
//! symmetrization operator, and the Casimir commutation check.
//!
//! Words rewrite through e_j e_i = e_i e_j + [e_j, e_i] for j > i; every swap
//! strictly lowers the inversion count and bracket terms are shorter, so
//! normalization terminates.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::invariant::InvariantExpression;
use crate::scalar::rat_to_string;
use crate::{Poly, Rat};

/// A word e_{i1} ... e_{ir} in 1-based basis indices; the empty word is the
/// unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct NCWord(pub Vec<usize>);

impl NCWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Element of the enveloping algebra in PBW normal form: every stored word is
/// nondecreasing and no coefficient is zero.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<NCWord, Rat>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::default();
        p.add_term(NCWord::default(), Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: NCWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert!(w.is_sorted(), "PBW form requires sorted words");
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPolynomial {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Product in the enveloping algebra, re-normalized to PBW form.
    pub fn mul(&self, rhs: &Self, alg: &LieAlgebra) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut word = wa.0.clone();
                word.extend_from_slice(&wb.0);
                let normalized = nc_normalize_word(&word, alg);
                for (w, c) in normalized.terms {
                    out.add_term(w, c * ca * cb);
                }
            }
        }
        out
    }
}

/// Rewrite one word into PBW normal form.
pub fn nc_normalize(word: &NCWord, alg: &LieAlgebra) -> NCPolynomial {
    nc_normalize_word(&word.0, alg)
}

fn nc_normalize_word(word: &[usize], alg: &LieAlgebra) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    let mut work: Vec<(Rat, Vec<usize>)> = vec![(Rat::one(), word.to_vec())];
    while let Some((coef, w)) = work.pop() {
        match w.windows(2).position(|p| p[0] > p[1]) {
            None => out.add_term(NCWord(w), coef),
            Some(t) => {
                // e_j e_i = e_i e_j + [e_j, e_i]
                let (j, i) = (w[t], w[t + 1]);
                let mut swapped = w.clone();
                swapped.swap(t, t + 1);
                work.push((coef.clone(), swapped));
                for (k, c) in alg.bracket(j, i) {
                    let mut shorter = Vec::with_capacity(w.len() - 1);
                    shorter.extend_from_slice(&w[..t]);
                    shorter.push(k);
                    shorter.extend_from_slice(&w[t + 2..]);
                    work.push((&coef * &c, shorter));
                }
            }
        }
    }
    out
}

fn letters_commute(word: &[usize], alg: &LieAlgebra) -> bool {
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if !alg.bracket(word[a], word[b]).is_empty() {
                return false;
            }
        }
    }
    true
}

const SYM_DEGREE_LIMIT: usize = 8;

/// The symmetrization operator: each monomial whose letters do not all
/// commute is averaged over all permutations and re-normalized; monomials of
/// pairwise commuting letters are left alone.
pub fn sym(p: &NCPolynomial, alg: &LieAlgebra) -> Result<NCPolynomial> {
    let mut out = NCPolynomial::zero();
    for (w, c) in p.terms() {
        if w.len() <= 1 || letters_commute(&w.0, alg) {
            out.add_term(w.clone(), c.clone());
            continue;
        }
        if w.len() > SYM_DEGREE_LIMIT {
            return Err(Error::SpecError(format!(
                "monomial degree {} exceeds the symmetrization limit {}",
                w.len(),
                SYM_DEGREE_LIMIT
            )));
        }
        let mut letters = w.0.clone();
        let mut count = 0usize;
        let mut acc = NCPolynomial::zero();
        permutations(&mut letters, 0, &mut |perm| {
            let normalized = nc_normalize_word(perm, alg);
            acc = acc.add(&normalized);
            count += 1;
        });
        let factor = c / Rat::from_integer((count as i64).into());
        out = out.add(&acc.scale(&factor));
    }
    Ok(out)
}

fn permutations(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}

/// True when C commutes with every generator.
pub fn is_casimir(c: &NCPolynomial, alg: &LieAlgebra) -> bool {
    let mut gen = NCPolynomial::zero();
    for i in 1..=alg.dim() {
        gen = NCPolynomial::zero();
        gen.add_term(NCWord(vec![i]), Rat::one());
        let left = gen.mul(c, alg);
        let right = c.mul(&gen, alg);
        if !left.sub(&right).is_zero() {
            return false;
        }
    }
    let _ = gen;
    true
}

/// Outcome of symmetrizing an invariant: a Casimir candidate, or a formal
/// quotient when the invariant is rational.
#[derive(Clone, Debug, PartialEq)]
pub enum SymOutcome {
    Polynomial(NCPolynomial),
    Quotient {
        num: NCPolynomial,
        den: NCPolynomial,
    },
}

fn lift_poly_sorted(p: &Poly, alg: &LieAlgebra) -> Result<NCPolynomial> {
    let mut out = NCPolynomial::zero();
    for (m, c) in p.terms() {
        let mut word = Vec::new();
        for &(v, e) in m.pairs() {
            if v.index() >= alg.dim() {
                return Err(Error::DomainError(format!(
                    "variable id {} is not a coordinate",
                    v.0
                )));
            }
            for _ in 0..e {
                word.push(v.index() + 1);
            }
        }
        out.add_term(NCWord(word), c.clone());
    }
    Ok(out)
}

/// Turn an invariant into an enveloping-algebra element under the coordinate
/// relabeling x_ij -> e_ji, x_p0 -> f_p (the identity on variable ids).
///
/// Polynomial invariants are genuinely symmetrized. Rational invariants
/// return the formal pair (numerator lifted in the fixed nondecreasing word
/// order, denominator); the ordering convention makes the symmetrization
/// differ only by constant summands. Power products with fractional
/// exponents cannot be symmetrized.
pub fn symmetrize_invariant(expr: &InvariantExpression, alg: &LieAlgebra) -> Result<SymOutcome> {
    if expr.has_fractional_exponent() {
        return Err(Error::NotSymmetrizable);
    }
    let f = expr.as_ratfn().expect("integer exponents collapse");
    if let Some(p) = f.as_polynomial() {
        let lifted = lift_poly_sorted(&p, alg)?;
        return Ok(SymOutcome::Polynomial(sym(&lifted, alg)?));
    }
    Ok(SymOutcome::Quotient {
        num: lift_poly_sorted(f.num(), alg)?,
        den: lift_poly_sorted(f.den(), alg)?,
    })
}

/// Print an enveloping-algebra element with the algebra's basis labels,
/// higher-degree words first.
pub fn print_nc(p: &NCPolynomial, alg: &LieAlgebra) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&NCWord, &Rat)> = p.terms().collect();
    terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
    let mut out = String::new();
    for (idx, (w, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut parts = Vec::new();
        if !abs.is_one() || w.is_empty() {
            parts.push(rat_to_string(&abs));
        }
        for &i in &w.0 {
            parts.push(alg.basis_label(i).to_string());
        }
        out.push_str(&parts.join("*"));
    }
    out
}

pub fn print_sym_outcome(outcome: &SymOutcome, alg: &LieAlgebra) -> String {
    match outcome {
        SymOutcome::Polynomial(p) => print_nc(p, alg),
        SymOutcome::Quotient { num, den } => {
            format!("({}) / ({})", print_nc(num, alg), print_nc(den, alg))
        }
    }
}

/// Lift a commutative polynomial in the coordinates to sorted PBW words
/// without symmetrizing; exposed for tests of the ordering convention.
pub fn lift_sorted(p: &Poly, alg: &LieAlgebra) -> Result<NCPolynomial> {
    lift_poly_sorted(p, alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_g48, build_t0};
    use crate::grammar::parse_ratfn;
    use crate::rat;

    fn word(ids: &[usize]) -> NCWord {
        NCWord(ids.to_vec())
    }

    #[test]
    fn pbw_rewrites() {
        // g4.8: e3 e2 = e2 e3 - e1
        let alg = build_g48(rat(1));
        let p = nc_normalize(&word(&[3, 2]), &alg);
        let mut expect = NCPolynomial::zero();
        expect.add_term(word(&[2, 3]), Rat::one());
        expect.add_term(word(&[1]), -Rat::one());
        assert_eq!(p, expect);
        // already sorted: unchanged
        let p = nc_normalize(&word(&[1, 2, 4]), &alg);
        let mut expect = NCPolynomial::zero();
        expect.add_term(word(&[1, 2, 4]), Rat::one());
        assert_eq!(p, expect);
        // t0(3): e23 e12 = e12 e23 - e13 (indices 3, 1, 2)
        let alg = build_t0(3).unwrap();
        let p = nc_normalize(&word(&[3, 1]), &alg);
        let mut expect = NCPolynomial::zero();
        expect.add_term(word(&[1, 3]), Rat::one());
        expect.add_term(word(&[2]), -Rat::one());
        assert_eq!(p, expect);
    }

    #[test]
    fn sym_examples() {
        let alg = build_g48(rat(-1));
        // commuting monomial e1 e4 is untouched
        let mut p = NCPolynomial::zero();
        p.add_term(word(&[1, 4]), Rat::one());
        assert_eq!(sym(&p, &alg).unwrap(), p);
        // e2 e3 -> (e2 e3 + e3 e2)/2 = e2 e3 - e1/2
        let mut p = NCPolynomial::zero();
        p.add_term(word(&[2, 3]), Rat::one());
        let s = sym(&p, &alg).unwrap();
        let mut expect = NCPolynomial::zero();
        expect.add_term(word(&[2, 3]), Rat::one());
        expect.add_term(word(&[1]), Rat::new((-1).into(), 2.into()));
        assert_eq!(s, expect);
    }

    #[test]
    fn symmetrized_g48_invariant_is_casimir() {
        let alg = build_g48(rat(-1));
        let table = alg.base_table();
        // x1 x4 - x2 x3 symmetrizes to e1 e4 - (e2 e3 + e3 e2)/2
        let f = parse_ratfn("x1*x4 - x2*x3", &table).unwrap();
        let expr = InvariantExpression::Rational(f);
        let SymOutcome::Polynomial(c) = symmetrize_invariant(&expr, &alg).unwrap() else {
            panic!("expected polynomial outcome");
        };
        let mut expect = NCPolynomial::zero();
        expect.add_term(word(&[1, 4]), Rat::one());
        expect.add_term(word(&[2, 3]), -Rat::one());
        expect.add_term(word(&[1]), Rat::new(1.into(), 2.into()));
        assert_eq!(c, expect);
        assert!(is_casimir(&c, &alg));
        // and it differs from the unsymmetrized e1 e4 - e2 e3 by e1/2
        let unsym = lift_sorted(
            &parse_ratfn("x1*x4 - x2*x3", &table)
                .unwrap()
                .as_polynomial()
                .unwrap(),
            &alg,
        )
        .unwrap();
        let diff = c.sub(&unsym);
        let mut half_e1 = NCPolynomial::zero();
        half_e1.add_term(word(&[1]), Rat::new(1.into(), 2.into()));
        assert_eq!(diff, half_e1);
        // e1 itself is a Casimir operator
        let mut e1 = NCPolynomial::zero();
        e1.add_term(word(&[1]), Rat::one());
        assert!(is_casimir(&e1, &alg));
    }

    #[test]
    fn casimir_checks_in_t0() {
        let alg = build_t0(3).unwrap();
        // e13 (index 2) is central
        let mut e13 = NCPolynomial::zero();
        e13.add_term(word(&[2]), Rat::one());
        assert!(is_casimir(&e13, &alg));
        // e12 (index 1) is not
        let mut e12 = NCPolynomial::zero();
        e12.add_term(word(&[1]), Rat::one());
        assert!(!is_casimir(&e12, &alg));
    }

    #[test]
    fn quotient_outcome_for_rational_invariants() {
        let alg = build_g48(rat(-1));
        let table = alg.base_table();
        let f = parse_ratfn("x4 - x2*x3/x1", &table).unwrap();
        let expr = InvariantExpression::Rational(f);
        let SymOutcome::Quotient { num, den } = symmetrize_invariant(&expr, &alg).unwrap() else {
            panic!("expected quotient outcome");
        };
        // numerator (x1 x4 - x2 x3) lifts in sorted order; denominator is e1
        let mut expect_den = NCPolynomial::zero();
        expect_den.add_term(word(&[1]), Rat::one());
        assert_eq!(den, expect_den);
        let mut expect_num = NCPolynomial::zero();
        expect_num.add_term(word(&[1, 4]), Rat::one());
        expect_num.add_term(word(&[2, 3]), -Rat::one());
        assert_eq!(num, expect_num);
    }

    #[test]
    fn fractional_power_products_are_rejected() {
        use crate::invariant::PowerProduct;
        let alg = build_t0(4).unwrap();
        let pp = PowerProduct::new(vec![(
            crate::RatFn::var(crate::vars::VarId(0)),
            Rat::new(1.into(), 2.into()),
        )]);
        let err = symmetrize_invariant(&InvariantExpression::PowerProduct(pp), &alg);
        assert_eq!(err.unwrap_err(), Error::NotSymmetrizable);
    }
}
