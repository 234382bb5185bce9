//! Property tests for the exact-arithmetic layer.

use proptest::prelude::*;

use casinv::poly::Monomial;
use casinv::vars::{PrintSpace, VarKind, VariableTable};
use casinv::{Poly, Rat, RatFn};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..3, 3).prop_map(|exps| {
        Monomial::from_pairs(
            exps.into_iter()
                .enumerate()
                .map(|(v, e)| (casinv::vars::VarId(v as u32), e))
                .collect(),
        )
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((monomial(), small_rat()), 1..5).prop_map(Poly::from_terms)
}

fn table() -> VariableTable {
    let mut t = VariableTable::new();
    for i in 0..3u32 {
        t.add(
            VarKind::CoordPlain { index: i + 1 },
            format!("x{}", i + 1),
            Some(format!("e{}", i + 1)),
        );
    }
    t
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &a) * &b, Poly::zero());
    }

    #[test]
    fn fraction_equality_is_cross_multiplicative(a in poly(), b in poly(), c in poly()) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        // a/b == (a c)/(b c) without any gcd computation
        let plain = RatFn::new(a.clone(), b.clone()).unwrap();
        let inflated = RatFn::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(plain, inflated);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        let q = product.exact_div(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn derivative_is_linear_and_leibniz(a in poly(), b in poly()) {
        let v = casinv::vars::VarId(0);
        let sum = (&a + &b).derivative(v);
        prop_assert_eq!(&sum, &(&a.derivative(v) + &b.derivative(v)));
        let product = (&a * &b).derivative(v);
        let leibniz = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(product, leibniz);
    }

    #[test]
    fn grammar_round_trips_polynomials(p in poly()) {
        let t = table();
        let f = RatFn::from_poly(p);
        let printed = casinv::grammar::print_ratfn(&f, &t, PrintSpace::Dual);
        let parsed = casinv::grammar::parse_ratfn(&printed, &t).unwrap();
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn grammar_round_trips_fractions(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let t = table();
        let f = RatFn::new(a, b).unwrap();
        for space in [PrintSpace::Dual, PrintSpace::Algebra] {
            let printed = casinv::grammar::print_ratfn(&f, &t, space);
            let parsed = casinv::grammar::parse_ratfn(&printed, &t).unwrap();
            prop_assert_eq!(parsed, f.clone());
        }
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        a in poly(),
        b in poly(),
        x0 in -9i64..=9,
        x1 in -9i64..=9,
        x2 in -9i64..=9,
    ) {
        prop_assume!(!b.is_zero());
        let f = RatFn::new(a, b).unwrap();
        let point: Vec<Rat> = [x0, x1, x2].iter().map(|&v| casinv::rat(v)).collect();
        let mut bindings = std::collections::BTreeMap::new();
        for (i, val) in point.iter().enumerate() {
            bindings.insert(casinv::vars::VarId(i as u32), RatFn::constant(val.clone()));
        }
        match (f.eval(&point), f.substitute(&bindings)) {
            (Some(direct), Ok(substituted)) => {
                prop_assert_eq!(substituted.as_constant().unwrap(), direct);
            }
            (None, Err(_)) => {}
            (direct, substituted) => {
                return Err(TestCaseError::fail(format!(
                    "evaluation and substitution disagree: {direct:?} vs {substituted:?}"
                )));
            }
        }
    }
}
