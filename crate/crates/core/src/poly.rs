//! Sparse multivariate polynomials over an exact scalar.
//!
//! Monomials are held in graded lexicographic order (by variable id), which
//! fixes leading terms, printing and hashing once and for all.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;
use crate::vars::VarId;

pub type Exp = u32;

/// Sparse monomial: sorted `(variable, exponent)` pairs, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pairs: Vec<(VarId, Exp)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial {
            pairs: vec![(v, 1)],
        }
    }

    pub fn from_pairs(mut pairs: Vec<(VarId, Exp)>) -> Self {
        pairs.retain(|&(_, e)| e != 0);
        pairs.sort_by_key(|&(v, _)| v);
        for w in pairs.windows(2) {
            assert!(w[0].0 != w[1].0, "repeated variable in monomial");
        }
        Monomial { pairs }
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent(&self, v: VarId) -> Exp {
        self.pairs
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(VarId, Exp)] {
        &self.pairs
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut pairs = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut a, mut b) = (self.pairs.iter().peekable(), other.pairs.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        pairs.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        pairs.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        pairs.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    pairs.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    pairs.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { pairs }
    }

    /// Quotient `self / other` if every exponent of `other` fits.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut pairs = Vec::with_capacity(self.pairs.len());
        let mut rest = self.pairs.iter().peekable();
        for &(v, e) in &other.pairs {
            loop {
                let &&(w, f) = rest.peek()?;
                if w < v {
                    pairs.push((w, f));
                    rest.next();
                } else if w == v {
                    if f < e {
                        return None;
                    }
                    if f > e {
                        pairs.push((w, f - e));
                    }
                    rest.next();
                    break;
                } else {
                    return None;
                }
            }
        }
        pairs.extend(rest.copied());
        Some(Monomial { pairs })
    }

    pub fn pow(&self, k: Exp) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            pairs: self.pairs.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    /// Componentwise minimum; the gcd of two monomials.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut pairs = Vec::new();
        for &(v, e) in &self.pairs {
            let f = other.exponent(v);
            let m = e.min(f);
            if m > 0 {
                pairs.push((v, m));
            }
        }
        Monomial { pairs }
    }
}

/// Graded lexicographic order: compare total degree first, then exponents
/// variable-by-variable in increasing id order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut a, mut b) = (self.pairs.iter(), other.pairs.iter());
        loop {
            match (a.next(), b.next()) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    // smaller variable id present means larger in lex
                    match vb.cmp(&va) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                (Some(_), None) | (None, Some(_)) => unreachable!("equal degree exhausts together"),
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: monomial -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<C: Scalar> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn var(v: VarId) -> Self {
        Self::term(C::one(), Monomial::var(v))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Leading (largest) term.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.terms.is_empty() {
            return Some(C::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> Exp {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Set of variables occurring with nonzero exponent.
    pub fn vars(&self) -> std::collections::BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect()
    }

    /// Coefficient of `v^k` as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: VarId, k: Exp) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                let reduced = Monomial::from_pairs(
                    m.pairs().iter().copied().filter(|&(w, _)| w != v).collect(),
                );
                out.add_term(reduced, c.clone());
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Polynomial<C> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn scale(&self, c: &C) -> Polynomial<C> {
        if c.is_zero() {
            return Polynomial::zero();
        }
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial<C> {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: Exp) -> Polynomial<C> {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut k = k;
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

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: VarId) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut factor = C::zero();
            for _ in 0..e {
                factor = factor + C::one();
            }
            let reduced = Monomial::from_pairs(
                m.pairs()
                    .iter()
                    .map(|&(w, f)| if w == v { (w, f - 1) } else { (w, f) })
                    .collect(),
            );
            out.add_term(reduced, c.clone() * factor);
        }
        out
    }

    /// Greatest common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let mut g = match iter.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        for m in iter {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None` if `d` does
    /// not divide `self`.
    pub fn exact_div(&self, d: &Polynomial<C>) -> Option<Polynomial<C>> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = Polynomial::zero();
        let (dm, dc) = d.leading().unwrap();
        let (dm, dc) = (dm.clone(), dc.clone());
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let qm = rm.try_div(&dm)?;
            let qc = rc.clone() / dc.clone();
            let t = Polynomial::term(qc, qm);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        Some(quo)
    }

    /// Evaluate at a full point given by `point[var.index()]`.
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = &point[v.index()];
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl<C: Scalar> $trait for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}
