//! Canonical expression text: printing and parsing.
//!
//! Variables are `x[i,j]`, `x[p,0]`, `e[i,j]`, `f[p]`, `b[i,j]`, `E[p]` or
//! plain names like `x1`; rationals are `a` or `a/b`; operators `+ - * / ^`
//! with `^` taking an integer or rational literal; parentheses group;
//! whitespace is insignificant. Names resolve against the session's variable
//! table, so both dual-space and algebra-space spellings of a coordinate are
//! accepted and map to the same variable.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::invariant::{InvariantExpression, PowerProduct};
use crate::scalar::rat_to_string;
use crate::vars::{PrintSpace, VariableTable};
use crate::{Poly, Rat, RatFn};

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

pub fn print_poly(p: &Poly, table: &VariableTable, space: PrintSpace) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    // descending graded-lex order
    for (idx, (m, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(rat_to_string(&abs));
        }
        for &(v, e) in m.pairs() {
            let name = table.display(v, space);
            if e == 1 {
                factors.push(name.to_string());
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

fn den_needs_parens(d: &Poly) -> bool {
    if d.num_terms() != 1 {
        return true;
    }
    let (m, c) = d.leading().unwrap();
    if m.is_one() {
        // bare constant; `p/q` in a denominator would re-associate
        return !c.denom().is_one();
    }
    // single variable power with unit coefficient is safe after `/`
    !(c.is_one() && m.pairs().len() == 1)
}

pub fn print_ratfn(f: &RatFn, table: &VariableTable, space: PrintSpace) -> String {
    if f.is_zero() {
        return "0".into();
    }
    if f.is_polynomial() {
        let p = f.as_polynomial().unwrap();
        return print_poly(&p, table, space);
    }
    let num = print_poly(f.num(), table, space);
    let den = print_poly(f.den(), table, space);
    let num = if f.num().num_terms() > 1 {
        format!("({num})")
    } else {
        num
    };
    let den = if den_needs_parens(f.den()) {
        format!("({den})")
    } else {
        den
    };
    format!("{num}/{den}")
}

fn print_exponent(e: &Rat) -> String {
    if e.denom().is_one() && !e.is_negative() {
        format!("^{}", e.numer())
    } else {
        format!("^({})", rat_to_string(e))
    }
}

pub fn print_invariant(
    expr: &InvariantExpression,
    table: &VariableTable,
    space: PrintSpace,
) -> String {
    match expr {
        InvariantExpression::Rational(f) => print_ratfn(f, table, space),
        InvariantExpression::Affine { linear, rest } => {
            if rest.is_zero() {
                return print_poly(linear, table, space);
            }
            let head = print_poly(linear, table, space);
            let tail = print_ratfn(rest, table, space);
            if let Some(stripped) = tail.strip_prefix('-') {
                format!("{head} - {stripped}")
            } else {
                format!("{head} + {tail}")
            }
        }
        InvariantExpression::PowerProduct(p) => p
            .factors
            .iter()
            .map(|(f, e)| format!("({}){}", print_ratfn(f, table, space), print_exponent(e)))
            .collect::<Vec<_>>()
            .join("*"),
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rat),
    Variable(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n: num_bigint::BigInt = text
                .parse()
                .map_err(|_| Error::ParseError(format!("bad integer {text:?}")))?;
            tokens.push(Token::Number(Rat::from_integer(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let mut name: String = chars[start..i].iter().collect();
            if i < chars.len() && chars[i] == '[' {
                name.push('[');
                i += 1;
                loop {
                    if i >= chars.len() {
                        return Err(Error::ParseError("unterminated variable index".into()));
                    }
                    let c = chars[i];
                    if c.is_ascii_digit() || c == ',' {
                        name.push(c);
                        i += 1;
                    } else if c == ']' {
                        name.push(']');
                        i += 1;
                        break;
                    } else {
                        return Err(Error::ParseError(format!(
                            "unexpected character {c:?} in variable index"
                        )));
                    }
                }
            }
            tokens.push(Token::Variable(name));
        } else {
            let tok = match c {
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '/' => Token::Slash,
                '^' => Token::Caret,
                '(' => Token::LParen,
                ')' => Token::RParen,
                other => return Err(Error::ParseError(format!("unexpected character {other:?}"))),
            };
            tokens.push(tok);
            i += 1;
        }
    }
    Ok(tokens)
}

/// Parse value: either a rational function or a power product; sums of power
/// products are not representable and are rejected.
#[derive(Clone, Debug)]
enum Val {
    R(RatFn),
    P(Vec<(RatFn, Rat)>),
}

impl Val {
    fn add(self, rhs: Val) -> Result<Val> {
        match (self, rhs) {
            (Val::R(a), Val::R(b)) => Ok(Val::R(&a + &b)),
            _ => Err(Error::ParseError(
                "power products combine only multiplicatively".into(),
            )),
        }
    }

    fn sub(self, rhs: Val) -> Result<Val> {
        match (self, rhs) {
            (Val::R(a), Val::R(b)) => Ok(Val::R(&a - &b)),
            _ => Err(Error::ParseError(
                "power products combine only multiplicatively".into(),
            )),
        }
    }

    fn neg(self) -> Val {
        match self {
            Val::R(a) => Val::R(-&a),
            Val::P(mut f) => {
                f.push((RatFn::constant(-Rat::one()), Rat::one()));
                Val::P(f)
            }
        }
    }

    fn mul(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::R(a), Val::R(b)) => Val::R(&a * &b),
            (Val::P(mut f), Val::R(b)) | (Val::R(b), Val::P(mut f)) => {
                if !b.is_zero() {
                    f.push((b, Rat::one()));
                    Val::P(f)
                } else {
                    Val::R(RatFn::zero())
                }
            }
            (Val::P(mut f), Val::P(g)) => {
                f.extend(g);
                Val::P(f)
            }
        }
    }

    fn div(self, rhs: Val) -> Result<Val> {
        match (self, rhs) {
            (Val::R(a), Val::R(b)) => Ok(Val::R(a.checked_div(&b)?)),
            (a, Val::P(g)) => {
                let inv: Vec<(RatFn, Rat)> = g.into_iter().map(|(f, e)| (f, -e)).collect();
                Ok(a.mul(Val::P(inv)))
            }
            (Val::P(mut f), Val::R(b)) => {
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                f.push((b, -Rat::one()));
                Ok(Val::P(f))
            }
        }
    }

    fn pow(self, e: Rat) -> Result<Val> {
        if e.denom().is_one() {
            let k: i64 = e
                .numer()
                .try_into()
                .map_err(|_| Error::ParseError("exponent too large".into()))?;
            match self {
                Val::R(a) => Ok(Val::R(a.pow(k)?)),
                Val::P(f) => Ok(Val::P(f.into_iter().map(|(b, x)| (b, x * &e)).collect())),
            }
        } else {
            match self {
                Val::R(a) => {
                    if a.is_zero() {
                        return Err(Error::ParseError("fractional power of zero".into()));
                    }
                    Ok(Val::P(vec![(a, e)]))
                }
                Val::P(f) => Ok(Val::P(f.into_iter().map(|(b, x)| (b, x * &e)).collect())),
            }
        }
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    table: &'a VariableTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            found => Err(Error::ParseError(format!(
                "expected {t:?}, found {found:?}"
            ))),
        }
    }

    fn expr(&mut self) -> Result<Val> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.next();
                    acc = acc.add(self.term()?)?;
                }
                Token::Minus => {
                    self.next();
                    acc = acc.sub(self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Star => {
                    self.next();
                    acc = acc.mul(self.factor()?);
                }
                Token::Slash => {
                    self.next();
                    acc = acc.div(self.factor()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val> {
        if let Some(Token::Minus) = self.peek() {
            self.next();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.next();
            let e = self.exponent_literal()?;
            return base.pow(e);
        }
        Ok(base)
    }

    /// Integer or rational literal. A bare exponent is a signed integer; a
    /// rational exponent must be parenthesized (`^(-3/2)`), so that `x^3/y`
    /// keeps its ordinary division reading.
    fn exponent_literal(&mut self) -> Result<Rat> {
        let parens = matches!(self.peek(), Some(Token::LParen));
        if parens {
            self.next();
        }
        let neg = matches!(self.peek(), Some(Token::Minus));
        if neg {
            self.next();
        }
        let Some(Token::Number(p)) = self.next() else {
            return Err(Error::ParseError("expected numeric exponent".into()));
        };
        let mut value = p;
        if parens {
            if let Some(Token::Slash) = self.peek() {
                self.next();
                let Some(Token::Number(q)) = self.next() else {
                    return Err(Error::ParseError("expected exponent denominator".into()));
                };
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                value = value / q;
            }
            if neg {
                value = -value;
            }
            self.expect(Token::RParen)?;
        } else if neg {
            value = -value;
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Val> {
        match self.next() {
            Some(Token::Number(n)) => Ok(Val::R(RatFn::constant(n))),
            Some(Token::Variable(name)) => match self.table.lookup(&name) {
                Some(id) => Ok(Val::R(RatFn::var(id))),
                None => Err(Error::ParseError(format!("unknown variable {name:?}"))),
            },
            Some(Token::LParen) => {
                let v = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(v)
            }
            found => Err(Error::ParseError(format!(
                "expected a value, found {found:?}"
            ))),
        }
    }
}

/// Parse an expression against the given variable table.
pub fn parse_invariant(input: &str, table: &VariableTable) -> Result<InvariantExpression> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::ParseError("empty expression".into()));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        table,
    };
    let val = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::ParseError(format!(
            "trailing input at token {}",
            parser.pos
        )));
    }
    Ok(match val {
        Val::R(r) => InvariantExpression::Rational(r),
        Val::P(factors) => {
            let p = PowerProduct::new(factors);
            match p.expand() {
                Some(r) => InvariantExpression::Rational(r),
                None => InvariantExpression::PowerProduct(p),
            }
        }
    })
}

/// Parse an expression that must be a plain rational function.
pub fn parse_ratfn(input: &str, table: &VariableTable) -> Result<RatFn> {
    match parse_invariant(input, table)? {
        InvariantExpression::Rational(r) => Ok(r),
        _ => Err(Error::ParseError(
            "expected a rational expression without fractional powers".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VarKind;

    fn table() -> VariableTable {
        let mut t = VariableTable::new();
        for (i, j) in [(2, 1), (3, 1), (3, 2)] {
            t.add(
                VarKind::CoordMatrix { i, j },
                format!("x[{i},{j}]"),
                Some(format!("e[{j},{i}]")),
            );
        }
        t.add(VarKind::CoordNil { p: 1 }, "x[1,0]", Some("f[1]".into()));
        t
    }

    #[test]
    fn round_trip_rational() {
        let t = table();
        let f = parse_ratfn("x[1,0] - x[2,1]*x[3,2]/x[3,1]", &t).unwrap();
        let printed = print_ratfn(&f, &t, PrintSpace::Dual);
        let again = parse_ratfn(&printed, &t).unwrap();
        assert_eq!(f, again);
        // algebra-space names resolve to the same variables
        let g = parse_ratfn("f[1] - e[1,2]*e[2,3]/e[1,3]", &t).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn power_products() {
        let t = table();
        let expr = parse_invariant("(x[3,1])^(-3/2)*(x[2,1]*x[3,2])^2", &t).unwrap();
        match &expr {
            InvariantExpression::PowerProduct(p) => {
                assert_eq!(p.factors.len(), 2);
                assert_eq!(p.factors[0].1, Rat::new((-3).into(), 2.into()));
            }
            other => panic!("expected power product, got {other:?}"),
        }
        let printed = print_invariant(&expr, &t, PrintSpace::Dual);
        let again = parse_invariant(&printed, &t).unwrap();
        assert_eq!(expr, again);
        // integer exponents collapse to a rational function
        let expr = parse_invariant("(x[3,1])^2*(x[2,1])^(-1)", &t).unwrap();
        assert!(matches!(expr, InvariantExpression::Rational(_)));
    }

    #[test]
    fn rejects_unknown_names_and_pp_sums() {
        let t = table();
        assert!(parse_ratfn("y[1,2]", &t).is_err());
        assert!(parse_invariant("(x[3,1])^(1/2) + 1", &t).is_err());
    }

    #[test]
    fn denominator_parenthesization() {
        let t = table();
        for text in [
            "x[2,1]/(2*x[3,1])",
            "(x[2,1] + x[3,2])/(x[3,1]^2*x[2,1])",
            "3/2*x[2,1]",
            "x[2,1]^3/x[3,1]^2",
        ] {
            let f = parse_ratfn(text, &t).unwrap();
            let printed = print_ratfn(&f, &t, PrintSpace::Dual);
            assert_eq!(parse_ratfn(&printed, &t).unwrap(), f, "{text} -> {printed}");
        }
    }
}
