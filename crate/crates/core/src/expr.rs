//! Text syntax for operators.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary | power)*      juxtaposition only before a symbol
//! unary := '-' unary | power
//! power := atom ('^' ['-'] INT)?           negative exponents only on L
//! atom  := NUM | NUM '/' NUM | 'D' | 's' | 'L' | '(' expr ')'
//! ```
//!
//! `D` is `∂_s`, `s` is `s`, `L` is `λ`. An expression uses either `D`/`s`
//! (a Weyl operator) or `L` (a Laurent multiplication operator), not both.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::modrep::{Carrier, Operator};
use crate::weyl::WeylOp;

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: i64 = 64;
/// Largest order, coefficient degree or Laurent span produced by elaboration.
pub const MAX_DEGREE: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    D,
    S,
    L,
}

impl Symbol {
    pub fn as_str(self) -> &'static str {
        match self {
            Symbol::D => "D",
            Symbol::S => "s",
            Symbol::L => "L",
        }
    }

    fn carrier(self) -> Carrier {
        match self {
            Symbol::D | Symbol::S => Carrier::PolyInZ,
            Symbol::L => Carrier::LaurentInLambda,
        }
    }
}

/// Operator expression tree. Literals are non-negative; signs are [`Expr::Neg`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Sym(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    /// The carrier fixed by the symbols in the tree, `None` for constants.
    pub fn carrier(&self) -> Option<Carrier> {
        match self {
            Expr::Num(_) => None,
            Expr::Sym(s) => Some(s.carrier()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.carrier(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.carrier().or_else(|| b.carrier()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Product,
    Unary,
    Atom,
}

fn level(e: &Expr) -> Level {
    match e {
        Expr::Add(..) | Expr::Sub(..) => Level::Sum,
        Expr::Mul(..) => Level::Product,
        Expr::Neg(_) => Level::Unary,
        Expr::Pow(..) | Expr::Num(_) | Expr::Sym(_) => Level::Atom,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: Level) -> fmt::Result {
    if level(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    /// Fully explicit form: `*` between every factor, parentheses wherever
    /// the tree differs from the default associativity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Expr::Sym(s) => f.write_str(s.as_str()),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_at(f, a, Level::Unary)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_at(f, a, Level::Sum)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_at(f, b, Level::Product)
            }
            Expr::Mul(a, b) => {
                write_at(f, a, Level::Product)?;
                f.write_str("*")?;
                write_at(f, b, Level::Unary)
            }
            Expr::Pow(a, k) => {
                match **a {
                    Expr::Num(_) | Expr::Sym(_) => write!(f, "{a}")?,
                    _ => write!(f, "({a})")?,
                }
                write!(f, "^{k}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Sym(Symbol),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(_) => "number".into(),
            Tok::Sym(s) => format!("'{}'", s.as_str()),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn parse_error(offset: usize, message: impl Into<String>, expected: &[&str]) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

const OPERAND: &[&str] = &["number", "'D'", "'s'", "'L'", "'('", "'-'"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = text[start..i].parse().expect("digits");
            let mut den = BigInt::one();
            if i < bytes.len() && bytes[i] == b'/' {
                let ds = i + 1;
                let mut j = ds;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == ds {
                    return Err(parse_error(ds, "missing denominator", &["digit"]));
                }
                den = text[ds..j].parse().expect("digits");
                if den.is_zero() {
                    return Err(parse_error(ds, "zero denominator", &[]));
                }
                i = j;
            }
            out.push((start, Tok::Num(Rational::new(num, den))));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let sym = match &text[start..i] {
                "D" => Symbol::D,
                "s" => Symbol::S,
                "L" => Symbol::L,
                other => {
                    return Err(parse_error(
                        start,
                        format!("unknown identifier '{other}'; separate symbols with '*' or whitespace"),
                        &["'D'", "'s'", "'L'"],
                    ))
                }
            };
            out.push((start, Tok::Sym(sym)));
            continue;
        }
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[start..].chars().next().expect("non-empty");
                return Err(parse_error(start, format!("unexpected character '{ch}'"), OPERAND));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
}

const MAX_NESTING: usize = 128;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        parse_error(self.offset(), format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Sym(_) => lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?)),
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(parse_error(self.offset(), "expression nested too deeply", &[]));
        }
        Ok(())
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let k = match self.bump() {
            Tok::Num(r) if r.is_integer() => r.to_integer(),
            _ => {
                self.pos -= 1;
                let expected: &[&str] = if negative { &["integer"] } else { &["integer", "'-'"] };
                return Err(self.unexpected(expected));
            }
        };
        let k = i64::try_from(k)
            .ok()
            .filter(|k| *k <= MAX_EXPONENT)
            .ok_or_else(|| parse_error(at, format!("exponent exceeds {MAX_EXPONENT}"), &[]))?;
        if negative && base != Expr::Sym(Symbol::L) {
            return Err(parse_error(at, "negative exponent only on L", &[]));
        }
        if *self.peek() == Tok::Caret {
            return Err(parse_error(self.offset(), "chained '^' needs parentheses", &[]));
        }
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(Expr::Num(r))
            }
            Tok::Sym(s) => {
                self.bump();
                Ok(Expr::Sym(s))
            }
            Tok::LParen => {
                self.bump();
                self.enter()?;
                let inner = self.expr()?;
                self.depth -= 1;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["')'", "'+'", "'-'", "'*'"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected(&["number", "'D'", "'s'", "'L'", "'('"])),
        }
    }
}

/// Parses operator text. Rejects expressions mixing `D`/`s` with `L`.
pub fn parse_operator(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut weyl_at = None;
    let mut laurent_at = None;
    for (at, t) in &toks {
        if let Tok::Sym(s) = t {
            let slot = if *s == Symbol::L { &mut laurent_at } else { &mut weyl_at };
            slot.get_or_insert(*at);
        }
    }
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "'D'", "'s'", "'L'", "end of input"]));
    }
    if let (Some(w), Some(l)) = (weyl_at, laurent_at) {
        return Err(parse_error(w.max(l), "type error: cannot mix D or s with L in one operator", &[]));
    }
    Ok(e)
}

#[derive(Debug, Clone)]
enum Value {
    Const(Rational),
    Weyl(WeylOp),
    Laurent(LaurentPoly),
}

fn too_big() -> Error {
    Error::validation(format!("operator exceeds the size limit of degree {MAX_DEGREE}"))
}

/// `(order, s-degree)` for Weyl values, `(|top|, |bot|)` for Laurent ones.
fn size(v: &Value) -> (usize, usize) {
    match v {
        Value::Const(_) => (0, 0),
        Value::Weyl(w) => (w.order().unwrap_or(0), w.s_degree().unwrap_or(0)),
        Value::Laurent(p) => (
            p.top().unwrap_or(0).unsigned_abs() as usize,
            p.bot().unwrap_or(0).unsigned_abs() as usize,
        ),
    }
}

fn check(v: Value) -> Result<Value> {
    let (a, b) = size(&v);
    if a <= MAX_DEGREE && b <= MAX_DEGREE {
        Ok(v)
    } else {
        Err(too_big())
    }
}

fn lift(v: Value, carrier: Carrier) -> Value {
    match (v, carrier) {
        (Value::Const(c), Carrier::PolyInZ) => Value::Weyl(WeylOp::constant(c)),
        (Value::Const(c), Carrier::LaurentInLambda) => Value::Laurent(LaurentPoly::constant(c)),
        (v, _) => v,
    }
}

fn binary(a: Value, b: Value, op: fn(&Value, &Value) -> Result<Value>) -> Result<Value> {
    let carrier = match (&a, &b) {
        (Value::Weyl(_), _) | (_, Value::Weyl(_)) => Some(Carrier::PolyInZ),
        (Value::Laurent(_), _) | (_, Value::Laurent(_)) => Some(Carrier::LaurentInLambda),
        _ => None,
    };
    match carrier {
        Some(c) => op(&lift(a, c), &lift(b, c)),
        None => op(&a, &b),
    }
}

fn mismatch() -> Error {
    Error::validation("type error: cannot mix D or s with L in one operator")
}

fn eval(e: &Expr) -> Result<Value> {
    let v = match e {
        Expr::Num(r) => Value::Const(r.clone()),
        Expr::Sym(Symbol::D) => Value::Weyl(WeylOp::d_power(1)),
        Expr::Sym(Symbol::S) => Value::Weyl(WeylOp::s()),
        Expr::Sym(Symbol::L) => Value::Laurent(LaurentPoly::lambda()),
        Expr::Neg(a) => match eval(a)? {
            Value::Const(c) => Value::Const(-c),
            Value::Weyl(w) => Value::Weyl(-&w),
            Value::Laurent(p) => Value::Laurent(-&p),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            let (x, y) = (eval(a)?, eval(b)?);
            if matches!(e, Expr::Mul(..)) {
                let ((xa, xb), (ya, yb)) = (size(&x), size(&y));
                if xa + ya > MAX_DEGREE || xb + yb > MAX_DEGREE {
                    return Err(too_big());
                }
            }
            let op: fn(&Value, &Value) -> Result<Value> = match e {
                Expr::Add(..) => |x, y| match (x, y) {
                    (Value::Const(a), Value::Const(b)) => Ok(Value::Const(a + b)),
                    (Value::Weyl(a), Value::Weyl(b)) => Ok(Value::Weyl(a + b)),
                    (Value::Laurent(a), Value::Laurent(b)) => Ok(Value::Laurent(a + b)),
                    _ => Err(mismatch()),
                },
                Expr::Sub(..) => |x, y| match (x, y) {
                    (Value::Const(a), Value::Const(b)) => Ok(Value::Const(a - b)),
                    (Value::Weyl(a), Value::Weyl(b)) => Ok(Value::Weyl(a - b)),
                    (Value::Laurent(a), Value::Laurent(b)) => Ok(Value::Laurent(a - b)),
                    _ => Err(mismatch()),
                },
                _ => |x, y| match (x, y) {
                    (Value::Const(a), Value::Const(b)) => Ok(Value::Const(a * b)),
                    (Value::Weyl(a), Value::Weyl(b)) => Ok(Value::Weyl(a * b)),
                    (Value::Laurent(a), Value::Laurent(b)) => Ok(Value::Laurent(a * b)),
                    _ => Err(mismatch()),
                },
            };
            binary(x, y, op)?
        }
        Expr::Pow(a, k) => {
            let base = eval(a)?;
            let k = *k;
            let (sa, sb) = size(&base);
            let n = k.unsigned_abs() as usize;
            if sa.saturating_mul(n) > MAX_DEGREE || sb.saturating_mul(n) > MAX_DEGREE {
                return Err(too_big());
            }
            match base {
                Value::Const(c) => Value::Const(num_traits::pow(c, n)),
                Value::Weyl(w) => Value::Weyl(w.pow(n as u32)),
                Value::Laurent(p) => Value::Laurent(p.pow(k)?),
            }
        }
    };
    check(v)
}

/// Elaborates a tree to an operator. Constant trees land on `default`.
pub fn elaborate(e: &Expr, default: Carrier) -> Result<Operator> {
    Ok(match lift(eval(e)?, e.carrier().unwrap_or(default)) {
        Value::Weyl(w) => Operator::Weyl(w),
        Value::Laurent(p) => Operator::Laurent(p),
        Value::Const(_) => unreachable!("lifted"),
    })
}

/// Parses and elaborates; constant expressions become Weyl operators.
pub fn parse_and_elaborate(text: &str) -> Result<Operator> {
    elaborate(&parse_operator(text)?, Carrier::PolyInZ)
}

/// Parses two operators meant to act on one carrier. A constant side takes
/// the carrier of the other side.
pub fn parse_pair(p: &str, q: &str) -> Result<(Operator, Operator)> {
    let (ep, eq) = (parse_operator(p)?, parse_operator(q)?);
    let carrier = ep.carrier().or(eq.carrier()).unwrap_or(Carrier::PolyInZ);
    let (a, b) = (elaborate(&ep, carrier)?, elaborate(&eq, carrier)?);
    if a.carrier() != b.carrier() {
        return Err(Error::validation(format!(
            "operators act on different spaces: {} and {}",
            a.carrier(),
            b.carrier()
        )));
    }
    Ok((a, b))
}

/// Parses a Weyl operator, rejecting `L`.
pub fn parse_weyl(text: &str) -> Result<WeylOp> {
    match parse_and_elaborate(text)? {
        Operator::Weyl(w) => Ok(w),
        Operator::Laurent(_) => Err(Error::validation(format!("'{text}' is not a differential operator"))),
    }
}

/// Parses a multiplication operator by a Laurent polynomial in `L`.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    match elaborate(&parse_operator(text)?, Carrier::LaurentInLambda)? {
        Operator::Laurent(p) => Ok(p),
        Operator::Weyl(_) => Err(Error::validation(format!("'{text}' is not a polynomial in L"))),
    }
}

/// Canonical tree of a Weyl operator in normal order.
pub fn weyl_to_expr(w: &WeylOp) -> Expr {
    let mut terms = Vec::new();
    for (i, p) in w.coeffs().iter().enumerate().rev() {
        for (k, c) in p.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut factors = Vec::new();
            if k > 0 {
                factors.push(sym_power(Symbol::S, k as i64));
            }
            if i > 0 {
                factors.push(sym_power(Symbol::D, i as i64));
            }
            terms.push((c.clone(), factors));
        }
    }
    sum_of_terms(terms)
}

/// Canonical tree of a Laurent polynomial, highest power first.
pub fn laurent_to_expr(p: &LaurentPoly) -> Expr {
    let terms = p
        .terms()
        .rev()
        .map(|(k, c)| (c.clone(), if *k == 0 { vec![] } else { vec![sym_power(Symbol::L, *k)] }))
        .collect();
    sum_of_terms(terms)
}

fn sym_power(s: Symbol, k: i64) -> Expr {
    if k == 1 {
        Expr::Sym(s)
    } else {
        Expr::Pow(Box::new(Expr::Sym(s)), k)
    }
}

fn sum_of_terms(terms: Vec<(Rational, Vec<Expr>)>) -> Expr {
    let mut acc: Option<Expr> = None;
    for (c, factors) in terms {
        let negative = c < Rational::zero();
        let mag = if negative { -c } else { c };
        let mut it = factors.into_iter();
        let mut term = if mag.is_one() {
            it.next().unwrap_or_else(|| Expr::Num(mag.clone()))
        } else {
            Expr::Num(mag)
        };
        for f in it {
            term = Expr::Mul(Box::new(term), Box::new(f));
        }
        acc = Some(match acc {
            None if negative => Expr::Neg(Box::new(term)),
            None => term,
            Some(a) if negative => Expr::Sub(Box::new(a), Box::new(term)),
            Some(a) => Expr::Add(Box::new(a), Box::new(term)),
        });
    }
    acc.unwrap_or_else(|| Expr::Num(Rational::zero()))
}

/// Tree for an operator, suitable for printing and re-parsing.
pub fn operator_to_expr(op: &Operator) -> Expr {
    match op {
        Operator::Weyl(w) => weyl_to_expr(w),
        Operator::Laurent(p) => laurent_to_expr(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn weyl(text: &str) -> WeylOp {
        parse_weyl(text).unwrap()
    }

    #[test]
    fn example_operators() {
        assert_eq!(weyl("D^2 + s + 1"), WeylOp::from_int_coeffs(&[&[1, 1], &[], &[1]]));
        assert_eq!(parse_laurent("L + L^-1").unwrap(), LaurentPoly::from_int_terms(&[(1, 1), (-1, 1)]));
        let err = parse_operator("D^-1").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 2, .. }), "{err}");
    }

    #[test]
    fn precedence() {
        assert_eq!(weyl("-D^2"), -&WeylOp::d_power(2));
        assert_eq!(weyl("2*s + 3"), WeylOp::from_int_coeffs(&[&[3, 2]]));
        assert_eq!(weyl("1 - 2 - 3"), WeylOp::constant(int(-4)));
        assert_eq!(weyl("D*s"), &WeylOp::d_power(1) * &WeylOp::s());
        assert_eq!(weyl("D*s - s*D"), WeylOp::one());
        assert_eq!(weyl("(D + s)^2"), WeylOp::from_int_coeffs(&[&[1, 0, 1], &[0, 2], &[1]]));
        assert_eq!(weyl("3/4 s"), WeylOp::s().scale(&crate::algebra::rat(3, 4)));
    }

    #[test]
    fn juxtaposition_rules() {
        assert_eq!(weyl("2s"), WeylOp::s().scale(&int(2)));
        assert_eq!(weyl("s D"), &WeylOp::s() * &WeylOp::d_power(1));
        assert_eq!(weyl("D^2 s"), &WeylOp::d_power(2) * &WeylOp::s());
        assert!(matches!(parse_operator("sD"), Err(Error::Parse { offset: 0, .. })));
        assert!(parse_operator("2 (s)").is_err());
        assert!(parse_operator("s 2").is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_operator("D + * s").unwrap_err() {
            Error::Parse { offset, expected, .. } => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"'('".to_string()));
            }
            e => panic!("{e}"),
        }
        assert!(matches!(parse_operator("(D + 1"), Err(Error::Parse { offset: 6, .. })));
        assert!(matches!(parse_operator("D + L"), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(parse_operator("1/0"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_operator("D^2^3"), Err(Error::Parse { .. })));
        assert!(matches!(parse_operator("D^65"), Err(Error::Parse { .. })));
        assert!(matches!(parse_operator("x"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_operator(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_operator("(L+1)^-1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn size_limits() {
        assert!(parse_and_elaborate("(D^8)^6").is_ok());
        assert!(parse_and_elaborate("(D^8)^7").is_err());
        assert!(parse_and_elaborate("(D+s)^40 * (D+s)^40").is_err());
        assert!(parse_laurent("(L^-30)^3").is_err());
    }

    #[test]
    fn constants_follow_partner() {
        let (a, b) = parse_pair("L + L^-1", "2").unwrap();
        assert_eq!(b, Operator::Laurent(LaurentPoly::constant(int(2))));
        assert_eq!(a.carrier(), Carrier::LaurentInLambda);
        assert!(parse_pair("D", "L").is_err());
    }

    #[test]
    fn printer_round_trips() {
        for text in ["D^2 + s + 1", "-(D - s)*(s + 1)", "1 - (2 - 3)", "--D", "L^-2 + 3/7*L", "(2*s)^3", "2*-s"] {
            let e = parse_operator(text).unwrap();
            assert_eq!(parse_operator(&e.to_string()).unwrap(), e, "{text} -> {e}");
        }
    }

    #[test]
    fn canonical_trees_elaborate_back() {
        let w = WeylOp::from_int_coeffs(&[&[1, -1], &[0, 0, -3], &[2]]);
        let e = weyl_to_expr(&w);
        assert_eq!(e.to_string(), "2*D^2 - 3*s^2*D - s + 1");
        assert_eq!(elaborate(&e, Carrier::PolyInZ).unwrap(), Operator::Weyl(w));
        let p = LaurentPoly::from_int_terms(&[(2, -1), (0, 5), (-1, 1)]);
        assert_eq!(parse_laurent(&laurent_to_expr(&p).to_string()).unwrap(), p);
    }
}
