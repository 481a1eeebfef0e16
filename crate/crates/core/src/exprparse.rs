//! Parser for field constants, polynomials and rational functions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := ('-')? atom ('^' uint)?
//! atom   := uint | 't' | 'x' | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit, integer literals are reduced mod 3,
//! and both operands of `/` must be free of `/`. Error offsets are 0-based
//! byte positions into the input.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldElement, FieldParams};
use crate::poly::{Polynomial, RationalFunction};
use crate::series::LaurentSeries;

/// Largest exponent accepted after `^` when `x` is involved.
pub const MAX_POLY_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("generator t used at byte {offset}, but the field is F_3")]
    GeneratorUnavailable { offset: usize },
    #[error("variable x used at byte {offset} where a field constant is expected")]
    VariableNotAllowed { offset: usize },
    #[error("zero denominator in division at byte {offset}")]
    ZeroDenominator { offset: usize },
    #[error("nested division at byte {offset}: both sides of '/' must be polynomials")]
    NestedDivision { offset: usize },
    #[error("exponent at byte {offset} is too large")]
    ExponentTooLarge { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::SyntaxError { offset, .. }
            | ParseError::GeneratorUnavailable { offset }
            | ParseError::VariableNotAllowed { offset }
            | ParseError::ZeroDenominator { offset }
            | ParseError::NestedDivision { offset }
            | ParseError::ExponentTooLarge { offset } => *offset,
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::SyntaxError {
        offset,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    /// Integer literal, already reduced mod 3.
    Int(u8),
    Gen,
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

/// Syntax tree node with the byte offset of its operator (or of the literal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub offset: usize,
}

impl Expr {
    fn new(kind: ExprKind, offset: usize) -> Self {
        Self { kind, offset }
    }

    fn has_division(&self) -> bool {
        match &self.kind {
            ExprKind::Int(_) | ExprKind::Gen | ExprKind::Var => false,
            ExprKind::Div(..) => true,
            ExprKind::Neg(e) | ExprKind::Pow(e, _) => e.has_division(),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
                a.has_division() || b.has_division()
            }
        }
    }

    fn has_var(&self) -> bool {
        match &self.kind {
            ExprKind::Var => true,
            ExprKind::Int(_) | ExprKind::Gen => false,
            ExprKind::Neg(e) | ExprKind::Pow(e, _) => e.has_var(),
            ExprKind::Add(a, b)
            | ExprKind::Sub(a, b)
            | ExprKind::Mul(a, b)
            | ExprKind::Div(a, b) => a.has_var() || b.has_var(),
        }
    }
}

/// Fully parenthesised form, e.g. `(1+(2*(x^2)))`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Gen => f.write_str("t"),
            ExprKind::Var => f.write_str("x"),
            ExprKind::Neg(e) => write!(f, "(-{e})"),
            ExprKind::Add(a, b) => write!(f, "({a}+{b})"),
            ExprKind::Sub(a, b) => write!(f, "({a}-{b})"),
            ExprKind::Mul(a, b) => write!(f, "({a}*{b})"),
            ExprKind::Div(a, b) => write!(f, "({a}/{b})"),
            ExprKind::Pow(e, n) => write!(f, "({e}^{n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    /// Residue mod 3 and the value, if it fits in a `u64`.
    Num(u8, Option<u64>),
    T,
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                let mut digit_sum = 0u32;
                let mut value: Option<u64> = Some(0);
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    let d = (bytes[i] - b'0') as u64;
                    digit_sum = (digit_sum + d as u32) % 3;
                    value = value.and_then(|v| v.checked_mul(10)).and_then(|v| v.checked_add(d));
                    i += 1;
                }
                // 10 ≡ 1 (mod 3), so the digit sum gives the residue
                toks.push((Tok::Num(digit_sum as u8, value), start));
                continue;
            }
            b't' => Tok::T,
            b'x' => Tok::X,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(syntax(i, format!("unexpected character '{ch}'")));
            }
        };
        toks.push((tok, i));
        i += 1;
    }
    toks.push((Tok::End, bytes.len()));
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> (Tok, usize) {
        self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos];
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let (tok, off) = self.peek();
            let make = match tok {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::new(make(Box::new(lhs), Box::new(rhs)), off);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let (tok, off) = self.peek();
            match tok {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), off);
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    if lhs.has_division() || rhs.has_division() {
                        return Err(ParseError::NestedDivision { offset: off });
                    }
                    lhs = Expr::new(ExprKind::Div(Box::new(lhs), Box::new(rhs)), off);
                }
                Tok::Num(..) | Tok::T | Tok::X | Tok::LParen => {
                    return Err(syntax(off, "implicit multiplication is not allowed; use '*'"));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let (tok, off) = self.peek();
        let neg = tok == Tok::Minus;
        if neg {
            self.bump();
        }
        let mut base = self.atom()?;
        let (tok, caret) = self.peek();
        if tok == Tok::Caret {
            self.bump();
            let (tok, eoff) = self.bump();
            let Tok::Num(_, value) = tok else {
                return Err(syntax(eoff, "expected a nonnegative integer exponent"));
            };
            let n = value.ok_or(ParseError::ExponentTooLarge { offset: eoff })?;
            base = Expr::new(ExprKind::Pow(Box::new(base), n), caret);
            if self.peek().0 == Tok::Caret {
                return Err(syntax(self.peek().1, "chained '^' needs parentheses"));
            }
        }
        if neg {
            base = Expr::new(ExprKind::Neg(Box::new(base)), off);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, off) = self.bump();
        match tok {
            Tok::Num(n, _) => Ok(Expr::new(ExprKind::Int(n), off)),
            Tok::T => Ok(Expr::new(ExprKind::Gen, off)),
            Tok::X => Ok(Expr::new(ExprKind::Var, off)),
            Tok::LParen => {
                let e = self.expr()?;
                let (tok, roff) = self.bump();
                if tok != Tok::RParen {
                    return Err(syntax(roff, "expected ')'"));
                }
                Ok(e)
            }
            Tok::End => Err(syntax(off, "unexpected end of input")),
            Tok::Minus => Err(syntax(off, "only one leading '-' per factor")),
            _ => Err(syntax(off, "expected a number, 't', 'x' or '('")),
        }
    }
}

/// Parses `text` into a syntax tree without evaluating it.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let Lexer { toks } = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    let (tok, off) = p.peek();
    match tok {
        Tok::End => Ok(e),
        Tok::RParen => Err(syntax(off, "unmatched ')'")),
        _ => Err(syntax(off, "unexpected token")),
    }
}

fn check_generator(e: &Expr, field: &FieldParams) -> Result<(), ParseError> {
    let bad = |e: &Expr| -> Result<(), ParseError> { check_generator(e, field) };
    match &e.kind {
        ExprKind::Gen if field.degree() == 1 => Err(ParseError::GeneratorUnavailable { offset: e.offset }),
        ExprKind::Int(_) | ExprKind::Gen | ExprKind::Var => Ok(()),
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => bad(a),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            bad(a)?;
            bad(b)
        }
    }
}

fn first_var(e: &Expr) -> Option<usize> {
    match &e.kind {
        ExprKind::Var => Some(e.offset),
        ExprKind::Int(_) | ExprKind::Gen => None,
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => first_var(a),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            first_var(a).or_else(|| first_var(b))
        }
    }
}

fn eval_const(e: &Expr, field: &FieldParams) -> Result<FieldElement, ParseError> {
    Ok(match &e.kind {
        ExprKind::Int(n) => field.from_int(*n as i64),
        ExprKind::Gen => field.generator(),
        ExprKind::Var => return Err(ParseError::VariableNotAllowed { offset: e.offset }),
        ExprKind::Neg(a) => -eval_const(a, field)?,
        ExprKind::Add(a, b) => eval_const(a, field)? + eval_const(b, field)?,
        ExprKind::Sub(a, b) => eval_const(a, field)? - eval_const(b, field)?,
        ExprKind::Mul(a, b) => eval_const(a, field)? * eval_const(b, field)?,
        ExprKind::Div(a, b) => {
            let d = eval_const(b, field)?;
            if d.is_zero() {
                return Err(ParseError::ZeroDenominator { offset: e.offset });
            }
            eval_const(a, field)? / d
        }
        ExprKind::Pow(a, n) => {
            let base = eval_const(a, field)?;
            // a^(q-1) = 1 for a != 0, so reduce large exponents
            let q1 = field.order() - 1;
            let r = if *n == 0 { 0 } else { (n - 1) % q1 + 1 };
            base.pow(r as i64).expect("nonnegative exponent")
        }
    })
}

fn eval_rational(e: &Expr, field: &FieldParams) -> Result<RationalFunction, ParseError> {
    if !e.has_var() {
        let c = eval_const(e, field)?;
        return Ok(RationalFunction::from_poly(Polynomial::constant(&c)));
    }
    let go = |a: &Expr| eval_rational(a, field);
    Ok(match &e.kind {
        ExprKind::Var => RationalFunction::from_poly(Polynomial::x(field)),
        ExprKind::Int(_) | ExprKind::Gen => unreachable!("handled as constants"),
        ExprKind::Neg(a) => go(a)?.neg(),
        ExprKind::Add(a, b) => go(a)?.try_add(&go(b)?).expect("same field"),
        ExprKind::Sub(a, b) => go(a)?.try_sub(&go(b)?).expect("same field"),
        ExprKind::Mul(a, b) => go(a)?.try_mul(&go(b)?).expect("same field"),
        ExprKind::Div(a, b) => {
            let d = go(b)?;
            if d.is_zero() {
                return Err(ParseError::ZeroDenominator { offset: e.offset });
            }
            go(a)?.try_div(&d).expect("nonzero divisor")
        }
        ExprKind::Pow(a, n) => {
            if *n > MAX_POLY_EXPONENT {
                return Err(ParseError::ExponentTooLarge { offset: e.offset });
            }
            go(a)?.pow(*n as u32)
        }
    })
}

/// Field constant over `{integers, t, + - * / ^, parentheses}`.
pub fn parse_field_element(text: &str, field: &FieldParams) -> Result<FieldElement, ParseError> {
    let e = parse_expr(text)?;
    check_generator(&e, field)?;
    if let Some(offset) = first_var(&e) {
        return Err(ParseError::VariableNotAllowed { offset });
    }
    eval_const(&e, field)
}

/// Rational function in `x`, reduced to lowest terms with monic denominator.
pub fn parse_rational_function(text: &str, field: &FieldParams) -> Result<RationalFunction, ParseError> {
    let e = parse_expr(text)?;
    check_generator(&e, field)?;
    eval_rational(&e, field)
}

/// Exact Laurent polynomial from `"e:v,e:v,..."` pairs, where each `e` is a
/// (possibly negative) exponent and each `v` a field constant.
pub fn parse_coefficient_list(text: &str, field: &FieldParams) -> Result<LaurentSeries, ParseError> {
    let mut terms = Vec::new();
    let mut base = 0;
    for item in text.split(',') {
        let lead = item.len() - item.trim_start().len();
        let Some(colon) = item.find(':') else {
            return Err(syntax(base + lead, "expected 'exponent:value'"));
        };
        let exp_text = item[..colon].trim();
        let exp: i64 = exp_text
            .parse()
            .map_err(|_| syntax(base + lead, format!("bad exponent '{exp_text}'")))?;
        let vstart = base + colon + 1;
        let value = parse_field_element(&item[colon + 1..], field).map_err(|e| shift_error(e, vstart))?;
        terms.push((exp, value));
        base += item.len() + 1;
    }
    Ok(LaurentSeries::from_terms(field, &terms))
}

fn shift_error(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::SyntaxError { offset, message } => ParseError::SyntaxError {
            offset: offset + by,
            message,
        },
        ParseError::GeneratorUnavailable { offset } => ParseError::GeneratorUnavailable { offset: offset + by },
        ParseError::VariableNotAllowed { offset } => ParseError::VariableNotAllowed { offset: offset + by },
        ParseError::ZeroDenominator { offset } => ParseError::ZeroDenominator { offset: offset + by },
        ParseError::NestedDivision { offset } => ParseError::NestedDivision { offset: offset + by },
        ParseError::ExponentTooLarge { offset } => ParseError::ExponentTooLarge { offset: offset + by },
    }
}
