//! Shared expression parser for element and polynomial syntax.
//!
//! Produces a small arithmetic AST from text; evaluation into a concrete
//! domain (rational functions, skew polynomials) happens separately so the
//! grammar stays identical everywhere: `+ - * / ^`, parentheses, integer
//! literals, named symbols, and implicit multiplication by juxtaposition
//! ("2t", "a(t+1)").

use std::sync::Arc;

use crate::error::Error;
use crate::funcfield::RationalFunction;
use crate::galois::GaloisField;
use crate::sigma::SigmaField;
use crate::skew::SkewPoly;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Ast {
    Int(i64),
    Sym(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Box<Ast>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Sym(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, Error> {
    let mut toks = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("integer {text:?} is out of range")))?;
                toks.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                toks.push(Tok::Sym(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_prefix(&mut self) -> Result<Ast, Error> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(Ast::Int(v)),
            Some(Tok::Sym(s)) => Ok(Ast::Sym(s)),
            Some(Tok::Minus) => Ok(Ast::Neg(Box::new(self.parse_expr(25)?))),
            Some(Tok::LParen) => {
                let inner = self.parse_expr(0)?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }

    /// Pratt loop; implicit multiplication binds like '*'.
    fn parse_expr(&mut self, min_bp: u8) -> Result<Ast, Error> {
        let mut lhs = self.parse_prefix()?;
        loop {
            let (lbp, rbp, explicit) = match self.peek() {
                Some(Tok::Plus) | Some(Tok::Minus) => (10, 11, true),
                Some(Tok::Star) | Some(Tok::Slash) => (20, 21, true),
                Some(Tok::Caret) => (30, 29, true),
                Some(Tok::Int(_)) | Some(Tok::Sym(_)) | Some(Tok::LParen) => (20, 21, false),
                _ => break,
            };
            if lbp < min_bp {
                break;
            }
            let op = if explicit { self.next() } else { Some(Tok::Star) };
            let rhs = self.parse_expr(rbp)?;
            lhs = match op {
                Some(Tok::Plus) => Ast::Add(Box::new(lhs), Box::new(rhs)),
                Some(Tok::Minus) => Ast::Sub(Box::new(lhs), Box::new(rhs)),
                Some(Tok::Star) => Ast::Mul(Box::new(lhs), Box::new(rhs)),
                Some(Tok::Slash) => Ast::Div(Box::new(lhs), Box::new(rhs)),
                Some(Tok::Caret) => Ast::Pow(Box::new(lhs), Box::new(rhs)),
                _ => unreachable!("operator token"),
            };
        }
        Ok(lhs)
    }
}

pub(crate) fn parse_ast(s: &str) -> Result<Ast, Error> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let ast = p.parse_expr(0)?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after expression: {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(ast)
}

/// Exponents must be integer literals, optionally negated.
fn literal_exponent(ast: &Ast) -> Result<i64, Error> {
    match ast {
        Ast::Int(v) => Ok(*v),
        Ast::Neg(inner) => Ok(-literal_exponent(inner)?),
        _ => Err(Error::Parse("exponent must be an integer literal".into())),
    }
}

pub(crate) fn eval_rational(
    base: &Arc<GaloisField>,
    ast: &Ast,
) -> Result<RationalFunction, Error> {
    match ast {
        Ast::Int(v) => Ok(RationalFunction::constant(&base.from_int(*v))),
        Ast::Sym(s) if s == "t" => Ok(RationalFunction::var(base)),
        Ast::Sym(s) if s == base.generator_name() && base.extension_degree() > 1 => {
            Ok(RationalFunction::constant(&base.generator()?))
        }
        Ast::Sym(s) => Err(Error::Parse(format!(
            "unknown symbol {s:?} in a function field element"
        ))),
        Ast::Neg(x) => Ok(-eval_rational(base, x)?),
        Ast::Add(x, y) => Ok(&eval_rational(base, x)? + &eval_rational(base, y)?),
        Ast::Sub(x, y) => Ok(&eval_rational(base, x)? - &eval_rational(base, y)?),
        Ast::Mul(x, y) => Ok(&eval_rational(base, x)? * &eval_rational(base, y)?),
        Ast::Div(x, y) => eval_rational(base, x)?.checked_div(&eval_rational(base, y)?),
        Ast::Pow(x, e) => eval_rational(base, x)?.pow(literal_exponent(e)?),
    }
}

/// Evaluation into F[x; sigma]. The product order in the source is kept,
/// since multiplication does not commute; division and negative powers only
/// make sense for degree-zero operands and mean right multiplication by the
/// inverse constant.
pub(crate) fn eval_skew<F: SigmaField>(field: &F, ast: &Ast) -> Result<SkewPoly<F>, Error> {
    match ast {
        Ast::Int(v) => Ok(SkewPoly::constant(
            field,
            field.parse_elem(&v.to_string())?,
        )),
        Ast::Sym(s) if s == "x" => Ok(SkewPoly::x_pow(field, 1)),
        Ast::Sym(s) => Ok(SkewPoly::constant(field, field.parse_elem(s)?)),
        Ast::Neg(x) => Ok(-eval_skew(field, x)?),
        Ast::Add(x, y) => Ok(&eval_skew(field, x)? + &eval_skew(field, y)?),
        Ast::Sub(x, y) => Ok(&eval_skew(field, x)? - &eval_skew(field, y)?),
        Ast::Mul(x, y) => Ok(&eval_skew(field, x)? * &eval_skew(field, y)?),
        Ast::Div(x, y) => {
            let num = eval_skew(field, x)?;
            let den = eval_skew(field, y)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if !den.is_constant() {
                return Err(Error::Parse(
                    "cannot divide by a polynomial in x".into(),
                ));
            }
            Ok(num.scale_right(&field.inv(&den.coeff(0))?))
        }
        Ast::Pow(x, e) => {
            let k = literal_exponent(e)?;
            let base = eval_skew(field, x)?;
            if k < 0 {
                if !base.is_constant() {
                    return Err(Error::Parse(
                        "negative power of a polynomial in x".into(),
                    ));
                }
                if base.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let inv = field.inv(&base.coeff(0))?;
                let mut acc = field.one();
                for _ in 0..k.unsigned_abs() {
                    acc = field.mul(&acc, &inv);
                }
                return Ok(SkewPoly::constant(field, acc));
            }
            let mut acc = SkewPoly::one(field);
            for _ in 0..k {
                acc = &acc * &base;
            }
            Ok(acc)
        }
    }
}
