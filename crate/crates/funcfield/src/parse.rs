//! Expression parser for rational functions, instance files and divisor
//! literals.
//!
//! Grammar (standard precedence, left-associative binaries):
//!
//! ```text
//! expr   := term  (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)*          exponents: non-negative integers
//! atom   := INT | 'x' | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is -(x²). A quotient of
//! integer literals like `3/4` needs no special case: field division of
//! the two constants produces the same value.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::divisor::{Divisor, Place};
use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::scalar::{bigint_from_decimal, FieldSpec};

const MAX_EXPONENT: u64 = 100_000;
const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(text: &str, start_line: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (lo, line) in text.lines().enumerate() {
        let lineno = start_line + lo;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let col = i + 1;
            let c = chars[i];
            let tok = match c {
                ' ' | '\t' | '\r' => {
                    i += 1;
                    continue;
                }
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                'x' => Tok::X,
                '0'..='9' => {
                    let mut j = i;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    let digits: String = chars[i..j].iter().collect();
                    let n = bigint_from_decimal(&digits)
                        .ok_or_else(|| err(lineno, col, "bad integer literal"))?;
                    out.push(Spanned {
                        tok: Tok::Int(n),
                        line: lineno,
                        col,
                    });
                    i = j;
                    continue;
                }
                c if c.is_ascii_alphabetic() => {
                    let mut j = i;
                    while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                        j += 1;
                    }
                    let word: String = chars[i..j].iter().collect();
                    out.push(Spanned {
                        tok: Tok::Ident(word),
                        line: lineno,
                        col,
                    });
                    i = j;
                    continue;
                }
                other => return Err(err(lineno, col, format!("unexpected character '{other}'"))),
            };
            out.push(Spanned {
                tok,
                line: lineno,
                col,
            });
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    field: FieldSpec,
    end_line: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(s) => (s.line, s.col),
            None => (self.end_line, 1),
        }
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self, depth: usize) -> Result<RatFunc> {
        let mut lhs = self.term(depth)?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = lhs.add(&self.term(depth)?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = lhs.sub(&self.term(depth)?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<RatFunc> {
        let mut lhs = self.unary(depth)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = lhs.mul(&self.unary(depth)?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = lhs.div(&self.unary(depth)?)?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self, depth: usize) -> Result<RatFunc> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(self.unary(depth)?.neg());
        }
        self.power(depth)
    }

    fn power(&mut self, depth: usize) -> Result<RatFunc> {
        let mut base = self.atom(depth)?;
        while self.peek() == Some(&Tok::Caret) {
            self.bump();
            let (line, col) = self.here();
            match self.bump().map(|s| s.tok) {
                Some(Tok::Int(n)) => {
                    let e = n
                        .to_u64()
                        .filter(|e| *e <= MAX_EXPONENT)
                        .ok_or_else(|| err(line, col, "exponent out of range"))?;
                    base = base.powi(e as i64).expect("non-negative power");
                }
                _ => {
                    return Err(err(
                        line,
                        col,
                        "exponent must be a non-negative integer literal",
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self, depth: usize) -> Result<RatFunc> {
        let (line, col) = self.here();
        if depth == 0 {
            return Err(err(line, col, "expression nested too deeply"));
        }
        match self.bump().map(|s| s.tok) {
            Some(Tok::Int(n)) => Ok(RatFunc::constant(self.field.from_bigint(&n))),
            Some(Tok::X) => Ok(RatFunc::x(self.field)),
            Some(Tok::LParen) => {
                let inner = self.expr(depth - 1)?;
                match self.bump().map(|s| s.tok) {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(line, col, "unclosed parenthesis")),
                }
            }
            Some(tok) => Err(err(line, col, format!("unexpected token {tok:?}"))),
            None => Err(err(line, col, "unexpected end of input")),
        }
    }
}

/// Parses one expression into a canonical rational function over the
/// session field.
pub fn parse_ratfunc(text: &str, field: FieldSpec) -> Result<RatFunc> {
    parse_ratfunc_at(text, field, 1)
}

fn parse_ratfunc_at(text: &str, field: FieldSpec, line: usize) -> Result<RatFunc> {
    let toks = lex(text, line)?;
    if toks.is_empty() {
        return Err(err(line, 1, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        end_line: line,
    };
    let value = p.expr(MAX_DEPTH)?;
    match p.toks.get(p.pos) {
        None => Ok(value),
        Some(s) => Err(err(s.line, s.col, format!("trailing input {:?}", s.tok))),
    }
}

/// Instance file: a `field: q` or `field: fp <prime>` header, then one
/// generator expression per line; `#` starts a comment.
pub fn parse_instance_file(text: &str) -> Result<(FieldSpec, Vec<RatFunc>)> {
    parse_instance_file_with_field(text, None)
}

/// Same, but an override field replaces the header (the cross-field
/// oracle re-reads one instance body over several fields).
pub fn parse_instance_file_with_field(
    text: &str,
    field_override: Option<FieldSpec>,
) -> Result<(FieldSpec, Vec<RatFunc>)> {
    let mut field: Option<FieldSpec> = None;
    let mut gens = Vec::new();
    for (lo, raw) in text.lines().enumerate() {
        let lineno = lo + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if field.is_none() {
            let rest = line
                .strip_prefix("field:")
                .ok_or_else(|| err(lineno, 1, "first line must be `field: q` or `field: fp <prime>`"))?
                .trim();
            let declared = parse_field(rest).map_err(|e| match e {
                Error::NotPrime(p) => Error::NotPrime(p),
                _ => err(lineno, 1, format!("bad field spec '{rest}'")),
            })?;
            field = Some(field_override.unwrap_or(declared));
            continue;
        }
        gens.push(parse_ratfunc_at(line, field.unwrap(), lineno)?);
    }
    let field = field.ok_or_else(|| err(1, 1, "missing field header"))?;
    if gens.is_empty() {
        return Err(err(1, 1, "no generators"));
    }
    Ok((field, gens))
}

/// `q`, `fp <prime>` or `fp:<prime>`.
pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t == "q" || t == "Q" {
        return Ok(FieldSpec::Q);
    }
    if let Some(rest) = t.strip_prefix("fp") {
        let digits = rest.trim_start_matches([':', ' ']).trim();
        if let Ok(p) = digits.parse::<u64>() {
            return FieldSpec::fp(p);
        }
    }
    Err(err(1, 1, format!("unknown field '{t}' (use q or fp <prime>)")))
}

/// Divisor literal `c*place ± c*place ...` where place is `inf` or a
/// scalar literal (`2`, `-1`, `3/4`), e.g. `5*inf+1*0` or `3*inf - 2*0`.
pub fn parse_divisor(text: &str, field: FieldSpec) -> Result<Divisor> {
    let toks = lex(text, 1)?;
    let mut pos = 0;
    let mut out = Divisor::zero();
    let mut sign: i64 = 1;
    if toks.first().map(|s| &s.tok) == Some(&Tok::Minus) {
        sign = -1;
        pos += 1;
    }
    loop {
        let (coeff, place) = parse_divisor_term(&toks, &mut pos, field)?;
        out.add_at(place, sign * coeff);
        match toks.get(pos).map(|s| &s.tok) {
            None => return Ok(out),
            Some(Tok::Plus) => {
                sign = 1;
                pos += 1;
            }
            Some(Tok::Minus) => {
                sign = -1;
                pos += 1;
            }
            Some(t) => {
                let s = &toks[pos];
                return Err(err(s.line, s.col, format!("unexpected token {t:?}")));
            }
        }
    }
}

fn parse_divisor_term(
    toks: &[Spanned],
    pos: &mut usize,
    field: FieldSpec,
) -> Result<(i64, Place)> {
    let int_at = |p: usize| -> Result<i64> {
        match toks.get(p).map(|s| &s.tok) {
            Some(Tok::Int(n)) => n
                .to_i64()
                .ok_or_else(|| err(toks[p].line, toks[p].col, "coefficient out of range")),
            _ => {
                let (l, c) = toks
                    .get(p)
                    .map(|s| (s.line, s.col))
                    .unwrap_or((1, text_end(toks)));
                Err(err(l, c, "expected integer"))
            }
        }
    };
    let coeff = int_at(*pos)?;
    *pos += 1;
    match toks.get(*pos).map(|s| &s.tok) {
        Some(Tok::Star) => *pos += 1,
        _ => {
            let (l, c) = toks
                .get(*pos)
                .map(|s| (s.line, s.col))
                .unwrap_or((1, text_end(toks)));
            return Err(err(l, c, "expected '*' after coefficient"));
        }
    }
    // place: inf | [-] int [/ int]
    match toks.get(*pos).map(|s| s.tok.clone()) {
        Some(Tok::Ident(w)) if w == "inf" => {
            *pos += 1;
            Ok((coeff, Place::Infinity))
        }
        _ => {
            let mut neg = false;
            if toks.get(*pos).map(|s| &s.tok) == Some(&Tok::Minus) {
                neg = true;
                *pos += 1;
            }
            let num = int_at(*pos)?;
            *pos += 1;
            let den = if toks.get(*pos).map(|s| &s.tok) == Some(&Tok::Slash) {
                *pos += 1;
                let d = int_at(*pos)?;
                *pos += 1;
                d
            } else {
                1
            };
            let alpha = field
                .from_ratio(&BigInt::from(if neg { -num } else { num }), &BigInt::from(den))?;
            Ok((coeff, Place::Finite(alpha)))
        }
    }
}

fn text_end(toks: &[Spanned]) -> usize {
    toks.last().map(|s| s.col + 1).unwrap_or(1)
}
