//! Textual expressions for polynomial fields.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := rational | 'x'digit | 'e'digits | '(' expr ')'
//! ```
//!
//! Rationals are `3` or `3/4` with no inner spaces. Blades name strictly
//! increasing generator digits (`e12`, `e135`); `e0` is the unit. Blade
//! products are reduced in the algebra, so `e2*e1` is accepted.

use std::fmt;

use num_traits::{One, Signed};

use crate::algebra::{Algebra, Blade, MAX_GENERATORS};
use crate::poly::PolyField;
use crate::rational::{parse_rational, Rational};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(usize),
    Blade(Blade),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Evaluates the expression as a field over `alg`. Variables and blades
    /// must be in range for the algebra (guaranteed by [`parse_ast`]).
    pub fn eval(&self, alg: &Algebra) -> PolyField {
        match self {
            Expr::Num(r) => PolyField::scalar(alg, r.clone()),
            Expr::Var(k) => PolyField::var(alg, *k).expect("variable in range"),
            Expr::Blade(b) => PolyField::blade(alg, *b),
            Expr::Neg(e) => -&e.eval(alg),
            Expr::Add(a, b) => &a.eval(alg) + &b.eval(alg),
            Expr::Sub(a, b) => &a.eval(alg) - &b.eval(alg),
            Expr::Mul(a, b) => &a.eval(alg) * &b.eval(alg),
            Expr::Pow(base, k) => {
                let base = base.eval(alg);
                let mut acc = PolyField::one(alg);
                for _ in 0..*k {
                    acc = &acc * &base;
                }
                acc
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(r) if r.is_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, needs_parens: bool) -> fmt::Result {
        if needs_parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::Var(k) => write!(f, "x{k}"),
            Expr::Blade(b) => write!(f, "{b}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.fmt_child(f, e.precedence() < p)
            }
            Expr::Add(a, b) => {
                a.fmt_child(f, a.precedence() < p)?;
                f.write_str(" + ")?;
                b.fmt_child(f, b.precedence() <= p)
            }
            Expr::Sub(a, b) => {
                a.fmt_child(f, a.precedence() < p)?;
                f.write_str(" - ")?;
                b.fmt_child(f, b.precedence() <= p)
            }
            Expr::Mul(a, b) => {
                a.fmt_child(f, a.precedence() < p)?;
                f.write_str("*")?;
                b.fmt_child(f, b.precedence() <= p)
            }
            Expr::Pow(base, k) => {
                base.fmt_child(f, base.precedence() < 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Var(usize),
    Blade(Blade),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    token: Token,
    column: usize,
    /// Raw digits when the token is an integer literal.
    integer: Option<String>,
}

fn error(column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        column,
        message: message.into(),
    }
}

fn lex(text: &str, n: usize) -> Result<Vec<Lexed>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let digits_from = |start: usize| {
            let mut end = start;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            end
        };
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push(Lexed { token: Token::Plus, column, integer: None }),
            '-' => out.push(Lexed { token: Token::Minus, column, integer: None }),
            '*' => out.push(Lexed { token: Token::Star, column, integer: None }),
            '^' => out.push(Lexed { token: Token::Caret, column, integer: None }),
            '(' => out.push(Lexed { token: Token::LParen, column, integer: None }),
            ')' => out.push(Lexed { token: Token::RParen, column, integer: None }),
            '0'..='9' => {
                let mut end = digits_from(i);
                let mut integer = true;
                if end < chars.len() && chars[end] == '/' {
                    let den_end = digits_from(end + 1);
                    if den_end == end + 1 {
                        return Err(error(end + 1, "expected denominator digits after '/'"));
                    }
                    end = den_end;
                    integer = false;
                }
                let literal: String = chars[i..end].iter().collect();
                let value = parse_rational(&literal)
                    .ok_or_else(|| error(column, format!("invalid rational literal '{literal}'")))?;
                out.push(Lexed {
                    token: Token::Num(value),
                    column,
                    integer: integer.then_some(literal),
                });
                i = end;
                continue;
            }
            'x' => {
                let end = digits_from(i + 1);
                let digits: String = chars[i + 1..end].iter().collect();
                if digits.len() != 1 {
                    return Err(error(column, "variables are x0..x9"));
                }
                let k = digits.parse::<usize>().expect("one digit");
                if k > n {
                    return Err(error(
                        column,
                        format!("variable x{k} out of range (x0..x{n})"),
                    ));
                }
                out.push(Lexed { token: Token::Var(k), column, integer: None });
                i = end;
                continue;
            }
            'e' => {
                let end = digits_from(i + 1);
                let digits: Vec<usize> = chars[i + 1..end]
                    .iter()
                    .map(|d| d.to_digit(10).expect("digit") as usize)
                    .collect();
                if digits.is_empty() {
                    return Err(error(column, "blade needs digits, e.g. e0 or e12"));
                }
                let blade = if digits == [0] {
                    Blade::UNIT
                } else {
                    if digits.contains(&0) {
                        return Err(error(column, "e0 cannot be combined with other generators"));
                    }
                    let blade = Blade::from_indices(&digits).ok_or_else(|| {
                        error(column, "blade digits must be strictly increasing")
                    })?;
                    if blade.top() > n || blade.top() > MAX_GENERATORS {
                        return Err(error(
                            column,
                            format!("blade {blade} out of range for {n} generators"),
                        ));
                    }
                    blade
                };
                out.push(Lexed { token: Token::Blade(blade), column, integer: None });
                i = end;
                continue;
            }
            other => return Err(error(column, format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Lexed>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.token)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |t| t.column)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base_column = self.column();
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            if let Expr::Blade(b) = base {
                return Err(error(
                    base_column,
                    format!("exponent on blade {b}; multiply blades explicitly"),
                ));
            }
            self.pos += 1;
            let column = self.column();
            let digits = self
                .tokens
                .get(self.pos)
                .and_then(|t| t.integer.clone())
                .ok_or_else(|| error(column, "exponent must be a non-negative integer"))?;
            let k: u32 = digits
                .parse()
                .ok()
                .filter(|&k| k <= MAX_EXPONENT)
                .ok_or_else(|| error(column, format!("exponent larger than {MAX_EXPONENT}")))?;
            self.pos += 1;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        let Some(token) = self.peek().cloned() else {
            return Err(error(column, "unexpected end of expression"));
        };
        self.pos += 1;
        match token {
            Token::Num(r) => Ok(Expr::Num(r)),
            Token::Var(k) => Ok(Expr::Var(k)),
            Token::Blade(b) => Ok(Expr::Blade(b)),
            Token::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(error(self.column(), "expected ')'")),
                }
            }
            other => Err(error(column, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(token: &Token) -> &'static str {
    match token {
        Token::Plus => "'+'",
        Token::Minus => "'-'",
        Token::Star => "'*'",
        Token::Caret => "'^'",
        Token::LParen => "'('",
        Token::RParen => "')'",
        _ => "operand",
    }
}

/// Parses an expression over an algebra with `n` generators (variables `x0..xn`).
pub fn parse_ast(text: &str, n: usize) -> Result<Expr, ParseError> {
    let tokens = lex(text, n)?;
    if tokens.is_empty() {
        return Err(error(1, "empty expression"));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_column: text.chars().count() + 1,
    };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        let column = parser.column();
        let what = describe(&parser.tokens[parser.pos].token);
        return Err(error(column, format!("unexpected {what}")));
    }
    Ok(expr)
}

/// Parses and evaluates an expression as a field over `alg`.
pub fn parse_expr(text: &str, alg: &Algebra) -> Result<PolyField, ParseError> {
    Ok(parse_ast(text, alg.n())?.eval(alg))
}

/// Appends one signed term `coeff · x^exponents · blade` in surface syntax.
pub(crate) fn write_term(out: &mut String, coeff: &Rational, exponents: &[u32], blade: Blade) {
    let negative = coeff.is_negative();
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let magnitude = coeff.abs();
    let mut factors: Vec<String> = Vec::new();
    for (k, &e) in exponents.iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(format!("x{k}")),
            _ => factors.push(format!("x{k}^{e}")),
        }
    }
    if !blade.is_unit() {
        factors.push(blade.to_string());
    }
    if !magnitude.is_one() || factors.is_empty() {
        factors.insert(0, magnitude.to_string());
    }
    out.push_str(&factors.join("*"));
}
