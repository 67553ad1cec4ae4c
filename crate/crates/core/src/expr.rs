//! Expressions over the Chow ring.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := INT | SYMBOL | '(' expr ')' | '-' atom
//! ```
//!
//! Multiplication must be written out; `2H` and `HF` are errors. Symbols are
//! `H`, `F`, `K`, `X` (the divisor `bH + F`), `PL`, `B`, `C` and `CX` (the
//! double-point class); `X` and `CX` need the parameter `b`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::chow::{ChowClass, ChowContext, ChowError, NamedClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    H,
    F,
    K,
    X,
    PL,
    B,
    C,
    CX,
}

impl Symbol {
    pub const ALL: [Symbol; 8] = [
        Symbol::H,
        Symbol::F,
        Symbol::K,
        Symbol::X,
        Symbol::PL,
        Symbol::B,
        Symbol::C,
        Symbol::CX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::H => "H",
            Symbol::F => "F",
            Symbol::K => "K",
            Symbol::X => "X",
            Symbol::PL => "PL",
            Symbol::B => "B",
            Symbol::C => "C",
            Symbol::CX => "CX",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|sym| sym.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Sym(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unknown symbol `{name}` at offset {offset}; known symbols are H, F, K, X, PL, B, C, CX")]
    UnknownSymbol { name: String, offset: usize },
    #[error("exponent `{text}` at offset {offset} is too large")]
    ExponentOverflow { text: String, offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("symbol {0} needs the divisor parameter b")]
    MissingB(&'static str),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Other(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) | Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Other(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(input: &str) -> Vec<(usize, Tok)> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push((i, Tok::Int(s)));
            continue;
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_alphanumeric() || *d == '_') {
                s.push(d);
                chars.next();
            }
            out.push((i, Tok::Ident(s)));
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => Tok::Other(other),
            }
        };
        chars.next();
        out.push((i, tok));
    }
    out.push((input.len(), Tok::End));
    out
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected,
            found: self.peek().to_string(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
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

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Int(text) => {
                self.bump();
                let exp = text
                    .parse::<u32>()
                    .map_err(|_| ParseError::ExponentOverflow { text, offset })?;
                Ok(Expr::Pow(Box::new(base), exp))
            }
            _ => Err(self.error("a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Int(text) => {
                self.bump();
                Ok(Expr::Int(text.parse().expect("digit run parses as an integer")))
            }
            Tok::Ident(name) => {
                self.bump();
                Symbol::from_name(&name)
                    .map(Expr::Sym)
                    .ok_or(ParseError::UnknownSymbol { name, offset })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            _ => Err(self.error("an integer, a symbol, `(` or `-`")),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(input),
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}

// Binding strength of the printed form: sums 1, products 2, powers 3, atoms 4.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Int(_) | Expr::Sym(_) | Expr::Neg(_) => 4,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "(")?;
        write!(f, "{e}")?;
        write!(f, ")")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Sym(s) => write!(f, "{}", s.name()),
            Expr::Neg(inner) => {
                write!(f, "-")?;
                write_at(f, inner, 4)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_at(f, a, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                write_at(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_at(f, a, 2)?;
                write!(f, "*")?;
                write_at(f, b, 3)
            }
            Expr::Pow(base, exp) => {
                write_at(f, base, 4)?;
                write!(f, "^{exp}")
            }
        }
    }
}

/// Evaluates to a class in normal form.
pub fn evaluate(expr: &Expr, ctx: &ChowContext, b: Option<i64>) -> Result<ChowClass, EvalError> {
    Ok(match expr {
        Expr::Int(v) => ctx.constant(v.clone()),
        Expr::Sym(sym) => {
            let tag = match sym {
                Symbol::H => return Ok(ctx.h()),
                Symbol::F => return Ok(ctx.f()),
                Symbol::K => NamedClass::Canonical,
                Symbol::X => NamedClass::Divisor {
                    b: b.ok_or(EvalError::MissingB("X"))?,
                },
                Symbol::CX => NamedClass::DoublePoint {
                    b: b.ok_or(EvalError::MissingB("CX"))?,
                },
                Symbol::PL => NamedClass::LineProduct,
                Symbol::B => NamedClass::FiberOverBase,
                Symbol::C => NamedClass::FiberOverLine,
            };
            tag.expand(ctx)?
        }
        Expr::Neg(e) => -&evaluate(e, ctx, b)?,
        Expr::Add(x, y) => evaluate(x, ctx, b)?.try_add(&evaluate(y, ctx, b)?)?,
        Expr::Sub(x, y) => evaluate(x, ctx, b)?.try_sub(&evaluate(y, ctx, b)?)?,
        Expr::Mul(x, y) => evaluate(x, ctx, b)?.try_mul(&evaluate(y, ctx, b)?)?,
        Expr::Pow(x, e) => evaluate(x, ctx, b)?.pow(*e),
    })
}

/// Result of evaluating an expression: the class and, for zero-cycles, its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub class: ChowClass,
    pub degree: Option<BigInt>,
}

pub fn evaluate_str(input: &str, ctx: &ChowContext, b: Option<i64>) -> Result<Evaluation, ExprError> {
    let class = evaluate(&parse(input)?, ctx, b)?;
    let degree = class.degree().ok();
    Ok(Evaluation { class, degree })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
