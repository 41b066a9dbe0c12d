//! Text format for generator sets.
//!
//! ```text
//! #modes 2
//! #no-free
//! hop = i*ad[1]*a[1]*(ad[2] + a[2]);
//! ```
//!
//! Statements are `name = expr;`. Expressions use `a[k]`, `ad[k]` (1-based
//! modes), `i`, rationals like `-3/2`, `+ - *`, `^` with a literal exponent, and
//! parentheses. `#` starts a comment; `#modes N` and `#no-free` are pragmas.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeff::{format_rational, GaussianRational, Rational};
use crate::multi_index::MultiIndex;
use crate::skew::Sign;
use crate::weyl::WeylPolynomial;

/// Largest accepted mode index.
pub const MAX_MODES: u32 = 64;
/// Largest accepted literal exponent.
pub const MAX_EXPONENT: u32 = 32;
/// Largest number of terms any intermediate expression may reach.
pub const MAX_TERMS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub message: String,
    /// Source text at the error position; empty at end of input.
    pub token: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.token.is_empty() {
            write!(
                f,
                "{}:{}: {} (at end of input)",
                self.line, self.column, self.message
            )
        } else {
            write!(
                f,
                "{}:{}: {} (found `{}`)",
                self.line, self.column, self.message, self.token
            )
        }
    }
}

impl std::error::Error for ParseDiagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub name: String,
    pub poly: WeylPolynomial,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceFile {
    pub n: usize,
    /// Set by `#no-free`: free operators are not added implicitly.
    pub no_free: bool,
    pub statements: Vec<Statement>,
}

impl SourceFile {
    /// Names and values, ignoring source positions.
    pub fn definitions(&self) -> Vec<(&str, &WeylPolynomial)> {
        self.statements
            .iter()
            .map(|s| (s.name.as_str(), &s.poly))
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Statement> {
        self.statements.iter().find(|s| s.name == name)
    }

    /// Renders a file that parses back to an equal `SourceFile`.
    pub fn to_source(&self) -> String {
        let mut out = format!("#modes {}\n", self.n);
        if self.no_free {
            out.push_str("#no-free\n");
        }
        for s in &self.statements {
            out.push_str(&format!("{} = {};\n", s.name, format_polynomial(&s.poly)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Uint(BigInt),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

struct Pragma {
    modes: Option<(u32, usize, usize)>,
    no_free: bool,
}

fn diag(
    line: usize,
    column: usize,
    message: impl Into<String>,
    token: impl Into<String>,
) -> ParseDiagnostic {
    ParseDiagnostic {
        line,
        column,
        message: message.into(),
        token: token.into(),
    }
}

fn lex(source: &str) -> Result<(Vec<Token>, Pragma), ParseDiagnostic> {
    let mut tokens = Vec::new();
    let mut pragma = Pragma {
        modes: None,
        no_free: false,
    };
    let chars: Vec<char> = source.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            let end = chars[i..]
                .iter()
                .position(|&ch| ch == '\n')
                .map_or(chars.len(), |p| i + p);
            let text: String = chars[i + 1..end].iter().collect();
            if let Some(rest) = text.strip_prefix("modes") {
                let value = rest.trim();
                let n = value.parse::<u32>().map_err(|_| {
                    diag(
                        start_line,
                        start_col,
                        "`#modes` expects a mode count",
                        format!("#{text}"),
                    )
                })?;
                if n > MAX_MODES {
                    return Err(diag(
                        start_line,
                        start_col,
                        format!("at most {MAX_MODES} modes are supported"),
                        value,
                    ));
                }
                if pragma.modes.is_some() {
                    return Err(diag(
                        start_line,
                        start_col,
                        "duplicate `#modes` pragma",
                        format!("#{text}"),
                    ));
                }
                pragma.modes = Some((n, start_line, start_col));
            } else if text.trim_end() == "no-free" {
                pragma.no_free = true;
            }
            col += end - i;
            i = end;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            tokens.push(Token {
                tok: Tok::Ident(text.clone()),
                text,
                line: start_line,
                column: start_col,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            let value: BigInt = text.parse().expect("digits parse as an integer");
            tokens.push(Token {
                tok: Tok::Uint(value),
                text,
                line: start_line,
                column: start_col,
            });
            continue;
        }
        if "=;+-*/^()[]".contains(c) {
            i += 1;
            col += 1;
            tokens.push(Token {
                tok: Tok::Sym(c),
                text: c.to_string(),
                line: start_line,
                column: start_col,
            });
            continue;
        }
        return Err(diag(
            start_line,
            start_col,
            "unexpected character",
            c.to_string(),
        ));
    }
    tokens.push(Token {
        tok: Tok::Eof,
        text: String::new(),
        line,
        column: col,
    });
    Ok((tokens, pragma))
}

#[derive(Clone, Debug)]
enum Expr {
    Annihilate(u32),
    Create(u32),
    I,
    Num(Rational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// Position marker so evaluation errors can point at the source.
    At(Box<Expr>, usize, usize),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    max_mode: Option<(u32, usize, usize)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseDiagnostic {
        let t = self.peek();
        diag(t.line, t.column, message, t.text.clone())
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<Token, ParseDiagnostic> {
        if self.is_sym(c) {
            Ok(self.next())
        } else {
            Err(self.error_here(format!("expected `{c}`")))
        }
    }

    fn uint(&mut self, what: &str, max: u32) -> Result<u32, ParseDiagnostic> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Uint(v) => {
                let value = u32::try_from(v).ok().filter(|&x| x <= max).ok_or_else(|| {
                    diag(
                        t.line,
                        t.column,
                        format!("{what} must be at most {max}"),
                        t.text.clone(),
                    )
                })?;
                self.next();
                Ok(value)
            }
            _ => Err(self.error_here(format!("expected {what}"))),
        }
    }

    fn statement(&mut self) -> Result<(String, Expr, usize, usize), ParseDiagnostic> {
        let t = self.peek().clone();
        let name = match &t.tok {
            Tok::Ident(name) => name.clone(),
            _ => return Err(self.error_here("expected a statement name")),
        };
        self.next();
        self.expect_sym('=')?;
        let expr = self.expr()?;
        self.expect_sym(';')?;
        Ok((name, expr, t.line, t.column))
    }

    fn expr(&mut self) -> Result<Expr, ParseDiagnostic> {
        let mut lhs = self.term()?;
        loop {
            if self.is_sym('+') {
                self.next();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.next();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseDiagnostic> {
        let mut lhs = self.factor()?;
        while self.is_sym('*') {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseDiagnostic> {
        let t = self.peek().clone();
        let base = self.base()?;
        if self.is_sym('^') {
            self.next();
            let e = self.uint("an exponent", MAX_EXPONENT)?;
            return Ok(Expr::At(
                Box::new(Expr::Pow(Box::new(base), e)),
                t.line,
                t.column,
            ));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseDiagnostic> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Sym('-') => {
                self.next();
                if matches!(self.peek().tok, Tok::Uint(_)) {
                    Ok(Expr::Num(-self.rational()?))
                } else {
                    Ok(Expr::Neg(Box::new(self.factor()?)))
                }
            }
            Tok::Uint(_) => Ok(Expr::Num(self.rational()?)),
            Tok::Sym('(') => {
                self.next();
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "i" => {
                self.next();
                Ok(Expr::I)
            }
            Tok::Ident(name) if name == "a" || name == "ad" => {
                let creation = name == "ad";
                self.next();
                self.expect_sym('[')?;
                let k = self.peek().clone();
                let mode = self.uint("a mode index", MAX_MODES)?;
                if mode == 0 {
                    return Err(diag(k.line, k.column, "mode indices start at 1", k.text));
                }
                self.expect_sym(']')?;
                if self.max_mode.is_none_or(|(m, _, _)| mode > m) {
                    self.max_mode = Some((mode, k.line, k.column));
                }
                Ok(if creation {
                    Expr::Create(mode)
                } else {
                    Expr::Annihilate(mode)
                })
            }
            Tok::Ident(_) => Err(self.error_here("unknown identifier; expected `a`, `ad` or `i`")),
            _ => Err(self.error_here("expected an operand")),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseDiagnostic> {
        let numer = match self.next().tok {
            Tok::Uint(v) => v,
            _ => unreachable!("caller checked for an integer"),
        };
        if self.is_sym('/') {
            self.next();
            let t = self.peek().clone();
            let denom = match &t.tok {
                Tok::Uint(v) => v.clone(),
                _ => return Err(self.error_here("expected a denominator")),
            };
            if denom.is_zero() {
                return Err(diag(t.line, t.column, "zero denominator", t.text));
            }
            self.next();
            return Ok(Rational::new(numer, denom));
        }
        Ok(Rational::from_integer(numer))
    }
}

fn guard(p: WeylPolynomial, line: usize, column: usize) -> Result<WeylPolynomial, ParseDiagnostic> {
    if p.len() > MAX_TERMS {
        return Err(diag(
            line,
            column,
            format!("expression expands to more than {MAX_TERMS} terms"),
            "",
        ));
    }
    Ok(p)
}

fn eval(e: &Expr, n: usize, at: (usize, usize)) -> Result<WeylPolynomial, ParseDiagnostic> {
    let (line, column) = at;
    let poly = match e {
        Expr::Annihilate(k) => {
            WeylPolynomial::annihilation(n, *k as usize - 1).expect("mode checked against n")
        }
        Expr::Create(k) => {
            WeylPolynomial::creation(n, *k as usize - 1).expect("mode checked against n")
        }
        Expr::I => WeylPolynomial::constant(n, GaussianRational::i()),
        Expr::Num(r) => WeylPolynomial::constant(n, GaussianRational::real(r.clone())),
        Expr::Neg(x) => -&eval(x, n, at)?,
        Expr::Add(x, y) => &eval(x, n, at)? + &eval(y, n, at)?,
        Expr::Sub(x, y) => &eval(x, n, at)? - &eval(y, n, at)?,
        Expr::Mul(x, y) => {
            let (p, q) = (eval(x, n, at)?, eval(y, n, at)?);
            if p.len().saturating_mul(q.len()) > MAX_TERMS * 16 {
                return Err(diag(line, column, "product is too large to expand", ""));
            }
            &p * &q
        }
        Expr::Pow(x, k) => {
            let base = eval(x, n, at)?;
            let mut acc = WeylPolynomial::constant(n, GaussianRational::one());
            for _ in 0..*k {
                acc = guard(&acc * &base, line, column)?;
            }
            acc
        }
        Expr::At(x, l, c) => eval(x, n, (*l, *c))?,
    };
    guard(poly, line, column)
}

/// Parses a generator file.
pub fn parse(source: &str) -> Result<SourceFile, ParseDiagnostic> {
    let (tokens, pragma) = lex(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        max_mode: None,
    };
    let mut raw = Vec::new();
    while parser.peek().tok != Tok::Eof {
        let (name, expr, line, column) = parser.statement()?;
        if raw
            .iter()
            .any(|(other, _, _, _): &(String, Expr, usize, usize)| *other == name)
        {
            return Err(diag(line, column, "duplicate statement name", name));
        }
        raw.push((name, expr, line, column));
    }
    let used = parser.max_mode.map_or(0, |(m, _, _)| m);
    let n = match pragma.modes {
        Some((declared, _, _)) => {
            if let Some((m, line, column)) = parser.max_mode {
                if m > declared {
                    return Err(diag(
                        line,
                        column,
                        format!("mode {m} exceeds `#modes {declared}`"),
                        m.to_string(),
                    ));
                }
            }
            declared
        }
        None => used,
    } as usize;
    let mut statements = Vec::with_capacity(raw.len());
    for (name, expr, line, column) in raw {
        let poly = eval(&expr, n, (line, column))?;
        statements.push(Statement { name, poly, line });
    }
    Ok(SourceFile {
        n,
        no_free: pragma.no_free,
        statements,
    })
}

/// Parses a single expression over `n` modes.
pub fn parse_expression(source: &str, n: usize) -> Result<WeylPolynomial, ParseDiagnostic> {
    let (tokens, _) = lex(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        max_mode: None,
    };
    let expr = parser.expr()?;
    if parser.peek().tok != Tok::Eof {
        return Err(parser.error_here("unexpected trailing input"));
    }
    if let Some((m, line, column)) = parser.max_mode {
        if m as usize > n {
            return Err(diag(
                line,
                column,
                format!("mode {m} exceeds the {n} available modes"),
                m.to_string(),
            ));
        }
    }
    eval(&expr, n, (1, 1))
}

fn monomial_factors(gamma: &MultiIndex) -> Vec<String> {
    let mut out = Vec::new();
    let mut push = |name: &str, k: usize, e: u32| match e {
        0 => {}
        1 => out.push(format!("{name}[{}]", k + 1)),
        _ => out.push(format!("{name}[{}]^{e}", k + 1)),
    };
    for (k, &e) in gamma.alpha().iter().enumerate() {
        push("ad", k, e);
    }
    for (k, &e) in gamma.beta().iter().enumerate() {
        push("a", k, e);
    }
    out
}

/// Renders a polynomial in the input language, highest degree first.
pub fn format_polynomial(p: &WeylPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (gamma, c)) in p.terms().rev().enumerate() {
        let mono = monomial_factors(gamma);
        let (negative, mut factors) = if c.is_real() || c.is_imaginary() {
            let (value, imaginary) = if c.is_real() {
                (&c.re, false)
            } else {
                (&c.im, true)
            };
            let mag = value.abs();
            let mut f = Vec::new();
            if !mag.is_one() || (mono.is_empty() && !imaginary) {
                f.push(format_rational(&mag));
            }
            if imaginary {
                f.push("i".to_string());
            }
            (value.is_negative(), f)
        } else {
            let sign = if c.im.is_negative() { '-' } else { '+' };
            let im = c.im.abs();
            let im = if im.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", format_rational(&im))
            };
            (
                false,
                vec![format!("({} {sign} {im})", format_rational(&c.re))],
            )
        };
        factors.extend(mono);
        let body = factors.join("*");
        match (idx, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out
}

/// Parses a basis label such as `+1,2;0,0`, `g-(1,0;0,1)` or `1;0`.
/// The sign is optional; `None` is returned when it is omitted.
pub fn parse_basis_label(text: &str) -> Result<(Option<Sign>, MultiIndex), ParseDiagnostic> {
    let chars: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i + 1, c))
        .collect();
    let end_col = text.chars().count() + 1;
    let mut pos = 0;
    let at = |pos: usize| {
        chars
            .get(pos)
            .map_or((end_col, String::new()), |(c, ch)| (*c, ch.to_string()))
    };
    if chars.get(pos).map(|x| x.1) == Some('g') {
        pos += 1;
    }
    let sign = match chars.get(pos).map(|x| x.1) {
        Some('+') => {
            pos += 1;
            Some(Sign::Plus)
        }
        Some('-') => {
            pos += 1;
            Some(Sign::Minus)
        }
        _ => None,
    };
    let parens = chars.get(pos).map(|x| x.1) == Some('(');
    if parens {
        pos += 1;
    }
    let mut parts: Vec<Vec<u32>> = vec![Vec::new()];
    let mut expect_number = true;
    loop {
        let (col, tok) = at(pos);
        match chars.get(pos).map(|x| x.1) {
            Some(d) if d.is_ascii_digit() && expect_number => {
                let mut value: u32 = 0;
                while let Some(d) = chars.get(pos).map(|x| x.1).filter(char::is_ascii_digit) {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d.to_digit(10).expect("ascii digit")))
                        .filter(|&v| v <= 1 << 16)
                        .ok_or_else(|| diag(1, col, "exponent is too large", tok.clone()))?;
                    pos += 1;
                }
                parts.last_mut().expect("parts is never empty").push(value);
                expect_number = false;
            }
            Some(',') if !expect_number => {
                pos += 1;
                expect_number = true;
            }
            Some(';') if !expect_number && parts.len() == 1 => {
                pos += 1;
                parts.push(Vec::new());
                expect_number = true;
            }
            Some(')') if parens && !expect_number => {
                pos += 1;
                break;
            }
            None if !parens && !expect_number => break,
            _ => {
                let message = if expect_number {
                    "expected an exponent"
                } else {
                    "expected `,`, `;` or end of label"
                };
                return Err(diag(1, col, message, tok));
            }
        }
    }
    if pos < chars.len() {
        let (col, tok) = at(pos);
        return Err(diag(1, col, "unexpected trailing input", tok));
    }
    if parts.len() != 2 {
        return Err(diag(1, end_col, "expected `alpha;beta`", ""));
    }
    if parts[0].len() != parts[1].len() || parts[0].len() as u32 > MAX_MODES {
        return Err(diag(1, 1, "alpha and beta must have the same length", text));
    }
    let gamma = MultiIndex::new(&parts[0], &parts[1]).expect("lengths checked");
    Ok((sign, gamma))
}
