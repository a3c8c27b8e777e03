//! Expression, form, and problem-file parsing.
//!
//! Precedence from loosest to tightest: `+ -`, `/\`, `*`, `^`, unary `-`.
//! `/` only appears inside rational literals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::forms::{Blade, Form, Gen};
use crate::hodge::MetricKind;
use crate::maxwell::Potential;
use crate::poly::{Poly, Var};
use crate::scalar::{GaussianRational, Rational};

/// Largest accepted exponent after `^`, and largest degree a power may produce.
pub const MAX_EXPONENT: u32 = 64;
/// Deepest accepted nesting of parentheses and unary minus.
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("{message}{}", expected_suffix(.expected))]
    Parse { line: usize, col: usize, message: String, expected: Vec<String> },
    #[error("zero denominator in rational literal")]
    ZeroDenominator { line: usize, col: usize },
    #[error("generator used inside a scalar power")]
    MixedGeneratorUse { line: usize, col: usize },
    #[error("missing required key 'metric'")]
    MissingMetric,
    #[error("duplicate key '{key}' (first given on line {first_line})")]
    DuplicateKey { key: String, line: usize, col: usize, first_line: usize },
    #[error("unknown key '{key}'; expected one of metric, f1, f2, fb1, fb2, gauge")]
    UnknownKey { key: String, line: usize, col: usize },
    #[error("unknown value '{value}' for '{key}'; expected 'euclidean' or 'minkowski'")]
    UnknownValue { key: String, value: String, line: usize, col: usize },
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!("; expected one of: {}", expected.join(", "))
    }
}

impl LangError {
    /// 1-based `(line, column)` of the error, where one exists.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            LangError::Parse { line, col, .. }
            | LangError::ZeroDenominator { line, col }
            | LangError::MixedGeneratorUse { line, col }
            | LangError::DuplicateKey { line, col, .. }
            | LangError::UnknownKey { line, col, .. }
            | LangError::UnknownValue { line, col, .. } => Some((*line, *col)),
            LangError::MissingMetric => None,
        }
    }

    fn shifted(self, dl: usize, dc: usize) -> Self {
        let mv = |line: usize, col: usize| (line + dl, if line == 1 { col + dc } else { col });
        match self {
            LangError::Parse { line, col, message, expected } => {
                let (line, col) = mv(line, col);
                LangError::Parse { line, col, message, expected }
            }
            LangError::ZeroDenominator { line, col } => {
                let (line, col) = mv(line, col);
                LangError::ZeroDenominator { line, col }
            }
            LangError::MixedGeneratorUse { line, col } => {
                let (line, col) = mv(line, col);
                LangError::MixedGeneratorUse { line, col }
            }
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Wedge,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Wedge => f.write_str("'/\\'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn perr(line: usize, col: usize, message: impl Into<String>, expected: &[&str]) -> LangError {
    LangError::Parse {
        line,
        col,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, LangError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (sl, sc) = (line, col);
        match c {
            '\n' => {
                k += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                k += 1;
                col += 1;
                continue;
            }
            '0'..='9' => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                col += k - start;
                let digits: String = chars[start..k].iter().collect();
                let n: BigInt = digits.parse().expect("ascii digits");
                out.push(Spanned { tok: Tok::Num(n), line: sl, col: sc });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                    k += 1;
                }
                col += k - start;
                let s: String = chars[start..k].iter().collect();
                out.push(Spanned { tok: Tok::Ident(s), line: sl, col: sc });
                continue;
            }
            '/' if chars.get(k + 1) == Some(&'\\') => {
                k += 2;
                col += 2;
                out.push(Spanned { tok: Tok::Wedge, line: sl, col: sc });
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(perr(sl, sc, format!("unexpected character {other:?}"), &[]));
            }
        };
        k += 1;
        col += 1;
        out.push(Spanned { tok, line: sl, col: sc });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Scalar,
    Form,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    mode: Mode,
    depth: usize,
}

const ATOM_START_SCALAR: &[&str] = &["'('", "number", "'i'", "variable", "'-'"];
const ATOM_START_FORM: &[&str] = &["'('", "number", "'i'", "variable", "generator", "'-'"];

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn atom_start(&self) -> &'static [&'static str] {
        match self.mode {
            Mode::Scalar => ATOM_START_SCALAR,
            Mode::Form => ATOM_START_FORM,
        }
    }

    fn enter(&mut self, at: &Spanned) -> Result<(), LangError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(perr(at.line, at.col, format!("nesting deeper than {MAX_DEPTH}"), &[]));
        }
        Ok(())
    }

    fn parse_all(&mut self) -> Result<Form, LangError> {
        let f = self.expr()?;
        let t = self.peek().clone();
        if t.tok != Tok::Eof {
            let mut exp = vec!["'+'", "'-'", "'*'", "'^'"];
            if self.mode == Mode::Form {
                exp.push("'/\\'");
            }
            exp.push("end of input");
            return Err(perr(t.line, t.col, format!("unexpected {}", t.tok), &exp));
        }
        Ok(f)
    }

    fn expr(&mut self) -> Result<Form, LangError> {
        let mut acc = self.wedge()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.wedge()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.wedge()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn wedge(&mut self) -> Result<Form, LangError> {
        let mut acc = self.term()?;
        while self.peek().tok == Tok::Wedge {
            let t = self.bump();
            if self.mode == Mode::Scalar {
                return Err(perr(t.line, t.col, "wedge is not allowed in a scalar expression", &[]));
            }
            acc = acc.wedge(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Form, LangError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            let t = self.bump();
            let rhs = self.factor()?;
            acc = if acc.is_homogeneous_of(0) {
                rhs.mul_poly(&acc.coeff(Blade::SCALAR))
            } else if rhs.is_homogeneous_of(0) {
                acc.mul_poly(&rhs.coeff(Blade::SCALAR))
            } else {
                return Err(perr(
                    t.line,
                    t.col,
                    "'*' needs a scalar operand on one side; use '/\\' to wedge forms",
                    &[],
                ));
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Form, LangError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let t = self.bump();
        let n = match &t.tok {
            Tok::Num(n) => n.clone(),
            other => return Err(perr(t.line, t.col, format!("unexpected {other} after '^'"), &["exponent"])),
        };
        let e = n.to_u32().filter(|e| *e <= MAX_EXPONENT).ok_or_else(|| {
            perr(t.line, t.col, format!("exponent {n} exceeds the limit {MAX_EXPONENT}"), &[])
        })?;
        if !base.is_homogeneous_of(0) {
            return Err(LangError::MixedGeneratorUse { line: caret.line, col: caret.col });
        }
        let p = base.coeff(Blade::SCALAR);
        if p.degree().unwrap_or(0).saturating_mul(e) > MAX_EXPONENT {
            return Err(perr(caret.line, caret.col, format!("power has degree above {MAX_EXPONENT}"), &[]));
        }
        Ok(Form::scalar(p.pow(e)))
    }

    fn atom(&mut self) -> Result<Form, LangError> {
        let t = self.bump();
        match &t.tok {
            Tok::LParen => {
                self.enter(&t)?;
                let inner = self.expr()?;
                self.depth -= 1;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(perr(close.line, close.col, format!("unexpected {}", close.tok), &["')'"]));
                }
                Ok(inner)
            }
            Tok::Minus => {
                self.enter(&t)?;
                let inner = self.atom()?;
                self.depth -= 1;
                Ok(-inner)
            }
            Tok::Num(n) => {
                let num = n.clone();
                if self.peek().tok != Tok::Slash {
                    return Ok(Form::scalar(Poly::constant(Rational::from_integer(num).into())));
                }
                self.bump();
                let d = self.bump();
                let den = match d.tok {
                    Tok::Num(den) => den,
                    other => {
                        return Err(perr(d.line, d.col, format!("unexpected {other} in rational literal"), &["number"]))
                    }
                };
                if den.is_zero() {
                    return Err(LangError::ZeroDenominator { line: d.line, col: d.col });
                }
                Ok(Form::scalar(Poly::constant(Rational::new(num, den).into())))
            }
            Tok::Ident(s) => {
                if s == "i" {
                    return Ok(Form::scalar(Poly::constant(GaussianRational::i())));
                }
                if let Some(v) = Var::from_name(s) {
                    return Ok(Form::scalar(Poly::var(v)));
                }
                if let Some(g) = Gen::from_name(s) {
                    if self.mode == Mode::Scalar {
                        return Err(perr(
                            t.line,
                            t.col,
                            format!("generator '{s}' is not allowed in a scalar expression"),
                            ATOM_START_SCALAR,
                        ));
                    }
                    return Ok(Form::gen(g));
                }
                Err(perr(t.line, t.col, format!("unknown name '{s}'"), self.atom_start()))
            }
            other => Err(perr(t.line, t.col, format!("unexpected {other}"), self.atom_start())),
        }
    }
}

fn parse_with(text: &str, mode: Mode) -> Result<Form, LangError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0, mode, depth: 0 }.parse_all()
}

/// Parses a scalar polynomial expression.
pub fn parse_expr(text: &str) -> Result<Poly, LangError> {
    Ok(parse_with(text, Mode::Scalar)?.coeff(Blade::SCALAR))
}

/// Parses a form expression over `dz1, dz2, dzb1, dzb2`.
pub fn parse_form(text: &str) -> Result<Form, LangError> {
    parse_with(text, Mode::Form)
}

/// A validated problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub metric: MetricKind,
    pub potential: Potential,
    pub gauge: Option<Poly>,
}

const KEYS: [&str; 6] = ["metric", "f1", "f2", "fb1", "fb2", "gauge"];

/// Parses a line-oriented `key = value` problem file.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, LangError> {
    let mut seen: Vec<(&str, usize)> = Vec::new();
    let mut metric = None;
    let mut potential = Potential::zero();
    let mut gauge = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(perr(line, col, "expected 'key = value'", &["'='"]));
        };
        let key_raw = &content[..eq];
        let key = key_raw.trim();
        let key_col = key_raw.chars().take_while(|c| c.is_whitespace()).count() + 1;
        let Some(&canon) = KEYS.iter().find(|k| **k == key) else {
            return Err(LangError::UnknownKey { key: key.to_string(), line, col: key_col });
        };
        if let Some((_, first_line)) = seen.iter().find(|(k, _)| *k == canon) {
            return Err(LangError::DuplicateKey {
                key: key.to_string(),
                line,
                col: key_col,
                first_line: *first_line,
            });
        }
        seen.push((canon, line));
        let value_raw = &content[eq + 1..];
        let value_col = content[..eq + 1].chars().count() + 1;
        if canon == "metric" {
            let value = value_raw.trim();
            let lead = value_raw.chars().take_while(|c| c.is_whitespace()).count();
            metric = Some(MetricKind::from_name(value).ok_or_else(|| LangError::UnknownValue {
                key: "metric".to_string(),
                value: value.to_string(),
                line,
                col: value_col + lead,
            })?);
            continue;
        }
        let p = parse_expr(value_raw).map_err(|e| e.shifted(line - 1, value_col - 1))?;
        match canon {
            "f1" => potential.f1 = p,
            "f2" => potential.f2 = p,
            "fb1" => potential.fb1 = p,
            "fb2" => potential.fb2 = p,
            _ => gauge = Some(p),
        }
    }
    Ok(ProblemSpec { metric: metric.ok_or(LangError::MissingMetric)?, potential, gauge })
}

/// Renders a problem back into the file format.
pub fn render_problem(p: &ProblemSpec) -> String {
    let mut s = format!("metric = {}\n", p.metric.name());
    let w = &p.potential;
    for (k, f) in [("f1", &w.f1), ("f2", &w.f2), ("fb1", &w.fb1), ("fb2", &w.fb2)] {
        s.push_str(&format!("{k} = {f}\n"));
    }
    if let Some(u) = &p.gauge {
        s.push_str(&format!("gauge = {u}\n"));
    }
    s
}
