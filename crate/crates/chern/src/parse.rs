//! Polynomial expressions and job documents.
//!
//! Grammar (whitespace insignificant, `*` optional between factors):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := INT | VAR ('^' NAT)? | '(' expr ')' | '-' factor
//! ```
//!
//! Exponents must be bare naturals: `x^(2)` is a syntax error. All
//! arithmetic is exact; there are no floating-point literals.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::filtration::{Filtration, FiltrationKind};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{PresentedRing, RingIdeal};

pub const DEFAULT_CHAR: u64 = 32003;
pub const DEFAULT_MAX_N: i64 = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    /// Index into the declared variable list.
    Var(usize),
    Pow(usize, u16),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpr {
    pub source: String,
    pub ast: Expr,
    pub nvars: usize,
}

impl PolyExpr {
    pub fn to_polynomial(&self, field: PrimeField) -> Result<Polynomial> {
        eval(&self.ast, field, self.nvars)
    }
}

fn eval(e: &Expr, field: PrimeField, nvars: usize) -> Result<Polynomial> {
    Ok(match e {
        Expr::Int(c) => Polynomial::constant(field, nvars, *c),
        Expr::Var(i) => Polynomial::monomial(field, Monomial::var(nvars, *i), 1),
        Expr::Pow(i, n) => {
            Polynomial::monomial(field, Monomial::var(nvars, *i).pow(*n)?, 1)
        }
        Expr::Neg(a) => eval(a, field, nvars)?.neg(),
        Expr::Add(a, b) => eval(a, field, nvars)?.add(&eval(b, field, nvars)?)?,
        Expr::Sub(a, b) => eval(a, field, nvars)?.sub(&eval(b, field, nvars)?)?,
        Expr::Mul(a, b) => eval(a, field, nvars)?.mul(&eval(b, field, nvars)?)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                toks.push((pos, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((pos, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((pos, Tok::Star));
                i += 1;
            }
            '^' => {
                toks.push((pos, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((pos, Tok::RParen));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let mut v: i64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] as u8 - b'0') as i64))
                        .ok_or(Error::Syntax {
                            pos,
                            expected: "integer literal within i64 range".into(),
                        })?;
                    i += 1;
                }
                toks.push((pos, Tok::Int(v)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                toks.push((pos, Tok::Ident(bytes[start..i].iter().collect())));
            }
            _ => {
                return Err(Error::Syntax { pos, expected: "polynomial token".into() });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    i: usize,
    vars: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(_, t)| t.clone());
        self.i += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                // Juxtaposition: a following INT, VAR or '(' starts a new
                // factor; a bare '-' does not (it separates terms).
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(Expr::Int(v)),
            Some(Tok::Ident(name)) => {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or(Error::UnknownVariable(name))?;
                if self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    let epos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(e)) if e >= 0 => {
                            let e = u16::try_from(e).map_err(|_| Error::ExponentOverflow)?;
                            Ok(Expr::Pow(idx, e))
                        }
                        _ => Err(Error::Syntax {
                            pos: epos,
                            expected: "bare natural number exponent".into(),
                        }),
                    }
                } else {
                    Ok(Expr::Var(idx))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Syntax { pos: self.end, expected: "`)`".into() }),
                }
            }
            Some(Tok::Minus) => Ok(Expr::Neg(Box::new(self.factor()?))),
            _ => Err(Error::Syntax { pos, expected: "integer, variable, `(` or `-`".into() }),
        }
    }
}

pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<PolyExpr> {
    if text.trim().is_empty() {
        return Err(Error::Syntax { pos: 0, expected: "nonempty expression".into() });
    }
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, i: 0, vars, end: text.chars().count() };
    let ast = p.expr()?;
    if p.i < toks.len() {
        return Err(Error::Syntax { pos: p.pos(), expected: "end of expression".into() });
    }
    Ok(PolyExpr { source: text.to_string(), ast, nvars: vars.len() })
}

/// Parse and evaluate in one step.
pub fn parse_poly(text: &str, vars: &[String], field: PrimeField) -> Result<Polynomial> {
    parse_polynomial(text, vars)?.to_polynomial(field)
}

// ---------------------------------------------------------------------------
// Job documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    #[serde(rename = "char")]
    pub characteristic: u64,
}

/// The raw JSON shape of a job file. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSection>,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quotient: Vec<String>,
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<i64>,
}

/// A validated job: defaults applied, all polynomials parsed, closure
/// constraints checked.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub doc: JobDoc,
    pub field: PrimeField,
    pub vars: Vec<String>,
    pub quotient: Vec<Polynomial>,
    pub ideal: Vec<Polynomial>,
    pub kind: FiltrationKind,
    pub reduction: Option<Vec<Polynomial>>,
    pub seed: u64,
    pub max_n: i64,
}

pub fn parse_job(document: &[u8]) -> Result<JobSpec> {
    let doc: JobDoc = serde_json::from_slice(document)
        .map_err(|e| Error::MalformedDocument(e.to_string()))?;
    validate_job(doc)
}

pub fn validate_job(doc: JobDoc) -> Result<JobSpec> {
    let characteristic = doc.field.as_ref().map(|f| f.characteristic).unwrap_or(DEFAULT_CHAR);
    let field = PrimeField::new(characteristic)
        .map_err(|_| Error::InvalidField(format!("characteristic {characteristic} is not prime")))?;
    if doc.vars.is_empty() {
        return Err(Error::InvalidField("vars must be nonempty".into()));
    }
    for (i, v) in doc.vars.iter().enumerate() {
        if doc.vars[..i].contains(v) {
            return Err(Error::InvalidField(format!("duplicate variable `{v}`")));
        }
    }
    if doc.ideal.is_empty() {
        return Err(Error::InvalidField("ideal must be nonempty".into()));
    }
    let parse_all = |texts: &[String]| -> Result<Vec<Polynomial>> {
        texts.iter().map(|t| parse_poly(t, &doc.vars, field)).collect()
    };
    let quotient = parse_all(&doc.quotient)?;
    let ideal = parse_all(&doc.ideal)?;
    let reduction = doc.reduction.as_ref().map(|r| parse_all(r)).transpose()?;
    let kind = match doc.filtration.as_deref() {
        None | Some("adic") => FiltrationKind::Adic,
        Some("newton-closure") => FiltrationKind::NewtonClosure,
        Some(other) => {
            return Err(Error::InvalidField(format!("unknown filtration kind `{other}`")))
        }
    };
    if kind == FiltrationKind::NewtonClosure {
        if !quotient.is_empty() {
            return Err(Error::ClosureUnsupported("quotient must be empty".into()));
        }
        if doc.vars.len() != 2 {
            return Err(Error::ClosureUnsupported("exactly 2 variables required".into()));
        }
        if ideal.iter().any(|g| !g.is_monomial()) {
            return Err(Error::ClosureUnsupported("all generators must be monomials".into()));
        }
    }
    let seed = doc.seed.unwrap_or(0);
    let max_n = doc.max_n.unwrap_or(DEFAULT_MAX_N);
    if max_n < 1 {
        return Err(Error::InvalidField("max_n must be positive".into()));
    }
    let vars = doc.vars.clone();
    Ok(JobSpec { doc, field, vars, quotient, ideal, kind, reduction, seed, max_n })
}

impl JobSpec {
    pub fn ring(&self) -> Result<Arc<PresentedRing>> {
        PresentedRing::new(self.field, self.vars.clone(), self.quotient.clone())
    }

    pub fn filtration(&self) -> Result<Arc<Filtration>> {
        let ring = self.ring()?;
        let seed_ideal = RingIdeal::from_gens(ring, self.ideal.clone());
        match self.kind {
            FiltrationKind::Adic => Filtration::adic(seed_ideal),
            FiltrationKind::NewtonClosure => Filtration::newton_closure(seed_ideal),
        }
    }
}
