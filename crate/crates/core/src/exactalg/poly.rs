//! Multivariate polynomials with exact coefficients and their text format.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::field::{Field, Scalar};
use crate::exactalg::monomial::Monomial;
use crate::varset::MAX_VARS;

/// A polynomial ring `k[x_1, ..., x_n]` with named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: Field,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], field: Field) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        if vars.len() > MAX_VARS {
            return Err(Error::guard("variable count", MAX_VARS as u128, vars.len() as u128));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::Parse(format!("invalid variable name '{v}'")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Parse(format!("duplicate variable '{v}'")));
            }
        }
        Ok(Arc::new(Ring { vars, field }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Subring on the variables at `positions`, keeping their order.
    pub fn subring(&self, positions: &[usize]) -> Arc<Ring> {
        Arc::new(Ring {
            vars: positions.iter().map(|&i| self.vars[i].clone()).collect(),
            field: self.field,
        })
    }

    pub fn with_field(&self, field: Field) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            field,
        })
    }
}

pub(crate) fn check_same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    if a.vars != b.vars {
        return Err(Error::RingMismatch(format!(
            "[{}] vs [{}]",
            a.vars.join(","),
            b.vars.join(",")
        )));
    }
    Ok(())
}

/// Sparse map from monomials to nonzero coefficients.
pub type Terms = BTreeMap<Monomial, Scalar>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Terms,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Terms::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial) -> Self {
        Self::term(ring, m, ring.field().one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i))
    }

    /// Builds a linear form `sum_j coeffs[j] * x_j`.
    pub fn linear(ring: &Arc<Ring>, coeffs: &[Scalar]) -> Self {
        let n = ring.nvars();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (Monomial::var(n, j), c.clone()))
            .collect();
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: Terms) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field().zero())
    }

    /// Coefficient of `x_j` (meaningful for linear forms).
    pub fn linear_coeff(&self, j: usize) -> Scalar {
        self.coeff(&Monomial::var(self.ring.nvars(), j))
    }

    /// Coefficient vector of a linear form.
    pub fn linear_coeffs(&self) -> Vec<Scalar> {
        (0..self.ring.nvars()).map(|j| self.linear_coeff(j)).collect()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has degree `d`; `None` for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut terms = self.terms.clone();
        add_into(&mut terms, &other.terms, None);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Terms::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                accumulate(&mut terms, m, c);
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, self.ring.field().one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Re-labels the polynomial into another ring with the same variable
    /// count and field.
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() || ring.field() != self.ring.field() {
            return Err(Error::RingMismatch("cannot relabel across ring shapes".into()));
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Parses the text format `3*x^2*y - 1/2*z^3`.
    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Polynomial> {
        Parser::new(ring, s).parse()
    }
}

fn accumulate(terms: &mut Terms, m: Monomial, c: Scalar) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// `acc += scale * other`, where `scale = None` means 1.
pub(crate) fn add_into(acc: &mut Terms, other: &Terms, scale: Option<&Scalar>) {
    for (m, c) in other {
        let c = match scale {
            Some(s) => c * s,
            None => c.clone(),
        };
        accumulate(acc, m.clone(), c);
    }
}

impl fmt::Display for Polynomial {
    /// Terms in descending graded-lex order; unit coefficients are omitted
    /// except on the constant term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.format(vars))?;
            } else {
                write!(f, "{abs}*{}", m.format(vars))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Arc<Ring>, src: &'a str) -> Self {
        Parser {
            ring,
            src,
            toks: Vec::new(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in '{}'", self.src))
    }

    fn lex(&mut self) -> Result<()> {
        let b = self.src.as_bytes();
        let mut i = 0;
        while i < b.len() {
            let c = b[i] as char;
            match c {
                ' ' | '\t' | '\n' => i += 1,
                '+' => {
                    self.toks.push(Tok::Plus);
                    i += 1
                }
                '-' => {
                    self.toks.push(Tok::Minus);
                    i += 1
                }
                '*' => {
                    self.toks.push(Tok::Star);
                    i += 1
                }
                '^' => {
                    self.toks.push(Tok::Caret);
                    i += 1
                }
                '/' => {
                    self.toks.push(Tok::Slash);
                    i += 1
                }
                '0'..='9' => {
                    let s = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    self.toks.push(Tok::Num(self.src[s..i].to_string()));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let s = i;
                    while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                        i += 1;
                    }
                    self.toks.push(Tok::Ident(self.src[s..i].to_string()));
                }
                _ => return Err(self.err(&format!("unexpected character '{c}'"))),
            }
        }
        Ok(())
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn parse(mut self) -> Result<Polynomial> {
        self.lex()?;
        if self.toks.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let field = self.ring.field();
        let mut terms = Terms::new();
        let mut first = true;
        while self.peek().is_some() {
            let mut sign = field.one();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                }
                Some(Tok::Minus) => {
                    self.next();
                    sign = -&sign;
                }
                _ if !first => return Err(self.err("expected '+' or '-'")),
                _ => {}
            }
            first = false;
            let (m, c) = self.term()?;
            accumulate(&mut terms, m, &c * &sign);
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let n = self.ring.nvars();
        let field = self.ring.field();
        let mut exps = vec![0u32; n];
        let mut coeff = field.one();
        loop {
            match self.next() {
                Some(Tok::Num(num)) => {
                    let lit = if self.peek() == Some(&Tok::Slash) {
                        self.next();
                        match self.next() {
                            Some(Tok::Num(den)) => format!("{num}/{den}"),
                            _ => return Err(self.err("expected denominator")),
                        }
                    } else {
                        num
                    };
                    let c = field.parse_scalar(&lit)?;
                    coeff = &coeff * &c;
                }
                Some(Tok::Ident(name)) => {
                    let i = self
                        .ring
                        .var_index(&name)
                        .ok_or_else(|| self.err(&format!("unknown variable '{name}'")))?;
                    let mut e = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.next();
                        match self.next() {
                            Some(Tok::Num(d)) => {
                                e = d.parse().map_err(|_| self.err("bad exponent"))?;
                            }
                            _ => return Err(self.err("expected exponent")),
                        }
                    }
                    exps[i] += e;
                }
                _ => return Err(self.err("expected a factor")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.next();
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }
}
