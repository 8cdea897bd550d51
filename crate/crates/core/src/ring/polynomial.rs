//! Sparse multivariate polynomials over `Q`.
//!
//! Indeterminates are interned by name into a process-wide table, so any two
//! polynomials live in the same ring `Q[x_0, x_1, ...]`. Monomials are sparse
//! exponent vectors and terms are kept in graded lexicographic order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::iter::Peekable;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::{CharIndices, FromStr};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use thiserror::Error;

use super::{Rational, Ring};

#[derive(Default)]
struct Interner {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| RwLock::new(Interner::default()))
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An interned indeterminate.
///
/// Indices are dense and assigned in first-use order; they define the
/// variable order used by the monomial ordering.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u32);

impl Var {
    /// Interns `name`, which must be an identifier (`[A-Za-z_][A-Za-z0-9_]*`).
    ///
    /// # Panics
    ///
    /// Panics if `name` is not an identifier.
    pub fn named(name: &str) -> Var {
        assert!(is_identifier(name), "invalid indeterminate name {name:?}");
        if let Some(&i) = interner().read().unwrap().index.get(name) {
            return Var(i);
        }
        let mut table = interner().write().unwrap();
        if let Some(&i) = table.index.get(name) {
            return Var(i);
        }
        let i = table.names.len() as u32;
        table.names.push(name.to_string());
        table.index.insert(name.to_string(), i);
        Var(i)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn name(self) -> String {
        interner().read().unwrap().names[self.0 as usize].clone()
    }
}

/// A power product `x_{v1}^{e1} ... x_{vr}^{er}`: variables strictly
/// increasing, every exponent positive.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut rest = other.0.iter().peekable();
        for &(v, e) in &self.0 {
            match rest.peek() {
                Some(&&(w, f)) if w == v => {
                    rest.next();
                    match e.cmp(&f) {
                        Ordering::Less => return None,
                        Ordering::Equal => {}
                        Ordering::Greater => out.push((v, e - f)),
                    }
                }
                Some(&&(w, _)) if w < v => return None,
                _ => out.push((v, e)),
            }
        }
        if rest.next().is_some() {
            return None;
        }
        Some(Monomial(out))
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if va > vb {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// lowest-index variable decides.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with rational coefficients; no stored term is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn var(name: &str) -> Self {
        Self::monomial(Monomial::var(Var::named(name)), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// The value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&Monomial::one())
                .cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn scale_shift(&self, m: &Monomial, c: &Rational) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(Rational::from(c))
    }
}

impl<'a> Add<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: &'a Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m, c) in small.terms {
            big.add_term(m, c);
        }
        big
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'a> Sub<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: &'a Polynomial) -> Polynomial {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self - &rhs
    }
}

impl<'b> Mul<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'b Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        &self * rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Ring for Polynomial {
    fn zero() -> Self {
        Polynomial::default()
    }

    fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_rational(q: Rational) -> Self {
        Polynomial::constant(q)
    }

    /// Multivariate division by leading terms; succeeds iff `rhs` divides
    /// `self` exactly.
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        let (lm_d, lc_d) = rhs.leading_term()?;
        let (lm_d, inv_lc_d) = (lm_d.clone(), lc_d.recip()?);
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero();
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let m = lm_r.div(&lm_d)?;
            let c = lc_r * &inv_lc_d;
            rem = rem - rhs.scale_shift(&m, &c);
            quotient.add_term(m, c);
        }
        Some(quotient)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for (k, &(v, e)) in m.0.iter().enumerate() {
        if k > 0 {
            f.write_str(" * ")?;
        }
        f.write_str(&v.name())?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Textual form `c * v1^e1 * v2^e2 + ...`, highest monomial first. Unit
/// coefficients and unit exponents are omitted; zero prints as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag} * ")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at byte {position}: {message}")]
pub struct ParsePolynomialError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>, ParsePolynomialError> {
    fn take_while(
        it: &mut Peekable<CharIndices<'_>>,
        s: &str,
        start: usize,
        pred: impl Fn(char) -> bool,
    ) -> String {
        let mut end = start;
        while let Some(&(i, c)) = it.peek() {
            if !pred(c) {
                break;
            }
            end = i + c.len_utf8();
            it.next();
        }
        s[start..end].to_string()
    }

    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                it.next();
            }
            '+' | '-' | '*' | '/' | '^' => {
                it.next();
                let tok = match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    _ => Token::Caret,
                };
                out.push((pos, tok));
            }
            c if c.is_ascii_digit() => {
                let digits = take_while(&mut it, s, pos, |c| c.is_ascii_digit());
                out.push((pos, Token::Int(digits.parse().expect("digits"))));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let name = take_while(&mut it, s, pos, |c| c.is_ascii_alphanumeric() || c == '_');
                out.push((pos, Token::Ident(name)));
            }
            _ => {
                return Err(ParsePolynomialError {
                    position: pos,
                    message: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn error(&self, message: &str) -> ParsePolynomialError {
        ParsePolynomialError {
            position: self.tokens.get(self.pos).map_or(self.len, |(p, _)| *p),
            message: message.to_string(),
        }
    }

    fn expect_int(&mut self) -> Result<BigInt, ParsePolynomialError> {
        match self.peek() {
            Some(Token::Int(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected integer")),
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParsePolynomialError> {
        let mut coeff = Rational::one();
        let mut powers = Vec::new();
        loop {
            match self.peek().cloned() {
                Some(Token::Int(_)) => {
                    let num = self.expect_int()?;
                    let den = if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        self.expect_int()?
                    } else {
                        BigInt::from(1)
                    };
                    let q = Rational::from_bigints(num, den)
                        .ok_or_else(|| self.error("zero denominator"))?;
                    coeff = coeff * q;
                }
                Some(Token::Ident(name)) => {
                    self.pos += 1;
                    let exp = if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        let e = self.expect_int()?;
                        u32::try_from(e).map_err(|_| self.error("exponent too large"))?
                    } else {
                        1
                    };
                    powers.push((Var::named(&name), exp));
                }
                _ => return Err(self.error("expected coefficient or indeterminate")),
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_powers(powers), coeff))
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParsePolynomialError> {
        let mut out = Polynomial::zero();
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            negate = true;
            self.pos += 1;
        }
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negate { -c } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                Some(_) => return Err(self.error("expected '+' or '-'")),
            }
            self.pos += 1;
        }
    }
}

impl FromStr for Polynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            len: s.len(),
        };
        parser.polynomial()
    }
}
