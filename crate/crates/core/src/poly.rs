//! Sparse multivariate polynomials over `Q`, monomial orders, the apolarity
//! pairing, a text format, and reduced Gröbner bases by Buchberger's
//! algorithm.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, fmt_rational, q, Rational};

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// Default cap on the degree of S-polynomials during Buchberger's algorithm.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// Default cap on the number of standard monomials enumerated.
pub const DEFAULT_MONOMIAL_CAP: usize = 100_000;

/// Environment variable that overrides [`DEFAULT_DEGREE_CAP`].
pub const DEGREE_CAP_ENV: &str = "ADDACT_DEGREE_CAP";

/// Degree cap from the environment, falling back to the default.
pub fn degree_cap_from_env() -> u32 {
    std::env::var(DEGREE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_DEGREE_CAP)
}

pub fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Admissible monomial orders. Variable 1 is the largest.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    GrLex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        degree(a).cmp(&degree(b)).then_with(|| match self {
            MonomialOrder::GrLex => a.cmp(b),
            MonomialOrder::GrevLex => {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        })
    }

    /// Order used to list monomial bases: ascending degree, and within one
    /// degree descending in `self`. Starts `1, x1, x2, ..., x1^2, ...`.
    pub fn basis_cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        degree(a).cmp(&degree(b)).then_with(|| self.cmp(b, a))
    }
}

/// All exponent vectors in `n` variables of total degree exactly `d`.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// All exponent vectors in `n` variables of degree at most `d`, in basis
/// order for `order`.
pub fn monomials_up_to(n: usize, d: u32, order: MonomialOrder) -> Vec<Exponent> {
    let mut out: Vec<Exponent> = (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect();
    out.sort_by(|a, b| order.basis_cmp(a, b));
    out
}

/// `e!` for a multi-index.
pub fn exponent_factorial(e: &[u32]) -> Rational {
    e.iter().map(|&k| factorial(k)).product()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exp(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_exp(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Sparse polynomial in a fixed number of variables. Coefficients are never
/// stored as zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(MonomialOrder::GrLex, &VarNames::indexed("x", 1, self.nvars)))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(MonomialOrder::GrLex, &VarNames::indexed("x", 1, self.nvars)))
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable with index `i` (zero based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(e: Exponent, c: Rational) -> Self {
        let nvars = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| degree(e) == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| degree(e));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Terms sorted descending in `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Exponent, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.cmp(b.0, a.0));
        t
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Exponent> {
        self.leading_term(order).map(|t| t.0)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    /// Multiplies by the monomial `c * x^e`.
    pub fn mul_term(&self, e: &[u32], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(f, a)| (f.iter().zip(e).map(|(x, y)| x + y).collect(), a * c))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps only the terms of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| degree(e) == k).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Drops the terms of total degree above `k`.
    pub fn truncate(&self, k: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| degree(e) <= k).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * q(e[i] as i64));
        }
        out
    }

    /// Applies `∂^a` for a multi-index `a`.
    pub fn derivative_multi(&self, a: &[u32]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if !divides(a, e) {
                continue;
            }
            let mut coef = c.clone();
            for (&k, &j) in e.iter().zip(a) {
                for t in 0..j {
                    coef *= q((k - t) as i64);
                }
            }
            out.add_term(sub_exp(e, a), coef);
        }
        out
    }

    /// Substitutes polynomial `images[i]` for variable `i`. All images must
    /// share one ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(p.nvars)]).collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Places the variables of `self` at positions `offset..offset+nvars` in
    /// a ring with `total` variables.
    pub fn embed(&self, total: usize, offset: usize) -> MultiPoly {
        assert!(offset + self.nvars <= total);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = vec![0; total];
            f[offset..offset + self.nvars].copy_from_slice(e);
            (f, c.clone())
        });
        MultiPoly::from_terms(total, terms)
    }

    /// Inverse of [`MultiPoly::embed`]; `None` if some term uses a variable
    /// outside the window.
    pub fn restrict(&self, offset: usize, nvars: usize) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(nvars);
        for (e, c) in &self.terms {
            let outside = e.iter().enumerate().any(|(i, &k)| k > 0 && (i < offset || i >= offset + nvars));
            if outside {
                return None;
            }
            out.add_term(e[offset..offset + nvars].to_vec(), c.clone());
        }
        Some(out)
    }

    /// Translate `x -> x + beta`.
    pub fn translate(&self, beta: &[Rational]) -> MultiPoly {
        assert_eq!(beta.len(), self.nvars);
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| &MultiPoly::var(self.nvars, i) + &MultiPoly::constant(self.nvars, beta[i].clone()))
            .collect();
        self.substitute(&images)
    }

    /// Polynomial in canonical text form, terms descending in `order`.
    pub fn to_text(&self, order: MonomialOrder, names: &VarNames) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = names.monomial(e);
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&a));
                out.push_str(" * ");
                out.push_str(&mono);
            }
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, order: MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term(e.iter().zip(f).map(|(x, y)| x + y).collect(), c * d);
            }
        }
        out
    }
}

/// Applies the constant-coefficient differential operator `g(∂)` to `f`.
pub fn apply_diffop(g: &MultiPoly, f: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(f.nvars);
    for (e, c) in &g.terms {
        out = &out + &f.derivative_multi(e).scale(c);
    }
    out
}

/// Apolarity pairing `<g|f> = g(∂) f` evaluated at the origin, so that
/// `<S^a|x^b>` is `a!` when `a = b` and 0 otherwise.
pub fn pairing(g: &MultiPoly, f: &MultiPoly) -> Rational {
    assert_eq!(g.nvars, f.nvars);
    let mut acc = Rational::zero();
    for (e, c) in &g.terms {
        if let Some(d) = f.terms.get(e) {
            acc += c * d * exponent_factorial(e);
        }
    }
    acc
}

/// Names for the variables of a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames {
    names: Vec<String>,
}

impl VarNames {
    pub fn new(names: Vec<String>) -> Self {
        VarNames { names }
    }

    /// Names `prefix{start}`, `prefix{start+1}`, ...
    pub fn indexed(prefix: &str, start: usize, n: usize) -> Self {
        VarNames { names: (0..n).map(|i| format!("{prefix}{}", i + start)).collect() }
    }

    /// Concatenation of two name lists.
    pub fn chain(&self, other: &VarNames) -> VarNames {
        VarNames { names: self.names.iter().chain(&other.names).cloned().collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// `x1^2*x3`, or the empty string for the unit monomial.
    pub fn monomial(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], k) })
            .collect();
        parts.join("*")
    }

    /// Resolves an identifier. Exact names win; otherwise, when all names
    /// share one alphabetic prefix, any identifier with the same numeric
    /// suffix matches, and a bare prefix matches a single variable.
    fn resolve(&self, ident: &str) -> Option<usize> {
        if let Some(i) = self.names.iter().position(|n| n == ident) {
            return Some(i);
        }
        let split = |s: &str| {
            let k = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
            (s[..k].to_string(), s[k..].to_string())
        };
        let prefixes: BTreeSet<String> = self.names.iter().map(|n| split(n).0).collect();
        if prefixes.len() != 1 {
            return None;
        }
        let (_, digits) = split(ident);
        if digits.is_empty() {
            return (self.names.len() == 1).then_some(0);
        }
        self.names.iter().position(|n| split(n).1 == digits)
    }
}

/// Parses a polynomial such as `x1^2 - 1/2 * x2 + 3*(x1 - x2)^2`.
pub fn parse_poly(s: &str, names: &VarNames) -> Result<MultiPoly> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0, names };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("unexpected trailing input in {s:?}")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(num_bigint::BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(text.parse().map_err(|_| Error::Parse(format!("bad number {text}")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a VarNames,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Parse("division by a non-constant or zero".into()));
                }
                acc = acc.scale(&d.constant_term().recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(k)) => {
                    self.pos += 1;
                    let k: u32 = k.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::Parse("expected a non-negative integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let n = self.names.len();
        match self.peek().cloned() {
            Some(Token::Num(k)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(n, Rational::from_integer(k)))
            }
            Some(Token::Ident(id)) => {
                self.pos += 1;
                let i = self.names.resolve(&id).ok_or_else(|| Error::Parse(format!("unknown variable {id:?}")))?;
                Ok(MultiPoly::var(n, i))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted descending by
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<MultiPoly>,
}

impl GroebnerBasis {
    /// Wraps polynomials that are already a reduced Gröbner basis, putting
    /// them in canonical form.
    pub fn from_reduced(nvars: usize, order: MonomialOrder, polys: Vec<MultiPoly>) -> Self {
        let mut polys: Vec<MultiPoly> = polys.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic(order)).collect();
        polys.sort_by(|a, b| order.cmp(b.leading_monomial(order).unwrap(), a.leading_monomial(order).unwrap()));
        GroebnerBasis { nvars, order, polys }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> Vec<&Exponent> {
        self.polys.iter().map(|p| p.leading_monomial(self.order).unwrap()).collect()
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        reduce_full(f, &self.polys, self.order)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// True when every variable has a pure power among the leading
    /// monomials, which is equivalent to finite codimension.
    pub fn has_finite_codimension(&self) -> bool {
        let lms = self.leading_monomials();
        (0..self.nvars).all(|i| lms.iter().any(|e| e.iter().enumerate().all(|(j, &k)| (j == i) == (k > 0))))
            || lms.iter().any(|e| degree(e) == 0)
    }

    /// Monomials not divisible by any leading monomial, in basis order.
    /// Fails when the quotient is infinite-dimensional or exceeds `cap`.
    pub fn standard_monomials(&self, cap: usize) -> Result<Vec<Exponent>> {
        if !self.has_finite_codimension() {
            return Err(Error::NotFiniteCodimension);
        }
        let lms: Vec<Exponent> = self.leading_monomials().into_iter().cloned().collect();
        let standard = |e: &Exponent| !lms.iter().any(|l| divides(l, e));
        let mut out = Vec::new();
        let mut frontier: BTreeSet<Exponent> = BTreeSet::new();
        let zero = vec![0; self.nvars];
        if standard(&zero) {
            frontier.insert(zero);
        }
        while !frontier.is_empty() {
            out.extend(frontier.iter().cloned());
            if out.len() > cap {
                return Err(Error::NotFiniteCodimension);
            }
            let mut next = BTreeSet::new();
            for e in &frontier {
                for i in 0..self.nvars {
                    let mut f = e.clone();
                    f[i] += 1;
                    if standard(&f) {
                        next.insert(f);
                    }
                }
            }
            frontier = next;
        }
        out.sort_by(|a, b| self.order.basis_cmp(a, b));
        Ok(out)
    }

    /// Polynomials in text form, one per generator.
    pub fn to_text(&self, names: &VarNames) -> Vec<String> {
        self.polys.iter().map(|p| p.to_text(self.order, names)).collect()
    }
}

/// Full reduction of `f` by `basis`; the remainder has no term divisible by
/// a leading monomial of the basis.
pub fn reduce_full(f: &MultiPoly, basis: &[MultiPoly], order: MonomialOrder) -> MultiPoly {
    let leads: Vec<(Exponent, Rational)> = basis
        .iter()
        .filter_map(|g| g.leading_term(order).map(|(e, c)| (e.clone(), c.clone())))
        .collect();
    let mut p = f.clone();
    let mut rem = MultiPoly::zero(f.nvars);
    while let Some((e, c)) = p.leading_term(order).map(|(e, c)| (e.clone(), c.clone())) {
        match leads.iter().position(|(l, _)| divides(l, &e)) {
            Some(i) => {
                let (l, lc) = &leads[i];
                let factor = &c / lc;
                p = &p - &basis[i].mul_term(&sub_exp(&e, l), &factor);
            }
            None => {
                p.terms.remove(&e);
                rem.add_term(e, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: MonomialOrder) -> MultiPoly {
    let (ef, cf) = f.leading_term(order).unwrap();
    let (eg, cg) = g.leading_term(order).unwrap();
    let l = lcm_exp(ef, eg);
    &f.mul_term(&sub_exp(&l, ef), &cf.recip()) - &g.mul_term(&sub_exp(&l, eg), &cg.recip())
}

/// Reduced Gröbner basis of the ideal generated by `gens`. Fails with
/// `DEGREE_BLOWUP` if an S-polynomial of degree above `degree_cap` is needed.
pub fn groebner(nvars: usize, gens: &[MultiPoly], order: MonomialOrder, degree_cap: u32) -> Result<GroebnerBasis> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens {
        assert_eq!(g.nvars, nvars, "generator in the wrong ring");
        if let Some(d) = g.total_degree() {
            if d > degree_cap {
                return Err(Error::DegreeBlowup { degree: d, cap: degree_cap });
            }
        }
        let r = reduce_full(g, &basis, order);
        if !r.is_zero() {
            basis.push(r.monic(order));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // Normal selection strategy: smallest lcm first.
        let lcm_of = |&(i, j): &(usize, usize)| {
            lcm_exp(basis[i].leading_monomial(order).unwrap(), basis[j].leading_monomial(order).unwrap())
        };
        let k = (0..pairs.len()).min_by(|&a, &b| order.cmp(&lcm_of(&pairs[a]), &lcm_of(&pairs[b]))).unwrap();
        let (i, j) = pairs.swap_remove(k);
        let li = basis[i].leading_monomial(order).unwrap().clone();
        let lj = basis[j].leading_monomial(order).unwrap().clone();
        let l = lcm_exp(&li, &lj);
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        if degree(&l) > degree_cap {
            return Err(Error::DegreeBlowup { degree: degree(&l), cap: degree_cap });
        }
        // Chain criterion: skip if some other element's lead divides the lcm
        // and both companion pairs were already treated.
        let pending = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|m| {
            m != i
                && m != j
                && divides(basis[m].leading_monomial(order).unwrap(), &l)
                && !pending(i, m)
                && !pending(j, m)
        });
        if chain {
            continue;
        }
        let r = reduce_full(&s_polynomial(&basis[i], &basis[j], order), &basis, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order);
        let n = basis.len();
        basis.push(r);
        for a in 0..n {
            pairs.push((a, n));
        }
    }
    Ok(GroebnerBasis::from_reduced(nvars, order, interreduce(basis, order)))
}

fn interreduce(basis: Vec<MultiPoly>, order: MonomialOrder) -> Vec<MultiPoly> {
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial(order).unwrap();
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            let lh = h.leading_monomial(order).unwrap();
            m != k && divides(lh, lg) && (lh != lg || m < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    (0..minimal.len())
        .map(|k| {
            let others: Vec<MultiPoly> =
                minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, h)| h.clone()).collect();
            reduce_full(&minimal[k], &others, order).monic(order)
        })
        .collect()
}
