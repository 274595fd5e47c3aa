//! Sparse bivariate polynomials over a [`Field`], weighted monomial orders
//! and the 1-/2-form calculus built on top of them.

mod forms;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Field, Scalar, ScalarError};

pub use forms::{OneForm, TwoForm};
pub use parse::{parse_poly, parse_univariate, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operation needs a nonzero polynomial")]
    ZeroInput,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("generator needs a numeric embedding")]
    MissingEmbedding,
    #[error("weights must be positive integers")]
    InvalidWeights,
}

impl From<ScalarError> for PolyError {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::MissingEmbedding => PolyError::MissingEmbedding,
            _ => PolyError::FieldMismatch,
        }
    }
}

/// `x^x * y^y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn total_degree(self) -> u32 {
        self.x + self.y
    }

    pub fn weighted_degree(self, w: Weights) -> u32 {
        self.x
            .checked_mul(w.x)
            .and_then(|a| self.y.checked_mul(w.y).and_then(|b| a.checked_add(b)))
            .expect("weighted degree overflow")
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient(self, other: Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            x: other.x - self.x,
            y: other.y - self.y,
        }
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial {
            x: self.x.max(other.x),
            y: self.y.max(other.y),
        }
    }

    pub fn is_coprime(self, other: Monomial) -> bool {
        (self.x == 0 || other.x == 0) && (self.y == 0 || other.y == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("x", self.x), ("y", self.y)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Weights `deg(x) = x`, `deg(y) = y` of the graded ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weights {
    pub x: u32,
    pub y: u32,
}

impl Default for Weights {
    fn default() -> Self {
        Weights { x: 1, y: 1 }
    }
}

impl Weights {
    pub fn new(x: u32, y: u32) -> Result<Self, PolyError> {
        if x == 0 || y == 0 {
            return Err(PolyError::InvalidWeights);
        }
        Ok(Weights { x, y })
    }

    pub fn sum(self) -> u32 {
        self.x + self.y
    }
}

/// Weighted degree first, ties broken reverse-lexicographically with x > y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MonomialOrder {
    pub weights: Weights,
}

impl MonomialOrder {
    pub fn new(weights: Weights) -> Self {
        MonomialOrder { weights }
    }

    pub fn cmp(&self, a: Monomial, b: Monomial) -> Ordering {
        a.weighted_degree(self.weights)
            .cmp(&b.weighted_degree(self.weights))
            // in two variables reverse-lex on equal degree means a smaller
            // y-exponent wins, i.e. a larger x-exponent
            .then_with(|| b.y.cmp(&a.y))
            .then_with(|| a.x.cmp(&b.x))
    }
}

/// Sparse polynomial in x, y. No zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
    field: Field,
}

impl Polynomial {
    pub fn zero(field: &Field) -> Self {
        Polynomial {
            terms: BTreeMap::new(),
            field: field.clone(),
        }
    }

    pub fn constant(c: Scalar, field: &Field) -> Self {
        Self::monomial(Monomial::ONE, c, field)
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(Scalar::one(), field)
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(Monomial::new(1, 0), Scalar::one(), field)
    }

    pub fn y(field: &Field) -> Self {
        Self::monomial(Monomial::new(0, 1), Scalar::one(), field)
    }

    pub fn monomial(m: Monomial, c: Scalar, field: &Field) -> Self {
        let mut p = Self::zero(field);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(terms: I, field: &Field) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some(f) = c.field() {
            self.field = self.field.join(f).expect("coefficient field mismatch");
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Same polynomial viewed over `field` (which must contain its coefficients).
    pub fn with_field(mut self, field: &Field) -> Result<Self, PolyError> {
        self.field = self.field.join(field)?;
        Ok(self)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &Scalar)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.coeff(Monomial::ONE))
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        let field = self.field.join(&other.field)?;
        let mut out = self.clone();
        out.field = field;
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        let field = self.field.join(&other.field)?;
        let mut out = Polynomial::zero(&field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(*ma * *mb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut field = self.field.clone();
        if let Some(f) = c.field() {
            field = field.join(f).expect("coefficient field mismatch");
        }
        let mut out = Polynomial::zero(&field);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn mul_term(&self, m: Monomial, c: &Scalar) -> Polynomial {
        let mut out = self.scale(c);
        out.terms = out.terms.into_iter().map(|(k, v)| (k * m, v)).collect();
        out
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn diff_x(&self) -> Polynomial {
        let mut out = Polynomial::zero(&self.field);
        for (m, c) in &self.terms {
            if m.x > 0 {
                out.add_term(Monomial::new(m.x - 1, m.y), c * &Scalar::from_int(m.x as i64));
            }
        }
        out
    }

    pub fn diff_y(&self) -> Polynomial {
        let mut out = Polynomial::zero(&self.field);
        for (m, c) in &self.terms {
            if m.y > 0 {
                out.add_term(Monomial::new(m.x, m.y - 1), c * &Scalar::from_int(m.y as i64));
            }
        }
        out
    }

    /// Maximal weighted degree of a term; `None` stands for −∞ (zero polynomial).
    pub fn weighted_degree(&self, w: Weights) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.weighted_degree(Weights::default())
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y).max()
    }

    /// Sum of the terms of maximal weighted degree.
    pub fn leading_form(&self, w: Weights) -> Result<Polynomial, PolyError> {
        let d = self.weighted_degree(w).ok_or(PolyError::ZeroInput)?;
        Ok(self.weighted_part(w, d))
    }

    /// Sum of the terms of weighted degree exactly `d`.
    pub fn weighted_part(&self, w: Weights, d: u32) -> Polynomial {
        Polynomial::from_terms(
            self.terms()
                .filter(|(m, _)| m.weighted_degree(w) == d)
                .map(|(m, c)| (m, c.clone())),
            &self.field,
        )
    }

    /// Degree when every term has the same weighted degree.
    pub fn homogeneous_degree(&self, w: Weights) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(w));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(Monomial, &Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(*a.0, *b.0))
            .map(|(m, c)| (*m, c))
    }

    /// Coefficient of `y^k`, as a polynomial in x.
    pub fn coeff_in_y(&self, k: u32) -> Polynomial {
        Polynomial::from_terms(
            self.terms()
                .filter(|(m, _)| m.y == k)
                .map(|(m, c)| (Monomial::new(m.x, 0), c.clone())),
            &self.field,
        )
    }

    /// Substitutes `x ↦ sx`, `y ↦ sy`.
    pub fn compose(&self, sx: &Polynomial, sy: &Polynomial) -> Polynomial {
        let field = self
            .field
            .join(sx.field())
            .and_then(|f| f.join(sy.field()))
            .expect("field mismatch in substitution");
        let mut out = Polynomial::zero(&field);
        let mut xpows: Vec<Polynomial> = vec![Polynomial::one(&field)];
        let mut ypows: Vec<Polynomial> = vec![Polynomial::one(&field)];
        for (m, c) in &self.terms {
            while xpows.len() <= m.x as usize {
                let next = xpows.last().unwrap() * sx;
                xpows.push(next);
            }
            while ypows.len() <= m.y as usize {
                let next = ypows.last().unwrap() * sy;
                ypows.push(next);
            }
            let t = (&xpows[m.x as usize] * &ypows[m.y as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    /// Floating-point evaluation; used for plotting only.
    pub fn eval_float(&self, x: f64, y: f64, embedding: Option<f64>) -> Result<f64, PolyError> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let v = c.to_f64(embedding)?;
            acc += v * x.powi(m.x as i32) * y.powi(m.y as i32);
        }
        Ok(acc)
    }

    /// Multivariate division by a single nonzero polynomial under `order`.
    /// The remainder is zero iff `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Polynomial, order: &MonomialOrder) -> (Polynomial, Polynomial) {
        let (lm, lc) = divisor.leading_term(order).expect("division by zero polynomial");
        let lc_inv = lc.inverse().expect("nonzero leading coefficient");
        let field = self.field.join(divisor.field()).expect("field mismatch");
        let mut quotient = Polynomial::zero(&field);
        let mut remainder = Polynomial::zero(&field);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term(order) {
            let c = c.clone();
            if lm.divides(m) {
                let qm = lm.quotient(m);
                let qc = &c * &lc_inv;
                p = &p - &divisor.mul_term(qm, &qc);
                quotient.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
        (quotient, remainder)
    }

    /// Exact quotient when `divisor` divides `self`.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor, &MonomialOrder::default());
        r.is_zero().then_some(q)
    }

    /// Terms in canonical print order (graded, then larger x-exponent first).
    pub fn sorted_terms(&self) -> Vec<(Monomial, &Scalar)> {
        let order = MonomialOrder::default();
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial field mismatch")
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(&-rhs).expect("polynomial field mismatch")
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial field mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            field: self.field.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_poly(self))
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            x: self.x.checked_add(other.x).expect("exponent overflow"),
            y: self.y.checked_add(other.y).expect("exponent overflow"),
        }
    }
}
