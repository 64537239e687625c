use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_ratio::RBig;

use super::monomial::{Monomial, VarIndex};
use super::order::MonomialOrder;
use crate::{Error, Result};

/// Rational coefficient.
pub type Coefficient = RBig;

/// `coeff * mon` with `coeff != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coefficient,
    pub mon: Monomial,
}

impl Term {
    pub fn new(coeff: Coefficient, mon: Monomial) -> Term {
        Term { coeff, mon }
    }
}

/// Sparse polynomial with terms strictly descending in its monomial order.
///
/// The empty term list is the zero polynomial. Every polynomial carries its
/// order, so arithmetic between polynomials of different rings panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    order: MonomialOrder,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(order: MonomialOrder) -> Polynomial {
        Polynomial { order, terms: Vec::new() }
    }

    pub fn one(order: MonomialOrder) -> Polynomial {
        Polynomial::constant(order, Coefficient::ONE)
    }

    pub fn constant(order: MonomialOrder, c: Coefficient) -> Polynomial {
        Polynomial::term(order, c, Monomial::one(order.nvars()))
    }

    pub fn term(order: MonomialOrder, coeff: Coefficient, mon: Monomial) -> Polynomial {
        assert_eq!(mon.nvars(), order.nvars(), "dimension mismatch");
        if coeff.is_zero() {
            return Polynomial::zero(order);
        }
        Polynomial { order, terms: vec![Term { coeff, mon }] }
    }

    pub fn var(order: MonomialOrder, var: VarIndex) -> Polynomial {
        Polynomial::term(order, Coefficient::ONE, Monomial::var(order.nvars(), var))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges equal monomials
    /// and drops zero coefficients.
    pub fn from_terms<I>(order: MonomialOrder, terms: I) -> Result<Polynomial>
    where
        I: IntoIterator<Item = (Coefficient, Monomial)>,
    {
        let mut raw: Vec<Term> = Vec::new();
        for (coeff, mon) in terms {
            if mon.nvars() != order.nvars() {
                return Err(Error::DimensionMismatch { expected: order.nvars(), found: mon.nvars() });
            }
            raw.push(Term { coeff, mon });
        }
        raw.sort_by(|a, b| order.compare(&b.mon, &a.mon));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.mon == t.mon => last.coeff += t.coeff,
                _ => terms.push(t),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        Ok(Polynomial { order, terms })
    }

    /// Integer-coefficient convenience constructor, mostly for tests.
    pub fn from_int_terms(order: MonomialOrder, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(order, terms.iter().map(|(c, e)| (Coefficient::from(*c), Monomial::from_exponents(e))))
            .expect("dimension mismatch")
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
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

    /// Nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mon.is_one()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mon)
    }

    pub fn leading_coeff(&self) -> Option<&Coefficient> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// `lm(f)`; panics on zero.
    pub fn lm(&self) -> &Monomial {
        self.leading_monomial().expect("leading monomial of the zero polynomial")
    }

    pub fn try_lm(&self) -> Result<&Monomial> {
        self.leading_monomial().ok_or(Error::ZeroOperand)
    }

    pub fn try_leading_term(&self) -> Result<&Term> {
        self.leading_term().ok_or(Error::ZeroOperand)
    }

    /// Total degree of the leading monomial (the maximal degree for a
    /// degree-compatible order).
    pub fn degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::total_degree)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(RBig::is_one)
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn make_monic(mut self) -> Polynomial {
        if let Some(lc) = self.leading_coeff().cloned() {
            if !lc.is_one() {
                let inv = RBig::ONE / lc;
                for t in &mut self.terms {
                    t.coeff *= &inv;
                }
            }
        }
        self
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.order);
        }
        let terms = self.terms.iter().map(|t| Term { coeff: &t.coeff * c, mon: t.mon.clone() }).collect();
        Polynomial { order: self.order, terms }
    }

    /// `self * coeff * mon`. Multiplication by a monomial preserves the term order.
    pub fn mul_by_term(&self, coeff: &Coefficient, mon: &Monomial) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero(self.order);
        }
        let terms = self.terms.iter().map(|t| Term { coeff: &t.coeff * coeff, mon: t.mon.mul(mon) }).collect();
        Polynomial { order: self.order, terms }
    }

    pub fn mul_monomial(&self, mon: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff.clone(), mon: t.mon.mul(mon) }).collect();
        Polynomial { order: self.order, terms }
    }

    pub fn mul_var(&self, var: VarIndex) -> Polynomial {
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff.clone(), mon: t.mon.mul_var(var) }).collect();
        Polynomial { order: self.order, terms }
    }

    /// The same polynomial viewed under another order on the same variables.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        assert_eq!(order.nvars(), self.nvars(), "order has a different number of variables");
        Polynomial::from_terms(order, self.terms.iter().map(|t| (t.coeff.clone(), t.mon.clone())))
            .expect("dimension checked")
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> Polynomial {
        Polynomial { order: self.order, terms: self.terms.iter().skip(1).cloned().collect() }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.order);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn check_same_ring(&self, other: &Polynomial) {
        assert_eq!(self.order, other.order, "polynomials from different rings");
    }

    /// `self[start..] -= coeff * shift * f`.
    ///
    /// Terms before `start` must be strictly greater than every term of
    /// `shift * f`; they are left untouched. This is the elementary reduction
    /// step, restricted to the part of the polynomial it can affect.
    pub(crate) fn sub_scaled_from(&mut self, start: usize, coeff: &Coefficient, shift: &Monomial, f: &Polynomial) {
        self.check_same_ring(f);
        let order = self.order;
        let suffix = self.terms.split_off(start);
        let mut merged = Vec::with_capacity(suffix.len() + f.terms.len());
        let mut a = suffix.into_iter().peekable();
        let mut b = f.terms.iter().map(|t| (t, t.mon.mul(shift))).peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some((_, m))) => order.compare(&x.mon, m),
            };
            match step {
                Ordering::Greater => merged.push(a.next().unwrap()),
                Ordering::Less => {
                    let (t, mon) = b.next().unwrap();
                    merged.push(Term { coeff: -(&t.coeff * coeff), mon });
                }
                Ordering::Equal => {
                    let mut x = a.next().unwrap();
                    let (t, _) = b.next().unwrap();
                    x.coeff -= &t.coeff * coeff;
                    if !x.coeff.is_zero() {
                        merged.push(x);
                    }
                }
            }
        }
        self.terms.extend(merged);
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        self.check_same_ring(other);
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Coefficient| if negate_other { -c } else { c.clone() };
        while i < self.terms.len() || j < other.terms.len() {
            let step = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                order.compare(&self.terms[i].mon, &other.terms[j].mon)
            };
            match step {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let t = &other.terms[j];
                    out.push(Term { coeff: sign(&t.coeff), mon: t.mon.clone() });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].coeff + sign(&other.terms[j].coeff);
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mon: self.terms[i].mon.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { order, terms: out }
    }

    /// Writes the polynomial with the given variable names, e.g.
    /// `x^2 - 1/2*y + 3`.
    pub fn fmt_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let negative = t.coeff < RBig::ZERO;
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = if negative { -&t.coeff } else { t.coeff.clone() };
            let mut need_star = false;
            if !abs.is_one() || t.mon.is_one() {
                write!(f, "{abs}")?;
                need_star = true;
            }
            for (i, &e) in t.mon.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if need_star {
                    f.write_str("*")?;
                }
                need_star = true;
                f.write_str(&names[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.fmt_with(names, &mut s).expect("writing to a String cannot fail");
        s
    }
}

/// Integer coefficient.
pub fn integer(n: i64) -> Coefficient {
    Coefficient::from(n)
}

/// Default names `x1, ..., xn`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(&default_names(self.nvars()), f)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Coefficient::ONE)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_same_ring(rhs);
        rhs.terms.iter().fold(Polynomial::zero(self.order), |acc, t| acc.add(&self.mul_by_term(&t.coeff, &t.mon)))
    }
}
