//! Janet head and full normal forms, ordinary multivariate division and Janet
//! autoreduction.
//!
//! All reductions scan terms in descending order. An elementary step at the
//! term `a*u`, with Janet divisor `lm(f) * w = u`, replaces `p` by
//! `p - a * w * f`; basis elements are monic, so no division by `lc(f)` is
//! needed. Only terms at or after the reduced position can change, so the
//! scan resumes there.

use std::cmp::Ordering;

use crate::division::JanetTree;
use crate::poly::{Monomial, MonomialOrder, Polynomial, VarSet};
use crate::{Error, Result};

/// Elementary reduction counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionSteps {
    /// Steps that eliminated the current leading term.
    pub head: u64,
    /// Steps that eliminated a non-leading term.
    pub tail: u64,
}

/// A set of monic polynomials with distinct leading monomials, indexed by a
/// Janet tree over those leading monomials.
///
/// Elements are addressed by stable handles that survive removal of other
/// elements.
#[derive(Clone, Debug)]
pub struct ReductionContext {
    order: MonomialOrder,
    slots: Vec<Option<Polynomial>>,
    free: Vec<usize>,
    tree: JanetTree<usize>,
}

impl ReductionContext {
    pub fn new(order: MonomialOrder) -> ReductionContext {
        ReductionContext { order, slots: Vec::new(), free: Vec::new(), tree: JanetTree::new(order.nvars()) }
    }

    /// Builds a context from polynomials with pairwise distinct leading
    /// monomials. Elements are made monic.
    pub fn from_polys<I: IntoIterator<Item = Polynomial>>(order: MonomialOrder, polys: I) -> Result<ReductionContext> {
        let mut ctx = ReductionContext::new(order);
        for p in polys {
            ctx.insert(p)?;
        }
        Ok(ctx)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn tree(&self) -> &JanetTree<usize> {
        &self.tree
    }

    /// Inserts `p` (made monic) and returns its handle.
    pub fn insert(&mut self, p: Polynomial) -> Result<usize> {
        if p.order() != self.order {
            return Err(Error::DimensionMismatch { expected: self.order.nvars(), found: p.nvars() });
        }
        let lm = p.try_lm().map_err(|_| Error::ZeroPolynomial)?.clone();
        let handle = self.free.last().copied().unwrap_or(self.slots.len());
        self.tree.insert(lm, handle)?;
        let p = p.make_monic();
        match self.free.pop() {
            Some(h) => self.slots[h] = Some(p),
            None => self.slots.push(Some(p)),
        }
        Ok(handle)
    }

    /// Removes the element behind `handle`.
    pub fn remove(&mut self, handle: usize) -> Polynomial {
        let p = self.slots[handle].take().expect("stale handle");
        self.tree.remove(p.lm()).expect("index out of sync");
        self.free.push(handle);
        p
    }

    pub fn get(&self, handle: usize) -> &Polynomial {
        self.slots[handle].as_ref().expect("stale handle")
    }

    /// Live `(handle, polynomial)` pairs in handle order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.slots.iter().enumerate().filter_map(|(h, p)| p.as_ref().map(|p| (h, p)))
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn handle_of(&self, lm: &Monomial) -> Option<usize> {
        self.tree.get(lm).copied()
    }

    /// Element whose leading monomial Janet-divides `v`.
    pub fn janet_divisor(&self, v: &Monomial) -> Option<(usize, &Polynomial)> {
        self.tree.janet_divisor(v).map(|(_, &h)| (h, self.get(h)))
    }

    pub fn non_multiplicative(&self, handle: usize) -> VarSet {
        self.tree.non_multiplicative(self.get(handle).lm()).expect("index out of sync")
    }

    /// Janet head normal form, counting steps into `steps`.
    pub fn head_normal_form(&self, mut p: Polynomial, steps: &mut ReductionSteps) -> Polynomial {
        while let Some(lt) = p.leading_term() {
            let Some((_, f)) = self.janet_divisor(&lt.mon) else {
                break;
            };
            let shift = lt.mon.quotient(f.lm()).expect("Janet divisor must divide");
            let coeff = lt.coeff.clone();
            p.sub_scaled_from(0, &coeff, &shift, f);
            steps.head += 1;
        }
        p
    }

    /// Janet (full) normal form, counting steps into `steps`.
    pub fn normal_form(&self, p: Polynomial, steps: &mut ReductionSteps) -> Polynomial {
        self.normal_form_from(p, 0, steps)
    }

    /// Full normal form that leaves the first `start` terms alone.
    pub fn normal_form_from(&self, mut p: Polynomial, start: usize, steps: &mut ReductionSteps) -> Polynomial {
        let mut pos = start;
        while pos < p.len() {
            let term = &p.terms()[pos];
            match self.janet_divisor(&term.mon) {
                Some((_, f)) => {
                    let shift = term.mon.quotient(f.lm()).expect("Janet divisor must divide");
                    let coeff = term.coeff.clone();
                    p.sub_scaled_from(pos, &coeff, &shift, f);
                    if pos == 0 {
                        steps.head += 1;
                    } else {
                        steps.tail += 1;
                    }
                }
                None => pos += 1,
            }
        }
        p
    }
}

/// `HNF_J(p, ctx)`.
pub fn hnf_j(p: &Polynomial, ctx: &ReductionContext) -> Polynomial {
    ctx.head_normal_form(p.clone(), &mut ReductionSteps::default())
}

/// `NF_J(p, ctx)`.
pub fn nf_j(p: &Polynomial, ctx: &ReductionContext) -> Polynomial {
    ctx.normal_form(p.clone(), &mut ReductionSteps::default())
}

/// Ordinary normal form: no term of the result is divisible by any leading
/// monomial of `basis`. The first divisor in `basis` order is used.
pub fn nf_ordinary(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut p = p.clone();
    let mut pos = 0;
    while pos < p.len() {
        let term = &p.terms()[pos];
        let divisor = basis.iter().filter(|f| !f.is_zero()).find(|f| f.lm().divides(&term.mon));
        match divisor {
            Some(f) => {
                let shift = term.mon.quotient(f.lm()).expect("divisor must divide");
                let lc = f.leading_coeff().expect("nonzero");
                let coeff = if lc.is_one() { term.coeff.clone() } else { &term.coeff / lc };
                p.sub_scaled_from(pos, &coeff, &shift, f);
            }
            None => pos += 1,
        }
    }
    p
}

/// Janet autoreduction: an equivalent monic set with distinct leading
/// monomials in which no term of any element has a Janet divisor among the
/// other leading monomials. Output is sorted ascending by leading monomial.
pub fn j_autoreduce(polys: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    let mut pending: Vec<Polynomial> = Vec::new();
    for p in polys {
        if p.order() != order {
            return Err(Error::DimensionMismatch { expected: order.nvars(), found: p.nvars() });
        }
        if !p.is_zero() {
            pending.push(p.clone().make_monic());
        }
    }

    // Make leading monomials distinct. For Janet division a set of distinct
    // monomials never has one element Janet-dividing another, so after this
    // only tails can be reducible.
    let mut ctx = ReductionContext::new(order);
    while let Some(p) = pending.pop() {
        match ctx.handle_of(p.lm()) {
            Some(h) => {
                let diff = (&p - ctx.get(h)).make_monic();
                if !diff.is_zero() {
                    pending.push(diff);
                }
            }
            None => {
                ctx.insert(p)?;
            }
        }
    }

    let mut out: Vec<Polynomial> =
        ctx.iter().map(|(_, g)| ctx.normal_form_from(g.clone(), 1, &mut ReductionSteps::default())).collect();
    out.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    Ok(out)
}

/// `lm(a) ⪯ lm(b)` with zero below everything.
pub fn head_le(a: &Polynomial, b: &Polynomial) -> bool {
    match (a.leading_monomial(), b.leading_monomial()) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => a.order().compare(x, y) != Ordering::Greater,
    }
}
