//! Independent correctness checks.
//!
//! The Buchberger implementation here is intentionally plain by default:
//! every pair is reduced, pairs taken by smallest lcm, then interreduction.
//! A variant with the Gebauer-Moeller criteria is available for larger
//! systems. It shares only the
//! polynomial arithmetic and [`nf_ordinary`] with the rest of the crate, never
//! the Janet machinery, so it can certify engine output.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::division::{janet_partition, JanetTree};
use crate::poly::{Coefficient, Monomial, MonomialOrder, Polynomial, VarIndex};
use crate::reduction::{nf_j, nf_ordinary, ReductionContext};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CertificateProperty {
    GroebnerSPairs,
    JanetProlongations,
    IdealEquality,
    MinimalJanet,
}

impl fmt::Display for CertificateProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateProperty::GroebnerSPairs => "groebner-s-pairs",
            CertificateProperty::JanetProlongations => "janet-prolongations",
            CertificateProperty::IdealEquality => "ideal-equality",
            CertificateProperty::MinimalJanet => "minimal-janet",
        })
    }
}

/// Something that made a certificate fail. Indices refer to the checked set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// S-polynomial of elements `i` and `j` has a nonzero normal form.
    SPair(usize, usize),
    /// `g_i * var` has a nonzero Janet normal form.
    Prolongation { element: usize, var: usize },
    /// A tail term of element `i` has a Janet divisor.
    ReducibleTerm { element: usize, term: String },
    /// Two elements share a leading monomial.
    DuplicateHead { element: usize },
    /// Reduced Gröbner bases differ.
    ReducedBasesDiffer,
    /// Leading monomial expected in a minimal Janet basis but missing.
    MissingHead(String),
    /// Leading monomial present but not part of the minimal Janet basis.
    ExtraHead(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::SPair(i, j) => write!(f, "S({i}, {j}) does not reduce to 0"),
            Witness::Prolongation { element, var } => {
                write!(f, "prolongation of element {element} by x{} does not reduce to 0", var + 1)
            }
            Witness::ReducibleTerm { element, term } => {
                write!(f, "term {term} of element {element} is Janet-reducible")
            }
            Witness::DuplicateHead { element } => {
                write!(f, "element {element} repeats a leading monomial")
            }
            Witness::ReducedBasesDiffer => f.write_str("reduced Gröbner bases differ"),
            Witness::MissingHead(m) => write!(f, "leading monomial {m} missing"),
            Witness::ExtraHead(m) => write!(f, "leading monomial {m} not minimal"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub property: CertificateProperty,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

impl CertificateReport {
    fn new(property: CertificateProperty, witnesses: Vec<Witness>) -> CertificateReport {
        CertificateReport { property, passed: witnesses.is_empty(), witnesses }
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.property, if self.passed { "pass" } else { "FAIL" })?;
        for w in self.witnesses.iter().take(5) {
            write!(f, "\n  {w}")?;
        }
        if self.witnesses.len() > 5 {
            write!(f, "\n  ... {} more", self.witnesses.len() - 5)?;
        }
        Ok(())
    }
}

/// `(lcm / lt(f)) * f - (lcm / lt(g)) * g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let (tf, tg) = (f.try_leading_term()?, g.try_leading_term()?);
    let lcm = tf.mon.lcm(&tg.mon);
    let left = f.mul_by_term(&(Coefficient::ONE / &tf.coeff), &lcm.quotient(&tf.mon).expect("lcm is a multiple"));
    let right = g.mul_by_term(&(Coefficient::ONE / &tg.coeff), &lcm.quotient(&tg.mon).expect("lcm is a multiple"));
    Ok(&left - &right)
}

struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

impl Pair {
    fn key(&self, other: &Pair, order: MonomialOrder) -> Ordering {
        order.compare(&self.lcm, &other.lcm).then((self.i, self.j).cmp(&(other.i, other.j)))
    }
}

/// Min-heap wrapper: smallest lcm first.
struct Queued(Pair, MonomialOrder);

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.key(&self.0, self.1)
    }
}

/// How the Buchberger oracle treats critical pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairCriteria {
    /// Every pair is reduced.
    #[default]
    None,
    /// Product and chain criteria with the Gebauer-Moeller update; redundant
    /// elements stop acting as reducers.
    GebauerMoeller,
}

/// The monic reduced Gröbner basis of the ideal generated by `input`,
/// ascending by leading monomial. Every pair is reduced.
pub fn buchberger_reduced_gb(input: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    buchberger_reduced_gb_with(input, order, PairCriteria::None)
}

pub fn buchberger_reduced_gb_with(
    input: &[Polynomial],
    order: MonomialOrder,
    criteria: PairCriteria,
) -> Result<Vec<Polynomial>> {
    if input.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    for p in input {
        if p.order() != order {
            return Err(Error::DimensionMismatch { expected: order.nvars(), found: p.nvars() });
        }
        if !p.is_zero() {
            basis.push(p.clone().make_monic());
        }
    }
    if basis.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if basis.iter().any(Polynomial::is_constant) {
        return Ok(vec![Polynomial::one(order)]);
    }
    let grown = match criteria {
        PairCriteria::None => plain_buchberger(basis, order)?,
        PairCriteria::GebauerMoeller => gebauer_moeller_buchberger(basis, order)?,
    };
    Ok(match grown {
        Some(basis) => interreduce(basis, order),
        None => vec![Polynomial::one(order)],
    })
}

/// `None` when a constant turned up.
fn plain_buchberger(mut basis: Vec<Polynomial>, order: MonomialOrder) -> Result<Option<Vec<Polynomial>>> {
    let mut queue = BinaryHeap::new();
    for j in 0..basis.len() {
        for i in 0..j {
            queue.push(Queued(Pair { lcm: basis[i].lm().lcm(basis[j].lm()), i, j }, order));
        }
    }
    while let Some(Queued(pair, _)) = queue.pop() {
        let s = s_polynomial(&basis[pair.i], &basis[pair.j])?;
        let r = nf_ordinary(&s, &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.make_monic();
        if r.is_constant() {
            return Ok(None);
        }
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            queue.push(Queued(Pair { lcm: g.lm().lcm(r.lm()), i, j }, order));
        }
        basis.push(r);
    }
    Ok(Some(basis))
}

fn gebauer_moeller_buchberger(inputs: Vec<Polynomial>, order: MonomialOrder) -> Result<Option<Vec<Polynomial>>> {
    // `active[k]` is false once a later head divides `lm(basis[k])`.
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut queue: BinaryHeap<Queued> = BinaryHeap::new();
    for p in inputs {
        let p = nf_ordinary(&p, &active_elements(&basis, &active)).make_monic();
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return Ok(None);
        }
        gm_update(&mut basis, &mut active, &mut queue, p, order);
    }
    while let Some(Queued(pair, _)) = queue.pop() {
        let s = s_polynomial(&basis[pair.i], &basis[pair.j])?;
        let r = nf_ordinary(&s, &active_elements(&basis, &active));
        if r.is_zero() {
            continue;
        }
        let r = r.make_monic();
        if r.is_constant() {
            return Ok(None);
        }
        gm_update(&mut basis, &mut active, &mut queue, r, order);
    }
    Ok(Some(basis.into_iter().zip(active).filter(|(_, a)| *a).map(|(g, _)| g).collect()))
}

fn active_elements(basis: &[Polynomial], active: &[bool]) -> Vec<Polynomial> {
    basis.iter().zip(active).filter(|(_, a)| **a).map(|(g, _)| g.clone()).collect()
}

/// Adds `h` to the basis, updating the pair queue with the product and chain
/// criteria.
fn gm_update(
    basis: &mut Vec<Polynomial>,
    active: &mut Vec<bool>,
    queue: &mut BinaryHeap<Queued>,
    h: Polynomial,
    order: MonomialOrder,
) {
    let t = basis.len();
    let lh = h.lm().clone();
    let candidates: Vec<(usize, Monomial)> =
        (0..t).filter(|&k| active[k]).map(|k| (k, basis[k].lm().lcm(&lh))).collect();
    let coprime = |k: usize| basis[k].lm().lcm(&lh).total_degree() == basis[k].lm().total_degree() + lh.total_degree();

    // Chain criterion among the new pairs, keeping coprime ones for now.
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (k, lcm)) in candidates.iter().enumerate() {
        let dominated = candidates[idx + 1..].iter().chain(kept.iter()).any(|(_, other)| other.divides(lcm));
        if coprime(*k) || !dominated {
            kept.push((*k, lcm.clone()));
        }
    }
    kept.retain(|(k, _)| !coprime(*k));

    // Old pairs made redundant by `h`.
    let old: Vec<Queued> = std::mem::take(queue).into_vec();
    for q in old {
        let Pair { lcm, i, j } = &q.0;
        let redundant = lh.divides(lcm) && basis[*i].lm().lcm(&lh) != *lcm && basis[*j].lm().lcm(&lh) != *lcm;
        if !redundant {
            queue.push(q);
        }
    }
    for (k, lcm) in kept {
        queue.push(Queued(Pair { lcm, i: k, j: t }, order));
    }

    for k in 0..t {
        if active[k] && lh.divides(basis[k].lm()) {
            active[k] = false;
        }
    }
    basis.push(h);
    active.push(true);
}

/// Minimal, fully reduced, monic, ascending.
fn interreduce(basis: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant =
            basis.iter().enumerate().any(|(j, f)| j != i && f.lm().divides(g.lm()) && (f.lm() != g.lm() || j < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let g = &minimal[i];
            let lead = Polynomial::term(order, Coefficient::ONE, g.lm().clone());
            let tail = nf_ordinary(&g.tail(), &minimal);
            &lead + &tail
        })
        .collect();
    out.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    out
}

/// Every S-polynomial reduces to zero modulo `basis`.
pub fn is_groebner(basis: &[Polynomial]) -> CertificateReport {
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let witnesses = pairs
        .par_iter()
        .filter(|&&(i, j)| match s_polynomial(&basis[i], &basis[j]) {
            Ok(s) => !nf_ordinary(&s, basis).is_zero(),
            Err(_) => true,
        })
        .map(|&(i, j)| Witness::SPair(i, j))
        .collect();
    CertificateReport::new(CertificateProperty::GroebnerSPairs, witnesses)
}

/// Janet autoreducedness plus `NF_J(g * x, G) = 0` for every element `g` and
/// every non-multiplicative variable `x` of `lm(g)`.
pub fn is_janet_basis(basis: &[Polynomial], order: MonomialOrder) -> CertificateReport {
    let mut witnesses = Vec::new();
    let mut ctx = ReductionContext::new(order);
    for (i, g) in basis.iter().enumerate() {
        if g.is_zero() || ctx.insert(g.clone()).is_err() {
            witnesses.push(Witness::DuplicateHead { element: i });
        }
    }
    if !witnesses.is_empty() {
        return CertificateReport::new(CertificateProperty::JanetProlongations, witnesses);
    }
    let heads: Vec<Monomial> = basis.iter().map(|g| g.lm().clone()).collect();
    let partition = janet_partition(&heads).expect("nonempty basis");

    for (i, g) in basis.iter().enumerate() {
        for t in g.terms().iter().skip(1) {
            if partition.janet_divisor(&t.mon).is_some() {
                witnesses.push(Witness::ReducibleTerm { element: i, term: t.mon.to_string() });
            }
        }
    }
    let prolongations: Vec<(usize, VarIndex)> = basis
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            let nm = partition.non_multiplicative(g.lm()).expect("head is in the partition");
            nm.iter().map(move |x| (i, x))
        })
        .collect();
    let failed: Vec<Witness> = prolongations
        .par_iter()
        .filter(|(i, x)| !nf_j(&basis[*i].mul_var(*x), &ctx).is_zero())
        .map(|(i, x)| Witness::Prolongation { element: *i, var: x.0 })
        .collect();
    witnesses.extend(failed);
    CertificateReport::new(CertificateProperty::JanetProlongations, witnesses)
}

/// Both sets generate the same ideal (their reduced Gröbner bases coincide).
pub fn ideals_equal(left: &[Polynomial], right: &[Polynomial], order: MonomialOrder) -> Result<CertificateReport> {
    let a = buchberger_reduced_gb(left, order)?;
    let b = buchberger_reduced_gb(right, order)?;
    let witnesses = if a == b { Vec::new() } else { vec![Witness::ReducedBasesDiffer] };
    Ok(CertificateReport::new(CertificateProperty::IdealEquality, witnesses))
}

/// Janet completion of a monomial set: repeatedly adds the smallest
/// non-multiplicative prolongation that has no Janet divisor.
pub fn monomial_janet_completion(generators: &[Monomial], order: MonomialOrder) -> Vec<Monomial> {
    let mut set: Vec<Monomial> = Vec::new();
    for g in generators {
        if !set.contains(g) {
            set.push(g.clone());
        }
    }
    let mut tree: JanetTree<()> = JanetTree::new(order.nvars());
    for u in &set {
        tree.insert(u.clone(), ()).expect("distinct");
    }
    loop {
        let candidate = set
            .iter()
            .flat_map(|u| {
                let nm = tree.non_multiplicative(u).expect("indexed");
                nm.iter().map(move |x| u.mul_var(x))
            })
            .filter(|w| tree.janet_divisor(w).is_none())
            .min_by(|a, b| order.compare(a, b));
        match candidate {
            Some(w) => {
                tree.insert(w.clone(), ()).expect("no Janet divisor means not present");
                set.push(w);
            }
            None => break,
        }
    }
    set.sort_by(|a, b| order.compare(a, b));
    set
}

/// `lm(basis)` equals the Janet completion of the minimal generators of the
/// leading monomial ideal, computed through Buchberger.
pub fn is_minimal_janet(basis: &[Polynomial], order: MonomialOrder) -> Result<CertificateReport> {
    let gb = buchberger_reduced_gb(basis, order)?;
    Ok(minimal_janet_against(basis, &gb, order))
}

fn minimal_janet_against(basis: &[Polynomial], gb: &[Polynomial], order: MonomialOrder) -> CertificateReport {
    let minimal_heads: Vec<Monomial> = gb.iter().map(|g| g.lm().clone()).collect();
    let expected = monomial_janet_completion(&minimal_heads, order);
    let actual: Vec<Monomial> = basis.iter().filter(|g| !g.is_zero()).map(|g| g.lm().clone()).collect();
    let mut witnesses: Vec<Witness> =
        expected.iter().filter(|m| !actual.contains(m)).map(|m| Witness::MissingHead(m.to_string())).collect();
    witnesses.extend(actual.iter().filter(|m| !expected.contains(m)).map(|m| Witness::ExtraHead(m.to_string())));
    CertificateReport::new(CertificateProperty::MinimalJanet, witnesses)
}

/// All certificates for an engine output computed from `input`.
pub fn certify(input: &[Polynomial], basis: &[Polynomial], order: MonomialOrder) -> Result<Vec<CertificateReport>> {
    let input_gb = buchberger_reduced_gb(input, order)?;
    certify_against(&input_gb, basis, order)
}

/// [`certify`] with the reduced Gröbner basis of the input already known.
pub fn certify_against(
    input_gb: &[Polynomial],
    basis: &[Polynomial],
    order: MonomialOrder,
) -> Result<Vec<CertificateReport>> {
    let basis_gb = buchberger_reduced_gb(basis, order)?;
    let same_ideal = if basis_gb == input_gb { Vec::new() } else { vec![Witness::ReducedBasesDiffer] };
    Ok(vec![
        is_janet_basis(basis, order),
        is_groebner(basis),
        CertificateReport::new(CertificateProperty::IdealEquality, same_ideal),
        minimal_janet_against(basis, &basis_gb, order),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o() -> MonomialOrder {
        MonomialOrder::degrevlex(2)
    }

    fn p(terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_int_terms(o(), terms)
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn s_polynomial_examples() {
        let f = p(&[(1, &[2, 0]), (-1, &[0, 1])]);
        let g = p(&[(1, &[0, 2]), (-1, &[0, 0])]);
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        assert_eq!(s_polynomial(&f, &g).unwrap(), p(&[(1, &[2, 0]), (-1, &[0, 3])]));
        let a = p(&[(1, &[1, 0]), (1, &[0, 0])]);
        let b = p(&[(1, &[0, 1]), (1, &[0, 0])]);
        let s = s_polynomial(&a, &b).unwrap();
        assert_eq!(s, p(&[(1, &[0, 1]), (-1, &[1, 0])]));
        assert!(nf_ordinary(&s, &[a, b]).is_zero());
        assert!(matches!(s_polynomial(&Polynomial::zero(o()), &f), Err(Error::ZeroOperand)));
    }

    #[test]
    fn buchberger_examples() {
        let x2 = p(&[(1, &[2, 0])]);
        let y = p(&[(1, &[0, 1])]);
        assert_eq!(buchberger_reduced_gb(&[x2.clone(), y.clone()], o()).unwrap(), vec![y.clone(), x2.clone()]);
        let f = p(&[(1, &[2, 0]), (-1, &[0, 1])]);
        let g = p(&[(1, &[0, 2]), (-1, &[0, 0])]);
        assert_eq!(buchberger_reduced_gb(&[f.clone(), g.clone()], o()).unwrap(), vec![g.clone(), f.clone()]);
        let x = p(&[(1, &[1, 0])]);
        let xy = p(&[(1, &[1, 0]), (1, &[0, 1])]);
        assert_eq!(buchberger_reduced_gb(&[x.clone(), xy], o()).unwrap(), vec![y, x]);
        assert!(matches!(buchberger_reduced_gb(&[], o()), Err(Error::EmptySet)));
    }

    #[test]
    fn groebner_certificate_examples() {
        let set = [p(&[(1, &[2, 0])]), p(&[(1, &[1, 1])]), p(&[(1, &[0, 1])])];
        assert!(is_groebner(&set).passed);
        assert!(is_groebner(&[p(&[(1, &[2, 0]), (-1, &[0, 1])])]).passed);
        assert!(is_groebner(&[p(&[(1, &[1, 1])]), p(&[(1, &[1, 0])])]).passed);
        let bad = is_groebner(&[p(&[(1, &[1, 0]), (1, &[0, 0])]), p(&[(1, &[1, 0]), (-1, &[0, 1])])]);
        assert!(!bad.passed);
        assert_eq!(bad.witnesses, vec![Witness::SPair(0, 1)]);
    }

    #[test]
    fn janet_certificate_examples() {
        let good = [p(&[(1, &[2, 0])]), p(&[(1, &[1, 1])]), p(&[(1, &[0, 1])])];
        assert!(is_janet_basis(&good, o()).passed);
        let report = is_janet_basis(&[p(&[(1, &[2, 0])]), p(&[(1, &[0, 1])])], o());
        assert!(!report.passed);
        assert_eq!(report.witnesses, vec![Witness::Prolongation { element: 1, var: 0 }]);
        assert!(is_janet_basis(&[p(&[(1, &[2, 0]), (1, &[0, 1])])], o()).passed);
        // y*(x^2 + y*x) has reducible tail term x*y.
        let unreduced = [p(&[(1, &[2, 0])]), p(&[(1, &[1, 1])]), p(&[(1, &[0, 1])]), p(&[(1, &[1, 2]), (1, &[2, 0])])];
        let r = is_janet_basis(&unreduced, o());
        assert!(r.witnesses.iter().any(|w| matches!(w, Witness::ReducibleTerm { element: 3, .. })));
    }

    #[test]
    fn ideal_equality_examples() {
        let x2 = p(&[(1, &[2, 0])]);
        let y = p(&[(1, &[0, 1])]);
        assert!(ideals_equal(&[x2.clone(), y.clone()], &[y, x2.clone()], o()).unwrap().passed);
        let x = p(&[(1, &[1, 0])]);
        assert!(ideals_equal(std::slice::from_ref(&x), &[x.scale(&crate::poly::integer(2))], o()).unwrap().passed);
        assert!(!ideals_equal(&[x], &[x2], o()).unwrap().passed);
    }

    #[test]
    fn monomial_completion() {
        let got = monomial_janet_completion(&[m(&[2, 0]), m(&[0, 1])], o());
        assert_eq!(got, vec![m(&[0, 1]), m(&[1, 1]), m(&[2, 0])]);
        let set = [p(&[(1, &[2, 0])]), p(&[(1, &[1, 1])]), p(&[(1, &[0, 1])])];
        assert!(is_minimal_janet(&set, o()).unwrap().passed);
        let bigger = [p(&[(1, &[2, 0])]), p(&[(1, &[1, 1])]), p(&[(1, &[0, 1])]), p(&[(1, &[0, 2])])];
        let r = is_minimal_janet(&bigger, o()).unwrap();
        assert_eq!(r.witnesses, vec![Witness::ExtraHead("x2^2".into())]);
    }
}
