#![allow(dead_code)]

use janet_core::poly::integer;
use janet_core::{Monomial, MonomialOrder, Polynomial};
use proptest::prelude::*;

/// Monomials in `n` variables of total degree at most `max_degree`, built by
/// handing out degree units one variable at a time.
pub fn monomial(n: usize, max_degree: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..n, 0..=max_degree as usize).prop_map(move |vars| {
        let mut exps = vec![0u32; n];
        for v in vars {
            exps[v] += 1;
        }
        Monomial::from_exponents(&exps)
    })
}

pub fn order(n: usize) -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::degrevlex(n)), Just(MonomialOrder::deglex(n))]
}

/// Nonzero polynomial with small integer coefficients.
pub fn polynomial(order: MonomialOrder, max_terms: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    let coeff = prop_oneof![-3i64..=-1, 1i64..=3];
    proptest::collection::vec((coeff, monomial(order.nvars(), max_degree)), 1..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(order, terms.into_iter().map(|(c, m)| (integer(c), m))).unwrap())
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// An order together with a few polynomials under it.
pub fn system(
    max_vars: usize,
    max_polys: usize,
    max_terms: usize,
    max_degree: u32,
) -> impl Strategy<Value = (MonomialOrder, Vec<Polynomial>)> {
    (1..=max_vars).prop_flat_map(order).prop_flat_map(move |o| {
        (Just(o), proptest::collection::vec(polynomial(o, max_terms, max_degree), 1..=max_polys))
    })
}
