use std::cmp::Ordering;
use std::collections::BTreeMap;

use dashu_ratio::RBig;
use proptest::prelude::*;

use super::*;

const NVARS: usize = 4;

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..=3, NVARS).prop_map(|e| Monomial::new(e).unwrap())
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::degrevlex(NVARS)), Just(MonomialOrder::deglex(NVARS))]
}

/// Naive polynomial: exponent vector -> coefficient, no ordering involved.
type Naive = BTreeMap<Vec<u32>, RBig>;

fn raw_terms() -> impl Strategy<Value = Vec<(i64, u64, Vec<u32>)>> {
    let exps = proptest::collection::vec(0u32..=6, NVARS).prop_filter("degree <= 6", |e| e.iter().sum::<u32>() <= 6);
    proptest::collection::vec((-5i64..=5, 1u64..=3, exps), 0..6)
}

fn build(order: MonomialOrder, raw: &[(i64, u64, Vec<u32>)]) -> (Polynomial, Naive) {
    let mut naive = Naive::new();
    for (n, d, e) in raw {
        *naive.entry(e.clone()).or_insert(RBig::ZERO) += RBig::from_parts((*n).into(), (*d).into());
    }
    naive.retain(|_, c| !c.is_zero());
    let poly = Polynomial::from_terms(
        order,
        raw.iter().map(|(n, d, e)| (RBig::from_parts((*n).into(), (*d).into()), Monomial::new(e.clone()).unwrap())),
    )
    .unwrap();
    (poly, naive)
}

fn to_naive(p: &Polynomial) -> Naive {
    p.terms().iter().map(|t| (t.mon.exponents().to_vec(), t.coeff.clone())).collect()
}

fn naive_mul(a: &Naive, b: &Naive) -> Naive {
    let mut out = Naive::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(RBig::ZERO) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn naive_add(a: &Naive, b: &Naive, sign: i64) -> Naive {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert(RBig::ZERO) += c * RBig::from(sign);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn strictly_sorted(p: &Polynomial) -> bool {
    p.terms().windows(2).all(|w| p.order().compare(&w[0].mon, &w[1].mon) == Ordering::Greater)
}

proptest! {
    #[test]
    fn order_is_strict_total(o in order(), u in monomial(), v in monomial(), w in monomial()) {
        let uv = o.compare(&u, &v);
        prop_assert_eq!(uv, o.compare(&v, &u).reverse());
        prop_assert_eq!(uv == Ordering::Equal, u == v);
        if uv == Ordering::Greater && o.compare(&v, &w) == Ordering::Greater {
            prop_assert_eq!(o.compare(&u, &w), Ordering::Greater);
        }
    }

    #[test]
    fn order_is_degree_compatible(o in order(), u in monomial(), v in monomial()) {
        if u.total_degree() > v.total_degree() {
            prop_assert_eq!(o.compare(&u, &v), Ordering::Greater);
        }
    }

    #[test]
    fn order_is_multiplicative(o in order(), u in monomial(), v in monomial(), w in monomial()) {
        prop_assert_eq!(o.compare(&u, &v), o.compare(&u.mul(&w), &v.mul(&w)));
    }

    #[test]
    fn arithmetic_matches_naive(o in order(), a in raw_terms(), b in raw_terms()) {
        let (pa, na) = build(o, &a);
        let (pb, nb) = build(o, &b);
        prop_assert_eq!(to_naive(&pa), na.clone());
        let sum = &pa + &pb;
        let diff = &pa - &pb;
        let prod = &pa * &pb;
        prop_assert!(strictly_sorted(&sum) && strictly_sorted(&diff) && strictly_sorted(&prod));
        prop_assert_eq!(to_naive(&sum), naive_add(&na, &nb, 1));
        prop_assert_eq!(to_naive(&diff), naive_add(&na, &nb, -1));
        prop_assert_eq!(to_naive(&prod), naive_mul(&na, &nb));
        if let Some(t) = pb.leading_term() {
            let shifted = pa.mul_by_term(&t.coeff, &t.mon);
            let single: Naive = [(t.mon.exponents().to_vec(), t.coeff.clone())].into_iter().collect();
            prop_assert_eq!(to_naive(&shifted), naive_mul(&na, &single));
        }
        let monic = pa.clone().make_monic();
        prop_assert!(pa.is_zero() || monic.is_monic());
    }
}
