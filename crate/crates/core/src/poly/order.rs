use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MAX_VARS};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    DegRevLex,
    DegLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::DegRevLex => "degrevlex",
            OrderKind::DegLex => "deglex",
        })
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrevlex" => Ok(OrderKind::DegRevLex),
            "deglex" => Ok(OrderKind::DegLex),
            other => Err(Error::UnknownOrder(other.to_string())),
        }
    }
}

/// A degree-compatible monomial order on `n` variables with `x1 > x2 > ... > xn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    nvars: usize,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Result<MonomialOrder> {
        if nvars > MAX_VARS {
            return Err(Error::TooManyVariables { max: MAX_VARS, found: nvars });
        }
        Ok(MonomialOrder { kind, nvars })
    }

    pub fn degrevlex(nvars: usize) -> MonomialOrder {
        MonomialOrder::new(OrderKind::DegRevLex, nvars).expect("too many variables")
    }

    pub fn deglex(nvars: usize) -> MonomialOrder {
        MonomialOrder::new(OrderKind::DegLex, nvars).expect("too many variables")
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Compares two monomials; `Greater` means `u ≻ v`.
    ///
    /// Panics when either monomial has the wrong dimension; see
    /// [`MonomialOrder::try_compare`].
    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Ordering {
        debug_assert_eq!(u.nvars(), self.nvars);
        debug_assert_eq!(v.nvars(), self.nvars);
        match u.total_degree().cmp(&v.total_degree()) {
            Ordering::Equal => {}
            unequal => return unequal,
        }
        let (a, b) = (u.exponents(), v.exponents());
        match self.kind {
            // The last nonzero entry of u - v decides; negative means u is larger.
            OrderKind::DegRevLex => {
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegLex => a.cmp(b),
        }
    }

    pub fn try_compare(&self, u: &Monomial, v: &Monomial) -> Result<Ordering> {
        for w in [u, v] {
            if w.nvars() != self.nvars {
                return Err(Error::DimensionMismatch { expected: self.nvars, found: w.nvars() });
            }
        }
        Ok(self.compare(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// All exponent vectors of `nvars` variables with total degree `<= max_deg`.
    fn all_monomials(nvars: usize, max_deg: u32) -> Vec<Monomial> {
        let mut out = vec![vec![]];
        for _ in 0..nvars {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    let used: u32 = prefix.iter().sum();
                    (0..=max_deg - used).map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(|e| Monomial::new(e).unwrap()).collect()
    }

    /// Degree-reverse-lexicographic key built independently: sort by degree,
    /// then by the reversed exponent vector compared in reverse.
    fn revlex_key(u: &Monomial) -> (u32, Vec<std::cmp::Reverse<u32>>) {
        let rev: Vec<_> = u.exponents().iter().rev().map(|e| std::cmp::Reverse(*e)).collect();
        (u.total_degree(), rev)
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::degrevlex(3);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[3, 0, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn degrevlex_matches_enumeration_oracle() {
        let o = MonomialOrder::degrevlex(3);
        let mons = all_monomials(3, 3);
        for u in &mons {
            for v in &mons {
                assert_eq!(o.compare(u, v), revlex_key(u).cmp(&revlex_key(v)), "{u} vs {v}");
            }
        }
    }

    #[test]
    fn deglex_examples() {
        let o = MonomialOrder::deglex(3);
        // x1*x3 vs x2^2: first nonzero difference is +1 in x1.
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 1]), &m(&[0, 1, 0])), Ordering::Less);
    }

    #[test]
    fn dimension_checks() {
        let o = MonomialOrder::degrevlex(2);
        assert!(o.try_compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
        assert!(MonomialOrder::new(OrderKind::DegLex, 65).is_err());
        assert_eq!("deglex".parse::<OrderKind>().unwrap(), OrderKind::DegLex);
        assert!("lex".parse::<OrderKind>().is_err());
    }
}
