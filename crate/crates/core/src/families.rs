//! Standard benchmark families.
//!
//! All generated systems use degrevlex and integer coefficients. Variables are
//! named `x1..xn`, except for katsura which uses `x0..xn`.

use std::fmt;
use std::str::FromStr;

use crate::poly::{integer, Monomial, MonomialOrder, OrderKind, Polynomial, VarIndex};
use crate::system::SystemFile;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic,
    Katsura,
    Eco,
    Noon,
    Reimer,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Cyclic, Family::Katsura, Family::Eco, Family::Noon, Family::Reimer];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Katsura => "katsura",
            Family::Eco => "eco",
            Family::Noon => "noon",
            Family::Reimer => "reimer",
        }
    }

    /// Accepted range of the size parameter.
    pub fn bounds(self) -> (usize, usize) {
        match self {
            Family::Katsura => (2, 63),
            _ => (2, 64),
        }
    }

    pub fn generate(self, n: usize) -> Result<SystemFile> {
        let (min, max) = self.bounds();
        if n < min || n > max {
            return Err(Error::FamilyParameter { family: self.name().to_string(), n, min, max });
        }
        let (names, polys) = match self {
            Family::Cyclic => cyclic(n),
            Family::Katsura => katsura(n),
            Family::Eco => eco(n),
            Family::Noon => noon(n),
            Family::Reimer => reimer(n),
        };
        SystemFile::new(names, OrderKind::DegRevLex, polys)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Parses `name-n` (for example `cyclic-5`) and generates the system.
pub fn generate_named(spec: &str) -> Result<SystemFile> {
    let (name, n) = spec.rsplit_once('-').ok_or_else(|| Error::UnknownFamily(spec.to_string()))?;
    let n: usize = n.parse().map_err(|_| Error::UnknownFamily(spec.to_string()))?;
    name.parse::<Family>()?.generate(n)
}

fn names(prefix_from: usize, count: usize) -> Vec<String> {
    (prefix_from..prefix_from + count).map(|i| format!("x{i}")).collect()
}

fn var(order: MonomialOrder, i: usize) -> Polynomial {
    Polynomial::var(order, VarIndex(i))
}

fn konst(order: MonomialOrder, c: i64) -> Polynomial {
    Polynomial::constant(order, integer(c))
}

fn sum(order: MonomialOrder, parts: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    parts.into_iter().fold(Polynomial::zero(order), |acc, p| &acc + &p)
}

fn cyclic(n: usize) -> (Vec<String>, Vec<Polynomial>) {
    let order = MonomialOrder::degrevlex(n);
    let mut polys = Vec::with_capacity(n);
    for d in 1..n {
        polys.push(sum(
            order,
            (0..n).map(|i| {
                let mut exps = vec![0u32; n];
                for j in 0..d {
                    exps[(i + j) % n] += 1;
                }
                Polynomial::term(order, integer(1), Monomial::from_exponents(&exps))
            }),
        ));
    }
    let all = Polynomial::term(order, integer(1), Monomial::from_exponents(&vec![1; n]));
    polys.push(&all - &konst(order, 1));
    (names(1, n), polys)
}

fn katsura(n: usize) -> (Vec<String>, Vec<Polynomial>) {
    // Variable index k stands for x_k, k = 0..=n.
    let order = MonomialOrder::degrevlex(n + 1);
    let n_i = n as i64;
    let mut polys = Vec::with_capacity(n + 1);
    for m in 0..n_i {
        let quad = sum(
            order,
            (-n_i..=n_i)
                .filter(|i| (m - i).abs() <= n_i)
                .map(|i| &var(order, i.unsigned_abs() as usize) * &var(order, (m - i).unsigned_abs() as usize)),
        );
        polys.push(&quad - &var(order, m as usize));
    }
    let linear = sum(order, (1..=n).map(|i| var(order, i).scale(&integer(2))));
    polys.push(&(&var(order, 0) + &linear) - &konst(order, 1));
    (names(0, n + 1), polys)
}

fn eco(n: usize) -> (Vec<String>, Vec<Polynomial>) {
    // Variable index i - 1 stands for x_i.
    let order = MonomialOrder::degrevlex(n);
    let x = |i: usize| var(order, i - 1);
    let mut polys = Vec::with_capacity(n);
    for k in 1..n {
        let inner = sum(order, std::iter::once(x(k)).chain((1..n - k).map(|i| &x(i) * &x(i + k))));
        polys.push(&(&x(n) * &inner) - &konst(order, k as i64));
    }
    polys.push(&sum(order, (1..n).map(x)) + &konst(order, 1));
    (names(1, n), polys)
}

fn noon(n: usize) -> (Vec<String>, Vec<Polynomial>) {
    let order = MonomialOrder::degrevlex(n);
    let polys = (0..n)
        .map(|i| {
            let squares = sum(order, (0..n).filter(|&j| j != i).map(|j| var(order, j).pow(2)));
            let cubic = (&var(order, i) * &squares).scale(&integer(10));
            &(&cubic - &var(order, i).scale(&integer(11))) + &konst(order, 10)
        })
        .collect();
    (names(1, n), polys)
}

fn reimer(n: usize) -> (Vec<String>, Vec<Polynomial>) {
    let order = MonomialOrder::degrevlex(n);
    let polys = (2..=n as u32 + 1)
        .map(|k| {
            let alternating = sum(
                order,
                (0..n).map(|i| {
                    let sign = if i % 2 == 0 { 2 } else { -2 };
                    var(order, i).pow(k).scale(&integer(sign))
                }),
            );
            &alternating - &konst(order, 1)
        })
        .collect();
    (names(1, n), polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::parse_system;

    fn lines(sys: &SystemFile) -> Vec<String> {
        sys.polynomials.iter().map(|p| sys.render_poly(p)).collect()
    }

    #[test]
    fn goldens() {
        assert_eq!(lines(&Family::Cyclic.generate(2).unwrap()), ["x1 + x2", "x1*x2 - 1"]);
        assert_eq!(
            lines(&Family::Cyclic.generate(3).unwrap()),
            ["x1 + x2 + x3", "x1*x2 + x1*x3 + x2*x3", "x1*x2*x3 - 1"]
        );
        assert_eq!(lines(&Family::Noon.generate(2).unwrap()), ["10*x1*x2^2 - 11*x1 + 10", "10*x1^2*x2 - 11*x2 + 10"]);
    }

    #[test]
    fn small_members_by_hand() {
        // katsura-2 in x0, x1, x2
        assert_eq!(
            lines(&Family::Katsura.generate(2).unwrap()),
            ["x0^2 + 2*x1^2 + 2*x2^2 - x0", "2*x0*x1 + 2*x1*x2 - x1", "x0 + 2*x1 + 2*x2 - 1",]
        );
        assert_eq!(lines(&Family::Eco.generate(3).unwrap()), ["x1*x2*x3 + x1*x3 - 1", "x2*x3 - 2", "x1 + x2 + 1"]);
        assert_eq!(lines(&Family::Reimer.generate(2).unwrap()), ["2*x1^2 - 2*x2^2 - 1", "2*x1^3 - 2*x2^3 - 1"]);
    }

    #[test]
    fn shapes() {
        for n in 2..8 {
            assert_eq!(Family::Cyclic.generate(n).unwrap().polynomials.len(), n);
            let k = Family::Katsura.generate(n).unwrap();
            assert_eq!((k.nvars(), k.polynomials.len()), (n + 1, n + 1));
            assert_eq!(Family::Eco.generate(n).unwrap().polynomials.len(), n);
            assert_eq!(Family::Noon.generate(n).unwrap().polynomials.len(), n);
            assert_eq!(Family::Reimer.generate(n).unwrap().polynomials.len(), n);
        }
    }

    #[test]
    fn deterministic_and_round_trip() {
        for family in Family::ALL {
            for n in 2..7 {
                let a = family.generate(n).unwrap();
                assert_eq!(a, family.generate(n).unwrap());
                assert_eq!(parse_system(&a.render()).unwrap(), a);
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(Family::Cyclic.generate(1), Err(Error::FamilyParameter { n: 1, .. })));
        assert!(matches!(Family::Katsura.generate(64), Err(Error::FamilyParameter { .. })));
        assert!(matches!("foo".parse::<Family>(), Err(Error::UnknownFamily(_))));
        assert_eq!(generate_named("cyclic-3").unwrap(), Family::Cyclic.generate(3).unwrap());
        assert!(generate_named("cyclic").is_err());
    }
}
