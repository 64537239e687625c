//! The polynomial system text format.
//!
//! ```text
//! # comment
//! vars: x y z
//! order: degrevlex
//! x^2 - 1/2*y*z + 3
//! (x + y)^2 - z
//! ```
//!
//! The `vars:` line lists the variables from greatest to smallest. The
//! `order:` line is optional and defaults to `degrevlex`. Every following
//! non-empty line is one polynomial built from integers, `p/q` rationals,
//! variables, `+ - * ^` and parentheses. Multiplication must be written out.

use std::fmt::Write as _;

use dashu_int::{IBig, UBig};

use crate::poly::{Coefficient, MonomialOrder, OrderKind, Polynomial, VarIndex};
use crate::{Error, Result};

/// A parsed or generated polynomial system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub variables: Vec<String>,
    pub order: MonomialOrder,
    pub polynomials: Vec<Polynomial>,
}

impl SystemFile {
    pub fn new(variables: Vec<String>, kind: OrderKind, polynomials: Vec<Polynomial>) -> Result<SystemFile> {
        let order = MonomialOrder::new(kind, variables.len())?;
        for (i, name) in variables.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidSystem(format!("invalid variable name `{name}`")));
            }
            if variables[..i].contains(name) {
                return Err(Error::InvalidSystem(format!("duplicate variable `{name}`")));
            }
        }
        let polynomials: Vec<Polynomial> = polynomials.into_iter().filter(|p| !p.is_zero()).collect();
        if polynomials.is_empty() {
            return Err(Error::InvalidSystem("no nonzero polynomial".into()));
        }
        for p in &polynomials {
            if p.order() != order {
                return Err(Error::DimensionMismatch { expected: order.nvars(), found: p.nvars() });
            }
        }
        Ok(SystemFile { variables, order, polynomials })
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// The same system under a different monomial order.
    pub fn with_order(&self, kind: OrderKind) -> SystemFile {
        let order = MonomialOrder::new(kind, self.nvars()).expect("dimension already validated");
        let polynomials = self.polynomials.iter().map(|p| p.with_order(order)).collect();
        SystemFile { variables: self.variables.clone(), order, polynomials }
    }

    pub fn render_poly(&self, p: &Polynomial) -> String {
        p.to_string_with(&self.variables)
    }

    /// Canonical text form; [`parse_system`] reads it back unchanged.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars: {}", self.variables.join(" ")).unwrap();
        writeln!(out, "order: {}", self.order.kind()).unwrap();
        for p in &self.polynomials {
            writeln!(out, "{}", self.render_poly(p)).unwrap();
        }
        out
    }
}

/// Renders polynomials one per line with the given names.
pub fn render_polys(names: &[String], polys: &[Polynomial]) -> String {
    let mut out = String::new();
    for p in polys {
        writeln!(out, "{}", p.to_string_with(names)).unwrap();
    }
    out
}

fn parse_error(line: usize, column: usize, message: String) -> Error {
    Error::Parse { line, column, message }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut variables: Option<Vec<String>> = None;
    let mut order_kind: Option<OrderKind> = None;
    let mut polynomials = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            if variables.is_some() {
                return Err(parse_error(line_no, indent + 1, "duplicate `vars:` line".into()));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(parse_error(line_no, indent + 1, "`vars:` needs at least one name".into()));
            }
            for (i, name) in names.iter().enumerate() {
                let column = raw.find(name.as_str()).map_or(indent + 1, |c| c + 1);
                if !is_identifier(name) {
                    return Err(parse_error(line_no, column, format!("invalid variable name `{name}`")));
                }
                if names[..i].contains(name) {
                    return Err(parse_error(line_no, column, format!("duplicate variable `{name}`")));
                }
            }
            variables = Some(names);
        } else if let Some(rest) = trimmed.strip_prefix("order:") {
            if order_kind.is_some() {
                return Err(parse_error(line_no, indent + 1, "duplicate `order:` line".into()));
            }
            if !polynomials.is_empty() {
                return Err(parse_error(line_no, indent + 1, "`order:` must precede the polynomials".into()));
            }
            order_kind = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| parse_error(line_no, indent + 1, format!("unknown order `{}`", rest.trim())))?,
            );
        } else {
            let Some(names) = &variables else {
                return Err(parse_error(line_no, indent + 1, "polynomial before `vars:` line".into()));
            };
            let order = MonomialOrder::new(order_kind.unwrap_or(OrderKind::DegRevLex), names.len())?;
            let poly = Parser::new(content, line_no, names, order)?.parse_line()?;
            polynomials.push(poly);
        }
    }

    let variables = variables.ok_or_else(|| parse_error(1, 1, "missing `vars:` line".into()))?;
    let kind = order_kind.unwrap_or(OrderKind::DegRevLex);
    let polynomials: Vec<Polynomial> = polynomials.into_iter().filter(|p| !p.is_zero()).collect();
    if polynomials.is_empty() {
        return Err(parse_error(text.lines().count().max(1), 1, "empty system: no nonzero polynomial".into()));
    }
    SystemFile::new(variables, kind, polynomials)
}

/// Parses one polynomial in the given variables.
pub fn parse_polynomial(text: &str, names: &[String], order: MonomialOrder) -> Result<Polynomial> {
    Parser::new(text, 1, names, order)?.parse_line()
}

const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(UBig),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_column: usize,
    names: &'a [String],
    order: MonomialOrder,
}

impl<'a> Parser<'a> {
    fn new(text: &str, line: usize, names: &'a [String], order: MonomialOrder) -> Result<Parser<'a>> {
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_' || chars[i] == '.') {
                    let message = if chars[i] == '.' {
                        "decimal numbers are not supported; use p/q".to_string()
                    } else {
                        "implicit multiplication is not allowed; write `*`".to_string()
                    };
                    return Err(parse_error(line, i + 1, message));
                }
                tokens.push((Tok::Int(digits.parse().expect("digits")), column));
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push((Tok::Ident(chars[start..i].iter().collect()), column));
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => return Err(parse_error(line, column, format!("unexpected character `{other}`"))),
            };
            tokens.push((tok, column));
            i += 1;
        }
        Ok(Parser { tokens, pos: 0, line, end_column: chars.len() + 1, names, order })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |(_, c)| *c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        parse_error(self.line, self.column(), message.into())
    }

    fn parse_line(mut self) -> Result<Polynomial> {
        let p = self.expr()?;
        match self.peek() {
            None => Ok(p),
            Some(Tok::RParen) => Err(self.error("unbalanced `)`")),
            Some(_) => Err(self.error("expected an operator; implicit multiplication is not allowed")),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Int(e)) => {
                let exp: u32 = e
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| self.error(format!("malformed exponent: larger than {MAX_EXPONENT}")))?;
                self.pos += 1;
                Ok(base.pow(exp))
            }
            _ => Err(self.error("malformed exponent: expected a nonnegative integer")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let Some(Tok::Int(d)) = self.peek().cloned() else {
                        return Err(self.error("expected an integer denominator"));
                    };
                    if d == UBig::ZERO {
                        return Err(self.error("zero denominator"));
                    }
                    self.pos += 1;
                    return Ok(Polynomial::constant(self.order, Coefficient::from_parts(IBig::from(n), d)));
                }
                Ok(Polynomial::constant(self.order, Coefficient::from(IBig::from(n))))
            }
            Some(Tok::Ident(name)) => {
                let idx = self
                    .names
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| self.error(format!("unknown variable `{name}`")))?;
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    return Err(self.error("division is only allowed between integer literals"));
                }
                Ok(Polynomial::var(self.order, VarIndex(idx)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of line")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    #[test]
    fn parses_basic_system() {
        let sys = parse_system("vars: x y\norder: degrevlex\nx^2 - y\ny^2 - 1\n").unwrap();
        assert_eq!(sys.variables, vec!["x", "y"]);
        assert_eq!(sys.order, MonomialOrder::degrevlex(2));
        let o = sys.order;
        assert_eq!(sys.polynomials[0], Polynomial::from_int_terms(o, &[(1, &[2, 0]), (-1, &[0, 1])]));
        assert_eq!(sys.polynomials[1], Polynomial::from_int_terms(o, &[(1, &[0, 2]), (-1, &[0, 0])]));
    }

    #[test]
    fn rational_coefficients_are_exact() {
        let sys = parse_system("vars: x\nx + 1/2").unwrap();
        let half = Coefficient::from_parts(1.into(), 2u8.into());
        assert_eq!(sys.polynomials[0].terms()[1].coeff, half);
        let sys = parse_system("vars: x\n6/4*x").unwrap();
        assert_eq!(sys.polynomials[0].terms()[0].coeff, Coefficient::from_parts(3.into(), 2u8.into()));
    }

    #[test]
    fn error_cases() {
        let err = |text: &str| match parse_system(text) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected parse error, got {other:?}"),
        };
        let (line, column, msg) = err("vars: x\nz + 1");
        assert_eq!((line, column), (2, 1));
        assert!(msg.contains("unknown variable `z`"));
        assert!(err("vars: x\nx^").2.contains("malformed exponent"));
        assert!(err("vars: x\nx^-1").2.contains("malformed exponent"));
        assert!(err("vars: x\nx^y").2.contains("malformed exponent"));
        assert!(err("vars: x\nx^99999999999").2.contains("malformed exponent"));
        assert!(err("vars: x\n").2.contains("empty system"));
        assert!(err("vars: x\nx - x").2.contains("empty system"));
        assert!(err("vars: x\nvars: y\nx").2.contains("duplicate `vars:`"));
        assert!(err("vars: x x\nx").2.contains("duplicate variable"));
        assert!(err("x + 1").2.contains("before `vars:`"));
        assert!(err("vars: x\n2x").2.contains("implicit multiplication"));
        assert!(err("vars: x y\nx y").2.contains("implicit multiplication"));
        assert!(err("vars: x\nx/2").2.contains("division"));
        assert!(err("vars: x\n1/0*x").2.contains("zero denominator"));
        assert!(err("vars: x\n(x + 1").2.contains("expected `)`"));
        assert!(err("vars: x\norder: lex\nx").2.contains("unknown order"));
        assert!(err("vars: x\nx $ 1").2.contains("unexpected character"));
        let (_, column, _) = err("vars: x y\n  x^2 + w");
        assert_eq!(column, 9);
    }

    #[test]
    fn comments_whitespace_and_parentheses() {
        let text = "# header\nvars:   a b   # trailing\n\n order: deglex\n  ( a + b ) ^ 2 - 2*a*b  # note\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(sys.order.kind(), OrderKind::DegLex);
        let o = sys.order;
        assert_eq!(sys.polynomials, vec![Polynomial::from_int_terms(o, &[(1, &[2, 0]), (1, &[0, 2])])]);
        let sys = parse_system("vars: x\n-x + -1*x*2").unwrap_err();
        assert!(matches!(sys, Error::Parse { .. }));
    }

    #[test]
    fn render_round_trip() {
        let text = "vars: x y z\norder: deglex\n-1/3*x^2*y + 7*z - 1\nx*y*z + 2/5\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(sys.render(), text);
        assert_eq!(parse_system(&sys.render()).unwrap(), sys);
    }

    #[test]
    fn reorder_keeps_terms() {
        let sys = parse_system("vars: x y z\nx*z + y^2").unwrap();
        let lex = sys.with_order(OrderKind::DegLex);
        // degrevlex: y^2 > x*z; deglex: x*z > y^2.
        assert_eq!(sys.polynomials[0].lm(), &Monomial::from_exponents(&[0, 2, 0]));
        assert_eq!(lex.polynomials[0].lm(), &Monomial::from_exponents(&[1, 0, 1]));
        assert_eq!(lex.polynomials[0].len(), 2);
    }
}
