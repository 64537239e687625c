use std::fmt;

use crate::{Error, Result};

/// Largest number of variables a ring may have; variable sets are `u64` masks.
pub const MAX_VARS: usize = 64;

/// Zero-based variable index. Index 0 is `x1`, the greatest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex(pub usize);

impl VarIndex {
    /// One-based position as used in the `x1..xn` presentation.
    pub fn one_based(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0 + 1)
    }
}

/// A set of variables stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    /// `{x1, ..., xn}`.
    pub fn full(nvars: usize) -> VarSet {
        assert!(nvars <= MAX_VARS, "too many variables");
        if nvars == MAX_VARS {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << nvars) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> VarSet {
        VarSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, var: VarIndex) -> bool {
        var.0 < MAX_VARS && self.0 & (1 << var.0) != 0
    }

    pub fn insert(&mut self, var: VarIndex) {
        self.0 |= 1 << var.0;
    }

    pub fn remove(&mut self, var: VarIndex) {
        self.0 &= !(1 << var.0);
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    /// Complement within `{x1, ..., xn}`.
    pub fn complement(self, nvars: usize) -> VarSet {
        VarSet::full(nvars).difference(self)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Variables in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = VarIndex> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(VarIndex(i))
            }
        })
    }
}

impl FromIterator<VarIndex> for VarSet {
    fn from_iter<I: IntoIterator<Item = VarIndex>>(iter: I) -> Self {
        let mut set = VarSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Power product `x1^e1 * ... * xn^en`.
///
/// The total degree is cached next to the exponent vector since every order
/// comparison starts with it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars].into_boxed_slice(), degree: 0 }
    }

    /// The monomial `x_{var}` (zero-based index).
    pub fn var(nvars: usize, var: VarIndex) -> Monomial {
        assert!(var.0 < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[var.0] = 1;
        Monomial { exps: exps.into_boxed_slice(), degree: 1 }
    }

    pub fn new(exps: Vec<u32>) -> Result<Monomial> {
        let mut degree = 0u32;
        for &e in &exps {
            degree = degree.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial { exps: exps.into_boxed_slice(), degree })
    }

    /// Panicking convenience constructor for literals.
    pub fn from_exponents(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec()).expect("exponent overflow")
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// `deg_i(u)` for the zero-based variable `var`.
    pub fn exponent(&self, var: VarIndex) -> u32 {
        self.exps[var.0]
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn check_dim(&self, other: &Monomial) -> Result<()> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::DimensionMismatch { expected: self.exps.len(), found: other.exps.len() });
        }
        Ok(())
    }

    /// Ordinary divisibility: `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.exps.len(), other.exps.len(), "dimension mismatch");
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn try_divides(&self, other: &Monomial) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.divides(other))
    }

    /// `self ⊏ other`: divides with strictly smaller total degree.
    pub fn proper_divides(&self, other: &Monomial) -> bool {
        self.degree < other.degree && self.divides(other)
    }

    pub fn try_proper_divides(&self, other: &Monomial) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.proper_divides(other))
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dim(other)?;
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        let degree = self.degree.checked_add(other.degree).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial { exps: exps.into_boxed_slice(), degree })
    }

    /// Product; panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial multiplication failed")
    }

    /// `self * x_var`; panics on exponent overflow.
    pub fn mul_var(&self, var: VarIndex) -> Monomial {
        let mut exps = self.exps.clone();
        exps[var.0] = exps[var.0].checked_add(1).expect("exponent overflow");
        Monomial { exps, degree: self.degree.checked_add(1).expect("exponent overflow") }
    }

    /// Exact quotient `self / divisor` when `divisor | self`.
    pub fn quotient(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let exps: Box<[u32]> = self.exps.iter().zip(divisor.exps.iter()).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: self.degree - divisor.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len(), "dimension mismatch");
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        Monomial::new(exps).expect("exponent overflow")
    }

    /// Variables occurring with positive exponent.
    pub fn support(&self) -> VarSet {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| VarIndex(i)).collect()
    }
}

/// Minimum total degree over a nonempty set of monomials.
pub fn mindeg<'a, I>(monomials: I) -> Result<u32>
where
    I: IntoIterator<Item = &'a Monomial>,
{
    monomials.into_iter().map(Monomial::total_degree).min().ok_or(Error::EmptySet)
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
