//! Janet division.
//!
//! For a finite monomial set `U`, the variable `x_i` is multiplicative for
//! `u ∈ U` when `deg_i(u)` is maximal among the elements of `U` that agree
//! with `u` in the exponents of `x_1, ..., x_{i-1}`. Those nested groups are
//! exactly the nodes of a prefix tree over exponent vectors, which is what
//! [`JanetTree`] stores: `x_i` is multiplicative for `u` iff `u` sits under
//! the last (highest-degree) child of its level-`i` node.

use std::collections::HashMap;

use crate::poly::{Monomial, VarIndex, VarSet};
use crate::{Error, Result};

/// Multiplicative variables for every element of a monomial set.
#[derive(Clone, Debug, Default)]
pub struct JanetPartition {
    nvars: usize,
    entries: Vec<(Monomial, VarSet)>,
    index: HashMap<Monomial, usize>,
}

impl JanetPartition {
    fn from_entries(nvars: usize, entries: Vec<(Monomial, VarSet)>) -> JanetPartition {
        let index = entries.iter().enumerate().map(|(i, (m, _))| (m.clone(), i)).collect();
        JanetPartition { nvars, entries, index }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, VarSet)> {
        self.entries.iter().map(|(m, s)| (m, *s))
    }

    /// `M_J(u, U)`; `None` if `u ∉ U`.
    pub fn multiplicative(&self, u: &Monomial) -> Option<VarSet> {
        self.index.get(u).map(|&i| self.entries[i].1)
    }

    /// `NM_J(u, U)`; `None` if `u ∉ U`.
    pub fn non_multiplicative(&self, u: &Monomial) -> Option<VarSet> {
        self.multiplicative(u).map(|m| m.complement(self.nvars))
    }

    /// Every element of the set that Janet-divides `v`, by linear scan.
    /// Janet division guarantees at most one.
    pub fn janet_divisors(&self, v: &Monomial) -> Vec<&Monomial> {
        self.entries
            .iter()
            .filter(|(u, mult)| v.quotient(u).is_some_and(|w| w.support().difference(*mult).is_empty()))
            .map(|(u, _)| u)
            .collect()
    }

    /// The Janet divisor of `v` by linear scan.
    pub fn janet_divisor(&self, v: &Monomial) -> Option<&Monomial> {
        self.janet_divisors(v).into_iter().next()
    }
}

// Set equality: entry order does not matter.
impl PartialEq for JanetPartition {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.entries.len() == other.entries.len()
            && self.entries.iter().all(|(m, s)| other.multiplicative(m) == Some(*s))
    }
}

impl Eq for JanetPartition {}

/// Computes `M_J(u, U)` for every `u ∈ U` by materialising the groups
/// `[d_0, ..., d_i]` one level at a time. Duplicates are removed.
pub fn janet_partition(monomials: &[Monomial]) -> Result<JanetPartition> {
    let first = monomials.first().ok_or(Error::EmptySet)?;
    let nvars = first.nvars();
    let mut set: Vec<Monomial> = Vec::with_capacity(monomials.len());
    for u in monomials {
        if u.nvars() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: u.nvars() });
        }
        if !set.contains(u) {
            set.push(u.clone());
        }
    }

    let entries = set
        .iter()
        .map(|u| {
            let mut mult = VarSet::EMPTY;
            // [d_0] is the whole set.
            let mut group: Vec<&Monomial> = set.iter().collect();
            for i in 0..nvars {
                let var = VarIndex(i);
                let max = group.iter().map(|v| v.exponent(var)).max().unwrap_or(0);
                if u.exponent(var) == max {
                    mult.insert(var);
                }
                let next: Vec<&Monomial> =
                    group.iter().copied().filter(|v| v.exponent(var) == u.exponent(var)).collect();
                debug_assert!(next.len() <= group.len() && next.iter().all(|v| group.contains(v)));
                group = next;
            }
            (u.clone(), mult)
        })
        .collect();
    Ok(JanetPartition::from_entries(nvars, entries))
}

/// Janet divisor of `v` in `U` (linear scan over a freshly computed partition).
pub fn janet_divisor(v: &Monomial, monomials: &[Monomial]) -> Result<Option<Monomial>> {
    let partition = janet_partition(monomials)?;
    Ok(partition.janet_divisor(v).cloned())
}

#[derive(Clone, Debug)]
enum Node<H> {
    /// Children sorted by strictly increasing exponent of this level's variable.
    Branch(Vec<(u32, Node<H>)>),
    Leaf(Monomial, H),
}

/// Prefix tree over exponent vectors, branching on `deg_1`, then `deg_2`, ...
///
/// Leaves carry a caller-chosen handle, typically an index into a basis.
#[derive(Clone, Debug)]
pub struct JanetTree<H> {
    nvars: usize,
    root: Option<Node<H>>,
    len: usize,
}

impl<H: Clone> JanetTree<H> {
    pub fn new(nvars: usize) -> JanetTree<H> {
        JanetTree { nvars, root: None, len: 0 }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check_dim(&self, u: &Monomial) -> Result<()> {
        if u.nvars() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: u.nvars() });
        }
        Ok(())
    }

    /// Adds `u`; duplicates are rejected.
    pub fn insert(&mut self, u: Monomial, handle: H) -> Result<()> {
        self.check_dim(&u)?;
        if self.contains(&u) {
            return Err(Error::DuplicateMonomial(u.to_string()));
        }
        match &mut self.root {
            None => self.root = Some(build_path(&u, 0, self.nvars, handle)),
            Some(root) => insert_rec(root, &u, 0, self.nvars, handle),
        }
        self.len += 1;
        Ok(())
    }

    /// Removes `u` and returns its handle.
    pub fn remove(&mut self, u: &Monomial) -> Result<H> {
        self.check_dim(u)?;
        let absent = || Error::AbsentMonomial(u.to_string());
        let root = self.root.as_mut().ok_or_else(absent)?;
        let handle = remove_rec(root, u, 0).ok_or_else(absent)?;
        if matches!(root, Node::Branch(c) if c.is_empty()) || matches!(root, Node::Leaf(..)) {
            self.root = None;
        }
        self.len -= 1;
        Ok(handle)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.get(u).is_some()
    }

    pub fn get(&self, u: &Monomial) -> Option<&H> {
        if u.nvars() != self.nvars {
            return None;
        }
        let mut node = self.root.as_ref()?;
        let mut level = 0;
        loop {
            match node {
                Node::Leaf(m, h) => return (m == u).then_some(h),
                Node::Branch(children) => {
                    let d = u.exponent(VarIndex(level));
                    let pos = children.binary_search_by_key(&d, |(k, _)| *k).ok()?;
                    node = &children[pos].1;
                    level += 1;
                }
            }
        }
    }

    /// The unique element `u` with `v = u * w` and every variable of `w`
    /// multiplicative for `u`.
    pub fn janet_divisor(&self, v: &Monomial) -> Option<(&Monomial, &H)> {
        debug_assert_eq!(v.nvars(), self.nvars);
        let mut node = self.root.as_ref()?;
        let mut level = 0;
        loop {
            match node {
                Node::Leaf(m, h) => return Some((m, h)),
                Node::Branch(children) => {
                    let d = v.exponent(VarIndex(level));
                    let (last_deg, last) = children.last().expect("empty branch");
                    node = if *last_deg <= d {
                        // Either exact match or x_level in the quotient, which
                        // is only allowed on the last child.
                        last
                    } else {
                        let pos = children.binary_search_by_key(&d, |(k, _)| *k).ok()?;
                        &children[pos].1
                    };
                    level += 1;
                }
            }
        }
    }

    /// `M_J(u, U)` read off the tree path of `u`.
    pub fn multiplicative(&self, u: &Monomial) -> Option<VarSet> {
        if u.nvars() != self.nvars {
            return None;
        }
        let mut node = self.root.as_ref()?;
        let mut level = 0;
        let mut mult = VarSet::EMPTY;
        loop {
            match node {
                Node::Leaf(m, _) => return (m == u).then_some(mult),
                Node::Branch(children) => {
                    let d = u.exponent(VarIndex(level));
                    let pos = children.binary_search_by_key(&d, |(k, _)| *k).ok()?;
                    if pos + 1 == children.len() {
                        mult.insert(VarIndex(level));
                    }
                    node = &children[pos].1;
                    level += 1;
                }
            }
        }
    }

    pub fn non_multiplicative(&self, u: &Monomial) -> Option<VarSet> {
        self.multiplicative(u).map(|m| m.complement(self.nvars))
    }

    /// Leaves in tree order together with their multiplicative variables.
    pub fn entries(&self) -> Vec<(&Monomial, &H, VarSet)> {
        let mut out = Vec::with_capacity(self.len);
        if let Some(root) = &self.root {
            collect(root, 0, VarSet::EMPTY, &mut out);
        }
        out
    }

    /// The full partition of the indexed set.
    pub fn partition(&self) -> JanetPartition {
        let entries = self.entries().into_iter().map(|(m, _, s)| (m.clone(), s)).collect();
        JanetPartition::from_entries(self.nvars, entries)
    }
}

fn build_path<H>(u: &Monomial, level: usize, nvars: usize, handle: H) -> Node<H> {
    if level == nvars {
        Node::Leaf(u.clone(), handle)
    } else {
        Node::Branch(vec![(u.exponent(VarIndex(level)), build_path(u, level + 1, nvars, handle))])
    }
}

fn insert_rec<H>(node: &mut Node<H>, u: &Monomial, level: usize, nvars: usize, handle: H) {
    match node {
        Node::Leaf(..) => unreachable!("duplicate leaf"),
        Node::Branch(children) => {
            let d = u.exponent(VarIndex(level));
            match children.binary_search_by_key(&d, |(k, _)| *k) {
                Ok(pos) => insert_rec(&mut children[pos].1, u, level + 1, nvars, handle),
                Err(pos) => children.insert(pos, (d, build_path(u, level + 1, nvars, handle))),
            }
        }
    }
}

fn remove_rec<H: Clone>(node: &mut Node<H>, u: &Monomial, level: usize) -> Option<H> {
    match node {
        Node::Leaf(m, h) => (m == u).then(|| h.clone()),
        Node::Branch(children) => {
            let d = u.exponent(VarIndex(level));
            let pos = children.binary_search_by_key(&d, |(k, _)| *k).ok()?;
            let handle = remove_rec(&mut children[pos].1, u, level + 1)?;
            let prune = match &children[pos].1 {
                Node::Leaf(..) => true,
                Node::Branch(c) => c.is_empty(),
            };
            if prune {
                children.remove(pos);
            }
            Some(handle)
        }
    }
}

fn collect<'a, H>(node: &'a Node<H>, level: usize, mult: VarSet, out: &mut Vec<(&'a Monomial, &'a H, VarSet)>) {
    match node {
        Node::Leaf(m, h) => out.push((m, h, mult)),
        Node::Branch(children) => {
            let last = children.len() - 1;
            for (pos, (_, child)) in children.iter().enumerate() {
                let mut m = mult;
                if pos == last {
                    m.insert(VarIndex(level));
                }
                collect(child, level + 1, m, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    fn vs(vars: &[usize]) -> VarSet {
        vars.iter().map(|&i| VarIndex(i)).collect()
    }

    fn tree(us: &[&[u32]]) -> JanetTree<usize> {
        let mut t = JanetTree::new(us[0].len());
        for (i, u) in us.iter().enumerate() {
            t.insert(m(u), i).unwrap();
        }
        t
    }

    #[test]
    fn singleton_has_every_variable_multiplicative() {
        let p = janet_partition(&[m(&[1, 2, 0])]).unwrap();
        assert_eq!(p.multiplicative(&m(&[1, 2, 0])), Some(VarSet::full(3)));
        let t = tree(&[&[1, 2, 0]]);
        assert_eq!(t.multiplicative(&m(&[1, 2, 0])), Some(VarSet::full(3)));
    }

    #[test]
    fn partition_of_quadratic_staircase() {
        let us = [m(&[2, 0]), m(&[1, 1]), m(&[0, 2])];
        let p = janet_partition(&us).unwrap();
        assert_eq!(p.multiplicative(&us[0]), Some(vs(&[0, 1])));
        assert_eq!(p.multiplicative(&us[1]), Some(vs(&[1])));
        assert_eq!(p.multiplicative(&us[2]), Some(vs(&[1])));
        assert_eq!(tree(&[&[2, 0], &[1, 1], &[0, 2]]).partition(), p);
    }

    #[test]
    fn partition_of_x2_and_y() {
        let p = janet_partition(&[m(&[2, 0]), m(&[0, 1])]).unwrap();
        assert_eq!(p.multiplicative(&m(&[2, 0])), Some(vs(&[0, 1])));
        assert_eq!(p.multiplicative(&m(&[0, 1])), Some(vs(&[1])));
        assert_eq!(p.non_multiplicative(&m(&[0, 1])), Some(vs(&[0])));
    }

    #[test]
    fn janet_divisor_examples() {
        let t = tree(&[&[1, 1]]);
        assert_eq!(t.janet_divisor(&m(&[1, 1])).map(|(u, _)| u.clone()), Some(m(&[1, 1])));

        let t = tree(&[&[2, 0], &[0, 1]]);
        assert_eq!(t.janet_divisor(&m(&[2, 1])).map(|(u, _)| u.clone()), Some(m(&[2, 0])));
        assert!(t.janet_divisor(&m(&[1, 1])).is_none());

        let t = tree(&[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(t.janet_divisor(&m(&[1, 2])).map(|(u, _)| u.clone()), Some(m(&[1, 1])));
        let p = t.partition();
        assert_eq!(p.janet_divisors(&m(&[1, 2])), vec![&m(&[1, 1])]);
        assert_eq!(janet_divisor(&m(&[1, 1]), &[m(&[2, 0]), m(&[0, 1])]).unwrap(), None);
    }

    #[test]
    fn insert_and_remove_update_partition() {
        let mut t = tree(&[&[2, 0], &[0, 1]]);
        t.insert(m(&[1, 1]), 7).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.multiplicative(&m(&[2, 0])), Some(vs(&[0, 1])));
        assert_eq!(t.multiplicative(&m(&[1, 1])), Some(vs(&[1])));
        assert_eq!(t.multiplicative(&m(&[0, 1])), Some(vs(&[1])));
        assert_eq!(t.remove(&m(&[1, 1])).unwrap(), 7);
        assert_eq!(t.partition(), janet_partition(&[m(&[2, 0]), m(&[0, 1])]).unwrap());

        let mut empty: JanetTree<()> = JanetTree::new(2);
        empty.insert(m(&[3, 1]), ()).unwrap();
        assert_eq!(empty.multiplicative(&m(&[3, 1])), Some(VarSet::full(2)));
    }

    #[test]
    fn error_paths() {
        let mut t = tree(&[&[2, 0], &[0, 1]]);
        assert!(matches!(t.insert(m(&[2, 0]), 9), Err(Error::DuplicateMonomial(_))));
        assert!(matches!(t.insert(m(&[0, 1]), 9), Err(Error::DuplicateMonomial(_))));
        assert_eq!(t.len(), 2);
        assert!(matches!(t.remove(&m(&[1, 1])), Err(Error::AbsentMonomial(_))));
        assert!(matches!(t.insert(m(&[1]), 0), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(janet_partition(&[]), Err(Error::EmptySet)));

        t.remove(&m(&[2, 0])).unwrap();
        t.remove(&m(&[0, 1])).unwrap();
        assert!(t.is_empty());
        assert!(matches!(t.remove(&m(&[0, 1])), Err(Error::AbsentMonomial(_))));
        t.insert(m(&[0, 1]), 1).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn zero_variable_ring() {
        let mut t: JanetTree<u8> = JanetTree::new(0);
        t.insert(Monomial::one(0), 1).unwrap();
        assert!(t.insert(Monomial::one(0), 2).is_err());
        assert_eq!(t.janet_divisor(&Monomial::one(0)).map(|(_, h)| *h), Some(1));
        assert_eq!(t.remove(&Monomial::one(0)).unwrap(), 1);
    }
}
