//! Finite permutation groups with a fully enumerated, canonically ordered element list.
//!
//! Elements are addressed by their index in the canonical (lexicographic on
//! images) order; index 0 is always the identity. Subgroups are bitsets over
//! these indices together with a small generating set.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{GroupError, Result};
use crate::perm::Perm;

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;
pub const DEFAULT_LATTICE_THRESHOLD: usize = 2000;
pub const DEFAULT_CARRIER_CAP: usize = 10_000;

/// Groups up to this order get a precomputed multiplication table.
const TABLE_CAP: usize = 2048;

/// Size limits shared by the constructors and deciders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: usize,
    pub lattice_threshold: usize,
    pub carrier_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: DEFAULT_ELEMENT_CAP,
            lattice_threshold: DEFAULT_LATTICE_THRESHOLD,
            carrier_cap: DEFAULT_CARRIER_CAP,
        }
    }
}

/// Fixed-size bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn new(len: usize) -> Self {
        ElementSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Returns true if the element was newly inserted.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    /// Lexicographic comparison of the ascending index sequences.
    pub fn cmp_indices(&self, other: &ElementSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup of some parent [`Group`], as a set of element indices.
///
/// Equality and hashing use the element set only.
#[derive(Clone, Debug)]
pub struct Subgroup {
    set: ElementSet,
    order: usize,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(i)
    }

    /// Element indices in ascending (canonical) order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter()
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    /// Order first, then the ascending index sequence.
    pub fn canonical_cmp(&self, other: &Subgroup) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.set.cmp_indices(&other.set))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.set.hash(state)
    }
}

/// A finite group of permutations of `{0, …, degree-1}`.
#[derive(Clone)]
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    generator_indices: Vec<usize>,
    /// Points whose images determine an element.
    base: Vec<usize>,
    by_base: HashMap<Vec<u32>, u32>,
    table: OnceLock<Option<Vec<u32>>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for Group {}

/// Greedy base: points are added while they separate more elements.
fn base_points(degree: usize, elements: &[Perm]) -> Vec<usize> {
    let mut base = Vec::new();
    let mut classes = 1;
    for x in 0..degree {
        if classes == elements.len() {
            break;
        }
        base.push(x);
        let keys: HashSet<Vec<usize>> = elements
            .iter()
            .map(|p| base.iter().map(|&b| p.apply(b)).collect())
            .collect();
        if keys.len() > classes {
            classes = keys.len();
        } else {
            base.pop();
        }
    }
    base
}

/// Closure of `generators` with the default element cap.
pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Group> {
    Group::generate(degree, generators, DEFAULT_ELEMENT_CAP)
}

impl Group {
    /// Enumerates the closure of `generators` under composition.
    ///
    /// Fails with [`GroupError::TooLarge`] once more than `cap` elements are found.
    pub fn generate(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Group> {
        if degree == 0 {
            return Err(GroupError::InvalidParameter(
                "degree must be positive".into(),
            ));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut list = vec![id.clone()];
        seen.insert(id);
        let mut head = 0;
        while head < list.len() {
            let x = list[head].clone();
            head += 1;
            for g in &generators {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if list.len() >= cap {
                        return Err(GroupError::TooLarge { cap });
                    }
                    seen.insert(y.clone());
                    list.push(y);
                }
            }
        }
        drop(seen);
        list.sort_unstable();
        Ok(Self::from_sorted(degree, generators, list))
    }

    fn from_sorted(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Group {
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        let base = base_points(degree, &elements);
        let by_base = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (base.iter().map(|&b| p.apply(b) as u32).collect(), i as u32))
            .collect();
        Group {
            degree,
            generators,
            elements,
            index,
            inverses,
            generator_indices,
            base,
            by_base,
            table: OnceLock::new(),
        }
    }

    fn mul_by_base(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (&self.elements[a], &self.elements[b]);
        let key: Vec<u32> = self.base.iter().map(|&x| pb.apply(pa.apply(x)) as u32).collect();
        self.by_base[&key] as usize
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn perm(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    fn table(&self) -> Option<&[u32]> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n > TABLE_CAP {
                    return None;
                }
                let mut t = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        t.push(self.mul_by_base(a, b) as u32);
                    }
                }
                Some(t)
            })
            .as_deref()
    }

    /// Index of `perm(a) * perm(b)` (apply `a`, then `b`).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.mul_by_base(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Index of `x^-1 a x`.
    #[inline]
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inverses[x], a), x)
    }

    /// Index of `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.elements[a].order()
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian_subgroup(&self.whole())
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let g = h.generators();
        g.iter()
            .enumerate()
            .all(|(k, &a)| g[k + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// Distinct non-identity generator indices.
    pub fn nontrivial_generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = self
            .generator_indices
            .iter()
            .copied()
            .filter(|&g| g != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    pub fn whole(&self) -> Subgroup {
        let gens = self.nontrivial_generators();
        Subgroup {
            set: ElementSet::full(self.order()),
            order: self.order(),
            gens,
        }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut set = ElementSet::new(self.order());
        set.insert(0);
        Subgroup {
            set,
            order: 1,
            gens: Vec::new(),
        }
    }

    /// Ensures `h` was built over this group's element indexing.
    pub fn check_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.set.universe() != self.order() {
            return Err(GroupError::ForeignSubgroup);
        }
        Ok(())
    }

    /// Subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut h = self.trivial();
        for &g in gens {
            h = self.join(&h, g);
        }
        h
    }

    /// `<h, g>`, built coset by coset from `h`.
    pub fn join(&self, h: &Subgroup, g: usize) -> Subgroup {
        if h.contains(g) {
            return h.clone();
        }
        let mut gens = h.gens.clone();
        gens.push(g);
        let base: Vec<usize> = h.elements().collect();
        let mut set = h.set.clone();
        let mut order = h.order;
        let mut reps = vec![0usize];
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head];
            head += 1;
            for &s in &gens {
                let y = self.mul(r, s);
                if !set.contains(y) {
                    for &b in &base {
                        set.insert(self.mul(b, y));
                    }
                    order += base.len();
                    reps.push(y);
                }
            }
        }
        Subgroup { set, order, gens }
    }

    /// Subgroup generated by a set of element indices (closure of the set).
    pub fn closure_of_set(&self, set: &ElementSet) -> Subgroup {
        let mut h = self.trivial();
        for i in set.iter() {
            if !h.contains(i) {
                h = self.join(&h, i);
            }
        }
        h
    }

    /// Wraps a set that is known to be closed; errors if it is not.
    pub fn subgroup_from_set(&self, set: ElementSet) -> Result<Subgroup> {
        if set.universe() != self.order() {
            return Err(GroupError::ForeignSubgroup);
        }
        let h = self.closure_of_set(&set);
        if h.set != set {
            return Err(GroupError::NotClosed);
        }
        Ok(h)
    }

    pub fn subgroup_from_perms(&self, perms: &[Perm]) -> Result<Subgroup> {
        let idx = self.indices_of(perms)?;
        Ok(self.closure(&idx))
    }

    pub fn indices_of(&self, perms: &[Perm]) -> Result<Vec<usize>> {
        perms
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| GroupError::NotInGroup(p.clone()))
            })
            .collect()
    }

    /// The subgroup as a standalone permutation group on the same points.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Group {
        let gens: Vec<Perm> = h.gens.iter().map(|&i| self.elements[i].clone()).collect();
        let elements: Vec<Perm> = h.elements().map(|i| self.elements[i].clone()).collect();
        // indices ascend, so the element list is already sorted
        Self::from_sorted(self.degree, gens, elements)
    }

    /// Returns a pair `(h, g)` with `h^g` outside `n` if `n` is not normal.
    pub fn normality_witness(&self, n: &Subgroup) -> Option<(usize, usize)> {
        for g in self.nontrivial_generators() {
            for &h in &n.gens {
                if !n.contains(self.conj(h, g)) {
                    return Some((h, g));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.normality_witness(n).is_none()
    }

    /// Coset label for every element with respect to the right cosets `n x`.
    /// Labels are assigned in order of each coset's least element.
    pub fn right_cosets(&self, n: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let mut label = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        let members: Vec<usize> = n.elements().collect();
        for x in 0..self.order() {
            if label[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &m in &members {
                label[self.mul(m, x)] = c;
            }
        }
        (label, reps)
    }

    /// `G / N` acting on the right cosets of `N`; its degree is `|G:N|`.
    pub fn quotient(&self, n: &Subgroup) -> Result<Group> {
        self.check_subgroup(n)?;
        if let Some((h, g)) = self.normality_witness(n) {
            return Err(GroupError::NotNormal {
                h: self.elements[h].clone(),
                g: self.elements[g].clone(),
            });
        }
        let (label, reps) = self.right_cosets(n);
        let index = reps.len();
        let gens: Vec<Perm> = self
            .generator_indices
            .iter()
            .map(|&g| {
                let images = reps.iter().map(|&r| label[self.mul(r, g)]).collect();
                Perm::from_images(images).expect("coset action is a permutation")
            })
            .collect();
        Group::generate(index, gens, usize::MAX)
    }

    /// All elements of the orbit of `seed` under `x ↦ g^-1 x g`, discovered breadth-first.
    pub(crate) fn conjugacy_class(&self, seed: usize) -> Vec<usize> {
        let gens = self.nontrivial_generators();
        let mut seen = HashSet::from([seed]);
        let mut queue = VecDeque::from([seed]);
        let mut out = vec![seed];
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.conj(x, g);
                if seen.insert(y) {
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// One representative (the least index) per conjugacy class.
    pub fn class_representatives(&self) -> Vec<usize> {
        let mut done = vec![false; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() {
            if done[x] {
                continue;
            }
            reps.push(x);
            for y in self.conjugacy_class(x) {
                done[y] = true;
            }
        }
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn p(s: &str, n: usize) -> Perm {
        parse_cycles(s, Some(n)).unwrap()
    }

    fn sym(n: usize) -> Group {
        let cycle: Vec<usize> = (0..n).collect();
        generate(
            n,
            vec![p("(0 1)", n), Perm::from_cycles(n, &[cycle]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn sym3_has_six_elements() {
        let g = generate(3, vec![p("(0 1)", 3), p("(0 1 2)", 3)]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.perm(0).is_identity());
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_generating_set_is_trivial() {
        let g = generate(1, vec![]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = generate(3, vec![p("(0 1)", 4)]).unwrap_err();
        assert_eq!(
            err,
            GroupError::DegreeMismatch {
                expected: 3,
                found: 4
            }
        );
    }

    #[test]
    fn cap_is_an_error() {
        let err = Group::generate(5, sym(5).generators().to_vec(), 100).unwrap_err();
        assert_eq!(err, GroupError::TooLarge { cap: 100 });
    }

    #[test]
    fn regeneration_is_idempotent() {
        let g = sym(4);
        let again = generate(4, g.elements().to_vec()).unwrap();
        assert_eq!(again.elements(), g.elements());
    }

    #[test]
    fn join_matches_closure_from_scratch() {
        let g = sym(4);
        let a = g.index_of(&p("(0 1)", 4)).unwrap();
        let b = g.index_of(&p("(2 3)", 4)).unwrap();
        let c = g.index_of(&p("(0 2)(1 3)", 4)).unwrap();
        let h = g.closure(&[a, b]);
        assert_eq!(h.order(), 4);
        let k = g.join(&h, c);
        assert_eq!(k.order(), 8);
        assert_eq!(k.order(), k.set().count());
    }

    #[test]
    fn quotient_orders() {
        let s3 = sym(3);
        let a3 = s3.closure(&[s3.index_of(&p("(0 1 2)", 3)).unwrap()]);
        let q = s3.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.degree(), 2);

        let s4 = sym(4);
        let v4 = s4
            .subgroup_from_perms(&[p("(0 1)(2 3)", 4), p("(0 2)(1 3)", 4)])
            .unwrap();
        let q = s4.quotient(&v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());

        let q = s4.quotient(&s4.whole()).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_by_non_normal_gives_witness() {
        let s3 = sym(3);
        let h = s3.subgroup_from_perms(&[p("(0 1)", 3)]).unwrap();
        match s3.quotient(&h) {
            Err(GroupError::NotNormal { h: x, g }) => {
                let conj = s3.index_of(&x.conjugate_by(&g)).unwrap();
                assert!(!h.contains(conj));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lagrange_and_element_orders_in_sym4() {
        let g = sym(4);
        assert_eq!(24 % g.order(), 0);
        for i in 0..g.order() {
            assert_eq!(g.order() as u64 % g.element_order(i), 0);
        }
    }

    #[test]
    fn subgroup_from_unclosed_set_fails() {
        let g = sym(3);
        let mut s = ElementSet::new(6);
        s.insert(0);
        s.insert(g.index_of(&p("(0 1 2)", 3)).unwrap());
        assert_eq!(g.subgroup_from_set(s), Err(GroupError::NotClosed));
    }
}
