//! Subgroup lattices and the conjugation queries built on them.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::error::{GroupError, Result};
use crate::group::{ElementSet, Group, Subgroup};
use crate::perm::Perm;

/// `{x ∈ G : x s = s x for all s}`.
pub fn centralizer(g: &Group, s: &[Perm]) -> Result<Subgroup> {
    let idx = g.indices_of(s)?;
    Ok(centralizer_of_indices(g, &idx))
}

pub(crate) fn centralizer_of_indices(g: &Group, s: &[usize]) -> Subgroup {
    let mut set = ElementSet::new(g.order());
    for x in 0..g.order() {
        if s.iter().all(|&a| g.commute(a, x)) {
            set.insert(x);
        }
    }
    g.closure_of_set(&set)
}

/// `C_G(H)`, checking commutation with the generators of `h` only.
pub fn centralizer_of(g: &Group, h: &Subgroup) -> Result<Subgroup> {
    g.check_subgroup(h)?;
    Ok(centralizer_of_indices(g, h.generators()))
}

/// `N_G(H) = {x ∈ G : H^x = H}`.
pub fn normalizer(g: &Group, h: &Subgroup) -> Result<Subgroup> {
    g.check_subgroup(h)?;
    let mut set = ElementSet::new(g.order());
    for x in 0..g.order() {
        if h.generators().iter().all(|&a| h.contains(g.conj(a, x))) {
            set.insert(x);
        }
    }
    Ok(g.closure_of_set(&set))
}

/// `H^x` as an element set.
pub(crate) fn conjugate_set(g: &Group, h: &Subgroup, x: usize) -> ElementSet {
    let mut set = ElementSet::new(g.order());
    for a in h.elements() {
        set.insert(g.conj(a, x));
    }
    set
}

/// The distinct conjugates of `h`, found as its orbit under conjugation by the
/// generators of `g`, in canonical order.
pub fn conjugates(g: &Group, h: &Subgroup) -> Result<Vec<Subgroup>> {
    g.check_subgroup(h)?;
    let gens = g.nontrivial_generators();
    let mut seen: HashSet<ElementSet> = HashSet::from([h.set().clone()]);
    let mut queue = VecDeque::from([h.clone()]);
    let mut out = vec![h.clone()];
    while let Some(k) = queue.pop_front() {
        for &s in &gens {
            let set = conjugate_set(g, &k, s);
            if seen.insert(set.clone()) {
                let conj_gens: Vec<usize> = k.generators().iter().map(|&a| g.conj(a, s)).collect();
                let c = g.closure(&conj_gens);
                debug_assert!(c.set() == &set);
                out.push(c.clone());
                queue.push_back(c);
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// Smallest subgroup of `within` that contains `seeds` and is normalized by `within`.
pub fn normal_closure(g: &Group, within: &Subgroup, seeds: &[usize]) -> Subgroup {
    let mut n = g.closure(seeds);
    loop {
        let mut grown = false;
        let gens = n.generators().to_vec();
        for &a in &gens {
            for &k in within.generators() {
                let c = g.conj(a, k);
                if !n.contains(c) {
                    n = g.join(&n, c);
                    grown = true;
                }
            }
        }
        if !grown {
            return n;
        }
    }
}

/// True iff the chain `K_0 = G`, `K_{i+1}` = normal closure of `H` in `K_i`
/// stabilizes at `H`.
pub fn is_subnormal(g: &Group, h: &Subgroup) -> Result<bool> {
    g.check_subgroup(h)?;
    let mut k = g.whole();
    loop {
        let next = normal_closure(g, &k, h.generators());
        if next == k {
            return Ok(k == *h);
        }
        k = next;
    }
}

/// Every subgroup of a group, in canonical order (by order, then element indices).
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    by_order: BTreeMap<usize, Vec<usize>>,
    ids: HashMap<ElementSet, usize>,
}

/// Enumerates all subgroups by joining every known subgroup with every cyclic
/// subgroup until no new subgroup appears.
pub fn all_subgroups(g: &Group, threshold: usize) -> Result<SubgroupLattice> {
    if g.order() > threshold {
        return Err(GroupError::LatticeTooLarge {
            order: g.order(),
            threshold,
        });
    }
    let cyclic_generators = cyclic_subgroup_generators(g);
    let trivial = g.trivial();
    let mut seen: HashSet<ElementSet> = HashSet::from([trivial.set().clone()]);
    let mut found = vec![trivial];
    let mut head = 0;
    while head < found.len() {
        let h = found[head].clone();
        head += 1;
        for &c in &cyclic_generators {
            if h.contains(c) {
                continue;
            }
            let k = g.join(&h, c);
            if !seen.contains(k.set()) {
                seen.insert(k.set().clone());
                found.push(k);
            }
        }
    }
    Ok(SubgroupLattice::from_subgroups(found))
}

/// One generator per cyclic subgroup (the least index generating it).
pub(crate) fn cyclic_subgroup_generators(g: &Group) -> Vec<usize> {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut out = Vec::new();
    for x in 1..g.order() {
        let c = g.closure(&[x]);
        if seen.insert(c.set().clone()) {
            out.push(x);
        }
    }
    out
}

impl SubgroupLattice {
    fn from_subgroups(mut subgroups: Vec<Subgroup>) -> Self {
        subgroups.sort_by(|a, b| a.canonical_cmp(b));
        let mut by_order: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut ids = HashMap::new();
        for (i, h) in subgroups.iter().enumerate() {
            by_order.entry(h.order()).or_default().push(i);
            ids.insert(h.set().clone(), i);
        }
        SubgroupLattice {
            subgroups,
            by_order,
            ids,
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subgroup> {
        self.subgroups.iter()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn id_of(&self, h: &Subgroup) -> Option<usize> {
        self.ids.get(h.set()).copied()
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.ids.contains_key(h.set())
    }

    /// Ids of the subgroups of the given order.
    pub fn of_order(&self, order: usize) -> &[usize] {
        self.by_order.get(&order).map_or(&[], |v| v.as_slice())
    }

    pub fn orders(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_order.iter().map(|(&o, ids)| (o, ids.len()))
    }

    pub fn normal_subgroups<'a>(&'a self, g: &'a Group) -> impl Iterator<Item = &'a Subgroup> + 'a {
        self.subgroups.iter().filter(move |h| g.is_normal(h))
    }

    /// Maximal proper subgroups.
    pub fn maximal_subgroups(&self) -> Vec<&Subgroup> {
        let n = self.subgroups.len();
        let top = &self.subgroups[n - 1];
        self.subgroups[..n - 1]
            .iter()
            .filter(|h| {
                !self.subgroups[..n - 1]
                    .iter()
                    .any(|k| k.order() > h.order() && h.is_subgroup_of(k))
            })
            .filter(|h| *h != top)
            .collect()
    }

    /// Intersection of the maximal subgroups (the whole group if there are none).
    pub fn frattini(&self, g: &Group) -> Subgroup {
        let mut set = ElementSet::full(g.order());
        for m in self.maximal_subgroups() {
            set = set.intersection(m.set());
        }
        g.closure_of_set(&set)
    }

    /// Subgroups of `h` (as lattice ids), `h` included.
    pub fn subgroups_of<'a>(&'a self, h: &'a Subgroup) -> impl Iterator<Item = usize> + 'a {
        self.subgroups
            .iter()
            .enumerate()
            .filter(move |(_, k)| {
                k.order() <= h.order() && h.order().is_multiple_of(k.order()) && k.is_subgroup_of(h)
            })
            .map(|(i, _)| i)
    }
}
