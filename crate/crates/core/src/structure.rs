//! Characteristic subgroups and structural predicates.

use serde::Serialize;

use crate::arith::{p_part, prime_divisors, prime_power};
use crate::error::{GroupError, Result};
use crate::group::{ElementSet, Group, Subgroup};
use crate::lattice::{
    centralizer_of_indices, conjugates, normal_closure, normalizer, SubgroupLattice,
};

/// `[K, L]` for subgroups `k`, `l` with `l` normalizing `k`, as the normal
/// closure in `within` of the generator commutators.
fn commutator_subgroup(g: &Group, k: &Subgroup, l: &Subgroup, within: &Subgroup) -> Subgroup {
    let mut seeds = Vec::new();
    for &a in k.generators() {
        for &b in l.generators() {
            let c = g.commutator(a, b);
            if c != 0 {
                seeds.push(c);
            }
        }
    }
    normal_closure(g, within, &seeds)
}

/// Derived subgroup of `h`, computed inside `g`.
pub fn derived_of(g: &Group, h: &Subgroup) -> Subgroup {
    commutator_subgroup(g, h, h, h)
}

pub fn derived_subgroup(g: &Group) -> Subgroup {
    derived_of(g, &g.whole())
}

pub fn center(g: &Group) -> Subgroup {
    centralizer_of_indices(g, &g.nontrivial_generators())
}

/// Derived series `G ≥ G' ≥ G'' ≥ …`, ending at its first repeated term.
pub fn derived_series(g: &Group) -> Vec<Subgroup> {
    let mut series = vec![g.whole()];
    loop {
        let last = series.last().unwrap();
        let next = derived_of(g, last);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

/// Lower central series `γ_1 = G`, `γ_{i+1} = [γ_i, G]`, ending at its first repeated term.
pub fn lower_central_series(g: &Group) -> Vec<Subgroup> {
    let whole = g.whole();
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(g, last, &whole, &whole);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

pub fn is_soluble(g: &Group) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

pub fn is_nilpotent(g: &Group) -> bool {
    lower_central_series(g).last().unwrap().is_trivial()
}

pub fn is_perfect(g: &Group) -> bool {
    derived_subgroup(g).order() == g.order()
}

/// `Some((p, k))` when `|G| = p^k`.
pub fn p_group_prime(g: &Group) -> Option<(u64, u32)> {
    prime_power(g.order() as u64)
}

/// A Sylow `p`-subgroup, grown from the trivial group inside successive normalizers.
///
/// Returns the trivial subgroup when `p` does not divide `|G|`.
pub fn sylow(g: &Group, p: u64) -> Subgroup {
    let target = p_part(g.order() as u64, p) as usize;
    let mut sub = g.trivial();
    while sub.order() < target {
        let n = normalizer(g, &sub).expect("own subgroup");
        // p divides |N(P):P| while P is not Sylow, so some x ∈ N \ P has x^p ∈ P
        let x = n
            .elements()
            .find(|&x| !sub.contains(x) && sub.contains(g.pow(x, p)))
            .expect("normalizer quotient has an element of order p");
        sub = g.join(&sub, x);
    }
    sub
}

/// `O_p(G)`: the intersection of all Sylow `p`-subgroups.
pub fn p_core(g: &Group, p: u64) -> Subgroup {
    let s = sylow(g, p);
    let mut set = ElementSet::full(g.order());
    for c in conjugates(g, &s).expect("own subgroup") {
        set = set.intersection(c.set());
    }
    g.closure_of_set(&set)
}

/// Fitting subgroup as the product of the `p`-cores.
pub fn fitting(g: &Group) -> Subgroup {
    let mut f = g.trivial();
    for p in prime_divisors(g.order() as u64) {
        let core = p_core(g, p);
        for &x in core.generators() {
            f = g.join(&f, x);
        }
    }
    f
}

/// Largest nilpotent normal subgroup found by scanning a lattice.
pub fn fitting_by_lattice(g: &Group, lattice: &SubgroupLattice) -> Subgroup {
    lattice
        .iter()
        .filter(|h| g.is_normal(h) && is_nilpotent(&g.subgroup_as_group(h)))
        .max_by_key(|h| h.order())
        .cloned()
        .expect("trivial subgroup is nilpotent and normal")
}

fn require_p_group(g: &Group) -> Result<u64> {
    match p_group_prime(g) {
        Some((p, _)) => Ok(p),
        None => Err(GroupError::NotPGroup { order: g.order() }),
    }
}

/// Frattini subgroup of a `p`-group: `G'` together with all `p`-th powers.
pub fn frattini_pgroup(g: &Group) -> Result<Subgroup> {
    if g.order() == 1 {
        return Ok(g.trivial());
    }
    let p = require_p_group(g)?;
    let mut phi = derived_subgroup(g);
    for x in 0..g.order() {
        let y = g.pow(x, p);
        if !phi.contains(y) {
            phi = g.join(&phi, y);
        }
    }
    Ok(phi)
}

/// Minimal number of generators of a `p`-group, `log_p |G/Φ(G)|`.
pub fn rank_pgroup(g: &Group) -> Result<u32> {
    if g.order() == 1 {
        return Ok(0);
    }
    let p = require_p_group(g)?;
    let phi = frattini_pgroup(g)?;
    let mut quotient = g.order() / phi.order();
    let mut d = 0;
    while quotient > 1 {
        quotient /= p as usize;
        d += 1;
    }
    Ok(d)
}

fn require_nonabelian_pgroup(g: &Group) -> Result<u64> {
    let p = require_p_group(g)?;
    if g.is_abelian() {
        return Err(GroupError::Abelian);
    }
    Ok(p)
}

/// `d(G) = 2` and `|G'| = p`, for a non-abelian `p`-group.
pub fn is_minimal_nonabelian(g: &Group) -> Result<bool> {
    let p = require_nonabelian_pgroup(g)?;
    Ok(rank_pgroup(g)? == 2 && derived_subgroup(g).order() as u64 == p)
}

/// Definitional test: every proper subgroup in the lattice is abelian.
pub fn is_minimal_nonabelian_by_lattice(g: &Group, lattice: &SubgroupLattice) -> Result<bool> {
    require_nonabelian_pgroup(g)?;
    Ok(lattice
        .iter()
        .filter(|h| h.order() < g.order())
        .all(|h| g.is_abelian_subgroup(h)))
}

/// The three equivalent descriptions of a minimal non-abelian `p`-group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinimalNonabelianLegs {
    pub proper_subgroups_abelian: bool,
    pub rank_two_derived_prime: bool,
    pub rank_two_center_is_frattini: bool,
}

impl MinimalNonabelianLegs {
    pub fn agree(&self) -> bool {
        self.proper_subgroups_abelian == self.rank_two_derived_prime
            && self.rank_two_derived_prime == self.rank_two_center_is_frattini
    }
}

pub fn minimal_nonabelian_legs(
    g: &Group,
    lattice: &SubgroupLattice,
) -> Result<MinimalNonabelianLegs> {
    let p = require_nonabelian_pgroup(g)?;
    let d = rank_pgroup(g)?;
    Ok(MinimalNonabelianLegs {
        proper_subgroups_abelian: is_minimal_nonabelian_by_lattice(g, lattice)?,
        rank_two_derived_prime: d == 2 && derived_subgroup(g).order() as u64 == p,
        rank_two_center_is_frattini: d == 2 && center(g) == frattini_pgroup(g)?,
    })
}

/// True iff the normal closure of every non-identity element is the whole group.
///
/// One element per conjugacy class is enough.
pub fn is_simple(g: &Group) -> Result<bool> {
    if g.order() == 1 {
        return Err(GroupError::TrivialGroup);
    }
    let whole = g.whole();
    for r in g.class_representatives().into_iter().skip(1) {
        if normal_closure(g, &whole, &[r]).order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_soluble: bool,
    pub is_simple: bool,
    pub is_perfect: bool,
    pub center: Subgroup,
    pub derived: Subgroup,
    pub fitting: Subgroup,
    pub prime_divisors: Vec<u64>,
}

pub fn structure_report(g: &Group) -> StructureReport {
    let derived = derived_subgroup(g);
    StructureReport {
        is_abelian: g.is_abelian(),
        is_nilpotent: is_nilpotent(g),
        is_soluble: is_soluble(g),
        is_simple: g.order() > 1 && is_simple(g).unwrap_or(false),
        is_perfect: derived.order() == g.order(),
        center: center(g),
        derived,
        fitting: fitting(g),
        prime_divisors: prime_divisors(g.order() as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        alternating, cyclic, dicyclic, dihedral, direct_product, heisenberg, psl2, symmetric,
    };
    use crate::lattice::all_subgroups;

    #[test]
    fn derived_subgroups() {
        assert!(derived_subgroup(&cyclic(12).unwrap()).is_trivial());
        assert_eq!(derived_subgroup(&symmetric(3).unwrap()).order(), 3);
        let q8 = dicyclic(2).unwrap();
        assert_eq!(derived_subgroup(&q8), center(&q8));
        assert_eq!(derived_subgroup(&q8).order(), 2);
    }

    #[test]
    fn centers() {
        assert_eq!(center(&cyclic(6).unwrap()).order(), 6);
        assert!(center(&symmetric(3).unwrap()).is_trivial());
        assert_eq!(center(&dihedral(4).unwrap()).order(), 2);
    }

    #[test]
    fn nilpotency_and_solubility() {
        for g in [
            dihedral(4).unwrap(),
            dicyclic(2).unwrap(),
            heisenberg(3).unwrap(),
            dihedral(8).unwrap(),
        ] {
            assert!(is_nilpotent(&g));
            assert!(is_soluble(&g));
        }
        let s3 = symmetric(3).unwrap();
        assert!(!is_nilpotent(&s3));
        assert!(is_soluble(&s3));
        let a5 = alternating(5).unwrap();
        assert!(!is_soluble(&a5));
        assert!(is_perfect(&a5));
    }

    #[test]
    fn sylow_subgroups() {
        let s4 = symmetric(4).unwrap();
        let p2 = sylow(&s4, 2);
        assert_eq!(p2.order(), 8);
        assert!(!s4.is_abelian_subgroup(&p2));
        assert!(sylow(&s4, 5).is_trivial());

        let c6 = cyclic(6).unwrap();
        let p3 = sylow(&c6, 3);
        assert_eq!(p3.order(), 3);
        let only: Vec<_> = (0..6).filter(|&x| c6.element_order(x) == 3).collect();
        assert!(only.iter().all(|&x| p3.contains(x)));

        let g = psl2(8).unwrap();
        let p2 = sylow(&g, 2);
        assert_eq!(p2.order(), 8);
        assert!(p2.elements().skip(1).all(|x| g.element_order(x) == 2));
    }

    #[test]
    fn fitting_subgroups() {
        let q8 = dicyclic(2).unwrap();
        assert_eq!(fitting(&q8).order(), 8);
        assert_eq!(fitting(&symmetric(3).unwrap()).order(), 3);
        let s4 = symmetric(4).unwrap();
        let f = fitting(&s4);
        assert_eq!(f.order(), 4);
        assert!(s4.is_normal(&f));
        assert!(f.elements().skip(1).all(|x| s4.element_order(x) == 2));
        assert!(fitting(&alternating(5).unwrap()).is_trivial());
    }

    #[test]
    fn fitting_matches_lattice_scan() {
        for g in [
            symmetric(4).unwrap(),
            dihedral(12).unwrap(),
            dicyclic(3).unwrap(),
            alternating(4).unwrap(),
        ] {
            let l = all_subgroups(&g, 2000).unwrap();
            assert_eq!(fitting(&g), fitting_by_lattice(&g, &l));
        }
    }

    #[test]
    fn frattini_and_rank() {
        let c5 = cyclic(5).unwrap();
        assert!(frattini_pgroup(&c5).unwrap().is_trivial());
        assert_eq!(rank_pgroup(&c5).unwrap(), 1);
        for g in [dicyclic(2).unwrap(), dihedral(4).unwrap()] {
            let phi = frattini_pgroup(&g).unwrap();
            assert_eq!(phi, center(&g));
            assert_eq!(phi.order(), 2);
            assert_eq!(rank_pgroup(&g).unwrap(), 2);
        }
        assert_eq!(
            frattini_pgroup(&symmetric(3).unwrap()).unwrap_err(),
            GroupError::NotPGroup { order: 6 }
        );
    }

    #[test]
    fn frattini_matches_maximal_intersection() {
        for g in [
            dihedral(8).unwrap(),
            heisenberg(3).unwrap(),
            dicyclic(4).unwrap(),
        ] {
            let l = all_subgroups(&g, 2000).unwrap();
            assert_eq!(frattini_pgroup(&g).unwrap(), l.frattini(&g));
        }
    }

    #[test]
    fn minimal_nonabelian() {
        assert!(is_minimal_nonabelian(&dicyclic(2).unwrap()).unwrap());
        assert!(is_minimal_nonabelian(&dihedral(4).unwrap()).unwrap());
        let d8 = dihedral(8).unwrap();
        assert!(!is_minimal_nonabelian(&d8).unwrap());
        let l = all_subgroups(&d8, 2000).unwrap();
        assert!(!is_minimal_nonabelian_by_lattice(&d8, &l).unwrap());
        assert_eq!(
            is_minimal_nonabelian(&cyclic(4).unwrap()),
            Err(GroupError::Abelian)
        );
        assert_eq!(
            is_minimal_nonabelian(&symmetric(3).unwrap()),
            Err(GroupError::NotPGroup { order: 6 })
        );
    }

    #[test]
    fn legs_agree_on_small_pgroups() {
        let groups = [
            dihedral(4).unwrap(),
            dicyclic(2).unwrap(),
            dihedral(8).unwrap(),
            dicyclic(4).unwrap(),
            heisenberg(3).unwrap(),
            direct_product(&dihedral(4).unwrap(), &cyclic(2).unwrap()).unwrap(),
        ];
        for g in groups {
            let l = all_subgroups(&g, 2000).unwrap();
            assert!(minimal_nonabelian_legs(&g, &l).unwrap().agree());
        }
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&cyclic(7).unwrap()).unwrap());
        assert!(is_simple(&alternating(5).unwrap()).unwrap());
        assert!(!is_simple(&symmetric(4).unwrap()).unwrap());
        assert!(!is_simple(&cyclic(6).unwrap()).unwrap());
        assert_eq!(
            is_simple(&cyclic(1).unwrap()),
            Err(GroupError::TrivialGroup)
        );
    }

    #[test]
    fn report_flags_are_consistent() {
        for g in [
            symmetric(4).unwrap(),
            alternating(5).unwrap(),
            dicyclic(2).unwrap(),
            cyclic(9).unwrap(),
        ] {
            let r = structure_report(&g);
            assert!(!r.is_abelian || r.is_nilpotent);
            assert!(!r.is_nilpotent || r.is_soluble);
            assert_eq!(r.is_perfect, r.derived.order() == g.order());
            assert!(g.is_normal(&r.fitting));
            assert!(is_nilpotent(&g.subgroup_as_group(&r.fitting)));
            if r.is_simple && !r.is_abelian {
                assert!(r.is_perfect);
            }
        }
    }
}
