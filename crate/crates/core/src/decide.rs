//! Deciding whether every non-abelian subgroup of a group is self-normalizing.
//!
//! Three deciders are provided and are expected to agree:
//!
//! * [`decide_brute`] enumerates the subgroup lattice and compares each
//!   non-abelian subgroup with its normalizer;
//! * [`decide_conjcount`] counts conjugates instead: `H` is self-normalizing
//!   exactly when it has `|G:H|` conjugates;
//! * [`decide_fast`] uses the classification of finite members (abelian groups,
//!   minimal non-abelian `p`-groups, split extensions `<x> ⋉ A` with `x`
//!   acting fixed-point-freely and `x^p` central, `Alt(5)`, and `PSL(2, 2^n)`
//!   with `2^n - 1` prime) and never needs the lattice.

use std::fmt;

use serde::Serialize;

use crate::arith::{is_prime, prime_divisors};
use crate::error::{GroupError, Result};
use crate::group::{Group, Limits, Subgroup};
use crate::lattice::{
    all_subgroups, centralizer_of, conjugates, is_subnormal, normalizer, SubgroupLattice,
};
use crate::perm::Perm;
use crate::structure::{
    derived_subgroup, fitting, is_nilpotent, is_simple, is_soluble, p_group_prime, rank_pgroup,
    sylow,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Method {
    BruteForce,
    ConjugateCount,
    Classifier,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BruteForce => "bruteForce",
            Method::ConjugateCount => "conjugateCount",
            Method::Classifier => "classifier",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Branch {
    Abelian,
    MinimalNonabelianPGroup,
    FrobeniusTypeSoluble,
    SimpleAlt5,
    SimplePsl2,
    NotMember,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Abelian => "abelian",
            Branch::MinimalNonabelianPGroup => "minimalNonabelianPGroup",
            Branch::FrobeniusTypeSoluble => "frobeniusTypeSoluble",
            Branch::SimpleAlt5 => "simpleAlt5",
            Branch::SimplePsl2 => "simplePSL2",
            Branch::NotMember => "notMember",
        })
    }
}

/// Why a verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(
    tag = "kind",
    rename_all = "camelCase",
    rename_all_fields = "camelCase"
)]
pub enum Reason {
    Abelian,
    AllSelfNormalizing {
        nonabelian_checked: usize,
    },
    AllConjugateCountsMatch {
        nonabelian_checked: usize,
    },
    NormalizerExceeds {
        subgroup_order: usize,
        normalizer_order: usize,
    },
    ConjugateCountMismatch {
        subgroup_order: usize,
        conjugates: usize,
        index: usize,
    },
    MinimalNonabelian {
        p: u64,
        derived_order: usize,
    },
    NotPGroup {
        primes: Vec<u64>,
    },
    NotMinimalNonabelian {
        p: u64,
        rank: u32,
        derived_order: usize,
    },
    FittingNotAbelian {
        fitting_order: usize,
    },
    FittingIndexNotPrime {
        index: usize,
    },
    SylowNotCyclic {
        p: u64,
        sylow_order: usize,
    },
    NoSplitting {
        p: u64,
    },
    PowerNotCentral {
        p: u64,
        complement_order: u64,
    },
    NotFixedPointFree {
        p: u64,
        fixed_points: usize,
    },
    FrobeniusType {
        p: u64,
        fitting_index: usize,
        complement_order: u64,
        kernel_order: usize,
        complement: Perm,
    },
    InsolubleNotSimple,
    SimpleAlt5,
    SimplePsl2 {
        n: u32,
        q: u64,
        mersenne: u64,
    },
    MersenneComposite {
        n: u32,
        mersenne: u64,
    },
    SimpleOrderNotInFamily {
        order: usize,
    },
    Sylow2Mismatch {
        sylow_order: usize,
        elementary: bool,
    },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Reason::*;
        match self {
            Abelian => write!(f, "abelian"),
            AllSelfNormalizing { nonabelian_checked } => {
                write!(f, "all {nonabelian_checked} non-abelian subgroups are self-normalizing")
            }
            AllConjugateCountsMatch { nonabelian_checked } => write!(
                f,
                "all {nonabelian_checked} non-abelian subgroups have |G:H| conjugates"
            ),
            NormalizerExceeds { subgroup_order, normalizer_order } => write!(
                f,
                "non-abelian subgroup of order {subgroup_order} has normalizer of order {normalizer_order}"
            ),
            ConjugateCountMismatch { subgroup_order, conjugates, index } => write!(
                f,
                "non-abelian subgroup of order {subgroup_order} has {conjugates} conjugates but index {index}"
            ),
            MinimalNonabelian { p, derived_order } => {
                write!(f, "minimal non-abelian {p}-group: d(G) = 2, |G'| = {derived_order}")
            }
            NotPGroup { primes } => write!(f, "nilpotent non-abelian but not a p-group (primes {primes:?})"),
            NotMinimalNonabelian { p, rank, derived_order } => write!(
                f,
                "{p}-group is not minimal non-abelian: d(G) = {rank}, |G'| = {derived_order}"
            ),
            FittingNotAbelian { fitting_order } => {
                write!(f, "Fitting subgroup of order {fitting_order} is not abelian")
            }
            FittingIndexNotPrime { index } => write!(f, "Fitting index {index} is not prime"),
            SylowNotCyclic { p, sylow_order } => {
                write!(f, "Sylow {p}-subgroup of order {sylow_order} is not cyclic")
            }
            NoSplitting { p } => write!(f, "no splitting <x> ⋉ A found for p = {p}"),
            PowerNotCentral { p, complement_order } => {
                write!(f, "x^{p} is not central (x of order {complement_order})")
            }
            NotFixedPointFree { p, fixed_points } => write!(
                f,
                "x (p = {p}) fixes {fixed_points} non-identity elements of A"
            ),
            FrobeniusType { p, fitting_index, complement_order, kernel_order, .. } => write!(
                f,
                "<x> ⋉ A with p = {p}, |G:F| = {fitting_index}, |x| = {complement_order}, |A| = {kernel_order}"
            ),
            InsolubleNotSimple => write!(f, "insoluble but not simple"),
            SimpleAlt5 => write!(f, "simple of order 60"),
            SimplePsl2 { n, q, mersenne } => {
                write!(f, "PSL(2,{q}) with 2^{n} - 1 = {mersenne} prime")
            }
            MersenneComposite { n, mersenne } => write!(f, "2^{n} - 1 = {mersenne} composite"),
            SimpleOrderNotInFamily { order } => {
                write!(f, "simple group of order {order} is neither Alt(5) nor PSL(2,2^n)")
            }
            Sylow2Mismatch { sylow_order, elementary } => write!(
                f,
                "Sylow 2-subgroup of order {sylow_order} (elementary abelian: {elementary}) does not match PSL(2,2^n)"
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct YnVerdict {
    pub member: bool,
    pub method: Method,
    pub branch: Branch,
    pub reason: Reason,
    /// A non-abelian subgroup that is not self-normalizing (lattice deciders only).
    pub witness: Option<Subgroup>,
}

impl YnVerdict {
    fn member(method: Method, branch: Branch, reason: Reason) -> Self {
        YnVerdict {
            member: true,
            method,
            branch,
            reason,
            witness: None,
        }
    }

    fn non_member(method: Method, reason: Reason) -> Self {
        YnVerdict {
            member: false,
            method,
            branch: Branch::NotMember,
            reason,
            witness: None,
        }
    }
}

fn is_trivial_or_abelian(g: &Group) -> bool {
    g.order() == 1 || g.is_abelian()
}

/// Branch label for a member found by a lattice decider.
fn member_branch(g: &Group) -> Branch {
    if g.is_abelian() {
        Branch::Abelian
    } else if is_nilpotent(g) {
        Branch::MinimalNonabelianPGroup
    } else if is_soluble(g) {
        Branch::FrobeniusTypeSoluble
    } else if g.order() == 60 {
        Branch::SimpleAlt5
    } else {
        Branch::SimplePsl2
    }
}

fn lattice_for(g: &Group, limits: &Limits) -> Result<SubgroupLattice> {
    all_subgroups(g, limits.lattice_threshold)
}

/// Lattice scan: every non-abelian `H` must satisfy `N_G(H) = H`.
pub fn decide_brute(g: &Group, limits: &Limits) -> Result<YnVerdict> {
    if is_trivial_or_abelian(g) {
        return Ok(YnVerdict::member(
            Method::BruteForce,
            Branch::Abelian,
            Reason::Abelian,
        ));
    }
    decide_brute_in(g, &lattice_for(g, limits)?)
}

/// [`decide_brute`] over a precomputed lattice of `g`.
pub fn decide_brute_in(g: &Group, lattice: &SubgroupLattice) -> Result<YnVerdict> {
    if is_trivial_or_abelian(g) {
        return Ok(YnVerdict::member(
            Method::BruteForce,
            Branch::Abelian,
            Reason::Abelian,
        ));
    }
    let mut checked = 0;
    // canonical order: the first failure is the smallest witness
    for h in lattice.iter().filter(|h| !g.is_abelian_subgroup(h)) {
        checked += 1;
        let n = normalizer(g, h)?;
        if n.order() != h.order() {
            let mut v = YnVerdict::non_member(
                Method::BruteForce,
                Reason::NormalizerExceeds {
                    subgroup_order: h.order(),
                    normalizer_order: n.order(),
                },
            );
            v.witness = Some(h.clone());
            return Ok(v);
        }
    }
    Ok(YnVerdict::member(
        Method::BruteForce,
        member_branch(g),
        Reason::AllSelfNormalizing {
            nonabelian_checked: checked,
        },
    ))
}

/// Lattice scan comparing the number of conjugates of each non-abelian `H` with `|G:H|`.
pub fn decide_conjcount(g: &Group, limits: &Limits) -> Result<YnVerdict> {
    if is_trivial_or_abelian(g) {
        return Ok(YnVerdict::member(
            Method::ConjugateCount,
            Branch::Abelian,
            Reason::Abelian,
        ));
    }
    decide_conjcount_in(g, &lattice_for(g, limits)?)
}

pub fn decide_conjcount_in(g: &Group, lattice: &SubgroupLattice) -> Result<YnVerdict> {
    if is_trivial_or_abelian(g) {
        return Ok(YnVerdict::member(
            Method::ConjugateCount,
            Branch::Abelian,
            Reason::Abelian,
        ));
    }
    let mut checked = 0;
    for h in lattice.iter().filter(|h| !g.is_abelian_subgroup(h)) {
        checked += 1;
        let count = conjugates(g, h)?.len();
        let index = g.order() / h.order();
        if count != index {
            let mut v = YnVerdict::non_member(
                Method::ConjugateCount,
                Reason::ConjugateCountMismatch {
                    subgroup_order: h.order(),
                    conjugates: count,
                    index,
                },
            );
            v.witness = Some(h.clone());
            return Ok(v);
        }
    }
    Ok(YnVerdict::member(
        Method::ConjugateCount,
        member_branch(g),
        Reason::AllConjugateCountsMatch {
            nonabelian_checked: checked,
        },
    ))
}

/// Classification-based decision; works beyond the lattice threshold.
pub fn decide_fast(g: &Group) -> YnVerdict {
    const M: Method = Method::Classifier;
    if is_trivial_or_abelian(g) {
        return YnVerdict::member(M, Branch::Abelian, Reason::Abelian);
    }
    if is_nilpotent(g) {
        let Some((p, _)) = p_group_prime(g) else {
            return YnVerdict::non_member(
                M,
                Reason::NotPGroup {
                    primes: prime_divisors(g.order() as u64),
                },
            );
        };
        let rank = rank_pgroup(g).expect("p-group");
        let derived_order = derived_subgroup(g).order();
        return if rank == 2 && derived_order as u64 == p {
            YnVerdict::member(
                M,
                Branch::MinimalNonabelianPGroup,
                Reason::MinimalNonabelian { p, derived_order },
            )
        } else {
            YnVerdict::non_member(
                M,
                Reason::NotMinimalNonabelian {
                    p,
                    rank,
                    derived_order,
                },
            )
        };
    }
    if is_soluble(g) {
        decide_soluble(g)
    } else {
        decide_insoluble(g)
    }
}

fn decide_soluble(g: &Group) -> YnVerdict {
    const M: Method = Method::Classifier;
    let f = fitting(g);
    if !g.is_abelian_subgroup(&f) {
        return YnVerdict::non_member(
            M,
            Reason::FittingNotAbelian {
                fitting_order: f.order(),
            },
        );
    }
    let index = g.order() / f.order();
    if !is_prime(index as u64) {
        return YnVerdict::non_member(M, Reason::FittingIndexNotPrime { index });
    }
    let p = index as u64;
    let sp = sylow(g, p);
    if !sp
        .elements()
        .any(|x| g.element_order(x) as usize == sp.order())
    {
        return YnVerdict::non_member(
            M,
            Reason::SylowNotCyclic {
                p,
                sylow_order: sp.order(),
            },
        );
    }
    // a p-element of maximal order outside F
    let is_p_power = |mut k: u64| {
        while k.is_multiple_of(p) {
            k /= p;
        }
        k == 1
    };
    let x = (0..g.order())
        .filter(|&x| !f.contains(x))
        .map(|x| (g.element_order(x), x))
        .filter(|&(o, _)| is_p_power(o))
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let Some((x_order, x)) = x else {
        return YnVerdict::non_member(M, Reason::NoSplitting { p });
    };
    let kernel: Vec<usize> = f
        .elements()
        .filter(|&a| !g.element_order(a).is_multiple_of(p))
        .collect();
    if x_order as usize * kernel.len() != g.order() {
        return YnVerdict::non_member(M, Reason::NoSplitting { p });
    }
    let xp = g.pow(x, p);
    if !g.nontrivial_generators().iter().all(|&s| g.commute(xp, s)) {
        return YnVerdict::non_member(
            M,
            Reason::PowerNotCentral {
                p,
                complement_order: x_order,
            },
        );
    }
    let fixed = kernel.iter().skip(1).filter(|&&a| g.commute(a, x)).count();
    if fixed > 0 {
        return YnVerdict::non_member(
            M,
            Reason::NotFixedPointFree {
                p,
                fixed_points: fixed,
            },
        );
    }
    YnVerdict::member(
        M,
        Branch::FrobeniusTypeSoluble,
        Reason::FrobeniusType {
            p,
            fitting_index: index,
            complement_order: x_order,
            kernel_order: kernel.len(),
            complement: g.perm(x).clone(),
        },
    )
}

fn decide_insoluble(g: &Group) -> YnVerdict {
    const M: Method = Method::Classifier;
    if !is_simple(g).expect("non-trivial") {
        return YnVerdict::non_member(M, Reason::InsolubleNotSimple);
    }
    let order = g.order() as u64;
    if order == 60 {
        return YnVerdict::member(M, Branch::SimpleAlt5, Reason::SimpleAlt5);
    }
    let Some(n) = (3..21u32).find(|&n| {
        let q = 1u64 << n;
        q * (q * q - 1) == order
    }) else {
        return YnVerdict::non_member(M, Reason::SimpleOrderNotInFamily { order: g.order() });
    };
    let q = 1u64 << n;
    let p2 = sylow(g, 2);
    let elementary = p2.elements().skip(1).all(|x| g.element_order(x) == 2);
    if p2.order() as u64 != q || !elementary {
        return YnVerdict::non_member(
            M,
            Reason::Sylow2Mismatch {
                sylow_order: p2.order(),
                elementary,
            },
        );
    }
    let mersenne = q - 1;
    if is_prime(mersenne) {
        YnVerdict::member(M, Branch::SimplePsl2, Reason::SimplePsl2 { n, q, mersenne })
    } else {
        YnVerdict::non_member(M, Reason::MersenneComposite { n, mersenne })
    }
}

/// All three verdicts on one group.
#[derive(Debug, Clone)]
pub struct CrossCheck {
    pub brute: YnVerdict,
    pub conjcount: YnVerdict,
    pub fast: YnVerdict,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.brute.member == self.conjcount.member && self.brute.member == self.fast.member
    }
}

/// Runs all three deciders, sharing one lattice between the two lattice scans.
pub fn cross_check_report(g: &Group, limits: &Limits) -> Result<CrossCheck> {
    let fast = decide_fast(g);
    let (brute, conjcount) = if is_trivial_or_abelian(g) {
        (decide_brute(g, limits)?, decide_conjcount(g, limits)?)
    } else {
        let lattice = lattice_for(g, limits)?;
        (
            decide_brute_in(g, &lattice)?,
            decide_conjcount_in(g, &lattice)?,
        )
    };
    Ok(CrossCheck {
        brute,
        conjcount,
        fast,
    })
}

/// True iff the three deciders agree on membership.
pub fn cross_check(g: &Group, limits: &Limits) -> Result<bool> {
    Ok(cross_check_report(g, limits)?.agree())
}

/// Outcome of the closure and structure checks on a member group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantReport {
    /// Every subgroup is a member.
    pub subgroup_closed: bool,
    /// Every quotient by a normal subgroup is a member.
    pub quotient_closed: bool,
    /// `C_G(H) = Z(H)` for every non-abelian `H`.
    pub self_centralizing: bool,
    /// Every proper subnormal subgroup is abelian.
    pub subnormal_abelian: bool,
    /// No decomposition into two commuting normal complements (non-abelian groups).
    pub indecomposable: bool,
    pub subgroups_checked: usize,
    pub quotients_checked: usize,
    pub minimal_normal_orders: Vec<usize>,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.subgroup_closed
            && self.quotient_closed
            && self.self_centralizing
            && self.subnormal_abelian
            && self.indecomposable
    }
}

/// Checks closure under subgroups and quotients, self-centralization,
/// abelian subnormal subgroups and direct indecomposability on a member group.
pub fn yn_invariant_suite(g: &Group, limits: &Limits) -> Result<InvariantReport> {
    let lattice = lattice_for(g, limits)?;
    if !decide_brute_in(g, &lattice)?.member {
        return Err(GroupError::NotMember);
    }
    let subs = lattice.subgroups();
    let abelian: Vec<bool> = subs.iter().map(|h| g.is_abelian_subgroup(h)).collect();
    let normalizers: Vec<Option<Subgroup>> = subs
        .iter()
        .zip(&abelian)
        .map(|(h, &ab)| (!ab).then(|| normalizer(g, h)).transpose())
        .collect::<Result<_>>()?;

    // (i) every H: N_H(K) = N_G(K) ∩ H equals K for non-abelian K ≤ H;
    // one H per conjugacy class is also re-decided from scratch
    let mut subgroup_closed = true;
    for h in subs {
        for k in lattice.subgroups_of(h) {
            if let Some(n) = &normalizers[k] {
                if n.set().intersection(h.set()).count() != subs[k].order() {
                    subgroup_closed = false;
                }
            }
        }
    }
    let mut seen = vec![false; subs.len()];
    for (i, h) in subs.iter().enumerate() {
        if seen[i] {
            continue;
        }
        for c in conjugates(g, h)? {
            if let Some(j) = lattice.id_of(&c) {
                seen[j] = true;
            }
        }
        if h.order() < g.order() && !decide_fast(&g.subgroup_as_group(h)).member {
            subgroup_closed = false;
        }
    }

    // (ii)
    let mut quotient_closed = true;
    let mut quotients_checked = 0;
    let normals: Vec<&Subgroup> = lattice.normal_subgroups(g).collect();
    for n in &normals {
        if n.is_trivial() || n.order() == g.order() {
            continue;
        }
        quotients_checked += 1;
        let q = g.quotient(n)?;
        if !decide_brute(&q, limits)?.member {
            quotient_closed = false;
        }
    }

    // (iii)
    let mut self_centralizing = true;
    for (h, &ab) in subs.iter().zip(&abelian) {
        if ab {
            continue;
        }
        let c = centralizer_of(g, h)?;
        let center_of_h = h
            .elements()
            .filter(|&x| h.generators().iter().all(|&s| g.commute(x, s)));
        if !c.elements().eq(center_of_h) {
            self_centralizing = false;
        }
    }

    // (iv)
    let mut subnormal_abelian = true;
    for (h, &ab) in subs.iter().zip(&abelian) {
        if h.order() < g.order() && !ab && is_subnormal(g, h)? {
            subnormal_abelian = false;
        }
    }

    // (v)
    let mut indecomposable = true;
    if !g.is_abelian() {
        for (i, a) in normals.iter().enumerate() {
            for b in &normals[i + 1..] {
                if a.is_trivial()
                    || b.is_trivial()
                    || a.order() * b.order() != g.order()
                    || a.set().intersection(b.set()).count() != 1
                {
                    continue;
                }
                let commute = a
                    .generators()
                    .iter()
                    .all(|&x| b.generators().iter().all(|&y| g.commute(x, y)));
                if commute {
                    indecomposable = false;
                }
            }
        }
    }

    let minimal_normal_orders = normals
        .iter()
        .filter(|n| !n.is_trivial())
        .filter(|n| {
            !normals
                .iter()
                .any(|m| !m.is_trivial() && m.order() < n.order() && m.is_subgroup_of(n))
        })
        .map(|n| n.order())
        .collect();

    Ok(InvariantReport {
        subgroup_closed,
        quotient_closed,
        self_centralizing,
        subnormal_abelian,
        indecomposable,
        subgroups_checked: subs.len(),
        quotients_checked,
        minimal_normal_orders,
    })
}
