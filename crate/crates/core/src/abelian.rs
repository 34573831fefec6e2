//! Finite abelian groups with a distinguished automorphism `x`.
//!
//! The carrier is written additively, so `a^{1-x}` becomes `a - x·a`.
//! Carrier elements are indexed in mixed radix: coordinate `i` has weight
//! `d_0 d_1 … d_{i-1}`.

use crate::arith::{is_prime, prime_power};
use crate::error::{GroupError, Result};
use crate::group::{ElementSet, Group, Limits, Subgroup, DEFAULT_CARRIER_CAP};
use crate::lattice::all_subgroups;
use crate::perm::Perm;

/// Carriers with more elements than this are never enumerated.
const ENUMERATION_LIMIT: u64 = 1 << 20;

/// `Z_{d_1} × … × Z_{d_k}` with `d_1 | d_2 | … | d_k`, each `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianPresentation {
    factors: Vec<u64>,
}

impl AbelianPresentation {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(GroupError::InvalidParameter(format!(
                "invariant factor {d} is less than 2"
            )));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(GroupError::InvalidParameter(format!(
                "invariant factors must form a divisibility chain: {} does not divide {}",
                w[0], w[1]
            )));
        }
        let order = factors.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d));
        match order {
            Some(o) if o <= ENUMERATION_LIMIT => Ok(AbelianPresentation { factors }),
            _ => Err(GroupError::CarrierTooLarge {
                order: order.unwrap_or(u64::MAX) as usize,
                cap: ENUMERATION_LIMIT as usize,
            }),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn coords(&self, mut index: usize) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&d| {
                let c = index as u64 % d;
                index /= d as usize;
                c
            })
            .collect()
    }

    /// Index of a coordinate vector; coordinates are reduced first.
    pub fn index(&self, coords: &[i64]) -> usize {
        let mut idx = 0usize;
        let mut weight = 1usize;
        for (&c, &d) in coords.iter().zip(&self.factors) {
            idx += c.rem_euclid(d as i64) as usize * weight;
            weight *= d as usize;
        }
        idx
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<i64> = x.iter().zip(&y).map(|(u, v)| (u + v) as i64).collect();
        self.index(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<i64> = x
            .iter()
            .zip(&y)
            .map(|(&u, &v)| u as i64 - v as i64)
            .collect();
        self.index(&s)
    }

    pub fn unit(&self, i: usize) -> usize {
        let mut e = vec![0i64; self.rank()];
        e[i] = 1;
        self.index(&e)
    }

    /// Order of the `p`-primary component.
    pub fn p_primary_order(&self, p: u64) -> usize {
        self.factors
            .iter()
            .map(|&d| crate::arith::p_part(d, p) as usize)
            .product()
    }
}

/// An automorphism `x` of a finite abelian carrier, given by an integer matrix
/// acting on coordinate column vectors, with `x^{actor_order} = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleAction {
    carrier: AbelianPresentation,
    matrix: Vec<Vec<i64>>,
    actor_order: u64,
    images: Vec<u32>,
}

impl ModuleAction {
    pub fn new(
        carrier: AbelianPresentation,
        matrix: Vec<Vec<i64>>,
        actor_order: u64,
    ) -> Result<Self> {
        let k = carrier.rank();
        let bad = |msg: String| Err(GroupError::InvalidAction(msg));
        if matrix.len() != k || matrix.iter().any(|row| row.len() != k) {
            return bad(format!("matrix must be {k}x{k}"));
        }
        if actor_order < 1 || (actor_order > 1 && prime_power(actor_order).is_none()) {
            return bad(format!("actor order {actor_order} is not a prime power"));
        }
        let d = carrier.factors();
        let matrix: Vec<Vec<i64>> = matrix
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|&v| v.rem_euclid(d[i] as i64)).collect())
            .collect();
        for i in 0..k {
            for j in 0..k {
                if (matrix[i][j] as i128 * d[j] as i128) % d[i] as i128 != 0 {
                    return bad(format!(
                        "entry ({i},{j}) does not respect the relation {}·e_{j} = 0",
                        d[j]
                    ));
                }
            }
        }
        let n = carrier.order();
        let images: Vec<u32> = (0..n)
            .map(|a| {
                let v = carrier.coords(a);
                let w: Vec<i64> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| (matrix[i][j] as i128 * v[j] as i128).rem_euclid(d[i] as i128))
                            .sum::<i128>() as i64
                    })
                    .collect();
                carrier.index(&w) as u32
            })
            .collect();
        let mut hit = ElementSet::new(n);
        for &b in &images {
            hit.insert(b as usize);
        }
        if hit.count() != n {
            return bad("matrix is not invertible on the carrier".into());
        }
        let action = ModuleAction {
            carrier,
            matrix,
            actor_order,
            images,
        };
        for i in 0..k {
            let e = action.carrier.unit(i);
            if action.apply_power(e, actor_order) != e {
                return bad(format!("x^{actor_order} is not the identity"));
            }
        }
        Ok(action)
    }

    /// `x` acting as the identity.
    pub fn trivial(carrier: AbelianPresentation, actor_order: u64) -> Result<Self> {
        let k = carrier.rank();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(carrier, matrix, actor_order)
    }

    pub fn carrier(&self) -> &AbelianPresentation {
        &self.carrier
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn actor_order(&self) -> u64 {
        self.actor_order
    }

    /// `x·a`.
    pub fn apply(&self, a: usize) -> usize {
        self.images[a] as usize
    }

    pub fn apply_power(&self, mut a: usize, k: u64) -> usize {
        for _ in 0..k {
            a = self.apply(a);
        }
        a
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(a, &b)| a == b as usize)
    }

    /// Least `k >= 1` with `x^k = 1` on the carrier.
    pub fn action_order(&self) -> u64 {
        (1..=self.actor_order)
            .find(|&k| (0..self.carrier.order()).all(|a| self.apply_power(a, k) == a))
            .unwrap_or(self.actor_order)
    }

    pub fn delta_map(&self) -> DeltaMap {
        let images = (0..self.carrier.order())
            .map(|a| self.carrier.sub(a, self.apply(a)) as u32)
            .collect();
        DeltaMap { images }
    }
}

/// `∂_x : a ↦ a - x·a` as an explicit table over carrier indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaMap {
    images: Vec<u32>,
}

impl DeltaMap {
    pub fn apply(&self, a: usize) -> usize {
        self.images[a] as usize
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&a| self.images[a] == 0)
            .collect()
    }

    pub fn image(&self) -> ElementSet {
        let mut s = ElementSet::new(self.images.len());
        for &b in &self.images {
            s.insert(b as usize);
        }
        s
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count() == self.images.len()
    }
}

/// True iff `x` fixes only zero, i.e. `ker ∂_x = 0`.
pub fn delta_kernel_trivial(m: &ModuleAction) -> bool {
    (1..m.carrier.order()).all(|a| m.apply(a) != a)
}

/// The carrier as a permutation group by translation on itself; the element
/// of the group with permutation `t` corresponds to carrier element `t(0)`.
pub fn carrier_group(carrier: &AbelianPresentation) -> Result<Group> {
    let n = carrier.order();
    let gens = (0..carrier.rank())
        .map(|i| {
            let e = carrier.unit(i);
            Perm::from_images((0..n).map(|a| carrier.add(a, e)).collect())
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Group::generate(n, gens, n.max(1))
}

/// Checks `∂_x(B) ≤ B ⟹ ∂_x(B) = B` over every subgroup `B` of the carrier,
/// and compares the result with kernel triviality.
pub fn has_property_i(m: &ModuleAction) -> Result<bool> {
    has_property_i_with_cap(m, DEFAULT_CARRIER_CAP)
}

pub fn has_property_i_with_cap(m: &ModuleAction, cap: usize) -> Result<bool> {
    let n = m.carrier.order();
    if n > cap {
        return Err(GroupError::CarrierTooLarge { order: n, cap });
    }
    let group = carrier_group(&m.carrier)?;
    let lattice = all_subgroups(&group, cap)?;
    let delta = m.delta_map();
    let literal = lattice.iter().all(|b| {
        let mut members = ElementSet::new(n);
        for i in b.elements() {
            members.insert(group.perm(i).apply(0));
        }
        let mut image = ElementSet::new(n);
        for a in members.iter() {
            image.insert(delta.apply(a));
        }
        !image.is_subset(&members) || image.count() == members.count()
    });
    let kernel = delta_kernel_trivial(m);
    if literal != kernel {
        return Err(GroupError::Inconsistency(format!(
            "property I evaluates to {literal} but kernel triviality to {kernel}"
        )));
    }
    Ok(literal)
}

/// `<x> ⋉ A` in its regular representation together with the images of `A` and `x`.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: Group,
    /// The normal subgroup `A`.
    pub normal: Subgroup,
    /// Index of `x` in `group`.
    pub actor: usize,
}

/// `<x> ⋉ A` as a permutation group; see [`semidirect_parts`].
pub fn semidirect(m: &ModuleAction, cap: usize) -> Result<Group> {
    Ok(semidirect_parts(m, cap)?.group)
}

/// Elements are pairs `x^j a` with `(x^j a)(x^k b) = x^{j+k} (x^k·a + b)`, so
/// `a^x = x·a`. Point `j |A| + a` is the pair `(j, a)`.
pub fn semidirect_parts(m: &ModuleAction, cap: usize) -> Result<SemidirectProduct> {
    let a_order = m.carrier.order();
    let ord = m.actor_order as usize;
    let n = a_order
        .checked_mul(ord)
        .filter(|&n| n <= cap)
        .ok_or(GroupError::TooLarge { cap })?;
    let mut powers = vec![(0..a_order).collect::<Vec<usize>>()];
    for k in 1..ord {
        let prev = &powers[k - 1];
        powers.push(prev.iter().map(|&a| m.apply(a)).collect());
    }
    let mul = |u: usize, v: usize| {
        let (j, a) = (u / a_order, u % a_order);
        let (k, b) = (v / a_order, v % a_order);
        ((j + k) % ord) * a_order + m.carrier.add(powers[k][a], b)
    };
    let mut gen_labels = vec![a_order % n];
    gen_labels.extend((0..m.carrier.rank()).map(|i| m.carrier.unit(i)));
    let gens = gen_labels
        .iter()
        .map(|&g| Perm::from_images((0..n).map(|h| mul(h, g)).collect()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let group = Group::generate(n, gens.clone(), cap)?;
    let label = |i: usize| group.perm(i).apply(0);
    let mut set = ElementSet::new(group.order());
    for i in 0..group.order() {
        if label(i) < a_order {
            set.insert(i);
        }
    }
    let normal = group.subgroup_from_set(set)?;
    let actor = group.index_of(&gens[0]).expect("generator");
    Ok(SemidirectProduct {
        group,
        normal,
        actor,
    })
}

/// `x` acting on `Z_q[ζ_p] = (Z_q)^{p-1}` as the companion matrix of
/// `1 + t + … + t^{p-1}` reduced mod `q`.
pub fn cyclotomic_action(p: u64, q: u64) -> Result<ModuleAction> {
    cyclotomic_action_with_limits(p, q, &Limits::default())
}

pub fn cyclotomic_action_with_limits(p: u64, q: u64, limits: &Limits) -> Result<ModuleAction> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(GroupError::InvalidParameter(format!(
            "cyclotomic action needs distinct primes, got p = {p}, q = {q}"
        )));
    }
    let k = (p - 1) as usize;
    let order = q.checked_pow(k as u32).unwrap_or(u64::MAX);
    if order > limits.carrier_cap as u64 {
        return Err(GroupError::CarrierTooLarge {
            order: order as usize,
            cap: limits.carrier_cap,
        });
    }
    let carrier = AbelianPresentation::new(vec![q; k])?;
    // column j is the image of t^j: t^{j+1} for j < k-1, and -(1 + … + t^{k-1}) for the last
    let mut matrix = vec![vec![0i64; k]; k];
    for j in 0..k {
        if j + 1 < k {
            matrix[j + 1][j] = 1;
        } else {
            for row in matrix.iter_mut() {
                row[j] = -1;
            }
        }
    }
    ModuleAction::new(carrier, matrix, p)
}
