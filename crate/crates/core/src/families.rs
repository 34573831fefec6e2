//! Constructors for the concrete groups used throughout the crate.
//!
//! Dihedral, symmetric and alternating groups act on their natural points;
//! dicyclic and Heisenberg groups use the right regular representation.
//! `dihedral(n)` has order `2n`.

use crate::abelian::{AbelianPresentation, ModuleAction};
use crate::arith::{gcd, is_prime, prime_power};
use crate::error::{GroupError, Result};
use crate::field::gf;
use crate::group::{generate, Group, DEFAULT_ELEMENT_CAP};
use crate::perm::Perm;

fn invalid(msg: String) -> GroupError {
    GroupError::InvalidParameter(msg)
}

fn cycle_on(n: usize) -> Perm {
    Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).expect("n-cycle")
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(invalid("cyclic group needs n >= 1".into()));
    }
    generate(n, vec![cycle_on(n)])
}

/// Symmetries of the regular `n`-gon, order `2n`, on `n` points.
pub fn dihedral(n: usize) -> Result<Group> {
    if n < 3 {
        return Err(invalid(format!("dihedral group needs n >= 3, got {n}")));
    }
    let reflection = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).expect("reflection");
    generate(n, vec![cycle_on(n), reflection])
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(invalid("symmetric group needs n >= 1".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[vec![0, 1]])?);
    }
    if n >= 3 {
        gens.push(cycle_on(n));
    }
    generate(n, gens)
}

pub fn alternating(n: usize) -> Result<Group> {
    if n < 3 {
        return Err(invalid(format!("alternating group needs n >= 3, got {n}")));
    }
    let gens = (0..n - 2)
        .map(|i| Perm::from_cycles(n, &[vec![i, i + 1, i + 2]]))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    generate(n, gens)
}

/// Right regular representation of an abstract group on `0..n` given by its
/// multiplication; `generators` are element labels.
pub fn regular_representation(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    generators: &[usize],
) -> Result<Group> {
    let gens = generators
        .iter()
        .map(|&g| Perm::from_images((0..n).map(|h| mul(h, g)).collect()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Group::generate(n, gens, DEFAULT_ELEMENT_CAP.max(n))
}

/// `Dic(n) = <a, x | a^{2n} = 1, x^2 = a^n, a^x = a^{-1}>`, order `4n`.
///
/// `Dic(2)` is the quaternion group of order 8.
pub fn dicyclic(n: usize) -> Result<Group> {
    if n < 2 {
        return Err(invalid(format!("dicyclic group needs n >= 2, got {n}")));
    }
    let m = 2 * n;
    // a^i x^j  <->  i + m j
    let mul = |u: usize, v: usize| {
        let (i, j) = (u % m, u / m);
        let (k, l) = (v % m, v / m);
        if j == 0 {
            (i + k) % m + m * l
        } else if l == 0 {
            (i + m - k) % m + m
        } else {
            (i + m - k + n) % m
        }
    };
    regular_representation(2 * m, mul, &[1, m])
}

/// Extraspecial group of order `p^3` and exponent `p`, for odd primes `p`.
pub fn heisenberg(p: usize) -> Result<Group> {
    if p == 2 || !is_prime(p as u64) {
        return Err(invalid(format!(
            "Heisenberg group needs an odd prime, got {p}"
        )));
    }
    // (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')
    let mul = |u: usize, v: usize| {
        let (a, b, c) = (u % p, u / p % p, u / (p * p));
        let (a2, b2, c2) = (v % p, v / p % p, v / (p * p));
        (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
    };
    regular_representation(p * p * p, mul, &[1, p])
}

/// `<a, b | a^{p^2} = b^p = 1, a^b = a^{1+p}>`, the non-abelian group of order
/// `p^3` and exponent `p^2`, built as a semidirect product.
pub fn modular_p3(p: usize) -> Result<Group> {
    if !is_prime(p as u64) || p == 2 {
        return Err(invalid(format!(
            "modular p-group needs an odd prime, got {p}"
        )));
    }
    let carrier = AbelianPresentation::new(vec![(p * p) as u64])?;
    let action = ModuleAction::new(carrier, vec![vec![1 + p as i64]], p as u64)?;
    crate::abelian::semidirect(&action, DEFAULT_ELEMENT_CAP)
}

/// `G × H` acting on the disjoint union of the two point sets.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let total = g.degree() + h.degree();
    let mut gens: Vec<Perm> = g.generators().iter().map(|x| x.shifted(0, total)).collect();
    gens.extend(h.generators().iter().map(|y| y.shifted(g.degree(), total)));
    generate(total, gens)
}

/// `PSL(2, q)` acting on the projective line `GF(q) ∪ {∞}`, with `∞` as point `q`.
///
/// Generated by `z ↦ z + 1`, `z ↦ s z` with `s` a generator of the nonzero
/// squares, and `z ↦ -1/z`.
pub fn psl2(q: usize) -> Result<Group> {
    psl2_with_cap(q, DEFAULT_ELEMENT_CAP)
}

pub fn psl2_with_cap(q: usize, cap: usize) -> Result<Group> {
    if prime_power(q as u64).is_none() {
        return Err(invalid(format!("PSL(2, q) needs a prime power q, got {q}")));
    }
    let f = gf(q)?;
    let inf = q;
    let w = f.primitive_element();
    let s = if f.characteristic() == 2 {
        w
    } else {
        f.mul(w, w)
    };
    let translate: Vec<usize> = (0..q).map(|z| f.add(z, 1)).chain([inf]).collect();
    let scale: Vec<usize> = (0..q).map(|z| f.mul(s, z)).chain([inf]).collect();
    let invert: Vec<usize> = (0..q)
        .map(|z| match f.inv(z) {
            None => inf,
            Some(zi) => f.neg(zi),
        })
        .chain([0])
        .collect();
    let gens = [translate, scale, invert]
        .into_iter()
        .map(Perm::from_images)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Group::generate(q + 1, gens, cap)
}

/// `q (q^2 - 1) / gcd(2, q - 1)`.
pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / gcd(2, q - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{center, derived_subgroup, is_simple};

    #[test]
    fn orders() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(cyclic(12).unwrap().order(), 12);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(dihedral(15).unwrap().order(), 30);
        assert_eq!(symmetric(1).unwrap().order(), 1);
        assert_eq!(symmetric(2).unwrap().order(), 2);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(dicyclic(2).unwrap().order(), 8);
        assert_eq!(dicyclic(3).unwrap().order(), 12);
        assert_eq!(heisenberg(3).unwrap().order(), 27);
        assert_eq!(modular_p3(3).unwrap().order(), 27);
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(cyclic(0).is_err());
        assert!(dihedral(2).is_err());
        assert!(alternating(2).is_err());
        assert!(dicyclic(1).is_err());
        assert!(heisenberg(2).is_err());
        assert!(heisenberg(9).is_err());
        assert!(psl2(6).is_err());
    }

    #[test]
    fn quaternion_structure() {
        let q8 = dicyclic(2).unwrap();
        let involutions = (1..8).filter(|&x| q8.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn heisenberg_has_exponent_p_and_central_derived() {
        let g = heisenberg(3).unwrap();
        assert!((1..27).all(|x| g.element_order(x) == 3));
        assert_eq!(derived_subgroup(&g), center(&g));
        assert_eq!(center(&g).order(), 3);
    }

    #[test]
    fn modular_group_has_exponent_p_squared() {
        let g = modular_p3(3).unwrap();
        assert_eq!((0..27).map(|x| g.element_order(x)).max(), Some(9));
        assert!(!g.is_abelian());
    }

    #[test]
    fn odd_dihedral_has_n_reflections() {
        for n in [3usize, 5, 7, 9, 15] {
            let g = dihedral(n).unwrap();
            let rot = g.closure(&[g.index_of(&cycle_on(n)).unwrap()]);
            let refl = (0..g.order())
                .filter(|&x| !rot.contains(x) && g.element_order(x) == 2)
                .count();
            assert_eq!(refl, n);
        }
    }

    #[test]
    fn psl2_orders() {
        for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27, 32] {
            let g = psl2(q).unwrap();
            assert_eq!(g.order() as u64, psl2_order(q as u64), "q = {q}");
            assert_eq!(g.degree(), q + 1);
        }
        assert_eq!(psl2(8).unwrap().order(), 504);
        assert!(matches!(psl2(64), Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn psl2_small_cases_are_simple() {
        for q in [4usize, 5, 7, 8, 9] {
            assert!(is_simple(&psl2(q).unwrap()).unwrap());
        }
    }

    #[test]
    fn constructors_are_deterministic() {
        assert_eq!(psl2(8).unwrap().generators(), psl2(8).unwrap().generators());
        assert_eq!(
            dicyclic(3).unwrap().generators(),
            dicyclic(3).unwrap().generators()
        );
    }

    #[test]
    fn direct_product_order() {
        let g = direct_product(&dihedral(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.degree(), 6);
    }
}
