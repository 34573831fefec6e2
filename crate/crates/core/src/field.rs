//! Finite fields of order at most 64 as explicit addition and multiplication tables.
//!
//! An element of `GF(p^m)` is indexed by its coefficient vector in base `p`:
//! index `Σ c_i p^i` stands for `Σ c_i t^i` modulo the fixed irreducible polynomial.

use crate::arith::prime_power;
use crate::error::{GroupError, Result};

/// Fixed irreducible polynomials, lowest coefficient first, without the leading 1.
fn modulus(p: u64, m: u32) -> Option<&'static [u64]> {
    Some(match (p, m) {
        (_, 1) => &[],
        (2, 2) => &[1, 1],             // t^2 + t + 1
        (2, 3) => &[1, 1, 0],          // t^3 + t + 1
        (2, 4) => &[1, 1, 0, 0],       // t^4 + t + 1
        (2, 5) => &[1, 0, 1, 0, 0],    // t^5 + t^2 + 1
        (2, 6) => &[1, 1, 0, 0, 0, 0], // t^6 + t + 1
        (3, 2) => &[1, 0],             // t^2 + 1
        (3, 3) => &[1, 2, 0],          // t^3 + 2t + 1
        (5, 2) => &[2, 0],             // t^2 + 2
        (7, 2) => &[1, 0],             // t^2 + 1
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: usize,
    characteristic: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    primitive: usize,
}

/// The field with `q` elements, `q` a prime power at most 64.
pub fn gf(q: usize) -> Result<FieldTable> {
    let (p, m) = prime_power(q as u64)
        .ok_or_else(|| GroupError::InvalidParameter(format!("{q} is not a prime power")))?;
    if q > 64 {
        return Err(GroupError::InvalidParameter(format!(
            "field order {q} exceeds 64"
        )));
    }
    let low = modulus(p, m).expect("every prime power up to 64 has a table entry");
    let p = p as usize;
    let m = m as usize;
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; m];
        for c in d.iter_mut() {
            *c = x % p;
            x /= p;
        }
        d
    };
    let from_digits = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = from_digits(&s) as u8;

            let mut prod = vec![0usize; 2 * m];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // t^m = -low(t)
            for k in (m..2 * m).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                prod[k] = 0;
                for (i, &l) in low.iter().enumerate() {
                    prod[k - m + i] = (prod[k - m + i] + (p - l as usize % p) * c) % p;
                }
            }
            mul[a * q + b] = from_digits(&prod[..m]) as u8;
        }
    }
    let mut field = FieldTable {
        q,
        characteristic: p,
        add,
        mul,
        primitive: 0,
    };
    field.primitive = (1..q)
        .find(|&g| field.multiplicative_order(g) == q - 1)
        .ok_or_else(|| GroupError::Inconsistency(format!("no primitive element in GF({q})")))?;
    Ok(field)
}

impl FieldTable {
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        1
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q)
            .find(|&b| self.add(a, b) == 0)
            .expect("additive inverse")
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        self.primitive
    }

    /// Multiplicative order of a nonzero element (0 for zero).
    pub fn multiplicative_order(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }
}
