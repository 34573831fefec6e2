//! Permutations of `{0, …, n-1}` and cycle notation.
//!
//! Products are read left to right: `p.compose(&q)` applies `p` first and
//! then `q`, so conjugation is `x^g = g^-1 x g` and groups act on the right.

use std::fmt;

use crate::error::PermError;

/// A bijection of `{0, …, degree-1}` stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its images, rejecting anything that is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(PermError::PointOutOfRange {
                    point: i,
                    degree: n,
                });
            }
            if seen[i] {
                return Err(PermError::NotBijective { point: i });
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(PermError::PointOutOfRange { point: a, degree });
                }
                if used[a] {
                    return Err(PermError::RepeatedPoint { point: a });
                }
                used[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Perm { images }
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().compose(self).compose(g)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`; the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Extends the permutation to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Perm { images }
    }

    /// Shifts the permutation to act on `offset..offset+degree` inside a set of `total` points.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + j;
        }
        Perm { images }
    }
}

/// Least `k >= 1` with `g^k` the identity.
pub fn element_order(g: &Perm) -> u64 {
    g.order()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    /// Cycle notation over 0-based points; the identity renders as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Serialized as cycle notation.
impl serde::Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}; {}]", self.degree(), self)
    }
}

/// Parses whitespace-tolerant cycle notation such as `"(0 1 2)(3 4)"`.
///
/// Points may be separated by spaces or commas. Without an explicit degree the
/// degree is the largest point plus one (and 1 for `"()"`). A point may appear
/// at most once in the whole expression.
pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Perm, PermError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(PermError::Syntax {
            pos,
            msg: "empty permutation; write () for the identity".into(),
        });
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(PermError::Syntax {
                pos,
                msg: format!("expected '(' but found '{}'", bytes[pos] as char),
            });
        }
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',') {
                pos += 1;
            }
            if pos == bytes.len() {
                return Err(PermError::Syntax {
                    pos,
                    msg: "unclosed '('".into(),
                });
            }
            match bytes[pos] {
                b')' => {
                    pos += 1;
                    break;
                }
                b'-' => return Err(PermError::NegativePoint { pos }),
                b'0'..=b'9' => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let point: usize = text[start..pos].parse().map_err(|_| PermError::Syntax {
                        pos: start,
                        msg: "point index too large".into(),
                    })?;
                    cycle.push(point);
                }
                c => {
                    return Err(PermError::Syntax {
                        pos,
                        msg: format!("unexpected character '{}'", c as char),
                    })
                }
            }
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        skip_ws(&mut pos);
    }
    let inferred = cycles.iter().flatten().max().map_or(1, |&m| m + 1);
    let degree = match degree {
        Some(d) if d < inferred => {
            return Err(PermError::PointOutOfRange {
                point: inferred - 1,
                degree: d,
            })
        }
        Some(d) => d,
        None => inferred,
    };
    Perm::from_cycles(degree, &cycles)
}
