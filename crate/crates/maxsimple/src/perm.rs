use std::fmt;

use crate::error::{Error, Result};

/// A permutation of the points `0..degree`, stored by its image array.
///
/// Composition is written left to right throughout the crate: `a.then(b)`
/// means "apply `a`, then `b`", so that permutation matrices acting on row
/// vectors multiply in the same order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::MalformedPermutation(format!(
                    "image array {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// The conjugate g⁻¹·self·g.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.moved_points().next()
    }

    /// Nontrivial cycles, each rotated to start at its least point, sorted by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Parses disjoint-cycle notation over 0-based points, e.g. `(0 1)(2 3)`.
    /// `()` denotes the identity. Whitespace and commas are interchangeable.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut chars = text.chars().peekable();
        let mut saw_any = false;
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            if c != '(' {
                return Err(Error::Parse(format!(
                    "unexpected character {c:?} in cycle expression {text:?}"
                )));
            }
            saw_any = true;
            let mut body = String::new();
            let mut closed = false;
            for c2 in chars.by_ref() {
                if c2 == ')' {
                    closed = true;
                    break;
                }
                body.push(c2);
            }
            if !closed {
                return Err(Error::Parse(format!("unclosed cycle in {text:?}")));
            }
            let points: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?} in {text:?}")))
                })
                .collect::<Result<_>>()?;
            for &p in &points {
                if p >= degree {
                    return Err(Error::Parse(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
            }
            let mut distinct = points.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != points.len() {
                return Err(Error::Parse(format!("repeated point in cycle {text:?}")));
            }
            for w in 0..points.len() {
                let from = points[w];
                let to = points[(w + 1) % points.len()];
                if images[from] != from as u32 {
                    return Err(Error::Parse(format!(
                        "cycles in {text:?} are not disjoint"
                    )));
                }
                images[from] = to as u32;
            }
            // a 1-cycle like (3) fixes its point; nothing written
        }
        if !saw_any && !text.trim().is_empty() {
            return Err(Error::Parse(format!("no cycles found in {text:?}")));
        }
        Permutation::from_images(images)
    }

    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn compose_left_to_right() {
        let a = Permutation::parse_cycles("(0 1)", 3).unwrap();
        let b = Permutation::parse_cycles("(1 2)", 3).unwrap();
        // apply a then b: 0 -> 1 -> 2
        assert_eq!(a.then(&b).image(0), 2);
        // apply b then a: 0 -> 0 -> 1
        assert_eq!(b.then(&a).image(0), 1);
    }

    #[test]
    fn inverse_and_order() {
        let c = Permutation::parse_cycles("(0 1 2 3 4)", 5).unwrap();
        assert!(c.then(&c.inverse()).is_identity());
        assert_eq!(c.order(), 5);
        let d = Permutation::parse_cycles("(0 1)(2 3 4)", 5).unwrap();
        assert_eq!(d.order(), 6);
    }

    #[test]
    fn cycle_roundtrip() {
        let p = Permutation::parse_cycles("(0 1)(2 3)", 5).unwrap();
        assert_eq!(p.cycle_string(), "(0 1)(2 3)");
        let q = Permutation::parse_cycles(&p.cycle_string(), 5).unwrap();
        assert_eq!(p, q);
        let id = Permutation::parse_cycles("()", 4).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn overlapping_cycles_rejected() {
        assert!(Permutation::parse_cycles("(0 1)(1 2)", 3).is_err());
    }

    #[test]
    fn conjugation_relabels() {
        let p = Permutation::parse_cycles("(0 1 2)", 4).unwrap();
        let g = Permutation::parse_cycles("(2 3)", 4).unwrap();
        assert_eq!(p.conjugate_by(&g).cycle_string(), "(0 1 3)");
    }
}
