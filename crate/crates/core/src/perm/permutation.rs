use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, ..., n-1}`, acting on the right: `x^(gh) = (x^g)^h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        check_bijection(&images).map_err(|reason| Error::InvalidPermutation { index: 0, reason })?;
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(check_bijection(&images).is_ok());
        Permutation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Parses disjoint-cycle notation such as `(0 2)(1 3)`; `()` is the identity.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in cycle text {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {text:?}")))?;
            let body = &body_start[..close];
            let points = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("bad point {s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            for &p in &points {
                if p >= degree {
                    return Err(Error::Parse(format!("point {p} out of range for degree {degree}")));
                }
                if seen[p] {
                    return Err(Error::Parse(format!("point {p} appears twice in {text:?}")));
                }
                seen[p] = true;
            }
            for (k, &p) in points.iter().enumerate() {
                images[p] = points[(k + 1) % points.len()];
            }
            rest = body_start[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn to_cycles(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
                first = false;
                x = self.images[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    /// The product `self * other`: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// `h^-1 * self * h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        let mut out = vec![0; self.degree()];
        for x in 0..self.degree() {
            out[h.images[x]] = h.images[self.images[x]];
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        (0..self.degree()).all(|x| other.images[self.images[x]] == self.images[other.images[x]])
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(x, &y)| *x != y).map(|(x, _)| x)
    }

    pub fn fixes_all(&self, points: &[usize]) -> bool {
        points.iter().all(|&p| self.images[p] == p)
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut acc = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            acc = lcm(acc, len);
        }
        acc
    }

    /// Extends to a larger degree by placing this permutation at `offset`
    /// and fixing every other point.
    pub fn embed(&self, degree: usize, offset: usize) -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for (x, &y) in self.images.iter().enumerate() {
            images[offset + x] = offset + y;
        }
        Permutation { images }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn check_bijection(images: &[usize]) -> std::result::Result<(), String> {
    let mut seen = vec![false; images.len()];
    for (x, &y) in images.iter().enumerate() {
        if y >= images.len() {
            return Err(format!("image {y} of point {x} out of range for degree {}", images.len()));
        }
        if seen[y] {
            return Err(format!("image {y} appears twice"));
        }
        seen[y] = true;
    }
    Ok(())
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self.to_cycles())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn cycles_roundtrip() {
        let p = Permutation::from_cycles(5, "(0 2)(1 3 4)").unwrap();
        assert_eq!(p.images(), &[2, 3, 0, 4, 1]);
        assert_eq!(p.to_cycles(), "(0 2)(1 3 4)");
        assert_eq!(Permutation::from_cycles(5, &p.to_cycles()).unwrap(), p);
        assert_eq!(Permutation::from_cycles(3, "()").unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::from_cycles(3, "").unwrap(), Permutation::identity(3));
    }

    #[test]
    fn cycle_parse_errors() {
        assert!(Permutation::from_cycles(3, "(0 3)").is_err());
        assert!(Permutation::from_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::from_cycles(3, "(0 1").is_err());
        assert!(Permutation::from_cycles(3, "0 1").is_err());
    }

    #[test]
    fn right_action_composition() {
        let a = Permutation::from_cycles(3, "(0 1)").unwrap();
        let b = Permutation::from_cycles(3, "(1 2)").unwrap();
        // 0 -> 1 under a, then 1 -> 2 under b.
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
        let c = a.conjugate_by(&b);
        assert_eq!(c, b.inverse().then(&a).then(&b));
    }

    #[test]
    fn element_order() {
        assert_eq!(Permutation::from_cycles(6, "(0 1)(2 3 4)").unwrap().order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
    }
}
