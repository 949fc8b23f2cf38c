use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`.
///
/// Products compose left to right: `a * b` applies `a` first, then `b`.
/// Points are 1-based in every public method; the image array is stored
/// 0-based. The derived ordering is lexicographic on the image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// From 1-based images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u32);
        }
        Ok(Self { images: out })
    }

    /// Builds a permutation of the given degree from a list of cycles over 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > degree || touched[a - 1] {
                    return Err(Error::NotAPermutation(format!(
                        "{cycles:?} on {degree} points"
                    )));
                }
                touched[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                if b == 0 || b > degree {
                    return Err(Error::NotAPermutation(format!(
                        "{cycles:?} on {degree} points"
                    )));
                }
                images[a - 1] = (b - 1) as u32;
            }
        }
        Ok(Self { images })
    }

    /// Parses cycle notation such as `"(1 4)(2 5)(3 6)"` (commas also accepted
    /// as separators; `"()"` is the identity) or an image array `"[2, 1, 3]"`.
    ///
    /// With `degree = None` the degree is the largest point mentioned.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let inner = t
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("unterminated image array: {s}")))?;
            let images = parse_numbers(inner)?;
            if let Some(d) = degree {
                if d != images.len() {
                    return Err(Error::DegreeMismatch {
                        expected: d,
                        got: images.len(),
                    });
                }
            }
            return Self::from_images(&images);
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unterminated cycle in {s:?}")))?;
            let cycle = parse_numbers(&body[..close])?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        let degree = degree.unwrap_or(max);
        if max > degree {
            return Err(Error::NotAPermutation(format!(
                "{s} exceeds degree {degree}"
            )));
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    /// `self` on the first points and `other` on the following ones.
    pub fn juxtapose(&self, other: &Perm) -> Perm {
        let n = self.images.len() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + n));
        Perm { images }
    }

    /// The restriction to the invariant block of points `start+1 ..= start+len`,
    /// renumbered from 1; `None` if the block is not invariant.
    pub fn restrict(&self, start: usize, len: usize) -> Option<Perm> {
        let block = &self.images[start..start + len];
        block
            .iter()
            .all(|&x| (x as usize) >= start && (x as usize) < start + len)
            .then(|| Perm {
                images: block.iter().map(|&x| x - start as u32).collect(),
            })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1usize, |acc, c| num_integer::lcm(acc, c.len()))
    }

    /// Nontrivial cycles over 1-based points, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle type as sorted cycle lengths (fixed points omitted).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }
}

fn parse_numbers(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad point {t:?}")))
        })
        .collect()
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl Mul for Perm {
    type Output = Perm;
    fn mul(self, rhs: Perm) -> Perm {
        self.then(&rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Serialized as cycle notation followed by `/degree` when the degree
/// cannot be recovered from the cycles, e.g. `"(1 2)/3"`.
impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = self.to_string();
        let max = self.cycles().iter().flatten().copied().max().unwrap_or(0);
        if max == self.degree() {
            s.serialize_str(&text)
        } else {
            s.serialize_str(&format!("{text}/{}", self.degree()))
        }
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let (body, degree) = match s.rsplit_once('/') {
            Some((b, n)) => (
                b,
                Some(
                    n.trim()
                        .parse::<usize>()
                        .map_err(serde::de::Error::custom)?,
                ),
            ),
            None => (s.as_str(), None),
        };
        Perm::parse(body, degree).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse("(1 4)(2 5)(3 6)", None).unwrap();
        assert_eq!(p.degree(), 6);
        assert_eq!(p.to_string(), "(1 4)(2 5)(3 6)");
        assert_eq!(p.image(2), 5);
        let q = Perm::parse("[2, 1, 3]", None).unwrap();
        assert_eq!(q, Perm::parse("(1 2)", Some(3)).unwrap());
        assert_eq!(Perm::parse("()", Some(4)).unwrap(), Perm::identity(4));
        assert_eq!(Perm::parse("(1,3,2)", None).unwrap().image(3), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(Perm::parse("(1 2)(2 3)", None).is_err());
        assert!(Perm::parse("(1 2", None).is_err());
        assert!(Perm::parse("(1 5)", Some(4)).is_err());
        assert!(Perm::parse("[1, 1]", None).is_err());
        assert!(Perm::parse("(a b)", None).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse("(1 2)", Some(3)).unwrap();
        let b = Perm::parse("(2 3)", Some(3)).unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!((&a * &b).to_string(), "(1 3 2)");
        assert_eq!(a.then(&b).inverse(), b.then(&a));
    }

    #[test]
    fn juxtapose_and_restrict() {
        let a = Perm::parse("(1 2)", Some(3)).unwrap();
        let b = Perm::parse("(1 2 3)", None).unwrap();
        let c = a.juxtapose(&b);
        assert_eq!(c.to_string(), "(1 2)(4 5 6)");
        assert_eq!(c.restrict(0, 3), Some(a));
        assert_eq!(c.restrict(3, 3), Some(b));
        assert_eq!(c.restrict(1, 3), None);
    }

    #[test]
    fn order_and_powers() {
        let c = Perm::parse("(1 2 3)(4 5)", None).unwrap();
        assert_eq!(c.order(), 6);
        assert!(c.pow(6).is_identity());
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.cycle_type(), vec![2, 3]);
    }
}
