//! Permutations on `{0, .., degree-1}` and disjoint-cycle notation.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation stored as its image list: `self.0[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} out of range for degree {degree}"
                    )));
                }
                if touched[a] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} appears twice"
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Perm(images))
    }

    /// Parses disjoint-cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad point {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self` followed by `other`: `i -> other(self(i))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}
