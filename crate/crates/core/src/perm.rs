//! Permutations of `0..n` stored as image vectors.

use std::fmt;

use crate::error::GroupError;

/// A bijection of `0..len`, stored as the list of images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(len: usize) -> Self {
        Perm((0..len as u32).collect())
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n || seen[x] {
                return Err(GroupError::NotBijective { point: i });
            }
            seen[x] = true;
        }
        Ok(Perm(images.into_iter().map(|x| x as u32).collect()))
    }

    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Perm(images)
    }

    /// Parses disjoint cycle notation such as `(0 1)(2 3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, len: usize) -> Result<Self, String> {
        let mut images: Vec<usize> = (0..len).collect();
        let mut touched = vec![false; len];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err("empty permutation".into());
        }
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| format!("expected '(' at {rest:?}"))?;
            let close = open.find(')').ok_or("unclosed cycle")?;
            let body = &open[..close];
            let cycle: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|e| format!("bad point {s:?}: {e}")))
                .collect::<Result<_, _>>()?;
            for &p in &cycle {
                if p >= len {
                    return Err(format!("point {p} out of range 0..{len}"));
                }
                if touched[p] {
                    return Err(format!("point {p} appears in two cycles"));
                }
                touched[p] = true;
            }
            for w in 0..cycle.len() {
                images[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
            rest = open[close + 1..].trim_start();
        }
        Perm::from_images(images).map_err(|e| e.to_string())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.len());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}
