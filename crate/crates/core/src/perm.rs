//! Finitely supported permutations of the positive integers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::Group;

/// A permutation of `{1, 2, ...}` moving finitely many points.
///
/// Only moved points are stored, so equal permutations have identical maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinPerm {
    map: BTreeMap<u32, u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl FinPerm {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a permutation from `(x, image)` pairs; unlisted points are fixed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (x, y) in pairs {
            if x == 0 || y == 0 {
                return Err(Error::Precondition("points are positive integers".into()));
            }
            if map.insert(x, y).is_some() {
                return Err(Error::Precondition(format!("point {x} assigned twice")));
            }
        }
        let domain: BTreeSet<u32> = map.keys().copied().collect();
        let image: BTreeSet<u32> = map.values().copied().collect();
        if domain != image || image.len() != map.len() {
            return Err(Error::Precondition("pairs do not define a bijection of their domain".into()));
        }
        map.retain(|x, y| x != y);
        Ok(Self { map })
    }

    /// Product of cycles, applied right to left.
    pub fn from_cycles(cycles: &[&[u32]]) -> Result<Self> {
        cycles.iter().try_fold(Self::identity(), |acc, c| Ok(acc.compose(&Self::cycle(c)?)))
    }

    pub fn cycle(points: &[u32]) -> Result<Self> {
        let distinct: BTreeSet<u32> = points.iter().copied().collect();
        if distinct.len() != points.len() {
            return Err(Error::Parse(format!("repeated point in cycle {points:?}")));
        }
        Self::from_pairs((0..points.len()).map(|k| (points[k], points[(k + 1) % points.len()])))
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.map.get(&x).copied().unwrap_or(x)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &FinPerm) -> FinPerm {
        let points: BTreeSet<u32> = self.map.keys().chain(other.map.keys()).copied().collect();
        let map = points.into_iter().map(|x| (x, self.apply(other.apply(x)))).filter(|(x, y)| x != y).collect();
        FinPerm { map }
    }

    pub fn inverse(&self) -> FinPerm {
        FinPerm { map: self.map.iter().map(|(&x, &y)| (y, x)).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.map.keys().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Largest moved point, 0 for the identity.
    pub fn degree(&self) -> u32 {
        self.map.keys().next_back().copied().unwrap_or(0)
    }

    /// Disjoint cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut c = vec![start];
            let mut x = self.apply(start);
            while x != start {
                seen.insert(x);
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Conjugate of `self` by the shift `x ↦ x + offset` on all points.
    pub fn shifted(&self, offset: u32) -> FinPerm {
        FinPerm { map: self.map.iter().map(|(&x, &y)| (x + offset, y + offset)).collect() }
    }
}

/// The involution `(1, n+1)(2, n+2)⋯(n, 2n)`.
pub fn block_swap(n: u32) -> Result<FinPerm> {
    if n < 1 {
        return Err(Error::Precondition("block swap needs n ≥ 1".into()));
    }
    FinPerm::from_pairs((1..=n).flat_map(|i| [(i, i + n), (i + n, i)]))
}

/// The cyclic shift of `k` consecutive blocks of size `size`: block `j`
/// moves onto block `j + 1 (mod k)`.
pub fn block_cycle(size: u32, k: u32) -> Result<FinPerm> {
    if size < 1 || k < 2 {
        return Err(Error::Precondition("block cycle needs size ≥ 1 and k ≥ 2".into()));
    }
    FinPerm::from_pairs((0..k).flat_map(|j| (1..=size).map(move |i| (j * size + i, ((j + 1) % k) * size + i))))
}

impl fmt::Display for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for c in self.cycles() {
            let body: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for FinPerm {
    type Err = Error;

    /// Parses cycle notation such as `"(1 3)(2 4)"`; `"()"` or `""` is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let mut rest = s.trim();
        let mut perm = FinPerm::identity();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = inner.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let points = inner[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if !points.is_empty() {
                perm = perm.compose(&FinPerm::cycle(&points)?);
            }
            rest = inner[close + 1..].trim_start();
        }
        Ok(perm)
    }
}

/// The infinite symmetric group of finitary permutations.
#[derive(Debug, Clone, Copy, Default)]
pub struct FiniteSymmetric;

impl Group for FiniteSymmetric {
    type Element = FinPerm;

    fn name(&self) -> String {
        "FSym(N)".into()
    }
    fn identity(&self) -> FinPerm {
        FinPerm::identity()
    }
    fn multiply(&self, a: &FinPerm, b: &FinPerm) -> FinPerm {
        a.compose(b)
    }
    fn inverse(&self, a: &FinPerm) -> FinPerm {
        a.inverse()
    }
    fn equals(&self, a: &FinPerm, b: &FinPerm) -> bool {
        a == b
    }
    fn render(&self, a: &FinPerm) -> String {
        a.to_string()
    }
}
