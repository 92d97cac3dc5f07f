use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{wreath_equals, wreath_inverse, wreath_multiply, wreath_render, ActionSpace, WreathElement, ZOnCyclic};
use crate::error::{Error, Result};
use crate::group::Group;

/// An element of `A_i`. Level 1 is `Z`; a node at level `i + 1` is a base
/// map `Z/n_{i+1} → A_i` with a top in `Z`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TowerElement {
    Base(i64),
    Node(Box<WreathElement<TowerElement, u64, i64>>),
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerElement::Base(m) => write!(f, "{m}"),
            TowerElement::Node(w) => {
                let entries: Vec<String> = w.base.iter().map(|(p, a)| format!("{p}->{a}")).collect();
                write!(f, "({} | {})", entries.join(", "), w.top)
            }
        }
    }
}

/// Orders `[n_1, n_2, …, n_k]`: `B_1 = n_1 Z` and `A_{i+1} = A_i ≀_{Z/n_{i+1}} Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct TowerSpec {
    orders: Vec<u32>,
}

impl TowerSpec {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Precondition("a tower needs at least one level".into()));
        }
        if let Some(n) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::Precondition(format!("tower orders must be at least 2, got {n}")));
        }
        Ok(Self { orders })
    }

    pub fn depth(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// `n_i`, 1-based.
    pub fn order(&self, level: usize) -> u32 {
        self.orders[level - 1]
    }

    /// The group `A_level`.
    pub fn group(&self, level: usize) -> Result<TowerGroup> {
        if level == 0 || level > self.depth() {
            return Err(Error::IndexOutOfRange { index: level, bound: self.depth() });
        }
        Ok(TowerGroup { orders: self.orders.clone().into(), level })
    }

    pub fn top(&self) -> TowerGroup {
        TowerGroup { orders: self.orders.clone().into(), level: self.depth() }
    }
}

impl TryFrom<Vec<u32>> for TowerSpec {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<TowerSpec> for Vec<u32> {
    fn from(s: TowerSpec) -> Self {
        s.orders
    }
}

/// `A_level` of a tower, with its subgroup `B_level`.
#[derive(Debug, Clone)]
pub struct TowerGroup {
    orders: Arc<[u32]>,
    level: usize,
}

impl TowerGroup {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn order(&self) -> u32 {
        self.orders[self.level - 1]
    }

    fn lower(&self) -> TowerGroup {
        TowerGroup { orders: self.orders.clone(), level: self.level - 1 }
    }

    fn space(&self) -> ZOnCyclic {
        ZOnCyclic::new(self.order() as u64)
    }

    fn node(base: BTreeMap<u64, TowerElement>, top: i64) -> TowerElement {
        TowerElement::Node(Box::new(WreathElement { base, top }))
    }

    /// The inclusion `A_{level-1} → A_level` at coordinate 0.
    pub fn include(&self, a: &TowerElement) -> TowerElement {
        let mut base = BTreeMap::new();
        if !self.lower().is_identity(a) {
            base.insert(0, a.clone());
        }
        Self::node(base, 0)
    }

    /// Canonical generator `j` (1-based): the top generator of `A_j`,
    /// pushed up to this level through coordinate 0.
    pub fn generator(&self, j: usize) -> Result<TowerElement> {
        if j == 0 || j > self.level {
            return Err(Error::IndexOutOfRange { index: j, bound: self.level });
        }
        let mut g = if j == 1 { TowerElement::Base(1) } else { Self::node(BTreeMap::new(), 1) };
        for level in j + 1..=self.level {
            g = TowerGroup { orders: self.orders.clone(), level }.include(&g);
        }
        Ok(g)
    }

    pub fn generators(&self) -> Vec<TowerElement> {
        (1..=self.level).map(|j| self.generator(j).expect("in range")).collect()
    }

    pub fn random_word<R: Rng>(&self, rng: &mut R, max_len: usize) -> TowerElement {
        super::random_word(self, &self.generators(), rng, max_len)
    }

    fn in_b(&self, u: &TowerElement) -> bool {
        match u {
            TowerElement::Base(m) => m % self.order() as i64 == 0,
            TowerElement::Node(w) => {
                let lower = self.lower();
                let a0 = w.base.get(&0).cloned().unwrap_or_else(|| lower.identity());
                lower.in_b(&a0) && w.top % self.order() as i64 == 0
            }
        }
    }

    /// Membership in `B_level`.
    pub fn membership_b(&self, u: &TowerElement) -> Result<bool> {
        self.check_member(u)?;
        Ok(self.in_b(u))
    }

    /// A random element of `B_level`.
    pub fn random_b<R: Rng>(&self, rng: &mut R, max_len: usize) -> TowerElement {
        let n = self.order() as i64;
        if self.level == 1 {
            return TowerElement::Base(n * rng.gen_range(-3..=3));
        }
        let lower = self.lower();
        let mut base = BTreeMap::new();
        base.insert(0, lower.random_b(rng, max_len));
        for p in 1..n as u64 {
            if rng.gen_bool(0.5) {
                base.insert(p, lower.random_word(rng, max_len));
            }
        }
        base.retain(|_, a| !lower.is_identity(a));
        Self::node(base, n * rng.gen_range(-2..=2))
    }

    /// The canonical representative of the coset `u B_level`.
    pub fn canonical_rep(&self, u: &TowerElement) -> TowerElement {
        match u {
            TowerElement::Base(m) => TowerElement::Base(m.rem_euclid(self.order() as i64)),
            TowerElement::Node(w) => {
                let r = w.top.rem_euclid(self.order() as i64);
                let lower = self.lower();
                let mut base = BTreeMap::new();
                if let Some(a) = w.base.get(&(r as u64)) {
                    let c = lower.canonical_rep(a);
                    if !lower.is_identity(&c) {
                        base.insert(r as u64, c);
                    }
                }
                Self::node(base, r)
            }
        }
    }

    fn unwrap_node<'a>(&self, u: &'a TowerElement) -> &'a WreathElement<TowerElement, u64, i64> {
        match u {
            TowerElement::Node(w) => w,
            TowerElement::Base(_) => panic!("level-1 element used at level {}", self.level),
        }
    }
}

impl Group for TowerGroup {
    type Element = TowerElement;

    fn name(&self) -> String {
        format!("A_{}{:?}", self.level, &self.orders[..self.level])
    }
    fn identity(&self) -> TowerElement {
        if self.level == 1 {
            TowerElement::Base(0)
        } else {
            Self::node(BTreeMap::new(), 0)
        }
    }
    fn multiply(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        if let (TowerElement::Base(x), TowerElement::Base(y)) = (a, b) {
            return TowerElement::Base(x + y);
        }
        let w = wreath_multiply(&self.lower(), &self.space(), self.unwrap_node(a), self.unwrap_node(b));
        TowerElement::Node(Box::new(w))
    }
    fn inverse(&self, a: &TowerElement) -> TowerElement {
        match a {
            TowerElement::Base(x) => TowerElement::Base(-x),
            TowerElement::Node(w) => TowerElement::Node(Box::new(wreath_inverse(&self.lower(), &self.space(), w))),
        }
    }
    fn equals(&self, a: &TowerElement, b: &TowerElement) -> bool {
        match (a, b) {
            (TowerElement::Node(x), TowerElement::Node(y)) => wreath_equals(&self.lower(), &self.space(), x, y),
            _ => a == b,
        }
    }
    fn render(&self, a: &TowerElement) -> String {
        match a {
            TowerElement::Base(m) => m.to_string(),
            TowerElement::Node(w) => wreath_render(&self.lower(), &self.space(), w),
        }
    }
    fn check_member(&self, a: &TowerElement) -> Result<()> {
        let mismatch = |reason: String| Error::FamilyMismatch { expected: self.name(), reason };
        match (self.level, a) {
            (1, TowerElement::Base(_)) => Ok(()),
            (1, _) => Err(mismatch("expected an integer at level 1".into())),
            (_, TowerElement::Base(_)) => Err(mismatch(format!("integer given at level {}", self.level))),
            (_, TowerElement::Node(w)) => {
                let lower = self.lower();
                for (p, v) in &w.base {
                    if *p >= self.order() as u64 {
                        return Err(mismatch(format!("coordinate {p} outside Z/{}", self.order())));
                    }
                    lower.check_member(v)?;
                    if lower.is_identity(v) {
                        return Err(mismatch(format!("identity stored at coordinate {p}")));
                    }
                }
                Ok(())
            }
        }
    }
}

/// `A_level / B_level` through canonical representatives.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    group: TowerGroup,
}

impl CosetSpace {
    pub fn new(group: TowerGroup) -> Self {
        Self { group }
    }

    /// The point `aB`.
    pub fn coset(&self, a: &TowerElement) -> TowerElement {
        self.group.canonical_rep(a)
    }
}

impl ActionSpace for CosetSpace {
    type Top = TowerGroup;
    type Point = TowerElement;

    fn top(&self) -> &TowerGroup {
        &self.group
    }
    fn act(&self, a: &TowerElement, x: &TowerElement) -> TowerElement {
        self.group.canonical_rep(&self.group.multiply(a, x))
    }
    fn render_point(&self, x: &TowerElement) -> String {
        format!("{}B", self.group.render(x))
    }
    fn describe(&self) -> String {
        format!("{}/B", self.group.name())
    }
}
