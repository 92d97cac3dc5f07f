//! The family-agnostic group contract and the elementary operations built on it.
//!
//! A [`Group`] value is a *family instance* (for example "3×3 matrices over Z/5"
//! or "braids on 6 strands"); elements are plain data and all arithmetic goes
//! through the instance. Commutators are `[a, b] = a b a⁻¹ b⁻¹` and
//! conjugation is `ᵗh = t h t⁻¹`.

use std::fmt;

use crate::error::{Error, Result};

pub trait Group {
    type Element: Clone + fmt::Debug;

    /// Human readable description of the instance, e.g. `"SL_4(Z/5)"`.
    fn name(&self) -> String;

    fn identity(&self) -> Self::Element;

    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn inverse(&self, a: &Self::Element) -> Self::Element;

    /// Equality in the group. Families whose elements are not stored in a
    /// normal form (braid words) override this.
    fn equals(&self, a: &Self::Element, b: &Self::Element) -> bool;

    fn render(&self, a: &Self::Element) -> String;

    /// Rejects elements that do not belong to this instance.
    fn check_member(&self, _a: &Self::Element) -> Result<()> {
        Ok(())
    }

    fn is_identity(&self, a: &Self::Element) -> bool {
        self.equals(a, &self.identity())
    }
}

/// `a` raised to an integer power by repeated squaring.
pub fn power<G: Group>(group: &G, a: &G::Element, exponent: i64) -> G::Element {
    let mut base = if exponent < 0 { group.inverse(a) } else { a.clone() };
    let mut k = exponent.unsigned_abs();
    let mut acc = group.identity();
    while k > 0 {
        if k & 1 == 1 {
            acc = group.multiply(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = group.multiply(&base, &base);
        }
    }
    acc
}

pub fn product<'a, G: Group>(group: &G, items: impl IntoIterator<Item = &'a G::Element>) -> G::Element
where
    G::Element: 'a,
{
    items.into_iter().fold(group.identity(), |acc, x| group.multiply(&acc, x))
}

pub(crate) fn commutator_unchecked<G: Group>(group: &G, a: &G::Element, b: &G::Element) -> G::Element {
    let ab = group.multiply(a, b);
    let ab_ainv = group.multiply(&ab, &group.inverse(a));
    group.multiply(&ab_ainv, &group.inverse(b))
}

pub(crate) fn conjugate_unchecked<G: Group>(group: &G, t: &G::Element, h: &G::Element) -> G::Element {
    group.multiply(&group.multiply(t, h), &group.inverse(t))
}

/// `[a, b] = a b a⁻¹ b⁻¹`.
pub fn commutator<G: Group>(group: &G, a: &G::Element, b: &G::Element) -> Result<G::Element> {
    group.check_member(a)?;
    group.check_member(b)?;
    Ok(commutator_unchecked(group, a, b))
}

/// `ᵗh = t h t⁻¹`.
pub fn conjugate<G: Group>(group: &G, t: &G::Element, h: &G::Element) -> Result<G::Element> {
    group.check_member(t)?;
    group.check_member(h)?;
    Ok(conjugate_unchecked(group, t, h))
}

/// The element `c = [t, s]` used to push a witness into the commutator subgroup.
///
/// When `[K, ˢK] = 1` for `K = ⟨H, t⟩`, conjugation by `cᵖ` agrees with
/// conjugation by `tᵖ` on all of `K`.
pub fn derived_witness<G: Group>(group: &G, t: &G::Element, s: &G::Element) -> Result<G::Element> {
    commutator(group, t, s)
}

/// Generators `h_1..h_k` of a finitely generated subgroup. May be empty.
#[derive(Debug, Clone)]
pub struct GeneratorSet<E> {
    pub family: String,
    pub elements: Vec<E>,
}

impl<E: Clone> GeneratorSet<E> {
    pub fn new<G: Group<Element = E>>(group: &G, elements: Vec<E>) -> Result<Self> {
        for e in &elements {
            group.check_member(e)?;
        }
        Ok(Self { family: group.name(), elements })
    }

    pub fn empty<G: Group<Element = E>>(group: &G) -> Self {
        Self { family: group.name(), elements: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The generators of `⟨H, t⟩`.
    pub fn extended(&self, t: &E) -> Self {
        let mut elements = self.elements.clone();
        elements.push(t.clone());
        Self { family: self.family.clone(), elements }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMode {
    /// `[H, ᵗᵖH] = 1` for `1 ≤ p < n` and `[H, tⁿ] = 1`.
    Finite(u32),
    /// `[H, ᵗᵖH] = 1` for all `p ≥ 1`, checked only up to the stored bound.
    Bounded(u32),
}

pub const DEFAULT_BOUND: u32 = 8;

#[derive(Debug, Clone)]
pub struct Witness<E> {
    pub t: E,
    pub mode: WitnessMode,
}

impl<E> Witness<E> {
    pub fn finite(t: E, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidWitness(format!("cyclic order must be at least 2, got {n}")));
        }
        Ok(Self { t, mode: WitnessMode::Finite(n) })
    }

    pub fn bounded(t: E, bound: u32) -> Result<Self> {
        if bound < 1 {
            return Err(Error::InvalidWitness("Z-mode bound must be at least 1".into()));
        }
        Ok(Self { t, mode: WitnessMode::Bounded(bound) })
    }

    pub fn map<F, T>(self, f: F) -> Witness<T>
    where
        F: FnOnce(E) -> T,
    {
        Witness { t: f(self.t), mode: self.mode }
    }
}

/// A word over a generator list, letters are `(index, ±1)` with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupWord {
    pub letters: Vec<(usize, i8)>,
}

impl GroupWord {
    pub fn new(letters: Vec<(usize, i8)>, generator_count: usize) -> Result<Self> {
        for &(i, s) in &letters {
            if i >= generator_count {
                return Err(Error::IndexOutOfRange { index: i + 1, bound: generator_count });
            }
            if s != 1 && s != -1 {
                return Err(Error::Parse(format!("letter sign must be ±1, got {s}")));
            }
        }
        Ok(Self { letters })
    }

    pub fn evaluate<G: Group>(&self, group: &G, generators: &[G::Element]) -> Result<G::Element> {
        let mut acc = group.identity();
        for &(i, s) in &self.letters {
            let g = generators.get(i).ok_or(Error::IndexOutOfRange { index: i + 1, bound: generators.len() })?;
            let g = if s < 0 { group.inverse(g) } else { g.clone() };
            acc = group.multiply(&acc, &g);
        }
        Ok(acc)
    }
}
