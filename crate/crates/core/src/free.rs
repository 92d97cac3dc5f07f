//! Free groups of finite rank and automorphisms carrying explicit inverses.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::Group;

/// A freely reduced word. Letters are signed 1-based generator indices:
/// `3` is `x3`, `-3` is `x3⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        Self { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, i: usize) -> Result<Self> {
        Self::reduce(rank, &[i as i32])
    }

    /// Freely reduces a raw word.
    pub fn reduce(rank: usize, raw: &[i32]) -> Result<Self> {
        for &x in raw {
            let i = x.unsigned_abs() as usize;
            if x == 0 || i > rank {
                return Err(Error::IndexOutOfRange { index: i, bound: rank });
            }
        }
        Ok(Self { rank, letters: reduced(raw.iter().copied()) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        debug_assert_eq!(self.rank, other.rank);
        FreeWord { rank: self.rank, letters: reduced(self.letters.iter().chain(&other.letters).copied()) }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { rank: self.rank, letters: self.letters.iter().rev().map(|x| -x).collect() }
    }

    /// The same word viewed in a free group of larger rank.
    pub fn with_rank(&self, rank: usize) -> Result<FreeWord> {
        FreeWord::reduce(rank, &self.letters)
    }

    /// Parses `"x1 X2"` (uppercase = inverse) or `"1 -2"`. `""` and `"e"` are the identity.
    pub fn parse(rank: usize, s: &str) -> Result<FreeWord> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(FreeWord::identity(rank));
        }
        let mut raw = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            if c.is_whitespace() {
                k += 1;
                continue;
            }
            let sign = match c {
                'x' => 1,
                'X' => -1,
                '-' | '+' | '0'..='9' => 0,
                _ => return Err(Error::Parse(format!("unexpected {c:?} in word {s:?}"))),
            };
            let start = if sign == 0 { k } else { k + 1 };
            let mut end = start;
            if sign == 0 && (chars[end] == '-' || chars[end] == '+') {
                end += 1;
            }
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            let token: String = chars[start..end].iter().collect();
            let value: i32 = token.parse().map_err(|_| Error::Parse(format!("bad letter {token:?} in {s:?}")))?;
            raw.push(if sign == 0 { value } else { sign * value });
            k = end;
        }
        FreeWord::reduce(rank, &raw)
    }
}

fn reduced(raw: impl Iterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for x in raw {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|&x| if x > 0 { format!("x{x}") } else { format!("X{}", -x) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An automorphism of `F_r`, stored by the images of the generators together
/// with the images under its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn identity(rank: usize) -> Self {
        let gens: Vec<FreeWord> = (1..=rank).map(|i| FreeWord { rank, letters: vec![i as i32] }).collect();
        Self { rank, images: gens.clone(), inverse_images: gens }
    }

    /// Builds an automorphism from images and inverse images, checking that the
    /// two assignments are mutually inverse.
    pub fn new(images: Vec<FreeWord>, inverse_images: Vec<FreeWord>) -> Result<Self> {
        let rank = images.len();
        if inverse_images.len() != rank {
            return Err(Error::RankMismatch { left: rank, right: inverse_images.len() });
        }
        for w in images.iter().chain(&inverse_images) {
            if w.rank != rank {
                return Err(Error::RankMismatch { left: rank, right: w.rank });
            }
        }
        let phi = Self { rank, images, inverse_images };
        let forward = Self { rank, images: phi.images.clone(), inverse_images: phi.images.clone() };
        let backward = Self { rank, images: phi.inverse_images.clone(), inverse_images: phi.inverse_images.clone() };
        for i in 1..=rank {
            let x = FreeWord { rank, letters: vec![i as i32] };
            if forward.substitute(&backward.substitute(&x)?)? != x || backward.substitute(&forward.substitute(&x)?)? != x {
                return Err(Error::Precondition(format!("stored inverse is not two-sided at x{i}")));
            }
        }
        Ok(phi)
    }

    /// `x_i ↦ x_{σ(i)}` for a permutation given as 1-based images.
    pub fn permutation(images: &[usize]) -> Result<Self> {
        let rank = images.len();
        let mut inverse = vec![0usize; rank];
        for (i, &j) in images.iter().enumerate() {
            if j == 0 || j > rank || inverse[j - 1] != 0 {
                return Err(Error::Precondition(format!("{images:?} is not a permutation")));
            }
            inverse[j - 1] = i + 1;
        }
        let word = |j: usize| FreeWord { rank, letters: vec![j as i32] };
        Ok(Self {
            rank,
            images: images.iter().map(|&j| word(j)).collect(),
            inverse_images: inverse.iter().map(|&j| word(j)).collect(),
        })
    }

    /// Nielsen move `x_i ↦ x_i x_j^ε` (`ε = ±1`), other generators fixed.
    pub fn right_multiply(rank: usize, i: usize, j: usize, sign: i32) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > rank || j > rank || sign.abs() != 1 {
            return Err(Error::Precondition(format!("invalid Nielsen move x{i} -> x{i} x{j}^{sign} in rank {rank}")));
        }
        let mut phi = Self::identity(rank);
        phi.images[i - 1] = FreeWord { rank, letters: vec![i as i32, sign * j as i32] };
        phi.inverse_images[i - 1] = FreeWord { rank, letters: vec![i as i32, -sign * j as i32] };
        Ok(phi)
    }

    /// Nielsen move `x_i ↦ x_i⁻¹`.
    pub fn invert_generator(rank: usize, i: usize) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::IndexOutOfRange { index: i, bound: rank });
        }
        let mut phi = Self::identity(rank);
        phi.images[i - 1] = FreeWord { rank, letters: vec![-(i as i32)] };
        phi.inverse_images[i - 1] = phi.images[i - 1].clone();
        Ok(phi)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn image(&self, i: usize) -> &FreeWord {
        &self.images[i - 1]
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    /// Replaces each letter by the corresponding image and reduces.
    pub fn substitute(&self, w: &FreeWord) -> Result<FreeWord> {
        if w.rank != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: w.rank });
        }
        let raw = w.letters.iter().flat_map(|&x| {
            let img = &self.images[x.unsigned_abs() as usize - 1].letters;
            let it: Box<dyn Iterator<Item = i32>> =
                if x > 0 { Box::new(img.iter().copied()) } else { Box::new(img.iter().rev().map(|y| -y)) };
            it
        });
        Ok(FreeWord { rank: self.rank, letters: reduced(raw) })
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &FreeAutomorphism) -> Result<FreeAutomorphism> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let images = other.images.iter().map(|w| self.substitute(w)).collect::<Result<_>>()?;
        let other_inv = other.inverse();
        let inverse_images = self.inverse_images.iter().map(|w| other_inv.substitute(w)).collect::<Result<_>>()?;
        Ok(FreeAutomorphism { rank: self.rank, images, inverse_images })
    }

    pub fn inverse(&self) -> FreeAutomorphism {
        FreeAutomorphism { rank: self.rank, images: self.inverse_images.clone(), inverse_images: self.images.clone() }
    }

    /// Generators not fixed by the automorphism.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&i| self.images[i - 1].letters != [i as i32]).collect()
    }

    /// Extends by the identity on `x_{r+1}, ..., x_rank`.
    pub fn stabilize(&self, rank: usize) -> Result<FreeAutomorphism> {
        if rank < self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: rank });
        }
        let mut out = Self::identity(rank);
        for i in 0..self.rank {
            out.images[i] = self.images[i].with_rank(rank)?;
            out.inverse_images[i] = self.inverse_images[i].with_rank(rank)?;
        }
        Ok(out)
    }

    /// Parses one image per line, `"xi -> word"`, followed by a line
    /// `inverse:` and the inverse images in the same format.
    pub fn parse(text: &str) -> Result<FreeAutomorphism> {
        let mut sections = [Vec::new(), Vec::new()];
        let mut current = 0;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if line.eq_ignore_ascii_case("inverse:") {
                current = 1;
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse(format!("expected `xi -> word`, got {line:?}")))?;
            let index: usize =
                lhs.trim().trim_start_matches('x').parse().map_err(|_| Error::Parse(format!("bad generator {lhs:?}")))?;
            sections[current].push((index, rhs.trim().to_string()));
        }
        let rank = sections[0].len();
        if sections[1].is_empty() {
            return Err(Error::Parse("automorphism text must include an `inverse:` block".into()));
        }
        let mut words = Vec::new();
        for section in &sections {
            let mut out = vec![None; rank];
            for (i, w) in section {
                if *i == 0 || *i > rank || out[i - 1].is_some() {
                    return Err(Error::Parse(format!("generator x{i} missing or repeated")));
                }
                out[i - 1] = Some(FreeWord::parse(rank, w)?);
            }
            words.push(out.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::Parse("incomplete image list".into()))?);
        }
        let inverse_images = words.pop().unwrap();
        let images = words.pop().unwrap();
        FreeAutomorphism::new(images, inverse_images)
    }
}

impl fmt::Display for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().enumerate().map(|(i, w)| format!("x{} -> {}", i + 1, w)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The involution of `F_{2n}` swapping `x_i` and `x_{i+n}` for `1 ≤ i ≤ n`.
pub fn aut_block_swap_witness(n: usize) -> Result<FreeAutomorphism> {
    if n < 1 {
        return Err(Error::Precondition("block swap needs n ≥ 1".into()));
    }
    let images: Vec<usize> = (1..=2 * n).map(|i| if i <= n { i + n } else { i - n }).collect();
    FreeAutomorphism::permutation(&images)
}

/// `Aut(F_r)`, restricted to automorphisms with known inverses.
#[derive(Debug, Clone, Copy)]
pub struct FreeAutGroup {
    pub rank: usize,
}

impl Group for FreeAutGroup {
    type Element = FreeAutomorphism;

    fn name(&self) -> String {
        format!("Aut(F_{})", self.rank)
    }
    fn identity(&self) -> FreeAutomorphism {
        FreeAutomorphism::identity(self.rank)
    }
    fn multiply(&self, a: &FreeAutomorphism, b: &FreeAutomorphism) -> FreeAutomorphism {
        a.compose(b).expect("ranks checked on entry")
    }
    fn inverse(&self, a: &FreeAutomorphism) -> FreeAutomorphism {
        a.inverse()
    }
    fn equals(&self, a: &FreeAutomorphism, b: &FreeAutomorphism) -> bool {
        a.images == b.images
    }
    fn render(&self, a: &FreeAutomorphism) -> String {
        a.to_string()
    }
    fn check_member(&self, a: &FreeAutomorphism) -> Result<()> {
        if a.rank != self.rank {
            return Err(Error::FamilyMismatch { expected: self.name(), reason: format!("rank {}", a.rank) });
        }
        Ok(())
    }
}
