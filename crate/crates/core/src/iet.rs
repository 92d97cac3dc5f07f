//! Interval exchange transformations of `[0, ∞)` with rational data.
//!
//! A map cuts `[0, a_k)` into half-open pieces and translates each one; the
//! tail `[a_k, ∞)` is fixed pointwise. Maps are kept in a normal form
//! (equal adjacent translations merged, trailing fixed pieces absorbed into
//! the tail), so equality of maps is equality of their data.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, Witness};

pub type Rational = BigRational;

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IetMap {
    breakpoints: Vec<Rational>,
    translations: Vec<Rational>,
}

impl IetMap {
    pub fn identity() -> Self {
        Self { breakpoints: vec![Rational::zero()], translations: Vec::new() }
    }

    /// Validates the partition invariant and normalizes.
    pub fn new(breakpoints: Vec<Rational>, translations: Vec<Rational>) -> Result<Self> {
        if breakpoints.first().is_none_or(|a| !a.is_zero()) {
            return Err(Error::Precondition("breakpoints must start at 0".into()));
        }
        if translations.len() + 1 != breakpoints.len() {
            return Err(Error::Precondition(format!(
                "{} breakpoints need {} translations, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                translations.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("breakpoints must be strictly increasing".into()));
        }
        let end = breakpoints.last().unwrap().clone();
        let mut images: Vec<(Rational, Rational)> =
            breakpoints.windows(2).zip(&translations).map(|(w, d)| (&w[0] + d, &w[1] + d)).collect();
        images.sort();
        let mut cursor = Rational::zero();
        for (lo, hi) in images {
            if lo != cursor {
                return Err(Error::Precondition(format!("translated pieces do not tile [0, {end}): gap or overlap at {cursor}")));
            }
            cursor = hi;
        }
        if cursor != end {
            return Err(Error::Precondition(format!("translated pieces end at {cursor}, expected {end}")));
        }
        Ok(Self::normalized(breakpoints, translations))
    }

    fn normalized(breakpoints: Vec<Rational>, translations: Vec<Rational>) -> Self {
        let mut bp = vec![breakpoints[0].clone()];
        let mut tr: Vec<Rational> = Vec::new();
        for (k, d) in translations.into_iter().enumerate() {
            if tr.last() == Some(&d) {
                *bp.last_mut().unwrap() = breakpoints[k + 1].clone();
            } else {
                tr.push(d);
                bp.push(breakpoints[k + 1].clone());
            }
        }
        while tr.last().is_some_and(Zero::is_zero) {
            tr.pop();
            bp.pop();
        }
        Self { breakpoints: bp, translations: tr }
    }

    /// Exchanges `[0, n)` and `[n, 2n)`.
    pub fn block_exchange(n: &Rational) -> Result<Self> {
        if !n.is_positive() {
            return Err(Error::Precondition(format!("block length must be positive, got {n}")));
        }
        Self::new(vec![Rational::zero(), n.clone(), n * int(2)], vec![n.clone(), -n.clone()])
    }

    /// Rotation of `[0, length)` by `by`, i.e. `x ↦ x + by (mod length)`.
    pub fn rotation(length: &Rational, by: &Rational) -> Result<Self> {
        if !length.is_positive() || by.is_negative() || by >= length {
            return Err(Error::Precondition(format!("rotation by {by} of [0, {length})")));
        }
        if by.is_zero() {
            return Ok(Self::identity());
        }
        let cut = length - by;
        Self::new(vec![Rational::zero(), cut.clone(), length.clone()], vec![by.clone(), -cut])
    }

    /// Cyclic shift of `k` unit-free blocks of length `len`: block `j` moves
    /// onto block `j + 1 (mod k)`.
    pub fn block_cycle(len: &Rational, k: usize) -> Result<Self> {
        if !len.is_positive() || k < 2 {
            return Err(Error::Precondition("block cycle needs positive length and k ≥ 2".into()));
        }
        let bp = (0..=k).map(|j| len * int(j as i64)).collect();
        let mut tr = vec![len.clone(); k - 1];
        tr.push(-len * int(k as i64 - 1));
        Self::new(bp, tr)
    }

    /// Rearranges pieces of the given lengths so that piece `order[j]` lands
    /// in slot `j`.
    pub fn from_rearrangement(lengths: &[Rational], order: &[usize]) -> Result<Self> {
        let n = lengths.len();
        let mut seen = vec![false; n];
        for &i in order {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Precondition(format!("{order:?} is not a permutation of 0..{n}")));
            }
        }
        if order.len() != n || lengths.iter().any(|l| !l.is_positive()) {
            return Err(Error::Precondition("rearrangement needs positive lengths and a full order".into()));
        }
        let starts: Vec<Rational> = std::iter::once(Rational::zero())
            .chain(lengths.iter().scan(Rational::zero(), |acc, l| {
                *acc += l;
                Some(acc.clone())
            }))
            .collect();
        let mut target = vec![Rational::zero(); n];
        let mut cursor = Rational::zero();
        for &i in order {
            target[i] = cursor.clone();
            cursor += &lengths[i];
        }
        let translations = (0..n).map(|i| &target[i] - &starts[i]).collect();
        Self::new(starts, translations)
    }

    /// Conjugate by the translation `x ↦ x + offset` on `[0, ∞)`: the same
    /// rearrangement performed on `[offset, offset + a_k)`.
    pub fn shifted(&self, offset: &Rational) -> Result<Self> {
        if offset.is_negative() {
            return Err(Error::Precondition("offset must be non-negative".into()));
        }
        if offset.is_zero() || self.translations.is_empty() {
            return Ok(self.clone());
        }
        let mut bp = vec![Rational::zero(), offset.clone()];
        bp.extend(self.breakpoints.iter().skip(1).map(|b| b + offset));
        let mut tr = vec![Rational::zero()];
        tr.extend(self.translations.iter().cloned());
        Self::new(bp, tr)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn translations(&self) -> &[Rational] {
        &self.translations
    }

    pub fn is_identity(&self) -> bool {
        self.translations.is_empty()
    }

    /// Least `N` with the map the identity on `[N, ∞)`.
    pub fn support_bound(&self) -> Rational {
        self.breakpoints.last().unwrap().clone()
    }

    /// Index of the piece containing `x`, `None` in the tail.
    fn piece(&self, x: &Rational) -> Option<usize> {
        if *x >= self.support_bound() {
            return None;
        }
        Some(self.breakpoints.partition_point(|b| b <= x) - 1)
    }

    pub fn apply(&self, x: &Rational) -> Result<Rational> {
        if x.is_negative() {
            return Err(Error::Precondition(format!("IET maps are defined on [0, ∞), got {x}")));
        }
        Ok(match self.piece(x) {
            Some(k) => x + &self.translations[k],
            None => x.clone(),
        })
    }

    pub fn inverse(&self) -> IetMap {
        let mut pieces: Vec<(Rational, Rational, Rational)> =
            self.breakpoints.windows(2).zip(&self.translations).map(|(w, d)| (&w[0] + d, &w[1] + d, -d.clone())).collect();
        pieces.sort();
        let mut bp = vec![Rational::zero()];
        bp.extend(pieces.iter().map(|p| p.1.clone()));
        let tr = pieces.into_iter().map(|p| p.2).collect();
        Self::normalized(bp, tr)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &IetMap) -> IetMap {
        let other_inv = other.inverse();
        let mut cuts: Vec<Rational> = other.breakpoints.clone();
        cuts.extend(self.breakpoints.iter().map(|b| other_inv.apply(b).expect("breakpoints are non-negative")));
        cuts.sort();
        cuts.dedup();
        let translations = cuts
            .windows(2)
            .map(|w| {
                let y = other.apply(&w[0]).expect("non-negative");
                self.apply(&y).expect("non-negative") - &w[0]
            })
            .collect();
        Self::normalized(cuts, translations)
    }

    /// Lengths of the pieces, sorted.
    pub fn piece_lengths(&self) -> Vec<Rational> {
        let mut l: Vec<Rational> = self.breakpoints.windows(2).map(|w| &w[1] - &w[0]).collect();
        l.sort();
        l
    }

    /// Lengths of the translated pieces, sorted.
    pub fn image_lengths(&self) -> Vec<Rational> {
        let mut l: Vec<Rational> =
            self.breakpoints.windows(2).zip(&self.translations).map(|(w, d)| (&w[1] + d) - (&w[0] + d)).collect();
        l.sort();
        l
    }

    /// Re-checks the partition invariant on the stored data.
    pub fn is_valid(&self) -> bool {
        Self::new(self.breakpoints.clone(), self.translations.clone()).is_ok_and(|m| m == *self)
    }

    pub fn to_json(&self) -> IetJson {
        IetJson {
            breakpoints: self.breakpoints.iter().map(Rational::to_string).collect(),
            translations: self.translations.iter().map(Rational::to_string).collect(),
        }
    }

    pub fn from_json(j: &IetJson) -> Result<Self> {
        let bp = j.breakpoints.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let tr = j.translations.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Self::new(bp, tr)
    }
}

/// JSON shape `{"breakpoints": ["0", "1", "2"], "translations": ["1", "-1"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IetJson {
    pub breakpoints: Vec<String>,
    pub translations: Vec<String>,
}

impl fmt::Display for IetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .breakpoints
            .windows(2)
            .zip(&self.translations)
            .map(|(w, d)| {
                let sign = if d.is_negative() { "" } else { "+" };
                format!("[{}, {}){sign}{d}", w[0], w[1])
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A random rearrangement of at most `max_pieces` pieces with lengths in
/// `{p/q : 1 ≤ p ≤ 6, 1 ≤ q ≤ 4}`.
pub fn random_iet(rng: &mut impl Rng, max_pieces: usize) -> IetMap {
    let pieces = rng.gen_range(1..=max_pieces.max(1));
    let lengths: Vec<Rational> = (0..pieces).map(|_| rational(rng.gen_range(1..=6), rng.gen_range(1..=4))).collect();
    let mut order: Vec<usize> = (0..pieces).collect();
    order.shuffle(rng);
    IetMap::from_rearrangement(&lengths, &order).expect("positive lengths and a permutation")
}

/// Exchange of `[0, n)` with `[n, 2n)`, as a finite-order witness.
pub fn block_exchange_witness(n: &Rational) -> Result<Witness<IetMap>> {
    Witness::finite(IetMap::block_exchange(n)?, 2)
}

/// `IET([0, ∞))`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IetGroup;

impl Group for IetGroup {
    type Element = IetMap;

    fn name(&self) -> String {
        "IET([0,inf))".into()
    }
    fn identity(&self) -> IetMap {
        IetMap::identity()
    }
    fn multiply(&self, a: &IetMap, b: &IetMap) -> IetMap {
        a.compose(b)
    }
    fn inverse(&self, a: &IetMap) -> IetMap {
        a.inverse()
    }
    fn equals(&self, a: &IetMap, b: &IetMap) -> bool {
        a == b
    }
    fn render(&self, a: &IetMap) -> String {
        a.to_string()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::group::GeneratorSet;
    use crate::verify::{verify_ccc, verify_czc};
    use rand::SeedableRng;

    /// Points of `[0, N]` on a mesh finer than every breakpoint denominator.
    fn mesh(maps: &[&IetMap]) -> Vec<Rational> {
        let mut den = BigInt::from(2);
        let mut top = int(1);
        for m in maps {
            for b in m.breakpoints() {
                den = num_integer::Integer::lcm(&den, b.denom());
                top = top.max(b.clone());
            }
        }
        let fine = Rational::from_integer(den * 3);
        let steps = (&top * &fine).to_integer() + 2;
        let steps: i64 = num_traits::ToPrimitive::to_i64(&steps).unwrap();
        (0..=steps).map(|k| int(k) / &fine).collect()
    }

    #[test]
    fn apply_examples() {
        let ex = IetMap::block_exchange(&int(1)).unwrap();
        assert_eq!(IetMap::identity().apply(&rational(7, 3)).unwrap(), rational(7, 3));
        assert_eq!(ex.apply(&rational(1, 2)).unwrap(), rational(3, 2));
        assert_eq!(ex.apply(&int(5)).unwrap(), int(5));
        assert_eq!(ex.apply(&int(1)).unwrap(), int(0));
        assert!(ex.apply(&int(-1)).is_err());
    }

    #[test]
    fn compose_examples() {
        let t = IetMap::block_exchange(&int(1)).unwrap();
        assert!(t.compose(&t).is_identity());
        assert!(t.compose(&t.inverse()).is_identity());
        let r = IetMap::rotation(&int(1), &rational(1, 3)).unwrap();
        assert_eq!(r.breakpoints(), &[int(0), rational(2, 3), int(1)]);
        let r3 = r.compose(&r).compose(&r);
        for x in mesh(&[&r]) {
            assert_eq!(r3.apply(&x).unwrap(), x);
        }
        assert!(r3.is_identity());
    }

    #[test]
    fn compose_matches_pointwise_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let f = random_iet(&mut rng, 5);
            let g = random_iet(&mut rng, 5);
            let fg = f.compose(&g);
            for x in mesh(&[&f, &g]) {
                assert_eq!(fg.apply(&x).unwrap(), f.apply(&g.apply(&x).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn support_bound_examples() {
        assert!(IetMap::identity().support_bound().is_zero());
        assert_eq!(IetMap::block_exchange(&int(1)).unwrap().support_bound(), int(2));
        assert_eq!(IetMap::rotation(&int(1), &rational(1, 3)).unwrap().support_bound(), int(1));
        // trailing fixed pieces are absorbed into the tail
        let m = IetMap::new(vec![int(0), int(1), int(2), int(3)], vec![int(1), int(-1), int(0)]).unwrap();
        assert_eq!(m.support_bound(), int(2));
    }

    #[test]
    fn rejects_invalid_data() {
        assert!(IetMap::new(vec![int(0), int(1)], vec![int(1)]).is_err());
        assert!(IetMap::new(vec![int(1), int(2)], vec![int(0)]).is_err());
        assert!(IetMap::new(vec![int(0), int(1), int(1)], vec![int(0), int(0)]).is_err());
        assert!(IetMap::new(vec![int(0), int(1), int(2)], vec![int(1), int(0)]).is_err());
        assert!(IetMap::block_exchange(&int(0)).is_err());
        assert!(IetMap::block_exchange(&int(-1)).is_err());
    }

    #[test]
    fn block_exchange_witness_examples() {
        let g = IetGroup;
        let w = block_exchange_witness(&int(1)).unwrap();
        let h = GeneratorSet::new(&g, vec![IetMap::rotation(&int(1), &rational(1, 3)).unwrap()]).unwrap();
        assert!(verify_ccc(&g, &h, &w).unwrap().passed());
        assert!(verify_ccc(&g, &GeneratorSet::empty(&g), &w).unwrap().passed());
        assert!(g.multiply(&w.t, &w.t).is_identity());
    }

    #[test]
    fn block_cycle_bounded_check() {
        let g = IetGroup;
        let t = IetMap::block_cycle(&int(1), 4).unwrap();
        let h = GeneratorSet::new(&g, vec![IetMap::rotation(&int(1), &rational(1, 3)).unwrap()]).unwrap();
        let r = verify_czc(&g, &h, &Witness::bounded(t, 3).unwrap()).unwrap();
        assert!(r.passed() && r.bounded);
    }

    #[test]
    fn shifted_moves_support() {
        let r = IetMap::rotation(&int(1), &rational(1, 3)).unwrap();
        let s = r.shifted(&int(2)).unwrap();
        assert_eq!(s.apply(&int(2)).unwrap(), rational(7, 3));
        assert_eq!(s.apply(&rational(1, 2)).unwrap(), rational(1, 2));
        let t = IetMap::block_exchange(&int(2)).unwrap();
        assert_eq!(t.compose(&r.shifted(&int(0)).unwrap()).compose(&t.inverse()), r.shifted(&int(2)).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let j = IetJson { breakpoints: vec!["0".into(), "1".into(), "2".into()], translations: vec!["1".into(), "-1".into()] };
        let m = IetMap::from_json(&j).unwrap();
        assert_eq!(m, IetMap::block_exchange(&int(1)).unwrap());
        assert_eq!(m.to_json(), j);
        let text = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(text, r#"{"breakpoints":["0","1","2"],"translations":["1","-1"]}"#);
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_rational("-6/4").unwrap(), rational(-3, 2));
    }

    #[test]
    fn invariants_under_random_composition() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let f = random_iet(&mut rng, 5);
            let g = random_iet(&mut rng, 5);
            let fg = f.compose(&g);
            assert!(fg.is_valid());
            assert_eq!(fg.piece_lengths(), fg.image_lengths());
            assert!(f.compose(&f.inverse()).is_identity());
            assert_eq!(f.inverse().inverse(), f);
            for x in mesh(&[&f]) {
                assert_eq!(f.inverse().apply(&f.apply(&x).unwrap()).unwrap(), x);
            }
        }
    }

    #[test]
    fn equal_as_functions_iff_equal_normal_forms() {
        // same function built two ways
        let a = IetMap::new(vec![int(0), int(1), int(2), int(3)], vec![int(0), int(1), int(-1)]).unwrap();
        let b = IetMap::block_exchange(&int(1)).unwrap().shifted(&int(1)).unwrap();
        assert_eq!(a, b);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let f = random_iet(&mut rng, 3);
            let g = random_iet(&mut rng, 3);
            let same = mesh(&[&f, &g]).iter().all(|x| f.apply(x).unwrap() == g.apply(x).unwrap());
            assert_eq!(same, f == g);
        }
    }
}
