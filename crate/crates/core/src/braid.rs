//! Braid groups as words in Artin generators, with equality decided through
//! the faithful action on the free group.

use std::fmt;

use crate::error::{Error, Result};
use crate::free::{FreeAutomorphism, FreeWord};
use crate::group::{Group, Witness};
use crate::perm::FinPerm;
use crate::verify::{CheckEntry, VerificationReport};

/// Longest word accepted by the text parser. Images under the Artin action
/// grow quickly with word length.
pub const MAX_PARSED_LETTERS: usize = 64;

/// A braid on `strands` strands; letter `i` is `σ_i`, `-i` is `σ_i⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        for &x in &letters {
            let i = x.unsigned_abs() as usize;
            if x == 0 || i + 1 > strands {
                return Err(Error::IndexOutOfRange { index: i, bound: strands.saturating_sub(1) });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn trivial(strands: usize) -> Self {
        Self { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Concatenation with adjacent `σ σ⁻¹` pairs cancelled.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        for &x in &other.letters {
            if letters.last() == Some(&-x) {
                letters.pop();
            } else {
                letters.push(x);
            }
        }
        BraidWord { strands: self.strands.max(other.strands), letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|x| -x).collect() }
    }

    /// Adds trivial strands on the right.
    pub fn stabilize(&self, strands: usize) -> Result<BraidWord> {
        if strands < self.strands {
            return Err(Error::Precondition(format!("cannot stabilize {} strands down to {strands}", self.strands)));
        }
        Ok(BraidWord { strands, letters: self.letters.clone() })
    }

    /// Shifts every generator index by `offset` and adds `offset` strands.
    pub fn shifted(&self, offset: usize) -> BraidWord {
        let o = offset as i32;
        BraidWord {
            strands: self.strands + offset,
            letters: self.letters.iter().map(|&x| if x > 0 { x + o } else { x - o }).collect(),
        }
    }

    /// Parses a signed integer word such as `"1 -2 3"`.
    pub fn parse(strands: usize, s: &str) -> Result<BraidWord> {
        let letters = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if letters.len() > MAX_PARSED_LETTERS {
            return Err(Error::Parse(format!("braid words are limited to {MAX_PARSED_LETTERS} letters")));
        }
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Image of `σ_i^{±1}` in `Aut(F_n)`: `σ_i` sends `x_i ↦ x_i x_{i+1} x_i⁻¹`,
/// `x_{i+1} ↦ x_i` and fixes the rest.
fn artin_generator(n: usize, letter: i32) -> FreeAutomorphism {
    let i = letter.unsigned_abs() as usize;
    let (a, b) = (i as i32, i as i32 + 1);
    let mut forward: Vec<FreeWord> = (1..=n).map(|k| FreeWord::generator(n, k).expect("in range")).collect();
    let mut backward = forward.clone();
    forward[i - 1] = FreeWord::reduce(n, &[a, b, -a]).expect("in range");
    forward[i] = FreeWord::reduce(n, &[a]).expect("in range");
    // inverse: x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
    backward[i - 1] = FreeWord::reduce(n, &[b]).expect("in range");
    backward[i] = FreeWord::reduce(n, &[-b, a, b]).expect("in range");
    let (images, inverse_images) = if letter > 0 { (forward, backward) } else { (backward, forward) };
    FreeAutomorphism::new(images, inverse_images).expect("Artin generators are automorphisms")
}

/// The automorphism of `F_n` induced by a braid word; `ρ(uv) = ρ(u) ∘ ρ(v)`.
pub fn artin_action(w: &BraidWord) -> FreeAutomorphism {
    let n = w.strands;
    w.letters.iter().fold(FreeAutomorphism::identity(n), |acc, &x| acc.compose(&artin_generator(n, x)).expect("same rank"))
}

/// Exact braid equality via the Artin representation. Words on different
/// strand counts are compared after stabilization.
pub fn braids_equal(u: &BraidWord, v: &BraidWord) -> bool {
    let n = u.strands.max(v.strands);
    let u = artin_action(&u.stabilize(n).expect("n is the max"));
    let v = artin_action(&v.stabilize(n).expect("n is the max"));
    u.images() == v.images()
}

/// Image in the symmetric group, `σ_i ↦ (i, i+1)`.
pub fn underlying_permutation(w: &BraidWord) -> FinPerm {
    w.letters.iter().fold(FinPerm::identity(), |acc, &x| {
        let i = x.unsigned_abs();
        acc.compose(&FinPerm::cycle(&[i, i + 1]).expect("distinct points"))
    })
}

/// The braid on `2n` strands carrying strands `1..n` over strands
/// `n+1..2n`, keeping the order within each block.
///
/// Strand `n - k` is pushed across the second block by
/// `σ_{n-k} σ_{n-k+1} ⋯ σ_{2n-1-k}`, for `k = 0, ..., n-1`.
pub fn block_pass_word(n: usize) -> Result<BraidWord> {
    if n < 1 {
        return Err(Error::Precondition("block pass needs n ≥ 1".into()));
    }
    let letters = (0..n).flat_map(|k| (n - k..=2 * n - 1 - k).map(|i| i as i32)).collect();
    BraidWord::new(2 * n, letters)
}

/// Block-pass witness in `B_{2n}` with cyclic order 2.
pub fn block_pass_witness(n: usize) -> Result<Witness<BraidWord>> {
    Witness::finite(block_pass_word(n)?, 2)
}

/// Both families of braid relations, each checked as
/// `ρ(relator) = id` under the Artin action on `F_strands`.
pub fn check_braid_relations(strands: usize) -> VerificationReport {
    let mut report = VerificationReport::new(format!("braid-relations(B_{strands})"));
    let id = FreeAutomorphism::identity(strands);
    let mut push = |name: String, letters: Vec<i32>| {
        let rho = artin_action(&BraidWord { strands, letters });
        report.push(CheckEntry::new(name, rho.images() == id.images(), rho.to_string(), id.to_string()));
    };
    for i in 1..strands as i32 {
        for j in i + 1..strands as i32 {
            if j == i + 1 {
                push(format!("s{i} s{j} s{i} = s{j} s{i} s{j}"), vec![i, j, i, -j, -i, -j]);
            } else {
                push(format!("s{i} s{j} = s{j} s{i}"), vec![i, j, -i, -j]);
            }
        }
    }
    report
}

/// The braid group on a fixed number of strands.
#[derive(Debug, Clone, Copy)]
pub struct BraidGroup {
    pub strands: usize,
}

impl Group for BraidGroup {
    type Element = BraidWord;

    fn name(&self) -> String {
        format!("B_{}", self.strands)
    }
    fn identity(&self) -> BraidWord {
        BraidWord::trivial(self.strands)
    }
    fn multiply(&self, a: &BraidWord, b: &BraidWord) -> BraidWord {
        a.concat(b)
    }
    fn inverse(&self, a: &BraidWord) -> BraidWord {
        a.inverse()
    }
    fn equals(&self, a: &BraidWord, b: &BraidWord) -> bool {
        a.letters == b.letters || braids_equal(a, b)
    }
    fn render(&self, a: &BraidWord) -> String {
        a.to_string()
    }
    fn check_member(&self, a: &BraidWord) -> Result<()> {
        if a.strands != self.strands {
            return Err(Error::FamilyMismatch { expected: self.name(), reason: format!("{} strands", a.strands) });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::FreeAutGroup;
    use crate::group::{commutator, conjugate, GeneratorSet};
    use crate::perm::block_swap;
    use crate::verify::verify_ccc;
    use rand::{Rng, SeedableRng};

    fn b(n: usize, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    #[test]
    fn relations_hold_up_to_six_strands() {
        for n in 2..=6 {
            let r = check_braid_relations(n);
            assert!(r.passed());
            assert_eq!(r.entries.len(), (n - 1) * (n - 2) / 2);
        }
    }

    #[test]
    fn artin_action_examples() {
        let aut = FreeAutGroup { rank: 3 };
        assert!(aut.is_identity(&artin_action(&BraidWord::trivial(3))));
        assert!(aut.is_identity(&artin_action(&BraidWord::new(3, vec![1, -1]).unwrap())));
        assert_eq!(artin_action(&b(3, "1 2 1")), artin_action(&b(3, "2 1 2")));
    }

    #[test]
    fn braid_relations_for_small_strand_counts() {
        for n in 2..=6usize {
            for i in 1..n as i32 {
                for j in 1..n as i32 {
                    if (i - j).abs() == 1 {
                        assert!(braids_equal(
                            &BraidWord::new(n, vec![i, j, i]).unwrap(),
                            &BraidWord::new(n, vec![j, i, j]).unwrap()
                        ));
                    } else if (i - j).abs() >= 2 {
                        assert!(braids_equal(&BraidWord::new(n, vec![i, j]).unwrap(), &BraidWord::new(n, vec![j, i]).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn braids_equal_examples() {
        let w = b(4, "1 -2 3 1");
        assert!(braids_equal(&w, &w));
        assert!(!braids_equal(&b(3, "1 2"), &b(3, "2 1")));
        assert!(braids_equal(&b(4, "1 3"), &b(4, "3 1")));
        assert!(!braids_equal(&b(2, "1 1"), &BraidWord::trivial(2)));
    }

    #[test]
    fn underlying_permutation_examples() {
        assert!(underlying_permutation(&BraidWord::trivial(3)).is_identity());
        assert_eq!(underlying_permutation(&b(2, "1")), "(1 2)".parse().unwrap());
        assert_eq!(underlying_permutation(&block_pass_word(2).unwrap()), "(1 3)(2 4)".parse().unwrap());
    }

    #[test]
    fn block_pass_witness_battery() {
        assert_eq!(block_pass_word(1).unwrap(), b(2, "1"));
        assert_eq!(block_pass_word(2).unwrap(), b(4, "2 3 1 2"));
        for n in 1..=3usize {
            let t = block_pass_word(n).unwrap();
            let g = BraidGroup { strands: 2 * n };
            assert_eq!(underlying_permutation(&t), block_swap(n as u32).unwrap());
            assert!(!g.is_identity(&g.multiply(&t, &t)));
            let h: Vec<BraidWord> = (1..n as i32).map(|i| BraidWord::new(2 * n, vec![i]).unwrap()).collect();
            for hi in &h {
                for hj in &h {
                    let c = commutator(&g, hi, &conjugate(&g, &t, hj).unwrap()).unwrap();
                    assert!(g.is_identity(&c));
                }
                assert!(g.is_identity(&commutator(&g, hi, &g.multiply(&t, &t)).unwrap()));
            }
            let gens = GeneratorSet::new(&g, h).unwrap();
            assert!(verify_ccc(&g, &gens, &block_pass_witness(n).unwrap()).unwrap().passed());
        }
        assert!(block_pass_word(0).is_err());
    }

    #[test]
    fn conjugation_by_block_pass_shifts_generators() {
        let g = BraidGroup { strands: 6 };
        let t = block_pass_word(3).unwrap();
        for i in 1..3 {
            let s = BraidWord::new(6, vec![i]).unwrap();
            assert!(g.equals(&conjugate(&g, &t, &s).unwrap(), &BraidWord::new(6, vec![i + 3]).unwrap()));
        }
    }

    fn random_braid(rng: &mut impl Rng, n: usize, len: usize) -> BraidWord {
        let letters = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        BraidWord::new(n, letters).unwrap()
    }

    #[test]
    fn equality_is_a_congruence_and_permutation_a_homomorphism() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let c = random_braid(&mut rng, 4, 5);
            let u = b(4, "1 2 1 3");
            let v = b(4, "2 1 2 3");
            assert!(braids_equal(&u.concat(&c), &v.concat(&c)));
            assert!(braids_equal(&c.concat(&u), &c.concat(&v)));
            let x = random_braid(&mut rng, 5, 6);
            let y = random_braid(&mut rng, 5, 6);
            assert_eq!(underlying_permutation(&x.concat(&y)), underlying_permutation(&x).compose(&underlying_permutation(&y)));
        }
    }

    #[test]
    fn parse_limits() {
        assert!(BraidWord::parse(3, "1 3").is_err());
        assert!(BraidWord::parse(3, "0").is_err());
        let long = vec!["1"; MAX_PARSED_LETTERS + 1].join(" ");
        assert!(BraidWord::parse(2, &long).is_err());
        assert_eq!(b(4, "1, -2 3").letters(), &[1, -2, 3]);
    }
}
