//! Permutational wreath products `Γ ≀_X A = (⊕_{x∈X} Γ) ⋊ A`, the iterated
//! tower `A_{i+1} = A_i ≀_{Z/n_{i+1}} Z`, and the homomorphisms built on it.

mod chain;
mod tower;

pub use chain::{build_f, build_f_unchecked, extend_to_wreath_hom, kernel_base_commutes, ExtendedHom, TowerHom, WitnessChain};
pub use tower::{CosetSpace, TowerElement, TowerGroup, TowerSpec};

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::group::{commutator_unchecked, conjugate_unchecked, power, GeneratorSet, Group, GroupWord, Witness};
use crate::verify::{verify_ccc, CheckEntry, VerificationReport};

/// A set `X` with an action of a group `A`.
pub trait ActionSpace {
    type Top: Group;
    type Point: Clone + fmt::Debug + Ord;

    fn top(&self) -> &Self::Top;

    fn act(&self, a: &<Self::Top as Group>::Element, x: &Self::Point) -> Self::Point;

    fn render_point(&self, x: &Self::Point) -> String;

    fn describe(&self) -> String;
}

/// `(Z, +)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Group for Integers {
    type Element = i64;

    fn name(&self) -> String {
        "Z".into()
    }
    fn identity(&self) -> i64 {
        0
    }
    fn multiply(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn inverse(&self, a: &i64) -> i64 {
        -a
    }
    fn equals(&self, a: &i64, b: &i64) -> bool {
        a == b
    }
    fn render(&self, a: &i64) -> String {
        a.to_string()
    }
}

/// `Z` acting on `Z/n` by left translation.
#[derive(Debug, Clone, Copy)]
pub struct ZOnCyclic {
    pub n: u64,
    top: Integers,
}

impl ZOnCyclic {
    pub fn new(n: u64) -> Self {
        Self { n, top: Integers }
    }
}

impl ActionSpace for ZOnCyclic {
    type Top = Integers;
    type Point = u64;

    fn top(&self) -> &Integers {
        &self.top
    }
    fn act(&self, a: &i64, x: &u64) -> u64 {
        (*x as i64 + a).rem_euclid(self.n as i64) as u64
    }
    fn render_point(&self, x: &u64) -> String {
        x.to_string()
    }
    fn describe(&self) -> String {
        format!("Z/{}", self.n)
    }
}

/// `Z` acting on itself by translation.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZRegular {
    top: Integers,
}

impl ActionSpace for ZRegular {
    type Top = Integers;
    type Point = i64;

    fn top(&self) -> &Integers {
        &self.top
    }
    fn act(&self, a: &i64, x: &i64) -> i64 {
        x + a
    }
    fn render_point(&self, x: &i64) -> String {
        x.to_string()
    }
    fn describe(&self) -> String {
        "Z".into()
    }
}

/// A finitely supported base map `X → Γ` (identity values never stored)
/// and a top element of `A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElement<E, P, T> {
    pub base: BTreeMap<P, E>,
    pub top: T,
}

pub(crate) fn wreath_multiply<G: Group, S: ActionSpace>(
    base: &G,
    space: &S,
    u: &WreathElement<G::Element, S::Point, <S::Top as Group>::Element>,
    v: &WreathElement<G::Element, S::Point, <S::Top as Group>::Element>,
) -> WreathElement<G::Element, S::Point, <S::Top as Group>::Element> {
    // (f, a)(g, b) = (x ↦ f(x) g(a⁻¹x), ab); g's value at y lands on x = a·y
    let mut out = u.base.clone();
    for (y, gy) in &v.base {
        let x = space.act(&u.top, y);
        let value = match out.get(&x) {
            Some(fx) => base.multiply(fx, gy),
            None => gy.clone(),
        };
        if base.is_identity(&value) {
            out.remove(&x);
        } else {
            out.insert(x, value);
        }
    }
    WreathElement { base: out, top: space.top().multiply(&u.top, &v.top) }
}

pub(crate) fn wreath_inverse<G: Group, S: ActionSpace>(
    base: &G,
    space: &S,
    u: &WreathElement<G::Element, S::Point, <S::Top as Group>::Element>,
) -> WreathElement<G::Element, S::Point, <S::Top as Group>::Element> {
    // (f, a)⁻¹ = (x ↦ f(a·x)⁻¹, a⁻¹)
    let top = space.top().inverse(&u.top);
    let base_map = u.base.iter().map(|(y, fy)| (space.act(&top, y), base.inverse(fy))).collect();
    WreathElement { base: base_map, top }
}

pub(crate) fn wreath_equals<G: Group, S: ActionSpace>(
    base: &G,
    space: &S,
    u: &WreathElement<G::Element, S::Point, <S::Top as Group>::Element>,
    v: &WreathElement<G::Element, S::Point, <S::Top as Group>::Element>,
) -> bool {
    space.top().equals(&u.top, &v.top)
        && u.base.len() == v.base.len()
        && u.base.iter().zip(&v.base).all(|((x, a), (y, b))| x == y && base.equals(a, b))
}

pub(crate) fn wreath_render<G: Group, S: ActionSpace>(
    base: &G,
    space: &S,
    u: &WreathElement<G::Element, S::Point, <S::Top as Group>::Element>,
) -> String {
    let entries: Vec<String> = u.base.iter().map(|(x, g)| format!("{}->{}", space.render_point(x), base.render(g))).collect();
    format!("({} | {})", entries.join(", "), space.top().render(&u.top))
}

/// `Γ ≀_X A` for a base family `Γ` and an `A`-set `X`.
#[derive(Debug, Clone)]
pub struct WreathProduct<G, S> {
    pub base: G,
    pub space: S,
}

pub type WreathOf<G, S> =
    WreathElement<<G as Group>::Element, <S as ActionSpace>::Point, <<S as ActionSpace>::Top as Group>::Element>;

impl<G: Group, S: ActionSpace> WreathProduct<G, S> {
    pub fn new(base: G, space: S) -> Self {
        Self { base, space }
    }

    /// Builds an element from base entries (later entries at the same point
    /// multiply on the right) and a top element.
    pub fn element(
        &self,
        entries: impl IntoIterator<Item = (S::Point, G::Element)>,
        top: <S::Top as Group>::Element,
    ) -> WreathOf<G, S> {
        let mut base: BTreeMap<S::Point, G::Element> = BTreeMap::new();
        for (x, g) in entries {
            let value = match base.remove(&x) {
                Some(prev) => self.base.multiply(&prev, &g),
                None => g,
            };
            if !self.base.is_identity(&value) {
                base.insert(x, value);
            }
        }
        WreathElement { base, top }
    }

    /// `g` placed in coordinate `x`, trivial top.
    pub fn at(&self, x: S::Point, g: G::Element) -> WreathOf<G, S> {
        self.element([(x, g)], self.space.top().identity())
    }

    pub fn top_element(&self, a: <S::Top as Group>::Element) -> WreathOf<G, S> {
        WreathElement { base: BTreeMap::new(), top: a }
    }

    /// `{"base": [[x, element], ...], "top": element}` with rendered entries.
    pub fn to_json(&self, u: &WreathOf<G, S>) -> Value {
        let base: Vec<Value> = u.base.iter().map(|(x, g)| json!([self.space.render_point(x), self.base.render(g)])).collect();
        json!({"base": base, "top": self.space.top().render(&u.top)})
    }
}

impl<G: Group, S: ActionSpace> Group for WreathProduct<G, S> {
    type Element = WreathOf<G, S>;

    fn name(&self) -> String {
        format!("{} wr_{} {}", self.base.name(), self.space.describe(), self.space.top().name())
    }
    fn identity(&self) -> Self::Element {
        self.top_element(self.space.top().identity())
    }
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        wreath_multiply(&self.base, &self.space, a, b)
    }
    fn inverse(&self, a: &Self::Element) -> Self::Element {
        wreath_inverse(&self.base, &self.space, a)
    }
    fn equals(&self, a: &Self::Element, b: &Self::Element) -> bool {
        wreath_equals(&self.base, &self.space, a, b)
    }
    fn render(&self, a: &Self::Element) -> String {
        wreath_render(&self.base, &self.space, a)
    }
    fn check_member(&self, a: &Self::Element) -> Result<()> {
        for g in a.base.values() {
            self.base.check_member(g)?;
        }
        self.space.top().check_member(&a.top)
    }
}

/// A random word of length at most `max_len` in `gens` and their inverses.
pub fn random_word<G: Group, R: Rng>(group: &G, gens: &[G::Element], rng: &mut R, max_len: usize) -> G::Element {
    if gens.is_empty() {
        return group.identity();
    }
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| (rng.gen_range(0..gens.len()), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    GroupWord { letters }.evaluate(group, gens).expect("indices are in range")
}

/// Embeds `G` in coordinate 0 of `Γ ≀_{Z/2} Z`, takes `x` to be the top
/// generator, and checks the system `[g_i, ˣg_j] = [g_i, ˣ⁻¹g_j] = [g_i, x²] = [ˣg_i, x²] = e`.
pub fn closure_system_witness<G: Group + Clone>(group: &G, gens: &GeneratorSet<G::Element>) -> Result<VerificationReport> {
    let w = WreathProduct::new(group.clone(), ZOnCyclic::new(2));
    let embedded: Vec<_> = gens.elements.iter().map(|g| w.at(0, g.clone())).collect();
    let embedded = GeneratorSet::new(&w, embedded)?;
    let x = w.top_element(1);
    let mut report = VerificationReport::new(format!("closure-system({})", group.name()));
    if embedded.is_empty() {
        report.push(CheckEntry::fact("vacuous", true, "G has no generators"));
        return Ok(report);
    }
    report.absorb(verify_ccc(&w, &embedded, &Witness::finite(x.clone(), 2)?)?);
    let x_inv = w.inverse(&x);
    let x2 = power(&w, &x, 2);
    let e = w.identity();
    for (i, gi) in embedded.elements.iter().enumerate() {
        for (j, gj) in embedded.elements.iter().enumerate() {
            let c = commutator_unchecked(&w, gi, &conjugate_unchecked(&w, &x_inv, gj));
            report.push(CheckEntry::new(
                format!("[g{}, ^(x^-1) g{}]", i + 1, j + 1),
                w.equals(&c, &e),
                w.render(&c),
                w.render(&e),
            ));
        }
        let c = commutator_unchecked(&w, &conjugate_unchecked(&w, &x, gi), &x2);
        report.push(CheckEntry::new(format!("[^x g{}, x^2]", i + 1), w.equals(&c, &e), w.render(&c), w.render(&e)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{cycles, TableSym};
    use crate::iet::{int, rational, IetGroup, IetMap};
    use crate::matrix::{ClassicalFamily, MatrixGroup, Ring, SquareMatrix};
    use crate::perm::{FinPerm, FiniteSymmetric};
    use crate::verify::check_group_laws;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type ZWrZ2 = WreathProduct<Integers, ZOnCyclic>;

    fn zz2() -> ZWrZ2 {
        WreathProduct::new(Integers, ZOnCyclic::new(2))
    }

    #[test]
    fn semidirect_law_example() {
        let w = zz2();
        let (a0, a1, b0, b1) = (3, -5, 7, 11);
        let u = w.element([(0, a0), (1, a1)], 1);
        let v = w.element([(0, b0), (1, b1)], 0);
        assert_eq!(w.multiply(&u, &v), w.element([(0, a0 + b1), (1, a1 + b0)], 1));
        assert!(w.equals(&w.multiply(&w.identity(), &u), &u));
        assert!(w.is_identity(&w.multiply(&u, &w.inverse(&u))));
    }

    #[test]
    fn normal_form_drops_identities() {
        let w = zz2();
        let u = w.element([(0, 2), (0, -2), (1, 0)], 3);
        assert!(u.base.is_empty());
        assert_eq!(w.to_json(&w.element([(1, 4)], -1)).to_string(), r#"{"base":[["1","4"]],"top":"-1"}"#);
    }

    #[test]
    fn action_laws() {
        let c = ZOnCyclic::new(5);
        let r = ZRegular::default();
        for a in -7..7i64 {
            for b in -7..7i64 {
                for x in 0..5u64 {
                    assert_eq!(c.act(&(a + b), &x), c.act(&a, &c.act(&b, &x)));
                    assert_eq!(c.act(&0, &x), x);
                    assert_eq!(r.act(&(a + b), &(x as i64)), r.act(&a, &r.act(&b, &(x as i64))));
                }
            }
        }
    }

    fn sample_zz<R: Rng>(w: &ZWrZ2, rng: &mut R) -> WreathOf<Integers, ZOnCyclic> {
        w.element([(0, rng.gen_range(-4..=4)), (1, rng.gen_range(-4..=4))], rng.gen_range(-3..=3))
    }

    #[test]
    fn group_laws_on_seeded_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = zz2();
        assert!(check_group_laws(&w, 1000, &mut rng, |r| sample_zz(&w, r)).passed());

        let s = WreathProduct::new(TableSym(4), ZRegular::default());
        let gens = [cycles(4, &[&[1, 2]]), cycles(4, &[&[1, 2, 3, 4]])];
        let report = check_group_laws(&s, 1000, &mut rng, |r| {
            let entries: Vec<_> = (0..3).map(|_| (r.gen_range(-2..=2), random_word(&TableSym(4), &gens, r, 4))).collect();
            s.element(entries, r.gen_range(-2..=2))
        });
        assert!(report.passed());
    }

    #[test]
    fn nonabelian_base_follows_the_action() {
        // checked entrywise against the defining formula
        let s = WreathProduct::new(TableSym(3), ZOnCyclic::new(3));
        let g = TableSym(3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let gens = [cycles(3, &[&[1, 2]]), cycles(3, &[&[1, 2, 3]])];
        for _ in 0..200 {
            let mk = |r: &mut ChaCha8Rng| {
                let f: Vec<_> = (0..3u64).map(|_| random_word(&g, &gens, r, 3)).collect();
                let a = r.gen_range(-4..=4i64);
                (f, a)
            };
            let (f, a) = mk(&mut rng);
            let (h, b) = mk(&mut rng);
            let u = s.element((0..3u64).map(|x| (x, f[x as usize].clone())), a);
            let v = s.element((0..3u64).map(|x| (x, h[x as usize].clone())), b);
            let uv = s.multiply(&u, &v);
            assert_eq!(uv.top, a + b);
            for x in 0..3u64 {
                let src = (x as i64 - a).rem_euclid(3) as usize;
                let expected = g.multiply(&f[x as usize], &h[src]);
                let got = uv.base.get(&x).cloned().unwrap_or_else(|| g.identity());
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn closure_system_examples() {
        let p = FiniteSymmetric;
        assert!(closure_system_witness(&p, &GeneratorSet::empty(&p)).unwrap().passed());
        let gens = GeneratorSet::new(&p, vec!["(1 2 3)".parse::<FinPerm>().unwrap()]).unwrap();
        let r = closure_system_witness(&p, &gens).unwrap();
        assert!(r.passed());
        assert_eq!(r.entries.len(), 4);

        let sl = MatrixGroup::new(ClassicalFamily::SL, Ring::Integers, 2);
        let s = SquareMatrix::from_rows(Ring::Integers, &[vec![0, -1], vec![1, 0]]).unwrap();
        let t = SquareMatrix::from_rows(Ring::Integers, &[vec![1, 1], vec![0, 1]]).unwrap();
        let gens = GeneratorSet::new(&sl, vec![s, t]).unwrap();
        assert!(closure_system_witness(&sl, &gens).unwrap().passed());

        let gens = GeneratorSet::new(
            &IetGroup,
            vec![IetMap::rotation(&int(1), &rational(1, 3)).unwrap(), IetMap::block_exchange(&int(1)).unwrap()],
        )
        .unwrap();
        assert!(closure_system_witness(&IetGroup, &gens).unwrap().passed());
    }
}
