use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::tower::{CosetSpace, TowerElement, TowerGroup, TowerSpec};
use super::{random_word, WreathOf, WreathProduct};
use crate::error::{Error, Result};
use crate::group::{commutator_unchecked, conjugate_unchecked, power, GeneratorSet, Group, Witness};
use crate::verify::{verify_ccc, CheckEntry, VerificationReport};

const BALL_RADIUS: usize = 4;
const WORD_LEN: usize = 8;

/// Elements `t_1, …, t_k` with orders `n_1, …, n_k` such that each `t_i`
/// witnesses commuting cyclic conjugates for `Λ_{i-1} = ⟨H, t_1, …, t_{i-1}⟩`.
#[derive(Debug, Clone)]
pub struct WitnessChain<E> {
    pub h: GeneratorSet<E>,
    pub ts: Vec<E>,
    pub orders: Vec<u32>,
}

impl<E: Clone + std::fmt::Debug> WitnessChain<E> {
    /// Builds the chain and machine-checks every level.
    pub fn new<G: Group<Element = E>>(group: &G, h: GeneratorSet<E>, ts: Vec<E>, orders: Vec<u32>) -> Result<Self> {
        let chain = Self::unchecked(h, ts, orders)?;
        let report = chain.check(group)?;
        if let Some(c) = report.counterexample() {
            return Err(Error::InvalidWitness(format!("chain invariant fails: {c}")));
        }
        Ok(chain)
    }

    /// Builds the chain without checking the commutation invariants.
    pub fn unchecked(h: GeneratorSet<E>, ts: Vec<E>, orders: Vec<u32>) -> Result<Self> {
        if ts.is_empty() || ts.len() != orders.len() {
            return Err(Error::Precondition(format!("{} elements for {} orders", ts.len(), orders.len())));
        }
        Ok(Self { h, ts, orders })
    }

    pub fn depth(&self) -> usize {
        self.ts.len()
    }

    /// Generators of `Λ_i = ⟨H, t_1, …, t_i⟩`.
    pub fn lambda(&self, i: usize) -> GeneratorSet<E> {
        self.ts[..i].iter().fold(self.h.clone(), |acc, t| acc.extended(t))
    }

    /// `verify_ccc(Λ_{i-1}, (t_i, n_i))` for every level.
    pub fn check<G: Group<Element = E>>(&self, group: &G) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("chain");
        for i in 1..=self.depth() {
            let w = Witness::finite(self.ts[i - 1].clone(), self.orders[i - 1])?;
            let mut level = verify_ccc(group, &self.lambda(i - 1), &w)?;
            level.suite = format!("level{i}");
            report.absorb(level);
        }
        Ok(report)
    }
}

/// The homomorphism `f: A_k → Γ` with `f(e_j) = t_j` on canonical generators.
#[derive(Debug, Clone)]
pub struct TowerHom<G: Group> {
    pub group: G,
    pub tower: TowerSpec,
    pub chain: WitnessChain<G::Element>,
}

/// Builds `f` after checking that the chain matches the tower and satisfies
/// its invariants.
pub fn build_f<G: Group>(group: G, tower: TowerSpec, chain: WitnessChain<G::Element>) -> Result<TowerHom<G>> {
    let f = build_f_unchecked(group, tower, chain)?;
    let report = f.chain.check(&f.group)?;
    if let Some(c) = report.counterexample() {
        return Err(Error::InvalidWitness(format!("chain invariant fails: {c}")));
    }
    Ok(f)
}

/// Builds `f` checking only that the orders match the tower.
pub fn build_f_unchecked<G: Group>(group: G, tower: TowerSpec, chain: WitnessChain<G::Element>) -> Result<TowerHom<G>> {
    if chain.orders != tower.orders() {
        return Err(Error::Precondition(format!("chain orders {:?} do not match tower {:?}", chain.orders, tower.orders())));
    }
    Ok(TowerHom { group, tower, chain })
}

/// Tallies a sampled identity into one report entry holding the first failure.
struct Tally {
    name: String,
    passed: usize,
    total: usize,
    first_failure: Option<(String, String)>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: 0, total: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some((lhs(), rhs()));
        }
    }

    fn entry(self, detail: &str) -> CheckEntry {
        let ok = self.passed == self.total;
        match self.first_failure {
            Some((l, r)) => {
                CheckEntry::new(self.name, false, l, r).with_detail(format!("{}/{} passed; {detail}", self.passed, self.total))
            }
            None => CheckEntry::new(self.name, ok, self.passed.to_string(), self.total.to_string()).with_detail(detail),
        }
    }
}

impl<G: Group> TowerHom<G> {
    pub fn domain(&self) -> TowerGroup {
        self.tower.top()
    }

    fn t_power(&self, level: usize, p: i64) -> G::Element {
        power(&self.group, &self.chain.ts[level - 1], p)
    }

    fn eval_at(&self, level: usize, u: &TowerElement, ascending: bool) -> G::Element {
        match u {
            TowerElement::Base(m) => self.t_power(1, *m),
            TowerElement::Node(w) => {
                let factors: Vec<G::Element> = w
                    .base
                    .iter()
                    .map(|(p, a)| {
                        conjugate_unchecked(&self.group, &self.t_power(level, *p as i64), &self.eval_at(level - 1, a, ascending))
                    })
                    .collect();
                let mut acc = self.group.identity();
                let ordered: Box<dyn Iterator<Item = &G::Element>> =
                    if ascending { Box::new(factors.iter()) } else { Box::new(factors.iter().rev()) };
                for x in ordered {
                    acc = self.group.multiply(&acc, x);
                }
                self.group.multiply(&acc, &self.t_power(level, w.top))
            }
        }
    }

    /// `f(u)` for `u ∈ A_k`.
    pub fn eval(&self, u: &TowerElement) -> G::Element {
        self.eval_at(self.tower.depth(), u, true)
    }

    /// `f(u)` at an intermediate level `i ≤ k`.
    pub fn eval_level(&self, level: usize, u: &TowerElement) -> G::Element {
        self.eval_at(level, u, true)
    }

    /// `f(u)` with the base product taken in descending coordinate order.
    pub fn eval_descending(&self, u: &TowerElement) -> G::Element {
        self.eval_at(self.tower.depth(), u, false)
    }

    fn commute_with_h(&self, x: &G::Element) -> Option<(String, String)> {
        let e = self.group.identity();
        for h in &self.chain.h.elements {
            let c = commutator_unchecked(&self.group, h, x);
            if !self.group.equals(&c, &e) {
                return Some((self.group.render(&c), self.group.render(&e)));
            }
        }
        None
    }

    fn h_commutes_with_conjugate(&self, x: &G::Element) -> Option<(String, String)> {
        let e = self.group.identity();
        for hi in &self.chain.h.elements {
            for hj in &self.chain.h.elements {
                let c = commutator_unchecked(&self.group, hi, &conjugate_unchecked(&self.group, x, hj));
                if !self.group.equals(&c, &e) {
                    return Some((self.group.render(&c), self.group.render(&e)));
                }
            }
        }
        None
    }

    /// Sampled homomorphism law, properties (i) and (ii), and the bounded
    /// check `f(A_i) ⊆ Λ_i`.
    pub fn check_hom(&self, samples: usize, seed: u64) -> VerificationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = self.domain();
        let mut report = VerificationReport::new(format!("tower-hom{:?}", self.tower.orders()));
        if self.chain.h.is_empty() {
            report.push(CheckEntry::fact("vacuous", true, "H has no generators"));
        }

        let mut hom = Tally::new("f(uv) = f(u)f(v)");
        for _ in 0..samples {
            let u = a.random_word(&mut rng, WORD_LEN);
            let v = a.random_word(&mut rng, WORD_LEN);
            let lhs = self.eval(&a.multiply(&u, &v));
            let rhs = self.group.multiply(&self.eval(&u), &self.eval(&v));
            let ok = self.group.equals(&lhs, &rhs);
            hom.record(
                ok,
                || format!("f({} * {}) = {}", a.render(&u), a.render(&v), self.group.render(&lhs)),
                || self.group.render(&rhs),
            );
        }
        report.push(hom.entry("seeded word pairs"));

        let mut outside = Tally::new("(i) [H, ^f(a) H] = 1 for a not in B");
        let mut attempts = 0;
        while outside.total < samples && attempts < 100 * samples.max(1) {
            attempts += 1;
            let u = a.random_word(&mut rng, WORD_LEN);
            if a.membership_b(&u).expect("sampled from the tower") {
                continue;
            }
            let bad = self.h_commutes_with_conjugate(&self.eval(&u));
            let render = a.render(&u);
            outside.record(bad.is_none(), || format!("a = {render}: {}", bad.clone().unwrap().0), || bad.clone().unwrap().1);
        }
        let found = outside.total;
        report.push(outside.entry("sampled by rejection; the infinite index of B is not checked"));
        report.push(CheckEntry::new("non-B samples", found >= samples, found.to_string(), samples.to_string()));

        let mut inside = Tally::new("(ii) [H, f(b)] = 1 for b in B");
        for _ in 0..samples {
            let b = a.random_b(&mut rng, WORD_LEN / 2);
            let bad = self.commute_with_h(&self.eval(&b));
            let render = a.render(&b);
            inside.record(bad.is_none(), || format!("b = {render}: {}", bad.clone().unwrap().0), || bad.clone().unwrap().1);
        }
        report.push(inside.entry("direct B sampler"));

        for level in 1..=self.tower.depth() {
            let lambda = self.chain.lambda(level);
            let ball = self.ball(&lambda.elements);
            let al = self.tower.group(level).expect("level in range");
            let mut tally = Tally::new(format!("f(A_{level}) in Lambda_{level}"));
            for _ in 0..samples.min(50) {
                let u = al.random_word(&mut rng, BALL_RADIUS);
                let fu = self.eval_level(level, &u);
                let ok = ball.iter().any(|g| self.group.equals(g, &fu));
                tally.record(
                    ok,
                    || format!("f({}) = {}", al.render(&u), self.group.render(&fu)),
                    || format!("ball of radius {BALL_RADIUS}"),
                );
            }
            report.push(tally.entry(&format!("bounded: words of length <= {BALL_RADIUS}")));
            report.bounded = true;
        }
        report
    }

    /// All products of at most `BALL_RADIUS` letters.
    fn ball(&self, gens: &[G::Element]) -> Vec<G::Element> {
        let letters: Vec<G::Element> = gens.iter().flat_map(|g| [g.clone(), self.group.inverse(g)]).collect();
        let mut out = vec![self.group.identity()];
        let mut frontier = out.clone();
        for _ in 0..BALL_RADIUS {
            frontier = frontier
                .iter()
                .flat_map(|w| letters.iter().map(move |l| (w, l)))
                .map(|(w, l)| self.group.multiply(w, l))
                .collect();
            out.extend(frontier.iter().cloned());
        }
        out
    }
}

/// `F: H ≀_{A/B} A → Γ`, `F((h_x), g) = (∏_x ^{f(x)} h_x) · f(g)` over
/// canonical coset representatives in ascending order.
#[derive(Debug, Clone)]
pub struct ExtendedHom<G: Group + Clone> {
    pub f: TowerHom<G>,
    pub wreath: WreathProduct<G, CosetSpace>,
}

/// Extends `f` after a sampled check of properties (i) and (ii).
pub fn extend_to_wreath_hom<G: Group + Clone>(f: TowerHom<G>) -> Result<ExtendedHom<G>> {
    let report = f.check_hom(16, 0);
    if let Some(c) = report.counterexample() {
        return Err(Error::InvalidWitness(format!("f fails its obligations: {c}")));
    }
    let wreath = WreathProduct::new(f.group.clone(), CosetSpace::new(f.domain()));
    Ok(ExtendedHom { f, wreath })
}

impl<G: Group + Clone> ExtendedHom<G> {
    pub fn eval(&self, u: &WreathOf<G, CosetSpace>) -> G::Element {
        let g = &self.f.group;
        let mut acc = g.identity();
        for (x, h) in &u.base {
            acc = g.multiply(&acc, &conjugate_unchecked(g, &self.f.eval(x), h));
        }
        g.multiply(&acc, &self.f.eval(&u.top))
    }

    fn random_h<R: Rng>(&self, rng: &mut R) -> G::Element {
        random_word(&self.f.group, &self.f.chain.h.elements, rng, 3)
    }

    fn random_coset<R: Rng>(&self, rng: &mut R) -> TowerElement {
        self.wreath.space.coset(&self.f.domain().random_word(rng, 4))
    }

    /// A base-only element on up to three cosets.
    pub fn random_base<R: Rng>(&self, rng: &mut R) -> WreathOf<G, CosetSpace> {
        let count = rng.gen_range(1..=3);
        let entries: Vec<_> = (0..count).map(|_| (self.random_coset(rng), self.random_h(rng))).collect();
        self.wreath.element(entries, self.f.domain().identity())
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> WreathOf<G, CosetSpace> {
        let mut u = self.random_base(rng);
        u.top = self.f.domain().random_word(rng, 4);
        u
    }

    /// `F((h at 1B), e) = h` exactly, on generators and sampled words of `H`.
    pub fn check_inclusion(&self, samples: usize, seed: u64) -> VerificationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = &self.f.group;
        let one_b = self.wreath.space.coset(&self.f.domain().identity());
        let mut hs = self.f.chain.h.elements.clone();
        hs.extend((0..samples).map(|_| self.random_h(&mut rng)));
        let mut tally = Tally::new("F restricted to 1B is the inclusion");
        for h in hs {
            let image = self.eval(&self.wreath.at(one_b.clone(), h.clone()));
            tally.record(g.equals(&image, &h), || g.render(&image), || g.render(&h));
        }
        let mut report = VerificationReport::new("inclusion");
        report.push(tally.entry("exact"));
        report
    }

    /// `^{f(xb)} h = ^{f(x)} h` for sampled cosets `x`, `b ∈ B`, `h ∈ H`.
    pub fn check_representatives(&self, samples: usize, seed: u64) -> VerificationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = &self.f.group;
        let a = self.f.domain();
        let mut tally = Tally::new("formula is independent of the representative");
        for _ in 0..samples {
            let x = self.random_coset(&mut rng);
            let b = a.random_b(&mut rng, 4);
            let h = self.random_h(&mut rng);
            let lhs = conjugate_unchecked(g, &self.f.eval(&a.multiply(&x, &b)), &h);
            let rhs = conjugate_unchecked(g, &self.f.eval(&x), &h);
            tally.record(g.equals(&lhs, &rhs), || g.render(&lhs), || g.render(&rhs));
        }
        let mut report = VerificationReport::new("representatives");
        report.push(tally.entry("swapped x for xb"));
        report
    }

    pub fn check_hom(&self, samples: usize, seed: u64) -> VerificationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = &self.f.group;
        let mut tally = Tally::new("F(uv) = F(u)F(v)");
        for _ in 0..samples {
            let u = self.random_element(&mut rng);
            let v = self.random_element(&mut rng);
            let lhs = self.eval(&self.wreath.multiply(&u, &v));
            let rhs = g.multiply(&self.eval(&u), &self.eval(&v));
            tally.record(g.equals(&lhs, &rhs), || g.render(&lhs), || g.render(&rhs));
        }
        let mut report = VerificationReport::new("extended-hom");
        report.push(tally.entry("seeded pairs in H wr A"));
        report
    }
}

/// Samples non-trivial base-only elements, keeps those in the kernel of `F`,
/// and checks that they commute pairwise in `H ≀_{A/B} A`.
pub fn kernel_base_commutes<G: Group + Clone>(ext: &ExtendedHom<G>, samples: usize, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = &ext.wreath;
    let g = &ext.f.group;
    let mut kernel = Vec::new();
    for _ in 0..samples {
        let u = ext.random_base(&mut rng);
        if !w.is_identity(&u) && g.is_identity(&ext.eval(&u)) {
            kernel.push(u);
        }
    }
    let mut report = VerificationReport::new("kernel");
    let found = kernel.len();
    report.push(
        CheckEntry::new("kernel elements found", true, found.to_string(), samples.to_string()).with_detail(if found == 0 {
            "vacuous: no non-trivial kernel element sampled"
        } else {
            "base intersection K only"
        }),
    );
    let mut tally = Tally::new("kernel pairs commute");
    for (i, u) in kernel.iter().enumerate() {
        for v in &kernel[i + 1..] {
            let c = commutator_unchecked(w, u, v);
            tally.record(w.is_identity(&c), || w.render(&c), || "e".into());
        }
    }
    let detail = if tally.total == 0 { "vacuous" } else { "exact" };
    report.push(tally.entry(detail));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::{int, rational, IetGroup, IetMap};
    use crate::perm::{block_cycle, block_swap, FinPerm, FiniteSymmetric};

    fn iet_chain() -> (TowerSpec, WitnessChain<IetMap>) {
        let g = IetGroup;
        let h = GeneratorSet::new(&g, vec![IetMap::rotation(&int(1), &rational(1, 3)).unwrap()]).unwrap();
        let ts = vec![IetMap::block_exchange(&int(1)).unwrap(), IetMap::block_exchange(&int(2)).unwrap()];
        (TowerSpec::new(vec![2, 2]).unwrap(), WitnessChain::new(&g, h, ts, vec![2, 2]).unwrap())
    }

    fn perm_chain() -> (TowerSpec, WitnessChain<FinPerm>) {
        let g = FiniteSymmetric;
        let h = GeneratorSet::new(&g, vec!["(1 2 3)".parse().unwrap()]).unwrap();
        let ts = vec![block_cycle(3, 3).unwrap(), block_swap(9).unwrap()];
        (TowerSpec::new(vec![3, 2]).unwrap(), WitnessChain::new(&g, h, ts, vec![3, 2]).unwrap())
    }

    fn engineered() -> ExtendedHom<FiniteSymmetric> {
        let g = FiniteSymmetric;
        let c: FinPerm = "(1 2 3)".parse().unwrap();
        let h = GeneratorSet::new(&g, vec![c.clone()]).unwrap();
        let chain = WitnessChain::new(&g, h, vec![c], vec![3]).unwrap();
        let f = build_f(g, TowerSpec::new(vec![3]).unwrap(), chain).unwrap();
        extend_to_wreath_hom(f).unwrap()
    }

    #[test]
    fn level_one_is_powers_of_t1() {
        let (spec, chain) = perm_chain();
        let t1 = chain.ts[0].clone();
        let f = build_f(FiniteSymmetric, spec, chain).unwrap();
        for m in -2..=2 {
            assert_eq!(f.eval_level(1, &TowerElement::Base(m)), power(&FiniteSymmetric, &t1, m));
        }
        assert!(f.eval(&f.domain().identity()).is_identity());
        let a = f.domain();
        assert_eq!(f.eval(&a.generator(2).unwrap()), f.chain.ts[1]);
        assert_eq!(f.eval(&a.generator(1).unwrap()), f.chain.ts[0]);
    }

    #[test]
    fn iet_depth_two_homomorphism() {
        let (spec, chain) = iet_chain();
        let f = build_f(IetGroup, spec, chain).unwrap();
        let a = f.domain();
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for _ in 0..50 {
            let (u, v) = (a.random_word(&mut rng, 8), a.random_word(&mut rng, 8));
            assert_eq!(f.eval(&a.multiply(&u, &v)), f.eval(&u).compose(&f.eval(&v)));
        }
        let r = f.check_hom(50, 1);
        assert!(r.passed(), "{:?}", r.counterexample());
        assert!(r.bounded);
    }

    #[test]
    fn perm_depth_two_passes() {
        let (spec, chain) = perm_chain();
        let f = build_f(FiniteSymmetric, spec, chain).unwrap();
        let r = f.check_hom(50, 2);
        assert!(r.passed(), "{:?}", r.counterexample());
    }

    #[test]
    fn product_order_does_not_matter() {
        let (spec, chain) = perm_chain();
        let f = build_f(FiniteSymmetric, spec, chain).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let u = f.domain().random_word(&mut rng, 8);
            assert_eq!(f.eval(&u), f.eval_descending(&u));
        }
    }

    #[test]
    fn trivial_chain_is_vacuous() {
        let g = FiniteSymmetric;
        let chain = WitnessChain::new(&g, GeneratorSet::empty(&g), vec![block_swap(1).unwrap()], vec![2]).unwrap();
        let f = build_f(g, TowerSpec::new(vec![2]).unwrap(), chain).unwrap();
        let r = f.check_hom(20, 0);
        assert!(r.passed());
        assert!(r.entries.iter().any(|e| e.name == "vacuous"));
    }

    #[test]
    fn corrupted_chain_is_reported() {
        let g = FiniteSymmetric;
        let h = GeneratorSet::new(&g, vec!["(1 2 3)".parse().unwrap()]).unwrap();
        // block_cycle(3, 3) has order 3, so n_1 = 2 leaves t^2 overlapping H
        let ts = vec![block_cycle(3, 3).unwrap(), block_swap(9).unwrap()];
        assert!(WitnessChain::new(&g, h.clone(), ts.clone(), vec![2, 2]).is_err());
        let chain = WitnessChain::unchecked(h, ts, vec![2, 2]).unwrap();
        let spec = TowerSpec::new(vec![2, 2]).unwrap();
        assert!(build_f(g, spec.clone(), chain.clone()).is_err());
        let f = build_f_unchecked(g, spec, chain).unwrap();
        let r = f.check_hom(50, 3);
        assert!(!r.passed());
        assert!(r.counterexample().is_some());
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let (_, chain) = perm_chain();
        assert!(build_f(FiniteSymmetric, TowerSpec::new(vec![3, 3]).unwrap(), chain).is_err());
    }

    #[test]
    fn extension_restricts_to_inclusion() {
        let (spec, chain) = iet_chain();
        let ext = extend_to_wreath_hom(build_f(IetGroup, spec, chain).unwrap()).unwrap();
        assert!(ext.check_inclusion(20, 4).passed());
        assert!(ext.check_representatives(50, 4).passed());
        let r = ext.check_hom(50, 4);
        assert!(r.passed(), "{:?}", r.counterexample());
        assert!(ext.eval(&ext.wreath.identity()).is_identity());
    }

    #[test]
    fn extension_on_perm_chain() {
        let (spec, chain) = perm_chain();
        let ext = extend_to_wreath_hom(build_f(FiniteSymmetric, spec, chain).unwrap()).unwrap();
        assert!(ext.check_inclusion(20, 5).passed());
        assert!(ext.check_representatives(50, 5).passed());
        assert!(ext.check_hom(50, 5).passed());
    }

    #[test]
    fn engineered_kernel_commutes() {
        let ext = engineered();
        let r = kernel_base_commutes(&ext, 200, 6);
        assert!(r.passed());
        let found: usize = r.entries[0].lhs.parse().unwrap();
        assert!(found >= 1);
        assert_eq!(r.entries[1].detail, "exact");
        // identity lies in the kernel and commutes with everything
        let e = ext.wreath.identity();
        assert!(ext.eval(&e).is_identity());
    }

    #[test]
    fn injective_instance_is_vacuous() {
        let g = IetGroup;
        let h = GeneratorSet::new(&g, vec![IetMap::rotation(&int(1), &rational(1, 3)).unwrap()]).unwrap();
        let chain = WitnessChain::new(&g, h, vec![IetMap::block_exchange(&int(1)).unwrap()], vec![2]).unwrap();
        let ext = extend_to_wreath_hom(build_f(g, TowerSpec::new(vec![2]).unwrap(), chain).unwrap()).unwrap();
        let r = kernel_base_commutes(&ext, 100, 7);
        assert!(r.passed());
        assert_eq!(r.entries[0].lhs, "0");
        assert!(r.entries[0].detail.starts_with("vacuous"));
    }
}
