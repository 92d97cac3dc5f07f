//! Per-family verification batteries behind a common trait, registered by id.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::braid::{block_pass_witness, braids_equal, check_braid_relations, underlying_permutation, BraidGroup, BraidWord};
use crate::error::{Error, Result};
use crate::free::{aut_block_swap_witness, FreeAutGroup, FreeAutomorphism};
use crate::group::{conjugate, derived_witness, power, GeneratorSet, Group, Witness, DEFAULT_BOUND};
use crate::iet::{block_exchange_witness, int, random_iet, rational, IetGroup, IetMap};
use crate::matrix::{classical_witness, preserves_form, sp_embed, ClassicalFamily, FormKind, FormTag, MatrixGroup, Ring};
use crate::perm::{block_cycle, block_swap, FinPerm, FiniteSymmetric, Parity};
use crate::pl::{displacement_witness, random_bump, random_pl, verify_displaced_supports, PlGroup, PlMap};
use crate::product::{combine_product_witnesses, ProductFactor};
use crate::verify::{check_group_laws, verify_ccc, verify_czc, CheckEntry, VerificationReport};
use crate::wreath::{
    build_f, closure_system_witness, extend_to_wreath_hom, kernel_base_commutes, random_word, TowerSpec, WitnessChain,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub family: String,
    pub size: usize,
    pub depth: usize,
    pub bound: u32,
    pub samples: usize,
    pub seed: u64,
    /// Record wall-clock time in the report. Off by default so that reports
    /// are reproducible byte for byte.
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { family: String::new(), size: 2, depth: 2, bound: DEFAULT_BOUND, samples: 50, seed: 0, timing: false }
    }
}

impl SuiteConfig {
    pub fn new(family: impl Into<String>) -> Self {
        Self { family: family.into(), ..Default::default() }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn params(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("size".into(), json!(self.size));
        m.insert("depth".into(), json!(self.depth));
        m.insert("bound".into(), json!(self.bound));
        m.insert("samples".into(), json!(self.samples));
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

impl From<CheckEntry> for CheckRecord {
    fn from(e: CheckEntry) -> Self {
        Self { name: e.name, status: if e.passed { "pass" } else { "fail" }, lhs: e.lhs, rhs: e.rhs, detail: e.detail }
    }
}

/// The serialized outcome of one suite run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub family: String,
    pub params: Map<String, Value>,
    pub checks: Vec<CheckRecord>,
    pub bounded: bool,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status != "pass")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "family {} ({}) seed {}", self.family, params.join(" "), self.seed);
        for c in &self.checks {
            let _ = write!(out, "{} {}: {} = {}", c.status.to_uppercase(), c.name, c.lhs, c.rhs);
            if !c.detail.is_empty() {
                let _ = write!(out, " [{}]", c.detail);
            }
            out.push('\n');
        }
        let pass = self.checks.len() - self.failures().count();
        let _ = writeln!(
            out,
            "{pass}/{} checks passed; bounded: {}; elapsed_ms: {}",
            self.checks.len(),
            self.bounded,
            self.elapsed_ms
        );
        out
    }
}

/// A verification battery for one family.
pub trait FamilySuite: Send + Sync {
    fn id(&self) -> &'static str;
    /// What a passing run certifies.
    fn certifies(&self) -> &'static str;
    /// Whether the battery includes Z-mode checks truncated at `p ≤ P`.
    fn z_mode(&self) -> bool;
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport>;
}

pub struct Registry {
    suites: Vec<Box<dyn FamilySuite>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self { suites: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(PermSuite));
        for family in ClassicalFamily::ALL {
            r.register(Box::new(ClassicalSuite(family)));
        }
        r.register(Box::new(BraidSuite));
        r.register(Box::new(AutFreeSuite));
        r.register(Box::new(IetSuite));
        r.register(Box::new(PlSuite));
        r.register(Box::new(TowerSuite));
        r.register(Box::new(ClosureSuite));
        r.register(Box::new(ProductSuite));
        r.register(Box::new(DerivedSuite));
        r
    }

    /// Adds a suite, replacing any suite with the same id.
    pub fn register(&mut self, suite: Box<dyn FamilySuite>) {
        self.suites.retain(|s| s.id() != suite.id());
        self.suites.push(suite);
    }

    pub fn get(&self, id: &str) -> Result<&dyn FamilySuite> {
        self.suites.iter().find(|s| s.id() == id).map(|s| s.as_ref()).ok_or_else(|| Error::UnknownFamily(id.to_string()))
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.id()).collect()
    }

    pub fn suites(&self) -> impl Iterator<Item = &dyn FamilySuite> {
        self.suites.iter().map(|s| s.as_ref())
    }

    /// Runs the configured family. Construction errors inside a known suite
    /// become a failing check rather than an `Err`.
    pub fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let suite = self.get(&cfg.family)?;
        if cfg.bound < 1 {
            return Err(Error::Precondition("bound P must be at least 1".into()));
        }
        let start = Instant::now();
        let report = suite.run(cfg).unwrap_or_else(|e| {
            let mut r = VerificationReport::new(cfg.family.clone());
            r.push(CheckEntry::fact("construction", false, e.to_string()));
            r
        });
        let elapsed_ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };
        Ok(SuiteReport {
            family: cfg.family.clone(),
            params: cfg.params(),
            checks: report.entries.into_iter().map(CheckRecord::from).collect(),
            bounded: report.bounded,
            seed: cfg.seed,
            elapsed_ms,
        })
    }

    pub fn list_text(&self) -> String {
        let mut out = String::new();
        for s in self.suites() {
            let mode = if s.z_mode() { "  [includes Z-mode checks, truncated to 1 <= p <= P]" } else { "" };
            let _ = writeln!(out, "{:<13} {}{mode}", s.id(), s.certifies());
        }
        out.push_str("\nZ-mode checks verify [H, t^p H t^-p] = 1 only for 1 <= p <= P (--bound, default 8);\n");
        out.push_str("reports that contain one carry \"bounded\": true.\n");
        out
    }

    pub fn list_json(&self) -> String {
        let families: Vec<Value> =
            self.suites().map(|s| json!({ "id": s.id(), "certifies": s.certifies(), "z_mode": s.z_mode() })).collect();
        let v = json!({
            "families": families,
            "bound_semantics": "Z-mode checks verify [H, t^p H t^-p] = 1 for 1 <= p <= P only; such reports carry \"bounded\": true",
            "default_bound": DEFAULT_BOUND,
        });
        serde_json::to_string_pretty(&v).expect("plain data")
    }
}

fn relabel(mut r: VerificationReport, name: impl Into<String>) -> VerificationReport {
    r.suite = name.into();
    r
}

fn group_laws<G, F>(group: &G, cfg: &SuiteConfig, sample: F) -> VerificationReport
where
    G: Group,
    F: FnMut(&mut ChaCha8Rng) -> G::Element,
{
    let mut rng = cfg.rng();
    let mut r = check_group_laws(group, cfg.samples, &mut rng, sample);
    r.elapsed = Default::default();
    r
}

/// `(1 2)` and `(1 2 ⋯ n)`.
pub fn sym_generators(n: u32) -> Vec<FinPerm> {
    let mut out = Vec::new();
    if n >= 2 {
        out.push(FinPerm::cycle(&[1, 2]).expect("distinct"));
    }
    if n >= 3 {
        out.push(FinPerm::cycle(&(1..=n).collect::<Vec<_>>()).expect("distinct"));
    }
    out
}

struct PermSuite;

impl FamilySuite for PermSuite {
    fn id(&self) -> &'static str {
        "perm"
    }
    fn certifies(&self) -> &'static str {
        "finitely supported permutations: block swap of [1,n] and [n+1,2n] (order 2) and a 3-block cycle (order 3)"
    }
    fn z_mode(&self) -> bool {
        false
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let n = cfg.size.max(1) as u32;
        let g = FiniteSymmetric;
        let h = GeneratorSet::new(&g, sym_generators(n))?;
        let mut report = VerificationReport::new("perm");
        let swap = block_swap(n)?;
        report.absorb(relabel(verify_ccc(&g, &h, &Witness::finite(swap.clone(), 2)?)?, "block-swap"));
        report.absorb(relabel(verify_ccc(&g, &h, &Witness::finite(block_cycle(n, 3)?, 3)?)?, "block-cycle"));
        let expected = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        report.push(CheckEntry::new(
            "parity of the block swap",
            swap.parity() == expected,
            format!("{:?}", swap.parity()),
            format!("{expected:?}"),
        ));
        let mut gens = sym_generators(2 * n);
        gens.push(swap);
        report.absorb(group_laws(&g, cfg, |r| random_word(&g, &gens, r, 6)));
        Ok(report)
    }
}

struct ClassicalSuite(ClassicalFamily);

impl FamilySuite for ClassicalSuite {
    fn id(&self) -> &'static str {
        self.0.id()
    }
    fn certifies(&self) -> &'static str {
        match self.0 {
            ClassicalFamily::GL => "GL_n over Z and Z/5: permutation matrix of the even block swap",
            ClassicalFamily::SL => "SL_n over Z and Z/5: permutation matrix of the even block swap",
            ClassicalFamily::O => "O_n over Z and Z/5: block swap preserving the standard form",
            ClassicalFamily::SO => "SO_n over Z and Z/5: block swap with determinant 1",
            ClassicalFamily::E => "elementary E_n over Z and Z/5: block swap in E_2n",
            ClassicalFamily::Sp => "Sp_2n over Z and Z/5: diag(P, P) for the block swap P, preserving J",
            ClassicalFamily::Onn => "O_n,n over Z and Z/5: swap of the first 2n basis vectors, preserving I_n (x) diag(1,-1)",
        }
    }
    fn z_mode(&self) -> bool {
        false
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let family = self.0;
        let n = cfg.size.max(1);
        let level = if family.alt_based() && n % 2 == 1 { n + 1 } else { n };
        let mut report = VerificationReport::new(family.id());
        if level != n {
            report.push(CheckEntry::fact("stabilized to even level", true, format!("n = {n} -> {level}")));
        }
        for ring in [Ring::Integers, Ring::modular(5)?] {
            let cw = classical_witness(family, ring, level)?;
            let host = cw.host;
            let name = host.name();
            let gens = cw.source.level_generators();
            let h = gens.iter().map(|m| cw.embed(m)).collect::<Result<Vec<_>>>()?;
            let h = GeneratorSet::new(&host, h)?;
            report.absorb(relabel(verify_ccc(&host, &h, &cw.witness)?, name.clone()));
            let t = &cw.witness.t;
            report.push(CheckEntry::fact(format!("{name}: t is a member"), host.contains(t), "defining equations"));
            let kind = match family {
                ClassicalFamily::Sp => Some(FormKind::Symplectic),
                ClassicalFamily::Onn => Some(FormKind::SplitOrthogonal),
                ClassicalFamily::O | ClassicalFamily::SO => Some(FormKind::Standard),
                _ => None,
            };
            if let Some(kind) = kind {
                let ok = preserves_form(t, FormTag::new(kind, t.size())?)?;
                report.push(CheckEntry::fact(format!("{name}: t preserves the {kind:?} form"), ok, "M^T J M = J"));
            }
            if family.alt_based() {
                let det = ring.reduce(t.det());
                report.push(CheckEntry::new(format!("{name}: det t"), det == 1.into(), det.to_string(), "1"));
                let parity = block_swap(level as u32)?.parity();
                report.push(CheckEntry::new(
                    format!("{name}: parity of the block swap"),
                    parity == Parity::Even,
                    format!("{parity:?}"),
                    "Even",
                ));
            }
            if family == ClassicalFamily::Sp {
                let mut bad = Vec::new();
                for g in &gens {
                    let e = sp_embed(g)?;
                    if !preserves_form(&e, FormTag::new(FormKind::Symplectic, e.size())?)? {
                        bad.push(e.to_string());
                    }
                }
                report.push(
                    CheckEntry::new(format!("{name}: sp_embed preserves J"), bad.is_empty(), bad.len().to_string(), "0")
                        .with_detail(format!("{} generators", gens.len())),
                );
            }
            let mut pool = h.elements.clone();
            pool.push(t.clone());
            report.absorb(relabel(group_laws(&host, cfg, |r| random_word(&host, &pool, r, 4)), format!("{name}/group-laws")));
        }
        Ok(report)
    }
}

struct BraidSuite;

impl FamilySuite for BraidSuite {
    fn id(&self) -> &'static str {
        "braid"
    }
    fn certifies(&self) -> &'static str {
        "braid groups: passing strands 1..n over n+1..2n in B_2n, checked through the Artin action"
    }
    fn z_mode(&self) -> bool {
        false
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let n = cfg.size.max(1);
        let strands = 2 * n;
        let g = BraidGroup { strands };
        let h = (1..n).map(|i| BraidWord::new(strands, vec![i as i32])).collect::<Result<Vec<_>>>()?;
        let h = GeneratorSet::new(&g, h)?;
        let w = block_pass_witness(n)?;
        let mut report = VerificationReport::new("braid");
        report.absorb(relabel(verify_ccc(&g, &h, &w)?, format!("B_{strands}")));
        let perm = underlying_permutation(&w.t);
        let swap = block_swap(n as u32)?;
        report.push(CheckEntry::new("underlying permutation of t", perm == swap, perm.to_string(), swap.to_string()));
        let t2 = power(&g, &w.t, 2);
        report.push(CheckEntry::fact("t^2 is not trivial", !braids_equal(&t2, &g.identity()), "t is not an involution in B_2n"));
        report.absorb(check_braid_relations(strands));
        report.absorb(group_laws(&g, cfg, |r| {
            let len = r.gen_range(0..=6);
            let letters = (0..len).map(|_| r.gen_range(1..strands as i32) * if r.gen_bool(0.5) { 1 } else { -1 }).collect();
            BraidWord::new(strands, letters).expect("letters in range")
        }));
        Ok(report)
    }
}

/// Nielsen generators of `Aut(F_n)` stabilized into `Aut(F_rank)`.
pub fn nielsen_generators(n: usize, rank: usize) -> Result<Vec<FreeAutomorphism>> {
    let mut out = vec![FreeAutomorphism::invert_generator(n, 1)?];
    if n >= 2 {
        let mut swap: Vec<usize> = (1..=n).collect();
        swap.swap(0, 1);
        out.push(FreeAutomorphism::permutation(&swap)?);
        out.push(FreeAutomorphism::right_multiply(n, 1, 2, 1)?);
    }
    if n >= 3 {
        let cycle: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
        out.push(FreeAutomorphism::permutation(&cycle)?);
    }
    out.iter().map(|a| a.stabilize(rank)).collect()
}

struct AutFreeSuite;

impl FamilySuite for AutFreeSuite {
    fn id(&self) -> &'static str {
        "aut-free"
    }
    fn certifies(&self) -> &'static str {
        "automorphisms of free groups: swap of x_i and x_{i+n} in Aut(F_2n)"
    }
    fn z_mode(&self) -> bool {
        false
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let n = cfg.size.max(1);
        let g = FreeAutGroup { rank: 2 * n };
        let h = GeneratorSet::new(&g, nielsen_generators(n, 2 * n)?)?;
        let t = aut_block_swap_witness(n)?;
        let mut report = VerificationReport::new("aut-free");
        report.absorb(relabel(verify_ccc(&g, &h, &Witness::finite(t.clone(), 2)?)?, g.name()));
        let mut pool = h.elements.clone();
        pool.push(t);
        report.absorb(group_laws(&g, cfg, |r| random_word(&g, &pool, r, 5)));
        Ok(report)
    }
}

/// Generators of a subgroup of `IET([0, n))`: a rotation, a half exchange and
/// a seeded three-piece rearrangement.
pub fn iet_generators(n: i64, rng: &mut impl Rng) -> Result<Vec<IetMap>> {
    let len = int(n);
    let mut order = vec![0, 1, 2];
    order.shuffle(rng);
    Ok(vec![
        IetMap::rotation(&len, &rational(1, 3))?,
        IetMap::block_exchange(&rational(n, 2))?,
        IetMap::from_rearrangement(&[rational(n, 4), rational(n, 4), rational(n, 2)], &order)?,
    ])
}

struct IetSuite;

impl FamilySuite for IetSuite {
    fn id(&self) -> &'static str {
        "iet"
    }
    fn certifies(&self) -> &'static str {
        "interval exchanges of [0,inf): exchange of [0,n) with [n,2n), and a block cycle for Z-conjugates"
    }
    fn z_mode(&self) -> bool {
        true
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let n = cfg.size.max(1) as i64;
        let g = IetGroup;
        let mut rng = cfg.rng();
        let h = GeneratorSet::new(&g, iet_generators(n, &mut rng)?)?;
        let mut report = VerificationReport::new("iet");
        report.absorb(relabel(verify_ccc(&g, &h, &block_exchange_witness(&int(n))?)?, "block-exchange"));
        let cycle = IetMap::block_cycle(&int(n), cfg.bound as usize + 1)?;
        report.absorb(relabel(verify_czc(&g, &h, &Witness::bounded(cycle, cfg.bound)?)?, "block-cycle"));
        report.push(iet_integrity(&mut rng, cfg.samples));
        report.absorb(group_laws(&g, cfg, |r| random_iet(r, 5)));
        Ok(report)
    }
}

/// Partition, length and tail invariants of random compositions, and
/// `f ∘ f⁻¹ = id`.
pub fn iet_integrity(rng: &mut impl Rng, samples: usize) -> CheckEntry {
    let mut first = None;
    let mut ok = 0;
    for k in 0..samples {
        let f = random_iet(rng, 5);
        let g = random_iet(rng, 5);
        let c = f.compose(&g);
        let tail = f.support_bound().max(g.support_bound());
        let checks = [
            ("partition", c.is_valid()),
            ("lengths", c.piece_lengths() == c.image_lengths()),
            ("tail", c.support_bound() <= tail && c.apply(&tail).is_ok_and(|y| y == tail)),
            ("inverse", c.compose(&c.inverse()).is_identity() && f.compose(&f.inverse()).is_identity()),
        ];
        match checks.iter().find(|(_, pass)| !pass) {
            None => ok += 1,
            Some((what, _)) if first.is_none() => first = Some(format!("#{k} {what}: f = {f}, g = {g}")),
            _ => {}
        }
    }
    let entry = CheckEntry::new("random compositions keep the invariants", ok == samples, ok.to_string(), samples.to_string());
    entry.with_detail(first.unwrap_or_else(|| "partition, length multiset, fixed tail, f f^-1 = id".into()))
}

/// `(H, t)` for a PL instance: two bumps inside `[lo, hi]` and the least
/// power of `x0` carrying `lo` past `hi`.
pub fn pl_instance(rng: &mut impl Rng, bound: u32) -> Result<(GeneratorSet<PlMap>, Witness<PlMap>)> {
    let j = rng.gen_range(1..=10);
    let w = rng.gen_range(2..=(15 - j).min(6));
    let (lo, hi) = (rational(j, 16), rational(j + w, 16));
    let h = vec![random_bump(rng, &lo, &hi, 6)?, random_bump(rng, &lo, &hi, 6)?];
    Ok((GeneratorSet::new(&PlGroup, h)?, displacement_witness(&lo, &hi, bound)?))
}

/// The bump on `[1/4, 1/2]` with its displacement witness.
pub fn pl_reference_instance(bound: u32) -> Result<(GeneratorSet<PlMap>, Witness<PlMap>)> {
    let (a, b) = (rational(1, 4), rational(1, 2));
    let bump = PlMap::bump(&a, &b, &rational(5, 16), &rational(3, 8))?;
    Ok((GeneratorSet::new(&PlGroup, vec![bump])?, displacement_witness(&a, &b, bound)?))
}

struct PlSuite;

impl FamilySuite for PlSuite {
    fn id(&self) -> &'static str {
        "pl"
    }
    fn certifies(&self) -> &'static str {
        "compactly supported PL homeomorphisms: t in Thompson's F with t(a) > b displaces supp H in [a,b]"
    }
    fn z_mode(&self) -> bool {
        true
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let mut rng = cfg.rng();
        let mut instances = vec![pl_reference_instance(cfg.bound)?];
        for _ in 0..cfg.size {
            instances.push(pl_instance(&mut rng, cfg.bound)?);
        }
        let mut report = VerificationReport::new("pl");
        for (k, (h, w)) in instances.iter().enumerate() {
            report.absorb(relabel(verify_displaced_supports(h, w)?, format!("instance{k}")));
            report.push(CheckEntry::fact(format!("instance{k}: t in F"), w.t.is_thompson_f(), w.t.to_string()));
        }
        report.absorb(group_laws(&PlGroup, cfg, |r| random_pl(r, 3, 4)));
        Ok(report)
    }
}

/// `H = ⟨(1 2 3)⟩`, `t_1` a 3-cycle of blocks of size 3, then block swaps of
/// doubling size.
pub fn perm_chain(depth: usize) -> Result<(TowerSpec, WitnessChain<FinPerm>)> {
    let g = FiniteSymmetric;
    let h = GeneratorSet::new(&g, vec![FinPerm::cycle(&[1, 2, 3])?])?;
    let mut ts = vec![block_cycle(3, 3)?];
    let mut orders = vec![3];
    for i in 2..=depth {
        ts.push(block_swap(9 << (i - 2))?);
        orders.push(2);
    }
    Ok((TowerSpec::new(orders.clone())?, WitnessChain::new(&g, h, ts, orders)?))
}

/// `H = ⟨rotation of [0,1) by 1/3⟩`, `t_i` the exchange of `[0, 2^{i-1})`
/// with the next block.
pub fn iet_chain(depth: usize) -> Result<(TowerSpec, WitnessChain<IetMap>)> {
    let g = IetGroup;
    let h = GeneratorSet::new(&g, vec![IetMap::rotation(&int(1), &rational(1, 3))?])?;
    let ts = (0..depth).map(|i| IetMap::block_exchange(&int(1 << i))).collect::<Result<Vec<_>>>()?;
    let orders = vec![2; depth];
    Ok((TowerSpec::new(orders.clone())?, WitnessChain::new(&g, h, ts, orders)?))
}

fn tower_battery<G>(
    report: &mut VerificationReport,
    label: &str,
    group: G,
    spec: TowerSpec,
    chain: WitnessChain<G::Element>,
    cfg: &SuiteConfig,
) -> Result<()>
where
    G: Group + Clone,
{
    report.absorb(relabel(chain.check(&group)?, format!("{label}/chain")));
    let f = build_f(group, spec, chain)?;
    report.absorb(relabel(f.check_hom(cfg.samples, cfg.seed), format!("{label}/f")));
    let ext = extend_to_wreath_hom(f)?;
    report.absorb(relabel(ext.check_inclusion(cfg.samples, cfg.seed), format!("{label}/inclusion")));
    report.absorb(relabel(ext.check_representatives(cfg.samples, cfg.seed), format!("{label}/representatives")));
    report.absorb(relabel(ext.check_hom(cfg.samples, cfg.seed), format!("{label}/F")));
    report.absorb(relabel(kernel_base_commutes(&ext, cfg.samples, cfg.seed), format!("{label}/kernel")));
    Ok(())
}

struct TowerSuite;

impl FamilySuite for TowerSuite {
    fn id(&self) -> &'static str {
        "wreath-tower"
    }
    fn certifies(&self) -> &'static str {
        "iterated wreath products: f from A_k, its extension to H wr A_k, and abelian kernel on the base"
    }
    fn z_mode(&self) -> bool {
        true
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let depth = cfg.depth.max(1);
        let mut report = VerificationReport::new("wreath-tower");
        let (spec, chain) = perm_chain(depth)?;
        tower_battery(&mut report, "perm", FiniteSymmetric, spec, chain, cfg)?;
        let (spec, chain) = iet_chain(depth)?;
        tower_battery(&mut report, "iet", IetGroup, spec, chain, cfg)?;

        let g = FiniteSymmetric;
        let c = FinPerm::cycle(&[1, 2, 3])?;
        let chain = WitnessChain::new(&g, GeneratorSet::new(&g, vec![c.clone()])?, vec![c], vec![3])?;
        let ext = extend_to_wreath_hom(build_f(g, TowerSpec::new(vec![3])?, chain)?)?;
        let kernel = kernel_base_commutes(&ext, cfg.samples.max(50), cfg.seed);
        let pairs = kernel.entries.last().map(|e| e.rhs.clone()).unwrap_or_default();
        let found = pairs.parse::<usize>().unwrap_or(0);
        report.push(
            CheckEntry::new("engineered/kernel pairs found", found >= 1, found.to_string(), ">= 1")
                .with_detail("H = T = <(1 2 3)>"),
        );
        report.absorb(relabel(kernel, "engineered/kernel"));
        Ok(report)
    }
}

struct ClosureSuite;

impl FamilySuite for ClosureSuite {
    fn id(&self) -> &'static str {
        "closure"
    }
    fn certifies(&self) -> &'static str {
        "equation systems [g_i, x g_j x^-1] = [g_i, x^2] = e solved in G wr_{Z/2} Z, for perm, SL_2(Z) and IET"
    }
    fn z_mode(&self) -> bool {
        false
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("closure");
        let perm = FiniteSymmetric;
        report.absorb(closure_system_witness(&perm, &GeneratorSet::new(&perm, sym_generators(cfg.size.max(3) as u32))?)?);
        let sl2 = MatrixGroup::new(ClassicalFamily::SL, Ring::Integers, 2);
        report.absorb(closure_system_witness(&sl2, &GeneratorSet::new(&sl2, sl2.level_generators())?)?);
        let iet = IetGroup;
        let gens = vec![IetMap::rotation(&int(1), &rational(1, 3))?, IetMap::block_exchange(&rational(1, 2))?];
        report.absorb(closure_system_witness(&iet, &GeneratorSet::new(&iet, gens)?)?);
        Ok(report)
    }
}

struct ProductSuite;

impl FamilySuite for ProductSuite {
    fn id(&self) -> &'static str {
        "product"
    }
    fn certifies(&self) -> &'static str {
        "direct products: componentwise Z-conjugate witness for IET x PL x IET"
    }
    fn z_mode(&self) -> bool {
        true
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let p = cfg.bound;
        let iet = |h: IetMap| -> Result<ProductFactor> {
            let t = IetMap::block_cycle(&int(1), p as usize + 1)?;
            Ok(ProductFactor::new(IetGroup, GeneratorSet::new(&IetGroup, vec![h])?, Witness::bounded(t, p)?))
        };
        let (h_pl, w_pl) = pl_reference_instance(p)?;
        let factors = vec![
            iet(IetMap::rotation(&int(1), &rational(1, 3))?)?,
            ProductFactor::new(PlGroup, h_pl, w_pl),
            iet(IetMap::block_exchange(&rational(1, 2))?)?,
        ];
        let (g, h, w) = combine_product_witnesses(factors)?;
        let mut report = VerificationReport::new("product");
        report.absorb(relabel(verify_czc(&g, &h, &w)?, g.name()));
        report.push(CheckEntry::new("one coordinate per factor", w.t.len() == 3, w.t.len().to_string(), "3"));
        Ok(report)
    }
}

struct DerivedSuite;

impl FamilySuite for DerivedSuite {
    fn id(&self) -> &'static str {
        "derived"
    }
    fn certifies(&self) -> &'static str {
        "derived subgroups: c = [t, s] conjugates <H, t> as t does, so c is a witness inside [G, G]"
    }
    fn z_mode(&self) -> bool {
        true
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport> {
        let n = cfg.size.max(2) as u32;
        let g = FiniteSymmetric;
        let h = GeneratorSet::new(&g, sym_generators(n))?;
        let t = block_swap(n)?;
        let s = block_swap(2 * n)?;
        let k = h.extended(&t);
        let mut report = VerificationReport::new("derived");
        report.absorb(relabel(verify_ccc(&g, &k, &Witness::finite(s.clone(), 2)?)?, "s displaces K"));
        let c = derived_witness(&g, &t, &s)?;
        let mut first = None;
        let mut ok = 0;
        let mut total = 0;
        for p in 1..=cfg.bound as i64 {
            let (cp, tp) = (power(&g, &c, p), power(&g, &t, p));
            for (i, x) in k.elements.iter().enumerate() {
                total += 1;
                let (l, r) = (conjugate(&g, &cp, x)?, conjugate(&g, &tp, x)?);
                if l == r {
                    ok += 1;
                } else if first.is_none() {
                    first = Some((format!("p = {p}, k{}: {l}", i + 1), r.to_string()));
                }
            }
        }
        let (l, r) = first.unwrap_or((ok.to_string(), total.to_string()));
        report.push(
            CheckEntry::new("^(c^p) k = ^(t^p) k", ok == total, l, r).with_detail(format!("bounded: 1 <= p <= {}", cfg.bound)),
        );
        report.bounded = true;
        report.absorb(relabel(verify_ccc(&g, &h, &Witness::finite(c, 2)?)?, "c witnesses H"));
        Ok(report)
    }
}

/// Every registered family with what it certifies.
pub fn list_families() -> String {
    Registry::builtin().list_text()
}
