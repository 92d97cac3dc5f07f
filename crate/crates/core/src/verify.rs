//! The verification engine: commuting cyclic conjugates, commuting
//! Z-conjugates (bounded), and group-law sampling.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{commutator_unchecked, conjugate_unchecked, power, GeneratorSet, Group, Witness, WitnessMode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, passed: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Self { name: name.into(), passed, lhs: lhs.into(), rhs: rhs.into(), detail: String::new() }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// An entry that records a boolean fact without a meaningful lhs/rhs pair.
    pub fn fact(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self::new(name, passed, passed.to_string(), "true").with_detail(detail)
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub suite: String,
    pub entries: Vec<CheckEntry>,
    pub elapsed: Duration,
    /// True when any check truncates a universally quantified condition.
    pub bounded: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), ..Default::default() }
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    /// The first failing identity, rendered.
    pub fn counterexample(&self) -> Option<String> {
        self.failures().next().map(|e| format!("{}: {} != {}", e.name, e.lhs, e.rhs))
    }

    /// Appends another report's entries, prefixing their names.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.bounded |= other.bounded;
        self.elapsed += other.elapsed;
        for mut e in other.entries {
            e.name = format!("{}/{}", other.suite, e.name);
            self.entries.push(e);
        }
    }
}

fn identity_check<G: Group>(group: &G, name: String, value: &G::Element) -> CheckEntry {
    let e = group.identity();
    CheckEntry::new(name, group.equals(value, &e), group.render(value), group.render(&e))
}

fn check_all<G: Group>(group: &G, h: &GeneratorSet<G::Element>, t: &G::Element) -> Result<()> {
    for g in &h.elements {
        group.check_member(g)?;
    }
    group.check_member(t)
}

/// Pushes `[h_i, ^{t^p} h_j] = e` for every generator pair.
fn push_conjugate_identities<G: Group>(
    group: &G,
    report: &mut VerificationReport,
    h: &GeneratorSet<G::Element>,
    t: &G::Element,
    p: i64,
) {
    let tp = power(group, t, p);
    let conjugates: Vec<_> = h.elements.iter().map(|g| conjugate_unchecked(group, &tp, g)).collect();
    for (i, hi) in h.elements.iter().enumerate() {
        for (j, cj) in conjugates.iter().enumerate() {
            let c = commutator_unchecked(group, hi, cj);
            report.push(identity_check(group, format!("[h{}, ^(t^{p}) h{}]", i + 1, j + 1), &c));
        }
    }
}

/// Checks `[H, ᵗᵖH] = 1` for `1 ≤ p < n` and `[H, tⁿ] = 1` on generators.
pub fn verify_ccc<G: Group>(group: &G, h: &GeneratorSet<G::Element>, w: &Witness<G::Element>) -> Result<VerificationReport> {
    let n = match w.mode {
        WitnessMode::Finite(n) if n >= 2 => n,
        WitnessMode::Finite(n) => return Err(Error::InvalidWitness(format!("cyclic order must be at least 2, got {n}"))),
        WitnessMode::Bounded(_) => return Err(Error::InvalidWitness("verify_ccc needs a finite-order witness".into())),
    };
    check_all(group, h, &w.t)?;
    let start = Instant::now();
    let mut report = VerificationReport::new(format!("ccc(n={n})"));
    for p in 1..n as i64 {
        push_conjugate_identities(group, &mut report, h, &w.t, p);
    }
    let tn = power(group, &w.t, n as i64);
    for (i, hi) in h.elements.iter().enumerate() {
        let c = commutator_unchecked(group, hi, &tn);
        report.push(identity_check(group, format!("[h{}, t^{n}]", i + 1), &c));
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Bounded check of commuting Z-conjugates: `[H, ᵗᵖH] = 1` for
/// `1 ≤ |p| ≤ P`. The negative range is implied by the positive one and is
/// checked as a consistency assertion.
pub fn verify_czc<G: Group>(group: &G, h: &GeneratorSet<G::Element>, w: &Witness<G::Element>) -> Result<VerificationReport> {
    let bound = match w.mode {
        WitnessMode::Bounded(p) if p >= 1 => p,
        WitnessMode::Bounded(_) => return Err(Error::InvalidWitness("Z-mode bound must be at least 1".into())),
        WitnessMode::Finite(_) => return Err(Error::InvalidWitness("verify_czc needs a Z-mode witness".into())),
    };
    check_all(group, h, &w.t)?;
    let start = Instant::now();
    let mut report = VerificationReport::new(format!("czc(bounded, P={bound})"));
    report.bounded = true;
    for p in 1..=bound as i64 {
        push_conjugate_identities(group, &mut report, h, &w.t, p);
    }
    for p in 1..=bound as i64 {
        push_conjugate_identities(group, &mut report, h, &w.t, -p);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Dispatches on the witness mode.
pub fn verify_witness<G: Group>(group: &G, h: &GeneratorSet<G::Element>, w: &Witness<G::Element>) -> Result<VerificationReport> {
    match w.mode {
        WitnessMode::Finite(_) => verify_ccc(group, h, w),
        WitnessMode::Bounded(_) => verify_czc(group, h, w),
    }
}

/// Associativity, identity and inverse laws on `samples` random triples.
pub fn check_group_laws<G, R, F>(group: &G, samples: usize, rng: &mut R, mut sample: F) -> VerificationReport
where
    G: Group,
    R: Rng,
    F: FnMut(&mut R) -> G::Element,
{
    let start = Instant::now();
    let mut report = VerificationReport::new("group-laws");
    let e = group.identity();
    let (mut assoc, mut ident, mut inv) = (0usize, 0usize, 0usize);
    for k in 0..samples {
        let a = sample(rng);
        let b = sample(rng);
        let c = sample(rng);
        let left = group.multiply(&group.multiply(&a, &b), &c);
        let right = group.multiply(&a, &group.multiply(&b, &c));
        if !group.equals(&left, &right) {
            report.push(CheckEntry::new(format!("associativity #{k}"), false, group.render(&left), group.render(&right)));
        } else {
            assoc += 1;
        }
        let ea = group.multiply(&e, &a);
        let ae = group.multiply(&a, &e);
        if !(group.equals(&ea, &a) && group.equals(&ae, &a)) {
            report.push(CheckEntry::new(format!("identity #{k}"), false, group.render(&ea), group.render(&a)));
        } else {
            ident += 1;
        }
        let aa = group.multiply(&a, &group.inverse(&a));
        if !group.equals(&aa, &e) {
            report.push(CheckEntry::new(format!("inverse #{k}"), false, group.render(&aa), group.render(&e)));
        } else {
            inv += 1;
        }
    }
    report.push(CheckEntry::new("associativity", assoc == samples, assoc.to_string(), samples.to_string()));
    report.push(CheckEntry::new("identity", ident == samples, ident.to_string(), samples.to_string()));
    report.push(CheckEntry::new("inverse", inv == samples, inv.to_string(), samples.to_string()));
    report.elapsed = start.elapsed();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{cycles, TableSym};

    #[test]
    fn empty_generators_pass_vacuously() {
        let g = TableSym(4);
        let h = GeneratorSet::empty(&g);
        let w = Witness::finite(cycles(4, &[&[1, 2]]), 2).unwrap();
        assert!(verify_ccc(&g, &h, &w).unwrap().passed());
        let w = Witness::bounded(cycles(4, &[&[1, 2]]), 1).unwrap();
        let r = verify_czc(&g, &h, &w).unwrap();
        assert!(r.passed() && r.bounded);
    }

    #[test]
    fn alt_block_swap_passes() {
        let g = TableSym(8);
        let h = GeneratorSet::new(&g, vec![cycles(8, &[&[1, 2, 3]])]).unwrap();
        let t = cycles(8, &[&[1, 5], &[2, 6], &[3, 7], &[4, 8]]);
        let r = verify_ccc(&g, &h, &Witness::finite(t, 2).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.entries.len(), 2);
    }

    #[test]
    fn overlapping_conjugate_fails_with_counterexample() {
        let g = TableSym(4);
        let h = GeneratorSet::new(&g, vec![cycles(4, &[&[1, 2, 3]])]).unwrap();
        let t = cycles(4, &[&[3, 4]]);
        let r = verify_ccc(&g, &h, &Witness::finite(t, 2).unwrap()).unwrap();
        assert!(!r.passed());
        assert!(r.counterexample().unwrap().starts_with("[h1, ^(t^1) h1]"));
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let g = TableSym(3);
        let h = GeneratorSet::empty(&g);
        let z = Witness::bounded(g.identity(), 3).unwrap();
        assert!(verify_ccc(&g, &h, &z).is_err());
        let f = Witness::finite(g.identity(), 2).unwrap();
        assert!(verify_czc(&g, &h, &f).is_err());
        let bad = Witness { t: g.identity(), mode: WitnessMode::Finite(1) };
        assert!(verify_ccc(&g, &h, &bad).is_err());
    }

    #[test]
    fn group_laws_on_table_sym() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let g = TableSym(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r = check_group_laws(&g, 1000, &mut rng, |rng| {
            let mut v: Vec<usize> = (0..5).collect();
            v.shuffle(rng);
            v
        });
        assert!(r.passed());
    }
}
