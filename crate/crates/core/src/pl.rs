//! Increasing piecewise linear homeomorphisms of `[0, 1]` with rational
//! vertices.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{power, GeneratorSet, Group, Witness, WitnessMode};
use crate::iet::{int, parse_rational, rational, Rational};
use crate::verify::{verify_czc, CheckEntry, VerificationReport};

/// Graph vertices `(x_i, y_i)` from `(0, 0)` to `(1, 1)`, both coordinates
/// strictly increasing, no interior vertex collinear with its neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlMap {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

/// Closed interval `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub a: Rational,
    pub b: Rational,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

fn is_power_of_two(n: &num_bigint::BigInt) -> bool {
    n.is_positive() && (n & (n - 1u8)).is_zero()
}

fn slope(x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational) -> Rational {
    (y1 - y0) / (x1 - x0)
}

impl PlMap {
    pub fn identity() -> Self {
        Self { xs: vec![int(0), int(1)], ys: vec![int(0), int(1)] }
    }

    pub fn new(vertices: Vec<(Rational, Rational)>) -> Result<Self> {
        let (xs, ys): (Vec<_>, Vec<_>) = vertices.into_iter().unzip();
        let endpoints_ok =
            xs.len() >= 2 && xs[0].is_zero() && ys[0].is_zero() && xs.last().unwrap().is_one() && ys.last().unwrap().is_one();
        if !endpoints_ok {
            return Err(Error::Precondition("vertices must run from (0, 0) to (1, 1)".into()));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) || ys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("vertices must be strictly increasing in both coordinates".into()));
        }
        Ok(Self::normalized(xs, ys))
    }

    fn normalized(xs: Vec<Rational>, ys: Vec<Rational>) -> Self {
        let mut nx = vec![xs[0].clone()];
        let mut ny = vec![ys[0].clone()];
        for i in 1..xs.len() {
            let k = nx.len();
            if k >= 2 {
                let s_prev = slope(&nx[k - 2], &ny[k - 2], &nx[k - 1], &ny[k - 1]);
                let s_here = slope(&nx[k - 1], &ny[k - 1], &xs[i], &ys[i]);
                if s_prev == s_here {
                    nx.pop();
                    ny.pop();
                }
            }
            nx.push(xs[i].clone());
            ny.push(ys[i].clone());
        }
        Self { xs: nx, ys: ny }
    }

    /// A one-vertex bump supported on `[c, d]` sending `m` to `y`.
    pub fn bump(c: &Rational, d: &Rational, m: &Rational, y: &Rational) -> Result<Self> {
        if !(c.is_positive() && c < m && m < d && *d < int(1) && c < y && y < d) {
            return Err(Error::Precondition(format!("bump on [{c}, {d}] with {m} ↦ {y}")));
        }
        let mut v = vec![(int(0), int(0))];
        v.extend([(c.clone(), c.clone()), (m.clone(), y.clone()), (d.clone(), d.clone())]);
        v.push((int(1), int(1)));
        Self::new(v)
    }

    /// The generator `x0` of Thompson's group F.
    pub fn thompson_x0() -> Self {
        Self::new(vec![(int(0), int(0)), (rational(1, 4), rational(1, 2)), (rational(1, 2), rational(3, 4)), (int(1), int(1))])
            .expect("valid vertices")
    }

    /// The generator `x1` of Thompson's group F.
    pub fn thompson_x1() -> Self {
        Self::new(vec![
            (int(0), int(0)),
            (rational(1, 2), rational(1, 2)),
            (rational(5, 8), rational(3, 4)),
            (rational(3, 4), rational(7, 8)),
            (int(1), int(1)),
        ])
        .expect("valid vertices")
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.xs.iter().zip(&self.ys)
    }

    pub fn is_identity(&self) -> bool {
        self.xs.len() == 2
    }

    fn eval(xs: &[Rational], ys: &[Rational], x: &Rational) -> Rational {
        let i = xs.partition_point(|v| v <= x);
        if i == 0 {
            return ys[0].clone();
        }
        if i == xs.len() {
            return ys[xs.len() - 1].clone();
        }
        &ys[i - 1] + slope(&xs[i - 1], &ys[i - 1], &xs[i], &ys[i]) * (x - &xs[i - 1])
    }

    pub fn apply(&self, x: &Rational) -> Result<Rational> {
        if x.is_negative() || *x > int(1) {
            return Err(Error::Precondition(format!("PL maps act on [0, 1], got {x}")));
        }
        Ok(Self::eval(&self.xs, &self.ys, x))
    }

    pub fn inverse(&self) -> PlMap {
        Self { xs: self.ys.clone(), ys: self.xs.clone() }
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &PlMap) -> PlMap {
        let mut cuts = other.xs.clone();
        cuts.extend(self.xs.iter().map(|y| Self::eval(&other.ys, &other.xs, y)));
        cuts.sort();
        cuts.dedup();
        let ys = cuts.iter().map(|x| Self::eval(&self.xs, &self.ys, &Self::eval(&other.xs, &other.ys, x))).collect();
        Self::normalized(cuts, ys)
    }

    /// Slopes of the linear pieces, left to right.
    pub fn slopes(&self) -> Vec<Rational> {
        (1..self.xs.len()).map(|i| slope(&self.xs[i - 1], &self.ys[i - 1], &self.xs[i], &self.ys[i])).collect()
    }

    /// Dyadic breakpoints and power-of-two slopes.
    pub fn is_thompson_f(&self) -> bool {
        let dyadic = |q: &Rational| is_power_of_two(q.denom());
        let power_of_two = |q: &Rational| is_power_of_two(q.numer()) && is_power_of_two(q.denom());
        self.xs.iter().chain(&self.ys).all(dyadic) && self.slopes().iter().all(power_of_two)
    }

    /// Closure of `{x : f(x) ≠ x}`, `None` for the identity.
    pub fn support_hull(&self) -> Option<Interval> {
        let moving: Vec<usize> =
            (1..self.xs.len()).filter(|&i| self.xs[i - 1] != self.ys[i - 1] || self.xs[i] != self.ys[i]).collect();
        let (first, last) = (moving.first()?, moving.last()?);
        Some(Interval { a: self.xs[first - 1].clone(), b: self.xs[*last].clone() })
    }

    /// Support hull, required to lie inside `(0, 1)`.
    pub fn compact_support(&self) -> Result<Option<Interval>> {
        match self.support_hull() {
            Some(iv) if iv.a.is_zero() || iv.b.is_one() => {
                Err(Error::NotCompactlySupported(format!("{self} moves points near {}", if iv.a.is_zero() { 0 } else { 1 })))
            }
            other => Ok(other),
        }
    }

    pub fn to_json(&self) -> PlJson {
        PlJson { vertices: self.vertices().map(|(x, y)| [x.to_string(), y.to_string()]).collect() }
    }

    pub fn from_json(j: &PlJson) -> Result<Self> {
        let v = j.vertices.iter().map(|[x, y]| Ok((parse_rational(x)?, parse_rational(y)?))).collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }
}

/// JSON shape `{"vertices": [["0", "0"], ["1/4", "1/2"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlJson {
    pub vertices: Vec<[String; 2]>,
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let v: Vec<String> = self.vertices().map(|(x, y)| format!("({x},{y})")).collect();
        write!(f, "{}", v.join(" "))
    }
}

/// Smallest closed interval containing every generator's support.
/// `Ok(None)` when all generators are trivial.
pub fn support_interval(h: &GeneratorSet<PlMap>) -> Result<Option<Interval>> {
    let mut out: Option<Interval> = None;
    for g in &h.elements {
        if let Some(iv) = g.compact_support()? {
            out = Some(match out {
                None => iv,
                Some(o) => Interval { a: o.a.min(iv.a), b: o.b.max(iv.b) },
            });
        }
    }
    Ok(out)
}

/// `t = x0^k` for the least `k ≥ 1` with `t(a) > b`.
pub fn displacement_witness(a: &Rational, b: &Rational, bound: u32) -> Result<Witness<PlMap>> {
    if *b >= int(1) {
        return Err(Error::Precondition(format!("need b < 1, got {b}")));
    }
    if !a.is_positive() || a > b {
        return Err(Error::Precondition(format!("need 0 < a ≤ b, got a = {a}, b = {b}")));
    }
    let x0 = PlMap::thompson_x0();
    let mut t = x0.clone();
    while t.apply(a)? <= *b {
        t = x0.compose(&t);
    }
    Witness::bounded(t, bound)
}

/// Runs the algebraic check of commuting Z-conjugates up to `P` alongside
/// the geometric disjointness of `t^p` translates of the supports, and
/// records whether the two verdicts agree.
pub fn verify_displaced_supports(h: &GeneratorSet<PlMap>, w: &Witness<PlMap>) -> Result<VerificationReport> {
    let WitnessMode::Bounded(bound) = w.mode else {
        return Err(Error::InvalidWitness("displaced supports need a Z-mode witness".into()));
    };
    let group = PlGroup;
    let t = &w.t;
    let mut report = VerificationReport::new(format!("displaced-supports(P={bound})"));
    report.bounded = true;
    let Some(hull) = support_interval(h)? else {
        report.push(CheckEntry::fact("vacuous", true, "H has empty support"));
        return Ok(report);
    };
    let algebraic = verify_czc(&group, h, w)?;
    let algebraic_ok = algebraic.passed();
    report.absorb(algebraic);

    let pieces: Vec<Interval> = h.elements.iter().filter_map(PlMap::support_hull).collect();
    let mut geometric_ok = true;
    for p in 1..=bound as i64 {
        let tp = power(&group, t, p);
        for (i, hi) in pieces.iter().enumerate() {
            for (j, hj) in pieces.iter().enumerate() {
                let (lo, hi_end) = (tp.apply(&hj.a)?, tp.apply(&hj.b)?);
                let disjoint = lo >= hi.b || hi_end <= hi.a;
                geometric_ok &= disjoint;
                report.push(
                    CheckEntry::new(
                        format!("supp h{} ∩ t^{p} supp h{} = ∅", i + 1, j + 1),
                        disjoint,
                        format!("[{lo}, {hi_end}]"),
                        hi.to_string(),
                    )
                    .with_detail("open supports"),
                );
            }
        }
    }
    let mut prev = hull.b.clone();
    let mut cur = t.apply(&hull.a)?;
    for p in 1..=bound {
        report.push(CheckEntry::new(format!("t^{p}(a) > t^{}(b)", p - 1), cur > prev, cur.to_string(), prev.to_string()));
        prev = t.apply(&prev)?;
        cur = t.apply(&cur)?;
    }
    report.push(CheckEntry::new(
        "algebraic and geometric verdicts agree",
        algebraic_ok == geometric_ok,
        algebraic_ok.to_string(),
        geometric_ok.to_string(),
    ));
    Ok(report)
}

/// `PL_+([0, 1])`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlGroup;

impl Group for PlGroup {
    type Element = PlMap;

    fn name(&self) -> String {
        "PL+([0,1])".into()
    }
    fn identity(&self) -> PlMap {
        PlMap::identity()
    }
    fn multiply(&self, a: &PlMap, b: &PlMap) -> PlMap {
        a.compose(b)
    }
    fn inverse(&self, a: &PlMap) -> PlMap {
        a.inverse()
    }
    fn equals(&self, a: &PlMap, b: &PlMap) -> bool {
        a == b
    }
    fn render(&self, a: &PlMap) -> String {
        a.to_string()
    }
}

/// A random map with dyadic vertices of denominator `2^depth`.
pub fn random_pl(rng: &mut impl rand::Rng, interior: usize, depth: u32) -> PlMap {
    use rand::seq::index::sample;
    let den = 1i64 << depth;
    let pick = |rng: &mut _| {
        let mut v: Vec<i64> = sample(rng, den as usize - 1, interior).into_iter().map(|k| k as i64 + 1).collect();
        v.sort();
        v
    };
    let xs = pick(rng);
    let ys = pick(rng);
    let mut v = vec![(int(0), int(0))];
    v.extend(xs.into_iter().zip(ys).map(|(x, y)| (rational(x, den), rational(y, den))));
    v.push((int(1), int(1)));
    PlMap::new(v).expect("sorted distinct dyadics")
}

/// A bump inside `[lo, hi]` with dyadic vertices of denominator `2^depth`,
/// pushing its interior vertex to the right.
pub fn random_bump(rng: &mut impl rand::Rng, lo: &Rational, hi: &Rational, depth: u32) -> Result<PlMap> {
    let den = 1i64 << depth;
    let k_lo = num_traits::ToPrimitive::to_i64(&(lo * int(den)).ceil().to_integer()).unwrap_or(0);
    let k_hi = num_traits::ToPrimitive::to_i64(&(hi * int(den)).floor().to_integer()).unwrap_or(0);
    if k_hi - k_lo < 3 {
        return Err(Error::Precondition(format!("[{lo}, {hi}] too short for a bump at depth {depth}")));
    }
    let c = rng.gen_range(k_lo..=k_hi - 3);
    let d = rng.gen_range(c + 3..=k_hi);
    let m = rng.gen_range(c + 1..d - 1);
    let y = rng.gen_range(m + 1..d);
    PlMap::bump(&rational(c, den), &rational(d, den), &rational(m, den), &rational(y, den))
}
