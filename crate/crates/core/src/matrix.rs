//! Exact square matrices over Z and Z/m and the stabilized classical groups.
//!
//! Each classical family comes with its block-swap witness living one
//! stabilization step up: a permutation matrix (or a pair of them, for the
//! symplectic case) exchanging the first block of basis vectors with the
//! second.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, Witness};
use crate::perm::{block_swap, FinPerm, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Modular(u64),
}

impl Ring {
    pub fn modular(m: u64) -> Result<Ring> {
        if m < 2 {
            return Err(Error::Precondition(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Ring::Modular(m))
    }

    pub fn reduce(&self, x: BigInt) -> BigInt {
        match self {
            Ring::Integers => x,
            Ring::Modular(m) => x.mod_floor(&BigInt::from(*m)),
        }
    }

    pub fn is_unit(&self, x: &BigInt) -> bool {
        match self {
            Ring::Integers => x.abs().is_one(),
            Ring::Modular(m) => x.gcd(&BigInt::from(*m)).is_one(),
        }
    }

    pub fn unit_inverse(&self, x: &BigInt) -> Option<BigInt> {
        match self {
            Ring::Integers => x.abs().is_one().then(|| x.clone()),
            Ring::Modular(m) => {
                let m = BigInt::from(*m);
                let e = x.mod_floor(&m).extended_gcd(&m);
                e.gcd.is_one().then(|| e.x.mod_floor(&m))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Modular(m) => write!(f, "Z/{m}"),
        }
    }
}

/// Row-major `n × n` matrix with entries reduced in its ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    ring: Ring,
    size: usize,
    entries: Vec<BigInt>,
}

impl SquareMatrix {
    pub fn identity(ring: Ring, size: usize) -> Self {
        let mut m = Self::zero(ring, size);
        for i in 0..size {
            m.entries[i * size + i] = BigInt::one();
        }
        m
    }

    pub fn zero(ring: Ring, size: usize) -> Self {
        Self { ring, size, entries: vec![BigInt::zero(); size * size] }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(ring: Ring, rows: &[Vec<T>]) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::Parse(format!("row of length {} in a {size}×{size} matrix", row.len())));
            }
            entries.extend(row.iter().map(|x| ring.reduce(x.clone().into())));
        }
        Ok(Self { ring, size, entries })
    }

    /// Elementary matrix `I + r·e_{ij}` (1-based, `i ≠ j`).
    pub fn elementary(ring: Ring, size: usize, i: usize, j: usize, r: i64) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > size || j > size {
            return Err(Error::Precondition(format!("bad elementary index ({i}, {j}) for size {size}")));
        }
        let mut m = Self::identity(ring, size);
        m.set(i - 1, j - 1, BigInt::from(r));
        Ok(m)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.size + j]
    }

    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.size + j] = self.ring.reduce(v);
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.size.max(1)).take(self.size).map(<[BigInt]>::to_vec).collect()
    }

    fn same_shape(&self, other: &SquareMatrix) -> Result<()> {
        if self.size != other.size || self.ring != other.ring {
            return Err(Error::FamilyMismatch {
                expected: format!("{0}×{0} over {1}", self.size, self.ring),
                reason: format!("{0}×{0} over {1}", other.size, other.ring),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.same_shape(other)?;
        let n = self.size;
        let mut out = Self::zero(self.ring, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        for e in &mut out.entries {
            *e = self.ring.reduce(std::mem::take(e));
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SquareMatrix {
        let n = self.size;
        let mut out = Self::zero(self.ring, n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn det(&self) -> BigInt {
        match self.ring {
            Ring::Integers => bareiss_det(&self.entries, self.size),
            Ring::Modular(_) => self.unit_pivot_det().unwrap_or_else(|| self.ring.reduce(bareiss_det(&self.entries, self.size))),
        }
    }

    /// Elimination with unit pivots; `None` when some column has no unit
    /// below the diagonal but is not entirely zero.
    fn unit_pivot_det(&self) -> Option<BigInt> {
        let n = self.size;
        let ring = self.ring;
        let mut a = self.entries.clone();
        let mut det = BigInt::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| ring.is_unit(&a[r * n + col])) {
                Some(p) => p,
                None if (col..n).all(|r| a[r * n + col].is_zero()) => return Some(BigInt::zero()),
                None => return None,
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            let p_inv = ring.unit_inverse(&p)?;
            det = ring.reduce(det * &p);
            for r in col + 1..n {
                let factor = ring.reduce(&a[r * n + col] * &p_inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = &a[r * n + j] - &factor * &a[col * n + j];
                    a[r * n + j] = ring.reduce(v);
                }
            }
        }
        Some(ring.reduce(det))
    }

    pub fn inverse(&self) -> Result<SquareMatrix> {
        let det = self.det();
        if !self.ring.is_unit(&det) {
            return Err(Error::NotInvertible(self.ring.to_string()));
        }
        match self.ring {
            Ring::Integers => self.rational_inverse(),
            Ring::Modular(_) => self.unit_pivot_inverse().map_or_else(|| self.adjugate_inverse(&det), Ok),
        }
    }

    fn rational_inverse(&self) -> Result<SquareMatrix> {
        let n = self.size;
        let w = 2 * n;
        let mut a: Vec<BigRational> = Vec::with_capacity(n * w);
        for i in 0..n {
            for j in 0..n {
                a.push(BigRational::from_integer(self.get(i, j).clone()));
            }
            for j in 0..n {
                a.push(if i == j { BigRational::one() } else { BigRational::zero() });
            }
        }
        for col in 0..n {
            let pivot =
                (col..n).find(|&r| !a[r * w + col].is_zero()).ok_or_else(|| Error::NotInvertible(self.ring.to_string()))?;
            for j in 0..w {
                a.swap(pivot * w + j, col * w + j);
            }
            let p = a[col * w + col].clone();
            for j in 0..w {
                a[col * w + j] = &a[col * w + j] / &p;
            }
            for r in 0..n {
                if r == col || a[r * w + col].is_zero() {
                    continue;
                }
                let factor = a[r * w + col].clone();
                for j in 0..w {
                    let v = &a[r * w + j] - &factor * &a[col * w + j];
                    a[r * w + j] = v;
                }
            }
        }
        let mut out = Self::zero(self.ring, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i * w + n + j];
                if !v.is_integer() {
                    return Err(Error::NotInvertible(self.ring.to_string()));
                }
                out.entries[i * n + j] = v.to_integer();
            }
        }
        Ok(out)
    }

    fn unit_pivot_inverse(&self) -> Option<SquareMatrix> {
        let n = self.size;
        let w = 2 * n;
        let ring = self.ring;
        let mut a = vec![BigInt::zero(); n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.get(i, j).clone();
            }
            a[i * w + n + i] = BigInt::one();
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| ring.is_unit(&a[r * w + col]))?;
            for j in 0..w {
                a.swap(pivot * w + j, col * w + j);
            }
            let p_inv = ring.unit_inverse(&a[col * w + col])?;
            for j in 0..w {
                a[col * w + j] = ring.reduce(&a[col * w + j] * &p_inv);
            }
            for r in 0..n {
                if r == col || a[r * w + col].is_zero() {
                    continue;
                }
                let factor = a[r * w + col].clone();
                for j in 0..w {
                    let v = &a[r * w + j] - &factor * &a[col * w + j];
                    a[r * w + j] = ring.reduce(v);
                }
            }
        }
        let mut out = Self::zero(ring, n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = a[i * w + n + j].clone();
            }
        }
        Some(out)
    }

    /// `det⁻¹ · adj(M)` with cofactors computed over Z and reduced.
    fn adjugate_inverse(&self, det: &BigInt) -> Result<SquareMatrix> {
        let n = self.size;
        let det_inv = self.ring.unit_inverse(det).ok_or_else(|| Error::NotInvertible(self.ring.to_string()))?;
        let mut out = Self::zero(self.ring, n);
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<BigInt> = (0..n)
                    .filter(|&r| r != j)
                    .flat_map(|r| (0..n).filter(move |&c| c != i).map(move |c| (r, c)))
                    .map(|(r, c)| self.get(r, c).clone())
                    .collect();
                let mut cof = bareiss_det(&minor, n - 1);
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                out.set(i, j, cof * &det_inv);
            }
        }
        Ok(out)
    }

    /// Entries `(i, j)` that differ from the identity matrix, 0-based.
    pub fn moved_indices(&self) -> Vec<usize> {
        let n = self.size;
        let mut idx: Vec<usize> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { BigInt::one() } else { BigInt::zero() };
                if *self.get(i, j) != expected {
                    idx.push(i);
                    idx.push(j);
                }
            }
        }
        idx.sort_unstable();
        idx.dedup();
        idx
    }

    /// Parses `"[[1, 1], [0, 1]]"` or `"[1 1] [0 1] mod 5"`; also accepts a
    /// JSON array of rows.
    pub fn parse(text: &str) -> Result<SquareMatrix> {
        let text = text.trim();
        let (body, ring) = match text.rsplit_once("mod") {
            Some((body, m)) => {
                let m: u64 = m.trim().parse().map_err(|_| Error::Parse(format!("bad modulus {m:?}")))?;
                (body.trim(), Ring::modular(m)?)
            }
            None => (text, Ring::Integers),
        };
        if let Ok(rows) = serde_json::from_str::<Vec<Vec<i64>>>(body) {
            return Self::from_rows(ring, &rows);
        }
        let body =
            body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).filter(|b| b.trim_start().starts_with('[')).unwrap_or(body);
        let mut rows = Vec::new();
        for chunk in body.split('[').map(str::trim).filter(|c| !c.is_empty()) {
            let inner = chunk.split(']').next().ok_or_else(|| Error::Parse(format!("unterminated row in {text:?}")))?;
            let row = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<BigInt>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(ring, &rows)
    }
}

fn bareiss_det(entries: &[BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut a = entries.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(r * n + j, k * n + j);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[n * n - 1]
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().iter().map(|r| format!("[{}]", r.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))?;
        if let Ring::Modular(m) = self.ring {
            write!(f, " mod {m}")?;
        }
        Ok(())
    }
}

/// Upper-left corner inclusion into size `target`.
pub fn corner_embed(m: &SquareMatrix, target: usize) -> Result<SquareMatrix> {
    if target < m.size {
        return Err(Error::Precondition(format!("cannot embed size {} into size {target}", m.size)));
    }
    let mut out = SquareMatrix::identity(m.ring, target);
    for i in 0..m.size {
        for j in 0..m.size {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormKind {
    /// `[[0, I], [-I, 0]]`.
    Symplectic,
    /// `I_n ⊗ diag(1, -1)`.
    SplitOrthogonal,
    /// The identity form, for `O_n`.
    Standard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormTag {
    pub kind: FormKind,
    pub size: usize,
}

impl FormTag {
    pub fn new(kind: FormKind, size: usize) -> Result<Self> {
        if kind != FormKind::Standard && !size.is_multiple_of(2) {
            return Err(Error::Precondition(format!("{kind:?} form needs even size, got {size}")));
        }
        Ok(Self { kind, size })
    }

    pub fn matrix(&self, ring: Ring) -> SquareMatrix {
        let n = self.size;
        let h = n / 2;
        let mut j = SquareMatrix::zero(ring, n);
        match self.kind {
            FormKind::Symplectic => {
                for i in 0..h {
                    j.set(i, i + h, BigInt::one());
                    j.set(i + h, i, -BigInt::one());
                }
            }
            FormKind::SplitOrthogonal => {
                for i in 0..n {
                    j.set(i, i, if i % 2 == 0 { BigInt::one() } else { -BigInt::one() });
                }
            }
            FormKind::Standard => return SquareMatrix::identity(ring, n),
        }
        j
    }
}

/// `Mᵀ J M = J`.
pub fn preserves_form(m: &SquareMatrix, form: FormTag) -> Result<bool> {
    if m.size != form.size {
        return Err(Error::Precondition(format!("matrix size {} against form size {}", m.size, form.size)));
    }
    let j = form.matrix(m.ring);
    Ok(m.transpose().mul(&j)?.mul(m)? == j)
}

/// Symplectic inclusion `Sp_{2n} → Sp_{2n+2}` with the block layout
/// `[[M⊕0, N⊕1], [R⊕(-1), S⊕0]]`.
///
/// The new coordinate pair carries `[[0, 1], [-1, 0]]` regardless of the
/// input, so the map sends the identity to a non-identity matrix; use
/// [`sp_stabilize`] for the homomorphic inclusion.
pub fn sp_embed(m: &SquareMatrix) -> Result<SquareMatrix> {
    let size = m.size;
    if !size.is_multiple_of(2) || !preserves_form(m, FormTag::new(FormKind::Symplectic, size)?)? {
        return Err(Error::Precondition("sp_embed input is not symplectic".into()));
    }
    let n = size / 2;
    let mut out = place_symplectic_blocks(m, n + 1);
    out.set(n, 2 * n + 1, BigInt::one());
    out.set(2 * n + 1, n, -BigInt::one());
    Ok(out)
}

/// Homomorphic inclusion `Sp_{2n} → Sp_{2m}`: `[[A, B], [C, D]] ↦
/// [[A⊕I, B⊕0], [C⊕0, D⊕I]]`.
pub fn sp_stabilize(m: &SquareMatrix, target_half: usize) -> Result<SquareMatrix> {
    let n = m.size / 2;
    if !m.size.is_multiple_of(2) || target_half < n {
        return Err(Error::Precondition(format!("cannot stabilize Sp of size {} to half-size {target_half}", m.size)));
    }
    let mut out = place_symplectic_blocks(m, target_half);
    for i in n..target_half {
        out.set(i, i, BigInt::one());
        out.set(i + target_half, i + target_half, BigInt::one());
    }
    Ok(out)
}

/// Copies the four `n×n` blocks of `m` into the corners of the four
/// `half×half` blocks of a zero matrix.
fn place_symplectic_blocks(m: &SquareMatrix, half: usize) -> SquareMatrix {
    let n = m.size / 2;
    let lift = |r: usize| if r < n { r } else { r - n + half };
    let mut out = SquareMatrix::zero(m.ring, 2 * half);
    for i in 0..m.size {
        for j in 0..m.size {
            out.set(lift(i), lift(j), m.get(i, j).clone());
        }
    }
    out
}

/// Permutation matrix with `M e_j = e_{σ(j)}`.
pub fn perm_to_matrix(sigma: &FinPerm, n: usize, ring: Ring) -> Result<SquareMatrix> {
    if sigma.degree() as usize > n {
        return Err(Error::Precondition(format!("{sigma} is not supported in 1..={n}")));
    }
    let mut m = SquareMatrix::zero(ring, n);
    for j in 1..=n as u32 {
        m.set(sigma.apply(j) as usize - 1, j as usize - 1, BigInt::one());
    }
    Ok(m)
}

/// `σ ↦ diag(M_σ, M_σ)` inside `Sp_{2n}`.
pub fn sp_perm_embed(sigma: &FinPerm, n: usize, ring: Ring) -> Result<SquareMatrix> {
    let p = perm_to_matrix(sigma, n, ring)?;
    let mut out = SquareMatrix::zero(ring, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, p.get(i, j).clone());
            out.set(i + n, j + n, p.get(i, j).clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalFamily {
    GL,
    SL,
    O,
    SO,
    E,
    Sp,
    Onn,
}

impl ClassicalFamily {
    pub const ALL: [ClassicalFamily; 7] = [Self::GL, Self::SL, Self::O, Self::SO, Self::E, Self::Sp, Self::Onn];

    /// Matrix size of the level-`n` group: `n` for GL/SL/O/SO/E, `2n` for
    /// `Sp_{2n}` and `O_{n,n}`.
    pub fn matrix_size(self, n: usize) -> usize {
        match self {
            Self::Sp | Self::Onn => 2 * n,
            _ => n,
        }
    }

    /// Whether the witness comes from `Alt_∞` through `(1, n+1)⋯(n, 2n)`.
    pub fn alt_based(self) -> bool {
        self != Self::Onn
    }

    pub fn id(self) -> &'static str {
        match self {
            Self::GL => "gl",
            Self::SL => "sl",
            Self::O => "o",
            Self::SO => "so",
            Self::E => "e",
            Self::Sp => "sp",
            Self::Onn => "onn",
        }
    }
}

/// A classical group at a fixed level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixGroup {
    pub family: ClassicalFamily,
    pub ring: Ring,
    /// `n` in `GL_n`, `Sp_{2n}`, `O_{n,n}`.
    pub level: usize,
}

impl MatrixGroup {
    pub fn new(family: ClassicalFamily, ring: Ring, level: usize) -> Self {
        Self { family, ring, level }
    }

    pub fn size(&self) -> usize {
        self.family.matrix_size(self.level)
    }

    /// Membership by the defining equations. `E_n` over Z and Z/m coincides
    /// with `SL_n`, so it is tested by the determinant.
    pub fn contains(&self, m: &SquareMatrix) -> bool {
        if m.size != self.size() || m.ring != self.ring {
            return false;
        }
        let det = m.det();
        let det_one = self.ring.reduce(det.clone()).is_one();
        let size = self.size();
        let form = |kind| preserves_form(m, FormTag { kind, size }).unwrap_or(false);
        match self.family {
            ClassicalFamily::GL => self.ring.is_unit(&det),
            ClassicalFamily::SL | ClassicalFamily::E => det_one,
            ClassicalFamily::O => form(FormKind::Standard),
            ClassicalFamily::SO => det_one && form(FormKind::Standard),
            ClassicalFamily::Sp => form(FormKind::Symplectic),
            ClassicalFamily::Onn => form(FormKind::SplitOrthogonal),
        }
    }

    /// A finite set of elements of the level-`n` group: elementary,
    /// signed-permutation and symplectic transvection matrices as the family
    /// allows.
    pub fn level_generators(&self) -> Vec<SquareMatrix> {
        let (n, ring) = (self.level, self.ring);
        let elementary = |size: usize| -> Vec<SquareMatrix> {
            let mut out = Vec::new();
            for i in 1..=size {
                for j in 1..=size {
                    if i != j {
                        out.push(SquareMatrix::elementary(ring, size, i, j, 1).expect("indices in range"));
                    }
                }
            }
            out
        };
        let diag = |size: usize, signs: &[(usize, i64)]| {
            let mut m = SquareMatrix::identity(ring, size);
            for &(i, v) in signs {
                m.set(i, i, BigInt::from(v));
            }
            m
        };
        let swap = |size: usize, a: u32, b: u32| {
            let sigma = FinPerm::cycle(&[a, b]).expect("distinct points");
            perm_to_matrix(&sigma, size, ring).expect("in range")
        };
        let mut out = match self.family {
            ClassicalFamily::SL | ClassicalFamily::E => elementary(n),
            ClassicalFamily::GL => {
                let mut v = elementary(n);
                v.push(diag(n, &[(0, -1)]));
                if let Ring::Modular(m) = ring {
                    if m > 3 && ring.is_unit(&BigInt::from(2)) {
                        v.push(diag(n, &[(0, 2)]));
                    }
                }
                v
            }
            ClassicalFamily::O => {
                let mut v: Vec<_> = (1..n as u32).map(|i| swap(n, i, i + 1)).collect();
                v.push(diag(n, &[(0, -1)]));
                v
            }
            ClassicalFamily::SO => {
                (1..n as u32).map(|i| swap(n, i, i + 1).mul(&diag(n, &[(i as usize - 1, -1)])).expect("same shape")).collect()
            }
            ClassicalFamily::Sp => {
                let mut v = Vec::new();
                for i in 0..n {
                    let mut upper = SquareMatrix::identity(ring, 2 * n);
                    upper.set(i, i + n, BigInt::one());
                    let mut lower = SquareMatrix::identity(ring, 2 * n);
                    lower.set(i + n, i, BigInt::one());
                    v.extend([upper, lower]);
                }
                for a in elementary(n) {
                    let a_inv_t = a.inverse().expect("unimodular").transpose();
                    let mut m = SquareMatrix::zero(ring, 2 * n);
                    for i in 0..n {
                        for j in 0..n {
                            m.set(i, j, a.get(i, j).clone());
                            m.set(i + n, j + n, a_inv_t.get(i, j).clone());
                        }
                    }
                    v.push(m);
                }
                v
            }
            ClassicalFamily::Onn => {
                let size = 2 * n;
                let mut v = vec![diag(size, &[(0, -1)]), diag(size, &[(1, -1)])];
                for i in 1..n as u32 {
                    v.push(swap(size, 2 * i - 1, 2 * i + 1));
                    v.push(swap(size, 2 * i, 2 * i + 2));
                }
                v
            }
        };
        out.retain(|m| self.contains(m));
        out
    }

    /// Includes a level-`self.level` element into the group at `level`.
    pub fn stabilize(&self, m: &SquareMatrix, level: usize) -> Result<SquareMatrix> {
        match self.family {
            ClassicalFamily::Sp => sp_stabilize(m, level),
            f => corner_embed(m, f.matrix_size(level)),
        }
    }
}

impl Group for MatrixGroup {
    type Element = SquareMatrix;

    fn name(&self) -> String {
        let n = self.level;
        let r = self.ring;
        match self.family {
            ClassicalFamily::GL => format!("GL_{n}({r})"),
            ClassicalFamily::SL => format!("SL_{n}({r})"),
            ClassicalFamily::O => format!("O_{n}({r})"),
            ClassicalFamily::SO => format!("SO_{n}({r})"),
            ClassicalFamily::E => format!("E_{n}({r})"),
            ClassicalFamily::Sp => format!("Sp_{}({r})", 2 * n),
            ClassicalFamily::Onn => format!("O_{n},{n}({r})"),
        }
    }
    fn identity(&self) -> SquareMatrix {
        SquareMatrix::identity(self.ring, self.size())
    }
    fn multiply(&self, a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
        a.mul(b).expect("shapes checked on entry")
    }
    fn inverse(&self, a: &SquareMatrix) -> SquareMatrix {
        a.inverse().expect("group elements are invertible")
    }
    fn equals(&self, a: &SquareMatrix, b: &SquareMatrix) -> bool {
        a == b
    }
    fn render(&self, a: &SquareMatrix) -> String {
        a.to_string()
    }
    fn check_member(&self, a: &SquareMatrix) -> Result<()> {
        if !self.contains(a) {
            return Err(Error::FamilyMismatch { expected: self.name(), reason: a.to_string() });
        }
        Ok(())
    }
}

/// The block-swap witness for a level-`n` classical group, together with
/// the group (one stabilization step up) it lives in.
#[derive(Debug, Clone)]
pub struct ClassicalWitness {
    pub source: MatrixGroup,
    pub host: MatrixGroup,
    pub witness: Witness<SquareMatrix>,
}

impl ClassicalWitness {
    /// Moves a generator of the level-`n` group into the host group.
    pub fn embed(&self, m: &SquareMatrix) -> Result<SquareMatrix> {
        self.source.check_member(m)?;
        self.source.stabilize(m, self.host.level)
    }
}

pub fn classical_witness(family: ClassicalFamily, ring: Ring, n: usize) -> Result<ClassicalWitness> {
    if n < 1 {
        return Err(Error::Precondition("level must be at least 1".into()));
    }
    if family.alt_based() && !n.is_multiple_of(2) {
        return Err(Error::OddStabilization { family: family.id().to_string(), n });
    }
    let source = MatrixGroup::new(family, ring, n);
    let host = MatrixGroup::new(family, ring, 2 * n);
    let t = match family {
        ClassicalFamily::Sp => sp_perm_embed(&block_swap(n as u32)?, 2 * n, ring)?,
        ClassicalFamily::Onn => perm_to_matrix(&block_swap(2 * n as u32)?, 4 * n, ring)?,
        _ => perm_to_matrix(&block_swap(n as u32)?, 2 * n, ring)?,
    };
    debug_assert!(!family.alt_based() || block_swap(n as u32)?.parity() == Parity::Even);
    host.check_member(&t)?;
    Ok(ClassicalWitness { source, host, witness: Witness::finite(t, 2)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugate, GeneratorSet};
    use crate::verify::verify_ccc;
    use rand::{Rng, SeedableRng};

    fn z(rows: &[Vec<i64>]) -> SquareMatrix {
        SquareMatrix::from_rows(Ring::Integers, rows).unwrap()
    }

    #[test]
    fn det_examples() {
        for n in 0..5 {
            assert!(SquareMatrix::identity(Ring::Integers, n).det().is_one());
        }
        let sigma: FinPerm = "(1 2 3)(4 5)".parse().unwrap();
        let p = perm_to_matrix(&sigma, 5, Ring::Integers).unwrap();
        assert_eq!(p.det(), BigInt::from(-1));
        let p = perm_to_matrix(&sigma, 5, Ring::Modular(7)).unwrap();
        assert_eq!(p.det(), BigInt::from(6));
        assert_eq!(z(&[vec![2, 3], vec![1, 4]]).det(), BigInt::from(5));
        assert_eq!(z(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).det(), BigInt::zero());
    }

    #[test]
    fn det_falls_back_when_no_unit_pivot() {
        let m = SquareMatrix::from_rows(Ring::Modular(6), &[vec![2, 3], vec![3, 2]]).unwrap();
        assert!(m.unit_pivot_det().is_none());
        assert!(m.det().is_one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), SquareMatrix::identity(Ring::Modular(6), 2));
    }

    #[test]
    fn inverse_examples() {
        let m = z(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(m.inverse().unwrap(), z(&[vec![1, -1], vec![0, 1]]));
        assert!(matches!(z(&[vec![2, 0], vec![0, 1]]).inverse(), Err(Error::NotInvertible(_))));
        let m5 = SquareMatrix::from_rows(Ring::Modular(5), &[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(m5.inverse().unwrap(), SquareMatrix::from_rows(Ring::Modular(5), &[vec![3, 0], vec![0, 1]]).unwrap());
    }

    #[test]
    fn corner_embed_examples() {
        let i2 = SquareMatrix::identity(Ring::Integers, 2);
        assert_eq!(corner_embed(&i2, 4).unwrap(), SquareMatrix::identity(Ring::Integers, 4));
        let m = z(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(corner_embed(&m, 3).unwrap(), z(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(corner_embed(&corner_embed(&m, 3).unwrap(), 5).unwrap(), corner_embed(&m, 5).unwrap());
        assert!(corner_embed(&m, 1).is_err());
    }

    #[test]
    fn sp_embed_literal_layout() {
        let out = sp_embed(&SquareMatrix::identity(Ring::Integers, 2)).unwrap();
        let expected = z(&[vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, -1, 0, 0]]);
        assert_eq!(out, expected);
        assert!(preserves_form(&out, FormTag::new(FormKind::Symplectic, 4).unwrap()).unwrap());
        assert_eq!(out.moved_indices(), vec![1, 3]);
        assert!(sp_embed(&z(&[vec![2, 0], vec![0, 1]])).is_err());
    }

    #[test]
    fn sp_embed_factors_through_stabilization() {
        // literal(A) = stabilized(A) · literal(I)
        let a = z(&[vec![1, 1], vec![0, 1]]);
        let b = z(&[vec![0, -1], vec![1, 0]]);
        let k = sp_embed(&SquareMatrix::identity(Ring::Integers, 2)).unwrap();
        for m in [&a, &b] {
            assert_eq!(sp_embed(m).unwrap(), sp_stabilize(m, 2).unwrap().mul(&k).unwrap());
        }
        let ab = a.mul(&b).unwrap();
        assert_eq!(sp_stabilize(&ab, 2).unwrap(), sp_stabilize(&a, 2).unwrap().mul(&sp_stabilize(&b, 2).unwrap()).unwrap());
        assert_ne!(sp_embed(&ab).unwrap(), sp_embed(&a).unwrap().mul(&sp_embed(&b).unwrap()).unwrap());
    }

    #[test]
    fn form_examples() {
        let sp2 = FormTag::new(FormKind::Symplectic, 2).unwrap();
        assert!(preserves_form(&SquareMatrix::identity(Ring::Integers, 2), sp2).unwrap());
        assert!(!preserves_form(&z(&[vec![2, 0], vec![0, 1]]), sp2).unwrap());
        let o11 = FormTag::new(FormKind::SplitOrthogonal, 2).unwrap();
        assert!(preserves_form(&z(&[vec![1, 0], vec![0, -1]]), o11).unwrap());
        assert!(FormTag::new(FormKind::Symplectic, 3).is_err());
        assert!(preserves_form(&SquareMatrix::identity(Ring::Integers, 3), sp2).is_err());
    }

    #[test]
    fn perm_matrices() {
        assert_eq!(perm_to_matrix(&FinPerm::identity(), 3, Ring::Integers).unwrap(), SquareMatrix::identity(Ring::Integers, 3));
        assert_eq!(perm_to_matrix(&"(1 2)".parse().unwrap(), 2, Ring::Integers).unwrap(), z(&[vec![0, 1], vec![1, 0]]));
        assert!(perm_to_matrix(&"(1 5)".parse().unwrap(), 4, Ring::Integers).is_err());
        let sp = sp_perm_embed(&"(1 3)(2 4)".parse().unwrap(), 4, Ring::Integers).unwrap();
        assert!(preserves_form(&sp, FormTag::new(FormKind::Symplectic, 8).unwrap()).unwrap());
        // odd permutations are symplectic too
        let sp = sp_perm_embed(&"(1 2)".parse().unwrap(), 3, Ring::Integers).unwrap();
        assert!(preserves_form(&sp, FormTag::new(FormKind::Symplectic, 6).unwrap()).unwrap());
    }

    #[test]
    fn sl_witness_example() {
        let cw = classical_witness(ClassicalFamily::SL, Ring::Integers, 2).unwrap();
        assert_eq!(cw.witness.t, perm_to_matrix(&"(1 3)(2 4)".parse().unwrap(), 4, Ring::Integers).unwrap());
        let gens = [z(&[vec![1, 1], vec![0, 1]]), z(&[vec![0, -1], vec![1, 0]])];
        let h: Vec<_> = gens.iter().map(|g| cw.embed(g).unwrap()).collect();
        let h = GeneratorSet::new(&cw.host, h).unwrap();
        assert!(verify_ccc(&cw.host, &h, &cw.witness).unwrap().passed());
        assert!(cw.witness.t.mul(&cw.witness.t).unwrap() == cw.host.identity());
    }

    #[test]
    fn onn_witness_example() {
        let cw = classical_witness(ClassicalFamily::Onn, Ring::Integers, 1).unwrap();
        assert_eq!(cw.host.size(), 4);
        let h = GeneratorSet::new(&cw.host, vec![cw.embed(&z(&[vec![-1, 0], vec![0, 1]])).unwrap()]).unwrap();
        assert!(verify_ccc(&cw.host, &h, &cw.witness).unwrap().passed());
        assert!(preserves_form(&cw.witness.t, FormTag::new(FormKind::SplitOrthogonal, 4).unwrap()).unwrap());
    }

    #[test]
    fn odd_level_requests_stabilization() {
        let err = classical_witness(ClassicalFamily::GL, Ring::Integers, 3).unwrap_err();
        assert!(matches!(err, Error::OddStabilization { n: 3, .. }));
        assert!(err.to_string().contains("n = 4"));
        assert!(classical_witness(ClassicalFamily::Onn, Ring::Integers, 3).is_ok());
    }

    #[test]
    fn witness_moves_corner_support_to_second_block() {
        let cw = classical_witness(ClassicalFamily::GL, Ring::Modular(5), 2).unwrap();
        let e12 = cw.embed(&SquareMatrix::elementary(Ring::Modular(5), 2, 1, 2, 3).unwrap()).unwrap();
        assert_eq!(e12.moved_indices(), vec![0, 1]);
        assert_eq!(conjugate(&cw.host, &cw.witness.t, &e12).unwrap().moved_indices(), vec![2, 3]);
        for family in [ClassicalFamily::GL, ClassicalFamily::SL, ClassicalFamily::E, ClassicalFamily::Sp] {
            for n in [2, 4] {
                let cw = classical_witness(family, Ring::Integers, n).unwrap();
                assert!(cw.witness.t.det().is_one());
            }
        }
    }

    #[test]
    fn parse_formats() {
        let m = SquareMatrix::parse("[[1, 1], [0, 1]]").unwrap();
        assert_eq!(m, z(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(SquareMatrix::parse("[1 1] [0 1]").unwrap(), m);
        let m5 = SquareMatrix::parse("[[7, 1], [0, 1]] mod 5").unwrap();
        assert_eq!(m5.get(0, 0), &BigInt::from(2));
        assert_eq!(SquareMatrix::parse(&m5.to_string()).unwrap(), m5);
        assert!(SquareMatrix::parse("[[1, 2], [3]]").is_err());
        assert!(SquareMatrix::parse("[[1]] mod 1").is_err());
    }

    fn random_sp(rng: &mut impl Rng, half: usize, ring: Ring) -> SquareMatrix {
        // products of [[I, S], [0, I]] with S symmetric, interleaved with J
        let n = 2 * half;
        let j = FormTag::new(FormKind::Symplectic, n).unwrap().matrix(ring);
        let mut acc = SquareMatrix::identity(ring, n);
        for _ in 0..4 {
            let mut u = SquareMatrix::identity(ring, n);
            let a = rng.gen_range(0..half);
            let b = rng.gen_range(0..half);
            let r = rng.gen_range(-2i64..=2);
            u.set(a, b + half, BigInt::from(r));
            if a != b {
                u.set(b, a + half, BigInt::from(r));
            }
            acc = acc.mul(&u).unwrap();
            if rng.gen_bool(0.5) {
                acc = acc.mul(&j).unwrap();
            }
        }
        acc
    }

    #[test]
    fn form_preservation_is_multiplicative_and_stable() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for ring in [Ring::Integers, Ring::Modular(5)] {
            for _ in 0..30 {
                let a = random_sp(&mut rng, 2, ring);
                let b = random_sp(&mut rng, 2, ring);
                let f4 = FormTag::new(FormKind::Symplectic, 4).unwrap();
                assert!(preserves_form(&a, f4).unwrap() && preserves_form(&b, f4).unwrap());
                assert!(preserves_form(&a.mul(&b).unwrap(), f4).unwrap());
                let e = sp_embed(&a).unwrap();
                assert!(preserves_form(&e, FormTag::new(FormKind::Symplectic, 6).unwrap()).unwrap());
                let ab = a.mul(&b).unwrap();
                let lhs = sp_stabilize(&ab, 3).unwrap();
                let rhs = sp_stabilize(&a, 3).unwrap().mul(&sp_stabilize(&b, 3).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), SquareMatrix::identity(ring, 4));
            }
        }
    }

    #[test]
    fn level_generators_belong_to_their_group() {
        for family in ClassicalFamily::ALL {
            for ring in [Ring::Integers, Ring::Modular(5)] {
                for n in 1..=3 {
                    let g = MatrixGroup::new(family, ring, n);
                    let gens = g.level_generators();
                    assert!(gens.iter().all(|m| g.contains(m)), "{}", g.name());
                    if n >= 2 {
                        assert!(!gens.is_empty(), "{}", g.name());
                    }
                }
            }
        }
    }

    #[test]
    fn elementary_commutes_with_witness_square() {
        let cw = classical_witness(ClassicalFamily::E, Ring::Integers, 2).unwrap();
        let e = cw.embed(&SquareMatrix::elementary(Ring::Integers, 2, 1, 2, 1).unwrap()).unwrap();
        let t2 = cw.witness.t.mul(&cw.witness.t).unwrap();
        let c = crate::group::commutator(&cw.host, &e, &t2).unwrap();
        assert_eq!(c, cw.host.identity());
    }
}
