//! Surjections between split bundles on `P^1`.
//!
//! A map `O(a_1) + ... + O(a_n) -> O(b_1) + ... + O(b_m)` is an `m x n`
//! matrix of binary forms, entry `(i, j)` of degree `b_i - a_j`. It is onto
//! exactly when the matrix has rank `m` at every point of `P^1`, i.e. when its
//! maximal minors have no common projective zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("a split bundle needs at least one summand")]
    Empty,
    #[error("no surjection exists from {from:?} onto {onto:?}")]
    NoSurjection { from: Vec<i64>, onto: Vec<i64> },
    #[error("a {rows}x{cols} matrix cannot have rank {rows}")]
    TooManyRows { rows: usize, cols: usize },
    #[error("matrix rows have unequal lengths")]
    Ragged,
    #[error("maximal minor is not homogeneous; entry degrees are inconsistent")]
    Inhomogeneous,
}

/// Source and target twists of a map of split bundles, both sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleMapSpec {
    source: Vec<i64>,
    target: Vec<i64>,
}

impl BundleMapSpec {
    pub fn new(source: &[i64], target: &[i64]) -> Result<Self, BundleError> {
        if source.is_empty() || target.is_empty() {
            return Err(BundleError::Empty);
        }
        let mut source = source.to_vec();
        let mut target = target.to_vec();
        source.sort_unstable();
        target.sort_unstable();
        Ok(Self { source, target })
    }

    pub fn source(&self) -> &[i64] {
        &self.source
    }

    pub fn target(&self) -> &[i64] {
        &self.target
    }
}

/// The ordering criterion for existence of a surjection.
///
/// With `a` the sorted source and `b` the sorted target: `m <= n`, and for
/// every `i`, `b_i >= a_i`, and `b_i >= a_{i+1}` whenever the length-`i`
/// prefixes differ. A missing `a_{n+1}` counts as `+inf`.
pub fn surjection_exists(spec: &BundleMapSpec) -> bool {
    let (a, b) = (&spec.source, &spec.target);
    if b.len() > a.len() {
        return false;
    }
    let mut prefixes_agree = true;
    for i in 0..b.len() {
        if b[i] < a[i] {
            return false;
        }
        prefixes_agree &= a[i] == b[i];
        if !prefixes_agree {
            match a.get(i + 1) {
                Some(&next) if b[i] >= next => {}
                _ => return false,
            }
        }
    }
    true
}

/// `x0^e0 * x1^e1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Monomial {
    pub x0: u32,
    pub x1: u32,
}

impl Monomial {
    pub fn new(x0: u32, x1: u32) -> Self {
        Self { x0, x1 }
    }

    pub fn degree(&self) -> u32 {
        self.x0 + self.x1
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |var: &str, e: u32| match e {
            0 => None,
            1 => Some(var.to_string()),
            e => Some(format!("{var}^{e}")),
        };
        match (power("x0", self.x0), power("x1", self.x1)) {
            (None, None) => write!(f, "1"),
            (Some(p), None) | (None, Some(p)) => write!(f, "{p}"),
            (Some(p), Some(q)) => write!(f, "{p}*{q}"),
        }
    }
}

/// A matrix of monomials (or zeros) describing a map of split bundles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessMatrix {
    entries: Vec<Vec<Option<Monomial>>>,
}

impl WitnessMatrix {
    pub fn new(entries: Vec<Vec<Option<Monomial>>>) -> Result<Self, BundleError> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 {
            return Err(BundleError::Empty);
        }
        if entries.iter().any(|row| row.len() != cols) {
            return Err(BundleError::Ragged);
        }
        Ok(Self { entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<Monomial> {
        self.entries[i][j]
    }

    /// Entries rendered as strings (`x0^3`, `x1`, `1`, `0`).
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.map_or_else(|| "0".to_string(), |m| m.to_string()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for WitnessMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (k, row) in cells.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// The bidiagonal witness: `T[i][i] = x0^(b_i - a_i)` and
/// `T[i][i+1] = x1^(b_i - a_{i+1})` when that exponent is non-negative.
pub fn witness_matrix(spec: &BundleMapSpec) -> Result<WitnessMatrix, BundleError> {
    if !surjection_exists(spec) {
        return Err(BundleError::NoSurjection {
            from: spec.source.clone(),
            onto: spec.target.clone(),
        });
    }
    let (a, b) = (&spec.source, &spec.target);
    let mut entries = vec![vec![None; a.len()]; b.len()];
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] = Some(Monomial::new((b[i] - a[i]) as u32, 0));
        if let Some(&next) = a.get(i + 1) {
            if b[i] >= next {
                row[i + 1] = Some(Monomial::new(0, (b[i] - next) as u32));
            }
        }
    }
    WitnessMatrix::new(entries)
}

/// A homogeneous polynomial in `x0, x1` with integer coefficients;
/// `coeffs[k]` multiplies `x0^k x1^(degree - k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    degree: u32,
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn from_monomial(m: Monomial, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); m.degree() as usize + 1];
        coeffs[m.x0 as usize] = c;
        Self {
            degree: m.degree(),
            coeffs,
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs a coefficient vector");
        Self {
            degree: coeffs.len() as u32 - 1,
            coeffs,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![BigInt::zero(); (self.degree + other.degree) as usize + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self {
            degree: self.degree + other.degree,
            coeffs,
        }
    }

    fn add_assign(&mut self, other: &Self) -> Result<(), BundleError> {
        if other.is_zero() {
            return Ok(());
        }
        if self.is_zero() {
            *self = other.clone();
            return Ok(());
        }
        if self.degree != other.degree {
            return Err(BundleError::Inhomogeneous);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(())
    }

    /// Multiplicity of the point `x1 = 0` as a root.
    fn order_at_infinity(&self) -> usize {
        let top = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        self.degree as usize - top
    }

    /// Dehomogenisation `t -> f(t, 1)`, trimmed of trailing zeros.
    fn affine(&self) -> Vec<BigInt> {
        let mut p = self.coeffs.clone();
        trim(&mut p);
        p
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..=self.degree as usize).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let m = Monomial::new(k as u32, self.degree - k as u32);
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (m.degree(), mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{m}")?,
                _ => write!(f, "{mag}*{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut p);
    let content = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() {
        return p;
    }
    let sign = if p.last().is_some_and(Signed::is_negative) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    p.iter().map(|c| c / &content * &sign).collect()
}

/// Pseudo-remainder of `a` by `b` (b nonzero), coefficients low degree first.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lead;
        }
        for (k, bk) in b.iter().enumerate() {
            r[dr - db + k] -= &lr * bk;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd over `Q[t]` (content stripped, positive leading coefficient).
fn univariate_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive(a.to_vec());
    let mut y = primitive(b.to_vec());
    while !y.is_empty() {
        let r = primitive(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

fn determinant(rows: &[&[Option<BinaryForm>]], cols: &[usize]) -> Result<Option<BinaryForm>, BundleError> {
    // Laplace expansion along the first row, skipping zero entries.
    let Some((first, rest)) = rows.split_first() else {
        return Ok(Some(BinaryForm::from_coeffs(vec![BigInt::one()])));
    };
    let mut acc: Option<BinaryForm> = None;
    for (k, &c) in cols.iter().enumerate() {
        let Some(entry) = &first[c] else { continue };
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let Some(minor) = determinant(rest, &sub_cols)? else { continue };
        let mut term = entry.mul(&minor);
        if k % 2 == 1 {
            for coef in term.coeffs.iter_mut() {
                *coef = -&*coef;
            }
        }
        match acc.as_mut() {
            None => acc = Some(term),
            Some(sum) => sum.add_assign(&term)?,
        }
    }
    Ok(acc.filter(|f| !f.is_zero()))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All nonzero maximal minors of the matrix.
pub fn maximal_minors(t: &WitnessMatrix) -> Result<Vec<BinaryForm>, BundleError> {
    let (m, n) = (t.rows(), t.cols());
    if m > n {
        return Err(BundleError::TooManyRows { rows: m, cols: n });
    }
    let forms: Vec<Vec<Option<BinaryForm>>> = t
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.map(|mono| BinaryForm::from_monomial(mono, BigInt::one())))
                .collect()
        })
        .collect();
    let rows: Vec<&[Option<BinaryForm>]> = forms.iter().map(Vec::as_slice).collect();
    let mut out = Vec::new();
    for cols in combinations(n, m) {
        if let Some(minor) = determinant(&rows, &cols)? {
            out.push(minor);
        }
    }
    Ok(out)
}

/// Greatest common divisor of the maximal minors as a binary form over `Q`,
/// normalised to a primitive integer form. `None` when every minor vanishes.
pub fn minor_gcd(t: &WitnessMatrix) -> Result<Option<BinaryForm>, BundleError> {
    let minors = maximal_minors(t)?;
    if minors.is_empty() {
        return Ok(None);
    }
    // Roots at x1 = 0 are invisible after dehomogenising; count them apart.
    let at_infinity = minors.iter().map(BinaryForm::order_at_infinity).min().unwrap_or(0);
    let mut g = minors[0].affine();
    for minor in &minors[1..] {
        g = univariate_gcd(&g, &minor.affine());
    }
    // x1^e * g: same x0-exponents, degree raised by e
    let mut homog = primitive(g);
    homog.resize(homog.len() + at_infinity, BigInt::zero());
    Ok(Some(BinaryForm::from_coeffs(homog)))
}

/// True when the matrix has full row rank at every point of `P^1`.
pub fn verify_full_rank(t: &WitnessMatrix) -> Result<bool, BundleError> {
    Ok(minor_gcd(t)?.is_some_and(|g| g.degree() == 0))
}
