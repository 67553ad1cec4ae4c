//! Line bundle cohomology on `P(E*)` for `E = O(e_1) + ... + O(e_r)` over `P^1`.
//!
//! With `pi` the bundle projection and `O(1) = O(H)`:
//!
//! * `a >= 0`: `pi_* O(aH + bF) = Sym^a(E)(b)`, a sum of `O(w + b)` over the
//!   weights `w` of degree-`a` monomials in the twists, and all higher direct
//!   images vanish, so `h^0` and `h^1` come from `P^1`.
//! * `-r < a < 0`: every direct image vanishes.
//! * `a <= -r`: Serre duality with `K = -rH + (c_1 - 2)F` reduces to the
//!   first case.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("split bundle must have rank at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("bundle twists must be non-negative")]
    NegativeTwist,
    #[error("Hilbert function is evaluated at k >= 0, got {0}")]
    NegativeTwistParameter(i64),
    #[error("need n >= 2, got {0}")]
    DimensionTooSmall(i64),
    #[error("need N >= 2, got {0}")]
    AmbientTooSmall(i64),
    #[error("need degree >= 1, got {0}")]
    DegreeTooSmall(i64),
}

/// A split bundle over `P^1`; its projectivisation has dimension `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleContext {
    twists: Vec<i64>,
}

impl BundleContext {
    pub fn new(twists: &[i64]) -> Result<Self, CohomologyError> {
        if twists.len() < 2 {
            return Err(CohomologyError::RankTooSmall(twists.len()));
        }
        if twists.iter().any(|&t| t < 0) {
            return Err(CohomologyError::NegativeTwist);
        }
        Ok(Self {
            twists: twists.to_vec(),
        })
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn c1(&self) -> i64 {
        self.twists.iter().sum()
    }

    /// Number of degree-`a` monomials in the twists, keyed by weight.
    pub fn symmetric_power_weights(&self, a: usize) -> BTreeMap<i64, BigInt> {
        let max_twist = self.twists.iter().copied().max().unwrap_or(0) as usize;
        let width = a * max_twist + 1;
        // table[k][w]: monomials of degree k and weight w in the twists seen so far
        let mut table = vec![vec![BigInt::zero(); width]; a + 1];
        table[0][0] = BigInt::one();
        for &e in &self.twists {
            let e = e as usize;
            for k in 1..=a {
                for w in e..width {
                    let add = table[k - 1][w - e].clone();
                    if !add.is_zero() {
                        table[k][w] += add;
                    }
                }
            }
        }
        table
            .swap_remove(a)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w as i64, c))
            .collect()
    }
}

/// `h[i] = dim H^i` for `0 <= i <= r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CohomologyTable {
    #[serde(serialize_with = "crate::bigint_serde::vec")]
    h: Vec<BigInt>,
}

impl CohomologyTable {
    fn zero(len: usize) -> Self {
        Self {
            h: vec![BigInt::zero(); len],
        }
    }

    pub fn h(&self, i: usize) -> BigInt {
        self.h.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.h
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.h
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (i, v)| if i % 2 == 0 { acc + v } else { acc - v })
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .h
            .iter()
            .enumerate()
            .map(|(i, v)| format!("h^{i}={v}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn h0_p1(deg: &BigInt) -> BigInt {
    std::cmp::max(deg + 1i32, BigInt::zero())
}

fn h1_p1(deg: &BigInt) -> BigInt {
    std::cmp::max(-deg - 1i32, BigInt::zero())
}

/// Cohomology of `O(aH + bF)`.
pub fn line_bundle_cohomology(ctx: &BundleContext, a: i64, b: i64) -> CohomologyTable {
    let r = ctx.rank();
    let mut table = CohomologyTable::zero(r + 1);
    if a >= 0 {
        for (w, count) in ctx.symmetric_power_weights(a as usize) {
            let deg = BigInt::from(w + b);
            table.h[0] += &count * h0_p1(&deg);
            table.h[1] += &count * h1_p1(&deg);
        }
    } else if a <= -(r as i64) {
        let dual = line_bundle_cohomology(ctx, -(r as i64) - a, ctx.c1() - 2 - b);
        for i in 0..=r {
            table.h[i] = dual.h[r - i].clone();
        }
    }
    table
}

/// `h^0(O(kH))`.
pub fn scroll_hilbert_function(ctx: &BundleContext, k: i64) -> Result<BigInt, CohomologyError> {
    if k < 0 {
        return Err(CohomologyError::NegativeTwistParameter(k));
    }
    Ok(line_bundle_cohomology(ctx, k, 0).h(0))
}

/// A polynomial in `k` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPoly {
    coeffs: Vec<BigRational>,
}

impl HilbertPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `C(k + n, n)`, the Hilbert polynomial of `P^n`.
    pub fn projective_space(n: usize) -> Self {
        let mut p = Self::from_integers(&[1]);
        for i in 1..=n as i64 {
            let factor = Self::new(vec![
                BigRational::new(i.into(), i.into()),
                BigRational::new(1.into(), i.into()),
            ]);
            p = p.mul(&factor);
        }
        p
    }

    /// `d k - d(d-3)/2`, a smooth plane curve of degree `d`.
    pub fn plane_curve(d: i64) -> Self {
        Self::new(vec![
            BigRational::new((-d * (d - 3)).into(), 2.into()),
            BigRational::from_integer(d.into()),
        ])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, k: i64) -> BigRational {
        let k = BigRational::from_integer(k.into());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &k + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Degree of the variety: leading coefficient times `dim!`.
    pub fn variety_degree(&self) -> BigRational {
        let dim = self.degree().unwrap_or(0);
        let fact: BigInt = (1..=dim as u64).map(BigInt::from).product();
        self.leading_coeff() * BigRational::from_integer(fact)
    }
}

impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            let var = match i {
                0 => String::new(),
                1 => "k".to_string(),
                _ => format!("k^{i}"),
            };
            match (var.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{var}")?,
                (false, false) => write!(f, "{mag}*{var}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Hilbert polynomial of a Segre product.
pub fn product_hilbert(pa: &HilbertPoly, pb: &HilbertPoly) -> HilbertPoly {
    pa.mul(pb)
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Degree of a Segre product `A x B`: `C(dim A + dim B, dim B) deg A deg B`.
pub fn product_degree(dim_a: i64, deg_a: i64, dim_b: i64, deg_b: i64) -> BigInt {
    binomial(dim_a + dim_b, dim_b) * deg_a * deg_b
}

/// `h^1(O_A(k))` for a smooth plane curve `A` of degree `d_a`, computed as
/// `h^2(P^2, O(k - d_a)) = C(d_a - k - 1, 2)`.
pub fn plane_curve_h1(d_a: i64, k: i64) -> BigInt {
    binomial(d_a - k - 1, 2)
}

/// `h^1(O_X(k))` for `X = A x P^(n-1)` with `A` a smooth plane curve of
/// degree `d_a`, `k >= 0`.
pub fn plane_curve_product_h1(d_a: i64, n: i64, k: i64) -> BigInt {
    plane_curve_h1(d_a, k) * binomial(k + n - 1, n - 1)
}

/// Plane-curve degrees `d_a <= d_max` for which `A x P^(n-1)` in
/// `P^(3n-1)` has `h^1(O_X(k)) != 0` at some `k` beyond the threshold
/// `floor((d - 1) / (N - n))`, where `d = n d_a` and `N - n = 2n - 1`.
pub fn harris_counterexample_search(n: i64, d_max: i64) -> Result<Vec<i64>, CohomologyError> {
    if n < 2 {
        return Err(CohomologyError::DimensionTooSmall(n));
    }
    let codim = 2 * n - 1;
    Ok((1..=d_max)
        .filter(|&d_a| {
            let threshold = (n * d_a - 1).div_euclid(codim);
            // h^1(O_A(k)) vanishes once k > d_a - 3
            ((threshold + 1)..=(d_a - 3)).any(|k| !plane_curve_product_h1(d_a, n, k).is_zero())
        })
        .collect())
}

/// `floor((d - 1) / (N - 1))`; a nondegenerate curve of degree `d` in `P^N`
/// has `h^1(O_X(k)) = 0` for every larger `k`.
pub fn curve_vanishing_threshold(d: i64, ambient: i64) -> Result<i64, CohomologyError> {
    if ambient < 2 {
        return Err(CohomologyError::AmbientTooSmall(ambient));
    }
    if d < 1 {
        return Err(CohomologyError::DegreeTooSmall(d));
    }
    Ok((d - 1) / (ambient - 1))
}
