//! Chow ring of `P(E*)` for a split bundle `E` of rank `r` over `P^1`.
//!
//! The ring is generated by the tautological class `H` and the fibre class
//! `F` subject to
//!
//! ```text
//! F^2 = 0,    H^r = d * H^(r-1) F        (d = sum of the twists of E)
//! ```
//!
//! from which `H^(r+1) = 0` and `H^r F = 0` follow. Every class is stored in
//! normal form over the free basis `{ H^i F^j : 0 <= i < r, j in {0, 1} }`,
//! so equality of classes is equality of coefficient vectors. The degree map
//! sends `H^(r-1) F` to 1 (and therefore `H^r` to `d`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("twist sum must be non-negative, got {0}")]
    NegativeTwistSum(i64),
    #[error("twists must be non-negative")]
    NegativeTwist,
    #[error("twists {twists:?} do not sum to {twist_sum}")]
    TwistSumMismatch { twists: Vec<i64>, twist_sum: i64 },
    #[error("twist list has length {len}, expected rank {rank}")]
    TwistCountMismatch { len: usize, rank: usize },
    #[error("classes live in different Chow rings (rank {0}, d={1}) and (rank {2}, d={3})")]
    ContextMismatch(usize, i64, usize, i64),
    #[error("degree is only defined on top-codimension cycles (codimension {expected}); class has a nonzero part in codimension {found}")]
    NotTopCodimension { expected: usize, found: usize },
    #[error("class {0} needs rank at least {1}, ring has rank {2}")]
    RankTooSmallFor(&'static str, usize, usize),
}

/// Presentation data of the ring: the rank `r` of `E` and `d = c_1(E)`.
#[derive(Debug, Clone)]
pub struct ChowContext {
    rank: usize,
    twist_sum: i64,
    twists: Option<Vec<i64>>,
}

impl ChowContext {
    pub fn new(rank: usize, twist_sum: i64) -> Result<Self, ChowError> {
        if rank < 2 {
            return Err(ChowError::RankTooSmall(rank));
        }
        if twist_sum < 0 {
            return Err(ChowError::NegativeTwistSum(twist_sum));
        }
        Ok(Self {
            rank,
            twist_sum,
            twists: None,
        })
    }

    /// Context for `E = O(t_1) + ... + O(t_r)`.
    pub fn from_twists(twists: &[i64]) -> Result<Self, ChowError> {
        if twists.iter().any(|&t| t < 0) {
            return Err(ChowError::NegativeTwist);
        }
        let mut ctx = Self::new(twists.len(), twists.iter().sum())?;
        ctx.twists = Some(twists.to_vec());
        Ok(ctx)
    }

    /// Context with explicit twists that must agree with the stated rank and sum.
    pub fn with_twists(rank: usize, twist_sum: i64, twists: &[i64]) -> Result<Self, ChowError> {
        if twists.len() != rank {
            return Err(ChowError::TwistCountMismatch {
                len: twists.len(),
                rank,
            });
        }
        if twists.iter().sum::<i64>() != twist_sum {
            return Err(ChowError::TwistSumMismatch {
                twists: twists.to_vec(),
                twist_sum,
            });
        }
        Self::from_twists(twists)
    }

    /// The desingularised Roth scroll: `E = O + O + O(a_1) + ... + O(a_{n-1})`.
    pub fn roth(positive_twists: &[i64]) -> Result<Self, ChowError> {
        let mut twists = vec![0, 0];
        twists.extend_from_slice(positive_twists);
        Self::from_twists(&twists)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension `n` of a divisor in the total space (`r - 1`).
    pub fn n(&self) -> usize {
        self.rank - 1
    }

    pub fn twist_sum(&self) -> i64 {
        self.twist_sum
    }

    pub fn twists(&self) -> Option<&[i64]> {
        self.twists.as_deref()
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.rank == other.rank && self.twist_sum == other.twist_sum
    }

    fn check(&self, other: &Self) -> Result<(), ChowError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(ChowError::ContextMismatch(
                self.rank,
                self.twist_sum,
                other.rank,
                other.twist_sum,
            ))
        }
    }

    pub fn zero(&self) -> ChowClass {
        ChowClass {
            ctx: self.clone(),
            coeffs: vec![BigInt::zero(); 2 * self.rank],
        }
    }

    pub fn one(&self) -> ChowClass {
        self.constant(BigInt::one())
    }

    pub fn constant(&self, c: impl Into<BigInt>) -> ChowClass {
        self.monomial(0, false, c)
    }

    pub fn h(&self) -> ChowClass {
        self.monomial(1, false, 1)
    }

    pub fn f(&self) -> ChowClass {
        self.monomial(0, true, 1)
    }

    /// `c * H^i F^j`, reduced to normal form (`i` may be `>= r`).
    pub fn monomial(&self, h_exp: usize, with_f: bool, c: impl Into<BigInt>) -> ChowClass {
        let mut out = self.zero();
        out.accumulate(h_exp, with_f as usize, &c.into());
        out
    }

    /// `a H + b F`.
    pub fn divisor(&self, h_coeff: impl Into<BigInt>, f_coeff: impl Into<BigInt>) -> ChowClass {
        let mut out = self.zero();
        out.coeffs[slot(1, 0)] = h_coeff.into();
        out.coeffs[slot(0, 1)] = f_coeff.into();
        out
    }
}

impl PartialEq for ChowContext {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
    }
}

impl Eq for ChowContext {}

#[inline]
fn slot(h_exp: usize, f_exp: usize) -> usize {
    2 * h_exp + f_exp
}

/// An element of the Chow ring in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    ctx: ChowContext,
    // coeffs[2i + j] is the coefficient of H^i F^j
    coeffs: Vec<BigInt>,
}

impl ChowClass {
    pub fn context(&self) -> &ChowContext {
        &self.ctx
    }

    /// Coefficient of `H^i F^j` in normal form; zero outside the basis.
    pub fn coeff(&self, h_exp: usize, with_f: bool) -> BigInt {
        if h_exp >= self.ctx.rank {
            return BigInt::zero();
        }
        self.coeffs[slot(h_exp, with_f as usize)].clone()
    }

    /// Nonzero terms as `(i, j, coefficient)` triples in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / 2, k % 2, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Codimensions carrying a nonzero coefficient, ascending.
    pub fn codimensions(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms().map(|(i, j, _)| i + j).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `Some(c)` when every nonzero term has codimension `c`; `None` for zero
    /// or mixed classes.
    pub fn homogeneous_codim(&self) -> Option<usize> {
        match self.codimensions().as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// The codimension-`c` part of the class.
    pub fn graded_part(&self, codim: usize) -> ChowClass {
        let mut out = self.ctx.zero();
        for (i, j, c) in self.terms() {
            if i + j == codim {
                out.coeffs[slot(i, j)] = c.clone();
            }
        }
        out
    }

    pub fn try_add(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.ctx.check(&other.ctx)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ChowClass {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.ctx.check(&other.ctx)?;
        let mut out = self.ctx.zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                if j1 + j2 > 1 {
                    continue;
                }
                out.accumulate(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> ChowClass {
        ChowClass {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> ChowClass {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Degree of a zero-cycle: the coefficient of `H^(r-1) F`.
    pub fn degree(&self) -> Result<BigInt, ChowError> {
        let top = self.ctx.rank;
        for (i, j, _) in self.terms() {
            if i + j != top {
                return Err(ChowError::NotTopCodimension {
                    expected: top,
                    found: i + j,
                });
            }
        }
        Ok(self.coeffs[slot(top - 1, 1)].clone())
    }

    /// Adds `c * H^h F^f` with the relations applied.
    fn accumulate(&mut self, h_exp: usize, f_exp: usize, c: &BigInt) {
        let r = self.ctx.rank;
        match f_exp {
            0 if h_exp < r => self.coeffs[slot(h_exp, 0)] += c,
            0 if h_exp == r => self.coeffs[slot(r - 1, 1)] += c * self.ctx.twist_sum,
            1 if h_exp < r => self.coeffs[slot(h_exp, 1)] += c,
            _ => {}
        }
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.try_add(rhs).expect("adding classes from different Chow rings")
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self.try_sub(rhs).expect("subtracting classes from different Chow rings")
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.try_mul(rhs).expect("multiplying classes from different Chow rings")
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        ChowClass {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for ChowClass {
    /// Highest codimension first, e.g. `H^2*F - 3*H + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        for (k, (i, j, c)) in terms.into_iter().enumerate() {
            let monomial = match (i, j) {
                (0, 0) => String::new(),
                (0, 1) => "F".to_string(),
                (1, 0) => "H".to_string(),
                (1, 1) => "H*F".to_string(),
                (i, 0) => format!("H^{i}"),
                (i, _) => format!("H^{i}*F"),
            };
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (monomial.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{monomial}")?,
                (false, false) => write!(f, "{mag}*{monomial}")?,
            }
        }
        Ok(())
    }
}

/// Classes with a fixed geometric meaning on the desingularised Roth scroll,
/// where the ring has rank `r = n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedClass {
    /// Canonical class `K = -(n+1) H + (d - 2) F`.
    Canonical,
    /// The divisor `b H + F` cutting out the Roth variety.
    Divisor { b: i64 },
    /// `P^1 x L`, the preimage of the vertex line.
    LineProduct,
    /// A fibre of `P^1 x L` over a point of `P^1`.
    FiberOverBase,
    /// A fibre of `P^1 x L` over a point of `L`.
    FiberOverLine,
    /// The double-point divisor `(deg - n - 2) H - K - (b H + F)` with `deg = b d + 1`.
    DoublePoint { b: i64 },
}

impl NamedClass {
    pub fn expand(self, ctx: &ChowContext) -> Result<ChowClass, ChowError> {
        let n = ctx.n();
        let ds = ctx.twist_sum();
        let needs_three = |name| {
            if ctx.rank() < 3 {
                Err(ChowError::RankTooSmallFor(name, 3, ctx.rank()))
            } else {
                Ok(())
            }
        };
        let class = match self {
            NamedClass::Canonical => ctx.divisor(-(n as i64 + 1), ds - 2),
            NamedClass::Divisor { b } => ctx.divisor(b, 1),
            NamedClass::LineProduct => {
                needs_three("PL")?;
                &ctx.monomial(n - 1, false, 1) - &ctx.monomial(n - 2, true, ds)
            }
            NamedClass::FiberOverBase => {
                needs_three("B")?;
                ctx.monomial(n - 1, true, 1)
            }
            NamedClass::FiberOverLine => {
                needs_three("C")?;
                &ctx.monomial(n, false, 1) - &ctx.monomial(n - 1, true, ds)
            }
            NamedClass::DoublePoint { b } => {
                let deg = BigInt::from(b) * ds + 1;
                let h = ctx.h().scale(&(deg - (n as i64) - 2));
                let k = NamedClass::Canonical.expand(ctx)?;
                let x = NamedClass::Divisor { b }.expand(ctx)?;
                &(&h - &k) - &x
            }
        };
        Ok(class)
    }
}

/// Degree of a product of classes; the product must be a zero-cycle.
pub fn degree_of_product(factors: &[&ChowClass]) -> Result<BigInt, ChowError> {
    let (first, rest) = factors
        .split_first()
        .expect("degree_of_product needs at least one factor");
    let mut acc = (*first).clone();
    for f in rest {
        acc = acc.try_mul(f)?;
    }
    acc.degree()
}
