//! Rational normal scrolls `S_{a_0,...,a_k}` over `P^1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bundle::{surjection_exists, BundleMapSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScrollError {
    #[error("a scroll needs at least one twist")]
    Empty,
    #[error("scroll twists must be non-negative, got {0}")]
    NegativeTwist(i64),
    #[error("scroll twists cannot all be zero")]
    AllZero,
    #[error("cannot parse scroll tuple {0:?}; expected comma-separated integers such as 0,0,2,3")]
    Parse(String),
    #[error("hyperplane sections are only decided for scrolls with all twists >= 1, got {0}")]
    ZeroTwist(ScrollSpec),
    #[error("{0} has dimension 1; it has no hyperplane section that is a scroll")]
    CurveHasNoSection(ScrollSpec),
    #[error("{0} has no hyperplane section among scrolls")]
    NoSection(ScrollSpec),
    #[error("hyperplane sections of {spec} have no unique generic member; maximal candidates: {candidates:?}")]
    AmbiguousSection {
        spec: ScrollSpec,
        candidates: Vec<Vec<i64>>,
    },
    #[error("summand index {index} out of range for {spec}")]
    IndexOutOfRange { spec: ScrollSpec, index: usize },
    #[error("{0} has a single summand; there is no proper subscroll")]
    SingleSummand(ScrollSpec),
    #[error("not a Roth scroll: {0}")]
    NotRothShape(String),
}

/// Twists stored ascending; at least one is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "Vec<i64>")]
pub struct ScrollSpec {
    twists: Vec<i64>,
}

impl From<ScrollSpec> for Vec<i64> {
    fn from(s: ScrollSpec) -> Self {
        s.twists
    }
}

impl ScrollSpec {
    pub fn new(twists: &[i64]) -> Result<Self, ScrollError> {
        if twists.is_empty() {
            return Err(ScrollError::Empty);
        }
        if let Some(&t) = twists.iter().find(|&&t| t < 0) {
            return Err(ScrollError::NegativeTwist(t));
        }
        if twists.iter().all(|&t| t == 0) {
            return Err(ScrollError::AllZero);
        }
        let mut twists = twists.to_vec();
        twists.sort_unstable();
        Ok(Self { twists })
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn dim(&self) -> usize {
        self.twists.len()
    }

    pub fn degree(&self) -> i64 {
        self.twists.iter().sum()
    }

    /// `N` with the scroll spanning `P^N`.
    pub fn ambient_dim(&self) -> i64 {
        self.degree() + self.dim() as i64 - 1
    }

    /// Dimension of the vertex, `None` for a smooth scroll.
    pub fn vertex_dim(&self) -> Option<usize> {
        let zeros = self.twists.iter().take_while(|&&t| t == 0).count();
        zeros.checked_sub(1)
    }

    /// Comma-separated twists, the command-line form.
    pub fn tuple_string(&self) -> String {
        join(&self.twists)
    }
}

pub(crate) fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Parses `1,2,-3` into integers.
pub fn parse_tuple(s: &str) -> Option<Vec<i64>> {
    if s.trim().is_empty() {
        return None;
    }
    s.split(',').map(|p| p.trim().parse().ok()).collect()
}

impl FromStr for ScrollSpec {
    type Err = ScrollError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let twists = parse_tuple(s).ok_or_else(|| ScrollError::Parse(s.to_string()))?;
        Self::new(&twists)
    }
}

impl fmt::Display for ScrollSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}", self.tuple_string())
    }
}

/// `S_{0,0,a_1,...,a_{n-1}}` with every `a_i >= 1` and `n >= 2`; its vertex is a line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RothScrollSpec(ScrollSpec);

impl RothScrollSpec {
    pub fn from_positive_twists(a: &[i64]) -> Result<Self, ScrollError> {
        let mut twists = vec![0, 0];
        twists.extend_from_slice(a);
        Self::try_from(ScrollSpec::new(&twists)?)
    }

    pub fn scroll(&self) -> &ScrollSpec {
        &self.0
    }

    /// `a_1, ..., a_{n-1}`.
    pub fn positive_twists(&self) -> &[i64] {
        &self.0.twists[2..]
    }

    /// Dimension `n` of a Roth variety inside this scroll.
    pub fn n(&self) -> usize {
        self.0.dim() - 1
    }
}

impl TryFrom<ScrollSpec> for RothScrollSpec {
    type Error = ScrollError;

    fn try_from(spec: ScrollSpec) -> Result<Self, Self::Error> {
        if spec.vertex_dim() != Some(1) {
            return Err(ScrollError::NotRothShape(format!(
                "{spec} must have exactly two zero twists"
            )));
        }
        if spec.dim() < 3 {
            return Err(ScrollError::NotRothShape(format!(
                "{spec} needs at least one positive twist"
            )));
        }
        Ok(Self(spec))
    }
}

/// True when `special` is a degeneration of `general`: same dimension and
/// degree, and every prefix sum of `special` is at most the matching prefix
/// sum of `general`.
pub fn degenerates_to(general: &ScrollSpec, special: &ScrollSpec) -> bool {
    if general.dim() != special.dim() || general.degree() != special.degree() {
        return false;
    }
    let mut g = 0;
    let mut s = 0;
    for (a, b) in general.twists.iter().zip(&special.twists) {
        g += a;
        s += b;
        if s > g {
            return false;
        }
    }
    true
}

fn require_positive(spec: &ScrollSpec) -> Result<(), ScrollError> {
    if spec.twists[0] < 1 {
        Err(ScrollError::ZeroTwist(spec.clone()))
    } else {
        Ok(())
    }
}

/// Whether `small` is a hyperplane section of `big` (both without vertex).
pub fn is_hyperplane_section(big: &ScrollSpec, small: &ScrollSpec) -> Result<bool, ScrollError> {
    require_positive(big)?;
    require_positive(small)?;
    if small.dim() + 1 != big.dim() || small.degree() != big.degree() {
        return Ok(false);
    }
    let map = BundleMapSpec::new(&big.twists, &small.twists).expect("scroll twists are nonempty");
    Ok(surjection_exists(&map))
}

/// Every hyperplane section of `big` among scrolls, ascending.
pub fn hyperplane_sections(big: &ScrollSpec) -> Result<Vec<ScrollSpec>, ScrollError> {
    require_positive(big)?;
    if big.dim() < 2 {
        return Err(ScrollError::CurveHasNoSection(big.clone()));
    }
    let mut out = Vec::new();
    for parts in sorted_compositions(big.degree(), big.dim() - 1, 1) {
        let small = ScrollSpec { twists: parts };
        if is_hyperplane_section(big, &small)? {
            out.push(small);
        }
    }
    Ok(out)
}

/// The generic hyperplane section: the section of which all others are
/// degenerations. Enumerates every candidate and checks that the maximum
/// is unique.
pub fn generic_hyperplane_section(big: &ScrollSpec) -> Result<ScrollSpec, ScrollError> {
    let sections = hyperplane_sections(big)?;
    if sections.is_empty() {
        return Err(ScrollError::NoSection(big.clone()));
    }
    let maximal: Vec<&ScrollSpec> = sections
        .iter()
        .filter(|g| {
            !sections
                .iter()
                .any(|t| t != *g && degenerates_to(t, g))
        })
        .collect();
    match maximal.as_slice() {
        [g] if sections.iter().all(|t| degenerates_to(g, t)) => Ok((*g).clone()),
        _ => Err(ScrollError::AmbiguousSection {
            spec: big.clone(),
            candidates: maximal.iter().map(|s| s.twists.clone()).collect(),
        }),
    }
}

/// Normal bundle of the curve `S_{a_j}` inside the scroll, as the twists
/// `a_j - a_i` over `i != j` (indices into the sorted twists).
pub fn subscroll_normal_bundle(spec: &ScrollSpec, selected: usize) -> Result<Vec<i64>, ScrollError> {
    if selected >= spec.dim() {
        return Err(ScrollError::IndexOutOfRange {
            spec: spec.clone(),
            index: selected,
        });
    }
    if spec.dim() < 2 {
        return Err(ScrollError::SingleSummand(spec.clone()));
    }
    let a0 = spec.twists[selected];
    Ok(spec
        .twists
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != selected)
        .map(|(_, &a)| a0 - a)
        .collect())
}

/// Non-decreasing `parts`-tuples of integers `>= min` summing to `total`.
pub fn sorted_compositions(total: i64, parts: usize, min: i64) -> Vec<Vec<i64>> {
    fn go(remaining: i64, parts: usize, min: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut v = min;
        while v * parts as i64 <= remaining {
            cur.push(v);
            go(remaining - v, parts - 1, v, cur, out);
            cur.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, min, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}
