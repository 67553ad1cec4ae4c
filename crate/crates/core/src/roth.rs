//! Roth varieties: a smooth `X^n` in `P^N` lying on the scroll
//! `S = S_{0,0,a_1,...,a_{n-1}}` and containing its vertex line `L`.
//!
//! On the desingularisation `P(E*)` of `S` the strict transform of `X` is a
//! divisor in `|bH + F|`, so `X` is fixed by `(n, a, b)`:
//! `N - n = sum a_i`, `d = b (N - n) + 1`. Every invariant below has a closed
//! form; [`verify_identities`] recomputes the intersection numbers in the
//! Chow ring independently.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::chow::{ChowClass, ChowContext, NamedClass};
use crate::cohomology::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RothError {
    #[error("Roth varieties have dimension n >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("expected {expected} scroll twists a_1..a_(n-1), got {got}")]
    TwistCount { expected: usize, got: usize },
    #[error("scroll twists a_i must be positive, got {0:?}")]
    NonPositiveTwist(Vec<i64>),
    #[error("b must be positive, got {0}")]
    NonPositiveB(i64),
    #[error("codimension N - n = {0} is below 2")]
    CodimensionTooSmall(i64),
    #[error("sectional genus {0} is not an integer")]
    NonIntegralGenus(BigRational),
    #[error("Castelnuovo bound needs N > n (got n={n}, N={ambient})")]
    NotProper { n: i64, ambient: i64 },
    #[error("Castelnuovo bound needs d >= 1, got {0}")]
    NonPositiveDegree(i64),
}

/// Parameters `(n, a_1..a_{n-1}, b)` of a Roth variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RothData {
    n: usize,
    a: Vec<i64>,
    b: i64,
}

impl RothData {
    /// `a` holds the positive scroll twists; it is sorted on construction and
    /// its length fixes `n = len + 1`.
    pub fn new(a: &[i64], b: i64) -> Result<Self, RothError> {
        Self::with_dimension(a.len() + 1, a, b)
    }

    pub fn with_dimension(n: usize, a: &[i64], b: i64) -> Result<Self, RothError> {
        if n < 2 {
            return Err(RothError::DimensionTooSmall(n));
        }
        if a.len() != n - 1 {
            return Err(RothError::TwistCount {
                expected: n - 1,
                got: a.len(),
            });
        }
        if a.iter().any(|&x| x < 1) {
            return Err(RothError::NonPositiveTwist(a.to_vec()));
        }
        if b < 1 {
            return Err(RothError::NonPositiveB(b));
        }
        let codim: i64 = a.iter().sum();
        if codim < 2 {
            return Err(RothError::CodimensionTooSmall(codim));
        }
        let mut a = a.to_vec();
        a.sort_unstable();
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `N - n = sum a_i`.
    pub fn codim(&self) -> i64 {
        self.a.iter().sum()
    }

    pub fn ambient_dim(&self) -> i64 {
        self.codim() + self.n as i64
    }

    pub fn degree(&self) -> i64 {
        self.b * self.codim() + 1
    }

    /// Twists of the containing scroll, `0, 0, a_1, ..., a_{n-1}`.
    pub fn scroll_twists(&self) -> Vec<i64> {
        let mut t = vec![0, 0];
        t.extend_from_slice(&self.a);
        t
    }

    /// Chow ring of the desingularised scroll.
    pub fn chow_context(&self) -> ChowContext {
        ChowContext::roth(&self.a).expect("validated Roth data gives a valid context")
    }
}

/// `M`, `epsilon` and the Harris bound `C(M, n+1)(N-n) + C(M, n) epsilon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CastelnuovoParams {
    pub m: i64,
    pub epsilon: i64,
    #[serde(serialize_with = "crate::bigint_serde::serialize")]
    pub bound: BigInt,
}

pub fn castelnuovo_params(d: i64, n: i64, ambient: i64) -> Result<CastelnuovoParams, RothError> {
    if ambient <= n || n < 1 {
        return Err(RothError::NotProper { n, ambient });
    }
    if d < 1 {
        return Err(RothError::NonPositiveDegree(d));
    }
    let codim = ambient - n;
    let (m, epsilon) = (d - 1).div_rem(&codim);
    let bound = binomial(m, n + 1) * codim + binomial(m, n) * epsilon;
    Ok(CastelnuovoParams { m, epsilon, bound })
}

/// `x H + y F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    #[serde(serialize_with = "crate::bigint_serde::serialize")]
    pub h: BigInt,
    #[serde(serialize_with = "crate::bigint_serde::serialize")]
    pub f: BigInt,
}

/// The reducible section of `X` by a general `(N-n+1)`-plane through `L`:
/// `L` plus `count` disjoint plane curves of degree `curve_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineSection {
    pub count: i64,
    pub curve_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RothReport {
    pub n: usize,
    pub a: Vec<i64>,
    pub b: i64,
    pub scroll: Vec<i64>,
    pub degree: i64,
    pub ambient_dim: i64,
    pub codim: i64,
    #[serde(serialize_with = "crate::bigint_serde::serialize")]
    pub sectional_genus: BigInt,
    pub double_point_class: DivisorClass,
    #[serde(serialize_with = "crate::bigint_serde::serialize")]
    pub cx_dot_l: BigInt,
    #[serde(serialize_with = "crate::bigint_serde::serialize")]
    pub cx_top_power: BigInt,
    pub normal_bundle_twists: Vec<i64>,
    pub normal_bundle_c1: i64,
    pub is_big: bool,
    pub is_castelnuovo: bool,
    pub is_rational_normal_scroll: bool,
    /// The scroll `S_{1,a_1,...,a_{n-1}}` that `X` is when `b = 1`.
    pub rational_normal_scroll: Option<Vec<i64>>,
    pub projectively_normal: bool,
    /// `H^i(X, O((d-n-2)H)) = 0` for `i >= 1`; holds for every smooth
    /// nondegenerate `X` of codimension at least 2 (not recomputed).
    pub adjoint_vanishing: bool,
    pub section_through_line: LineSection,
    /// Castelnuovo data of a general curve section, a degree-`d` curve in `P^(N-n+1)`.
    pub curve_section_castelnuovo: CastelnuovoParams,
}

/// `(1/2)(d-1)(d-(N-n+1))/(N-n)` as an exact rational.
pub fn sectional_genus_rational(data: &RothData) -> BigRational {
    let d = BigInt::from(data.degree());
    let codim = BigInt::from(data.codim());
    let num = (&d - 1) * (&d - (&codim + 1));
    BigRational::new(num, codim * 2)
}

pub fn sectional_genus(data: &RothData) -> Result<BigInt, RothError> {
    let g = sectional_genus_rational(data);
    if !g.is_integer() {
        return Err(RothError::NonIntegralGenus(g));
    }
    Ok(g.to_integer())
}

pub fn report(data: &RothData) -> Result<RothReport, RothError> {
    let n = data.n as i64;
    let d = data.degree();
    let b = data.b;
    let codim = data.codim();
    let normal_bundle_twists: Vec<i64> = data.a.iter().map(|&a| 1 - b * a).collect();
    let cx_top_power = BigInt::from(d - b - 1).pow(data.n as u32) * (d - n);
    let b_is_one = b == 1;
    Ok(RothReport {
        n: data.n,
        a: data.a.clone(),
        b,
        scroll: data.scroll_twists(),
        degree: d,
        ambient_dim: data.ambient_dim(),
        codim,
        sectional_genus: sectional_genus(data)?,
        double_point_class: DivisorClass {
            h: BigInt::from(d - b - 1),
            f: BigInt::from(1 - codim),
        },
        cx_dot_l: BigInt::zero(),
        cx_top_power,
        normal_bundle_c1: normal_bundle_twists.iter().sum(),
        normal_bundle_twists,
        is_big: !(b_is_one && data.a.iter().all(|&a| a == 1)),
        is_castelnuovo: b > n,
        is_rational_normal_scroll: b_is_one,
        rational_normal_scroll: b_is_one.then(|| {
            let mut t = vec![1];
            t.extend_from_slice(&data.a);
            t.sort_unstable();
            t
        }),
        projectively_normal: true,
        adjoint_vanishing: true,
        section_through_line: LineSection {
            count: codim,
            curve_degree: b,
        },
        curve_section_castelnuovo: castelnuovo_params(d, 1, codim + 1)?,
    })
}

/// One recomputed intersection identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub checks: Vec<IdentityCheck>,
}

impl Verification {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, expected: impl ToString, actual: impl ToString) -> IdentityCheck {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    IdentityCheck {
        name,
        passed: expected == actual,
        expected,
        actual,
    }
}

fn deg(class: ChowClass) -> String {
    match class.degree() {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Classes of the desingularised scroll used by the identities.
pub struct RothClasses {
    pub ctx: ChowContext,
    pub h: ChowClass,
    pub canonical: ChowClass,
    pub divisor: ChowClass,
    pub line_product: ChowClass,
    pub fiber_over_line: ChowClass,
    pub double_point: ChowClass,
}

impl RothClasses {
    pub fn new(data: &RothData) -> Self {
        let ctx = data.chow_context();
        let expand = |tag: NamedClass| tag.expand(&ctx).expect("rank >= 3 for Roth data");
        Self {
            h: ctx.h(),
            canonical: expand(NamedClass::Canonical),
            divisor: expand(NamedClass::Divisor { b: data.b }),
            line_product: expand(NamedClass::LineProduct),
            fiber_over_line: expand(NamedClass::FiberOverLine),
            double_point: expand(NamedClass::DoublePoint { b: data.b }),
            ctx,
        }
    }
}

/// Recomputes the closed-form invariants by intersecting on `P(E*)`.
pub fn verify_identities(data: &RothData) -> Verification {
    let c = RothClasses::new(data);
    let n = data.n;
    let d = data.degree();
    let b = data.b;
    let ds = data.codim();
    let x = &c.divisor;
    let mut checks = Vec::new();

    checks.push(check("divisor_meets_fibre_once", 1, deg(x * &c.fiber_over_line)));
    checks.push(check(
        "line_product_meets_divisor_once",
        1,
        deg(&(&c.line_product * x) * &c.h),
    ));

    let expected_cx = c.ctx.divisor(b * (ds - 1), 1 - ds);
    checks.push(check("double_point_class", &expected_cx, &c.double_point));
    let line_curve = &c.line_product * x;
    let expected_line_curve =
        &c.ctx.monomial(n, false, b) + &c.ctx.monomial(n - 1, true, 1 - b * ds);
    checks.push(check("line_curve_class", &expected_line_curve, &line_curve));
    checks.push(check("cx_dot_line", 0, deg(&c.double_point * &line_curve)));

    let adjoint = &c.canonical + x;
    let h_pow = c.h.pow(n as u32 - 1);
    let two_pi_minus_two = (&adjoint * x)
        .try_mul(&h_pow)
        .and_then(|k| k.degree())
        .and_then(|k| Ok(k + (&c.h.pow(n as u32) * x).degree()? * (n as i64 - 1)));
    let two_pi_minus_two = match two_pi_minus_two {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    };
    checks.push(check(
        "genus_intersection",
        b * b * ds - b * ds - 2,
        &two_pi_minus_two,
    ));
    let two = BigRational::from_integer(2.into());
    let closed = sectional_genus_rational(data) * &two - &two;
    checks.push(check("genus_closed_form", closed, &two_pi_minus_two));

    let cx_power = BigInt::from(d - b - 1).pow(n as u32) * (d - n as i64);
    checks.push(check("cx_top_power", &cx_power, deg(&c.double_point.pow(n as u32) * x)));

    if n == 2 {
        checks.push(check(
            "line_self_intersection",
            2 - d,
            deg(&c.line_product.pow(2) * x),
        ));
    }
    let c1: i64 = data.a.iter().map(|&a| 1 - b * a).sum();
    checks.push(check("normal_bundle_c1", n as i64 - d, c1));

    Verification { checks }
}

/// What is known about an embedded smooth variety for the purposes of the
/// double-point linear system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietyDescriptor {
    /// A nondegenerate curve of codimension at least 2.
    Curve,
    /// `K_X` a multiple of the hyperplane class.
    SemiCanonical,
    Roth { data: RothData },
    /// An isomorphic projection of a Roth variety.
    RothProjection { data: RothData },
    GeneralNonRoth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmplenessVerdict {
    pub base_point_free: bool,
    pub nef: bool,
    pub separates_points: bool,
    pub ample: bool,
    pub very_ample: Tri,
}

/// Positivity of the double-point linear system `|C_X|`.
pub fn ampleness_verdict(desc: &VarietyDescriptor) -> AmplenessVerdict {
    let (ample, very_ample) = match desc {
        VarietyDescriptor::Curve | VarietyDescriptor::SemiCanonical => (true, Tri::Yes),
        VarietyDescriptor::Roth { .. } | VarietyDescriptor::RothProjection { .. } => {
            (false, Tri::No)
        }
        // no example of an ample but not very ample |C_X| is known
        VarietyDescriptor::GeneralNonRoth => (true, Tri::Unknown),
    };
    AmplenessVerdict {
        base_point_free: true,
        nef: true,
        separates_points: ample,
        ample,
        very_ample,
    }
}

impl RothReport {
    /// Flat `key=value` lines.
    pub fn to_text(&self) -> String {
        let list = |v: &[i64]| crate::scroll::join(v);
        let mut lines = vec![
            format!("n={}", self.n),
            format!("a={}", list(&self.a)),
            format!("b={}", self.b),
            format!("scroll=S_{}", list(&self.scroll)),
            format!("d={}", self.degree),
            format!("N={}", self.ambient_dim),
            format!("codim={}", self.codim),
            format!("sectional_genus={}", self.sectional_genus),
            format!(
                "double_point_class={}",
                format_divisor(&self.double_point_class.h, &self.double_point_class.f)
            ),
            format!("cx_dot_l={}", self.cx_dot_l),
            format!("cx_top_power={}", self.cx_top_power),
            format!("normal_bundle_twists={}", list(&self.normal_bundle_twists)),
            format!("normal_bundle_c1={}", self.normal_bundle_c1),
            format!("is_big={}", self.is_big),
            format!("is_castelnuovo={}", self.is_castelnuovo),
            format!("is_rational_normal_scroll={}", self.is_rational_normal_scroll),
        ];
        if let Some(s) = &self.rational_normal_scroll {
            lines.push(format!("rational_normal_scroll=S_{}", list(s)));
        }
        lines.extend([
            format!("projectively_normal={}", self.projectively_normal),
            format!("adjoint_vanishing={}", self.adjoint_vanishing),
            format!(
                "section_through_line=L+{}x(plane curve of degree {})",
                self.section_through_line.count, self.section_through_line.curve_degree
            ),
            format!(
                "curve_section_castelnuovo=M={} epsilon={} bound={}",
                self.curve_section_castelnuovo.m,
                self.curve_section_castelnuovo.epsilon,
                self.curve_section_castelnuovo.bound
            ),
        ]);
        lines.join("\n")
    }
}

fn format_divisor(h: &BigInt, f: &BigInt) -> String {
    let sign = if f.is_negative() { "-" } else { "+" };
    format!("{h}H {sign} {}F", f.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(a: &[i64], b: i64) -> RothData {
        RothData::new(a, b).unwrap()
    }

    #[test]
    fn surface_in_p5() {
        let r = report(&data(&[3], 2)).unwrap();
        assert_eq!((r.degree, r.ambient_dim), (7, 5));
        assert_eq!(r.sectional_genus, 3.into());
        assert_eq!(r.double_point_class, DivisorClass { h: 4.into(), f: (-2).into() });
        assert_eq!(r.cx_top_power, 80.into());
        assert_eq!(r.normal_bundle_twists, vec![-5]);
        assert_eq!(r.normal_bundle_c1, -5);
        assert!(r.is_big);
        assert!(!r.is_castelnuovo);
        assert_eq!(r.section_through_line, LineSection { count: 3, curve_degree: 2 });
    }

    #[test]
    fn segre_threefold_is_not_big() {
        let r = report(&data(&[1, 1], 1)).unwrap();
        assert_eq!(r.degree, 3);
        assert!(!r.is_big);
        assert!(r.is_rational_normal_scroll);
        assert_eq!(r.rational_normal_scroll, Some(vec![1, 1, 1]));
        assert_eq!(r.cx_top_power, 0.into());
    }

    #[test]
    fn castelnuovo_surface() {
        let r = report(&data(&[3], 3)).unwrap();
        assert_eq!(r.degree, 10);
        assert_eq!(r.sectional_genus, 9.into());
        assert!(r.is_castelnuovo);
        assert_eq!(r.curve_section_castelnuovo.bound, 9.into());
    }

    #[test]
    fn identities_surface() {
        let v = verify_identities(&data(&[3], 2));
        assert!(v.all_passed(), "{v:?}");
        assert_eq!(v.get("line_self_intersection").unwrap().actual, "-5");
        assert_eq!(v.get("cx_dot_line").unwrap().actual, "0");
    }

    #[test]
    fn identities_fourfold() {
        let v = verify_identities(&data(&[1, 2, 3], 5));
        assert!(v.all_passed(), "{v:?}");
        assert!(v.get("line_self_intersection").is_none());
    }

    #[test]
    fn identities_segre() {
        for n in 3..7 {
            let v = verify_identities(&data(&vec![1; n - 1], 1));
            assert!(v.all_passed());
            assert_eq!(v.get("cx_top_power").unwrap().actual, "0");
        }
    }

    #[test]
    fn castelnuovo_examples() {
        let p = castelnuovo_params(10, 1, 4).unwrap();
        assert_eq!((p.m, p.epsilon, p.bound), (3, 0, 9.into()));
        let p = castelnuovo_params(4, 1, 3).unwrap();
        assert_eq!((p.m, p.epsilon, p.bound), (1, 1, 1.into()));
        for n in 1..5 {
            for codim in 1..5 {
                let p = castelnuovo_params(codim + 1, n, n + codim).unwrap();
                assert_eq!((p.m, p.epsilon, p.bound), (1, 0, 0.into()));
            }
        }
        assert!(castelnuovo_params(5, 3, 3).is_err());
        assert!(castelnuovo_params(0, 1, 3).is_err());
    }

    #[test]
    fn validation() {
        assert_eq!(RothData::new(&[], 1), Err(RothError::DimensionTooSmall(1)));
        assert_eq!(RothData::new(&[1], 2), Err(RothError::CodimensionTooSmall(1)));
        assert!(matches!(RothData::new(&[0, 2], 2), Err(RothError::NonPositiveTwist(_))));
        assert_eq!(RothData::new(&[2], 0), Err(RothError::NonPositiveB(0)));
        assert!(matches!(
            RothData::with_dimension(3, &[2], 1),
            Err(RothError::TwistCount { expected: 2, got: 1 })
        ));
        assert_eq!(data(&[3, 1], 2).a(), &[1, 3]);
    }

    #[test]
    fn verdicts() {
        let v = ampleness_verdict(&VarietyDescriptor::Curve);
        assert!(v.base_point_free && v.nef && v.ample && v.separates_points);
        assert_eq!(v.very_ample, Tri::Yes);
        let v = ampleness_verdict(&VarietyDescriptor::Roth { data: data(&[3], 2) });
        assert!(v.base_point_free && v.nef && !v.ample && !v.separates_points);
        let v = ampleness_verdict(&VarietyDescriptor::GeneralNonRoth);
        assert!(v.ample && v.separates_points);
        assert_eq!(v.very_ample, Tri::Unknown);
        let semi = ampleness_verdict(&VarietyDescriptor::SemiCanonical);
        assert_eq!(semi.very_ample, Tri::Yes);
        let proj = ampleness_verdict(&VarietyDescriptor::RothProjection { data: data(&[3], 2) });
        assert_eq!(proj, ampleness_verdict(&VarietyDescriptor::Roth { data: data(&[3], 2) }));
    }

    #[test]
    fn text_report() {
        let text = report(&data(&[3], 2)).unwrap().to_text();
        assert!(text.contains("d=7\n"));
        assert!(text.contains("double_point_class=4H - 2F"));
        assert!(text.contains("sectional_genus=3"));
    }
}
