use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use roth_core::cohomology::{
    binomial, curve_vanishing_threshold, harris_counterexample_search, line_bundle_cohomology,
    product_degree, product_hilbert, scroll_hilbert_function, BundleContext, HilbertPoly,
};

/// Weights of degree-`k` monomials in the twists, one entry per monomial.
fn monomial_weights(twists: &[i64], k: usize) -> Vec<i64> {
    twists
        .iter()
        .combinations_with_replacement(k)
        .map(|m| m.into_iter().sum())
        .collect()
}

/// Direct computation from the direct images, without Serre duality:
/// `pi_* O(aH) = Sym^a E` for `a >= 0`, and for `a = -r - k` the only
/// nonzero direct image is `R^(r-1) pi_* O(aH) = (Sym^k E)^* (-c1)`.
fn oracle(twists: &[i64], a: i64, b: i64) -> Vec<i64> {
    let r = twists.len();
    let c1: i64 = twists.iter().sum();
    let mut h = vec![0i64; r + 1];
    let h0 = |deg: i64| (deg + 1).max(0);
    let h1 = |deg: i64| (-deg - 1).max(0);
    if a >= 0 {
        for w in monomial_weights(twists, a as usize) {
            h[0] += h0(w + b);
            h[1] += h1(w + b);
        }
    } else if a <= -(r as i64) {
        let k = (-(r as i64) - a) as usize;
        for w in monomial_weights(twists, k) {
            let deg = -w - c1 + b;
            h[r - 1] += h0(deg);
            h[r] += h1(deg);
        }
    }
    h
}

fn as_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

fn contexts(max_rank: usize, max_twist: i64) -> Vec<Vec<i64>> {
    (2..=max_rank)
        .flat_map(|r| (0..=max_twist).combinations_with_replacement(r))
        .collect()
}

/// `(0, 0, a_1, ..., a_(n-1))` for `2 <= n <= 5`, `1 <= a_i <= 4`.
fn roth_shapes() -> Vec<Vec<i64>> {
    (2..=5usize)
        .flat_map(|n| (1..=4i64).combinations_with_replacement(n - 1))
        .map(|a| [vec![0, 0], a].concat())
        .collect()
}

#[test]
fn matches_direct_images_and_serre_duality_on_the_grid() {
    for twists in contexts(5, 4) {
        let ctx = BundleContext::new(&twists).unwrap();
        let r = twists.len();
        let c1: i64 = twists.iter().sum();
        for a in -8..=8 {
            for b in -8..=8 {
                let t = line_bundle_cohomology(&ctx, a, b);
                assert_eq!(as_i64(t.values()), oracle(&twists, a, b), "{twists:?} a={a} b={b}");
                let dual = line_bundle_cohomology(&ctx, -(r as i64) - a, c1 - 2 - b);
                for i in 0..=r {
                    assert_eq!(t.h(i), dual.h(r - i), "{twists:?} a={a} b={b} i={i}");
                }
            }
        }
    }
}

#[test]
fn euler_characteristic_is_linear_in_b() {
    for twists in contexts(4, 4) {
        let ctx = BundleContext::new(&twists).unwrap();
        for a in 0..=6 {
            let weights = monomial_weights(&twists, a as usize);
            for b in -10..=10 {
                let expected: i64 = weights.iter().map(|w| w + b + 1).sum();
                let chi = line_bundle_cohomology(&ctx, a, b).euler_characteristic();
                assert_eq!(chi, BigInt::from(expected));
            }
        }
    }
}

#[test]
fn structure_sheaf_has_only_constants() {
    for twists in contexts(6, 5) {
        let ctx = BundleContext::new(&twists).unwrap();
        let mut expected = vec![BigInt::zero(); twists.len() + 1];
        expected[0] = 1.into();
        assert_eq!(line_bundle_cohomology(&ctx, 0, 0).values(), expected.as_slice());
        assert_eq!(scroll_hilbert_function(&ctx, 0).unwrap(), 1.into());
    }
}

#[test]
fn roth_shape_vanishings() {
    for twists in roth_shapes() {
        let ctx = BundleContext::new(&twists).unwrap();
        assert!(line_bundle_cohomology(&ctx, 0, -1).is_zero(), "{twists:?}");
        for b in 1..=8 {
            let t = line_bundle_cohomology(&ctx, 1 - b, -1);
            assert!(t.h(0).is_zero() && t.h(1).is_zero(), "{twists:?} b={b}");
        }
        // h^0(H) = N + 1 where the scroll spans P^N, N = sum(e_i + 1) - 1
        let n_plus_one: i64 = twists.iter().map(|e| e + 1).sum();
        assert_eq!(line_bundle_cohomology(&ctx, 1, 0).h(0), n_plus_one.into());
    }
}

#[test]
fn hilbert_function_counts_monomials() {
    for twists in contexts(4, 4) {
        let ctx = BundleContext::new(&twists).unwrap();
        for k in 0..=6 {
            let count: i64 = monomial_weights(&twists, k).iter().map(|w| w + 1).sum();
            assert_eq!(scroll_hilbert_function(&ctx, k as i64).unwrap(), count.into());
        }
    }
    let ctx = BundleContext::new(&[1, 1]).unwrap();
    assert!(scroll_hilbert_function(&ctx, -1).is_err());
}

#[test]
fn harris_search_matches_the_inequality() {
    for n in 2..=12i64 {
        let raw: Vec<i64> = (1..=80i64)
            .filter(|&d| d - 3 > (n * d - 1).div_euclid(2 * n - 1))
            .collect();
        assert_eq!(harris_counterexample_search(n, 80).unwrap(), raw, "n={n}");
    }
    assert_eq!(harris_counterexample_search(2, 12).unwrap(), vec![9, 10, 11, 12]);
    assert!(harris_counterexample_search(1, 12).is_err());
}

#[test]
fn curve_threshold_is_sharp_for_roth_degrees() {
    for ambient in 2..=10 {
        for b in 1..=10 {
            assert_eq!(curve_vanishing_threshold(b * (ambient - 1) + 1, ambient).unwrap(), b);
        }
    }
}

#[test]
fn product_degree_matches_hilbert_polynomials() {
    let one = BigRational::from_integer(1.into());
    for a in 0..=5usize {
        for b in 0..=5usize {
            let p = product_hilbert(&HilbertPoly::projective_space(a), &HilbertPoly::projective_space(b));
            assert_eq!(p.degree(), Some(a + b));
            let deg = product_degree(a as i64, 1, b as i64, 1);
            assert_eq!(p.variety_degree(), BigRational::from_integer(deg.clone()));
            assert_eq!(deg, binomial((a + b) as i64, b as i64));
            // value at k counts bidegree (k, k) monomials
            for k in 0..=5i64 {
                let direct = binomial(k + a as i64, a as i64) * binomial(k + b as i64, b as i64);
                assert_eq!(p.eval(k), BigRational::from_integer(direct));
            }
        }
    }
    for d in 1..=8 {
        for n in 1..=4usize {
            let p = product_hilbert(&HilbertPoly::plane_curve(d), &HilbertPoly::projective_space(n - 1));
            let deg = product_degree(1, d, n as i64 - 1, 1);
            assert_eq!(p.variety_degree(), BigRational::from_integer(deg.clone()));
            assert_eq!(deg, BigInt::from(n as i64 * d));
        }
    }
    assert_eq!(HilbertPoly::projective_space(0).leading_coeff(), one);
}
