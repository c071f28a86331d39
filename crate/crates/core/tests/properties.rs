use proptest::prelude::*;
use tgquad::chebyshev::truncated_gamma_recurrence;
use tgquad::precision::round_to_digits;
use tgquad::quadrature::{exactness_check, gauss_rule, weights_via_kernel};
use tgquad::specialfn::{lower_incomplete_gamma, pochhammer};
use tgquad::{MpFloat, PrecisionContext, Real};

fn rule_f64(n: usize, z: f64) -> tgquad::quadrature::QuadratureRule<f64> {
    let ctx = PrecisionContext::new(16).unwrap();
    let t = truncated_gamma_recurrence(&1.0_f64, &z, n, &ctx).unwrap();
    gauss_rule(&t, &ctx).unwrap()
}

#[test]
fn nodes_interlace_between_consecutive_rules() {
    let ctx = PrecisionContext::new(30).unwrap();
    let one = MpFloat::from_f64(1.0, &ctx);
    let table = truncated_gamma_recurrence(&one, &one, 16, &ctx).unwrap();
    let rule = |n: usize| {
        let t =
            tgquad::recurrence::RecurrenceTable::new(one.clone(), one.clone(), 30, table.b[..n].to_vec(), table.a[..n].to_vec()).unwrap();
        gauss_rule(&t, &ctx).unwrap()
    };
    for n in 5..=15 {
        let (lo, hi) = (rule(n), rule(n + 1));
        assert!(lo.weights.iter().chain(&hi.weights).all(|w| w.is_positive()));
        for k in 0..n {
            assert!(hi.nodes[k] < lo.nodes[k] && lo.nodes[k] < hi.nodes[k + 1], "n={n} k={k}");
        }
    }
}

#[test]
fn rules_integrate_polynomials_up_to_degree_2n_minus_1() {
    for n in [2usize, 5, 10] {
        let rule = rule_f64(n, 1.0);
        let ctx = PrecisionContext::new(16).unwrap();
        for k in 0..2 * n {
            let r = exactness_check(&rule, k, &ctx).unwrap();
            assert!(r.relerr <= 1e-12, "n={n} k={k}: {:e}", r.relerr);
        }
    }
}

#[test]
fn degree_2n_error_is_the_norm_of_p_n() {
    // ⟨P_N, P_N⟩ / ∫ x^(2N+1) e^(-x), from the printed a_k and mpmath quadrature
    let expected = [(2usize, 0.013983), (5, 7.1092e-6), (10, 1.2664e-11)];
    let ctx = PrecisionContext::new(16).unwrap();
    for (n, want) in expected {
        let r = exactness_check(&rule_f64(n, 1.0), 2 * n, &ctx).unwrap();
        assert!((r.relerr - want).abs() <= 1e-3 * want, "n={n}: {:e}", r.relerr);
    }
}

#[test]
fn eigenvector_and_kernel_weights_agree() {
    let ctx = PrecisionContext::new(30).unwrap();
    for z in [1.0, 10.0] {
        let t = truncated_gamma_recurrence(&MpFloat::from_f64(1.0, &ctx), &MpFloat::from_f64(z, &ctx), 20, &ctx).unwrap();
        let rule = gauss_rule(&t, &ctx).unwrap();
        let dual = weights_via_kernel(&t, &rule).unwrap();
        for (w, v) in rule.weights.iter().zip(&dual) {
            assert!(tgquad::precision::relative_deviation(v, w) <= 1e-8);
        }
    }
}

#[test]
fn weights_sum_to_the_mass() {
    let ctx = PrecisionContext::new(16).unwrap();
    for z in [0.25, 1.0, 4.0, 10.0] {
        let rule = rule_f64(12, z);
        let total: f64 = rule.weights.iter().sum();
        let mass = lower_incomplete_gamma(&2.0_f64, &z, &ctx).unwrap() / z.powi(2);
        assert!((total - mass).abs() <= 1e-12 * mass, "z={z}");
    }
}

#[test]
fn coefficients_approach_their_limits() {
    let ctx = PrecisionContext::new(40).unwrap();
    for z in [1.0, 30.0] {
        let t = truncated_gamma_recurrence(&MpFloat::from_f64(1.0, &ctx), &MpFloat::from_f64(z, &ctx), 200, &ctx).unwrap();
        assert!((t.a[199].to_f64() - 0.0625).abs() <= 1e-4, "z={z}");
        assert!((t.b[199].to_f64() - 0.5).abs() <= 1e-4, "z={z}");
    }
}

#[test]
fn runs_are_deterministic() {
    let render = || {
        let ctx = PrecisionContext::new(30).unwrap();
        let one = MpFloat::from_f64(1.0, &ctx);
        let t = truncated_gamma_recurrence(&one, &MpFloat::from_f64(7.5, &ctx), 24, &ctx).unwrap();
        let rule = gauss_rule(&t, &ctx).unwrap();
        t.b.iter()
            .chain(&t.a)
            .chain(&rule.nodes)
            .chain(&rule.weights)
            .map(|x| round_to_digits(x, 30))
            .collect::<Vec<_>>()
    };
    assert_eq!(render(), render());
}

#[test]
fn more_digits_never_move_further_from_the_reference() {
    let reference = {
        let ctx = PrecisionContext::new(100).unwrap();
        truncated_gamma_recurrence(&MpFloat::from_f64(1.0, &ctx), &MpFloat::from_f64(15.0, &ctx), 30, &ctx).unwrap()
    };
    let dev = |digits: u32| -> Vec<f64> {
        let ctx = PrecisionContext::new(digits).unwrap();
        tgquad::with_real!(ctx, R => {
            let t = truncated_gamma_recurrence(&R::from_f64(1.0, &ctx), &R::from_f64(15.0, &ctx), 30, &ctx).unwrap();
            t.b.iter().zip(&reference.b).chain(t.a.iter().zip(&reference.a))
                .map(|(x, r)| tgquad::precision::relative_deviation(x, r))
                .collect::<Vec<_>>()
        })
    };
    let (d16, d20, d30) = (dev(16), dev(20), dev(30));
    for i in 0..d16.len() {
        assert!(d20[i] <= d16[i] && d30[i] <= d20[i], "entry {i}: {} {} {}", d16[i], d20[i], d30[i]);
    }
}

proptest! {
    #[test]
    fn pochhammer_satisfies_its_recurrence(a in 0.1f64..20.0, k in 0usize..30) {
        let ctx = PrecisionContext::new(16).unwrap();
        let lhs = pochhammer(&a, k + 1, &ctx);
        let rhs = pochhammer(&a, k, &ctx) * (a + k as f64);
        prop_assert!((lhs - rhs).abs() <= 1e-13 * rhs.abs());
    }

    #[test]
    fn rounded_strings_parse_back_within_half_an_ulp(x in -1e12f64..1e12, sig in 1usize..17) {
        let s = round_to_digits(&x, sig);
        let back: f64 = s.parse().unwrap();
        let half_unit = if x == 0.0 { 0.0 } else { 0.5 * 10f64.powi(x.abs().log10().floor() as i32 + 1 - sig as i32) };
        prop_assert!((back - x).abs() <= half_unit + 2.0 * f64::EPSILON * x.abs(), "{x} -> {s}");
    }

    #[test]
    fn weights_stay_positive_and_nodes_inside(z in 0.0f64..20.0, n in 1usize..25) {
        let ctx = PrecisionContext::new(16).unwrap();
        let t = truncated_gamma_recurrence(&0.5_f64, &z, n, &ctx).unwrap();
        let rule = gauss_rule(&t, &ctx).unwrap();
        prop_assert!(rule.weights.iter().all(|w| *w > 0.0));
        prop_assert!(rule.nodes.windows(2).all(|p| p[0] < p[1]));
        prop_assert!(rule.nodes[0] > 0.0 && rule.nodes[n - 1] < 1.0);
    }
}
