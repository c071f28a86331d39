#[path = "support/oracle.rs"]
mod oracle;

use rug::ops::Pow;
use rug::Float;
use tgquad::chebyshev::{modified_moments, truncated_gamma_recurrence};
use tgquad::quadrature::monomial_moment;
use tgquad::{MpFloat, PrecisionContext, Real};

const ALPHAS: [f64; 4] = [-0.5, 0.0, 1.0, 2.5];

fn mp(x: f64, ctx: &PrecisionContext) -> MpFloat {
    MpFloat::from_f64(x, ctx)
}

#[test]
fn modified_moments_match_direct_integrals() {
    let ctx = PrecisionContext::new(40).unwrap();
    for alpha in ALPHAS {
        for z in [0.5, 1.0, 10.0] {
            let m = modified_moments(&mp(alpha, &ctx), &mp(z, &ctx), 9, &ctx).unwrap();
            for (n, mn) in m.m.iter().enumerate() {
                let want = oracle::integrate(alpha, z, 60, |x| oracle::monic_shifted_jacobi(alpha, n, x));
                let e = oracle::rel(mn.as_float(), &want);
                assert!(e <= 1e-30, "alpha={alpha} z={z} n={n}: {e:e}");
            }
        }
    }
}

#[test]
fn power_moments_match_direct_integrals() {
    let ctx = PrecisionContext::new(40).unwrap();
    for alpha in ALPHAS {
        for k in [0usize, 1, 4, 9] {
            let got = monomial_moment(&mp(alpha, &ctx), &mp(3.0, &ctx), k, &ctx).unwrap();
            let want = oracle::integrate(alpha, 3.0, 50, |x| x.clone().pow(k as u32));
            assert!(oracle::rel(got.as_float(), &want) <= 1e-35, "alpha={alpha} k={k}");
        }
    }
}

#[test]
fn recurrence_matches_stieltjes_procedure() {
    let ctx = PrecisionContext::new(50).unwrap();
    for alpha in ALPHAS {
        for z in [0.0, 0.5, 1.0, 10.0] {
            let table = truncated_gamma_recurrence(&mp(alpha, &ctx), &mp(z, &ctx), 8, &ctx).unwrap();
            let (b, a) = oracle::stieltjes(alpha, z, 8, 50);
            for k in 0..8 {
                let eb = oracle::rel(table.b[k].as_float(), &b[k]);
                let ea = oracle::rel(table.a[k].as_float(), &a[k]);
                assert!(eb <= 1e-40 && ea <= 1e-40, "alpha={alpha} z={z} k={k}: {eb:e} {ea:e}");
            }
        }
    }
}

#[test]
fn native_run_tracks_stieltjes_procedure() {
    let ctx = PrecisionContext::new(16).unwrap();
    let table = truncated_gamma_recurrence(&1.0_f64, &1.0, 8, &ctx).unwrap();
    let (b, a) = oracle::stieltjes(1.0, 1.0, 8, 30);
    for k in 0..8 {
        assert!(oracle::rel(&Float::with_val(53, table.b[k]), &b[k]) <= 1e-14);
        assert!(oracle::rel(&Float::with_val(53, table.a[k]), &a[k]) <= 1e-14);
    }
}
