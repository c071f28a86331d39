//! Special functions behind the modified moments: Pochhammer symbol, Gamma,
//! lower incomplete gamma and Kummer's confluent hypergeometric function.
//!
//! All series are summed term by term with a running ratio and truncated once
//! three consecutive terms fall below the context's series tolerance relative
//! to the partial sum. The number of terms is capped at
//! `10 * digits + 200 * (1 + z)`.

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

/// Value of a truncated series together with its truncation metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult<R> {
    pub value: R,
    pub terms_used: usize,
    pub converged: bool,
}

/// Term cap for a series with argument `z` under `ctx`.
pub fn max_terms(z: f64, ctx: &PrecisionContext) -> usize {
    10 * ctx.digits() as usize + (200.0 * (1.0 + z.abs())).ceil() as usize
}

/// Sums `first + first*r_0 + first*r_0*r_1 + ...` where `next_ratio(k)` maps
/// term `k` to term `k + 1`.
fn sum_series<R: Real>(first: R, mut next_ratio: impl FnMut(usize) -> R, cap: usize, ctx: &PrecisionContext) -> SeriesResult<R> {
    let tol: R = ctx.series_tolerance();
    let mut sum = first.clone();
    let mut term = first;
    let mut small_run = 0;
    let mut k = 0;
    while k + 1 < cap {
        term *= next_ratio(k);
        sum += &term;
        k += 1;
        if term.abs() <= tol.clone() * sum.abs() {
            small_run += 1;
            if small_run == 3 {
                return SeriesResult {
                    value: sum,
                    terms_used: k + 1,
                    converged: true,
                };
            }
        } else {
            small_run = 0;
        }
    }
    SeriesResult {
        value: sum,
        terms_used: k + 1,
        converged: false,
    }
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer<R: Real>(a: &R, k: usize, ctx: &PrecisionContext) -> R {
    let mut acc = R::from_int(1, ctx);
    let mut factor = a.clone();
    let one = R::from_int(1, ctx);
    for _ in 0..k {
        acc *= &factor;
        factor += &one;
    }
    acc
}

/// `Γ(a)` for `a > 0`.
pub fn gamma_fn<R: Real>(a: &R, ctx: &PrecisionContext) -> Result<R> {
    if !a.is_positive() {
        return Err(Error::domain("gamma", format!("argument must be positive, got {a}")));
    }
    let _ = ctx;
    Ok(a.gamma())
}

/// Series `Σ_{k≥0} z^k / (a)_{k+1}` shared by the incomplete gamma routines.
fn incomplete_gamma_series<R: Real>(a: &R, z: &R, ctx: &PrecisionContext) -> Result<SeriesResult<R>> {
    let one = R::from_int(1, ctx);
    let first = one.clone() / a;
    let cap = max_terms(z.to_f64(), ctx);
    let series = sum_series(first, |k| z.clone() / (a.clone() + R::from_int(k as i64 + 1, ctx)), cap, ctx);
    if !series.converged {
        return Err(Error::NonConvergence {
            series: "incomplete gamma",
            terms_used: series.terms_used,
        });
    }
    Ok(series)
}

fn check_incomplete_gamma_args<R: Real>(a: &R, z: &R) -> Result<()> {
    if !a.is_positive() {
        return Err(Error::domain(
            "lower_incomplete_gamma",
            format!("parameter a must be positive, got {a}"),
        ));
    }
    if z.is_sign_negative() || !z.is_finite() {
        return Err(Error::domain(
            "lower_incomplete_gamma",
            format!("argument z must be nonnegative, got {z}"),
        ));
    }
    Ok(())
}

/// Lower incomplete gamma function `γ(a, z) = ∫_0^z x^(a-1) e^(-x) dx`,
/// computed as `z^a e^(-z) Σ_{k≥0} z^k / (a)_{k+1}`.
///
/// ```
/// use tgquad::{specialfn::lower_incomplete_gamma, PrecisionContext};
///
/// let ctx = PrecisionContext::new(16)?;
/// let g = lower_incomplete_gamma(&2.0_f64, &1.0, &ctx)?;
/// assert!((g - (1.0 - 2.0 / std::f64::consts::E)).abs() < 1e-15);
/// # Ok::<(), tgquad::Error>(())
/// ```
pub fn lower_incomplete_gamma<R: Real>(a: &R, z: &R, ctx: &PrecisionContext) -> Result<R> {
    check_incomplete_gamma_args(a, z)?;
    if z.is_zero() {
        return Ok(R::from_int(0, ctx));
    }
    let series = incomplete_gamma_series(a, z, ctx)?;
    let mut scale = z.pow(a) * (-z.clone()).exp();
    if !scale.is_finite() || scale.is_zero() {
        scale = (a.clone() * z.ln() - z).exp();
    }
    Ok(scale * series.value)
}

/// Moment `∫_0^1 x^(a-1) e^(-zx) dx = z^(-a) γ(a, z)` of the rescaled
/// truncated Gamma weight, equal to `1/a` at `z = 0`.
///
/// Evaluated as `e^(-z) Σ_{k≥0} z^k / (a)_{k+1}`, which avoids forming
/// `z^a` and dividing it out again.
pub fn truncated_gamma_moment<R: Real>(a: &R, z: &R, ctx: &PrecisionContext) -> Result<R> {
    check_incomplete_gamma_args(a, z)?;
    if z.is_zero() {
        return Ok(R::from_int(1, ctx) / a);
    }
    let series = incomplete_gamma_series(a, z, ctx)?;
    Ok((-z.clone()).exp() * series.value)
}

/// Kummer's function `₁F₁(a; b; z) = Σ_{k≥0} (a)_k / (b)_k z^k / k!` for
/// `z ≥ 0`.
///
/// Returns [`Error::NonConvergence`] if the tail criterion is not met within
/// [`max_terms`] terms.
pub fn hyp1f1<R: Real>(a: &R, b: &R, z: &R, ctx: &PrecisionContext) -> Result<SeriesResult<R>> {
    if is_nonpositive_integer(b) {
        return Err(Error::domain(
            "hyp1f1",
            format!("lower parameter b = {b} is zero or a negative integer"),
        ));
    }
    if z.is_sign_negative() || !z.is_finite() {
        return Err(Error::domain("hyp1f1", format!("argument must be nonnegative, got {z}")));
    }
    let cap = max_terms(z.to_f64(), ctx);
    let series = sum_series(
        R::from_int(1, ctx),
        |k| {
            let kk = R::from_int(k as i64, ctx);
            (a.clone() + &kk) * z / ((b.clone() + &kk) * R::from_int(k as i64 + 1, ctx))
        },
        cap,
        ctx,
    );
    if !series.converged {
        return Err(Error::NonConvergence {
            series: "1F1",
            terms_used: series.terms_used,
        });
    }
    Ok(series)
}

fn is_nonpositive_integer<R: Real>(x: &R) -> bool {
    if !x.is_finite() || x.is_positive() {
        return false;
    }
    let v = x.to_float();
    v.is_integer()
}
