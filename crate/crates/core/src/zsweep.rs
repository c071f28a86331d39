//! Recurrence coefficients as functions of `z`.
//!
//! [`build_surface`] tabulates `b_k(z)` and `a_k(z)` on a grid and fits a
//! not-a-knot cubic spline through every coefficient curve.
//! [`max_relative_error`] measures how many digits a working precision loses
//! by comparing it with a run of the same algorithm at a higher precision.

use rayon::prelude::*;

use crate::chebyshev::truncated_gamma_recurrence;
use crate::error::{Error, Result};
use crate::precision::{relative_deviation, MpFloat, PrecisionContext, Real};
use crate::recurrence::RecurrenceTable;

/// Picks `f64` or [`MpFloat`] from a context and binds it to a type name.
///
/// ```
/// use tgquad::{chebyshev::truncated_gamma_recurrence, with_real, PrecisionContext, Real};
///
/// let ctx = PrecisionContext::new(30)?;
/// let b0 = with_real!(ctx, R => {
///     let t = truncated_gamma_recurrence(&R::from_int(1, &ctx), &R::from_int(1, &ctx), 2, &ctx)?;
///     t.b[0].to_f64()
/// });
/// assert!((b0 - 0.607788808822667).abs() < 1e-15);
/// # Ok::<(), tgquad::Error>(())
/// ```
#[macro_export]
macro_rules! with_real {
    ($ctx:expr, $r:ident => $body:expr) => {
        if $ctx.is_native() {
            type $r = f64;
            $body
        } else {
            type $r = $crate::MpFloat;
            $body
        }
    };
}

/// Not-a-knot cubic spline through `(xs[i], ys[i])`.
///
/// The third derivative is continuous across the second and the penultimate
/// knot, so four or more samples of a global cubic are reproduced exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    // per interval: y'(x_i), y''(x_i)/2, y'''/6
    coeffs: Vec<[f64; 3]>,
}

impl CubicSpline {
    pub fn not_a_knot(xs: &[f64], ys: &[f64]) -> Result<Self> {
        let n = xs.len();
        if n < 4 {
            return Err(Error::domain(
                "cubic_spline",
                format!("not-a-knot needs at least 4 points, got {n}"),
            ));
        }
        if ys.len() != n {
            return Err(Error::domain("cubic_spline", format!("{n} abscissae but {} ordinates", ys.len())));
        }
        if xs.iter().chain(ys).any(|v| !v.is_finite()) {
            return Err(Error::domain("cubic_spline", "samples must be finite"));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain(
                "cubic_spline",
                "abscissae must be strictly ascending without duplicates",
            ));
        }

        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let slope: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();

        // Second derivatives M_1..M_{n-2}; M_0 and M_{n-1} are eliminated
        // through the not-a-knot conditions.
        let m = n - 2;
        let mut sub = vec![0.0; m];
        let mut diag = vec![0.0; m];
        let mut sup = vec![0.0; m];
        let mut rhs = vec![0.0; m];
        for r in 0..m {
            let i = r + 1;
            sub[r] = h[i - 1];
            diag[r] = 2.0 * (h[i - 1] + h[i]);
            sup[r] = h[i];
            rhs[r] = 6.0 * (slope[i] - slope[i - 1]);
        }
        // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1
        let (h0, h1) = (h[0], h[1]);
        diag[0] += h0 * (h0 + h1) / h1;
        sup[0] -= h0 * h0 / h1;
        // M_{n-1} = ((h_{n-3} + h_{n-2}) M_{n-2} - h_{n-2} M_{n-3}) / h_{n-3}
        let (hp, hl) = (h[n - 3], h[n - 2]);
        diag[m - 1] += hl * (hp + hl) / hp;
        sub[m - 1] -= hl * hl / hp;

        let inner = if m == 2 && n == 4 {
            // rows already coupled through both end conditions
            solve_dense2(&diag, &sub, &sup, &rhs)
        } else {
            solve_tridiagonal(&sub, &diag, &sup, &rhs)
        };

        let mut second = Vec::with_capacity(n);
        second.push(((h0 + h1) * inner[0] - h0 * inner[1]) / h1);
        second.extend_from_slice(&inner);
        second.push(((hp + hl) * inner[m - 1] - hl * inner[m - 2]) / hp);

        let coeffs = (0..n - 1)
            .map(|i| {
                let c1 = slope[i] - h[i] * (2.0 * second[i] + second[i + 1]) / 6.0;
                let c2 = second[i] / 2.0;
                let c3 = (second[i + 1] - second[i]) / (6.0 * h[i]);
                [c1, c2, c3]
            })
            .collect();
        Ok(Self {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            coeffs,
        })
    }

    /// Evaluates the spline; outside the knot range the end pieces are
    /// extended.
    pub fn eval(&self, q: f64) -> f64 {
        let last = self.xs.len() - 1;
        if q == self.xs[last] {
            return self.ys[last];
        }
        let i = self.xs.partition_point(|&x| x <= q).clamp(1, last) - 1;
        let dx = q - self.xs[i];
        let [c1, c2, c3] = self.coeffs[i];
        self.ys[i] + dx * (c1 + dx * (c2 + dx * c3))
    }

    pub fn knots(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.ys
    }
}

/// Convenience form of [`CubicSpline::not_a_knot`].
pub fn cubic_spline_not_a_knot(xs: &[f64], ys: &[f64]) -> Result<CubicSpline> {
    CubicSpline::not_a_knot(xs, ys)
}

fn solve_dense2(diag: &[f64], sub: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    // [diag0 sup0; sub1 diag1]
    let det = diag[0] * diag[1] - sup[0] * sub[1];
    vec![
        (rhs[0] * diag[1] - sup[0] * rhs[1]) / det,
        (diag[0] * rhs[1] - sub[1] * rhs[0]) / det,
    ]
}

fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i] * c[i - 1];
        c[i] = sup[i] / denom;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// `points` equidistant values from `0` to `t_max` inclusive.
pub fn linspace_grid(t_max: f64, points: usize) -> Result<Vec<f64>> {
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::domain("grid", format!("T must be positive, got {t_max}")));
    }
    if points < 4 {
        return Err(Error::domain("grid", format!("at least 4 grid points are required, got {points}")));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|j| if j == points - 1 { t_max } else { j as f64 * t_max / last })
        .collect())
}

/// Grid `0, step, 2 step, ...` with `points` entries.
pub fn stepped_grid(step: f64, points: usize) -> Result<Vec<f64>> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::domain("grid", format!("step must be positive, got {step}")));
    }
    if points < 4 {
        return Err(Error::domain("grid", format!("at least 4 grid points are required, got {points}")));
    }
    Ok((0..points).map(|j| j as f64 * step).collect())
}

/// Recurrence tables on a `z` grid plus one spline per coefficient curve.
#[derive(Debug, Clone)]
pub struct CoefficientSurface<R> {
    pub alpha: f64,
    pub grid: Vec<f64>,
    pub tables: Vec<RecurrenceTable<R>>,
    b_splines: Vec<CubicSpline>,
    a_splines: Vec<CubicSpline>,
}

impl<R: Real> CoefficientSurface<R> {
    /// Coefficient pairs per table.
    pub fn n(&self) -> usize {
        self.b_splines.len()
    }

    /// Spline of `b_k(·)`, `0 ≤ k < N`.
    pub fn b_spline(&self, k: usize) -> Option<&CubicSpline> {
        self.b_splines.get(k)
    }

    /// Spline of `a_k(·)`, `1 ≤ k < N`.
    pub fn a_spline(&self, k: usize) -> Option<&CubicSpline> {
        k.checked_sub(1).and_then(|i| self.a_splines.get(i))
    }
}

/// Tabulates the coefficients on `points` equidistant values of `z` in
/// `[0, t_max]` and interpolates each curve.
pub fn build_surface<R: Real>(alpha: f64, t_max: f64, points: usize, n: usize, ctx: &PrecisionContext) -> Result<CoefficientSurface<R>> {
    build_surface_on_grid(alpha, linspace_grid(t_max, points)?, n, ctx)
}

/// [`build_surface`] on an arbitrary ascending grid of at least 4 points.
///
/// Grid points are computed in parallel; tables are stored in grid order.
pub fn build_surface_on_grid<R: Real>(alpha: f64, grid: Vec<f64>, n: usize, ctx: &PrecisionContext) -> Result<CoefficientSurface<R>> {
    if n == 0 {
        return Err(Error::domain("build_surface", "n must be at least 1"));
    }
    if grid.len() < 4 || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain(
            "build_surface",
            "grid must be strictly ascending with at least 4 points",
        ));
    }
    let alpha_r = R::from_f64(alpha, ctx);
    let tables = grid
        .par_iter()
        .map(|&z| {
            truncated_gamma_recurrence(&alpha_r, &R::from_f64(z, ctx), n, ctx).map_err(|e| Error::AtGridPoint { z, source: Box::new(e) })
        })
        .collect::<Result<Vec<_>>>()?;

    let curve = |pick: &dyn Fn(&RecurrenceTable<R>) -> f64| -> Vec<f64> { tables.iter().map(pick).collect() };
    let b_splines = (0..n)
        .map(|k| CubicSpline::not_a_knot(&grid, &curve(&|t| t.b[k].to_f64())))
        .collect::<Result<Vec<_>>>()?;
    let a_splines = (1..n)
        .map(|k| CubicSpline::not_a_knot(&grid, &curve(&|t| t.a[k].to_f64())))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoefficientSurface {
        alpha,
        grid,
        tables,
        b_splines,
        a_splines,
    })
}

/// Which coefficient sequence an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    B,
    A,
}

impl CoefficientKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoefficientKind::B => "b",
            CoefficientKind::A => "a",
        }
    }
}

/// Largest relative deviation of a working-precision table from a reference.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub alpha: f64,
    pub z: f64,
    pub n: usize,
    pub digits: u32,
    pub ref_digits: u32,
    pub max_rel_err: f64,
    pub argmax: (CoefficientKind, usize),
}

/// `max_k max(|a_k - ref a_k| / |ref a_k|, |b_k - ref b_k| / |ref b_k|)` over
/// `k < N`, with the first index attaining it.
pub fn compare_tables<A: Real, B: Real>(work: &RecurrenceTable<A>, reference: &RecurrenceTable<B>) -> (f64, (CoefficientKind, usize)) {
    let mut worst = (0.0_f64, (CoefficientKind::B, 0));
    for k in 0..work.len().min(reference.len()) {
        for (kind, x, r) in [
            (CoefficientKind::B, &work.b[k], &reference.b[k]),
            (CoefficientKind::A, &work.a[k], &reference.a[k]),
        ] {
            let e = relative_deviation(x, r);
            if e > worst.0 {
                worst = (e, (kind, k));
            }
        }
    }
    worst
}

/// Runs the pipeline at `digits` and at `ref_digits` and reports the
/// maximal relative error of the former, treating the latter as exact.
///
/// ```
/// use tgquad::zsweep::max_relative_error;
///
/// let report = max_relative_error(1.0, 5.0, 20, 16, 40)?;
/// assert!(report.max_rel_err < 1e-14);
/// # Ok::<(), tgquad::Error>(())
/// ```
pub fn max_relative_error(alpha: f64, z: f64, n: usize, digits: u32, ref_digits: u32) -> Result<ErrorReport> {
    if ref_digits < digits {
        return Err(Error::domain(
            "max_relative_error",
            format!("reference digits {ref_digits} below working digits {digits}"),
        ));
    }
    let ctx = PrecisionContext::new(digits)?;
    let ref_ctx = PrecisionContext::new(ref_digits)?;
    let reference = truncated_gamma_recurrence(&MpFloat::from_f64(alpha, &ref_ctx), &MpFloat::from_f64(z, &ref_ctx), n, &ref_ctx)?;
    let (max_rel_err, argmax) = with_real!(ctx, R => {
        let work = truncated_gamma_recurrence(&R::from_f64(alpha, &ctx), &R::from_f64(z, &ctx), n, &ctx)?;
        compare_tables(&work, &reference)
    });
    Ok(ErrorReport {
        alpha,
        z,
        n,
        digits,
        ref_digits,
        max_rel_err,
        argmax,
    })
}
