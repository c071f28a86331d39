//! Modified moments of the truncated Gamma weight and the modified Chebyshev
//! algorithm.
//!
//! The moments are taken against the monic shifted Jacobi polynomials
//! `π_n = P̃_n^(0,α)`, orthogonal for `x^α` on `[0, 1]`:
//!
//! ```text
//! m_n(α, z) = ∫_0^1 π_n(x) x^α e^(-zx) dx
//!           = (-1)^n n! / ((α+n+1)_n² (α+2n+1)) z^n e^(-z) ₁F₁(n+1; α+2n+2; z),  n ≥ 1,
//! m_0(α, z) = z^(-α-1) γ(α+1, z)   (1/(α+1) at z = 0).
//! ```
//!
//! From `2N` moments and `2N - 1` auxiliary coefficients the algorithm
//! recovers `N` recurrence coefficients of the target weight through the
//! mixed moments `σ_{k,ℓ} = ⟨u, P_k π_ℓ⟩`.

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};
use crate::recurrence::{shifted_jacobi_support, RecurrenceTable, SupportBasis};
use crate::specialfn::{hyp1f1, truncated_gamma_moment};

/// Modified moments `m_0 .. m_{count-1}` for `x^α e^(-zx)` against the shifted
/// Jacobi basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ModifiedMomentVector<R> {
    pub alpha: R,
    pub z: R,
    pub m: Vec<R>,
    pub digits: u32,
    /// Largest number of series terms used for any single moment.
    pub max_series_terms: usize,
}

impl<R> ModifiedMomentVector<R> {
    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }
}

pub(crate) fn check_weight_params<R: Real>(alpha: &R, z: &R, ctx: &PrecisionContext) -> Result<()> {
    if !alpha.is_finite() || alpha.clone() <= R::from_int(-1, ctx) {
        return Err(Error::domain("weight", format!("alpha must exceed -1, got {alpha}")));
    }
    if z.is_sign_negative() || !z.is_finite() {
        return Err(Error::domain("weight", format!("z must be nonnegative, got {z}")));
    }
    Ok(())
}

/// Computes `count` modified moments from their closed form.
///
/// The prefactor `n! z^n / (α+n+1)_n²` is accumulated as the product of the
/// `n` factors `j z / (α+n+j)²`, which keeps every partial product within a
/// few orders of magnitude of the final value.
pub fn modified_moments<R: Real>(alpha: &R, z: &R, count: usize, ctx: &PrecisionContext) -> Result<ModifiedMomentVector<R>> {
    check_weight_params(alpha, z, ctx)?;
    if count == 0 {
        return Err(Error::domain("modified_moments", "count must be at least 1"));
    }
    let int = |v: i64| R::from_int(v, ctx);
    let one = int(1);
    let mut m = Vec::with_capacity(count);
    m.push(truncated_gamma_moment(&(alpha.clone() + &one), z, ctx)?);
    let mut max_series_terms = 0;

    if z.is_zero() {
        m.extend((1..count).map(|_| int(0)));
        return Ok(ModifiedMomentVector {
            alpha: alpha.clone(),
            z: z.clone(),
            m,
            digits: ctx.digits(),
            max_series_terms,
        });
    }

    let exp_minus_z = (-z.clone()).exp();
    for n in 1..count {
        let ni = n as i64;
        let mut prefactor = one.clone();
        for j in 1..=ni {
            let d = alpha.clone() + int(ni + j);
            prefactor *= int(j) * z / (d.clone() * &d);
        }
        prefactor /= alpha.clone() + int(2 * ni + 1);
        let series = hyp1f1(&int(ni + 1), &(alpha.clone() + int(2 * ni + 2)), z, ctx)?;
        max_series_terms = max_series_terms.max(series.terms_used);
        let mut value = prefactor * &exp_minus_z * series.value;
        let subnormal = ctx.is_native() && value.abs() < R::from_f64(f64::MIN_POSITIVE, ctx);
        if value.is_zero() || !value.is_finite() || subnormal {
            return Err(Error::MomentUnderflow { index: n });
        }
        if n % 2 == 1 {
            value = -value;
        }
        m.push(value);
    }
    Ok(ModifiedMomentVector {
        alpha: alpha.clone(),
        z: z.clone(),
        m,
        digits: ctx.digits(),
        max_series_terms,
    })
}

/// Rows `σ_{k-2,·}` and `σ_{k-1,·}` of the mixed-moment sheet, indexed by `ℓ`.
struct SigmaSheet<R> {
    older: Vec<R>,
    newer: Vec<R>,
}

/// Runs the modified Chebyshev algorithm for `n` recurrence coefficients.
///
/// `mom` needs at least `2n` entries and `basis` at least `2n - 1`. The
/// returned table stores `a_0 = m_0`; inside the recursion `a_0` only ever
/// multiplies `σ_{-1,ℓ} = 0`.
///
/// Fails with [`Error::Breakdown`] at the first `k` whose `σ_{k,k}` is not
/// positive.
pub fn modified_chebyshev<R: Real>(
    mom: &ModifiedMomentVector<R>,
    basis: &SupportBasis<R>,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<RecurrenceTable<R>> {
    if n == 0 {
        return Err(Error::domain("modified_chebyshev", "n must be at least 1"));
    }
    if mom.len() < 2 * n {
        return Err(Error::domain(
            "modified_chebyshev",
            format!("{} moments supplied, {} required", mom.len(), 2 * n),
        ));
    }
    if basis.len() < 2 * n - 1 {
        return Err(Error::domain(
            "modified_chebyshev",
            format!("{} basis coefficients supplied, {} required", basis.len(), 2 * n - 1),
        ));
    }
    let width = 2 * n;
    let zero = R::from_int(0, ctx);
    let m = &mom.m[..width];
    if !m[0].is_positive() {
        return Err(Error::Breakdown {
            k: 0,
            digits: ctx.digits(),
        });
    }

    let mut b = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n);
    b.push(basis.b[0].clone() + m[1].clone() / &m[0]);
    a.push(m[0].clone());

    let mut sheet = SigmaSheet {
        older: vec![zero.clone(); width],
        newer: m.to_vec(),
    };

    for k in 1..n {
        let mut row = vec![zero.clone(); width];
        // σ_{k,ℓ} for ℓ = k .. 2n-k-1
        for l in k..(width - k) {
            let mut s =
                sheet.newer[l + 1].clone() - (b[k - 1].clone() - &basis.b[l]) * &sheet.newer[l] + basis.a[l].clone() * &sheet.newer[l - 1];
            if k >= 2 {
                s -= a[k - 1].clone() * &sheet.older[l];
            }
            row[l] = s;
        }
        if !row[k].is_positive() {
            return Err(Error::Breakdown { k, digits: ctx.digits() });
        }
        let bk = basis.b[k].clone() + row[k + 1].clone() / &row[k] - sheet.newer[k].clone() / &sheet.newer[k - 1];
        let ak = row[k].clone() / &sheet.newer[k - 1];
        b.push(bk);
        a.push(ak);
        sheet.older = std::mem::replace(&mut sheet.newer, row);
    }

    RecurrenceTable::new(mom.alpha.clone(), mom.z.clone(), ctx.digits(), b, a)
}

/// Recurrence table of `x^α e^(-zx)` on `[0, 1]` with `n` coefficient pairs:
/// moments, shifted Jacobi basis and modified Chebyshev in one call.
///
/// ```
/// use tgquad::{chebyshev::truncated_gamma_recurrence, PrecisionContext};
///
/// let ctx = PrecisionContext::new(16)?;
/// let table = truncated_gamma_recurrence(&1.0_f64, &1.0, 4, &ctx)?;
/// assert!((table.b[0] - 0.607788808822667).abs() < 1e-14);
/// assert!((table.a[1] - 0.06174799916059207).abs() < 1e-15);
/// # Ok::<(), tgquad::Error>(())
/// ```
pub fn truncated_gamma_recurrence<R: Real>(alpha: &R, z: &R, n: usize, ctx: &PrecisionContext) -> Result<RecurrenceTable<R>> {
    if n == 0 {
        return Err(Error::domain("truncated_gamma_recurrence", "n must be at least 1"));
    }
    let mom = modified_moments(alpha, z, 2 * n, ctx)?;
    let basis = shifted_jacobi_support(alpha, 2 * n - 1, ctx)?;
    modified_chebyshev(&mom, &basis, n, ctx)
}
