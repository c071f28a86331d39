//! Three-term recurrences of monic orthogonal polynomials.
//!
//! A family `P_0 = 1, P_1, P_2, ...` of monic orthogonal polynomials satisfies
//!
//! ```text
//! x P_n(x) = P_{n+1}(x) + b_n P_n(x) + a_n P_{n-1}(x),   P_{-1} = 0.
//! ```
//!
//! Tables store `b_0..b_{N-1}` and `a_0..a_{N-1}`, where `a_0` holds the total
//! mass `m_0 = ⟨u, 1⟩` of the functional. With that convention the squared
//! norms telescope: `⟨u, P_n²⟩ = a_0 a_1 ... a_n`.

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

/// Recurrence coefficients `b_k`, `a_k` for `k < N` of the weight
/// `x^alpha e^(-z x)` on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable<R> {
    pub alpha: R,
    pub z: R,
    pub digits: u32,
    /// `b_0 .. b_{N-1}`
    pub b: Vec<R>,
    /// `a_0 .. a_{N-1}`; `a_0` is the mass `m_0`.
    pub a: Vec<R>,
}

impl<R: Real> RecurrenceTable<R> {
    pub fn new(alpha: R, z: R, digits: u32, b: Vec<R>, a: Vec<R>) -> Result<Self> {
        if b.len() != a.len() || b.is_empty() {
            return Err(Error::domain(
                "recurrence",
                format!(
                    "coefficient arrays must be nonempty and of equal length, got {} and {}",
                    b.len(),
                    a.len()
                ),
            ));
        }
        Ok(Self { alpha, z, digits, b, a })
    }

    /// Number of stored coefficient pairs.
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// Total mass `m_0`.
    pub fn mass(&self) -> &R {
        &self.a[0]
    }

    /// Squared norms `⟨u, P_k²⟩ = a_0 a_1 ... a_k` for `k < N`.
    pub fn norms(&self) -> Vec<R> {
        let mut out = Vec::with_capacity(self.len());
        let mut acc = self.a[0].clone();
        out.push(acc.clone());
        for a in &self.a[1..] {
            acc *= a;
            out.push(acc.clone());
        }
        out
    }

    /// Values `P_0(x), ..., P_n(x)` by the forward recurrence.
    pub fn eval_all(&self, n: usize, x: &R) -> Result<Vec<R>> {
        if n > self.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                limit: self.len(),
            });
        }
        let one = self.a[0].clone() / &self.a[0];
        let mut values = Vec::with_capacity(n + 1);
        values.push(one.clone());
        if n == 0 {
            return Ok(values);
        }
        values.push(x.clone() - &self.b[0]);
        for k in 1..n {
            let next = (x.clone() - &self.b[k]) * &values[k] - self.a[k].clone() * &values[k - 1];
            values.push(next);
        }
        Ok(values)
    }

    /// Degree-`n` monic orthogonal polynomial at `x`, for `0 ≤ n ≤ N`.
    pub fn eval_monic(&self, n: usize, x: &R) -> Result<R> {
        let mut values = self.eval_all(n, x)?;
        Ok(values.pop().expect("eval_all returns n + 1 values"))
    }

    /// Christoffel–Darboux kernel `K_n(x, y) = Σ_{k≤n} P_k(x) P_k(y) / ⟨u, P_k²⟩`
    /// for `0 ≤ n < N`, summed in ascending `k` with compensation.
    pub fn cd_kernel(&self, n: usize, x: &R, y: &R) -> Result<R> {
        if n >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                limit: self.len() - 1,
            });
        }
        let px = self.eval_all(n, x)?;
        let py = self.eval_all(n, y)?;
        let norms = self.norms();
        let terms = (0..=n).map(|k| px[k].clone() * &py[k] / &norms[k]);
        Ok(neumaier_sum(terms))
    }
}

/// Compensated (Neumaier) summation.
pub(crate) fn neumaier_sum<R: Real>(mut terms: impl Iterator<Item = R>) -> R {
    let Some(first) = terms.next() else {
        panic!("neumaier_sum needs at least one term");
    };
    let mut sum = first;
    let mut comp = sum.clone() - &sum;
    for t in terms {
        let next = sum.clone() + &t;
        if sum.abs() >= t.abs() {
            comp += (sum.clone() - &next) + &t;
        } else {
            comp += (t.clone() - &next) + &sum;
        }
        sum = next;
    }
    sum + comp
}

/// Recurrence of a known auxiliary family used as the modified-moment basis:
/// `𝔟_k`, `𝔞_k` for `k < count`, with `𝔞_0` its total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportBasis<R> {
    pub alpha: R,
    pub b: Vec<R>,
    pub a: Vec<R>,
}

impl<R: Real> SupportBasis<R> {
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }
}

/// Monic Jacobi recurrence coefficients `(b_n, a_n)` on `[-1, 1]` for the
/// weight `(1-x)^alpha_j (1+x)^beta_j`.
///
/// `a_0` is the mass `2^(α+β+1) Γ(α+1) Γ(β+1) / Γ(α+β+2)`. The `n = 0` and
/// `n = 1` entries use the cancelled forms of the general formulas, which stay
/// finite when `α + β ∈ {0, -1}`; in particular `α = -β` gives `b_0 = β`.
///
/// ```
/// use tgquad::{recurrence::jacobi_coeffs, PrecisionContext};
///
/// let ctx = PrecisionContext::default();
/// let (b0, _) = jacobi_coeffs(&0.0_f64, &1.0, 0, &ctx)?;
/// let (_, a1) = jacobi_coeffs(&0.0_f64, &1.0, 1, &ctx)?;
/// assert!((b0 - 1.0 / 3.0).abs() < 1e-16);
/// assert!((a1 - 2.0 / 9.0).abs() < 1e-16);
/// # Ok::<(), tgquad::Error>(())
/// ```
pub fn jacobi_coeffs<R: Real>(alpha_j: &R, beta_j: &R, n: usize, ctx: &PrecisionContext) -> Result<(R, R)> {
    let minus_one = R::from_int(-1, ctx);
    if !alpha_j.is_finite() || !beta_j.is_finite() || alpha_j.clone() <= minus_one || beta_j.clone() <= minus_one {
        return Err(Error::domain(
            "jacobi_coeffs",
            format!("parameters must exceed -1, got ({alpha_j}, {beta_j})"),
        ));
    }
    let int = |v: i64| R::from_int(v, ctx);
    let (al, be) = (alpha_j.clone(), beta_j.clone());
    let ab = al.clone() + &be;
    let nn = int(n as i64);
    let two_n_ab = int(2 * n as i64) + &ab;

    let b = if n == 0 {
        (be.clone() - &al) / (ab.clone() + int(2))
    } else {
        (be.clone() * &be - al.clone() * &al) / ((two_n_ab.clone() + int(2)) * &two_n_ab)
    };

    let a = match n {
        0 => {
            let one = int(1);
            int(2).pow(&(ab.clone() + &one)) * (al.clone() + &one).gamma() * (be.clone() + &one).gamma() / (ab.clone() + int(2)).gamma()
        }
        1 => {
            let s = ab.clone() + int(2);
            int(4) * (al.clone() + int(1)) * (be.clone() + int(1)) / (s.clone() * &s * (ab.clone() + int(3)))
        }
        _ => {
            int(4) * (nn.clone() + &be) * (nn.clone() + &ab) * (nn.clone() + &al) * &nn
                / ((two_n_ab.clone() - int(1)) * &two_n_ab * &two_n_ab * (two_n_ab.clone() + int(1)))
        }
    };
    Ok((b, a))
}

/// Recurrence of the monic shifted Jacobi polynomials `2^-n P_n^(0,α)(2x-1)`,
/// orthogonal for `x^α` on `[0, 1]`: `𝔟_k = (b_k + 1)/2`, `𝔞_k = a_k / 4`,
/// `𝔞_0 = 1/(α+1)`.
pub fn shifted_jacobi_support<R: Real>(alpha: &R, count: usize, ctx: &PrecisionContext) -> Result<SupportBasis<R>> {
    if count == 0 {
        return Err(Error::domain("shifted_jacobi_support", "count must be at least 1"));
    }
    let zero = R::from_int(0, ctx);
    let one = R::from_int(1, ctx);
    let two = R::from_int(2, ctx);
    let four = R::from_int(4, ctx);
    let mut b = Vec::with_capacity(count);
    let mut a = Vec::with_capacity(count);
    for k in 0..count {
        let (bj, aj) = jacobi_coeffs(&zero, alpha, k, ctx)?;
        b.push((bj + &one) / &two);
        a.push(if k == 0 { one.clone() / (alpha.clone() + &one) } else { aj / &four });
    }
    Ok(SupportBasis {
        alpha: alpha.clone(),
        b,
        a,
    })
}
