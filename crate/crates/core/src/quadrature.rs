//! Gauss rules from recurrence tables.
//!
//! The `N`-point rule has the zeros of `P_N` as nodes. They are the
//! eigenvalues of the symmetric Jacobi matrix with diagonal `b_0..b_{N-1}`
//! and off-diagonal `√a_1..√a_{N-1}`; the Christoffel numbers are
//! `m_0 v_{0,k}²` with `v_k` the unit eigenvectors. Only the first
//! components of the eigenvectors are ever formed.

use std::cmp::Ordering;

use crate::chebyshev::check_weight_params;
use crate::error::{Error, Result};
use crate::precision::{cmp_real, relative_deviation, PrecisionContext, Real};
use crate::recurrence::{neumaier_sum, RecurrenceTable};
use crate::specialfn::truncated_gamma_moment;

/// Symmetric tridiagonal matrix given by its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<R> {
    pub diag: Vec<R>,
    pub offdiag: Vec<R>,
}

impl<R> SymTridiagonal<R> {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }
}

/// Gauss rule for `x^alpha e^(-z x)` on `[0, 1]`: ascending nodes and
/// positive weights summing to `mass`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<R> {
    pub alpha: R,
    pub z: R,
    pub nodes: Vec<R>,
    pub weights: Vec<R>,
    pub mass: R,
    /// QL sweeps spent by the eigensolver.
    pub sweeps: usize,
}

impl<R: Real> QuadratureRule<R> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ_k A_k f(x_k)`.
    pub fn integrate(&self, mut f: impl FnMut(&R) -> R) -> R {
        neumaier_sum(self.nodes.iter().zip(&self.weights).map(|(x, w)| w.clone() * f(x)))
    }
}

/// Eigenvalues and squared-first-component weights of a symmetric
/// tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct NodesWeights<R> {
    pub nodes: Vec<R>,
    pub weights: Vec<R>,
    pub sweeps: usize,
}

/// Symmetrizes the Jacobi matrix of `table`: `diag = b`, `offdiag_k = √a_{k+1}`.
pub fn symmetrize<R: Real>(table: &RecurrenceTable<R>) -> Result<SymTridiagonal<R>> {
    let mut offdiag = Vec::with_capacity(table.len().saturating_sub(1));
    for (k, a) in table.a.iter().enumerate().skip(1) {
        if !a.is_positive() {
            return Err(Error::domain("symmetrize", format!("a_{k} = {a} is not positive")));
        }
        offdiag.push(a.sqrt());
    }
    Ok(SymTridiagonal {
        diag: table.b.clone(),
        offdiag,
    })
}

/// Implicit-shift QL (Golub–Welsch) on `t`, returning ascending eigenvalues and
/// `mass · v_{0,k}²`.
///
/// Deflation happens once `|e_i| ≤ u (|d_i| + |d_{i+1}|)` with `u` the unit
/// roundoff; each eigenvalue may take at most `50 · digits` sweeps.
pub fn eigen_nodes_weights<R: Real>(t: &SymTridiagonal<R>, mass: &R, ctx: &PrecisionContext) -> Result<NodesWeights<R>> {
    let n = t.len();
    if n == 0 || t.offdiag.len() + 1 != n {
        return Err(Error::domain(
            "eigen_nodes_weights",
            format!(
                "malformed tridiagonal matrix: {} diagonal and {} off-diagonal entries",
                n,
                t.offdiag.len()
            ),
        ));
    }
    if !mass.is_positive() {
        return Err(Error::domain("eigen_nodes_weights", format!("mass must be positive, got {mass}")));
    }
    let zero = R::from_int(0, ctx);
    let one = R::from_int(1, ctx);
    let two = R::from_int(2, ctx);
    let eps = R::epsilon(ctx);
    let cap = 50 * ctx.digits() as usize;

    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(zero.clone());
    let mut v = vec![zero.clone(); n];
    v[0] = one.clone();
    let mut sweeps = 0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let bound = eps.clone() * (d[m].abs() + d[m + 1].abs());
                if e[m].abs() <= bound {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter >= cap {
                return Err(Error::EigenNonConvergence {
                    index: l,
                    iterations: iter,
                });
            }
            iter += 1;
            sweeps += 1;

            // Wilkinson-type shift from the leading 2x2 block.
            let mut p = d[l].clone();
            let mut g = (d[l + 1].clone() - &p) / (two.clone() * &e[l]);
            let mut r = (g.clone() * &g + &one).sqrt();
            let signed_r = if g.is_sign_negative() { -r.abs() } else { r.abs() };
            g = d[m].clone() - &p + e[l].clone() / (g + signed_r);
            let mut s = one.clone();
            let mut c = one.clone();
            p = zero.clone();
            for i in (l..m).rev() {
                let f = s.clone() * &e[i];
                let b = c.clone() * &e[i];
                if g.abs() <= f.abs() {
                    c = g.clone() / &f;
                    r = (c.clone() * &c + &one).sqrt();
                    e[i + 1] = f * &r;
                    s = one.clone() / &r;
                    c *= &s;
                } else {
                    s = f / &g;
                    r = (s.clone() * &s + &one).sqrt();
                    e[i + 1] = g.clone() * &r;
                    c = one.clone() / &r;
                    s *= &c;
                }
                g = d[i + 1].clone() - &p;
                r = (d[i].clone() - &g) * &s + two.clone() * &c * &b;
                p = s.clone() * &r;
                d[i + 1] = g + &p;
                g = c.clone() * &r - &b;
                let f = v[i + 1].clone();
                v[i + 1] = s.clone() * &v[i] + c.clone() * &f;
                v[i] = c.clone() * &v[i] - s.clone() * &f;
            }
            d[l] -= &p;
            e[l] = g;
            e[m] = zero.clone();
        }
    }

    let mut pairs: Vec<(R, R)> = d.into_iter().zip(v).collect();
    pairs.sort_by(|x, y| cmp_real(&x.0, &y.0));
    let (nodes, weights) = pairs.into_iter().map(|(x, first)| (x, mass.clone() * &first * &first)).unzip();
    Ok(NodesWeights { nodes, weights, sweeps })
}

/// `N`-point Gauss rule of the table's weight, `N = table.len()`.
///
/// Rejects, instead of returning, rules whose nodes leave `(0, 1)`, collapse
/// onto each other (relative gap below `10^(1-digits)`) or carry nonpositive
/// weights.
pub fn gauss_rule<R: Real>(table: &RecurrenceTable<R>, ctx: &PrecisionContext) -> Result<QuadratureRule<R>> {
    let t = symmetrize(table)?;
    let solved = eigen_nodes_weights(&t, table.mass(), ctx)?;
    let zero = R::from_int(0, ctx);
    let one = R::from_int(1, ctx);
    let gap = R::from_int(10, ctx).powi(1 - ctx.digits() as i32);

    for (k, (x, w)) in solved.nodes.iter().zip(&solved.weights).enumerate() {
        if !x.is_finite() || x.clone() <= zero || x.clone() >= one {
            return Err(Error::Accuracy {
                stage: "quadrature",
                reason: format!("node {k} = {x} lies outside (0, 1)"),
            });
        }
        if !w.is_positive() {
            return Err(Error::Accuracy {
                stage: "quadrature",
                reason: format!("weight {k} = {w} is not positive"),
            });
        }
    }
    for (k, pair) in solved.nodes.windows(2).enumerate() {
        let scale = if pair[0].abs() > pair[1].abs() {
            pair[0].abs()
        } else {
            pair[1].abs()
        };
        let diff = pair[1].clone() - &pair[0];
        if cmp_real(&diff, &(gap.clone() * scale)) != Ordering::Greater {
            return Err(Error::Accuracy {
                stage: "quadrature",
                reason: format!("nodes {k} and {} are not separated", k + 1),
            });
        }
    }

    Ok(QuadratureRule {
        alpha: table.alpha.clone(),
        z: table.z.clone(),
        nodes: solved.nodes,
        weights: solved.weights,
        mass: table.mass().clone(),
        sweeps: solved.sweeps,
    })
}

/// Result of integrating a monomial with a rule.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactnessReport<R> {
    pub degree: usize,
    pub quad: R,
    pub exact: R,
    pub relerr: f64,
}

/// Integrates `x^k` with `rule` and compares with the exact moment
/// `∫_0^1 x^(α+k) e^(-zx) dx = z^-(α+k+1) γ(α+k+1, z)`.
pub fn exactness_check<R: Real>(rule: &QuadratureRule<R>, k: usize, ctx: &PrecisionContext) -> Result<ExactnessReport<R>> {
    let quad = rule.integrate(|x| x.powi(k as i32));
    let exact = monomial_moment(&rule.alpha, &rule.z, k, ctx)?;
    let relerr = relative_deviation(&quad, &exact);
    Ok(ExactnessReport {
        degree: k,
        quad,
        exact,
        relerr,
    })
}

/// `∫_0^1 x^(α+k) e^(-zx) dx`.
pub fn monomial_moment<R: Real>(alpha: &R, z: &R, k: usize, ctx: &PrecisionContext) -> Result<R> {
    check_weight_params(alpha, z, ctx)?;
    truncated_gamma_moment(&(alpha.clone() + R::from_int(k as i64 + 1, ctx)), z, ctx)
}

/// Christoffel numbers recomputed as `1 / K_{N-1}(x_k, x_k)`.
pub fn weights_via_kernel<R: Real>(table: &RecurrenceTable<R>, rule: &QuadratureRule<R>) -> Result<Vec<R>> {
    let n = rule.len();
    if n == 0 || table.len() < n {
        return Err(Error::domain(
            "weights_via_kernel",
            format!("table has {} coefficient pairs, rule has {} nodes", table.len(), n),
        ));
    }
    rule.nodes
        .iter()
        .map(|x| {
            let k = table.cd_kernel(n - 1, x, x)?;
            Ok(table.a[0].clone() / &table.a[0] / k)
        })
        .collect()
}
