//! Gauss quadrature for the truncated Gamma weight `x^α e^(-zx)` on `[0, 1]`.
//!
//! The pipeline runs in four steps:
//!
//! 1. [`chebyshev::modified_moments`] evaluates the moments of the weight
//!    against shifted Jacobi polynomials in closed form (via `₁F₁`);
//! 2. [`chebyshev::modified_chebyshev`] turns `2N` moments into the first `N`
//!    recurrence coefficients `b_k`, `a_k`;
//! 3. [`quadrature::gauss_rule`] diagonalizes the Jacobi matrix to obtain nodes
//!    and Christoffel numbers;
//! 4. [`zsweep`] repeats the computation over a grid of `z`, interpolates the
//!    coefficients with not-a-knot splines and measures conditioning against
//!    a high-precision reference.
//!
//! Every routine is generic over [`Real`], implemented by `f64` and by the
//! MPFR-backed [`MpFloat`]. A [`PrecisionContext`] picks the precision.
//!
//! ```
//! use tgquad::{chebyshev::truncated_gamma_recurrence, quadrature::gauss_rule, PrecisionContext};
//!
//! let ctx = PrecisionContext::new(16)?;
//! let table = truncated_gamma_recurrence(&1.0_f64, &1.0, 10, &ctx)?;
//! let rule = gauss_rule(&table, &ctx)?;
//! let total: f64 = rule.weights.iter().sum();
//! assert!((total - 0.2642411176571153).abs() < 1e-15);
//! # Ok::<(), tgquad::Error>(())
//! ```

pub mod chebyshev;
pub mod error;
pub mod precision;
pub mod quadrature;
pub mod recurrence;
pub mod specialfn;
pub mod zsweep;

pub use error::{Error, Result};
pub use precision::{MpFloat, PrecisionContext, Real};

// Runs the guide and README snippets as doctests.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/precision.md")]
mod book_precision {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/special-functions.md")]
mod book_special_functions {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/recurrences.md")]
mod book_recurrences {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/modified-chebyshev.md")]
mod book_modified_chebyshev {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/gauss-rules.md")]
mod book_gauss_rules {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/z-sweeps.md")]
mod book_z_sweeps {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verification.md")]
mod book_verification {}
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
