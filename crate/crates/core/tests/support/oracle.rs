//! Reference values computed without the library's algorithms.
//!
//! Integrals of `f(x) x^α e^{-zx}` over `[0,1]` use tanh-sinh quadrature in
//! MPFR, halving the step until successive levels agree. Recurrence
//! coefficients come from the Stieltjes procedure on those nodes.
#![allow(dead_code)]

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

pub fn bits_for(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Nodes and weights with `x^α e^{-zx}` folded into the weights.
pub fn weighted_rule(alpha: f64, z: f64, bits: u32, level: u32) -> Vec<(Float, Float)> {
    let h = Float::with_val(bits, 1) >> level;
    let pi = Float::with_val(bits, Constant::Pi);
    // the tail near 0 decays like x^{1+α}
    let cutoff = f64::from(bits) * std::f64::consts::LN_2 * 1.25 / (1.0 + alpha).min(1.0);
    let mut out = Vec::new();
    for sign in [-1i32, 1] {
        for j in 0.. {
            if sign < 0 && j == 0 {
                continue;
            }
            let t = Float::with_val(bits, &h * (sign * j));
            let u = Float::with_val(bits, &pi * t.clone().sinh());
            if u.to_f64().abs() > cutoff {
                break;
            }
            // x = 1/(1+e^{-u}), 1-x = 1/(1+e^{u})
            let x = Float::with_val(bits, 1) / (Float::with_val(bits, (-u.clone()).exp()) + 1u32);
            let y = Float::with_val(bits, 1) / (Float::with_val(bits, u.exp()) + 1u32);
            if x.is_zero() || y.is_zero() {
                break;
            }
            let dx = Float::with_val(bits, &pi * t.cosh()) * &x * &y * &h;
            let w =
                Float::with_val(bits, x.clone().ln() * alpha).exp() * Float::with_val(bits, -(Float::with_val(bits, &x * z))).exp() * dx;
            out.push((x, w));
        }
    }
    out.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    out
}

fn max_rel_change(new: &[Float], old: &[Float]) -> f64 {
    new.iter()
        .zip(old)
        .map(|(n, o)| {
            let d = Float::with_val(n.prec(), n - o).abs();
            if n.is_zero() {
                d.to_f64()
            } else {
                (d / n.clone().abs()).to_f64()
            }
        })
        .fold(0.0, f64::max)
}

/// Refines the tanh-sinh level until every entry of `eval(rule)` changes by
/// less than `10^-tol_digits` relative.
pub fn adaptive<F>(alpha: f64, z: f64, bits: u32, tol_digits: u32, eval: F) -> Vec<Float>
where
    F: Fn(&[(Float, Float)]) -> Vec<Float>,
{
    let tol = 10f64.powi(-(tol_digits as i32));
    let mut prev = eval(&weighted_rule(alpha, z, bits, 3));
    for level in 4..=12 {
        let cur = eval(&weighted_rule(alpha, z, bits, level));
        if max_rel_change(&cur, &prev) < tol {
            return cur;
        }
        prev = cur;
    }
    panic!("tanh-sinh did not settle for alpha={alpha} z={z}");
}

/// `∫_0^1 f(x) x^α e^{-zx} dx`.
pub fn integrate(alpha: f64, z: f64, digits: u32, f: impl Fn(&Float) -> Float) -> Float {
    let bits = bits_for(digits + 20);
    adaptive(alpha, z, bits, digits + 5, |rule| {
        let mut s = Float::with_val(bits, 0);
        for (x, w) in rule {
            s += Float::with_val(bits, f(x) * w);
        }
        vec![s]
    })
    .remove(0)
}

/// Stieltjes procedure: `b_k = <x p_k, p_k>/<p_k, p_k>`,
/// `a_k = <p_k, p_k>/<p_{k-1}, p_{k-1}>`, `a_0 = <1, 1>`.
pub fn stieltjes(alpha: f64, z: f64, n: usize, digits: u32) -> (Vec<Float>, Vec<Float>) {
    let bits = bits_for(digits + 20);
    let flat = adaptive(alpha, z, bits, digits + 5, |rule| {
        let (b, a) = stieltjes_on(rule, n, bits);
        b.into_iter().chain(a).collect()
    });
    let (b, a) = flat.split_at(n);
    (b.to_vec(), a.to_vec())
}

fn stieltjes_on(rule: &[(Float, Float)], n: usize, bits: u32) -> (Vec<Float>, Vec<Float>) {
    let zero = Float::with_val(bits, 0);
    let mut prev = vec![zero.clone(); rule.len()];
    let mut cur = vec![Float::with_val(bits, 1); rule.len()];
    let (mut b, mut a) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let mut old_norm = Float::with_val(bits, 1);
    for k in 0..n {
        let mut norm = zero.clone();
        let mut xnorm = zero.clone();
        for ((x, w), p) in rule.iter().zip(&cur) {
            let t = Float::with_val(bits, p.clone().square() * w);
            xnorm += Float::with_val(bits, &t * x);
            norm += t;
        }
        let bk = Float::with_val(bits, &xnorm / &norm);
        let ak = if k == 0 {
            norm.clone()
        } else {
            Float::with_val(bits, &norm / &old_norm)
        };
        let next: Vec<Float> = rule
            .iter()
            .zip(cur.iter().zip(&prev))
            .map(|((x, _), (p, q))| Float::with_val(bits, Float::with_val(bits, x - &bk) * p) - Float::with_val(bits, &ak * q))
            .collect();
        prev = std::mem::replace(&mut cur, next);
        old_norm = norm;
        b.push(bk);
        a.push(ak);
    }
    (b, a)
}

/// Monic shifted Jacobi polynomial orthogonal for `x^α` on `[0,1]`, from the
/// explicit sum `Σ_s C(n,s) C(n+α,s) (x-1)^s x^{n-s}` over `C(2n+α,n)`.
pub fn monic_shifted_jacobi(alpha: f64, n: usize, x: &Float) -> Float {
    let bits = x.prec();
    let binom = |top: &Float, s: usize| {
        let mut c = Float::with_val(bits, 1);
        for j in 0..s {
            c *= Float::with_val(bits, top - j as u32);
            c /= (j + 1) as u32;
        }
        c
    };
    let top = Float::with_val(bits, alpha + n as f64);
    let xm1 = Float::with_val(bits, x - 1u32);
    let mut sum = Float::with_val(bits, 0);
    for s in 0..=n {
        let c = binom(&Float::with_val(bits, n as u32), s) * binom(&top, s);
        sum += c * xm1.clone().pow(s as u32) * x.clone().pow((n - s) as u32);
    }
    sum / binom(&Float::with_val(bits, 2.0 * n as f64 + alpha), n)
}

/// `|x - r| / |r|` evaluated in MPFR.
pub fn rel(x: &Float, r: &Float) -> f64 {
    let bits = x.prec().max(r.prec());
    let d = Float::with_val(bits, x - r).abs();
    if r.is_zero() {
        d.to_f64()
    } else {
        (d / r.clone().abs()).to_f64()
    }
}
