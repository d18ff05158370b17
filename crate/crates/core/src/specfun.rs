//! Confluent hypergeometric kernel and relatives.
//!
//! Everything the radial mode profiles need, real arguments only:
//!
//! - `confluent_1f1`: Kummer's function `1F1(a; b; x) = Σ_k (a)_k/(b)_k x^k/k!`
//! - `laguerre`: generalized Laguerre polynomials `L_n^α(x)` by three-term recurrence
//! - `whittaker_m`: `M_{κ,μ}(z) = e^{-z/2} z^{μ+1/2} 1F1(μ-κ+1/2; 1+2μ; z)`
//!
//! Terminating cases (`a` a non-positive integer) are evaluated as exact
//! fixed-degree polynomials, never by tolerance truncation, so the quantized
//! radial profiles (`a = -n_ρ`) carry no truncation error beyond rounding.
//! Negative arguments go through the Kummer transform
//! `1F1(a,b,x) = e^x 1F1(b-a, b, -x)` first: the raw series alternates
//! catastrophically for `x << 0`, while all-positive-term summation is benign.
//!
//! The [`oracle`] module holds a deliberately naive reference summation used
//! by the test suites to cross-validate the fast paths.

use crate::error::{Error, Result};

/// Truncation policy for the non-terminating series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesPolicy {
    pub max_terms: usize,
    pub rel_tol: f64,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            max_terms: 500,
            rel_tol: 1e-14,
        }
    }
}

impl SeriesPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::InvalidParams("max_terms must be >= 1".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParams("rel_tol must be > 0".into()));
        }
        Ok(())
    }
}

/// Recognize exact non-positive integers, returning |x| as the degree.
fn nonpositive_integer(x: f64) -> Option<u32> {
    if x <= 0.0 && x == x.round() && x >= -(u32::MAX as f64) {
        Some((-x) as u32)
    } else {
        None
    }
}

/// Kummer's confluent hypergeometric function `1F1(a; b; x)`.
///
/// Terminating numerators are summed as exact degree-`|a|` polynomials.
/// A non-positive integer `b` is a pole unless a terminating numerator stops
/// the series before the zero of `(b)_k` is reached.
pub fn confluent_1f1(a: f64, b: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    policy.validate()?;
    if !a.is_finite() || !b.is_finite() || !x.is_finite() {
        return Err(Error::InvalidParams(format!(
            "confluent_1f1 arguments must be finite, got a={a}, b={b}, x={x}"
        )));
    }

    let neg_a = nonpositive_integer(a);
    let neg_b = nonpositive_integer(b);

    if let Some(degree) = neg_a {
        // (b)_k first vanishes at k = |b|+1; the polynomial only uses k <= degree.
        if let Some(pole_index) = neg_b {
            if degree > pole_index {
                return Err(Error::Pole { b });
            }
        }
        return Ok(terminating_sum(degree, a, b, x));
    }
    if neg_b.is_some() {
        return Err(Error::Pole { b });
    }

    if x < 0.0 {
        // Kummer transform onto the all-positive-argument side.
        let inner = if let Some(degree) = nonpositive_integer(b - a) {
            terminating_sum(degree, b - a, b, -x)
        } else {
            truncated_sum(b - a, b, -x, policy)?
        };
        return Ok(x.exp() * inner);
    }

    truncated_sum(a, b, x, policy)
}

/// Exact polynomial for `a = -degree`; fixed term count, no tolerance involved.
fn terminating_sum(degree: u32, a: f64, b: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..degree {
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        sum += term;
    }
    sum
}

fn truncated_sum(a: f64, b: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        sum += term;
        if term.abs() <= policy.rel_tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        max_terms: policy.max_terms,
        last_ratio: (term / sum).abs(),
    })
}

/// Generalized Laguerre polynomial `L_n^α(x)` by the standard three-term
/// recurrence; exact degree-`n` polynomial.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    debug_assert!(alpha > -1.0, "laguerre expects alpha > -1");
    match n {
        0 => 1.0,
        1 => 1.0 + alpha - x,
        _ => {
            let mut lm2 = 1.0;
            let mut lm1 = 1.0 + alpha - x;
            for k in 2..=n {
                let kf = k as f64;
                let l = ((2.0 * kf - 1.0 + alpha - x) * lm1 - (kf - 1.0 + alpha) * lm2) / kf;
                lm2 = lm1;
                lm1 = l;
            }
            lm1
        }
    }
}

/// Whittaker function `M_{κ,μ}(z) = e^{-z/2} z^{μ+1/2} 1F1(μ-κ+1/2; 1+2μ; z)`, z > 0.
pub fn whittaker_m(kappa: f64, mu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::InvalidParams(format!(
            "whittaker_m requires z > 0, got z={z}"
        )));
    }
    let a = mu - kappa + 0.5;
    let b = 1.0 + 2.0 * mu;
    let f = confluent_1f1(a, b, z, &SeriesPolicy::default())?;
    Ok((-0.5 * z).exp() * z.powf(mu + 0.5) * f)
}

/// Binomial coefficient `C(n+α, n)` for real α, via the product form.
pub fn binomial_real(alpha: f64, n: u32) -> f64 {
    let mut c = 1.0;
    for k in 1..=n {
        c *= (alpha + k as f64) / k as f64;
    }
    c
}

pub mod oracle {
    //! Reference summation used to cross-check the fast paths.
    //!
    //! Plain term-by-term Kummer series with no transforms and no terminating
    //! shortcut. Accurate where the series is benign (x >= 0, or |x| small
    //! enough that alternating cancellation stays below ~e^{2|x|}·eps).

    /// `Σ_{k<terms} (a)_k/(b)_k x^k/k!`, stopping early only on an exactly
    /// zero term (terminated numerator).
    pub fn kummer_series(a: f64, b: f64, x: f64, terms: usize) -> f64 {
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for k in 0..terms {
            let kf = k as f64;
            term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
            if term == 0.0 {
                break;
            }
            sum += term;
        }
        sum
    }
}
