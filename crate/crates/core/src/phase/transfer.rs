//! The exponential growth rate frak_h_beta(u) of E[exp(-u G_N)] via power
//! iteration of the truncated transfer operator.

use crate::error::{Error, Result};
use crate::walk::{geometric_smooth, WalkParams};

/// Result of a converged transfer-operator eigenvalue computation.
#[derive(Debug, Clone, Copy)]
pub struct FrakH {
    pub value: f64,
    /// Power-iteration residual ||K v - lambda v||_inf / lambda.
    pub residual: f64,
    /// Truncation radius actually used.
    pub m: usize,
}

/// frak_h_beta(u) on a fixed truncation |x| <= m.
///
/// The operator acts as (K v)(y) = e^{-u |y|} (P * v)(y) with P the step
/// kernel; its dominant log-eigenvalue, <= 0, is returned.
pub fn frak_h_with(w: &WalkParams, u: f64, m: usize, max_iters: usize) -> Result<FrakH> {
    if !(u >= 0.0) {
        return Err(Error::Domain {
            name: "u",
            value: u,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if u == 0.0 {
        return Ok(FrakH {
            value: 0.0,
            residual: 0.0,
            m,
        });
    }
    let n = 2 * m + 1;
    let damp: Vec<f64> = (0..n)
        .map(|i| (-u * (i as i64 - m as i64).abs() as f64).exp())
        .collect();
    let mut v = vec![0.0f64; n];
    v[m] = 1.0;
    let mut smoothed = vec![0.0f64; n];
    let mut lambda;
    let mut residual = f64::INFINITY;
    for _ in 0..max_iters {
        geometric_smooth(w, &v, &mut smoothed);
        let mut dot_wv = 0.0;
        let mut dot_vv = 0.0;
        for i in 0..n {
            smoothed[i] *= damp[i];
            dot_wv += smoothed[i] * v[i];
            dot_vv += v[i] * v[i];
        }
        lambda = dot_wv / dot_vv;
        residual = 0.0;
        for i in 0..n {
            residual = residual.max((smoothed[i] - lambda * v[i]).abs());
        }
        residual /= lambda;
        let norm = smoothed.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        for i in 0..n {
            v[i] = smoothed[i] / norm;
        }
        if residual < 1e-12 {
            return Ok(FrakH {
                value: lambda.ln(),
                residual,
                m,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "transfer power iteration",
        residual,
        target: 1e-12,
    })
}

/// frak_h_beta(u) with automatic doubling of the truncation radius until two
/// successive values agree to 1e-8. The geometric step tails make the
/// truncation error exponentially small in m.
pub fn frak_h(w: &WalkParams, u: f64) -> Result<FrakH> {
    let mut m = 120usize;
    let mut prev = frak_h_with(w, u, m, 200_000)?;
    for _ in 0..4 {
        m *= 2;
        let next = frak_h_with(w, u, m, 200_000)?;
        if (next.value - prev.value).abs() < 1e-8 {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        what: "transfer truncation doubling",
        residual: prev.residual,
        target: 1e-8,
    })
}
