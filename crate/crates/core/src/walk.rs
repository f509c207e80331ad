//! The base step distribution on the integers, its exponential tilts, the
//! log-moment-generating function with closed-form derivatives, and the
//! stay-positive escape probability of a tilted walk.
//!
//! The step law puts mass proportional to exp(-beta |k| / 2) on k, so all
//! moments reduce to geometric series in r1 = exp(h - beta/2) and
//! r2 = exp(-h - beta/2).

use crate::error::{Error, Result};
use rand::Rng;

/// Relative width of the guard band that keeps tilts away from the
/// singularities of the log-mgf at +-beta/2.
pub const TILT_GUARD_REL: f64 = 1e-9;

/// Coupling beta with its derived normalization constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    pub beta: f64,
    /// c_beta = (1 + e^{-beta/2}) / (1 - e^{-beta/2})
    pub c_beta: f64,
    /// Gamma_beta = c_beta e^{-beta}
    pub gamma_beta: f64,
    /// Relative guard band on tilt domains; see [`TILT_GUARD_REL`].
    pub guard_rel: f64,
}

impl WalkParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::Domain {
                name: "beta",
                value: beta,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        let e = (-beta / 2.0).exp();
        let c_beta = (1.0 + e) / (1.0 - e);
        let gamma_beta = c_beta * (-beta).exp();
        Ok(WalkParams {
            beta,
            c_beta,
            gamma_beta,
            guard_rel: TILT_GUARD_REL,
        })
    }

    /// Same coupling with a wider (smaller) guard band. Tilt solvers whose
    /// optimum saturates toward +-beta/2 at large beta widen explicitly
    /// through this; the moment forms below stay exact there via expm1.
    pub fn with_guard(mut self, guard_rel: f64) -> Self {
        self.guard_rel = guard_rel;
        self
    }

    /// The quotient form of Gamma_beta; agrees with c_beta e^{-beta} to
    /// relative 1e-12 (asserted in tests).
    pub fn gamma_quotient(&self) -> f64 {
        let b = self.beta;
        ((-b).exp() + (-1.5 * b).exp()) / (1.0 - (-b / 2.0).exp())
    }

    /// Largest legal |h| for a homogeneous tilt, inside the guard band.
    pub fn tilt_bound(&self) -> f64 {
        0.5 * self.beta * (1.0 - self.guard_rel)
    }

    fn check_tilt(&self, h: f64) -> Result<()> {
        let bound = self.tilt_bound();
        if h.abs() >= bound || !h.is_finite() {
            return Err(Error::Domain {
                name: "tilt h",
                value: h,
                lo: -bound,
                hi: bound,
            });
        }
        Ok(())
    }

    /// Raw geometric moments: returns c_beta * E[e^{hX} X^j] for j = 0, 1, 2.
    ///
    /// 1 - r is computed as -expm1(log r), exact even when the tilt sits
    /// within 1e-9 of the singularity.
    fn raw_moments(&self, h: f64) -> (f64, f64, f64) {
        let u1 = h - self.beta / 2.0;
        let u2 = -h - self.beta / 2.0;
        let (r1, d1) = (u1.exp(), -u1.exp_m1());
        let (r2, d2) = (u2.exp(), -u2.exp_m1());
        let m0 = 1.0 / d1 + 1.0 / d2 - 1.0;
        let m1 = r1 / (d1 * d1) - r2 / (d2 * d2);
        let m2 = r1 * (1.0 + r1) / (d1 * d1 * d1) + r2 * (1.0 + r2) / (d2 * d2 * d2);
        (m0, m1, m2)
    }

    /// L(h) = log E[e^{h X}], |h| < beta/2.
    pub fn log_mgf(&self, h: f64) -> Result<f64> {
        self.check_tilt(h)?;
        let (m0, _, _) = self.raw_moments(h);
        Ok((m0 / self.c_beta).ln())
    }

    /// L'(h); odd in h and strictly increasing.
    pub fn log_mgf_d1(&self, h: f64) -> Result<f64> {
        self.check_tilt(h)?;
        let (m0, m1, _) = self.raw_moments(h);
        Ok(m1 / m0)
    }

    /// L''(h) > 0; even in h.
    pub fn log_mgf_d2(&self, h: f64) -> Result<f64> {
        self.check_tilt(h)?;
        let (m0, m1, m2) = self.raw_moments(h);
        let mean = m1 / m0;
        Ok(m2 / m0 - mean * mean)
    }

    /// Tilted step mass at k: e^{hk - L(h)} e^{-beta |k| / 2} / c_beta.
    pub fn step_pmf(&self, h: f64, k: i64) -> Result<f64> {
        let l = self.log_mgf(h)?;
        Ok((h * k as f64 - l - self.beta * k.unsigned_abs() as f64 / 2.0).exp() / self.c_beta)
    }

    /// Escape probability kappa^x(h) of the h-tilted walk above level -x,
    /// for 0 < h < beta/2 and x >= 0.
    pub fn escape_prob(&self, h: f64, x: u64) -> Result<f64> {
        let bound = self.tilt_bound();
        if !(h > 0.0 && h < bound) {
            return Err(Error::Domain {
                name: "escape tilt h",
                value: h,
                lo: 0.0,
                hi: bound,
            });
        }
        let ratio = (h - self.beta / 2.0).exp_m1() / (-h - self.beta / 2.0).exp_m1();
        Ok(1.0 - (-2.0 * h * x as f64).exp() * ratio)
    }

    /// Draw one step of the tilted law by inversion on the two geometric
    /// tails. Exact for all beta; no precomputed tables.
    pub fn sample_step<R: Rng>(&self, tilt: f64, rng: &mut R) -> Result<i64> {
        self.check_tilt(tilt)?;
        let u1 = tilt - self.beta / 2.0;
        let u2 = -tilt - self.beta / 2.0;
        let (r1, r2) = (u1.exp(), u2.exp());
        // Unnormalized masses: center 1, tails r/(1-r).
        let t1 = r1 / -u1.exp_m1();
        let t2 = r2 / -u2.exp_m1();
        let total = 1.0 + t1 + t2;
        let u: f64 = rng.gen::<f64>() * total;
        if u < 1.0 {
            return Ok(0);
        }
        let (r, sign) = if u < 1.0 + t1 { (r1, 1i64) } else { (r2, -1i64) };
        // Geometric on {1, 2, ...} with ratio r via inversion.
        let v: f64 = rng.gen::<f64>();
        let k = 1 + (v.ln() / r.ln()).floor() as i64;
        Ok(sign * k.max(1))
    }
}

/// Convolve `v` with the untilted step kernel e^{-beta |d| / 2} / c_beta in
/// O(len) via the two geometric tail recursions. `v` and `out` are indexed
/// over the same contiguous window of positions.
pub fn geometric_smooth(w: &WalkParams, v: &[f64], out: &mut [f64]) {
    debug_assert_eq!(v.len(), out.len());
    let r = (-w.beta / 2.0).exp();
    let n = v.len();
    if n == 0 {
        return;
    }
    // Left pass: sum_{x <= y} v[x] r^{y-x}.
    let mut acc = 0.0;
    for y in 0..n {
        acc = v[y] + r * acc;
        out[y] = acc;
    }
    // Right pass: sum_{x > y} v[x] r^{x-y}.
    acc = 0.0;
    for y in (0..n).rev() {
        out[y] = (out[y] + acc) / w.c_beta;
        acc = r * (v[y] + acc);
    }
}

/// The per-step tilts of the symmetric inhomogeneous change of measure
/// (final position untilted in mean): t_k = (h/2) (1 - (2k-1)/n).
pub fn schedule_symmetric(n: usize, h: f64) -> Vec<f64> {
    (1..=n)
        .map(|k| 0.5 * h * (1.0 - (2.0 * k as f64 - 1.0) / n as f64))
        .collect()
}

/// The per-step tilts of the wall-weighted change of measure with the final
/// tilt pinned at delta - beta/2: t_k = delta - beta/2 + s (2n+1-2k)/(2n).
pub fn schedule_pinned(n: usize, beta: f64, delta: f64, s: f64) -> Vec<f64> {
    (1..=n)
        .map(|k| delta - beta / 2.0 + s * (2.0 * n as f64 + 1.0 - 2.0 * k as f64) / (2.0 * n as f64))
        .collect()
}
