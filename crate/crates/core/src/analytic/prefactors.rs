//! Sharp-asymptotic prefactors for the auxiliary partition functions: the
//! local-limit variances, the Gaussian density of the rescaled area/endpoint
//! pair, and the regime constants.

use crate::analytic::h_tilde;
use crate::analytic::s_delta;
use crate::error::{Error, Result};
use crate::numerics::{integrate, QUAD_TOL};
use crate::walk::WalkParams;
use std::f64::consts::PI;

/// theta(h): determinant of the local-limit covariance for the symmetric
/// tilt, as the integral combination
/// int x^2 L'' * int L'' - (int x L'')^2 with arguments h(x - 1/2).
pub fn prefactor_theta(w: &WalkParams, h: f64) -> Result<f64> {
    let m0 = integrate(
        |x| w.log_mgf_d2(h * (x - 0.5)).expect("tilt inside guarded domain"),
        0.0,
        1.0,
        QUAD_TOL,
    )?;
    let m1 = integrate(
        |x| x * w.log_mgf_d2(h * (x - 0.5)).expect("tilt inside guarded domain"),
        0.0,
        1.0,
        QUAD_TOL,
    )?;
    let m2 = integrate(
        |x| x * x * w.log_mgf_d2(h * (x - 0.5)).expect("tilt inside guarded domain"),
        0.0,
        1.0,
        QUAD_TOL,
    )?;
    Ok(m2 * m0 - m1 * m1)
}

/// b(h) = int_0^1 (x - 1/2)^2 L''(h (x - 1/2)) dx: the area variance of the
/// symmetric tilt.
pub fn prefactor_b(w: &WalkParams, h: f64) -> Result<f64> {
    integrate(
        |x| {
            let u = x - 0.5;
            u * u * w.log_mgf_d2(h * u).expect("tilt inside guarded domain")
        },
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// c(s) = int_0^1 x^2 L''(delta - beta/2 + s x) dx: the area variance of the
/// pinned tilt.
pub fn prefactor_c(w: &WalkParams, delta: f64, s: f64) -> Result<f64> {
    let off = delta - w.beta / 2.0;
    integrate(
        |x| x * x * w.log_mgf_d2(off + s * x).expect("tilt inside guarded domain"),
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// The closed-form Hessian entries at the symmetric tilt h_tilde(q):
/// alpha_0 = 2 L'(h/2)/h, alpha_1 = L'(h/2)/h, alpha_2 = (L'(h/2) - 2q)/h.
#[derive(Debug, Clone, Copy)]
pub struct HessianEntries {
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl HessianEntries {
    pub fn det(&self) -> f64 {
        self.alpha2 * self.alpha0 - self.alpha1 * self.alpha1
    }
}

pub fn hessian_entries(w: &WalkParams, q: f64) -> Result<HessianEntries> {
    let h = crate::analytic::profile::h_tilde_widened(w, q)?.value;
    if h <= 0.0 {
        return Err(Error::Domain {
            name: "q (needs h_tilde(q) > 0)",
            value: q,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let lp = w.log_mgf_d1(h / 2.0)?;
    Ok(HessianEntries {
        alpha0: 2.0 * lp / h,
        alpha1: lp / h,
        alpha2: (lp - 2.0 * q) / h,
    })
}

/// The Gaussian density of the rescaled (area, endpoint) fluctuation pair at
/// the symmetric tilt h_tilde(q), evaluated at z = (z_area, z_end).
pub fn gauss_density_fh(w: &WalkParams, q: f64, z: (f64, f64)) -> Result<f64> {
    let e = hessian_entries(w, q)?;
    let det = e.det();
    if det <= 0.0 || e.alpha2 <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            det,
            alpha2: e.alpha2,
        });
    }
    // B = [[alpha2, alpha1], [alpha1, alpha0]]; quadratic form of B^{-1}.
    let (z0, z1) = z;
    let quad = (e.alpha0 * z0 * z0 - 2.0 * e.alpha1 * z0 * z1 + e.alpha2 * z1 * z1) / det;
    Ok((-0.5 * quad).exp() / (2.0 * PI * det.sqrt()))
}

/// kappa^0(h): escape probability from the wall itself.
fn kappa0(w: &WalkParams, h: f64) -> Result<f64> {
    w.escape_prob(h, 0)
}

/// Prefactor of D_N in the desorbed-collapsed regime (delta < delta_0(q)):
/// kappa^0(h/2) / (2 pi sqrt(theta(h))) *
/// (1/(1 - e^u) - (1 - kappa^0(h/2)) / (1 - e^{u - h})), u = delta - delta_0(q).
pub fn prefactor_subcrit(w: &WalkParams, q: f64, delta: f64) -> Result<f64> {
    let h = h_tilde(w, q)?.value;
    let d0 = w.beta / 2.0 - h / 2.0;
    if delta >= d0 {
        return Err(Error::Regime {
            msg: format!("subcritical prefactor needs delta < delta_0(q) = {d0}, got {delta}"),
        });
    }
    let u = delta - d0;
    let k = kappa0(w, h / 2.0)?;
    let theta = prefactor_theta(w, h)?;
    let series = 1.0 / (1.0 - u.exp()) - (1.0 - k) / (1.0 - (u - h).exp());
    Ok(k / (2.0 * PI * theta.sqrt()) * series)
}

/// Prefactor of D_N at the surface transition (delta = delta_0(q)):
/// kappa^0(h/2) * int_0^infty f_{h_tilde(q,0)}(c, z) dz, by quadrature.
pub fn prefactor_crit(w: &WalkParams, q: f64, c_shift: f64) -> Result<f64> {
    let h = h_tilde(w, q)?.value;
    let k = kappa0(w, h / 2.0)?;
    let e = hessian_entries(w, q)?;
    if e.det() <= 0.0 || e.alpha2 <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            det: e.det(),
            alpha2: e.alpha2,
        });
    }
    // The z-marginal scale is sqrt(alpha0); 14 sigma truncation is far below
    // the quadrature tolerance.
    let z_hi = (e.alpha1 * c_shift / e.alpha2).max(0.0) + 14.0 * e.alpha0.sqrt();
    let integral = integrate(
        |z| gauss_density_fh(w, q, (c_shift, z)).expect("entries validated"),
        0.0,
        z_hi,
        QUAD_TOL,
    )?;
    Ok(k * integral)
}

/// xi(q, delta): the local-limit constant of the adsorbed-collapsed regime.
pub fn xi_supcrit(w: &WalkParams, delta: f64, q: f64) -> Result<f64> {
    let s = s_delta(w, delta, q)?.value;
    let off = delta - w.beta / 2.0;
    let num = (w.log_mgf(off + s)? - w.log_mgf(off)?).exp();
    Ok(num / (2.0 * PI * prefactor_c(w, delta, s)?).sqrt())
}

/// Full prefactor of D_N in the adsorbed-collapsed regime
/// (q > q*_delta and delta > delta_0(q)): kappa^0(s + delta - beta/2) * xi.
///
/// The escape factor is evaluated at the entry tilt s_delta(q) + delta -
/// beta/2 of the pinned schedule, which is the value the walk sees over its
/// first steps and is always inside (0, beta/2) on this regime; at the
/// critical curve it glues continuously with the kappa^0(h_tilde/2) factor
/// of the other two regimes.
pub fn prefactor_supcrit(w: &WalkParams, delta: f64, q: f64) -> Result<f64> {
    let qs = crate::analytic::q_star(w, delta)?;
    if q <= qs {
        return Err(Error::Regime {
            msg: format!("adsorbed prefactor needs q > q* = {qs}, got {q}"),
        });
    }
    let d0 = crate::analytic::delta0(w, q)?;
    if delta <= d0 {
        return Err(Error::Regime {
            msg: format!("adsorbed prefactor needs delta > delta_0(q) = {d0}, got {delta}"),
        });
    }
    let s = s_delta(w, delta, q)?.value;
    let entry_tilt = s + delta - w.beta / 2.0;
    Ok(kappa0(w, entry_tilt)? * xi_supcrit(w, delta, q)?)
}
