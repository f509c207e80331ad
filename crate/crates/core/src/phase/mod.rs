//! Phase diagram machinery: critical points and curves, phase and regime
//! classification, volume and surface free energies, and the explicit
//! constants entering the sharp asymptotics.

pub mod transfer;

pub use transfer::{frak_h, frak_h_with, FrakH};

use crate::analytic::{
    big_h_prime, maximize_profile, TiltSolution,
};
use crate::error::{Error, Result};
use crate::numerics::solve_bracketed;
use crate::walk::WalkParams;
use serde::{Deserialize, Serialize};

/// The three phases of the (beta, delta) quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Extended,
    Collapsed,
    Glued,
}

/// Sub-regimes of the collapsed phase across the surface transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Desorbed-collapsed: the wall does not pin the first stretch.
    DC,
    /// On the critical curve delta = delta_c(beta).
    Critical,
    /// Adsorbed-collapsed: the first stretch is pinned on a sqrt(L) scale.
    AC,
}

/// A classified point of the phase diagram.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RegimePoint {
    pub beta: f64,
    pub delta: f64,
    pub phase: Phase,
    /// Present exactly when the phase is collapsed.
    pub regime: Option<Regime>,
    /// Membership in the good region where the variational surface free
    /// energy is proved; false outside the collapsed phase.
    pub in_good_set: bool,
}

/// Absolute tie tolerance for classifying a point as exactly critical.
pub const CRITICAL_TIE_TOL: f64 = 1e-12;

/// beta_c: the collapse coupling, the positive root of Gamma_beta = 1.
/// Equivalently 2 ln z_c with z_c^3 = z_c^2 + z_c + 1.
pub fn beta_c() -> f64 {
    // Newton on the cubic from a point right of the root; converges in a
    // handful of steps and is bit-stable.
    let mut z = 2.0f64;
    for _ in 0..64 {
        let f = z * z * z - z * z - z - 1.0;
        let fp = 3.0 * z * z - 2.0 * z - 1.0;
        let next = z - f / fp;
        if (next - z).abs() < 1e-16 * z {
            z = next;
            break;
        }
        z = next;
    }
    2.0 * z.ln()
}

/// The root z_c = e^{beta_c / 2} of z^3 = z^2 + z + 1.
pub fn z_c() -> f64 {
    (beta_c() / 2.0).exp()
}

/// Explicit surface-transition curve: delta_c(beta) for beta > beta_c.
///
/// Uses the cancellation-free root of X^2 - 2 cosh(beta) X + e^beta = 0:
/// delta_c = beta - log(cosh beta + sqrt(cosh^2 beta - e^beta)).
pub fn delta_c_explicit(w: &WalkParams) -> Result<f64> {
    let beta = w.beta;
    if beta <= beta_c() {
        return Err(Error::Domain {
            name: "beta (delta_c needs beta > beta_c)",
            value: beta,
            lo: beta_c(),
            hi: f64::INFINITY,
        });
    }
    Ok(delta_c_stable(beta))
}

fn delta_c_stable(beta: f64) -> f64 {
    let ch = beta.cosh();
    let disc = (ch * ch - beta.exp()).max(0.0);
    beta - (ch + disc.sqrt()).ln()
}

/// Variational surface-transition curve: beta/2 - h_tilde(a_beta^{-2})/2
/// with a_beta the maximizer of the delta = 0 extension profile.
pub fn delta_c_variational(w: &WalkParams) -> Result<f64> {
    let profile = maximize_profile(w, 0.0)?;
    let q_beta = 1.0 / (profile.a_bar * profile.a_bar);
    let h = crate::analytic::profile::h_tilde_widened(w, q_beta)?.value;
    Ok(w.beta / 2.0 - h / 2.0)
}

/// x_beta: the unique solution of L(x) = -log Gamma_beta in (0, beta/2).
pub fn x_beta(w: &WalkParams) -> Result<TiltSolution> {
    crate::analytic::profile::x_beta_solution(w)
}

/// delta_check: the Wulff convexity-flip level beta/2 + x_beta in
/// (beta/2, beta); satisfies delta_check + delta_c = beta.
pub fn delta_check(w: &WalkParams) -> Result<f64> {
    Ok(w.beta / 2.0 + x_beta(w)?.value)
}

/// The good-region boundary delta_bar(beta) =
/// beta ∧ inf{delta in (0, beta): H'_delta(beta/2 - delta - x_beta) > 0}.
///
/// The scanned function is increasing in delta, so at most one sign change
/// exists; delta_bar = beta whenever the function stays nonpositive up to
/// the guarded top of the interval.
pub fn delta_bar(w: &WalkParams) -> Result<f64> {
    let xb = x_beta(w)?.value;
    let phi = |delta: f64| big_h_prime(w, delta, w.beta / 2.0 - delta - xb);
    let top = w.beta * (1.0 - 1e-9);
    if phi(top)? <= 0.0 {
        return Ok(w.beta);
    }
    // delta_bar >= beta/2 always: phi(beta/2) = H'_{beta/2}(-x_beta) < 0.
    let mut lo = w.beta / 2.0;
    let step = 1e-3 * w.beta;
    let mut hi = top;
    let mut d = lo + step;
    while d < top {
        if phi(d)? > 0.0 {
            hi = d;
            break;
        }
        lo = d;
        d += step;
    }
    let r = solve_bracketed("delta_bar", phi, lo, hi, 1e-12, 1e-8)?;
    Ok(r.x)
}

/// beta_star: the first beta at which delta_bar(beta) = beta, i.e. the
/// largest abscissa of the bad region. Bisection on the sign of
/// H'_delta(beta/2 - delta - x_beta) evaluated at the top delta -> beta.
pub fn beta_star(tol: f64) -> Result<f64> {
    let top_sign = |beta: f64| -> Result<f64> {
        let w = WalkParams::new(beta)?;
        let xb = x_beta(&w)?.value;
        let delta = beta * (1.0 - 1e-9);
        big_h_prime(&w, delta, beta / 2.0 - delta - xb)
    };
    let mut lo = beta_c() + 1e-6;
    let mut hi = std::f64::consts::PI / 3.0f64.sqrt();
    if top_sign(lo)? <= 0.0 || top_sign(hi)? > 0.0 {
        return Err(Error::BracketFailure {
            what: "beta_star",
            lo,
            hi,
            flo: top_sign(lo)?,
            fhi: top_sign(hi)?,
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if top_sign(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The delta = 0 volume free energy f(beta, 0): beta in the collapsed phase,
/// otherwise the root of log Gamma - (u - beta) + frak_h(u - beta) = 0.
pub fn free_energy_zero(w: &WalkParams) -> Result<f64> {
    let lg = w.gamma_beta.ln();
    if lg <= 0.0 {
        return Ok(w.beta);
    }
    let f = |u: f64| Ok(lg - (u - w.beta) + frak_h(w, u - w.beta)?.value);
    let r = solve_bracketed(
        "free_energy",
        f,
        w.beta,
        w.beta + lg + 0.5,
        1e-9,
        1e-12,
    )?;
    Ok(r.x)
}

/// f(beta, delta) = f(beta, 0) ∨ delta.
pub fn free_energy(w: &WalkParams, delta: f64) -> Result<f64> {
    Ok(free_energy_zero(w)?.max(delta))
}

/// Classify a coupling pair into phase, collapsed regime, and good-set
/// membership.
pub fn classify_phase(w: &WalkParams, delta: f64) -> Result<RegimePoint> {
    if delta < 0.0 {
        return Err(Error::Domain {
            name: "delta",
            value: delta,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let bc = beta_c();
    let f0 = free_energy_zero(w)?;
    let phase = if delta > f0 {
        Phase::Glued
    } else if w.beta < bc {
        Phase::Extended
    } else {
        Phase::Collapsed
    };
    let (regime, in_good_set) = if phase == Phase::Collapsed {
        let dc = delta_c_stable(w.beta);
        let regime = if (delta - dc).abs() <= CRITICAL_TIE_TOL {
            Regime::Critical
        } else if delta < dc {
            Regime::DC
        } else {
            Regime::AC
        };
        let dbar = if w.beta > bc {
            delta_bar(w)?
        } else {
            // Hairline beta == beta_c: Gamma = 1 makes x_beta degenerate; the
            // limiting good boundary is beta/2.
            w.beta / 2.0
        };
        (Some(regime), delta <= dbar)
    } else {
        (None, false)
    };
    Ok(RegimePoint {
        beta: w.beta,
        delta,
        phase,
        regime,
        in_good_set,
    })
}

/// Surface free energy g(beta, delta) on the good collapsed region.
pub fn surface_free_energy(w: &WalkParams, delta: f64) -> Result<f64> {
    Ok(maximize_profile(w, delta)?.max_value)
}

/// The second-order constant of the surface transition:
/// C_beta = L'(h_tilde(q0)/2) / (2 h_tilde(q0) sqrt(q0)) at the delta_c
/// maximizer q0 = a_beta^{-2}.
pub fn second_order_constant(w: &WalkParams) -> Result<f64> {
    let profile = maximize_profile(w, 0.0)?;
    let q0 = 1.0 / (profile.a_bar * profile.a_bar);
    let h = crate::analytic::profile::h_tilde_widened(w, q0)?.value;
    Ok(w.log_mgf_d1(h / 2.0)? / (2.0 * h * q0.sqrt()))
}

/// Which transcription of the C_0 display to use; the source display is
/// ambiguous between a product and a quotient. `Product` is the literal
/// reading; `Quotient` is the explicit fallback.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum C0Form {
    #[default]
    Product,
    Quotient,
}

/// The geometric-series constants of the bead decomposition.
#[derive(Debug, Clone, Copy)]
pub struct BeadConstants {
    /// zeta_beta = arccosh(e^{-beta/2} cosh beta).
    pub zeta_beta: f64,
    /// Normalization of the inter-bead measure; must lie in (0, 1).
    pub c0: f64,
    /// First-bead series sum K_bar_{beta,delta}; finite when
    /// delta < zeta_beta + beta/2.
    pub k_bar: f64,
    /// R(beta, delta) = K_bar_{beta,delta} + e^{-beta}/(1-e^{-beta}) K_bar_{beta,0}.
    pub r: f64,
    pub c0_form: C0Form,
}

fn k_bar_value(beta: f64, zeta: f64, delta: f64) -> f64 {
    let e1 = (delta - beta / 2.0 - zeta).exp();
    let e2 = (delta - beta).exp();
    2.0 * (e1 - e2) / (1.0 - e1)
}

/// Compute zeta_beta, C_0, K_bar and R for beta > beta_c.
///
/// The C_0 assertion 0 < C_0 < 1 is checked and surfaced as a structured
/// diagnostic on failure; the quotient form is only used when explicitly
/// requested.
pub fn bead_constants(w: &WalkParams, delta: f64, form: C0Form) -> Result<BeadConstants> {
    let beta = w.beta;
    if beta <= beta_c() {
        return Err(Error::Domain {
            name: "beta (bead constants need beta > beta_c)",
            value: beta,
            lo: beta_c(),
            hi: f64::INFINITY,
        });
    }
    let x = (-beta / 2.0).exp() * beta.cosh();
    let zeta = (x + (x * x - 1.0).sqrt()).ln();
    let a = 1.0 + 2.0 * (-beta).exp() / (1.0 - (-beta).exp());
    let b = beta.exp() - 1.0 - (zeta + beta / 2.0).exp();
    let c0 = match form {
        C0Form::Product => a * b,
        C0Form::Quotient => a / b,
    };
    if !(c0 > 0.0 && c0 < 1.0) {
        return Err(Error::TranscriptionCheck {
            what: "C_0",
            detail: format!(
                "C_0 = {c0} outside (0,1) for beta = {beta} with the {form:?} form; \
                 retry with the alternate form if this persists"
            ),
        });
    }
    if delta >= zeta + beta / 2.0 {
        return Err(Error::InfiniteConstant {
            what: "K_bar",
            beta,
            delta,
        });
    }
    let k_bar = k_bar_value(beta, zeta, delta);
    let r = k_bar + (-beta).exp() / (1.0 - (-beta).exp()) * k_bar_value(beta, zeta, 0.0);
    Ok(BeadConstants {
        zeta_beta: zeta,
        c0,
        k_bar,
        r,
        c0_form: form,
    })
}

/// One row of the critical-curve table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveRow {
    pub beta: f64,
    pub delta_c: Option<f64>,
    pub delta_bar: Option<f64>,
    pub delta_check: Option<f64>,
    pub f0: f64,
    /// Whether the beta-slab meets the bad region (delta_bar < beta).
    pub in_cbad_band: bool,
}

/// Tabulate the phase-diagram curves over a beta grid.
pub fn critical_curves(beta_min: f64, beta_max: f64, step: f64) -> Result<Vec<CurveRow>> {
    if !(step > 0.0) || beta_max < beta_min {
        return Err(Error::Domain {
            name: "beta grid",
            value: step,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let bc = beta_c();
    let n = ((beta_max - beta_min) / step).round() as usize;
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let beta = beta_min + i as f64 * step;
        let w = WalkParams::new(beta)?;
        let f0 = free_energy_zero(&w)?;
        if beta > bc {
            let dbar = delta_bar(&w)?;
            rows.push(CurveRow {
                beta,
                delta_c: Some(delta_c_stable(beta)),
                delta_bar: Some(dbar),
                delta_check: Some(delta_check(&w)?),
                f0,
                in_cbad_band: dbar < beta,
            });
        } else {
            rows.push(CurveRow {
                beta,
                delta_c: None,
                delta_bar: None,
                delta_check: None,
                f0,
                in_cbad_band: false,
            });
        }
    }
    Ok(rows)
}

/// A beta-slab of the bad region.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CBadSlab {
    pub beta: f64,
    /// Lower boundary delta_bar(beta) of the slab (exclusive).
    pub delta_lo: f64,
    /// Upper boundary beta of the slab (inclusive).
    pub delta_hi: f64,
}

/// Scan the bad region {(beta, delta): delta_bar(beta) < delta <= beta} over
/// a beta grid and emit the nonempty slabs as boundary points.
pub fn c_bad_scan(beta_min: f64, beta_max: f64, step: f64) -> Result<Vec<CBadSlab>> {
    let bc = beta_c();
    let mut out = Vec::new();
    let n = ((beta_max - beta_min) / step).round() as usize;
    for i in 0..=n {
        let beta = beta_min + i as f64 * step;
        if beta <= bc {
            continue;
        }
        let w = WalkParams::new(beta)?;
        let dbar = delta_bar(&w)?;
        if dbar < beta {
            out.push(CBadSlab {
                beta,
                delta_lo: dbar,
                delta_hi: beta,
            });
        }
    }
    Ok(out)
}
