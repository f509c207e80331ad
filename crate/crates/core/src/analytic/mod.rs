//! Collapsed-phase analytic layer: the tilt functionals G and H_delta with
//! their discrete versions, the inverse tilts, the growth rate psi(q, delta)
//! of the auxiliary partition functions, the extension profile T_delta, and
//! the sharp-asymptotic prefactors.

pub mod prefactors;
pub mod profile;

pub use prefactors::*;
pub use profile::{maximize_profile, profile_t, profile_t_d1, profile_t_d2, ExtensionProfile};

use crate::error::{Error, Result};
use crate::numerics::{grow_bracket, integrate, solve_bracketed, QUAD_TOL, ROOT_RES_TOL, ROOT_X_TOL};
use crate::walk::WalkParams;

/// A solved tilt parameter together with its solve diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct TiltSolution {
    /// Target derivative (rescaled area).
    pub q: f64,
    /// The solved tilt.
    pub value: f64,
    /// Residual of the defining equation at `value`.
    pub residual: f64,
    /// Final bracket, strictly inside the legal tilt domain.
    pub bracket: (f64, f64),
}

/// Which branch of psi a value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiBranch {
    /// delta <= delta_0(q): the wall plays no role; symmetric tilt.
    G,
    /// delta > delta_0(q): wall-weighted tilt.
    H,
}

/// psi(q, delta) together with its q-derivative and branch tag.
#[derive(Debug, Clone, Copy)]
pub struct PsiValue {
    pub q: f64,
    pub delta: f64,
    pub branch: PsiBranch,
    pub value: f64,
    /// dq = -h_tilde(q) on the G branch, -s_delta(q) on the H branch.
    pub dq: f64,
}

fn check_delta(w: &WalkParams, delta: f64) -> Result<()> {
    if !(0.0..w.beta).contains(&delta) {
        return Err(Error::Domain {
            name: "delta",
            value: delta,
            lo: 0.0,
            hi: w.beta,
        });
    }
    Ok(())
}

/// G(h) = int_0^1 L(h (x - 1/2)) dx on (-beta, beta).
pub fn big_g(w: &WalkParams, h: f64) -> Result<f64> {
    let bound = 2.0 * w.tilt_bound();
    if h.abs() > bound {
        return Err(Error::Domain {
            name: "G tilt h",
            value: h,
            lo: -bound,
            hi: bound,
        });
    }
    let wc = *w;
    integrate(
        move |x| wc.log_mgf(h * (x - 0.5)).expect("tilt inside guarded domain"),
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// G'(h) = int_0^1 (x - 1/2) L'(h (x - 1/2)) dx; odd and strictly increasing.
pub fn big_g_prime(w: &WalkParams, h: f64) -> Result<f64> {
    let bound = 2.0 * w.tilt_bound();
    if h.abs() > bound {
        return Err(Error::Domain {
            name: "G tilt h",
            value: h,
            lo: -bound,
            hi: bound,
        });
    }
    let wc = *w;
    integrate(
        move |x| (x - 0.5) * wc.log_mgf_d1(h * (x - 0.5)).expect("tilt inside guarded domain"),
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// G''(h) = int_0^1 (x - 1/2)^2 L''(h (x - 1/2)) dx.
pub fn big_g_second(w: &WalkParams, h: f64) -> Result<f64> {
    let wc = *w;
    integrate(
        move |x| {
            let u = x - 0.5;
            u * u * wc.log_mgf_d2(h * u).expect("tilt inside guarded domain")
        },
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// Discrete counterpart G_n(h) = (1/n) sum_k L((h/2)(1 - (2k-1)/n)).
pub fn big_g_discrete(w: &WalkParams, n: usize, h: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain {
            name: "n",
            value: n as f64,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    let mut acc = 0.0;
    for t in crate::walk::schedule_symmetric(n, h) {
        acc += w.log_mgf(t)?;
    }
    Ok(acc / n as f64)
}

/// The open interval A_delta = (-delta, beta - delta), shrunk by the guard.
pub fn a_delta_interval(w: &WalkParams, delta: f64) -> (f64, f64) {
    let g = 0.5 * w.beta * crate::walk::TILT_GUARD_REL;
    (-delta + g, w.beta - delta - g)
}

/// H_delta(s) = int_0^1 L(s x + delta - beta/2) dx on A_delta.
pub fn big_h(w: &WalkParams, delta: f64, s: f64) -> Result<f64> {
    check_delta(w, delta)?;
    let (lo, hi) = a_delta_interval(w, delta);
    if !(lo..=hi).contains(&s) {
        return Err(Error::Domain {
            name: "H tilt s",
            value: s,
            lo,
            hi,
        });
    }
    let wc = *w;
    let off = delta - w.beta / 2.0;
    integrate(
        move |x| wc.log_mgf(s * x + off).expect("tilt inside guarded domain"),
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// H'_delta(s) = int_0^1 x L'(s x + delta - beta/2) dx; strictly increasing.
pub fn big_h_prime(w: &WalkParams, delta: f64, s: f64) -> Result<f64> {
    check_delta(w, delta)?;
    let (lo, hi) = a_delta_interval(w, delta);
    if !(lo..=hi).contains(&s) {
        return Err(Error::Domain {
            name: "H tilt s",
            value: s,
            lo,
            hi,
        });
    }
    let wc = *w;
    let off = delta - w.beta / 2.0;
    integrate(
        move |x| x * wc.log_mgf_d1(s * x + off).expect("tilt inside guarded domain"),
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// H''_delta(s) = int_0^1 x^2 L''(s x + delta - beta/2) dx > 0.
pub fn big_h_second(w: &WalkParams, delta: f64, s: f64) -> Result<f64> {
    check_delta(w, delta)?;
    let wc = *w;
    let off = delta - w.beta / 2.0;
    integrate(
        move |x| x * x * wc.log_mgf_d2(s * x + off).expect("tilt inside guarded domain"),
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// Discrete counterpart H_{n,delta}(s) with the pinned tilt schedule.
pub fn big_h_discrete(w: &WalkParams, delta: f64, n: usize, s: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain {
            name: "n",
            value: n as f64,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let mut acc = 0.0;
    for t in crate::walk::schedule_pinned(n, w.beta, delta, s) {
        acc += w.log_mgf(t)?;
    }
    Ok(acc / n as f64)
}

/// The inverse symmetric tilt: the unique h in [0, beta) with G'(h) = q.
pub fn h_tilde(w: &WalkParams, q: f64) -> Result<TiltSolution> {
    if !(q >= 0.0) {
        return Err(Error::Domain {
            name: "q",
            value: q,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if q == 0.0 {
        return Ok(TiltSolution {
            q,
            value: 0.0,
            residual: 0.0,
            bracket: (0.0, 0.0),
        });
    }
    let hi_limit = 2.0 * w.tilt_bound();
    let f = |h: f64| Ok(big_g_prime(w, h)? - q);
    let (lo, hi) = grow_bracket("h_tilde", &f, 0.0, 0.25 * w.beta, hi_limit)?;
    let r = solve_bracketed("h_tilde", f, lo, hi, ROOT_RES_TOL, ROOT_X_TOL)?;
    Ok(TiltSolution {
        q,
        value: r.x,
        residual: r.residual,
        bracket: r.bracket,
    })
}

/// The inverse pinned tilt: the unique s in A_delta with H'_delta(s) = q.
pub fn s_delta(w: &WalkParams, delta: f64, q: f64) -> Result<TiltSolution> {
    check_delta(w, delta)?;
    if delta == 0.0 {
        return Err(Error::Domain {
            name: "delta",
            value: delta,
            lo: f64::MIN_POSITIVE,
            hi: w.beta,
        });
    }
    let (a_lo, a_hi) = a_delta_interval(w, delta);
    let mid = w.beta / 2.0 - delta; // midpoint of A_delta
    let f = |s: f64| Ok(big_h_prime(w, delta, s)? - q);
    let fmid = f(mid)?;
    let (lo, hi) = if fmid == 0.0 {
        (mid, mid)
    } else if fmid < 0.0 {
        grow_bracket("s_delta", &f, mid, 0.125 * (a_hi - mid).abs().max(1e-6), a_hi)?
    } else {
        grow_bracket("s_delta", &f, mid, 0.125 * (mid - a_lo).abs().max(1e-6), a_lo)?
    };
    if lo == hi {
        return Ok(TiltSolution {
            q,
            value: lo,
            residual: 0.0,
            bracket: (a_lo, a_hi),
        });
    }
    let r = solve_bracketed("s_delta", f, lo, hi, ROOT_RES_TOL, ROOT_X_TOL)?;
    Ok(TiltSolution {
        q,
        value: r.x,
        residual: r.residual,
        bracket: r.bracket,
    })
}

/// delta_0(q) = beta/2 - h_tilde(q)/2; the largest wall reward that leaves
/// the symmetric tilt optimal.
pub fn delta0(w: &WalkParams, q: f64) -> Result<f64> {
    Ok(w.beta / 2.0 - h_tilde(w, q)?.value / 2.0)
}

/// The threshold q_delta below which psi sits on the G branch:
/// 0 for delta >= beta/2, else G'(beta - 2 delta).
pub fn q_delta_threshold(w: &WalkParams, delta: f64) -> Result<f64> {
    check_delta(w, delta)?;
    if delta >= w.beta / 2.0 {
        return Ok(0.0);
    }
    let h = (w.beta - 2.0 * delta).min(2.0 * w.tilt_bound());
    big_g_prime(w, h)
}

/// q*_delta: 0 for delta <= beta/2, else the unique root in q of
/// delta - beta/2 + s_delta(q) = 0.
pub fn q_star(w: &WalkParams, delta: f64) -> Result<f64> {
    check_delta(w, delta)?;
    if delta <= w.beta / 2.0 {
        return Ok(0.0);
    }
    let f = |q: f64| Ok(delta - w.beta / 2.0 + s_delta(w, delta, q)?.value);
    let (lo, hi) = grow_bracket("q_star", &f, 0.0, 0.5, f64::MAX)?;
    let r = solve_bracketed("q_star", f, lo, hi, 1e-11, 1e-13)?;
    Ok(r.x)
}

/// psi(q, delta): the exponential growth rate of the constrained walk
/// functional. Evaluated by quadrature on the active branch and
/// cross-checked against the integration-by-parts closed form.
pub fn psi(w: &WalkParams, delta: f64, q: f64) -> Result<PsiValue> {
    check_delta(w, delta)?;
    if !(q > 0.0) {
        return Err(Error::Domain {
            name: "q",
            value: q,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let ht = h_tilde(w, q)?;
    let d0 = w.beta / 2.0 - ht.value / 2.0;
    // Exact-tie rule: delta == delta_0(q) evaluates the G branch.
    if delta <= d0 {
        let value = big_g(w, ht.value)? - q * ht.value;
        let ibp = w.log_mgf(ht.value / 2.0)? - 2.0 * q * ht.value;
        if (value - ibp).abs() > 1e-9 {
            return Err(Error::NonConvergence {
                what: "psi G-branch IBP cross-check",
                residual: (value - ibp).abs(),
                target: 1e-9,
            });
        }
        Ok(PsiValue {
            q,
            delta,
            branch: PsiBranch::G,
            value,
            dq: -ht.value,
        })
    } else {
        let st = s_delta(w, delta, q)?;
        let value = big_h(w, delta, st.value)? - q * st.value;
        let ibp = w.log_mgf(st.value + delta - w.beta / 2.0)? - 2.0 * q * st.value;
        if (value - ibp).abs() > 1e-9 {
            return Err(Error::NonConvergence {
                what: "psi H-branch IBP cross-check",
                residual: (value - ibp).abs(),
                target: 1e-9,
            });
        }
        Ok(PsiValue {
            q,
            delta,
            branch: PsiBranch::H,
            value,
            dq: -st.value,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2() -> WalkParams {
        WalkParams::new(2.0).unwrap()
    }

    #[test]
    fn g_basic_values() {
        let w = w2();
        assert!(big_g(&w, 0.0).unwrap().abs() < 1e-14);
        let a = big_g(&w, 1.3).unwrap();
        let b = big_g(&w, -1.3).unwrap();
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn g_matches_dense_midpoint_oracle() {
        // 10k-point midpoint rule as an independent quadrature oracle.
        let w = w2();
        let n = 50_000;
        let mut acc = 0.0;
        for i in 0..n {
            let x = (i as f64 + 0.5) / n as f64;
            acc += w.log_mgf(1.0 * (x - 0.5)).unwrap();
        }
        acc /= n as f64;
        let v = big_g(&w, 1.0).unwrap();
        assert!((v - acc).abs() < 1e-9, "{v} vs {acc}");
    }

    #[test]
    fn g_prime_properties() {
        let w = w2();
        assert!(big_g_prime(&w, 0.0).unwrap().abs() < 1e-14);
        let eps = 1e-6;
        let fd = (big_g(&w, 0.8 + eps).unwrap() - big_g(&w, 0.8 - eps).unwrap()) / (2.0 * eps);
        assert!((big_g_prime(&w, 0.8).unwrap() - fd).abs() < 1e-6);
        let mut prev = 0.0;
        for i in 1..10 {
            let v = big_g_prime(&w, i as f64 * 0.2).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn g_discrete_values() {
        let w = w2();
        assert!(big_g_discrete(&w, 2, 0.0).unwrap().abs() < 1e-15);
        // n = 3 hand sum.
        let h = 0.9;
        let hand = (w.log_mgf(h / 2.0 * (1.0 - 1.0 / 3.0)).unwrap()
            + w.log_mgf(0.0).unwrap()
            + w.log_mgf(h / 2.0 * (1.0 - 5.0 / 3.0)).unwrap())
            / 3.0;
        assert!((big_g_discrete(&w, 3, h).unwrap() - hand).abs() < 1e-14);
    }

    #[test]
    fn g_discrete_second_order_convergence() {
        // |G_N(h) - G(h)| should shrink like 1/N^2: error ratio ~ 4 per doubling.
        let w = w2();
        let g = big_g(&w, 1.0).unwrap();
        let errs: Vec<f64> = [50usize, 100, 200]
            .iter()
            .map(|&n| (big_g_discrete(&w, n, 1.0).unwrap() - g).abs())
            .collect();
        let r1 = errs[0] / errs[1];
        let r2 = errs[1] / errs[2];
        assert!((r1 - 4.0).abs() < 0.5, "ratio {r1}");
        assert!((r2 - 4.0).abs() < 0.5, "ratio {r2}");
    }

    #[test]
    fn h_basic_values() {
        let w = w2();
        // s = 0: constant integrand L(delta - beta/2).
        let v = big_h(&w, 0.7, 0.0).unwrap();
        assert!((v - w.log_mgf(-0.3).unwrap()).abs() < 1e-12);
        // Dense-quadrature oracle at s = 0.5.
        let n = 50_000;
        let mut acc = 0.0;
        for i in 0..n {
            let x = (i as f64 + 0.5) / n as f64;
            acc += w.log_mgf(0.5 * x - 0.3).unwrap();
        }
        acc /= n as f64;
        assert!((big_h(&w, 0.7, 0.5).unwrap() - acc).abs() < 1e-9);
    }

    #[test]
    fn h_bounded_on_domain() {
        // H_delta stays below the change-of-variable bound (1/|s|) int L.
        let w = w2();
        let delta = 0.7;
        let bound_int = integrate(
            |x| w.log_mgf(x).unwrap(),
            -w.tilt_bound(),
            w.tilt_bound(),
            1e-10,
        )
        .unwrap();
        let (lo, hi) = a_delta_interval(&w, delta);
        for i in 1..100 {
            let s = lo + (hi - lo) * i as f64 / 100.0;
            if s.abs() < 0.05 {
                continue;
            }
            let v = big_h(&w, delta, s).unwrap();
            assert!(v <= bound_int / s.abs() + 1e-9, "s = {s}: {v}");
        }
    }

    #[test]
    fn h_prime_sign_at_reflection_point() {
        // sign(H'_delta(beta/2 - delta)) = sign(delta - beta/2).
        let w = w2();
        for delta in [0.6, 1.4] {
            let v = big_h_prime(&w, delta, w.beta / 2.0 - delta).unwrap();
            assert_eq!(v.signum(), (delta - w.beta / 2.0).signum(), "delta {delta}");
        }
        // Odd integrand at delta = beta/2, s = 0.
        assert!(big_h_prime(&w, 1.0, 0.0).unwrap().abs() < 1e-13);
    }

    #[test]
    fn h_prime_matches_finite_difference() {
        let w = w2();
        let eps = 1e-6;
        let fd =
            (big_h(&w, 0.7, 0.4 + eps).unwrap() - big_h(&w, 0.7, 0.4 - eps).unwrap()) / (2.0 * eps);
        assert!((big_h_prime(&w, 0.7, 0.4).unwrap() - fd).abs() < 1e-6);
    }

    #[test]
    fn h_discrete_values() {
        let w = w2();
        // n = 2 hand sum at beta=2, delta=0.7, s=0.4.
        let (delta, s) = (0.7, 0.4);
        let hand = (w.log_mgf(delta - 1.0 + s * 3.0 / 4.0).unwrap()
            + w.log_mgf(delta - 1.0 + s * 1.0 / 4.0).unwrap())
            / 2.0;
        assert!((big_h_discrete(&w, delta, 2, s).unwrap() - hand).abs() < 1e-14);
        // s = 0 gives exactly L(delta - beta/2) for every n.
        for n in [1usize, 3, 17] {
            let v = big_h_discrete(&w, delta, n, 0.0).unwrap();
            assert!((v - w.log_mgf(delta - 1.0).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn h_discrete_second_order_convergence() {
        let w = w2();
        let (delta, s) = (0.7, 0.4);
        let h = big_h(&w, delta, s).unwrap();
        let e50 = (big_h_discrete(&w, delta, 50, s).unwrap() - h).abs();
        let e100 = (big_h_discrete(&w, delta, 100, s).unwrap() - h).abs();
        let ratio = e50 / e100;
        assert!((ratio - 4.0).abs() < 0.5, "ratio {ratio}");
    }

    #[test]
    fn h_tilde_round_trips() {
        let w = w2();
        assert_eq!(h_tilde(&w, 0.0).unwrap().value, 0.0);
        for q in [0.3, 1.0, 3.0] {
            let t = h_tilde(&w, q).unwrap();
            let back = big_g_prime(&w, t.value).unwrap();
            assert!((back - q).abs() < 1e-10, "q {q}: {back}");
        }
        assert!(h_tilde(&w, 1.0).unwrap().value < h_tilde(&w, 2.0).unwrap().value);
    }

    #[test]
    fn s_delta_round_trips_and_gluing() {
        let w = w2();
        // delta = beta/2: q = 0 gives s = 0.
        let t = s_delta(&w, 1.0, 0.0).unwrap();
        assert!(t.value.abs() < 1e-11);
        // Round trip at (0.7, 1).
        let t = s_delta(&w, 0.7, 1.0).unwrap();
        assert!((big_h_prime(&w, 0.7, t.value).unwrap() - 1.0).abs() < 1e-10);
        // Gluing identity at delta = 0.6: s_delta(q_delta) = h_tilde(q_delta)
        // = beta - 2 delta.
        let delta = 0.6;
        let qd = q_delta_threshold(&w, delta).unwrap();
        let s = s_delta(&w, delta, qd).unwrap().value;
        let h = h_tilde(&w, qd).unwrap().value;
        assert!((s - (w.beta - 2.0 * delta)).abs() < 1e-9, "s {s}");
        assert!((h - (w.beta - 2.0 * delta)).abs() < 1e-9, "h {h}");
    }

    #[test]
    fn delta0_properties() {
        let w = w2();
        assert!((delta0(&w, 0.0).unwrap() - 1.0).abs() < 1e-14);
        let mut prev = f64::INFINITY;
        for q in [0.2, 0.5, 1.0, 2.0] {
            let d = delta0(&w, q).unwrap();
            assert!(d < prev);
            prev = d;
        }
        // Cross-check against h_tilde at q = 1.
        let h = h_tilde(&w, 1.0).unwrap().value;
        assert!((delta0(&w, 1.0).unwrap() - (1.0 - h / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn q_delta_threshold_properties() {
        let w = w2();
        assert_eq!(q_delta_threshold(&w, 1.0).unwrap(), 0.0);
        assert_eq!(q_delta_threshold(&w, 1.7).unwrap(), 0.0);
        // Continuity toward zero at delta -> beta/2 from below.
        assert!(q_delta_threshold(&w, 0.999_999 * 1.0).unwrap() < 1e-5);
        // At delta = 0 the threshold saturates at the guarded edge of the
        // G-branch; the round trip h_tilde(q_delta) = beta - 2 delta still
        // holds to guard precision.
        let q0 = q_delta_threshold(&w, 0.0).unwrap();
        let h = h_tilde(&w, q0).unwrap().value;
        assert!((h - w.beta).abs() < 1e-6, "h {h}");
    }

    #[test]
    fn q_star_properties() {
        let w = w2();
        assert_eq!(q_star(&w, 0.6).unwrap(), 0.0);
        let qs = q_star(&w, 1.4).unwrap();
        assert!(qs > 0.0);
        let s = s_delta(&w, 1.4, qs).unwrap().value;
        assert!((s + 1.4 - 1.0).abs() < 1e-10, "residual {}", s + 0.4);
    }

    #[test]
    fn psi_branch_structure() {
        let w = w2();
        // psi(q, delta) = psi(q, 0) on the G branch.
        let q = 1.0;
        let d0 = delta0(&w, q).unwrap();
        let a = psi(&w, d0 / 2.0, q).unwrap();
        let b = psi(&w, 0.0, q).unwrap();
        assert_eq!(a.branch, PsiBranch::G);
        assert!((a.value - b.value).abs() < 1e-12);
        // Strict inequality above delta_0.
        let c = psi(&w, 0.9, q).unwrap();
        if 0.9 > d0 {
            assert_eq!(c.branch, PsiBranch::H);
            assert!(c.value > b.value);
        }
    }

    #[test]
    fn psi_c1_gluing_at_q_delta() {
        // Left and right q-derivatives of psi coincide at q_delta.
        let w = w2();
        let delta = 0.6;
        let qd = q_delta_threshold(&w, delta).unwrap();
        let left = psi(&w, delta, qd * (1.0 - 1e-9)).unwrap();
        let right = psi(&w, delta, qd * (1.0 + 1e-9)).unwrap();
        assert_eq!(left.branch, PsiBranch::G);
        assert_eq!(right.branch, PsiBranch::H);
        assert!(
            (left.dq - right.dq).abs() < 1e-8,
            "dq gap {}",
            (left.dq - right.dq).abs()
        );
    }

    #[test]
    fn psi_strictly_larger_above_delta0_grid() {
        let w = w2();
        let delta = 0.9;
        for q in [0.5, 1.0, 2.0, 4.0] {
            let d0 = delta0(&w, q).unwrap();
            let with_wall = psi(&w, delta, q).unwrap().value;
            let without = psi(&w, 0.0, q).unwrap().value;
            if delta > d0 {
                assert!(with_wall > without, "q {q}");
            } else {
                assert!((with_wall - without).abs() < 1e-12, "q {q}");
            }
        }
    }

    #[test]
    fn ibp_identities_on_grid() {
        // |H_delta(s_delta(q)) - [L(s+delta-beta/2) - q s]| <= 1e-9 and the
        // G-branch analogue, on a 5x5 (beta, q) grid.
        for beta in [1.3, 1.7, 2.0, 3.0, 5.0] {
            let w = WalkParams::new(beta).unwrap();
            let delta = 0.4 * beta;
            for q in [0.2, 0.6, 1.0, 2.0, 4.0] {
                let ht = h_tilde(&w, q).unwrap().value;
                let lhs_g = big_g(&w, ht).unwrap();
                let rhs_g = w.log_mgf(ht / 2.0).unwrap() - q * ht;
                assert!((lhs_g - rhs_g).abs() < 1e-9, "G: beta {beta} q {q}");
                let st = s_delta(&w, delta, q).unwrap().value;
                let lhs_h = big_h(&w, delta, st).unwrap();
                let rhs_h = w.log_mgf(st + delta - beta / 2.0).unwrap() - q * st;
                assert!((lhs_h - rhs_h).abs() < 1e-9, "H: beta {beta} q {q}");
            }
        }
    }

    #[test]
    fn transition_gap_constant_richardson() {
        // [psi(q, delta_0 + eps) - psi(q, 0)] / eps^2 -> C with
        // C = L'(h/2)(L'(h/2) - 4q) / (2 h (L'(h/2) - 2q)).
        let w = w2();
        let q = 1.0;
        let ht = h_tilde(&w, q).unwrap().value;
        let lp = w.log_mgf_d1(ht / 2.0).unwrap();
        let c_exact = lp * (lp - 4.0 * q) / (2.0 * ht * (lp - 2.0 * q));
        assert!(lp > 4.0 * q, "positivity of the gap constant");
        let d0 = delta0(&w, q).unwrap();
        let base = psi(&w, 0.0, q).unwrap().value;
        let r = |eps: f64| (psi(&w, d0 + eps, q).unwrap().value - base) / (eps * eps);
        let r1 = r(1e-2);
        let r2 = r(5e-3);
        let r3 = r(2.5e-3);
        let rich = 2.0 * r3 - r2; // kills the O(eps) correction
        assert!(
            (rich - c_exact).abs() / c_exact.abs() < 0.02,
            "richardson {rich} vs exact {c_exact} (raw {r1}, {r2}, {r3})"
        );
    }

    #[test]
    fn gap_constant_positivity_grid() {
        // L'(h_tilde(q)/2) > 4 q for all tested q.
        let w = w2();
        for q in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let ht = h_tilde(&w, q).unwrap().value;
            assert!(w.log_mgf_d1(ht / 2.0).unwrap() > 4.0 * q, "q {q}");
        }
    }
}
