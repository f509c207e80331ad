//! Limiting Wulff profiles of the collapsed globule, with and without
//! pinning, and the convex/concave classification of the globule shape.

use crate::analytic::{maximize_profile, s_delta};
use crate::error::{Error, Result};
use crate::numerics::{integrate, QUAD_TOL};
use crate::phase::{beta_c, delta_c_explicit, delta_check};
use crate::walk::WalkParams;

/// Shape classification of the rescaled globule boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    /// Concave profile curve: convex globule.
    Concave,
    /// Convex profile curve: concave globule.
    Convex,
    /// Unpinned shape (delta <= delta_c).
    Free,
}

/// A sampled Wulff profile, normalized to unit horizontal extent.
#[derive(Debug, Clone)]
pub struct WulffProfile {
    pub beta: f64,
    pub delta: f64,
    pub t_grid: Vec<f64>,
    pub w_values: Vec<f64>,
    pub classification: ShapeClass,
}

/// Default grid resolution for exported profiles.
pub const PROFILE_POINTS: usize = 512;

fn free_tilt(w: &WalkParams) -> Result<f64> {
    let p = maximize_profile(w, 0.0)?;
    let q_beta = 1.0 / (p.a_bar * p.a_bar);
    Ok(crate::analytic::profile::h_tilde_widened(w, q_beta)?.value)
}

/// The free Wulff shape W_beta(t) = int_0^t L'((1/2 - x) h_tilde(q_beta)) dx.
pub fn wulff_free(w: &WalkParams, t: f64) -> Result<f64> {
    let h = free_tilt(w)?;
    wulff_free_with_tilt(w, h, t)
}

fn wulff_free_with_tilt(w: &WalkParams, h: f64, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    integrate(
        |x| w.log_mgf_d1(h * (0.5 - x)).expect("tilt inside guarded domain"),
        0.0,
        t,
        QUAD_TOL,
    )
}

/// The pinned Wulff shape
/// W_{beta,delta}(t) = int_0^t L'(s_delta(q_bar)(1 - x) + delta - beta/2) dx
/// for delta_c < delta inside the good region.
pub fn wulff_pinned(w: &WalkParams, delta: f64, t: f64) -> Result<f64> {
    let s = pinned_tilt(w, delta)?;
    wulff_pinned_with_tilt(w, delta, s, t)
}

fn pinned_tilt(w: &WalkParams, delta: f64) -> Result<f64> {
    let dc = delta_c_explicit(w)?;
    if delta <= dc {
        return Err(Error::Regime {
            msg: format!("pinned Wulff shape needs delta > delta_c = {dc}, got {delta}"),
        });
    }
    let p = maximize_profile(w, delta)?;
    let q_bar = 1.0 / (p.a_bar * p.a_bar);
    Ok(s_delta(w, delta, q_bar)?.value)
}

fn wulff_pinned_with_tilt(w: &WalkParams, delta: f64, s: f64, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let off = delta - w.beta / 2.0;
    integrate(
        |x| w.log_mgf_d1(s * (1.0 - x) + off).expect("tilt inside guarded domain"),
        0.0,
        t,
        QUAD_TOL,
    )
}

/// Classify the globule shape from the sign of W'' on (delta_c, beta):
/// the sign of the pinned profile's second derivative equals
/// -sign(s_delta(q_bar)) pointwise, which flips exactly at delta_check.
pub fn classify_shape(w: &WalkParams, delta: f64) -> Result<ShapeClass> {
    if w.beta <= beta_c() {
        return Err(Error::Regime {
            msg: format!("shape classification needs beta > beta_c, got {}", w.beta),
        });
    }
    let dc = delta_c_explicit(w)?;
    if delta <= dc || delta >= w.beta {
        return Err(Error::Regime {
            msg: format!(
                "shape classification is defined on the adsorbed regime \
                 delta in ({dc}, {}), got {delta}",
                w.beta
            ),
        });
    }
    let dchk = delta_check(w)?;
    if (delta - dchk).abs() <= 1e-12 {
        return Err(Error::DegenerateShape {
            delta,
            delta_check: dchk,
        });
    }
    // Exact sign route: sign(W'') = -sign(s_delta(q_bar)); the classification
    // via delta_check is equivalent and cheaper, and the equivalence is
    // asserted in tests.
    if delta < dchk {
        Ok(ShapeClass::Concave)
    } else {
        Ok(ShapeClass::Convex)
    }
}

/// Sample the free Wulff profile on a uniform grid.
pub fn free_profile(w: &WalkParams, n_points: usize) -> Result<WulffProfile> {
    let h = free_tilt(w)?;
    let n = n_points.max(2);
    let mut t_grid = Vec::with_capacity(n);
    let mut w_values = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        t_grid.push(t);
        w_values.push(wulff_free_with_tilt(w, h, t)?);
    }
    Ok(WulffProfile {
        beta: w.beta,
        delta: 0.0,
        t_grid,
        w_values,
        classification: ShapeClass::Free,
    })
}

/// Sample the pinned Wulff profile on a uniform grid.
pub fn pinned_profile(w: &WalkParams, delta: f64, n_points: usize) -> Result<WulffProfile> {
    let s = pinned_tilt(w, delta)?;
    let classification = classify_shape(w, delta)?;
    let n = n_points.max(2);
    let mut t_grid = Vec::with_capacity(n);
    let mut w_values = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        t_grid.push(t);
        w_values.push(wulff_pinned_with_tilt(w, delta, s, t)?);
    }
    Ok(WulffProfile {
        beta: w.beta,
        delta,
        t_grid,
        w_values,
        classification,
    })
}

/// Boundary polyline of the limit set
/// S_beta = {(x, y): x in [0, a_beta], |y| <= (a_beta/2) W_beta(x / a_beta)},
/// top edge left to right then bottom edge back.
pub fn shape_boundary(w: &WalkParams, n_points: usize) -> Result<Vec<(f64, f64)>> {
    let p = maximize_profile(w, 0.0)?;
    let a_beta = p.a_bar;
    let h = free_tilt(w)?;
    let n = n_points.max(2);
    let mut upper = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        let y = 0.5 * a_beta * wulff_free_with_tilt(w, h, t)?;
        upper.push((a_beta * t, y));
    }
    let mut boundary = upper.clone();
    for &(x, y) in upper.iter().rev() {
        boundary.push((x, -y));
    }
    Ok(boundary)
}

/// Diagnostic (not an assertion): L1 gap between the pinned profile just
/// above delta_c and the free profile. The unpinned-shape invariance below
/// delta_c is stated without proof in the source material, so this is
/// recorded for comparison against sampling output only.
pub fn diagnostic_free_pinned_gap(w: &WalkParams, eps: f64, n: usize) -> Result<f64> {
    let dc = delta_c_explicit(w)?;
    let free = free_profile(w, n)?;
    let pinned = pinned_profile(w, dc + eps, n)?;
    let mut gap = 0.0;
    for i in 0..free.w_values.len() {
        gap += (free.w_values[i] - pinned.w_values[i]).abs();
    }
    Ok(gap / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2() -> WalkParams {
        WalkParams::new(2.0).unwrap()
    }

    #[test]
    fn free_profile_basics() {
        let w = w2();
        assert!(wulff_free(&w, 0.0).unwrap().abs() < 1e-15);
        let p = free_profile(&w, 201).unwrap();
        // Tent shape: nonnegative, zero at both ends (parity of L').
        assert!(p.w_values[200].abs() < 1e-9, "W(1) = {}", p.w_values[200]);
        assert!(p.w_values.iter().all(|&v| v > -1e-12));
        // Derivative antisymmetry W'(t) = -W'(1-t) through the integrand.
        let h = free_tilt(&w).unwrap();
        for t in [0.1, 0.3, 0.45] {
            let d1 = w.log_mgf_d1(h * (0.5 - t)).unwrap();
            let d2 = w.log_mgf_d1(h * (0.5 - (1.0 - t))).unwrap();
            assert!((d1 + d2).abs() < 1e-12);
        }
        // Concavity: second differences negative on the interior grid.
        for i in 1..200 {
            let dd = p.w_values[i + 1] - 2.0 * p.w_values[i] + p.w_values[i - 1];
            assert!(dd < 0.0, "i {i}");
        }
    }

    #[test]
    fn free_profile_derivative_monotone() {
        let w = w2();
        let p = free_profile(&w, 200).unwrap();
        let mut prev = f64::INFINITY;
        for i in 1..p.w_values.len() {
            let d = p.w_values[i] - p.w_values[i - 1];
            assert!(d < prev + 1e-12);
            prev = d;
        }
    }

    #[test]
    fn pinned_profile_basics() {
        let w = w2();
        let dc = delta_c_explicit(&w).unwrap();
        let delta = dc + 0.05;
        assert!(wulff_pinned(&w, delta, 0.0).unwrap().abs() < 1e-15);
        assert!(wulff_pinned(&w, dc / 2.0, 0.3).is_err());
        // Slightly above delta_c the profile is concave.
        assert_eq!(classify_shape(&w, delta).unwrap(), ShapeClass::Concave);
        let p = pinned_profile(&w, delta, 101).unwrap();
        for i in 1..100 {
            let dd = p.w_values[i + 1] - 2.0 * p.w_values[i] + p.w_values[i - 1];
            assert!(dd < 1e-12, "i {i}");
        }
        // Value at t = 1 against a dense midpoint-rule oracle.
        let s = pinned_tilt(&w, delta).unwrap();
        let n = 20_000;
        let mut acc = 0.0;
        for i in 0..n {
            let x = (i as f64 + 0.5) / n as f64;
            acc += w.log_mgf_d1(s * (1.0 - x) + delta - 1.0).unwrap();
        }
        acc /= n as f64;
        let v = wulff_pinned(&w, delta, 1.0).unwrap();
        assert!((v - acc).abs() < 1e-7, "{v} vs {acc}");
    }

    #[test]
    fn shape_flip_at_delta_check() {
        let w = w2();
        let dchk = delta_check(&w).unwrap();
        assert_eq!(
            classify_shape(&w, dchk - 0.02).unwrap(),
            ShapeClass::Concave
        );
        assert_eq!(classify_shape(&w, dchk + 0.02).unwrap(), ShapeClass::Convex);
        assert!(matches!(
            classify_shape(&w, dchk),
            Err(Error::DegenerateShape { .. })
        ));
        // Exact sign route: sign(W'') = -sign(s_delta(q_bar)) flips across
        // delta_check; checked via the pinned tilt directly.
        let s_lo = pinned_tilt(&w, dchk - 0.02).unwrap();
        let s_hi = pinned_tilt(&w, dchk + 0.02).unwrap();
        assert!(s_lo > 0.0 && s_hi < 0.0, "s {s_lo} / {s_hi}");
        // And the interior-grid second differences agree with the sign.
        let conc = pinned_profile(&w, dchk - 0.02, 64).unwrap();
        let conv = pinned_profile(&w, dchk + 0.02, 64).unwrap();
        for i in 1..63 {
            let dd_c = conc.w_values[i + 1] - 2.0 * conc.w_values[i] + conc.w_values[i - 1];
            let dd_v = conv.w_values[i + 1] - 2.0 * conv.w_values[i] + conv.w_values[i - 1];
            assert!(dd_c < 0.0 && dd_v > 0.0, "i {i}");
        }
    }

    #[test]
    fn boundary_geometry() {
        let w = WalkParams::new(20.0).unwrap();
        let b = shape_boundary(&w, 256).unwrap();
        // Symmetric about y = 0 and pinched at both ends.
        assert!(b[0].1.abs() < 1e-9);
        assert!(b[255].1.abs() < 1e-7);
        let n = 256;
        for i in 0..n {
            let (x_top, y_top) = b[i];
            let (x_bot, y_bot) = b[2 * n - 1 - i];
            assert!((x_top - x_bot).abs() < 1e-12);
            assert!((y_top + y_bot).abs() < 1e-12);
        }
        // Enclosed area a_beta^2 * int W = a_beta^2 q_beta = 1; at beta = 20
        // the shape approaches the unit square, area within 10% of 1.
        let mut area = 0.0;
        for i in 1..n {
            let (x0, y0) = b[i - 1];
            let (x1, y1) = b[i];
            area += (x1 - x0) * (y0 + y1); // full height = 2 * mid of |y|
        }
        assert!((area - 1.0).abs() < 0.1, "area {area}");
    }

    #[test]
    fn free_pinned_gap_is_recorded_not_asserted() {
        let w = w2();
        let gap = diagnostic_free_pinned_gap(&w, 1e-3, 64).unwrap();
        assert!(gap.is_finite());
        eprintln!("free-vs-pinned Wulff L1 gap near delta_c: {gap:.6}");
    }
}
