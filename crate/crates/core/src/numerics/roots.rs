//! Bracketed scalar root finding and one-dimensional maximization.

use crate::error::{Error, Result};

/// Residual tolerance used by the tilt inverters.
pub const ROOT_RES_TOL: f64 = 1e-12;
/// Bracket-width tolerance used by the tilt inverters.
pub const ROOT_X_TOL: f64 = 1e-13;

/// A solved scalar root with its bracket and residual.
#[derive(Debug, Clone, Copy)]
pub struct RootResult {
    pub x: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Bisection-secant hybrid on a sign-changing bracket.
///
/// Keeps a valid bracket at all times; takes the secant step when it lands
/// strictly inside and shrinks the bracket, otherwise bisects.
pub fn solve_bracketed<F: Fn(f64) -> Result<f64>>(
    what: &'static str,
    f: F,
    mut lo: f64,
    mut hi: f64,
    res_tol: f64,
    x_tol: f64,
) -> Result<RootResult> {
    let mut flo = f(lo)?;
    let mut fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(RootResult {
            x: lo,
            residual: 0.0,
            bracket: (lo, hi),
            iterations: 0,
        });
    }
    if fhi == 0.0 {
        return Ok(RootResult {
            x: hi,
            residual: 0.0,
            bracket: (lo, hi),
            iterations: 0,
        });
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::BracketFailure {
            what,
            lo,
            hi,
            flo,
            fhi,
        });
    }
    let mut best = if flo.abs() < fhi.abs() { (lo, flo) } else { (hi, fhi) };
    for it in 0..200 {
        if best.1.abs() <= res_tol || (hi - lo).abs() <= x_tol {
            return Ok(RootResult {
                x: best.0,
                residual: best.1,
                bracket: (lo, hi),
                iterations: it,
            });
        }
        let mid = 0.5 * (lo + hi);
        let secant = lo - flo * (hi - lo) / (fhi - flo);
        let x = if secant.is_finite() && secant > lo && secant < hi {
            // Guard against stagnation near one endpoint.
            let margin = 0.01 * (hi - lo);
            if secant - lo < margin || hi - secant < margin {
                mid
            } else {
                secant
            }
        } else {
            mid
        };
        let fx = f(x)?;
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 {
            return Ok(RootResult {
                x,
                residual: 0.0,
                bracket: (lo, hi),
                iterations: it + 1,
            });
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    Ok(RootResult {
        x: best.0,
        residual: best.1,
        bracket: (lo, hi),
        iterations: 200,
    })
}

/// Grow a bracket geometrically from `start` towards `limit` until the sign
/// of `f` flips relative to `f(start)`.
pub fn grow_bracket<F: Fn(f64) -> Result<f64>>(
    what: &'static str,
    f: &F,
    start: f64,
    first_step: f64,
    limit: f64,
) -> Result<(f64, f64)> {
    let f0 = f(start)?;
    if f0 == 0.0 {
        return Ok((start, start));
    }
    let dir = (limit - start).signum();
    let mut step = first_step.abs() * dir;
    let mut prev = start;
    for _ in 0..200 {
        let mut x = prev + step;
        if (limit - x) * dir < 0.0 {
            x = limit;
        }
        let fx = f(x)?;
        if fx == 0.0 || fx.signum() != f0.signum() {
            return Ok(if dir > 0.0 { (prev, x) } else { (x, prev) });
        }
        if x == limit {
            return Err(Error::BracketFailure {
                what,
                lo: start.min(limit),
                hi: start.max(limit),
                flo: f0,
                fhi: fx,
            });
        }
        prev = x;
        step *= 2.0;
    }
    Err(Error::BracketFailure {
        what,
        lo: start,
        hi: limit,
        flo: f0,
        fhi: f64::NAN,
    })
}

/// Golden-section maximization of a unimodal function on [a, b].
pub fn golden_max<F: Fn(f64) -> Result<f64>>(
    f: F,
    mut a: f64,
    mut b: f64,
    x_tol: f64,
) -> Result<(f64, f64)> {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..300 {
        if (b - a).abs() <= x_tol {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}
