//! Asymptotic escape probabilities: per tooth, into all teeth, per row along
//! the spine, and along the whole spine, for walks started at (0, j0).
//!
//! Spine quantities count both spine directions.

use crate::asymptotics::tooth_prefactor;
use crate::contour::sqrt_cut;
use crate::error::{Error, Result};
use crate::quad::{integrate_doubling, integrate_graded_checked};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

const TOL: f64 = 1e-13;

/// |w_−(e^{−iφ})|² for φ ∈ (0, π).
fn w_minus_sq_on_circle(phi: f64) -> f64 {
    let z = Complex64::from_polar(1.0, -phi);
    let s = sqrt_cut(z).expect("unit circle meets the cut only at its endpoint");
    let wp = 0.5 * (1.0 + z + s);
    1.0 / wp.norm_sqr()
}

/// sin²φ/√((5 + 3cos φ)(1 − cos φ)) written without the cancelling factor.
fn base_weight(phi: f64) -> f64 {
    SQRT_2 * (0.5 * phi).sin() * (1.0 + phi.cos()) / (5.0 + 3.0 * phi.cos()).sqrt()
}

fn levels_for(n: u64) -> usize {
    6 + (64 - n.leading_zeros()) as usize
}

/// (1/π)∫_0^π f(φ) dφ with φ = s².
fn circle_integral<F: Fn(f64) -> f64>(f: F, levels: usize) -> Result<f64> {
    let v = integrate_graded_checked(|s| 2.0 * s * f(s * s), 0.0, PI.sqrt(), levels, 32, 1e-9)?;
    Ok(v / PI)
}

/// P_T(n): probability eventually found in tooth n (excluding the spine site).
pub fn prob_tooth(n: i64) -> Result<f64> {
    let p = n.unsigned_abs();
    circle_integral(
        |phi| base_weight(phi) * w_minus_sq_on_circle(phi).powi(p as i32),
        levels_for(p),
    )
}

/// 2π Σ|g|² over both oscillatory tooth saddles at u = 2 sin φ. With
/// |V''| = 2cos φ = du/dφ the Jacobian cancels, so ∫ c(u) du = ∫ this dφ.
fn tooth_density_angle(phi: f64, n: i64, j0: i64) -> Result<f64> {
    let mut total = 0.0;
    for z in [Complex64::from_polar(1.0, -phi), -Complex64::from_polar(1.0, phi)] {
        total += tooth_prefactor(z, n, j0)?.norm_sqr();
    }
    Ok(2.0 * PI * total)
}

fn profile_integral(n: i64, j0: i64) -> Result<f64> {
    let f = |phi: f64| tooth_density_angle(phi, n, j0).unwrap_or(f64::NAN);
    let v = integrate_doubling(f, 0.0, 0.5 * PI, 1e-13, 32 + 8 * j0 as usize, 1 << 16)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Quadrature("profile hit the branch cut".into()))
    }
}

/// P_T(n) as ∫_0^2 c(u, n) du from the coarse-grained saddle profile.
pub fn prob_tooth_from_profile(n: i64) -> Result<f64> {
    profile_integral(n, 0)
}

/// P_Teeth = Σ_n P_T(n), resummed under the integral.
pub fn prob_teeth_total() -> Result<f64> {
    circle_integral(
        |phi| {
            let x = w_minus_sq_on_circle(phi);
            base_weight(phi) * (1.0 + x) / (1.0 - x)
        },
        8,
    )
}

/// Σ_n P_T(n) term by term, stopping once a term drops below `cutoff`.
pub fn prob_teeth_by_summation(cutoff: f64) -> Result<f64> {
    let mut total = prob_tooth(0)?;
    for n in 1.. {
        let term = 2.0 * prob_tooth(n)?;
        total += term;
        if term < cutoff {
            break;
        }
    }
    Ok(total)
}

/// (1/π)∫_{π/2}^{π} f(z) dα with z = 2cos α − 1 ∈ (−3, −1).
fn cut_integral<F: Fn(f64) -> f64>(f: F, nodes: usize) -> Result<f64> {
    let v = integrate_doubling(|a| f(2.0 * a.cos() - 1.0), 0.5 * PI, PI, TOL, nodes, 1 << 14)?;
    Ok(v / PI)
}

/// P_S(j): probability eventually found at tooth height j while travelling
/// along the spine.
pub fn prob_spine_dist(j: i64) -> Result<f64> {
    if j < 0 {
        return Err(Error::Domain("j must be nonnegative".into()));
    }
    cut_integral(|z| (1.0 - z.powi(-2)).powi(2) * z.powi(-2 * j as i32), 64)
}

/// P_Spine = Σ_j P_S(j).
pub fn prob_spine_total() -> Result<f64> {
    cut_integral(|z| 1.0 - z.powi(-2), 64)
}

/// Escape probability into tooth n for a walk started at (0, j0).
pub fn prob_tooth_j0(n: i64, j0: i64) -> Result<f64> {
    if j0 < 0 {
        return Err(Error::Domain("j0 must be nonnegative".into()));
    }
    if n != 0 || j0 == 0 {
        return prob_tooth(n);
    }
    profile_integral(0, j0)
}

pub fn prob_teeth_total_j0(j0: i64) -> Result<f64> {
    if j0 == 0 {
        return prob_teeth_total();
    }
    Ok(prob_teeth_total()? - prob_tooth(0)? + prob_tooth_j0(0, j0)?)
}

/// 1 − P_teeth(j0).
pub fn prob_spine_total_j0(j0: i64) -> Result<f64> {
    Ok(1.0 - prob_teeth_total_j0(j0)?)
}

/// Spine escape from (0, j0) evaluated directly on the cut,
/// (1/π)∫(1 − z^{−2}) z^{−2j0} dα.
pub fn prob_spine_total_j0_direct(j0: i64) -> Result<f64> {
    if j0 < 0 {
        return Err(Error::Domain("j0 must be nonnegative".into()));
    }
    cut_integral(|z| (1.0 - z.powi(-2)) * z.powi(-2 * j0 as i32), 64)
}
