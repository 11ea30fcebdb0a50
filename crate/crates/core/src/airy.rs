//! Airy function of the first kind on [−20, 20].
//!
//! Maclaurin series on [−7, 5]; outside it, the asymptotic expansions
//! truncated at their smallest term. The series range is wider than the
//! usual |x| ≤ 4 because at x = 4 the truncated expansion is only good to
//! about 2e−8 absolute.

use crate::error::{Error, Result};
use std::f64::consts::PI;

pub const AIRY_RANGE: (f64, f64) = (-20.0, 20.0);

const AI0: f64 = 0.355_028_053_887_817_24;
const AIP0: f64 = 0.258_819_403_792_806_8;

pub fn airy_ai(x: f64) -> Result<f64> {
    let (lo, hi) = AIRY_RANGE;
    if !(lo..=hi).contains(&x) {
        return Err(Error::Range { x, lo, hi });
    }
    Ok(if (-7.0..=5.0).contains(&x) {
        maclaurin(x)
    } else if x > 0.0 {
        decaying(x)
    } else {
        oscillating(-x)
    })
}

fn maclaurin(x: f64) -> f64 {
    let x3 = x * x * x;
    let mut f = 1.0;
    let mut g = x;
    let mut tf = 1.0;
    let mut tg = x;
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        tf *= x3 / ((k3 - 1.0) * k3);
        tg *= x3 / (k3 * (k3 + 1.0));
        f += tf;
        g += tg;
        if tf.abs() < 1e-18 * f.abs().max(1.0) && tg.abs() < 1e-18 * g.abs().max(1.0) {
            break;
        }
    }
    AI0 * f - AIP0 * g
}

/// u_k of the large-argument expansion.
fn u_coefficients(n: usize) -> Vec<f64> {
    let mut u = vec![1.0; n];
    for k in 1..n {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
    }
    u
}

fn decaying(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let u = u_coefficients(80);
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    let mut term = 1.0;
    for (k, uk) in u.iter().enumerate() {
        term = if k == 0 { 1.0 } else { term * (-1.0) / zeta };
        let t = uk * term;
        if t.abs() > last {
            break;
        }
        sum += t;
        last = t.abs();
        if last < 1e-17 {
            break;
        }
    }
    (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.25)) * sum
}

fn oscillating(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let u = u_coefficients(80);
    let (mut p, mut q) = (0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut pow = 1.0;
    for (k, uk) in u.iter().enumerate() {
        if k > 0 {
            pow /= zeta;
        }
        let t = uk * pow;
        if t > last {
            break;
        }
        last = t;
        // signs follow (−1)^{⌊k/2⌋}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
        if t < 1e-17 {
            break;
        }
    }
    let phase = zeta + 0.25 * PI;
    (phase.sin() * p - phase.cos() * q) / (PI.sqrt() * x.powf(0.25))
}
