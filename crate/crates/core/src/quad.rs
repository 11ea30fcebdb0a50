//! Quadrature rules and the integer-order Bessel sequence shared by the engines.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    fn build(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = (n + 1) / 2;
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Cached rule with `n` nodes.
    pub fn get(n: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = cache.lock().unwrap().get(&n) {
            return rule.clone();
        }
        let rule = Arc::new(GaussLegendre::build(n));
        cache.lock().unwrap().insert(n, rule.clone());
        rule
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = 0.5 * (b - a);
        let c = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
        &self,
        a: f64,
        b: f64,
        mut f: F,
    ) -> Complex64 {
        self.mapped(a, b).map(|(x, w)| f(x) * w).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss-Legendre integral of a smooth function, doubling the node count
/// from `n0` until two successive results agree within `tol`.
pub fn integrate_doubling<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    n0: usize,
    n_max: usize,
) -> Result<f64> {
    let mut n = n0.max(2);
    let mut prev = GaussLegendre::get(n).integrate(a, b, &f);
    while n < n_max {
        n *= 2;
        let cur = GaussLegendre::get(n).integrate(a, b, &f);
        if (cur - prev).abs() <= tol * cur.abs().max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature(format!(
        "no agreement within {tol:e} up to {n_max} nodes on [{a}, {b}]"
    )))
}

/// Composite Gauss-Legendre over `panels` equal sub-intervals.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> f64 {
    let rule = GaussLegendre::get(order);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let lo = a + h * p as f64;
            rule.integrate(lo, lo + h, &mut f)
        })
        .sum()
}

/// Gauss-Legendre on panels refined geometrically towards both ends of
/// [a, b]: the outermost panels have width (b − a)/2^{levels+1}.
pub fn integrate_graded<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    levels: usize,
    order: usize,
) -> f64 {
    let rule = GaussLegendre::get(order);
    let half = 0.5 * (b - a);
    let mut total = 0.0;
    let mut outer = half;
    for _ in 0..levels {
        let inner = 0.5 * outer;
        total += rule.integrate(a + inner, a + outer, &mut f);
        total += rule.integrate(b - outer, b - inner, &mut f);
        outer = inner;
    }
    total += rule.integrate(a, a + outer, &mut f);
    total += rule.integrate(b - outer, b, &mut f);
    total
}

/// [`integrate_graded`] at `order` and `2·order`, requiring agreement within `tol`.
pub fn integrate_graded_checked<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    levels: usize,
    order: usize,
    tol: f64,
) -> Result<f64> {
    let lo = integrate_graded(&f, a, b, levels, order);
    let hi = integrate_graded(&f, a, b, levels, 2 * order);
    if (hi - lo).abs() <= tol * hi.abs().max(1e-300) || (hi - lo).abs() <= 1e-300 {
        Ok(hi)
    } else {
        Err(Error::Quadrature(format!(
            "graded rule disagreement {:e} on [{a}, {b}]",
            (hi - lo).abs()
        )))
    }
}

/// Trapezoid rule for a 2π-periodic integrand, returning (1/2π)∫ f.
pub fn periodic_mean<F: FnMut(f64) -> Complex64>(n: usize, mut f: F) -> Complex64 {
    let h = 2.0 * PI / n as f64;
    let s: Complex64 = (0..n).map(|k| f(h * k as f64)).sum();
    s / n as f64
}

/// J_0(x), ..., J_{n_max}(x) for x ≥ 0 by normalized backward recurrence.
pub fn bessel_j_sequence(n_max: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0, "bessel_j_sequence needs x >= 0");
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let top = (n_max as f64).max(x);
    let mut start = (top + 20.0 + 12.0 * top.cbrt() + (40.0 * top).sqrt()) as usize;
    start += start % 2;
    let mut jp1 = 0.0_f64;
    let mut j = 1e-300_f64;
    let mut norm = 0.0_f64;
    for k in (1..=start).rev() {
        let jm1 = (2.0 * k as f64 / x) * j - jp1;
        jp1 = j;
        j = jm1;
        let idx = k - 1;
        if idx <= n_max {
            out[idx] = j;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * j;
        }
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp1 *= s;
            norm *= s;
            for v in out.iter_mut() {
                *v *= s;
            }
        }
    }
    norm += j;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::get(7);
        let val = rule.integrate(0.0, 2.0, |x| x.powi(13));
        assert!((val - 2f64.powi(14) / 14.0).abs() < 1e-9);
        let wsum: f64 = rule.weights.iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn graded_rule_handles_endpoint_layers() {
        // ∫_0^1 e^{−1000x} dx
        let v = integrate_graded_checked(|x| (-1000.0 * x).exp(), 0.0, 1.0, 14, 20, 1e-13).unwrap();
        assert!((v - (1.0 - (-1000f64).exp()) / 1000.0).abs() < 1e-15);
    }

    #[test]
    fn large_rules_stay_accurate() {
        let rule = GaussLegendre::get(2048);
        let val = rule.integrate(0.0, PI, |x| x.sin());
        assert!((val - 2.0).abs() < 1e-13);
    }

    fn bessel_by_integral(k: usize, x: f64) -> f64 {
        // (1/π)∫_0^π cos(kτ − x sin τ) dτ as a periodic mean
        periodic_mean(4096, |tau| {
            Complex64::new((k as f64 * tau - x * tau.sin()).cos(), 0.0)
        })
        .re
    }

    #[test]
    fn bessel_matches_integral_representation() {
        for &x in &[0.3, 1.0, 7.5, 60.0, 600.0] {
            let seq = bessel_j_sequence(700, x);
            for &k in &[0usize, 1, 2, 5, 30, 59, 61, 599, 650] {
                let r = bessel_by_integral(k, x);
                assert!((seq[k] - r).abs() < 1e-12, "J_{k}({x}) {} vs {}", seq[k], r);
            }
        }
    }

    #[test]
    fn bessel_known_values() {
        let s = bessel_j_sequence(3, 1.0);
        assert!((s[0] - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((s[1] - 0.440_050_585_744_933_5).abs() < 1e-15);
        let s = bessel_j_sequence(0, 0.0);
        assert_eq!(s[0], 1.0);
    }

    #[test]
    fn bessel_square_sum_is_one() {
        let s = bessel_j_sequence(1500, 1200.0);
        let total: f64 = s[0] * s[0] + 2.0 * s[1..].iter().map(|v| v * v).sum::<f64>();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
