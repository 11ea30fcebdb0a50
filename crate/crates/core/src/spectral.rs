//! Closed-form eigenfunctions of H: extended Bloch waves (energies in [0, 4])
//! and spine-localized states (energies in (4, 16/3)).

use crate::comb::Vertex;
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Bloch wave with spine momentum α and tooth momentum θ ∈ (0, π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtendedState {
    pub alpha: f64,
    pub theta: f64,
}

impl ExtendedState {
    pub fn new(alpha: f64, theta: f64) -> Self {
        Self { alpha, theta }
    }

    pub fn y(&self) -> f64 {
        1.0 - 2.0 * self.alpha.cos()
    }

    /// (A, B) = (y + e^{iθ}, −(y + e^{−iθ})).
    pub fn coefficients(&self) -> (Complex64, Complex64) {
        let y = self.y();
        let e = Complex64::from_polar(1.0, self.theta);
        (y + e, -(y + e.conj()))
    }

    pub fn energy(&self) -> f64 {
        2.0 - 2.0 * self.theta.cos()
    }
}

pub fn extended_eigenfunction(st: &ExtendedState, v: Vertex) -> Complex64 {
    let (a, b) = st.coefficients();
    let spine = Complex64::from_polar(1.0, st.alpha * v.n as f64);
    let tooth = Complex64::from_polar(1.0, st.theta * v.j as f64);
    spine * (a * tooth + b * tooth.conj())
}

/// N(α, θ) = 4π²(y² + 2y cos θ + 1).
pub fn extended_norm(alpha: f64, theta: f64) -> f64 {
    let y = 1.0 - 2.0 * alpha.cos();
    4.0 * PI * PI * (y * y + 2.0 * y * theta.cos() + 1.0)
}

/// True when N(α, θ) is within `eps` (relative to 4π²) of vanishing,
/// which happens only at the corners y = ±1, θ ∈ {0, π}.
pub fn extended_norm_is_degenerate(alpha: f64, theta: f64, eps: f64) -> bool {
    extended_norm(alpha, theta) < eps * 4.0 * PI * PI
}

/// Spine-bound state e^{iαn}(−1)^j e^{−γj}, 1 − 2cos α = e^γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalizedState {
    pub alpha: f64,
    pub gamma: f64,
    /// Real positive normalization, c² = (1 − e^{−2γ})/(2π).
    pub c: f64,
}

impl LocalizedState {
    pub fn energy(&self) -> f64 {
        2.0 + 2.0 * self.gamma.cosh()
    }
}

pub fn localized_state(alpha: f64) -> Result<LocalizedState> {
    if !(alpha > 0.5 * PI && alpha < 1.5 * PI) {
        return Err(Error::Domain(format!(
            "localized states need alpha in (pi/2, 3pi/2), got {alpha}"
        )));
    }
    let gamma = (1.0 - 2.0 * alpha.cos()).ln();
    let c = ((1.0 - (-2.0 * gamma).exp()) / (2.0 * PI)).sqrt();
    Ok(LocalizedState { alpha, gamma, c })
}

pub fn localized_eigenfunction(st: &LocalizedState, v: Vertex) -> Complex64 {
    let sign = if v.j % 2 == 0 { 1.0 } else { -1.0 };
    Complex64::from_polar(st.c * sign * (-st.gamma * v.j as f64).exp(), st.alpha * v.n as f64)
}

/// Node counts for the completeness integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes per α sub-interval.
    pub alpha_nodes: usize,
    pub theta_nodes: usize,
    pub localized_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            alpha_nodes: 192,
            theta_nodes: 192,
            localized_nodes: 192,
        }
    }
}

impl QuadratureSpec {
    pub fn uniform(n: usize) -> Self {
        Self {
            alpha_nodes: n,
            theta_nodes: n,
            localized_nodes: n,
        }
    }
}

/// Σ_states f(E) φ(v2) conj(φ(v1)) over the extended and localized states.
///
/// The α range is split at π/2 and 3π/2, where localized states appear and
/// the θ integrand develops a corner; θ and the localized branch use open
/// Gauss-Legendre rules, so no endpoint is evaluated.
fn spectral_sum<F: Fn(f64) -> Complex64 + Sync>(v1: Vertex, v2: Vertex, quad: &QuadratureSpec, f: F) -> Complex64 {
    let ga = GaussLegendre::get(quad.alpha_nodes);
    let gt = GaussLegendre::get(quad.theta_nodes);
    let gl = GaussLegendre::get(quad.localized_nodes);
    let mut total = Complex64::default();
    for (lo, hi) in [(0.0, 0.5 * PI), (0.5 * PI, 1.5 * PI), (1.5 * PI, 2.0 * PI)] {
        for (alpha, wa) in ga.mapped(lo, hi) {
            let inner = gt.integrate_complex(0.0, PI, |theta| {
                let st = ExtendedState::new(alpha, theta);
                let f1 = extended_eigenfunction(&st, v1);
                let f2 = extended_eigenfunction(&st, v2);
                f(st.energy()) * f2 * f1.conj() / extended_norm(alpha, theta)
            });
            total += inner * wa;
        }
    }
    total += gl.integrate_complex(0.5 * PI, 1.5 * PI, |alpha| {
        let st = localized_state(alpha).expect("open rule stays inside the interval");
        f(st.energy()) * localized_eigenfunction(&st, v2) * localized_eigenfunction(&st, v1).conj()
    });
    total
}

/// Σ_states φ(v2) conj(φ(v1)) − δ_{v1 v2}.
pub fn completeness_defect(v1: Vertex, v2: Vertex, quad: &QuadratureSpec) -> Complex64 {
    let mut total = spectral_sum(v1, v2, quad, |_| Complex64::new(1.0, 0.0));
    if v1 == v2 {
        total -= 1.0;
    }
    total
}

/// ⟨v2| e^{−itH} |v1⟩ from the eigenfunction expansion.
pub fn spectral_amplitude(v1: Vertex, v2: Vertex, t: f64, quad: &QuadratureSpec) -> Complex64 {
    spectral_sum(v1, v2, quad, |e| Complex64::from_polar(1.0, -e * t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stencil_residual(f: impl Fn(Vertex) -> Complex64, e: f64, v: Vertex) -> f64 {
        let mut h = f(v) * crate::comb::degree(v) as f64 - f(Vertex::new(v.n, v.j + 1));
        if v.j == 0 {
            h -= f(Vertex::new(v.n - 1, 0)) + f(Vertex::new(v.n + 1, 0));
        } else {
            h -= f(Vertex::new(v.n, v.j - 1));
        }
        (h - f(v) * e).norm()
    }

    #[test]
    fn extended_at_origin_with_y_zero() {
        let st = ExtendedState::new(PI / 3.0, 0.8);
        let v = extended_eigenfunction(&st, Vertex::ORIGIN);
        assert!((v - Complex64::new(0.0, 2.0 * 0.8f64.sin())).norm() < 1e-14);
    }

    #[test]
    fn extended_states_solve_both_stencils() {
        let mut x = 0.37f64;
        for _ in 0..20 {
            x = (x * 7.13 + 0.219).fract();
            let st = ExtendedState::new(2.0 * PI * x, PI * (0.05 + 0.9 * (x * 3.7).fract()));
            let f = |v| extended_eigenfunction(&st, v);
            assert!(stencil_residual(f, st.energy(), Vertex::new(3, 0)) < 1e-12);
            assert!(stencil_residual(f, st.energy(), Vertex::new(2, 3)) < 1e-12);
        }
    }

    #[test]
    fn norm_values() {
        assert!((extended_norm(PI / 3.0, 1.1) - 4.0 * PI * PI).abs() < 1e-12);
        assert!((extended_norm(PI, PI / 2.0) - 40.0 * PI * PI).abs() < 1e-10);
        let st = ExtendedState::new(2.3, 0.4);
        let (a, _) = st.coefficients();
        assert!((extended_norm(2.3, 0.4) - 4.0 * PI * PI * a.norm_sqr()).abs() < 1e-10);
        assert!(extended_norm_is_degenerate(0.0, 1e-5, 1e-8));
    }

    #[test]
    fn localized_energies() {
        let s = localized_state(PI).unwrap();
        assert!((s.gamma - 3f64.ln()).abs() < 1e-15);
        assert!((s.energy() - 16.0 / 3.0).abs() < 1e-14);
        let s = localized_state(2.0 * PI / 3.0).unwrap();
        assert!((s.gamma - 2f64.ln()).abs() < 1e-15);
        assert!((s.energy() - 4.5).abs() < 1e-14);
        let s = localized_state(0.5 * PI + 1e-9).unwrap();
        assert!(s.gamma > 0.0 && s.gamma < 1e-8 && s.energy() >= 4.0);
        assert!(localized_state(0.5 * PI).is_err());
        assert!(localized_state(0.3).is_err());
    }

    #[test]
    fn localized_state_properties() {
        let s = localized_state(2.5).unwrap();
        let f = |v| localized_eigenfunction(&s, v);
        assert!(stencil_residual(f, s.energy(), Vertex::ORIGIN) < 1e-12);
        assert!(stencil_residual(f, s.energy(), Vertex::new(0, 3)) < 1e-12);
        assert!((f(Vertex::new(5, 2)).norm() - f(Vertex::new(-9, 2)).norm()).abs() < 1e-15);
        let mass: f64 = (0..400).map(|j| f(Vertex::new(0, j)).norm_sqr()).sum();
        assert!((mass * 2.0 * PI - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expansion_propagates() {
        let quad = QuadratureSpec::uniform(256);
        for (v1, v2) in [(Vertex::ORIGIN, Vertex::ORIGIN), (Vertex::new(0, 1), Vertex::new(2, 0))] {
            let a = spectral_amplitude(v1, v2, 2.0, &quad);
            let b = crate::evolution::amplitude_exact(v1, v2, 2.0, 1e-12).unwrap();
            assert!((a - b).norm() < 1e-6, "{a} vs {b}");
        }
    }
}
