//! Branch-cut kernel: S(z) = √((z+3)(z−1)), the map w ↔ z, the potentials,
//! and contour quadrature of the comb amplitudes.
//!
//! With z(w) = w + 1/w − 1 one has dz/S(z) = dw/w; the first sheet of S is
//! the exterior |w| > 1 and the cut [−3, 1] is the unit circle.

use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sheet {
    First,
    Second,
}

/// A point on the two-sheeted surface of S.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutPoint {
    pub z: Complex64,
    pub sheet: Sheet,
}

impl CutPoint {
    pub fn s(&self) -> Result<Complex64> {
        let s = sqrt_cut(self.z)?;
        Ok(match self.sheet {
            Sheet::First => s,
            Sheet::Second => -s,
        })
    }
}

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && (-3.0..=1.0).contains(&z.re)
}

/// First-sheet S(z), positive on (1, ∞).
pub fn sqrt_cut(z: Complex64) -> Result<Complex64> {
    if on_cut(z) {
        return Err(Error::OnCut { re: z.re, im: z.im });
    }
    Ok((z + 3.0).sqrt() * (z - 1.0).sqrt())
}

/// Boundary value of S on the cut, x ∈ [−3, 1], from above (`upper`) or below.
pub fn sqrt_cut_edge(x: f64, upper: bool) -> Complex64 {
    let m = ((x + 3.0) * (1.0 - x)).max(0.0).sqrt();
    Complex64::new(0.0, if upper { m } else { -m })
}

/// w_+(z) = (1 + z + S(z))/2, |w_+| > 1 off the cut.
pub fn w_plus(z: Complex64) -> Result<Complex64> {
    Ok(0.5 * (1.0 + z + sqrt_cut(z)?))
}

/// w_−(z) = 1/w_+(z).
pub fn w_minus(z: Complex64) -> Result<Complex64> {
    Ok(1.0 / w_plus(z)?)
}

/// First-sheet w_+ extended to the cut edges.
pub fn w_plus_edge(x: f64, upper: bool) -> Complex64 {
    0.5 * (1.0 + x + sqrt_cut_edge(x, upper))
}

/// z(w) = w + 1/w − 1.
pub fn z_of_w(w: Complex64) -> Result<Complex64> {
    if w == Complex64::default() {
        return Err(Error::Domain("z(w) is singular at w = 0".into()));
    }
    Ok(w + 1.0 / w - 1.0)
}

/// V0(z) = i(z + 1/z − 2).
pub fn v0(z: Complex64) -> Complex64 {
    I * (z + 1.0 / z - 2.0)
}

/// i(z + 1/z − 2) − u log z − v log w_+(z), principal logarithms.
pub fn potential(z: Complex64, u: f64, v: f64) -> Result<Complex64> {
    if z == Complex64::default() {
        return Err(Error::Domain("potential is singular at z = 0".into()));
    }
    let mut p = v0(z) - u * z.ln();
    if v != 0.0 {
        p -= v * w_plus(z)?.ln();
    }
    Ok(p)
}

/// Potential in the w-plane: V0(z(w)) − u log z(w) − v log w.
pub fn potential_w(w: Complex64, u: f64, v: f64) -> Result<Complex64> {
    let z = z_of_w(w)?;
    if z == Complex64::default() {
        return Err(Error::Domain("potential is singular at z(w) = 0".into()));
    }
    Ok(v0(z) - u * z.ln() - v * w.ln())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ContourKind {
    /// Unit w-arc over the cut joined with the unit z-circle; Re V0 = 0 on it.
    Spectral,
    /// z = −1 + 2cosh(ρ + iθ), i.e. |w| = e^ρ.
    Ellipse { rho: f64 },
    /// Closed counter-clockwise polygon in the z-plane.
    Polyline(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub kind: ContourKind,
    /// Initial node count (per piece); doubled until convergence.
    pub nodes: usize,
    pub tol: f64,
    pub max_nodes: usize,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            kind: ContourKind::Spectral,
            nodes: 64,
            tol: 1e-12,
            max_nodes: 1 << 16,
        }
    }
}

impl ContourSpec {
    pub fn ellipse(rho: f64) -> Self {
        Self {
            kind: ContourKind::Ellipse { rho },
            ..Self::default()
        }
    }

    pub fn polyline(vertices: Vec<Complex64>) -> Self {
        Self {
            kind: ContourKind::Polyline(vertices),
            ..Self::default()
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// A_t(0, j0; n, j) from the contour representation.
pub fn amplitude_contour(n: i64, j: i64, t: f64, j0: i64, spec: &ContourSpec) -> Result<Complex64> {
    if j < 0 || j0 < 0 {
        return Err(Error::Domain("tooth coordinates must be nonnegative".into()));
    }
    if t < 0.0 {
        return Err(Error::Domain("contour amplitudes need t >= 0".into()));
    }
    let m = (j + j0) as i32;
    let p = n.unsigned_abs() as i32;
    let reg = match &spec.kind {
        ContourKind::Spectral => doubling(spec, |k| Ok(spectral_rule(m, p, t, k)))?,
        ContourKind::Ellipse { rho } => {
            if *rho <= 0.0 {
                return Err(Error::Domain("ellipse offset must be positive".into()));
            }
            doubling(spec, |k| ellipse_rule(m, p, t, *rho, k, spec.tol))?
        }
        ContourKind::Polyline(vs) => {
            check_polyline(vs)?;
            doubling(spec, |k| polyline_rule(vs, m, p, t, k, spec.tol))?
        }
    };
    let direct = if n == 0 && j0 > 0 {
        direct_term(j, j0, t, spec)?
    } else {
        Complex64::default()
    };
    Ok(reg + direct)
}

fn doubling<F: Fn(usize) -> Result<Complex64>>(spec: &ContourSpec, rule: F) -> Result<Complex64> {
    let mut k = spec.nodes.max(8);
    let mut prev = rule(k)?;
    while k < spec.max_nodes {
        k *= 2;
        let cur = rule(k)?;
        if (cur - prev).norm() <= spec.tol {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature(format!(
        "contour quadrature not converged within {} nodes",
        spec.max_nodes
    )))
}

fn spectral_rule(m: i32, p: i32, t: f64, k: usize) -> Complex64 {
    let rule = GaussLegendre::get(k);
    // Piece over the cut: w = e^{iα}, z = 2cos α − 1 ∈ [−3, −1].
    let arc = rule.integrate_complex(0.5 * PI, 1.5 * PI, |a| {
        let z = 2.0 * a.cos() - 1.0;
        let zc = Complex64::new(z, 0.0);
        let w = Complex64::from_polar(1.0, a);
        (1.0 - 1.0 / (z * z)) * zc.powi(-m) * w.powi(-p) * (t * v0(zc)).exp()
    });
    // Piece on |z| = 1 with θ = ±s², removing the square root at z = 1.
    let half = |sign: f64| {
        rule.integrate_complex(0.0, PI.sqrt(), |s| {
            let z = Complex64::from_polar(1.0, sign * s * s);
            let sq = sqrt_cut(z).unwrap_or_else(|_| sqrt_cut_edge(z.re, sign > 0.0));
            let w = 0.5 * (1.0 + z + sq);
            (z - 1.0 / z) / sq * w.powi(-p) * z.powi(-m) * (t * v0(z)).exp() * (2.0 * s)
        })
    };
    (arc + half(1.0) + half(-1.0)) / (2.0 * PI)
}

fn guard(peak: f64, tol: f64) -> Result<()> {
    let factor = peak;
    if factor * f64::EPSILON > tol {
        return Err(Error::QuadratureDivergence { factor, tol });
    }
    Ok(())
}

fn ellipse_rule(m: i32, p: i32, t: f64, rho: f64, k: usize, tol: f64) -> Result<Complex64> {
    let h = 2.0 * PI / k as f64;
    let mut sum = Complex64::default();
    let mut peak = 0.0f64;
    for i in 0..k {
        let w = Complex64::from_polar(rho.exp(), h * i as f64);
        let z = w + 1.0 / w - 1.0;
        let f = (1.0 - 1.0 / (z * z)) * z.powi(-m) * w.powi(-p) * (t * v0(z)).exp();
        peak = peak.max(f.norm());
        sum += f;
    }
    guard(peak, tol)?;
    Ok(sum / k as f64)
}

fn check_polyline(vs: &[Complex64]) -> Result<()> {
    if vs.len() < 3 {
        return Err(Error::Domain("polyline needs at least three vertices".into()));
    }
    for probe in [-3.0, -1.0, 0.0, 1.0] {
        let wind = winding(vs, Complex64::new(probe, 0.0));
        if (wind - 1.0).abs() > 1e-6 {
            return Err(Error::Domain(format!(
                "polyline must wind once counter-clockwise around the cut (winding {wind:.3} about {probe})"
            )));
        }
    }
    Ok(())
}

fn winding(vs: &[Complex64], c: Complex64) -> f64 {
    let n = vs.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = vs[i] - c;
        let b = vs[(i + 1) % n] - c;
        total += (b / a).arg();
    }
    total / (2.0 * PI)
}

fn polyline_rule(vs: &[Complex64], m: i32, p: i32, t: f64, k: usize, tol: f64) -> Result<Complex64> {
    let rule = GaussLegendre::get(k);
    let n = vs.len();
    let mut sum = Complex64::default();
    let mut peak = 0.0f64;
    for i in 0..n {
        let a = vs[i];
        let b = vs[(i + 1) % n];
        let dz = 0.5 * (b - a);
        for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
            let z = a + (1.0 + x) * dz;
            let s = sqrt_cut(z)?;
            let wm = 2.0 / (1.0 + z + s);
            let f = (1.0 - 1.0 / (z * z)) / s * wm.powi(p) * z.powi(-m) * (t * v0(z)).exp();
            peak = peak.max((f * dz).norm());
            sum += f * dz * *wt;
        }
    }
    guard(peak, tol)?;
    Ok(sum / (2.0 * PI * I))
}

/// Bounce term present for n = 0 and j0 > 0:
/// (1/2πi)∮ z^{−j−1}(z^{j0} − z^{−j0}) e^{tV0} dz on |z| = 1.
fn direct_term(j: i64, j0: i64, t: f64, spec: &ContourSpec) -> Result<Complex64> {
    let base = (4.0 * t) as usize + (j + j0) as usize + 32;
    let rule = |k: usize| {
        let h = 2.0 * PI / k as f64;
        let s: Complex64 = (0..k)
            .map(|i| {
                let z = Complex64::from_polar(1.0, h * i as f64);
                z.powi(-(j as i32)) * (z.powi(j0 as i32) - z.powi(-(j0 as i32))) * (t * v0(z)).exp()
            })
            .sum();
        Ok(s / k as f64)
    };
    let local = ContourSpec {
        nodes: base.max(spec.nodes),
        ..spec.clone()
    };
    doubling(&local, rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn branch_values() {
        assert!((sqrt_cut(c(2.0, 0.0)).unwrap() - c(5f64.sqrt(), 0.0)).norm() < 1e-15);
        let s = sqrt_cut(c(0.0, 1e-12)).unwrap();
        assert!((s - c(0.0, 3f64.sqrt())).norm() < 1e-9);
        assert!(matches!(sqrt_cut(c(-1.0, 0.0)), Err(Error::OnCut { .. })));
        assert!(sqrt_cut(c(-4.0, 0.0)).unwrap().re < 0.0);
    }

    #[test]
    fn w_images() {
        assert!((w_plus(c(1.0 + 1e-14, 0.0)).unwrap() - ONE).norm() < 1e-6);
        assert!((w_plus(c(-3.0 - 1e-14, 0.0)).unwrap() + ONE).norm() < 1e-6);
        assert!((w_plus(c(-1.0, 1e-14)).unwrap() - I).norm() < 1e-12);
        assert!((w_plus_edge(-1.0, true) - I).norm() < 1e-15);
        assert!((z_of_w(I).unwrap() + ONE).norm() < 1e-15);
        assert!(z_of_w(Complex64::from_polar(1.0, PI / 3.0)).unwrap().norm() < 1e-15);
        assert!((z_of_w(ONE).unwrap() - ONE).norm() < 1e-15);
        assert!(z_of_w(Complex64::default()).is_err());
    }

    #[test]
    fn potential_values() {
        assert_eq!(potential(ONE, 0.0, 0.0).unwrap(), Complex64::default());
        assert!((potential(c(-1.0, 0.0), 0.0, 0.0).unwrap() - c(0.0, -4.0)).norm() < 1e-15);
        assert!((potential(c(-3.0, 0.0), 0.0, 0.0).unwrap() - c(0.0, -16.0 / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_time_gives_kronecker_delta() {
        let spec = ContourSpec::default();
        for n in -2..=2 {
            for j in 0..3 {
                let a = amplitude_contour(n, j, 0.0, 0, &spec).unwrap();
                let want = if n == 0 && j == 0 { 1.0 } else { 0.0 };
                assert!((a - c(want, 0.0)).norm() < 1e-12, "({n},{j}) {a}");
            }
        }
        for j in 0..5 {
            let a = amplitude_contour(0, j, 0.0, 3, &spec).unwrap();
            let want = if j == 3 { 1.0 } else { 0.0 };
            assert!((a - c(want, 0.0)).norm() < 1e-12, "j={j} {a}");
        }
    }

    #[test]
    fn ellipse_guard_trips_at_large_t() {
        let spec = ContourSpec::ellipse(0.3).with_tol(1e-10);
        assert!(matches!(
            amplitude_contour(0, 0, 60.0, 0, &spec),
            Err(Error::QuadratureDivergence { .. })
        ));
    }

    #[test]
    fn polyline_must_enclose_the_cut() {
        let square = vec![c(-4.0, -1.0), c(2.0, -1.0), c(2.0, 1.0), c(-4.0, 1.0)];
        let a = amplitude_contour(1, 2, 1.5, 0, &ContourSpec::polyline(square.clone())).unwrap();
        let b = amplitude_contour(1, 2, 1.5, 0, &ContourSpec::default()).unwrap();
        assert!((a - b).norm() < 1e-11);
        let mut cw = square;
        cw.reverse();
        assert!(amplitude_contour(0, 0, 1.0, 0, &ContourSpec::polyline(cw)).is_err());
    }
}
