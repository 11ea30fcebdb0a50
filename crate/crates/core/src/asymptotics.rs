//! Large-t saddle-point forms of the comb amplitudes and their coarse-grained
//! probability profiles.
//!
//! Tooth amplitudes use the z-plane potential V_u(z) = V0(z) − u log z with
//! u = j/t; spine amplitudes use the w-plane potential
//! W(w; u, v) = V0(z(w)) − u log z(w) − v log w with v = |n|/t.

use crate::airy::airy_ai;
use crate::contour::{sqrt_cut, v0, w_minus, z_of_w};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const GAMMA_3_4: f64 = 1.225_416_702_465_177_6;

/// Half-width, in units of t^{−2/3}, of the velocity band treated as a front.
pub const AIRY_WINDOW: f64 = 4.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// ---------------------------------------------------------------- regimes

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Oscillatory,
    AiryFront,
    Evanescent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Tooth,
    Spine,
    Bulk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeLabel {
    pub regime: Regime,
    pub axis: Axis,
}

/// (u_c, v_c) = (2, 3√3/4).
pub fn critical_velocities() -> (f64, f64) {
    (2.0, 0.75 * 3f64.sqrt())
}

/// Asymptotic regime of the velocity pair (u, v).
pub fn regime(u: f64, v: f64) -> RegimeLabel {
    let (uc, vc) = critical_velocities();
    let classify = |x: f64, xc: f64| {
        if x < xc {
            Regime::Oscillatory
        } else if x == xc {
            Regime::AiryFront
        } else {
            Regime::Evanescent
        }
    };
    match (u > 0.0, v > 0.0) {
        (true, true) => RegimeLabel {
            regime: Regime::Evanescent,
            axis: Axis::Bulk,
        },
        (_, false) => RegimeLabel {
            regime: classify(u, uc),
            axis: Axis::Tooth,
        },
        (false, true) => RegimeLabel {
            regime: classify(v, vc),
            axis: Axis::Spine,
        },
    }
}

/// Regime used at finite t, with the front widened to |x − x_c| ≤ W·t^{−2/3}.
pub fn regime_at(x: f64, xc: f64, t: f64) -> Regime {
    if (x - xc).abs() <= AIRY_WINDOW * t.powf(-2.0 / 3.0) {
        Regime::AiryFront
    } else if x < xc {
        Regime::Oscillatory
    } else {
        Regime::Evanescent
    }
}

// ----------------------------------------------------------- saddle forms

/// Unit steepest-descent direction at a simple saddle with second derivative
/// `d2`, oriented to agree with the contour tangent `tangent`.
pub fn descent_direction(d2: Complex64, tangent: Complex64) -> Complex64 {
    let e = (-d2.conj() / d2.norm()).sqrt();
    if (e * tangent.conj()).re >= 0.0 {
        e
    } else {
        -e
    }
}

/// Gaussian contribution g·E·e^{iβ}·√(2π/(t|d2|)).
pub fn gaussian_saddle(g: Complex64, expo: Complex64, d2: Complex64, tangent: Complex64, t: f64) -> Complex64 {
    g * expo * descent_direction(d2, tangent) * (2.0 * PI / (t * d2.norm())).sqrt()
}

/// Contribution of a double saddle `xc` with third derivative `d3`, where the
/// integrand carries x^{−(m_c + s)} and s = shift·t^{1/3}. `expo` already
/// includes the full power x_c^{−m}.
pub fn airy_saddle(
    g: Complex64,
    expo: Complex64,
    d3: Complex64,
    xc: Complex64,
    tangent: Complex64,
    shift: f64,
    t: f64,
) -> Result<Complex64> {
    let k3 = -2.0 * I / d3;
    let r = k3.norm().cbrt();
    let a = k3.arg() / 3.0;
    let kappa = (0..3)
        .map(|k| Complex64::from_polar(r, a + 2.0 * PI * k as f64 / 3.0))
        .max_by(|p, q| {
            (p * tangent.conj())
                .re
                .partial_cmp(&(q * tangent.conj()).re)
                .unwrap()
        })
        .unwrap();
    let x = -I * shift * kappa / xc;
    let ai = airy_ai(x.re)?;
    Ok(g * expo * kappa * t.powf(-1.0 / 3.0) * 2.0 * PI * ai)
}

// ------------------------------------------------------------ return point

/// Leading terms of ⟨0,0|e^{−itH}|0,0⟩.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReturnAsymptotic {
    /// Endpoint of the cut at z = −3, order t^{−1/2}.
    pub branch: Complex64,
    /// Degenerate saddle at z = 1, order t^{−3/4}.
    pub saddle_one: Complex64,
    /// Saddle at z = −1, whose first nonvanishing order is t^{−5/2}.
    pub saddle_minus_one: Complex64,
    pub total: Complex64,
}

pub fn return_amplitude_asymptotic(t: f64) -> Result<ReturnAsymptotic> {
    if t <= 0.0 {
        return Err(Error::Domain("return asymptotics need t > 0".into()));
    }
    let branch = (2.0 / (9.0 * PI)).sqrt()
        * Complex64::from_polar(1.0, 0.25 * PI - 16.0 * t / 3.0)
        * t.powf(-0.5);
    let saddle_one = Complex64::from_polar(1.0, -3.0 * PI / 8.0)
        * (2f64.sqrt() / (4.0 * PI) * GAMMA_3_4 * t.powf(-0.75));
    let saddle_minus_one = Complex64::from_polar(
        3.0 / (32.0 * PI.sqrt()) * t.powf(-2.5),
        0.75 * PI - 4.0 * t,
    );
    Ok(ReturnAsymptotic {
        branch,
        saddle_one,
        saddle_minus_one,
        total: branch + saddle_one + saddle_minus_one,
    })
}

// ------------------------------------------------------------------ teeth

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToothSaddles {
    pub u: f64,
    pub z_plus: Complex64,
    pub z_minus: Complex64,
    /// arcsin(u/2) for u < 2.
    pub phi: Option<f64>,
    /// arccosh(u/2) for u > 2.
    pub psi: Option<f64>,
}

/// Roots of V_u'(z) = 0: z_± = −iu/2 ± √(4 − u²)/2.
pub fn tooth_saddles(u: f64) -> Result<ToothSaddles> {
    if !(u >= 0.0) {
        return Err(Error::Domain(format!("tooth velocity must be >= 0, got {u}")));
    }
    Ok(if u < 2.0 {
        let phi = (0.5 * u).asin();
        ToothSaddles {
            u,
            z_plus: Complex64::from_polar(1.0, -phi),
            z_minus: -Complex64::from_polar(1.0, phi),
            phi: Some(phi),
            psi: None,
        }
    } else if u == 2.0 {
        ToothSaddles {
            u,
            z_plus: -I,
            z_minus: -I,
            phi: Some(0.5 * PI),
            psi: Some(0.0),
        }
    } else {
        let psi = (0.5 * u).acosh();
        ToothSaddles {
            u,
            z_plus: c(0.0, -(-psi).exp()),
            z_minus: c(0.0, -psi.exp()),
            phi: None,
            psi: Some(psi),
        }
    })
}

/// V_u''(z) = 2i/z³ + u/z².
pub fn tooth_second_derivative(z: Complex64, u: f64) -> Complex64 {
    2.0 * I / (z * z * z) + u / (z * z)
}

/// Prefactor of e^{tV0(z)} z^{−j} in A_t(0, j0; n, j):
/// (1/2πi)[δ_{n0}(z^{j0} − z^{−j0})/z + (1 − z^{−2}) z^{−j0} w_−(z)^{|n|}/S(z)].
pub fn tooth_prefactor(z: Complex64, n: i64, j0: i64) -> Result<Complex64> {
    let j0 = j0 as i32;
    let p = n.unsigned_abs() as i32;
    let mut g = (1.0 - 1.0 / (z * z)) * z.powi(-j0) * w_minus(z)?.powi(p) / sqrt_cut(z)?;
    if n == 0 && j0 > 0 {
        g += (z.powi(j0) - z.powi(-j0)) / z;
    }
    Ok(g / (2.0 * PI * I))
}

/// Rate ϖ(u) = −√(u² − 4) + u log((u + √(u² − 4))/2) for u ≥ 2.
pub fn tooth_decay_rate(u: f64) -> Result<f64> {
    if u < 2.0 {
        return Err(Error::Domain("decay rate is defined for u >= 2".into()));
    }
    let r = (u * u - 4.0).sqrt();
    Ok(-r + u * (0.5 * (u + r)).ln())
}

/// Tail exponent χ(u) = arccosh(u/2) = log((u + √(u² − 4))/2), u ≥ 2.
pub fn tooth_tail_exponent(u: f64) -> Result<f64> {
    if u < 2.0 {
        return Err(Error::Domain("tail exponent is defined for u >= 2".into()));
    }
    Ok((0.5 * u).acosh())
}

/// A_t(0,0; n, j) for large t.
pub fn tooth_amplitude_asymptotic(n: i64, j: i64, t: f64) -> Result<Complex64> {
    tooth_amplitude_asymptotic_from(n, j, t, 0)
}

/// A_t(0, j0; n, j) for large t with j of order t.
pub fn tooth_amplitude_asymptotic_from(n: i64, j: i64, t: f64, j0: i64) -> Result<Complex64> {
    if t <= 0.0 || j < 0 || j0 < 0 {
        return Err(Error::Domain("need t > 0 and nonnegative tooth coordinates".into()));
    }
    let u = j as f64 / t;
    let ji = j as i32;
    let term = |z: Complex64| -> Result<Complex64> {
        let g = tooth_prefactor(z, n, j0)?;
        let expo = z.powi(-ji) * (t * v0(z)).exp();
        Ok(gaussian_saddle(g, expo, tooth_second_derivative(z, u), I * z, t))
    };
    match regime_at(u, 2.0, t) {
        Regime::AiryFront => {
            let zc = -I;
            let g = tooth_prefactor(zc, n, j0)?;
            let expo = zc.powi(-ji) * (t * v0(zc)).exp();
            let shift = (j as f64 - 2.0 * t) / t.cbrt();
            // V_2''' at −i
            airy_saddle(g, expo, -2.0 * I, zc, I * zc, shift, t)
        }
        Regime::Oscillatory => {
            let s = tooth_saddles(u)?;
            Ok(term(s.z_plus)? + term(s.z_minus)?)
        }
        Regime::Evanescent => term(tooth_saddles(u)?.z_minus),
    }
}

fn tooth_density(u: f64, n: i64, j0: i64) -> Result<f64> {
    if !(u > 0.0 && u < 2.0) {
        return Err(Error::Domain(format!("profile needs 0 < u < 2, got {u}")));
    }
    let s = tooth_saddles(u)?;
    let mut total = 0.0;
    for z in [s.z_plus, s.z_minus] {
        let g = tooth_prefactor(z, n, j0)?;
        total += 2.0 * PI * g.norm_sqr() / tooth_second_derivative(z, u).norm();
    }
    Ok(total)
}

/// Coarse-grained t·|A_t(0,0; n, ut)|², cross terms dropped.
pub fn coarse_profile_tooth(u: f64, n: i64) -> Result<f64> {
    tooth_density(u, n, 0)
}

/// Coarse-grained t·|A_t(0, j0; n, ut)|² for any tooth and starting height.
pub fn coarse_profile_tooth_from(u: f64, n: i64, j0: i64) -> Result<f64> {
    if j0 < 0 {
        return Err(Error::Domain("j0 must be nonnegative".into()));
    }
    tooth_density(u, n, j0)
}

/// Coarse-grained profile on tooth 0 for a walk started at (0, j0).
pub fn profile_initial_tooth(u: f64, j0: i64) -> Result<f64> {
    if j0 < 0 {
        return Err(Error::Domain("j0 must be nonnegative".into()));
    }
    tooth_density(u, 0, j0)
}

fn closed_form_parts(u: f64) -> Result<(f64, f64, f64)> {
    if !(u > 0.0 && u < 2.0) {
        return Err(Error::Domain(format!("profile needs 0 < u < 2, got {u}")));
    }
    let r = (4.0 - u * u).sqrt();
    let base = 8.0 + 3.0 * u * u;
    let a = (base - 4.0 * r).powf(-0.25);
    let b = (base + 4.0 * r).powf(-0.25);
    Ok((u * u / (2.0 * PI * r), a, b))
}

/// Closed form of c(u, 0): (u²/2πr)(1/√(8 + 3u² − 4r) + 1/√(8 + 3u² + 4r)), r = √(4 − u²).
pub fn coarse_profile_tooth_closed_form(u: f64) -> Result<f64> {
    let (pre, a, b) = closed_form_parts(u)?;
    Ok(pre * (a * a + b * b))
}

/// Envelope (d_−, d_+) of t·|A_t(0,0;0,ut)|² including the interference term.
pub fn tooth_bounds(u: f64) -> Result<(f64, f64)> {
    let (pre, a, b) = closed_form_parts(u)?;
    Ok((pre * (a - b).powi(2), pre * (a + b).powi(2)))
}

// ------------------------------------------------------------------ spine

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or_default() + b.get(k).copied().unwrap_or_default())
        .collect()
}

fn poly_scale(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
    a.iter().map(|x| x * s).collect()
}

fn real_poly(cs: &[f64]) -> Vec<Complex64> {
    cs.iter().map(|&x| c(x, 0.0)).collect()
}

/// Coefficients (ascending) of
/// i(w−1)³(w+1)(w²+1) − u(w+1)(w−1)w(w²−w+1) − v w(w²−w+1)²,
/// which is W'(w)·w²(w²−w+1)².
pub fn spine_polynomial(u: f64, v: f64) -> Vec<Complex64> {
    let wm1 = real_poly(&[-1.0, 1.0]);
    let wp1 = real_poly(&[1.0, 1.0]);
    let w2p1 = real_poly(&[1.0, 0.0, 1.0]);
    let q = real_poly(&[1.0, -1.0, 1.0]);
    let w = real_poly(&[0.0, 1.0]);
    let t1 = poly_mul(&poly_mul(&poly_mul(&poly_mul(&wm1, &wm1), &wm1), &wp1), &w2p1);
    let t2 = poly_mul(&poly_mul(&poly_mul(&wp1, &wm1), &w), &q);
    let t3 = poly_mul(&poly_mul(&w, &q), &q);
    let p = poly_add(&poly_scale(&t1, I), &poly_scale(&t2, c(-u, 0.0)));
    poly_add(&p, &poly_scale(&t3, c(-v, 0.0)))
}

fn poly_eval(p: &[Complex64], w: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::default();
    let mut der = Complex64::default();
    for &a in p.iter().rev() {
        der = der * w + val;
        val = val * w + a;
    }
    (val, der)
}

fn relative_residual(p: &[Complex64], w: Complex64) -> f64 {
    let scale: f64 = p
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm() * w.norm().powi(k as i32))
        .sum();
    poly_eval(p, w).0.norm() / scale
}

/// (W', W'', W''') of W(w; u, v) with respect to w.
pub fn spine_derivatives(w: Complex64, u: f64, v: f64) -> Result<(Complex64, Complex64, Complex64)> {
    let z = z_of_w(w)?;
    if z == Complex64::default() {
        return Err(Error::Domain("z(w) = 0 is a pole of W'".into()));
    }
    let zi = 1.0 / z;
    let wi = 1.0 / w;
    let zp = 1.0 - wi * wi;
    let f1 = I * (1.0 - zi * zi) - u * zi; // dV/dz
    let f2 = 2.0 * I * zi.powi(3) + u * zi * zi; // d²V/dz²
    let f3 = -6.0 * I * zi.powi(4) - 2.0 * u * zi.powi(3);
    let d1 = f1 * zp - v * wi;
    let d2 = f2 * zp * zp + f1 * 2.0 * wi.powi(3) + v * wi * wi;
    let d3 = f3 * zp.powi(3) + 6.0 * f2 * zp * wi.powi(3) - 6.0 * f1 * wi.powi(4)
        - 2.0 * v * wi.powi(3);
    Ok((d1, d2, d3))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddleRoot {
    pub w: Complex64,
    pub multiplicity: usize,
    /// W(w; u, v) with principal logarithms.
    pub potential: Complex64,
    pub second: Complex64,
    pub residual: f64,
    /// Set by the relevance analysis; `None` until determined.
    pub relevant: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpineSaddles {
    pub u: f64,
    pub v: f64,
    pub roots: Vec<SaddleRoot>,
}

impl SpineSaddles {
    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

pub const ROOT_TOL: f64 = 1e-12;
/// Polished roots closer than this are tested for being one multiple root;
/// the eigenvalues of an m-fold root scatter like ε^{1/m}.
const CLUSTER_PROBE: f64 = 1e-4;

fn poly_derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect()
}

/// The six roots of the spine saddle polynomial.
pub fn spine_saddles(u: f64, v: f64) -> Result<SpineSaddles> {
    if !(u >= 0.0 && v >= 0.0) {
        return Err(Error::Domain("velocities must be nonnegative".into()));
    }
    let p = spine_polynomial(u, v);
    let deg = p.len() - 1;
    let lead = p[deg];
    let mut comp = DMatrix::<Complex64>::zeros(deg, deg);
    for k in 0..deg {
        comp[(0, k)] = -p[deg - 1 - k] / lead;
        if k + 1 < deg {
            comp[(k + 1, k)] = c(1.0, 0.0);
        }
    }
    let eig = comp
        .schur()
        .eigenvalues()
        .ok_or(Error::RootFinding { residual: f64::NAN })?;
    let mut roots: Vec<Complex64> = eig.iter().map(|&w| polish(&p, w)).collect();
    roots.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());

    let mut out: Vec<SaddleRoot> = Vec::new();
    let mut push = |w: Complex64, multiplicity: usize| -> Result<()> {
        let residual = relative_residual(&p, w);
        if !(residual < ROOT_TOL) {
            return Err(Error::RootFinding { residual });
        }
        let potential = crate::contour::potential_w(w, u, v)?;
        let (_, second, _) = spine_derivatives(w, u, v)?;
        out.push(SaddleRoot {
            w,
            multiplicity,
            potential,
            second,
            residual,
            relevant: None,
        });
        Ok(())
    };
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![roots[i]];
        for k in i + 1..roots.len() {
            if !used[k] && (roots[k] - roots[i]).norm() < CLUSTER_PROBE {
                used[k] = true;
                members.push(roots[k]);
            }
        }
        let m = members.len();
        if m == 1 {
            push(members[0], 1)?;
            continue;
        }
        // A multiple root is a simple root of the (m−1)-th derivative.
        let mut dp = p.clone();
        for _ in 1..m {
            dp = poly_derivative(&dp);
        }
        let mean = members.iter().sum::<Complex64>() / m as f64;
        let w = polish(&dp, mean);
        let spread = members.iter().map(|x| (x - w).norm()).fold(0.0, f64::max);
        if relative_residual(&p, w) < ROOT_TOL && spread < CLUSTER_PROBE {
            push(w, m)?;
        } else {
            for x in members {
                push(x, 1)?;
            }
        }
    }
    Ok(SpineSaddles { u, v, roots: out })
}

fn polish(p: &[Complex64], mut w: Complex64) -> Complex64 {
    for _ in 0..200 {
        let (f, d) = poly_eval(p, w);
        if d == Complex64::default() {
            break;
        }
        let step = f / d;
        w -= step;
        if step.norm() <= 1e-16 * w.norm().max(1.0) {
            break;
        }
    }
    w
}

/// v at which two saddles of the u = 0 polynomial merge, by Newton on
/// P(w) = P'(w) = 0 in (w, v) from near e^{−2iπ/3}.
pub fn critical_velocity_from_discriminant() -> Result<f64> {
    let dv_poly = {
        let q = real_poly(&[1.0, -1.0, 1.0]);
        poly_scale(&poly_mul(&poly_mul(&real_poly(&[0.0, 1.0]), &q), &q), c(-1.0, 0.0))
    };
    let deriv = poly_derivative;
    let dv_d = deriv(&dv_poly);
    let mut w = Complex64::from_polar(1.02, -2.0 * PI / 3.0 + 0.05);
    let mut v = c(1.25, 0.0);
    for _ in 0..100 {
        let p = spine_polynomial(0.0, 0.0);
        let p = poly_add(&p, &poly_scale(&dv_poly, v));
        let pd = deriv(&p);
        let (f1, j11) = poly_eval(&p, w);
        let (f2, j21) = poly_eval(&pd, w);
        let j12 = poly_eval(&dv_poly, w).0;
        let j22 = poly_eval(&dv_d, w).0;
        let det = j11 * j22 - j12 * j21;
        let dw = (f1 * j22 - j12 * f2) / det;
        let dvv = (j11 * f2 - j21 * f1) / det;
        w -= dw;
        v -= dvv;
        if dw.norm() + dvv.norm() < 1e-15 {
            break;
        }
    }
    if v.im.abs() > 1e-9 {
        return Err(Error::RootFinding { residual: v.im.abs() });
    }
    Ok(v.re)
}

fn spine_g(w: Complex64, j: i64) -> Result<Complex64> {
    let z = z_of_w(w)?;
    Ok((1.0 - 1.0 / (z * z)) * z.powi(-(j as i32)) / w / (2.0 * PI * I))
}

/// The two unit-circle saddles in the lower-left quadrant for 0 < v < v_c.
pub fn spine_arc_saddles(v: f64) -> Result<[Complex64; 2]> {
    let s = spine_saddles(0.0, v)?;
    let arc: Vec<Complex64> = s
        .roots
        .iter()
        .map(|r| r.w)
        .filter(|w| (w.norm() - 1.0).abs() < 1e-8 && w.re < 0.0 && w.im <= 1e-12)
        .collect();
    if arc.len() != 2 {
        return Err(Error::Domain(format!(
            "expected two arc saddles at v = {v}, found {}",
            arc.len()
        )));
    }
    Ok([arc[0], arc[1]])
}

/// The decaying saddle w_2′ beyond the spine front (v > v_c).
pub fn spine_decay_saddle(v: f64) -> Result<Complex64> {
    let s = spine_saddles(0.0, v)?;
    s.roots
        .iter()
        .filter(|r| r.w.re < 0.0 && r.w.im < 0.0 && r.potential.re < 0.0)
        .max_by(|a, b| a.potential.re.partial_cmp(&b.potential.re).unwrap())
        .map(|r| r.w)
        .ok_or_else(|| Error::Domain(format!("no decaying saddle at v = {v}")))
}

/// χ(v) = −Re W(w_2′) for v > v_c.
pub fn spine_decay_rate(v: f64) -> Result<f64> {
    let (_, vc) = critical_velocities();
    if v <= vc {
        return Err(Error::Domain("decay rate is defined for v > v_c".into()));
    }
    Ok(-crate::contour::potential_w(spine_decay_saddle(v)?, 0.0, v)?.re)
}

/// A_t(0,0; n, j) for large t with j of order one.
pub fn spine_amplitude_asymptotic(n: i64, j: i64, t: f64) -> Result<Complex64> {
    if t <= 0.0 || j < 0 || n == 0 {
        return Err(Error::Domain("need t > 0, j >= 0 and n != 0".into()));
    }
    let p = n.unsigned_abs() as i32;
    let v = p as f64 / t;
    let (_, vc) = critical_velocities();
    let expo = |w: Complex64| -> Result<Complex64> { Ok(w.powi(-p) * (t * v0(z_of_w(w)?)).exp()) };
    match regime_at(v, vc, t) {
        Regime::AiryFront => {
            let wc = Complex64::from_polar(1.0, -2.0 * PI / 3.0);
            let (_, _, d3) = spine_derivatives(wc, 0.0, vc)?;
            let shift = (p as f64 - vc * t) / t.cbrt();
            airy_saddle(spine_g(wc, j)?, expo(wc)?, d3, wc, I * wc, shift, t)
        }
        Regime::Oscillatory => {
            let mut sum = Complex64::default();
            for w in spine_arc_saddles(v)? {
                let (_, d2, _) = spine_derivatives(w, 0.0, v)?;
                sum += gaussian_saddle(spine_g(w, j)?, expo(w)?, d2, I * w, t);
            }
            Ok(sum)
        }
        Regime::Evanescent => {
            let w = spine_decay_saddle(v)?;
            let (_, d2, _) = spine_derivatives(w, 0.0, v)?;
            Ok(gaussian_saddle(spine_g(w, j)?, expo(w)?, d2, I * w, t))
        }
    }
}

/// Coarse-grained t·|A_t(0,0; vt, j)|² for 0 < v < v_c.
pub fn coarse_profile_spine(v: f64, j: i64) -> Result<f64> {
    let (_, vc) = critical_velocities();
    if !(v > 0.0 && v < vc) || j < 0 {
        return Err(Error::Domain(format!("spine profile needs 0 < v < v_c, got {v}")));
    }
    let mut total = 0.0;
    for w in spine_arc_saddles(v)? {
        let (_, d2, _) = spine_derivatives(w, 0.0, v)?;
        total += 2.0 * PI * spine_g(w, j)?.norm_sqr() / d2.norm();
    }
    Ok(total)
}
