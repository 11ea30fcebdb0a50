//! Reference propagator: Chebyshev expansion of e^{−itH} on a truncated comb.
//!
//! With X = (H − 3)/3 the spectrum of X lies in [−1, 1] and
//! e^{−itH} = e^{−3it} Σ_k (2 − δ_k0)(−i)^k J_k(3t) T_k(X).

use crate::comb::{stencil, SupportBox, Truncation, Vertex, WaveState};
use crate::error::{Error, Result};
use crate::quad::bessel_j_sequence;
use num_complex::Complex64;
use rayon::prelude::*;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MARGIN: usize = 40;

/// Window L = M = ceil(3t) + margin.
pub fn truncation_for(t: f64, margin: usize) -> Truncation {
    assert!(t >= 0.0, "truncation_for needs t >= 0");
    let side = (3.0 * t).ceil() as usize + margin;
    Truncation::new(side.max(1), side.max(1))
}

#[derive(Debug, Clone, Copy)]
pub struct EvolveOptions {
    pub tol: f64,
    /// Maximal polynomial degree; `None` means 16·(|t| + 1).
    pub degree_cap: Option<usize>,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            degree_cap: None,
        }
    }
}

impl EvolveOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    fn cap(&self, t: f64) -> usize {
        self.degree_cap
            .unwrap_or_else(|| (16.0 * (t.abs() + 1.0)).ceil() as usize)
    }
}

/// Expansion coefficients of e^{−i a X}, truncated where |c_k| < tol/10.
pub fn chebyshev_coefficients(a: f64, tol: f64, cap: usize) -> Result<Vec<Complex64>> {
    let probe = cap + 32;
    let j = bessel_j_sequence(probe, a.abs());
    let thresh = tol / 10.0;
    let last = j.iter().rposition(|v| v.abs() >= thresh).unwrap_or(0);
    if last >= cap {
        return Err(Error::ToleranceNotReached { cap, tol });
    }
    let mut phase = Complex64::new(1.0, 0.0);
    let step = if a >= 0.0 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    Ok((0..=last)
        .map(|k| {
            let ck = phase * j[k] * if k == 0 { 1.0 } else { 2.0 };
            phase *= step;
            ck
        })
        .collect())
}

/// e^{−itH} ψ₀ on ψ₀'s window.
pub fn evolve(psi0: &WaveState, t: f64, tol: f64) -> Result<WaveState> {
    evolve_with(psi0, t, &EvolveOptions::with_tol(tol))
}

pub fn evolve_with(psi0: &WaveState, t: f64, opts: &EvolveOptions) -> Result<WaveState> {
    let trunc = psi0.truncation();
    if t == 0.0 {
        return Ok(psi0.clone());
    }
    let Some(mut bx) = psi0.support() else {
        return Ok(psi0.clone());
    };
    let coeffs = chebyshev_coefficients(3.0 * t, opts.tol, opts.cap(t))?;
    let n = trunc.sites();
    let zero = Complex64::default();
    let mut prev = psi0.amplitudes().to_vec();
    let mut acc: Vec<Complex64> = prev.iter().map(|v| v * coeffs[0]).collect();
    if coeffs.len() > 1 {
        let mut cur = vec![zero; n];
        bx = bx.grow(trunc);
        stencil(trunc, bx, &prev, None, 1.0 / 3.0, -1.0, 0.0, &mut cur);
        accumulate(trunc, bx, &mut acc, &cur, coeffs[1]);
        let mut next = vec![zero; n];
        for &ck in &coeffs[2..] {
            bx = bx.grow(trunc);
            stencil(trunc, bx, &cur, Some(&prev), 2.0 / 3.0, -2.0, -1.0, &mut next);
            accumulate(trunc, bx, &mut acc, &next, ck);
            std::mem::swap(&mut prev, &mut cur);
            std::mem::swap(&mut cur, &mut next);
        }
    }
    let phase = Complex64::from_polar(1.0, -3.0 * t);
    acc.par_iter_mut().for_each(|a| *a *= phase);
    Ok(WaveState::from_vec(trunc, acc))
}

fn accumulate(trunc: Truncation, bx: SupportBox, acc: &mut [Complex64], v: &[Complex64], c: Complex64) {
    let len = trunc.tooth_len();
    let l = trunc.l as i64;
    let first = (bx.n_lo + l) as usize;
    let last = (bx.n_hi + l) as usize;
    let jh = bx.j_hi as usize;
    acc[first * len..(last + 1) * len]
        .par_chunks_mut(len)
        .zip(v[first * len..(last + 1) * len].par_chunks(len))
        .for_each(|(a, x)| {
            for j in 0..=jh {
                a[j] += x[j] * c;
            }
        });
}

/// Window for evolving out of `origin` over time `t`, with the origin
/// translated to n = 0.
pub fn window_for(origin: Vertex, t: f64, margin: usize) -> Truncation {
    let base = truncation_for(t.abs(), margin);
    Truncation::new(base.l, base.m + origin.j as usize)
}

/// Full wave function started at `origin`, translated so the origin sits at n = 0.
pub fn propagate_point(origin: Vertex, t: f64, tol: f64) -> Result<WaveState> {
    let trunc = window_for(origin, t, DEFAULT_MARGIN);
    let start = WaveState::point(trunc, Vertex::new(0, origin.j));
    evolve(&start, t, tol)
}

/// ⟨target| e^{−itH} |origin⟩.
pub fn amplitude_exact(origin: Vertex, target: Vertex, t: f64, tol: f64) -> Result<Complex64> {
    let psi = propagate_point(origin, t, tol)?;
    Ok(psi.get(Vertex::new(target.n - origin.n, target.j)))
}

/// Mean of t·|ψ|² along tooth `n` over j within `half` of `center`.
pub fn windowed_tooth_density(psi: &WaveState, t: f64, n: i64, center: f64, half: f64) -> f64 {
    let lo = (center - half).ceil().max(0.0) as i64;
    let hi = (center + half).floor() as i64;
    let vals: Vec<f64> = (lo..=hi).map(|j| psi.get(Vertex::new(n, j)).norm_sqr()).collect();
    t * vals.iter().sum::<f64>() / vals.len().max(1) as f64
}

/// Mean of t·|ψ|² along row `j` over n within `half` of `center`.
pub fn windowed_spine_density(psi: &WaveState, t: f64, j: i64, center: f64, half: f64) -> f64 {
    let lo = (center - half).ceil() as i64;
    let hi = (center + half).floor() as i64;
    let vals: Vec<f64> = (lo..=hi).map(|n| psi.get(Vertex::new(n, j)).norm_sqr()).collect();
    t * vals.iter().sum::<f64>() / vals.len().max(1) as f64
}

/// Real Chebyshev moments μ_k = ⟨s|T_k(X)|s⟩ of a site s = (0, j0),
/// for fast diagonal amplitudes at many times.
#[derive(Debug, Clone)]
pub struct ChebyshevMoments {
    pub source: Vertex,
    pub moments: Vec<f64>,
}

impl ChebyshevMoments {
    /// Moments up to degree `k_max`. Uses μ_{2k} = 2⟨v_k,v_k⟩ − μ_0 and
    /// μ_{2k+1} = 2⟨v_{k+1},v_k⟩ − μ_1, so only degree k_max/2 vectors are built.
    pub fn compute(j0: usize, k_max: usize) -> Self {
        let half = k_max / 2 + 1;
        let trunc = Truncation::new(half + 2, half + 2 + j0);
        let src = Vertex::new(0, j0 as i64);
        let idx = trunc.index(src).unwrap();
        let n = trunc.sites();
        let mut prev = vec![0.0f64; n];
        prev[idx] = 1.0;
        let mut bx = SupportBox {
            n_lo: 0,
            n_hi: 0,
            j_hi: j0 as i64,
        };
        let mut cur = vec![0.0f64; n];
        bx = bx.grow(trunc);
        stencil(trunc, bx, &prev, None, 1.0 / 3.0, -1.0, 0.0, &mut cur);
        let mut mu = vec![0.0; k_max + 1];
        mu[0] = 1.0;
        if k_max >= 1 {
            mu[1] = cur[idx];
        }
        let mut next = vec![0.0f64; n];
        // invariant: prev = v_{k-1}, cur = v_k
        let mut k = 1;
        loop {
            let e = 2 * k;
            if e <= k_max {
                mu[e] = 2.0 * dot(&cur, &cur) - mu[0];
            }
            if e - 1 <= k_max {
                mu[e - 1] = 2.0 * dot(&cur, &prev) - mu[1];
            }
            if e >= k_max {
                break;
            }
            bx = bx.grow(trunc);
            stencil(trunc, bx, &cur, Some(&prev), 2.0 / 3.0, -2.0, -1.0, &mut next);
            std::mem::swap(&mut prev, &mut cur);
            std::mem::swap(&mut cur, &mut next);
            k += 1;
        }
        Self {
            source: src,
            moments: mu,
        }
    }

    /// Moments sufficient for every |t| ≤ t_max at tolerance `tol`.
    pub fn for_times(j0: usize, t_max: f64, tol: f64) -> Result<Self> {
        let cap = (16.0 * (t_max + 1.0)).ceil() as usize;
        let k = chebyshev_coefficients(3.0 * t_max, tol, cap)?.len();
        Ok(Self::compute(j0, k + 1))
    }

    /// ⟨s|e^{−itH}|s⟩.
    pub fn amplitude(&self, t: f64, tol: f64) -> Result<Complex64> {
        let k_max = self.moments.len() - 1;
        let c = chebyshev_coefficients(3.0 * t, tol, k_max + 1)?;
        let s: Complex64 = c.iter().zip(&self.moments).map(|(c, m)| c * *m).sum();
        Ok(s * Complex64::from_polar(1.0, -3.0 * t))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.par_iter().zip(b.par_iter()).map(|(x, y)| x * y).sum()
}
