//! Steepest-descent geometry of the bulk spine integral in the w-plane:
//! path tracing, saddle relevance, the region atlas of the (u, v) quadrant,
//! Stokes and anti-Stokes lines.
//!
//! A saddle is relevant when exactly one of its two steepest-ascent paths
//! runs off to w = ∞; the other end then lies inside the original contour
//! (near w = 0 or one of the poles e^{±iπ/3}), so the ascent manifold crosses
//! the contour once.

use crate::asymptotics::{gaussian_saddle, spine_derivatives, spine_saddles, SaddleRoot, SpineSaddles};
use crate::contour::{v0, z_of_w};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Re W change, relative to the seed, at which a path is considered arrived.
pub const HEIGHT: f64 = 60.0;
const MAX_STEPS: usize = 400_000;
const STEP_FRACTION: f64 = 0.05;
/// Closer than this to a foreign saddle, a path is on a Stokes line.
const SADDLE_HIT: f64 = 1e-6;

fn poles() -> [Complex64; 2] {
    [Complex64::from_polar(1.0, PI / 3.0), Complex64::from_polar(1.0, -PI / 3.0)]
}

/// Where a steepest path ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Terminal {
    Zero,
    /// e^{iπ/3}
    PoleUpper,
    /// e^{−iπ/3}
    PoleLower,
    Infinity,
}

fn terminal_of(w: Complex64) -> Terminal {
    if w.norm() > 5.0 {
        return Terminal::Infinity;
    }
    let [pu, pl] = poles();
    let d = [w.norm(), (w - pu).norm(), (w - pl).norm()];
    let k = (0..3).min_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap()).unwrap();
    [Terminal::Zero, Terminal::PoleUpper, Terminal::PoleLower][k]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DescentPath {
    pub seed: Complex64,
    pub points: Vec<Complex64>,
    /// W along the path, on the branch continued from the seed.
    pub potentials: Vec<Complex64>,
    pub terminal: Terminal,
}

impl DescentPath {
    /// max |Im W − Im W(seed)| along the path.
    pub fn im_drift(&self) -> f64 {
        let c = self.potentials[0].im;
        self.potentials.iter().map(|p| (p.im - c).abs()).fold(0.0, f64::max)
    }
}

/// W(w; u, v) with the logarithms continued along a path.
struct Branch {
    u: f64,
    v: f64,
    z: Complex64,
    w: Complex64,
    arg_z: f64,
    arg_w: f64,
}

impl Branch {
    fn new(w: Complex64, u: f64, v: f64) -> Result<Self> {
        let z = z_of_w(w)?;
        Ok(Branch { u, v, z, w, arg_z: z.arg(), arg_w: w.arg() })
    }

    /// W at `w` reached by a short move from the current point.
    fn peek(&self, w: Complex64) -> Result<(Complex64, f64, f64)> {
        let z = z_of_w(w)?;
        if z == Complex64::default() {
            return Err(Error::Domain("path hit z(w) = 0".into()));
        }
        let arg_z = self.arg_z + (z / self.z).arg();
        let arg_w = self.arg_w + (w / self.w).arg();
        let val = v0(z) - self.u * Complex64::new(z.norm().ln(), arg_z)
            - self.v * Complex64::new(w.norm().ln(), arg_w);
        Ok((val, arg_z, arg_w))
    }

    fn value(&self) -> Complex64 {
        self.peek(self.w).map(|p| p.0).unwrap_or_default()
    }

    fn accept(&mut self, w: Complex64, arg_z: f64, arg_w: f64) {
        self.z = z_of_w(w).unwrap_or(self.z);
        self.w = w;
        self.arg_z = arg_z;
        self.arg_w = arg_w;
    }
}

fn derivative(w: Complex64, u: f64, v: f64) -> Result<Complex64> {
    Ok(spine_derivatives(w, u, v)?.0)
}

/// Unit direction of steepest ascent (`sign` = 1) or descent (`sign` = −1).
fn flow(w: Complex64, u: f64, v: f64, sign: f64) -> Result<Complex64> {
    let d = derivative(w, u, v)?;
    let n = d.norm();
    if n == 0.0 {
        return Err(Error::Stall { re: w.re, im: w.im });
    }
    Ok(sign * d.conj() / n)
}

fn trace(
    seed: Complex64,
    start: Complex64,
    others: &[Complex64],
    u: f64,
    v: f64,
    sign: f64,
) -> Result<DescentPath> {
    let mut br = Branch::new(seed, u, v)?;
    let w0 = br.value();
    let target = w0.im;
    let (val, az, aw) = br.peek(start)?;
    br.accept(start, az, aw);
    let mut points = vec![seed, start];
    let mut potentials = vec![w0, val];
    let mut last = val;
    let [pu, pl] = poles();
    let mut h_scale = 1.0;
    for _ in 0..MAX_STEPS {
        let w = br.w;
        if (sign * (last.re - w0.re)) > HEIGHT || w.norm() > 1e3 {
            return Ok(DescentPath { seed, points, potentials, terminal: terminal_of(w) });
        }
        let mut scale = w.norm().min((w - pu).norm()).min((w - pl).norm()).min((w - seed).norm());
        for o in others {
            let d = (w - o).norm();
            if d < SADDLE_HIT {
                return Err(Error::ClassificationAmbiguous { u, v });
            }
            scale = scale.min(d);
        }
        let h = STEP_FRACTION * scale * h_scale;
        if h < 1e-14 * w.norm().max(1.0) {
            return Err(Error::Stall { re: w.re, im: w.im });
        }
        let step = || -> Result<Complex64> {
            let k1 = flow(w, u, v, sign)?;
            let k2 = flow(w + 0.5 * h * k1, u, v, sign)?;
            let k3 = flow(w + 0.5 * h * k2, u, v, sign)?;
            let k4 = flow(w + h * k3, u, v, sign)?;
            let mut x = w + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            // project back onto Im W = const
            for _ in 0..4 {
                let (val, _, _) = br.peek(x)?;
                let d = val.im - target;
                if d.abs() < 1e-13 * val.norm().max(1.0) {
                    break;
                }
                x -= I * d / derivative(x, u, v)?;
            }
            Ok(x)
        };
        let next = match step() {
            Ok(x) => x,
            Err(Error::Domain(_)) | Err(Error::Stall { .. }) => {
                h_scale *= 0.5;
                continue;
            }
            Err(e) => return Err(e),
        };
        let (val, az, aw) = br.peek(next)?;
        let moved_far = (next - w).norm() > 2.0 * h;
        if sign * (val.re - last.re) <= 0.0 || moved_far || (val.im - target).abs() > 1e-9 {
            h_scale *= 0.5;
            continue;
        }
        h_scale = (h_scale * 2.0).min(1.0);
        br.accept(next, az, aw);
        points.push(next);
        potentials.push(val);
        last = val;
    }
    Err(Error::Stall { re: br.w.re, im: br.w.im })
}

fn start_offset(seed: Complex64, others: &[Complex64]) -> f64 {
    let [pu, pl] = poles();
    let mut r = seed.norm().min((seed - pu).norm()).min((seed - pl).norm());
    for o in others {
        r = r.min((seed - o).norm());
    }
    1e-4 * r
}

fn paths(
    seed: Complex64,
    others: &[Complex64],
    u: f64,
    v: f64,
    sign: f64,
) -> Result<[DescentPath; 2]> {
    let (_, d2, _) = spine_derivatives(seed, u, v)?;
    if d2.norm() == 0.0 {
        return Err(Error::Domain("seed is a degenerate saddle".into()));
    }
    // W ≈ W0 + W''δ²/2: real positive for ascent, negative for descent
    let mut dir = Complex64::from_polar(1.0, -0.5 * d2.arg());
    if sign < 0.0 {
        dir *= I;
    }
    let r = start_offset(seed, others);
    let a = trace(seed, seed + r * dir, others, u, v, sign)?;
    let b = trace(seed, seed - r * dir, others, u, v, sign)?;
    Ok([a, b])
}

fn foreign(s: &SpineSaddles, seed: Complex64) -> Vec<Complex64> {
    s.roots.iter().map(|r| r.w).filter(|w| (w - seed).norm() > 1e-12).collect()
}

/// Both steepest-descent paths out of the simple saddle `w_s`.
pub fn trace_descent(w_s: Complex64, u: f64, v: f64) -> Result<[DescentPath; 2]> {
    let s = spine_saddles(u, v)?;
    paths(w_s, &foreign(&s, w_s), u, v, -1.0)
}

/// Both steepest-ascent paths out of the simple saddle `w_s`.
pub fn trace_ascent(w_s: Complex64, u: f64, v: f64) -> Result<[DescentPath; 2]> {
    let s = spine_saddles(u, v)?;
    paths(w_s, &foreign(&s, w_s), u, v, 1.0)
}

/// Relevance of a simple saddle and the ascent direction that leads to ∞.
fn relevance(seed: Complex64, others: &[Complex64], u: f64, v: f64) -> Result<(bool, Option<Complex64>)> {
    let [a, b] = paths(seed, others, u, v, 1.0)?;
    let ends = [a.terminal, b.terminal];
    let out = ends.iter().filter(|t| **t == Terminal::Infinity).count();
    if out == 1 {
        let p = if ends[0] == Terminal::Infinity { &a } else { &b };
        Ok((true, Some((p.points[1] - seed) / (p.points[1] - seed).norm())))
    } else {
        Ok((false, None))
    }
}

/// Offset used to resolve axis points as limits from inside the quadrant.
pub const AXIS_OFFSET: f64 = 1e-7;

/// [`relevance`], except that on the axes u = 0 or v = 0, where ascent paths
/// can run exactly into other saddles, it takes the limit from the interior.
fn relevance_in_quadrant(
    seed: Complex64,
    s: &SpineSaddles,
    u: f64,
    v: f64,
) -> Result<(bool, Option<Complex64>)> {
    match relevance(seed, &foreign(s, seed), u, v) {
        Err(Error::ClassificationAmbiguous { .. }) if u == 0.0 || v == 0.0 => {
            let up = if u == 0.0 { AXIS_OFFSET } else { u };
            let vp = if v == 0.0 { AXIS_OFFSET } else { v };
            let shifted = spine_saddles(up, vp)?;
            let near = shifted
                .roots
                .iter()
                .min_by(|a, b| (a.w - seed).norm().partial_cmp(&(b.w - seed).norm()).unwrap())
                .ok_or(Error::RootFinding { residual: f64::NAN })?;
            relevance(near.w, &foreign(&shifted, near.w), up, vp)
        }
        other => other,
    }
}

/// The spine saddles at (u, v) with relevance flags set. Multiple roots keep
/// `relevant = None`.
pub fn relevant_saddles(u: f64, v: f64) -> Result<SpineSaddles> {
    let mut s = spine_saddles(u, v)?;
    let flags: Vec<Result<Option<bool>>> = s
        .roots
        .par_iter()
        .map(|r| {
            if r.multiplicity > 1 {
                return Ok(None);
            }
            Ok(Some(relevance_in_quadrant(r.w, &s, u, v)?.0))
        })
        .collect();
    for (r, f) in s.roots.iter_mut().zip(flags) {
        r.relevant = f?;
    }
    Ok(s)
}

/// The three tracked bulk saddles: w1 continues −1, w2 continues −i and w3 is
/// the branch out of the triple root at 1 with the smallest Re W near the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabeledSaddles {
    pub u: f64,
    pub v: f64,
    pub w: [SaddleRoot; 3],
}

const ANCHOR: f64 = 1e-3;
const RAY_STEPS: usize = 400;

fn roots_at(u: f64, v: f64) -> Result<Vec<SaddleRoot>> {
    Ok(spine_saddles(u, v)?.roots)
}

fn nearest(roots: &[SaddleRoot], w: Complex64, taken: &[usize]) -> Option<usize> {
    (0..roots.len())
        .filter(|k| !taken.contains(k))
        .min_by(|&a, &b| (roots[a].w - w).norm().partial_cmp(&(roots[b].w - w).norm()).unwrap())
}

fn match_labels(prev: [Complex64; 3], roots: &[SaddleRoot]) -> Result<[SaddleRoot; 3]> {
    let mut taken = Vec::new();
    let mut out = [roots[0]; 3];
    for (k, w) in prev.iter().enumerate() {
        let i = nearest(roots, *w, &taken).ok_or(Error::RootFinding { residual: f64::NAN })?;
        // a merged root stands for both of its labels
        if roots[i].multiplicity == 1 {
            taken.push(i);
        }
        out[k] = roots[i];
    }
    Ok(out)
}

/// Labels at (u, v) continued by nearest-root matching from labels `prev`
/// known at a nearby point.
pub fn continue_labels(prev: &LabeledSaddles, u: f64, v: f64) -> Result<LabeledSaddles> {
    let roots = roots_at(u, v)?;
    let w = match_labels([prev.w[0].w, prev.w[1].w, prev.w[2].w], &roots)?;
    Ok(LabeledSaddles { u, v, w })
}

/// Labels by continuation along the ray from a small anchor toward (u, v).
pub fn label_saddles(u: f64, v: f64) -> Result<LabeledSaddles> {
    let r = u.hypot(v);
    if !(u >= 0.0 && v >= 0.0) || r == 0.0 {
        return Err(Error::Domain("labels need (u, v) in the quadrant, away from the origin".into()));
    }
    let (du, dv) = (u / r, v / r);
    let r0 = ANCHOR.min(r);
    let roots = roots_at(r0 * du, r0 * dv)?;
    let mut taken = Vec::new();
    let i1 = nearest(&roots, Complex64::new(-1.0, 0.0), &taken).unwrap();
    taken.push(i1);
    let i2 = nearest(&roots, -I, &taken).unwrap();
    taken.push(i2);
    let iu = nearest(&roots, I, &taken).unwrap();
    taken.push(iu);
    let i3 = (0..roots.len())
        .filter(|k| !taken.contains(k))
        .min_by(|&a, &b| roots[a].potential.re.partial_cmp(&roots[b].potential.re).unwrap())
        .ok_or(Error::RootFinding { residual: f64::NAN })?;
    let mut cur = LabeledSaddles { u: r0 * du, v: r0 * dv, w: [roots[i1], roots[i2], roots[i3]] };
    if r > r0 {
        let ratio = (r / r0).powf(1.0 / RAY_STEPS as f64);
        let mut rk = r0;
        for k in 0..RAY_STEPS {
            rk = if k + 1 == RAY_STEPS { r } else { rk * ratio };
            cur = continue_labels(&cur, rk * du, rk * dv)?;
        }
    }
    cur.u = u;
    cur.v = v;
    Ok(cur)
}

/// Labels with relevance flags. The three tracked saddles are checked
/// against all six roots as obstacles.
pub fn labeled_relevance(labels: &LabeledSaddles) -> Result<[bool; 3]> {
    let s = spine_saddles(labels.u, labels.v)?;
    let flags: Vec<Result<bool>> = labels
        .w
        .par_iter()
        .map(|r| {
            if r.multiplicity > 1 {
                return Err(Error::ClassificationAmbiguous { u: labels.u, v: labels.v });
            }
            Ok(relevance_in_quadrant(r.w, &s, labels.u, labels.v)?.0)
        })
        .collect();
    let mut out = [false; 3];
    for (o, f) in out.iter_mut().zip(flags) {
        *o = f?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Major {
    A,
    B,
    C,
    D,
}

impl std::fmt::Display for Major {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionLabel {
    pub major: Major,
    /// Sub-region index, `None` if the Re W ordering is not one of those
    /// listed for the major region.
    pub sub: Option<u8>,
    /// Saddle labels (1, 2, 3) by decreasing Re W.
    pub order: [u8; 3],
    pub relevant: [bool; 3],
}

impl RegionLabel {
    pub fn name(&self) -> String {
        match self.sub {
            Some(k) => format!("{}{}", self.major, k),
            None => format!("{}?", self.major),
        }
    }
}

const SUBREGIONS: [(Major, [[u8; 3]; 6]); 4] = [
    (Major::A, [[2, 1, 3], [2, 3, 1], [0; 3], [0; 3], [0; 3], [0; 3]]),
    (Major::B, [[1, 2, 3], [2, 1, 3], [2, 3, 1], [0; 3], [0; 3], [0; 3]]),
    (Major::C, [[2, 3, 1], [3, 2, 1], [0; 3], [0; 3], [0; 3], [0; 3]]),
    (Major::D, [[1, 2, 3], [2, 1, 3], [2, 3, 1], [3, 2, 1], [3, 1, 2], [1, 3, 2]]),
];

fn region_from(labels: &LabeledSaddles, relevant: [bool; 3]) -> Result<RegionLabel> {
    if !relevant[1] {
        return Err(Error::ClassificationAmbiguous { u: labels.u, v: labels.v });
    }
    let major = match (relevant[0], relevant[2]) {
        (true, true) => Major::A,
        (false, true) => Major::B,
        (true, false) => Major::C,
        (false, false) => Major::D,
    };
    let mut order = [1u8, 2, 3];
    order.sort_by(|a, b| {
        let ra = labels.w[*a as usize - 1].potential.re;
        let rb = labels.w[*b as usize - 1].potential.re;
        rb.partial_cmp(&ra).unwrap()
    });
    let table = SUBREGIONS.iter().find(|(m, _)| *m == major).unwrap().1;
    let sub = table.iter().position(|o| *o == order).map(|k| k as u8 + 1);
    Ok(RegionLabel { major, sub, order, relevant })
}

/// Region of the quadrant containing (u, v).
pub fn classify_region(u: f64, v: f64) -> Result<RegionLabel> {
    let labels = label_saddles(u, v)?;
    region_from(&labels, labeled_relevance(&labels)?)
}

/// The Stokes point on the tooth axis: the u in (2, 3) where w1 = −1 stops
/// being relevant at v = 0.
pub fn stokes_point_on_u_axis() -> Result<f64> {
    let w1 = Complex64::new(-1.0, 0.0);
    let relevant = |u: f64| -> Result<bool> {
        let s = spine_saddles(u, 0.0)?;
        Ok(relevance(w1, &foreign(&s, w1), u, 0.0)?.0)
    };
    let (mut lo, mut hi) = (2.01, 3.0);
    if !relevant(lo)? || relevant(hi)? {
        return Err(Error::ClassificationAmbiguous { u: lo, v: 0.0 });
    }
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if relevant(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sum of Gaussian contributions of the relevant saddles to A_t(0,0; n, j),
/// with u = j/t and v = |n|/t in the bulk.
pub fn saddle_sum_amplitude(n: i64, j: i64, t: f64) -> Result<Complex64> {
    if t <= 0.0 || j < 0 {
        return Err(Error::Domain("need t > 0 and j >= 0".into()));
    }
    let p = n.unsigned_abs() as i32;
    let (u, v) = (j as f64 / t, p as f64 / t);
    let s = spine_saddles(u, v)?;
    let mut sum = Complex64::default();
    for r in &s.roots {
        if r.multiplicity > 1 {
            return Err(Error::ClassificationAmbiguous { u, v });
        }
        let (rel, out) = relevance_in_quadrant(r.w, &s, u, v)?;
        if !rel {
            continue;
        }
        let z = z_of_w(r.w)?;
        let g = (1.0 - 1.0 / (z * z)) / r.w / (2.0 * PI * I);
        let expo = z.powi(-(j as i32)) * r.w.powi(-p) * (t * v0(z)).exp();
        sum += gaussian_saddle(g, expo, r.second, I * out.unwrap(), t);
    }
    Ok(sum)
}

// ------------------------------------------------------------------ atlas

/// Uniform grid of interior nodes u_i = u_max·i/n, v_k = v_max·k/n, i, k = 1..=n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub u_max: f64,
    pub v_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(u_max: f64, v_max: f64, n: usize) -> Self {
        assert!(n >= 2 && u_max > 0.0 && v_max > 0.0);
        Grid { u_max, v_max, n }
    }

    pub fn u(&self, i: usize) -> f64 {
        self.u_max * (i + 1) as f64 / self.n as f64
    }

    pub fn v(&self, k: usize) -> f64 {
        self.v_max * (k + 1) as f64 / self.n as f64
    }
}

/// Labels at every grid node, indexed [k][i] (row v_k, column u_i), continued
/// up the first column and then along each row.
pub fn label_grid(grid: &Grid) -> Result<Vec<Vec<LabeledSaddles>>> {
    let mut column = Vec::with_capacity(grid.n);
    let mut cur = label_saddles(grid.u(0), grid.v(0))?;
    column.push(cur);
    for k in 1..grid.n {
        cur = continue_fine(&cur, grid.u(0), grid.v(k))?;
        column.push(cur);
    }
    column
        .into_par_iter()
        .enumerate()
        .map(|(k, first)| {
            let mut row = vec![first];
            for i in 1..grid.n {
                let next = continue_fine(row.last().unwrap(), grid.u(i), grid.v(k))?;
                row.push(next);
            }
            Ok(row)
        })
        .collect()
}

/// Continuation in a few sub-steps so nearest matching stays unambiguous.
fn continue_fine(prev: &LabeledSaddles, u: f64, v: f64) -> Result<LabeledSaddles> {
    const SUB: usize = 8;
    let mut cur = *prev;
    for s in 1..=SUB {
        let f = s as f64 / SUB as f64;
        cur = continue_labels(&cur, prev.u + f * (u - prev.u), prev.v + f * (v - prev.v))?;
    }
    Ok(cur)
}

/// One row of the atlas.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtlasCell {
    pub u: f64,
    pub v: f64,
    pub region: Option<RegionLabel>,
}

/// Region labels over the grid; ambiguous nodes carry `None`.
pub fn region_atlas(grid: &Grid) -> Result<Vec<AtlasCell>> {
    let labels = label_grid(grid)?;
    let flat: Vec<LabeledSaddles> = labels.into_iter().flatten().collect();
    flat.par_iter()
        .map(|l| {
            let region = match labeled_relevance(l).and_then(|rel| region_from(l, rel)) {
                Ok(r) => Some(r),
                Err(Error::ClassificationAmbiguous { .. }) | Err(Error::Stall { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(AtlasCell { u: l.u, v: l.v, region })
        })
        .collect()
}

/// A pair of tracked saddles, by label index 1..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaddlePair(pub u8, pub u8);

fn re_gap(l: &LabeledSaddles, pair: SaddlePair) -> f64 {
    l.w[pair.0 as usize - 1].potential.re - l.w[pair.1 as usize - 1].potential.re
}

fn refine_on_edge(a: &LabeledSaddles, b: (f64, f64), pair: SaddlePair) -> Result<(f64, f64, f64)> {
    let ga = re_gap(a, pair);
    let (mut lo, mut hi) = (0.0, 1.0);
    let at = |f: f64| -> Result<LabeledSaddles> {
        continue_fine(a, a.u + f * (b.0 - a.u), a.v + f * (b.1 - a.v))
    };
    let mut last = *a;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        last = at(mid)?;
        if (re_gap(&last, pair) > 0.0) == (ga > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    Ok((last.u, last.v, re_gap(&last, pair).abs()))
}

/// Points of the anti-Stokes line Re W(w_a) = Re W(w_b), chained into
/// polylines from the grid's marching-squares segments.
pub fn anti_stokes_lines(pair: SaddlePair, grid: &Grid) -> Result<Vec<Vec<(f64, f64)>>> {
    let labels = label_grid(grid)?;
    let n = grid.n;
    // crossings on horizontal (i,k)-(i+1,k) and vertical (i,k)-(i,k+1) edges
    let mut crossing = std::collections::HashMap::new();
    for k in 0..n {
        for i in 0..n {
            let here = &labels[k][i];
            let g = re_gap(here, pair);
            for (dir, (ni, nk)) in [(0u8, (i + 1, k)), (1u8, (i, k + 1))] {
                if ni >= n || nk >= n {
                    continue;
                }
                let there = &labels[nk][ni];
                if (g > 0.0) != (re_gap(there, pair) > 0.0) {
                    let p = refine_on_edge(here, (there.u, there.v), pair)?;
                    crossing.insert((i, k, dir), (p.0, p.1));
                }
            }
        }
    }
    // each cell joins its crossings pairwise
    let mut links: std::collections::HashMap<(usize, usize, u8), Vec<(usize, usize, u8)>> =
        std::collections::HashMap::new();
    for k in 0..n - 1 {
        for i in 0..n - 1 {
            let edges = [(i, k, 0u8), (i + 1, k, 1u8), (i, k + 1, 0u8), (i, k, 1u8)];
            let hit: Vec<_> = edges.iter().copied().filter(|e| crossing.contains_key(e)).collect();
            for pair in hit.chunks(2) {
                if let [a, b] = pair {
                    links.entry(*a).or_default().push(*b);
                    links.entry(*b).or_default().push(*a);
                }
            }
        }
    }
    let mut keys: Vec<_> = crossing.keys().copied().collect();
    keys.sort();
    let mut seen = std::collections::HashSet::new();
    let mut lines = Vec::new();
    // start from line ends first, then close loops
    let ends: Vec<_> = keys.iter().copied().filter(|k| links.get(k).map_or(0, |v| v.len()) < 2).collect();
    for start in ends.into_iter().chain(keys.iter().copied()) {
        if seen.contains(&start) {
            continue;
        }
        let mut line = Vec::new();
        let mut cur = Some(start);
        while let Some(c) = cur {
            seen.insert(c);
            line.push(crossing[&c]);
            cur = links.get(&c).and_then(|v| v.iter().copied().find(|x| !seen.contains(x)));
        }
        lines.push(line);
    }
    Ok(lines)
}

/// The point where Re W(w1) = Re W(w2) = Re W(w3), by Newton in (u, v) from
/// a starting guess.
pub fn anti_stokes_point(guess: (f64, f64)) -> Result<(f64, f64)> {
    let mut labels = label_saddles(guess.0, guess.1)?;
    let f = |l: &LabeledSaddles| (re_gap(l, SaddlePair(1, 2)), re_gap(l, SaddlePair(2, 3)));
    for _ in 0..60 {
        let (f1, f2) = f(&labels);
        if f1.abs().max(f2.abs()) < 1e-13 {
            return Ok((labels.u, labels.v));
        }
        let h = 1e-6;
        let lu = continue_labels(&labels, labels.u + h, labels.v)?;
        let lv = continue_labels(&labels, labels.u, labels.v + h)?;
        let (a11, a21) = ((f(&lu).0 - f1) / h, (f(&lu).1 - f2) / h);
        let (a12, a22) = ((f(&lv).0 - f1) / h, (f(&lv).1 - f2) / h);
        let det = a11 * a22 - a12 * a21;
        let du = (f1 * a22 - a12 * f2) / det;
        let dv = (a11 * f2 - a21 * f1) / det;
        let (u, v) = (labels.u - du, labels.v - dv);
        if !(u > 0.0 && v > 0.0) {
            return Err(Error::RootFinding { residual: f1.abs().max(f2.abs()) });
        }
        labels = continue_fine(&labels, u, v)?;
    }
    let (f1, f2) = f(&labels);
    Err(Error::RootFinding { residual: f1.abs().max(f2.abs()) })
}

/// Where the major region changes along the segment p0 → p1 sampled at
/// `samples` points, each boundary refined by bisection to `tol` in the
/// segment parameter. Returns (parameter, region before, region after).
pub fn region_boundaries(
    p0: (f64, f64),
    p1: (f64, f64),
    samples: usize,
    tol: f64,
) -> Result<Vec<(f64, Major, Major)>> {
    let at = |s: f64| (p0.0 + s * (p1.0 - p0.0), p0.1 + s * (p1.1 - p0.1));
    let major = |s: f64| -> Result<Major> {
        let (u, v) = at(s);
        Ok(classify_region(u, v)?.major)
    };
    let params: Vec<f64> = (0..samples).map(|k| k as f64 / (samples - 1) as f64).collect();
    let labels: Vec<Major> = params.par_iter().map(|&s| major(s)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for k in 1..samples {
        if labels[k] == labels[k - 1] {
            continue;
        }
        let (mut lo, mut hi) = (params[k - 1], params[k]);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if major(mid)? == labels[k - 1] {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push((0.5 * (lo + hi), labels[k - 1], labels[k]));
    }
    Ok(out)
}

fn segment_intersection(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> Option<(f64, f64)> {
    let r = (b.0 - a.0, b.1 - a.1);
    let q = (d.0 - c.0, d.1 - c.1);
    let den = r.0 * q.1 - r.1 * q.0;
    if den == 0.0 {
        return None;
    }
    let s = ((c.0 - a.0) * q.1 - (c.1 - a.1) * q.0) / den;
    let t = ((c.0 - a.0) * r.1 - (c.1 - a.1) * r.0) / den;
    ((0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t)).then(|| (a.0 + s * r.0, a.1 + s * r.1))
}

/// The triple anti-Stokes point, seeded from the crossing of the (w1, w2)
/// and (w1, w3) lines on `grid`.
pub fn find_anti_stokes_point(grid: &Grid) -> Result<(f64, f64)> {
    let l12 = anti_stokes_lines(SaddlePair(1, 2), grid)?;
    let l13 = anti_stokes_lines(SaddlePair(1, 3), grid)?;
    for a in &l12 {
        for sa in a.windows(2) {
            for b in &l13 {
                for sb in b.windows(2) {
                    if let Some(p) = segment_intersection(sa[0], sa[1], sb[0], sb[1]) {
                        return anti_stokes_point(p);
                    }
                }
            }
        }
    }
    Err(Error::RootFinding { residual: f64::NAN })
}
