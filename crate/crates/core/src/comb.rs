//! The comb lattice, truncated windows, and the action of H = −Laplacian.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

/// A comb site: spine coordinate `n`, tooth coordinate `j` (0 on the spine).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub n: i64,
    pub j: i64,
}

impl Vertex {
    pub fn new(n: i64, j: i64) -> Self {
        assert!(j >= 0, "tooth coordinate must be nonnegative");
        Self { n, j }
    }

    pub const ORIGIN: Vertex = Vertex { n: 0, j: 0 };
}

/// Degree in the infinite comb.
pub fn degree(v: Vertex) -> u32 {
    if v.j == 0 {
        3
    } else {
        2
    }
}

/// Upper bound on ‖H‖ (twice the maximal degree).
pub fn spectral_bound() -> f64 {
    6.0
}

/// Finite window n ∈ [−L, L], j ∈ [0, M].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub l: usize,
    pub m: usize,
}

impl Truncation {
    pub fn new(l: usize, m: usize) -> Self {
        assert!(l >= 1 && m >= 1, "window needs L, M >= 1");
        Self { l, m }
    }

    pub fn teeth(&self) -> usize {
        2 * self.l + 1
    }

    pub fn tooth_len(&self) -> usize {
        self.m + 1
    }

    pub fn sites(&self) -> usize {
        self.teeth() * self.tooth_len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.n.unsigned_abs() as usize <= self.l && v.j >= 0 && (v.j as usize) <= self.m
    }

    pub fn index(&self, v: Vertex) -> Option<usize> {
        self.contains(v)
            .then(|| (v.n + self.l as i64) as usize * self.tooth_len() + v.j as usize)
    }

    pub fn vertex(&self, idx: usize) -> Vertex {
        let col = idx / self.tooth_len();
        Vertex {
            n: col as i64 - self.l as i64,
            j: (idx % self.tooth_len()) as i64,
        }
    }

    /// Graph distance from `v` to the nearest site outside the window.
    pub fn distance_to_edge(&self, v: Vertex) -> i64 {
        let dn = self.l as i64 - v.n.abs();
        let dj = self.m as i64 - v.j;
        dn.min(dj) + 1
    }
}

/// Complex amplitudes on a truncated window.
#[derive(Debug, Clone)]
pub struct WaveState {
    trunc: Truncation,
    amp: Vec<Complex64>,
    norm: OnceLock<f64>,
}

impl WaveState {
    pub fn zeros(trunc: Truncation) -> Self {
        Self::from_vec(trunc, vec![Complex64::new(0.0, 0.0); trunc.sites()])
    }

    pub fn from_vec(trunc: Truncation, amp: Vec<Complex64>) -> Self {
        assert_eq!(amp.len(), trunc.sites(), "amplitude length mismatch");
        Self {
            trunc,
            amp,
            norm: OnceLock::new(),
        }
    }

    /// Indicator state |v⟩.
    pub fn point(trunc: Truncation, v: Vertex) -> Self {
        let mut s = Self::zeros(trunc);
        let idx = trunc.index(v).expect("vertex outside the window");
        s.amp[idx] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amp
    }

    /// Amplitude at `v`, zero outside the window.
    pub fn get(&self, v: Vertex) -> Complex64 {
        self.trunc
            .index(v)
            .map_or(Complex64::new(0.0, 0.0), |i| self.amp[i])
    }

    pub fn set(&mut self, v: Vertex, value: Complex64) {
        let idx = self.trunc.index(v).expect("vertex outside the window");
        self.amp[idx] = value;
        self.norm = OnceLock::new();
    }

    pub fn norm(&self) -> f64 {
        *self
            .norm
            .get_or_init(|| self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt())
    }

    pub fn inner(&self, other: &WaveState) -> Complex64 {
        assert_eq!(self.trunc, other.trunc);
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Probability in sites within graph distance `shell` of the window edge.
    pub fn boundary_mass(&self, shell: i64) -> f64 {
        self.amp
            .iter()
            .enumerate()
            .filter(|(i, _)| self.trunc.distance_to_edge(self.trunc.vertex(*i)) <= shell)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Smallest box [n_lo, n_hi] × [0, j_hi] holding the nonzero amplitudes.
    pub fn support(&self) -> Option<SupportBox> {
        let mut b: Option<SupportBox> = None;
        for (i, a) in self.amp.iter().enumerate() {
            if a.norm_sqr() > 0.0 {
                let v = self.trunc.vertex(i);
                let nb = b.get_or_insert(SupportBox {
                    n_lo: v.n,
                    n_hi: v.n,
                    j_hi: v.j,
                });
                nb.n_lo = nb.n_lo.min(v.n);
                nb.n_hi = nb.n_hi.max(v.n);
                nb.j_hi = nb.j_hi.max(v.j);
            }
        }
        b
    }
}

/// Rectangle of spine and tooth coordinates used to skip known zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportBox {
    pub n_lo: i64,
    pub n_hi: i64,
    pub j_hi: i64,
}

impl SupportBox {
    pub fn full(trunc: Truncation) -> Self {
        Self {
            n_lo: -(trunc.l as i64),
            n_hi: trunc.l as i64,
            j_hi: trunc.m as i64,
        }
    }

    /// One step of graph growth, clipped to the window.
    pub fn grow(self, trunc: Truncation) -> Self {
        Self {
            n_lo: (self.n_lo - 1).max(-(trunc.l as i64)),
            n_hi: (self.n_hi + 1).min(trunc.l as i64),
            j_hi: (self.j_hi + 1).min(trunc.m as i64),
        }
    }
}

/// Scalars the stencil works over (real moments and complex states).
pub trait Amplitude:
    Copy + Send + Sync + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
}
impl Amplitude for f64 {}
impl Amplitude for Complex64 {}

/// out = a·(H x) + b·x + c·y on the box `bx`; `x` must vanish outside the
/// box shrunk by one step. Sites outside the box are left untouched.
#[allow(clippy::too_many_arguments)]
pub fn stencil<T: Amplitude>(
    trunc: Truncation,
    bx: SupportBox,
    x: &[T],
    y: Option<&[T]>,
    a: f64,
    b: f64,
    c: f64,
    out: &mut [T],
) {
    let len = trunc.tooth_len();
    let l = trunc.l as i64;
    let j_hi = bx.j_hi as usize;
    let first = (bx.n_lo + l) as usize;
    let last = (bx.n_hi + l) as usize;
    out[first * len..(last + 1) * len]
        .par_chunks_mut(len)
        .enumerate()
        .for_each(|(k, col_out)| {
            let col = first + k;
            let base = col * len;
            let xc = &x[base..base + len];
            let left = (col > 0).then(|| x[base - len]);
            let right = (col + 1 < trunc.teeth()).then(|| x[base + len]);
            for j in 0..=j_hi {
                let mut h = if j == 0 { xc[0] * 3.0 } else { xc[j] * 2.0 };
                if j > 0 {
                    h = h - xc[j - 1];
                }
                if j + 1 < len {
                    h = h - xc[j + 1];
                }
                if j == 0 {
                    if let Some(lv) = left {
                        h = h - lv;
                    }
                    if let Some(rv) = right {
                        h = h - rv;
                    }
                }
                let mut val = h * a + xc[j] * b;
                if let Some(y) = y {
                    val = val + y[base + j] * c;
                }
                col_out[j] = val;
            }
        });
}

/// H·s with the infinite-comb degree kept on the diagonal.
pub fn apply_hamiltonian(s: &WaveState) -> WaveState {
    let trunc = s.truncation();
    let mut out = vec![Complex64::default(); trunc.sites()];
    stencil(
        trunc,
        SupportBox::full(trunc),
        s.amplitudes(),
        None,
        1.0,
        0.0,
        0.0,
        &mut out,
    );
    WaveState::from_vec(trunc, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(Vertex::new(0, 0)), 3);
        assert_eq!(degree(Vertex::new(5, 1)), 2);
        assert_eq!(degree(Vertex::new(-3, 7)), 2);
    }

    #[test]
    fn origin_stencil() {
        let tr = Truncation::new(4, 4);
        let h = apply_hamiltonian(&WaveState::point(tr, Vertex::ORIGIN));
        assert_eq!(h.get(Vertex::new(0, 0)), c(3.0));
        assert_eq!(h.get(Vertex::new(1, 0)), c(-1.0));
        assert_eq!(h.get(Vertex::new(-1, 0)), c(-1.0));
        assert_eq!(h.get(Vertex::new(0, 1)), c(-1.0));
        let total: f64 = h.amplitudes().iter().map(|a| a.norm()).sum();
        assert_eq!(total, 6.0);
    }

    #[test]
    fn tooth_stencil() {
        let tr = Truncation::new(4, 8);
        let h = apply_hamiltonian(&WaveState::point(tr, Vertex::new(0, 1)));
        assert_eq!(h.get(Vertex::new(0, 1)), c(2.0));
        assert_eq!(h.get(Vertex::new(0, 0)), c(-1.0));
        assert_eq!(h.get(Vertex::new(0, 2)), c(-1.0));
    }

    #[test]
    fn constants_are_annihilated_in_the_interior() {
        let tr = Truncation::new(6, 6);
        let s = WaveState::from_vec(tr, vec![c(1.0); tr.sites()]);
        let h = apply_hamiltonian(&s);
        for i in 0..tr.sites() {
            let v = tr.vertex(i);
            if tr.distance_to_edge(v) >= 2 {
                assert_eq!(h.amplitudes()[i], c(0.0), "{v:?}");
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let tr = Truncation::new(3, 5);
        for i in 0..tr.sites() {
            assert_eq!(tr.index(tr.vertex(i)), Some(i));
        }
        assert_eq!(tr.index(Vertex::new(4, 0)), None);
    }
}
