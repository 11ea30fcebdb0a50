//! Large-t closed forms against the propagator and the contour integral.

use combwalk::asymptotics::{
    coarse_profile_spine, coarse_profile_tooth, coarse_profile_tooth_from, return_amplitude_asymptotic,
    spine_amplitude_asymptotic, tooth_amplitude_asymptotic, tooth_bounds,
};
use combwalk::comb::Vertex;
use combwalk::contour::{amplitude_contour, ContourSpec};
use combwalk::escape::prob_tooth;
use combwalk::evolution::{propagate_point, windowed_spine_density, windowed_tooth_density, ChebyshevMoments};
use combwalk::stokes::saddle_sum_amplitude;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TOL: f64 = 1e-11;

/// max over a short stretch of t of |A − A_asym|·t^{5/4}.
fn scaled_error(m: &ChebyshevMoments, t0: f64) -> f64 {
    (0..200)
        .map(|s| {
            let t = t0 + 0.05 * s as f64;
            let a = m.amplitude(t, 1e-12).unwrap();
            let b = return_amplitude_asymptotic(t).unwrap().total;
            (a - b).norm() * t.powf(1.25)
        })
        .fold(0.0, f64::max)
}

#[test]
fn return_amplitude_error_is_order_t_to_minus_five_quarters() {
    let m = ChebyshevMoments::for_times(0, 420.0, 1e-12).unwrap();
    let c = scaled_error(&m, 50.0);
    assert!(c < 0.05, "{c}");
    for t0 in [100.0, 200.0, 400.0] {
        let e = scaled_error(&m, t0);
        assert!(e <= 1.05 * c, "t = {t0}: {e} vs fitted {c}");
    }
}

#[test]
fn pointwise_amplitudes_at_t60() {
    let t = 60.0;
    let psi = propagate_point(Vertex::ORIGIN, t, TOL).unwrap();
    let a = psi.get(Vertex::new(0, 30));
    let b = tooth_amplitude_asymptotic(0, 30, t).unwrap();
    assert!((a - b).norm() / a.norm() < 0.15);
    let a = psi.get(Vertex::new(30, 0));
    let b = spine_amplitude_asymptotic(30, 0, t).unwrap();
    assert!((a - b).norm() / a.norm() < 0.15);
}

#[test]
fn windowed_profiles_at_t150() {
    let t: f64 = 150.0;
    let half = t.sqrt();
    let psi = propagate_point(Vertex::ORIGIN, t, TOL).unwrap();
    for u in [0.5, 1.0, 1.5] {
        let w = windowed_tooth_density(&psi, t, 0, u * t, half);
        let c = coarse_profile_tooth(u, 0).unwrap();
        assert!((w - c).abs() < 0.1 * c, "u = {u}: {w} vs {c}");
        let mid = (u * t) as i64;
        for j in mid - 20..mid + 20 {
            let (lo, hi) = tooth_bounds(j as f64 / t).unwrap();
            let x = t * psi.get(Vertex::new(0, j)).norm_sqr();
            assert!(x >= 0.9 * lo && x <= 1.1 * hi, "j = {j}: {x} outside [{lo}, {hi}]");
        }
    }
    let w = windowed_spine_density(&psi, t, 0, 0.8 * t, half);
    let q = coarse_profile_spine(0.8, 0).unwrap();
    assert!((w - q).abs() < 0.1 * q, "{w} vs {q}");

    let psi = propagate_point(Vertex::new(0, 3), t, TOL).unwrap();
    let w = windowed_tooth_density(&psi, t, 0, t, half);
    let c = coarse_profile_tooth_from(1.0, 0, 3).unwrap();
    assert!((w - c).abs() < 0.1 * c, "{w} vs {c}");
}

#[test]
fn tooth_mass_converges_in_time() {
    let mut prev = [f64::INFINITY; 4];
    for t in [75.0, 150.0, 300.0] {
        let psi = propagate_point(Vertex::ORIGIN, t, TOL).unwrap();
        let m = psi.truncation().m as i64;
        for n in 0..4 {
            let mass: f64 = (0..=m).map(|j| psi.get(Vertex::new(n, j)).norm_sqr()).sum();
            let gap = (mass - prob_tooth(n).unwrap()).abs();
            assert!(gap < prev[n as usize], "n = {n}, t = {t}: {gap:e}");
            prev[n as usize] = gap;
        }
    }
    assert!(prev.iter().all(|g| *g < 5e-4));
}

#[test]
fn flagged_saddles_match_contour_at_random_points() {
    let mut rng = StdRng::seed_from_u64(40);
    let t = 40.0;
    for _ in 0..5 {
        let n = rng.gen_range(4..=44);
        let j = rng.gen_range(4..=60);
        let a = amplitude_contour(n, j, t, 0, &ContourSpec::default()).unwrap();
        let s = saddle_sum_amplitude(n, j, t).unwrap();
        assert!((a - s).norm() < 0.05 * a.norm(), "({n},{j}): {:.3}", (a - s).norm() / a.norm());
    }
}
