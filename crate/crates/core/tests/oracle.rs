//! Cross-engine agreement with the Chebyshev propagator as reference.

use combwalk::comb::{Vertex, WaveState};
use combwalk::contour::{amplitude_contour, ContourSpec};
use combwalk::evolution::{amplitude_exact, evolve, propagate_point, window_for};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TOL: f64 = 1e-12;

#[test]
fn contour_matches_propagator_on_random_sites() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let spec = ContourSpec::default();
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let n = rng.gen_range(-6..=6);
        let j = rng.gen_range(0..=6);
        let j0 = rng.gen_range(0..=6);
        let t = rng.gen_range(0.5..20.0);
        let exact = amplitude_exact(Vertex::new(0, j0), Vertex::new(n, j), t, TOL).unwrap();
        let cont = amplitude_contour(n, j, t, j0, &spec).unwrap();
        let err = (exact - cont).norm();
        assert!(err < 1e-8, "({n},{j}) from j0={j0} at t={t}: {err:e}");
        worst = worst.max(err);
    }
    assert!(worst < 1e-8);
}

#[test]
fn ellipse_offsets_agree() {
    for (n, j, t) in [(0, 0, 3.0), (3, 2, 5.0), (-4, 5, 6.0)] {
        let a = amplitude_contour(n, j, t, 0, &ContourSpec::ellipse(0.3).with_tol(1e-10)).unwrap();
        let b = amplitude_contour(n, j, t, 0, &ContourSpec::ellipse(0.6).with_tol(1e-10)).unwrap();
        assert!((a - b).norm() < 1e-9, "({n},{j},{t}): {:e}", (a - b).norm());
    }
}

#[test]
fn reflection_symmetry() {
    let psi = propagate_point(Vertex::new(0, 0), 15.0, TOL).unwrap();
    for n in 1..30 {
        for j in [0, 1, 4, 11, 25] {
            let a = psi.get(Vertex::new(n, j));
            let b = psi.get(Vertex::new(-n, j));
            assert!((a - b).norm() < 1e-14, "({n},{j})");
        }
    }
}

#[test]
fn propagator_is_symmetric() {
    let t = 9.0;
    let pairs = [((0, 2), (3, 5)), ((-2, 0), (1, 1)), ((4, 7), (0, 0))];
    for ((n1, j1), (n2, j2)) in pairs {
        let ab = amplitude_exact(Vertex::new(n1, j1), Vertex::new(n2, j2), t, TOL).unwrap();
        let ba = amplitude_exact(Vertex::new(n2, j2), Vertex::new(n1, j1), t, TOL).unwrap();
        assert!((ab - ba).norm() < 1e-11, "{:e}", (ab - ba).norm());
    }
}

#[test]
fn backward_evolution_conjugates() {
    let t = 7.5;
    let fwd = propagate_point(Vertex::new(0, 1), t, TOL).unwrap();
    let bwd = propagate_point(Vertex::new(0, 1), -t, TOL).unwrap();
    for (a, b) in fwd.amplitudes().iter().zip(bwd.amplitudes()) {
        assert!((a - b.conj()).norm() < 1e-11);
    }
    // and undoes the forward step
    let back = evolve(&fwd, -t, TOL).unwrap();
    let start = WaveState::point(window_for(Vertex::new(0, 1), t, 40), Vertex::new(0, 1));
    for (a, b) in back.amplitudes().iter().zip(start.amplitudes()) {
        assert!((a - b).norm() < 1e-10);
    }
    assert_eq!(back.get(Vertex::new(0, 1)).re.round(), 1.0);
}
