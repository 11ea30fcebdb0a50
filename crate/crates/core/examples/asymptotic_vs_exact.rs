//! Saddle-point amplitudes against the Chebyshev reference on teeth and spine.
use combwalk::asymptotics::{spine_amplitude_asymptotic, tooth_amplitude_asymptotic};
use combwalk::evolution::propagate_point;
use combwalk::Vertex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for t in [60.0, 120.0] {
        let psi = propagate_point(Vertex::ORIGIN, t, 1e-10)?;
        println!("t = {t}");
        for (n, j) in [(0, (t * 0.5) as i64), (0, t as i64), (1, t as i64), (0, (1.5 * t) as i64), (0, (2.0 * t) as i64), (0, (2.0 * t) as i64 + 8), (0, (2.4 * t) as i64), (2, (2.4 * t) as i64)] {
            let a = tooth_amplitude_asymptotic(n, j, t)?;
            let b = psi.get(Vertex::new(n, j));
            println!("  tooth n={n:2} j={j:4}  asym {:+.5e} exact {:+.5e}  rel {:.3}", a, b, (a - b).norm() / b.norm());
        }
        for (n, j) in [((t * 0.5) as i64, 0), ((t * 0.5) as i64, 2), ((t * 1.0) as i64, 0), ((t * 1.299) as i64, 0), ((t * 1.5) as i64, 0), ((t * 1.8) as i64, 1)] {
            let a = spine_amplitude_asymptotic(n, j, t)?;
            let b = psi.get(Vertex::new(n, j));
            println!("  spine n={n:4} j={j:2}  asym {:+.5e} exact {:+.5e}  rel {:.3}", a, b, (a - b).norm() / b.norm());
        }
    }
    Ok(())
}
