//! Completeness of the eigenbasis: residual of the resolution of identity,
//! and the eigenfunction expansion of a propagator matrix element.
use combwalk::evolution::amplitude_exact;
use combwalk::spectral::{completeness_defect, spectral_amplitude, QuadratureSpec};
use combwalk::Vertex;

fn main() {
    let pairs = [
        (Vertex::new(0, 0), Vertex::new(0, 0)),
        (Vertex::new(0, 0), Vertex::new(1, 0)),
        (Vertex::new(0, 2), Vertex::new(0, 2)),
        (Vertex::new(3, 3), Vertex::new(-3, 1)),
    ];
    for n in [64, 128, 256, 512] {
        let q = QuadratureSpec::uniform(n);
        for (a, b) in pairs {
            let d = completeness_defect(a, b, &q);
            println!("nodes {n:4}  {a:?} {b:?}  |defect| = {:.3e}", d.norm());
        }
    }
    let (a, b) = (Vertex::new(0, 1), Vertex::new(2, 0));
    let q = QuadratureSpec::uniform(256);
    for t in [0.5, 2.0, 4.0] {
        let s = spectral_amplitude(a, b, t, &q);
        let e = amplitude_exact(a, b, t, 1e-12).expect("propagation");
        println!("t = {t}: expansion {s:.10}  chebyshev {e:.10}");
    }
}
