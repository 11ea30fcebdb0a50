//! Contour-integral amplitudes: the spectral contour, two ellipses and a
//! polygon all give the same number, and agree with the Chebyshev propagator.
use combwalk::contour::{amplitude_contour, ContourSpec};
use combwalk::evolution::amplitude_exact;
use combwalk::Vertex;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, j, j0, t) = (2, 3, 1, 6.0);
    let exact = amplitude_exact(Vertex::new(0, j0), Vertex::new(n, j), t, 1e-12)?;
    println!("A_t(0,{j0}; {n},{j}) at t = {t}");
    println!("  chebyshev        {exact:.12}");
    let poly = ContourSpec::polyline(vec![
        Complex64::new(1.3, 0.0),
        Complex64::new(0.0, 1.5),
        Complex64::new(-3.4, 0.3),
        Complex64::new(-3.4, -0.3),
        Complex64::new(0.0, -1.5),
    ]);
    for (name, spec) in [
        ("spectral", ContourSpec::default()),
        ("ellipse 0.6", ContourSpec::ellipse(0.6)),
        ("ellipse 0.9", ContourSpec::ellipse(0.9)),
        ("polygon", poly),
    ] {
        let a = amplitude_contour(n, j, t, j0, &spec)?;
        println!("  {name:16} {a:.12}  diff {:.1e}", (a - exact).norm());
    }
    // an ellipse hugging the cut passes near the essential singularity at z = 0
    match amplitude_contour(n, j, t, j0, &ContourSpec::ellipse(0.2)) {
        Ok(a) => println!("  ellipse 0.2      {a:.12}"),
        Err(e) => println!("  ellipse 0.2      refused: {e}"),
    }
    Ok(())
}
