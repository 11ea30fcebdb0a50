//! Tabulate Ai(x) and show the wavefront on tooth 0, where t|A|^2 follows
//! a scaled Ai^2 around j = 2t.
use combwalk::airy::airy_ai;
use combwalk::asymptotics::tooth_amplitude_asymptotic;
use combwalk::evolution::propagate_point;
use combwalk::Vertex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for x in [-10.0, -5.0, -2.338107410459767, 0.0, 1.0, 5.0, 10.0] {
        println!("Ai({x:8.4}) = {:+.15e}", airy_ai(x)?);
    }
    let t = 100.0;
    let psi = propagate_point(Vertex::ORIGIN, t, 1e-10)?;
    println!("front at t = {t}: j, exact |A|^2, saddle |A|^2");
    for dj in (-16..=8).step_by(2) {
        let j = (2.0 * t) as i64 + dj;
        let e = psi.get(Vertex::new(0, j)).norm_sqr();
        let a = tooth_amplitude_asymptotic(0, j, t)?.norm_sqr();
        println!("  {j:4} {e:.4e} {a:.4e}");
    }
    Ok(())
}
