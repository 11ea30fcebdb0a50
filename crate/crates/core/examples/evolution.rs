//! Propagate a walker from the origin and watch the norm, the spread along
//! the spine and the mass that has entered the teeth.
use combwalk::cli::escape_split_at;
use combwalk::evolution::propagate_point;
use combwalk::Vertex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>14} {:>10} {:>10} {:>10}", "t", "1 - norm", "teeth", "spine", "|A_00|^2");
    for t in [5.0, 10.0, 20.0, 40.0, 80.0] {
        let psi = propagate_point(Vertex::ORIGIN, t, 1e-10)?;
        let (teeth, spine) = escape_split_at(&psi);
        println!(
            "{t:6.1} {:14.3e} {teeth:10.6} {spine:10.6} {:10.3e}",
            1.0 - psi.norm(),
            psi.get(Vertex::ORIGIN).norm_sqr()
        );
    }
    Ok(())
}
