//! Region map of the velocity quadrant, the Stokes point on the tooth axis
//! and the triple anti-Stokes point.
use combwalk::stokes::{find_anti_stokes_point, region_atlas, stokes_point_on_u_axis, Grid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Grid::new(3.0, 3.0, 24);
    let cells = region_atlas(&grid)?;
    for k in (0..grid.n).rev() {
        let row: Vec<String> = (0..grid.n)
            .map(|i| cells[k * grid.n + i].region.map_or("..".to_string(), |r| r.name()))
            .collect();
        println!("v={:4.2} {}", grid.v(k), row.join(" "));
    }
    println!("u'_c = {:.7}", stokes_point_on_u_axis()?);
    let (u, v) = find_anti_stokes_point(&grid)?;
    println!("Re W(w1) = Re W(w2) = Re W(w3) at (u, v) = ({u:.6}, {v:.6})");
    Ok(())
}
