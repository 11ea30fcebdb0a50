//! Asymptotic escape probabilities: per tooth, per spine row, totals, and
//! the dependence on the starting height.
use combwalk::escape::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let teeth = prob_teeth_total()?;
    let spine = prob_spine_total()?;
    println!("P_Teeth = {teeth:.15}  P_Spine = {spine:.15}  sum - 1 = {:.1e}", teeth + spine - 1.0);
    for n in [0, 1, 2, 5, 10, 50, 200] {
        println!("  P_T({n:3}) = {:.6e}", prob_tooth(n)?);
    }
    for j in [0, 1, 2, 5, 10] {
        println!("  P_S({j:3}) = {:.6e}", prob_spine_dist(j)?);
    }
    println!("start height j0: teeth / spine");
    for j0 in [0, 1, 2, 4, 8, 16, 32, 64] {
        println!("  {j0:3}  {:.8}  {:.3e}", prob_teeth_total_j0(j0)?, prob_spine_total_j0(j0)?);
    }
    Ok(())
}
