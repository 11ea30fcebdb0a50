//! Command implementations behind the `combwalk` binary. Each returns a
//! [`Table`] plus an optional validation failure message.

use crate::asymptotics::{
    coarse_profile_spine, coarse_profile_tooth_from, critical_velocities, return_amplitude_asymptotic,
    spine_amplitude_asymptotic, tooth_amplitude_asymptotic_from, tooth_bounds,
};
use crate::comb::{Vertex, WaveState};
use crate::contour::{amplitude_contour, ContourSpec};
use crate::error::{Error, Result};
use crate::evolution::{
    amplitude_exact, propagate_point, windowed_spine_density, windowed_tooth_density, ChebyshevMoments,
};
use crate::report::{Cell, Table};
use crate::spectral::{spectral_amplitude, QuadratureSpec};
use crate::stokes::{label_saddles, relevant_saddles, region_atlas, saddle_sum_amplitude, Grid};
use crate::{escape, spectral};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Exact,
    Analytic,
    Both,
}

impl Engine {
    pub fn exact(self) -> bool {
        self != Engine::Analytic
    }

    pub fn analytic(self) -> bool {
        self != Engine::Exact
    }
}

/// Which closed-form route `amplitude` uses for its analytic column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticRoute {
    Contour,
    Asymptotic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    /// Set when a built-in check failed.
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Outcome { table, failure: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Chebyshev truncation.
    pub evolution: f64,
    /// Contour and escape quadrature.
    pub quadrature: f64,
    /// Largest engine residual accepted by `--engine both`.
    pub check: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { evolution: 1e-10, quadrature: 1e-9, check: 1e-6 }
    }
}

fn contour_spec(tol: &Tolerances) -> ContourSpec {
    ContourSpec::default().with_tol(tol.quadrature)
}

fn columns<'a>(base: &[(&'a str, &'a str)], engine: Engine, exact: &[(&'a str, &'a str)], analytic: &[(&'a str, &'a str)]) -> Vec<(&'a str, &'a str)> {
    let mut c = base.to_vec();
    if engine.exact() {
        c.extend_from_slice(exact);
    }
    if engine.analytic() {
        c.extend_from_slice(analytic);
    }
    if engine == Engine::Both {
        c.push(("residual", ""));
    }
    c
}

fn check_residuals(table: &Table, limit: f64) -> Option<String> {
    let k = table.column("residual")?;
    let worst = table
        .rows
        .iter()
        .filter_map(|r| match r[k] {
            Cell::Num(x) if x.is_finite() => Some(x),
            _ => None,
        })
        .fold(0.0, f64::max);
    (worst > limit).then(|| format!("largest residual {worst:e} exceeds {limit:e}"))
}

fn push_complex(row: &mut Vec<Cell>, z: Complex64) {
    row.push(z.re.into());
    row.push(z.im.into());
}

/// Amplitudes on every site within `radius` of the start (0 ≤ j ≤ j0 + radius).
pub fn evolve(n0: i64, j0: i64, t: f64, radius: i64, engine: Engine, tol: &Tolerances) -> Result<Outcome> {
    let origin = Vertex::new(n0, j0);
    let cols = columns(
        &[("n", ""), ("j", "")],
        engine,
        &[("exact_re", ""), ("exact_im", "")],
        &[("analytic_re", ""), ("analytic_im", "")],
    );
    let mut table = Table::new("evolve", &cols);
    let psi = if engine.exact() { Some(propagate_point(origin, t, tol.evolution)?) } else { None };
    let spec = contour_spec(tol);
    let sites: Vec<(i64, i64)> = (-radius..=radius)
        .flat_map(|dn| (0..=j0 + radius).map(move |j| (dn, j)))
        .collect();
    let rows: Vec<Result<Vec<Cell>>> = sites
        .par_iter()
        .map(|&(dn, j)| {
            let mut row: Vec<Cell> = vec![(n0 + dn).into(), j.into()];
            let ex = psi.as_ref().map(|p| p.get(Vertex::new(dn, j)));
            if let Some(e) = ex {
                push_complex(&mut row, e);
            }
            if engine.analytic() {
                let a = amplitude_contour(dn, j, t, j0, &spec)?;
                push_complex(&mut row, a);
                if let Some(e) = ex {
                    row.push((a - e).norm().into());
                }
            }
            Ok(row)
        })
        .collect();
    for r in rows {
        table.push(r?);
    }
    let failure = check_residuals(&table, tol.check);
    Ok(Outcome { table, failure })
}

fn asymptotic_amplitude(n: i64, j: i64, t: f64, j0: i64) -> Result<Complex64> {
    if n == 0 {
        return tooth_amplitude_asymptotic_from(n, j, t, j0);
    }
    if j0 != 0 {
        return Err(Error::Domain("off-tooth asymptotics are implemented for j0 = 0".into()));
    }
    if (j as f64) < 0.05 * t {
        spine_amplitude_asymptotic(n, j, t)
    } else {
        saddle_sum_amplitude(n, j, t)
    }
}

/// A_t(0, j0; n, j).
pub fn amplitude(
    n: i64,
    j: i64,
    t: f64,
    j0: i64,
    engine: Engine,
    route: AnalyticRoute,
    tol: &Tolerances,
) -> Result<Outcome> {
    let cols = columns(
        &[("t", "1"), ("n", ""), ("j", ""), ("j0", "")],
        engine,
        &[("exact_re", ""), ("exact_im", "")],
        &[("analytic_re", ""), ("analytic_im", "")],
    );
    let mut table = Table::new("amplitude", &cols);
    let mut row: Vec<Cell> = vec![t.into(), n.into(), j.into(), j0.into()];
    let ex = if engine.exact() {
        Some(amplitude_exact(Vertex::new(0, j0), Vertex::new(n, j), t, tol.evolution)?)
    } else {
        None
    };
    if let Some(e) = ex {
        push_complex(&mut row, e);
    }
    if engine.analytic() {
        let a = match route {
            AnalyticRoute::Contour => amplitude_contour(n, j, t, j0, &contour_spec(tol))?,
            AnalyticRoute::Asymptotic => asymptotic_amplitude(n, j, t, j0)?,
        };
        push_complex(&mut row, a);
        if let Some(e) = ex {
            let r = (a - e).norm();
            row.push(if route == AnalyticRoute::Asymptotic { (r / e.norm()).into() } else { r.into() });
        }
    }
    table.push(row);
    // asymptotic residuals are relative and only indicative
    let failure = if route == AnalyticRoute::Contour { check_residuals(&table, tol.check) } else { None };
    Ok(Outcome { table, failure })
}

/// |A_t(0,0;0,0)|² on t = dt, 2dt, …, t_max with the 9/(8π t) reference.
pub fn return_prob(t_max: f64, dt: f64, engine: Engine, tol: &Tolerances) -> Result<Outcome> {
    if !(dt > 0.0 && t_max >= dt) {
        return Err(Error::Domain("need 0 < dt <= t_max".into()));
    }
    let cols = columns(&[("t", "1")], engine, &[("p_exact", "")], &[("p_asymptotic", "")]);
    let mut cols = cols;
    cols.push(("reference", ""));
    let mut table = Table::new("return-prob", &cols);
    let moments = if engine.exact() { Some(ChebyshevMoments::for_times(0, t_max, tol.evolution)?) } else { None };
    let steps = (t_max / dt + 1e-9).floor() as usize;
    let rows: Vec<Result<Vec<Cell>>> = (1..=steps)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 * dt;
            let mut row: Vec<Cell> = vec![t.into()];
            let pe = match &moments {
                Some(m) => Some(m.amplitude(t, tol.evolution)?.norm_sqr()),
                None => None,
            };
            if let Some(p) = pe {
                row.push(p.into());
            }
            if engine.analytic() {
                let pa = return_amplitude_asymptotic(t)?.total.norm_sqr();
                row.push(pa.into());
                if let Some(p) = pe {
                    row.push((pa - p).abs().into());
                }
            }
            row.push((9.0 / (8.0 * PI * t)).into());
            Ok(row)
        })
        .collect();
    for r in rows {
        table.push(r?);
    }
    Ok(Outcome::ok(table))
}

fn grid_points(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).floor() as usize;
    (1..=n).map(|k| lo + k as f64 * step).filter(|x| *x < hi - 1e-12).collect()
}

/// Coarse-grained t|A|² along tooth `n` for a walk started at (0, j0).
pub fn profile_tooth(t: f64, n: i64, j0: i64, du: f64, engine: Engine, tol: &Tolerances) -> Result<Outcome> {
    let mut cols = columns(&[("u", "")], engine, &[("exact", "")], &[("analytic", "")]);
    cols.push(("d_minus", ""));
    cols.push(("d_plus", ""));
    let mut table = Table::new("profile-tooth", &cols);
    let psi = if engine.exact() { Some(propagate_point(Vertex::new(0, j0), t, tol.evolution)?) } else { None };
    let half = t.sqrt();
    for u in grid_points(0.0, 2.0, du) {
        let mut row: Vec<Cell> = vec![u.into()];
        let ex = psi.as_ref().map(|p| windowed_tooth_density(p, t, n, u * t, half));
        if let Some(e) = ex {
            row.push(e.into());
        }
        if engine.analytic() {
            let a = coarse_profile_tooth_from(u, n, j0)?;
            row.push(a.into());
            if let Some(e) = ex {
                row.push(((a - e).abs() / a).into());
            }
        }
        let (dm, dp) = if n == 0 && j0 == 0 { tooth_bounds(u)? } else { (f64::NAN, f64::NAN) };
        row.push(dm.into());
        row.push(dp.into());
        table.push(row);
    }
    Ok(Outcome::ok(table))
}

/// Coarse-grained t|A|² along row `j` of the spine region, 0 < v < v_c.
pub fn profile_spine(t: f64, j: i64, dv: f64, engine: Engine, tol: &Tolerances) -> Result<Outcome> {
    let cols = columns(&[("v", "")], engine, &[("exact", "")], &[("analytic", "")]);
    let mut table = Table::new("profile-spine", &cols);
    let psi = if engine.exact() { Some(propagate_point(Vertex::ORIGIN, t, tol.evolution)?) } else { None };
    let half = t.sqrt();
    let (_, vc) = critical_velocities();
    for v in grid_points(0.0, vc, dv) {
        let mut row: Vec<Cell> = vec![v.into()];
        let ex = psi.as_ref().map(|p| windowed_spine_density(p, t, j, v * t, half));
        if let Some(e) = ex {
            row.push(e.into());
        }
        if engine.analytic() {
            let a = coarse_profile_spine(v, j)?;
            row.push(a.into());
            if let Some(e) = ex {
                row.push(((a - e).abs() / a).into());
            }
        }
        table.push(row);
    }
    Ok(Outcome::ok(table))
}

/// Finite-time split of the probability: sites with j > |n| count as teeth.
pub fn escape_split_at(psi: &WaveState) -> (f64, f64) {
    let tr = psi.truncation();
    let (mut teeth, mut spine) = (0.0, 0.0);
    for (k, a) in psi.amplitudes().iter().enumerate() {
        let v = tr.vertex(k);
        if v.j > v.n.abs() {
            teeth += a.norm_sqr();
        } else {
            spine += a.norm_sqr();
        }
    }
    (teeth, spine)
}

/// Escape probabilities into the teeth and along the spine from (0, j0).
/// The exact engine uses the split of [`escape_split_at`] at time `t`.
pub fn escape(j0: i64, t: f64, engine: Engine, tol: &Tolerances) -> Result<Outcome> {
    let mut cols: Vec<(&str, &str)> = Vec::new();
    if engine.analytic() {
        cols.extend_from_slice(&[("P_Teeth", ""), ("P_Spine", ""), ("sum", "")]);
    }
    if engine.exact() {
        cols.extend_from_slice(&[("P_Teeth_exact", ""), ("P_Spine_exact", ""), ("t", "1")]);
    }
    if engine == Engine::Both {
        cols.push(("residual", ""));
    }
    let mut table = Table::new("escape", &cols);
    let mut row: Vec<Cell> = Vec::new();
    let mut failure = None;
    let mut analytic = None;
    if engine.analytic() {
        let teeth = escape::prob_teeth_total_j0(j0)?;
        let spine = escape::prob_spine_total_j0_direct(j0)?;
        let sum = teeth + spine;
        row.extend([teeth.into(), spine.into(), sum.into()]);
        if (sum - 1.0).abs() > 1e-5 {
            failure = Some(format!("P_Teeth + P_Spine = {sum}, not 1 within 1e-5"));
        }
        analytic = Some(teeth);
    }
    if engine.exact() {
        let psi = propagate_point(Vertex::new(0, j0), t, tol.evolution)?;
        let (teeth, spine) = escape_split_at(&psi);
        row.extend([teeth.into(), spine.into(), t.into()]);
        if let Some(a) = analytic {
            row.push((a - teeth).abs().into());
        }
    }
    table.push(row);
    Ok(Outcome { table, failure })
}

/// Saddles of the spine/bulk potential at (u, v), with labels and relevance.
pub fn saddles(u: f64, v: f64, engine: Engine) -> Result<Outcome> {
    let mut cols = vec![
        ("w_re", ""),
        ("w_im", ""),
        ("multiplicity", ""),
        ("W_re", ""),
        ("W_im", ""),
        ("W2_re", ""),
        ("W2_im", ""),
        ("label", ""),
        ("relevant", ""),
    ];
    if engine.exact() {
        cols.push(("residual", ""));
    }
    let mut table = Table::new("saddles", &cols);
    let s = relevant_saddles(u, v)?;
    let labels = label_saddles(u, v).ok();
    for r in &s.roots {
        let label = labels
            .as_ref()
            .and_then(|l| l.w.iter().position(|x| (x.w - r.w).norm() < 1e-9))
            .map_or("-".to_string(), |k| format!("w{}", k + 1));
        let rel = match r.relevant {
            Some(true) => "true",
            Some(false) => "false",
            None => "undetermined",
        };
        let mut row: Vec<Cell> = Vec::new();
        push_complex(&mut row, r.w);
        row.push((r.multiplicity as i64).into());
        push_complex(&mut row, r.potential);
        push_complex(&mut row, r.second);
        row.push(label.into());
        row.push(rel.into());
        if engine.exact() {
            row.push(r.residual.into());
        }
        table.push(row);
    }
    Ok(Outcome::ok(table))
}

/// Region map of the quadrant. The exact engine adds the contour amplitude
/// at the nearest lattice site for time `t`; `both` adds the relative error
/// of the flagged-saddle sum against it.
pub fn stokes_atlas(grid: &Grid, t: f64, engine: Engine, tol: &Tolerances) -> Result<Outcome> {
    let mut cols = vec![("u", ""), ("v", "")];
    if engine.analytic() {
        cols.extend_from_slice(&[("region", ""), ("subregion", "")]);
    }
    if engine.exact() {
        cols.extend_from_slice(&[("abs_amplitude", "")]);
    }
    if engine == Engine::Both {
        cols.push(("residual", ""));
    }
    let mut table = Table::new("stokes-atlas", &cols);
    let cells = region_atlas(grid)?;
    let spec = contour_spec(tol);
    let rows: Vec<Result<Vec<Cell>>> = cells
        .par_iter()
        .map(|c| {
            let mut row: Vec<Cell> = vec![c.u.into(), c.v.into()];
            if engine.analytic() {
                match c.region {
                    Some(r) => {
                        row.push(r.major.to_string().into());
                        row.push(r.name().into());
                    }
                    None => {
                        row.push("ambiguous".into());
                        row.push("ambiguous".into());
                    }
                }
            }
            if engine.exact() {
                let (n, j) = ((c.v * t).round() as i64, (c.u * t).round() as i64);
                let a = amplitude_contour(n, j, t, 0, &spec)?;
                row.push(a.norm().into());
                if engine == Engine::Both {
                    // below the quadrature floor the comparison is meaningless
                    let r = if a.norm() > 1e3 * tol.quadrature {
                        match saddle_sum_amplitude(n, j, t) {
                            Ok(s) => (s - a).norm() / a.norm(),
                            Err(_) => f64::NAN,
                        }
                    } else {
                        f64::NAN
                    };
                    row.push(r.into());
                }
            }
            Ok(row)
        })
        .collect();
    for r in rows {
        table.push(r?);
    }
    Ok(Outcome::ok(table))
}

/// ⟨v2|e^{−itH}|v1⟩ from the eigenfunction expansion, for v1 = (0, j1) and
/// v2 = (n2, j2) with j1, j2 ∈ [0, max] and |n2| ≤ max (all pairs up to
/// translation). At t = 0 the exact value is δ_{v1 v2}.
pub fn completeness_check(max: i64, nodes: usize, t: f64, engine: Engine, tol: &Tolerances) -> Result<Outcome> {
    let cols = columns(
        &[("j1", ""), ("n2", ""), ("j2", "")],
        engine,
        &[("exact_re", ""), ("exact_im", "")],
        &[("spectral_re", ""), ("spectral_im", "")],
    );
    let mut table = Table::new("completeness-check", &cols);
    let quad = QuadratureSpec::uniform(nodes);
    let mut pairs = Vec::new();
    for j1 in 0..=max {
        for n2 in -max..=max {
            for j2 in 0..=max {
                pairs.push((j1, n2, j2));
            }
        }
    }
    let rows: Vec<Result<Vec<Cell>>> = pairs
        .par_iter()
        .map(|&(j1, n2, j2)| {
            let (v1, v2) = (Vertex::new(0, j1), Vertex::new(n2, j2));
            let mut row: Vec<Cell> = vec![j1.into(), n2.into(), j2.into()];
            let ex = if engine.exact() {
                Some(if t == 0.0 {
                    Complex64::new(if v1 == v2 { 1.0 } else { 0.0 }, 0.0)
                } else {
                    amplitude_exact(v1, v2, t, tol.evolution)?
                })
            } else {
                None
            };
            if let Some(e) = ex {
                push_complex(&mut row, e);
            }
            if engine.analytic() {
                let a = if t == 0.0 {
                    spectral::completeness_defect(v1, v2, &quad)
                        + if v1 == v2 { Complex64::new(1.0, 0.0) } else { Complex64::default() }
                } else {
                    spectral_amplitude(v1, v2, t, &quad)
                };
                push_complex(&mut row, a);
                if let Some(e) = ex {
                    row.push((a - e).norm().into());
                }
            }
            Ok(row)
        })
        .collect();
    for r in rows {
        table.push(r?);
    }
    let failure = check_residuals(&table, tol.check);
    Ok(Outcome { table, failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escape_row_is_unitary() {
        let out = escape(0, 10.0, Engine::Analytic, &Tolerances::default()).unwrap();
        assert!(out.failure.is_none());
        let k = out.table.column("sum").unwrap();
        match out.table.rows[0][k] {
            Cell::Num(s) => assert!((s - 1.0).abs() < 1e-10),
            _ => panic!(),
        }
    }

    #[test]
    fn evolve_engines_agree() {
        let out = evolve(0, 1, 3.0, 3, Engine::Both, &Tolerances::default()).unwrap();
        assert!(out.failure.is_none(), "{:?}", out.failure);
        assert_eq!(out.table.rows.len(), 7 * 5);
    }

    #[test]
    fn outputs_are_deterministic() {
        let tol = Tolerances::default();
        let a = return_prob(5.0, 1.0, Engine::Both, &tol).unwrap().table.to_csv();
        let b = return_prob(5.0, 1.0, Engine::Both, &tol).unwrap().table.to_csv();
        assert_eq!(a, b);
    }

    #[test]
    fn completeness_at_time_zero() {
        let out = completeness_check(1, 96, 0.0, Engine::Both, &Tolerances::default()).unwrap();
        assert!(out.failure.is_none(), "{:?}", out.failure);
    }
}
