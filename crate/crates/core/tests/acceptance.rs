//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Tolerances are pinned here and never relaxed to make a line pass; the
//! measured value is printed next to the target either way.

use combwalk::airy::airy_ai;
use combwalk::asymptotics::{
    coarse_profile_tooth, critical_velocities, critical_velocity_from_discriminant, regime, spine_polynomial,
    spine_saddles, tooth_bounds, tooth_saddles, Regime,
};
use combwalk::comb::{apply_hamiltonian, Truncation, Vertex, WaveState};
use combwalk::contour::{amplitude_contour, ContourSpec};
use combwalk::escape::{prob_spine_total, prob_spine_total_j0, prob_teeth_total, prob_teeth_total_j0};
use combwalk::evolution::{amplitude_exact, propagate_point, windowed_tooth_density, ChebyshevMoments};
use combwalk::spectral::{completeness_defect, QuadratureSpec};
use combwalk::stokes::{stokes_point_on_u_axis, trace_descent};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

type Check = Result<(bool, String), combwalk::Error>;

fn return_probability() -> Check {
    let target = 9.0 / (8.0 * PI);
    let m = ChebyshevMoments::for_times(0, 400.0, 1e-12)?;
    let mut sum = 0.0;
    let mut count = 0;
    let mut t = 200.0;
    while t <= 400.0 {
        sum += t * m.amplitude(t, 1e-12)?.norm_sqr();
        count += 1;
        t += 0.01;
    }
    let mean = sum / count as f64;
    let rel = (mean - target) / target;
    Ok((
        rel.abs() < 0.05,
        format!(
            "mean t|A|^2 over [200,400] = {mean:.6}, target {target:.6} +/- 5% (rel {rel:+.3}); branch-point term alone gives {:.6}",
            2.0 / (9.0 * PI)
        ),
    ))
}

fn engine_equivalence() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    let spec = ContourSpec::default();
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let (n, j, j0) = (rng.gen_range(-6..=6), rng.gen_range(0..=6), rng.gen_range(0..=6));
        let t = rng.gen_range(0.5..=20.0);
        let a = amplitude_exact(Vertex::new(0, j0), Vertex::new(n, j), t, 1e-12)?;
        let b = amplitude_contour(n, j, t, j0, &spec)?;
        worst = worst.max((a - b).norm());
    }
    Ok((worst < 1e-8, format!("30 random cases, max |contour - exact| = {worst:.2e} (< 1e-8)")))
}

fn escape_constants() -> Check {
    let teeth = prob_teeth_total()?;
    let spine = prob_spine_total()?;
    let (dt, ds, sum) = (teeth - 0.63159137, spine - 0.368469, teeth + spine);
    let ok = dt.abs() <= 1e-6 && ds.abs() <= 1e-6 && (sum - 1.0).abs() <= 1e-5;
    Ok((
        ok,
        format!(
            "P_Teeth = {teeth:.9} (target 0.63159137, off {dt:+.1e}), P_Spine = {spine:.9} (target 0.368469, off {ds:+.1e}), sum - 1 = {:+.1e}",
            sum - 1.0
        ),
    ))
}

fn critical_velocity_check() -> Check {
    let (uc, vc) = critical_velocities();
    let eps = 1e-12;
    let dispatch = regime(uc - eps, 0.0).regime == Regime::Oscillatory
        && regime(uc, 0.0).regime == Regime::AiryFront
        && regime(uc + eps, 0.0).regime == Regime::Evanescent;
    let merged = {
        let s = tooth_saddles(uc)?;
        (s.z_plus - s.z_minus).norm() == 0.0
    };
    let vd = critical_velocity_from_discriminant()?;
    let gap = (vd - 0.75 * 3f64.sqrt()).abs();
    Ok((
        uc == 2.0 && dispatch && merged && gap < 1e-9 && vc == 0.75 * 3f64.sqrt(),
        format!("u_c = {uc}, dispatch ok = {dispatch}, tooth saddles merge = {merged}; v_c(discriminant) = {vd:.12}, |diff| = {gap:.1e}"),
    ))
}

fn airy_front() -> Check {
    let t: f64 = 200.0;
    let psi = propagate_point(Vertex::ORIGIN, t, 1e-11)?;
    let s = t.cbrt();
    let pref = 5f64.sqrt() / 2.0;
    let (mut num, mut den, mut og, mut gg) = (0.0, 0.0, 0.0, 0.0);
    for j in (2.0 * t - 4.0 * s).ceil() as i64..=(2.0 * t + 2.0 * s).floor() as i64 {
        let jh = (j as f64 - 2.0 * t) / s;
        let g = t.powf(-2.0 / 3.0) * airy_ai(jh)?.powi(2);
        let o = psi.get(Vertex::new(0, j)).norm_sqr();
        num += (o - pref * g).powi(2);
        den += (pref * g).powi(2);
        og += o * g;
        gg += g * g;
    }
    // relative error over the window, normalised by the envelope so the Ai zeros
    // do not dominate; the least-squares prefactor is printed for reference
    let rel = (num / den).sqrt();
    let fit = og / gg;
    Ok((
        rel < 0.2,
        format!(
            "t = 200, jhat in [-4,2]: L2 rel error vs (sqrt5/2) t^-2/3 Ai^2 = {rel:.3} (< 0.2); fitted prefactor {fit:.4} vs {pref:.4}"
        ),
    ))
}

fn tooth_profile() -> Check {
    let t: f64 = 150.0;
    let psi = propagate_point(Vertex::ORIGIN, t, 1e-11)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for u in [0.5, 1.0, 1.5] {
        let w = windowed_tooth_density(&psi, t, 0, u * t, t.sqrt());
        let c = coarse_profile_tooth(u, 0)?;
        let rel = (w - c) / c;
        let mid = (u * t) as i64;
        let mut inside = true;
        for j in mid - 20..mid + 20 {
            let (lo, hi) = tooth_bounds(j as f64 / t)?;
            let x = t * psi.get(Vertex::new(0, j)).norm_sqr();
            inside &= x >= 0.9 * lo && x <= 1.1 * hi;
        }
        ok &= rel.abs() < 0.1 && inside;
        parts.push(format!("u={u}: rel {rel:+.3}, in bounds {inside}"));
    }
    Ok((ok, format!("t = 150, {}", parts.join("; "))))
}

fn stokes_point() -> Check {
    let u = stokes_point_on_u_axis()?;
    let d = u - 2.12207;
    Ok((d.abs() <= 1e-4, format!("u'_c = {u:.7} (target 2.12207 +/- 1e-4, off {d:+.1e})")))
}

fn completeness() -> Check {
    let q = QuadratureSpec::default();
    let vs: Vec<Vertex> = (-3..=3).flat_map(|n| (0..=3).map(move |j| Vertex::new(n, j))).collect();
    let mut worst: f64 = 0.0;
    for (a, v1) in vs.iter().enumerate() {
        for v2 in &vs[a..] {
            worst = worst.max(completeness_defect(*v1, *v2, &q).norm());
        }
    }
    Ok((
        worst < 1e-6,
        format!("{} vertices with |n|, j <= 3, {} nodes: max defect {worst:.2e} (< 1e-6)", vs.len(), q.theta_nodes),
    ))
}

fn j0_scaling() -> Check {
    let js: Vec<i64> = (3..=6).map(|k| 1 << k).collect();
    let ps: Vec<f64> = js.iter().map(|&j| prob_spine_total_j0(j)).collect::<Result<_, _>>()?;
    let (x, y): (Vec<f64>, Vec<f64>) = js.iter().zip(&ps).map(|(&j, &p)| ((j as f64).ln(), p.ln())).unzip();
    let slope = least_squares_slope(&x, &y);
    let teeth: Vec<f64> = (0..=64).map(prob_teeth_total_j0).collect::<Result<_, _>>()?;
    let monotone = teeth.windows(2).all(|w| w[1] > w[0]);
    let last = teeth[64];
    let ok = (slope + 2.0).abs() <= 0.3 && monotone && last < 1.0 && 1.0 - last < 0.01;
    Ok((
        ok,
        format!("slope of P_Spine(j0) over j0 in [8,64] = {slope:.3} (-2 +/- 0.3); P_Teeth(j0) increasing on 0..64: {monotone}, P_Teeth(64) = {last:.6}"),
    ))
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

fn property_suite() -> Check {
    let mut rng = StdRng::seed_from_u64(10);
    let mut notes = Vec::new();
    let mut ok = true;

    let mut unit: f64 = 0.0;
    for t in [10.0, 50.0, 100.0] {
        unit = unit.max((propagate_point(Vertex::new(0, 2), t, 1e-12)?.norm() - 1.0).abs());
    }
    ok &= unit < 1e-9;
    notes.push(format!("|norm-1| {unit:.1e}"));

    let trunc = Truncation::new(4, 5);
    let mut random_state = || {
        let amp = (0..trunc.sites()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        WaveState::from_vec(trunc, amp)
    };
    let (mut asym, mut lowest): (f64, f64) = (0.0, f64::INFINITY);
    for _ in 0..50 {
        let (a, b) = (random_state(), random_state());
        asym = asym.max((a.inner(&apply_hamiltonian(&b)) - apply_hamiltonian(&a).inner(&b)).norm());
        lowest = lowest.min(a.inner(&apply_hamiltonian(&a)).re / a.norm().powi(2));
    }
    ok &= asym < 1e-12 && lowest >= 0.0;
    notes.push(format!("H asym {asym:.1e}, min Rayleigh {lowest:.3}"));

    let mut resid: f64 = 0.0;
    for _ in 0..100 {
        let (u, v) = (rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0));
        let p = spine_polynomial(u, v);
        for r in spine_saddles(u, v)?.roots {
            let val = p.iter().rev().fold(Complex64::default(), |acc, a| acc * r.w + a);
            let scale: f64 = p.iter().enumerate().map(|(k, a)| a.norm() * r.w.norm().powi(k as i32)).sum();
            resid = resid.max(val.norm() / scale);
        }
    }
    ok &= resid < 1e-12;
    notes.push(format!("saddle residual {resid:.1e}"));

    let mut drift: f64 = 0.0;
    for (u, v) in [(0.5, 0.5), (1.0, 0.3), (0.3, 1.2), (1.8, 1.0), (2.5, 0.2)] {
        for r in spine_saddles(u, v)?.roots {
            for p in trace_descent(r.w, u, v)? {
                drift = drift.max(p.im_drift());
            }
        }
    }
    ok &= drift < 1e-8;
    notes.push(format!("Im W drift {drift:.1e}"));

    let mut offset: f64 = 0.0;
    for (n, j, t) in [(0, 0, 3.0), (3, 2, 5.0), (-4, 5, 6.0)] {
        let a = amplitude_contour(n, j, t, 0, &ContourSpec::ellipse(0.3).with_tol(1e-10))?;
        let b = amplitude_contour(n, j, t, 0, &ContourSpec::ellipse(0.6).with_tol(1e-10))?;
        offset = offset.max((a - b).norm());
    }
    ok &= offset < 1e-9;
    notes.push(format!("contour offset {offset:.1e}"));

    Ok((ok, notes.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("return probability", return_probability),
        ("engine equivalence", engine_equivalence),
        ("escape constants", escape_constants),
        ("critical velocities", critical_velocity_check),
        ("Airy front", airy_front),
        ("tooth profile", tooth_profile),
        ("Stokes point", stokes_point),
        ("completeness", completeness),
        ("j0 scaling", j0_scaling),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {name}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
