use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use combwalk::cli::{self, AnalyticRoute, Engine, Outcome, Tolerances};
use combwalk::report::Format;
use combwalk::stokes::Grid;
use std::path::PathBuf;
use std::process::ExitCode;

/// Quantum walk on the infinite comb: exact propagation, contour integrals,
/// saddle-point asymptotics, escape probabilities and the Stokes atlas.
#[derive(Parser)]
#[command(name = "combwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = EngineArg::Analytic, global = true)]
    engine: EngineArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv, global = true)]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Chebyshev truncation tolerance.
    #[arg(long, default_value_t = 1e-10, global = true)]
    tol: f64,
    /// Quadrature tolerance for contour integrals.
    #[arg(long, default_value_t = 1e-9, global = true)]
    quad_tol: f64,
    /// Largest exact/analytic residual accepted with `--engine both`.
    #[arg(long, default_value_t = 1e-6, global = true)]
    check_tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Exact,
    Analytic,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Contour,
    Asymptotic,
}

#[derive(Subcommand)]
enum Command {
    /// Amplitudes near the starting site after time t.
    Evolve {
        #[arg(long, default_value_t = 0)]
        n0: i64,
        #[arg(long, default_value_t = 0)]
        j0: i64,
        #[arg(long, short, default_value_t = 5.0)]
        t: f64,
        #[arg(long, default_value_t = 5)]
        radius: i64,
    },
    /// A single amplitude A_t(0, j0; n, j).
    Amplitude {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        j: i64,
        #[arg(long, short)]
        t: f64,
        #[arg(long, default_value_t = 0)]
        j0: i64,
        #[arg(long, value_enum, default_value_t = RouteArg::Contour)]
        route: RouteArg,
    },
    /// Return probability at the origin against 9/(8πt).
    ReturnProb {
        #[arg(long, default_value_t = 400.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1.0)]
        dt: f64,
    },
    /// Coarse-grained profile along a tooth.
    ProfileTooth {
        #[arg(long, short, default_value_t = 150.0)]
        t: f64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 0)]
        j0: i64,
        #[arg(long, default_value_t = 0.05)]
        du: f64,
    },
    /// Coarse-grained profile along a row of the spine region.
    ProfileSpine {
        #[arg(long, short, default_value_t = 150.0)]
        t: f64,
        #[arg(long, default_value_t = 0)]
        j: i64,
        #[arg(long, default_value_t = 0.05)]
        dv: f64,
    },
    /// Escape probabilities into the teeth and along the spine.
    Escape {
        #[arg(long, default_value_t = 0)]
        j0: i64,
        /// Time for the exact engine's finite-time split.
        #[arg(long, short, default_value_t = 150.0)]
        t: f64,
    },
    /// Saddle points of the bulk potential with labels and relevance.
    Saddles {
        #[arg(long, short)]
        u: f64,
        #[arg(long, short)]
        v: f64,
    },
    /// Region map of the velocity quadrant.
    StokesAtlas {
        #[arg(long, default_value_t = 40)]
        grid: usize,
        #[arg(long, default_value_t = 3.0)]
        u_max: f64,
        #[arg(long, default_value_t = 3.0)]
        v_max: f64,
        /// Time for the exact engine's contour amplitudes.
        #[arg(long, short, default_value_t = 40.0)]
        t: f64,
    },
    /// Eigenfunction expansion of ⟨v2|e^{−itH}|v1⟩ for small coordinates.
    CompletenessCheck {
        #[arg(long, default_value_t = 3)]
        max: i64,
        #[arg(long, default_value_t = 192)]
        nodes: usize,
        #[arg(long, short, default_value_t = 0.0)]
        t: f64,
    },
}

fn run(cli: &Cli) -> combwalk::Result<Outcome> {
    let engine = match cli.engine {
        EngineArg::Exact => Engine::Exact,
        EngineArg::Analytic => Engine::Analytic,
        EngineArg::Both => Engine::Both,
    };
    let tol = Tolerances { evolution: cli.tol, quadrature: cli.quad_tol, check: cli.check_tol };
    match cli.command {
        Command::Evolve { n0, j0, t, radius } => cli::evolve(n0, j0, t, radius, engine, &tol),
        Command::Amplitude { n, j, t, j0, route } => {
            let route = match route {
                RouteArg::Contour => AnalyticRoute::Contour,
                RouteArg::Asymptotic => AnalyticRoute::Asymptotic,
            };
            cli::amplitude(n, j, t, j0, engine, route, &tol)
        }
        Command::ReturnProb { t_max, dt } => cli::return_prob(t_max, dt, engine, &tol),
        Command::ProfileTooth { t, n, j0, du } => cli::profile_tooth(t, n, j0, du, engine, &tol),
        Command::ProfileSpine { t, j, dv } => cli::profile_spine(t, j, dv, engine, &tol),
        Command::Escape { j0, t } => cli::escape(j0, t, engine, &tol),
        Command::Saddles { u, v } => cli::saddles(u, v, engine),
        Command::StokesAtlas { grid, u_max, v_max, t } => {
            if grid < 2 || !(u_max > 0.0 && v_max > 0.0) {
                return Err(combwalk::Error::Domain("need grid >= 2 and positive extents".into()));
            }
            cli::stokes_atlas(&Grid::new(u_max, v_max, grid), t, engine, &tol)
        }
        Command::CompletenessCheck { max, nodes, t } => cli::completeness_check(max, nodes, t, engine, &tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let text = outcome.table.render(format);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(3);
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("validation failed: {msg}");
            ExitCode::from(2)
        }
        None => ExitCode::SUCCESS,
    }
}
