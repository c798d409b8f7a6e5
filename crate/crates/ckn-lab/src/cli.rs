//! Command-line front end: every computation of the crate exposed as a
//! reproducible table-emitting command.
//!
//! One command per invocation; flags fully determine a run (no config
//! files), so identical flags and seed give byte-identical output. The
//! shared flag vocabulary is `--d --n --alpha --lambda --tol --out
//! --format --seed --k-max`, each command taking the subset it needs;
//! the environment variable `CKN_THREADS` caps internal parallelism.
//!
//! Output conventions:
//!
//! * `--format json` (the default) emits one object whose `"config"` block
//!   echoes the resolved parameter set — including the derived exponents
//!   `a`, `b`, `p` and the normalization `kappa` — so every artifact is
//!   self-describing; table-producing commands put their rows under
//!   `"rows"`, summary commands put the scalar under its own key (for
//!   example `mass` emits `"m"`).
//! * `--format csv` emits exactly the declared schema: a header line plus
//!   rows with 17-significant-digit decimals, each line `\n`-terminated.
//!   The config echo then goes to stderr, keeping the artifact pure.
//! * `--out FILE` writes the artifact to a file instead of stdout.
//!
//! Exit codes: `0` success, `2` domain error (inadmissible parameters),
//! `3` numerical failure (divergence, tolerance, truncation), `4` I/O
//! error, `64` usage error.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::green_radial::{green_hl, profile_rows, two_point_green, verify_estimates, Domain};
use crate::mass::{lambda_star_rad, mass, mass_sweep};
use crate::params::{make_params, Params};
use crate::variational::{deficit_scaling, mass_sign_experiment, spectral_gap};

/// Parse `std::env::args`, execute, and return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

/// Run one parsed command inside a thread pool sized by `CKN_THREADS`.
pub fn execute(cli: Cli) -> Result<()> {
    let pool = thread_pool()?;
    pool.install(|| dispatch(cli))
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("CKN_THREADS") {
        let threads: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "CKN_THREADS = {raw:?} is not a positive integer"
                ))
            })?;
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| Error::Domain(format!("thread pool construction failed: {e}")))
}

/// Numerical laboratory for weighted Sobolev inequalities on the cone and
/// its hyperbolic ball model: constants, radial Green functions, the mass
/// `m_lambda`, the threshold `lambda_*^rad`, test-family quotients and the
/// spectral bottom.
#[derive(Debug, Parser)]
#[command(name = "ckn", version, about, long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derived constants (p, a, b, kappa, lambda_1, Z, c_rad, ...) of one
    /// parameter triple.
    Constants(ConstantsArgs),
    /// The mass m_lambda of the radial Green function (requires n < 4).
    Mass(MassArgs),
    /// The radial threshold lambda_*^rad = max{lambda <= 1 : m_lambda <= 0}.
    LambdaStar(LambdaStarArgs),
    /// Tabulate m_lambda over a grid of effective dimensions n.
    Sweep(SweepArgs),
    /// Tabulate the radial Green function G, the fundamental solution Phi
    /// and the corrector chi on an interior grid.
    Green(GreenArgs),
    /// Evaluate the zonal two-point Green kernel at one point pair (d = 3).
    TwoPoint(TwoPointArgs),
    /// Sample the two-sided kernel envelope estimate and report the extreme
    /// value/envelope ratios (d = 3).
    VerifyEstimates(VerifyArgs),
    /// Deficit-scaling table for the cutoff bubble family at lambda = 0.
    Deficit(DeficitArgs),
    /// Mass-sign experiment: quotient gap of the corrected family across a
    /// ladder of widths (requires n < 4).
    SignExperiment(SignArgs),
    /// Finite-element upper bound for the spectral bottom of the weighted
    /// hyperbolic Laplacian.
    SpectralGap(GapArgs),
}

#[derive(Debug, Args)]
struct GeomArgs {
    /// Ambient dimension (>= 3).
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Effective dimension.
    #[arg(long)]
    n: f64,
    /// Cone deformation parameter.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
}

impl GeomArgs {
    fn params(&self) -> Result<Params> {
        make_params(self.d, self.n, self.alpha)
    }
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct ConstantsArgs {
    #[command(flatten)]
    geom: GeomArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct MassArgs {
    #[command(flatten)]
    geom: GeomArgs,
    /// Spectral parameter in [0, 1].
    #[arg(long)]
    lambda: f64,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct LambdaStarArgs {
    #[command(flatten)]
    geom: GeomArgs,
    /// Bisection width for the threshold.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Ambient dimension (>= 3).
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Cone deformation parameter.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Spectral parameter in [0, 1].
    #[arg(long)]
    lambda: f64,
    /// Comma-separated effective dimensions, e.g. 3.5,3.8,3.9,3.95; an
    /// empty grid emits a header-only table.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    n_grid: Vec<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct GreenArgs {
    #[command(flatten)]
    geom: GeomArgs,
    /// Spectral parameter in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// Branch construction tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Number of interior grid points rho_i = i/(N+1).
    #[arg(long, default_value_t = 200)]
    grid_points: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    /// Ball model (lambda in [0, 1], radii inside the unit ball).
    Ball,
    /// Weighted cone (lambda = 0, radii unrestricted).
    Cone,
}

#[derive(Debug, Args)]
struct TwoPointArgs {
    #[command(flatten)]
    geom: GeomArgs,
    /// Spectral parameter (ball only; the cone requires 0).
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// First radius (in the cone coordinate rho).
    #[arg(long)]
    rho_x: f64,
    /// Second radius.
    #[arg(long)]
    rho_y: f64,
    /// Cosine of the angle between the two directions.
    #[arg(long, default_value_t = 0.0)]
    cos_theta: f64,
    /// Mode-sum cap.
    #[arg(long, default_value_t = 32)]
    k_max: u32,
    /// Separated problem to evaluate.
    #[arg(long, value_enum, default_value_t = DomainArg::Ball)]
    domain: DomainArg,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    geom: GeomArgs,
    /// Spectral parameter in [0, 1].
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    /// Number of sampled point pairs.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Quasi-random sequence seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Mode-sum cap.
    #[arg(long, default_value_t = 32)]
    k_max: u32,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct DeficitArgs {
    #[command(flatten)]
    geom: GeomArgs,
    /// Comma-separated bubble widths.
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05,0.025")]
    eps: Vec<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct SignArgs {
    #[command(flatten)]
    geom: GeomArgs,
    /// Spectral parameter in [0, 1).
    #[arg(long)]
    lambda: f64,
    /// Comma-separated corrected-family widths.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025,0.0125")]
    eps: Vec<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct GapArgs {
    #[command(flatten)]
    geom: GeomArgs,
    /// Number of P1 elements.
    #[arg(long, default_value_t = 512)]
    mesh: usize,
    /// Dirichlet support cap in (0, 1).
    #[arg(long, default_value_t = 1.0 - 1e-12)]
    cap: f64,
    #[command(flatten)]
    out: OutArgs,
}

/// 17-significant-digit CSV cell.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Config echo shared by every command: geometry plus the derived
/// constants a, b, p, kappa.
fn base_config(command: &str, params: &Params) -> Map<String, Value> {
    let (a, b) = params.ab();
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    map.insert("d".into(), json!(params.d()));
    map.insert("n".into(), json!(params.n()));
    map.insert("alpha".into(), json!(params.alpha()));
    map.insert("a".into(), json!(a));
    map.insert("b".into(), json!(b));
    map.insert("p".into(), json!(params.p()));
    map.insert("kappa".into(), json!(params.kappa()));
    map
}

/// Write the artifact: the chosen format to `--out` or stdout; for CSV the
/// config echo goes to stderr so the table stays schema-pure.
fn emit(out: &OutArgs, config: Value, csv: String, json_doc: Value) -> Result<()> {
    let text = match out.format {
        Format::Csv => {
            eprintln!("# config {config}");
            csv
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json_doc)
                .map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    match &out.out {
        Some(path) => std::fs::write(path, text.as_bytes())?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn csv_table(header: &str, rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    s.push_str(header);
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Constants(args) => cmd_constants(args),
        Command::Mass(args) => cmd_mass(args),
        Command::LambdaStar(args) => cmd_lambda_star(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Green(args) => cmd_green(args),
        Command::TwoPoint(args) => cmd_two_point(args),
        Command::VerifyEstimates(args) => cmd_verify(args),
        Command::Deficit(args) => cmd_deficit(args),
        Command::SignExperiment(args) => cmd_sign(args),
        Command::SpectralGap(args) => cmd_gap(args),
    }
}

fn cmd_constants(args: ConstantsArgs) -> Result<()> {
    let params = args.geom.params()?;
    let rec = params.constants();
    let config = Value::Object(base_config("constants", &params));
    let csv = csv_table(
        "p,a,b,kappa,lambda_one,z,c_rad,fs_holds,sphere_area",
        &[vec![
            num(rec.p),
            num(rec.a),
            num(rec.b),
            num(rec.kappa),
            num(rec.lambda_one),
            num(rec.z),
            num(rec.c_rad),
            rec.fs_holds.to_string(),
            num(rec.sphere_area),
        ]],
    );
    let doc = json!({ "config": config, "rows": [rec] });
    emit(&args.out, config, csv, doc)
}

fn cmd_mass(args: MassArgs) -> Result<()> {
    let params = args.geom.params()?;
    let result = mass(&params, args.lambda, args.tol)?;
    let mut config = base_config("mass", &params);
    config.insert("lambda".into(), json!(args.lambda));
    config.insert("tol".into(), json!(args.tol));
    let config = Value::Object(config);
    let csv = csv_table(
        "m,err_estimate,evaluations",
        &[vec![
            num(result.m),
            num(result.err_estimate),
            result.evaluations.to_string(),
        ]],
    );
    let doc = json!({
        "config": config,
        "m": result.m,
        "err_estimate": result.err_estimate,
        "evaluations": result.evaluations,
    });
    emit(&args.out, config, csv, doc)
}

fn cmd_lambda_star(args: LambdaStarArgs) -> Result<()> {
    let params = args.geom.params()?;
    let star = lambda_star_rad(&params, args.tol)?;
    let mut config = base_config("lambda-star", &params);
    config.insert("tol".into(), json!(args.tol));
    let config = Value::Object(config);
    let csv = csv_table("lambda_star", &[vec![num(star)]]);
    let doc = json!({ "config": config, "lambda_star": star });
    emit(&args.out, config, csv, doc)
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let rows = mass_sweep(args.d, args.alpha, args.lambda, &args.n_grid);
    let mut config = Map::new();
    config.insert("command".into(), json!("sweep"));
    config.insert("d".into(), json!(args.d));
    config.insert("alpha".into(), json!(args.alpha));
    config.insert("lambda".into(), json!(args.lambda));
    config.insert("n_grid".into(), json!(args.n_grid));
    let config = Value::Object(config);
    let csv_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.d.to_string(),
                num(r.n),
                num(r.alpha),
                num(r.lambda),
                num(r.m),
                num(r.err_estimate),
                r.status.to_string(),
            ]
        })
        .collect();
    let csv = csv_table("d,n,alpha,lambda,m,err_estimate,status", &csv_rows);
    let doc = json!({ "config": config, "rows": rows });
    emit(&args.out, config, csv, doc)
}

fn cmd_green(args: GreenArgs) -> Result<()> {
    let params = args.geom.params()?;
    if args.grid_points == 0 || args.grid_points > 1_000_000 {
        return Err(Error::Domain(format!(
            "grid size {} outside [1, 1000000]",
            args.grid_points
        )));
    }
    let rtol = args.tol.clamp(1e-13, 1e-6);
    let green = green_hl(&params, args.lambda, rtol)?;
    let grid: Vec<f64> = (1..=args.grid_points)
        .map(|i| i as f64 / (args.grid_points + 1) as f64)
        .collect();
    let rows = profile_rows(&green, &grid);
    let mut config = base_config("green", &params);
    config.insert("lambda".into(), json!(args.lambda));
    config.insert("tol".into(), json!(args.tol));
    config.insert("grid_points".into(), json!(args.grid_points));
    let config = Value::Object(config);
    let csv_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![num(r.rho), num(r.g), num(r.phi), num(r.chi)])
        .collect();
    let csv = csv_table("rho,G,phi,chi", &csv_rows);
    let doc = json!({ "config": config, "rows": rows });
    emit(&args.out, config, csv, doc)
}

fn cmd_two_point(args: TwoPointArgs) -> Result<()> {
    let params = args.geom.params()?;
    let domain = match args.domain {
        DomainArg::Ball => Domain::Ball,
        DomainArg::Cone => Domain::Cone,
    };
    let value = two_point_green(
        &params,
        args.lambda,
        args.rho_x,
        args.rho_y,
        args.cos_theta,
        args.k_max,
        domain,
    )?;
    let mut config = base_config("two-point", &params);
    config.insert("lambda".into(), json!(args.lambda));
    config.insert("k_max".into(), json!(args.k_max));
    config.insert(
        "domain".into(),
        json!(match domain {
            Domain::Ball => "ball",
            Domain::Cone => "cone",
        }),
    );
    let config = Value::Object(config);
    let csv = csv_table(
        "rho_x,rho_y,cos_theta,value",
        &[vec![
            num(args.rho_x),
            num(args.rho_y),
            num(args.cos_theta),
            num(value),
        ]],
    );
    let doc = json!({
        "config": config,
        "rho_x": args.rho_x,
        "rho_y": args.rho_y,
        "cos_theta": args.cos_theta,
        "value": value,
    });
    emit(&args.out, config, csv, doc)
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    let params = args.geom.params()?;
    let report = verify_estimates(&params, args.lambda, args.samples, args.seed, args.k_max)?;
    let mut config = base_config("verify-estimates", &params);
    config.insert("lambda".into(), json!(args.lambda));
    config.insert("samples".into(), json!(args.samples));
    config.insert("seed".into(), json!(args.seed));
    config.insert("k_max".into(), json!(args.k_max));
    let config = Value::Object(config);
    let csv_rows: Vec<Vec<String>> = report
        .samples
        .iter()
        .map(|s| {
            vec![
                s.regime.to_string(),
                num(s.x_r),
                num(s.y_r),
                num(s.cos_theta),
                num(s.value),
                num(s.envelope),
                num(s.ratio),
            ]
        })
        .collect();
    let csv = csv_table("regime,x_r,y_r,cos_theta,value,envelope,ratio", &csv_rows);
    let doc = json!({
        "config": config,
        "rows": report.samples,
        "sup_ratio": report.sup_ratio,
        "min_ratio": report.min_ratio,
        "sup_by_regime": report.sup_by_regime,
        "truncated": report.truncated,
    });
    emit(&args.out, config, csv, doc)
}

fn cmd_deficit(args: DeficitArgs) -> Result<()> {
    let params = args.geom.params()?;
    let table = deficit_scaling(&params, &args.eps)?;
    let mut config = base_config("deficit", &params);
    config.insert("eps".into(), json!(args.eps));
    let config = Value::Object(config);
    let csv_rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| vec![num(r.eps), num(r.deficit), num(r.f2_mass), num(r.ratio)])
        .collect();
    let csv = csv_table("eps,deficit,f2_mass,ratio", &csv_rows);
    let doc = json!({ "config": config, "rows": table.rows, "slope": table.slope });
    emit(&args.out, config, csv, doc)
}

fn cmd_sign(args: SignArgs) -> Result<()> {
    let params = args.geom.params()?;
    let table = mass_sign_experiment(&params, args.lambda, &args.eps)?;
    let mut config = base_config("sign-experiment", &params);
    config.insert("lambda".into(), json!(args.lambda));
    config.insert("eps".into(), json!(args.eps));
    let config = Value::Object(config);
    let csv_rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| vec![num(r.eps), num(r.quotient), num(r.gap)])
        .collect();
    let csv = csv_table("eps,quotient,gap", &csv_rows);
    let doc = json!({ "config": config, "rows": table.rows, "exponent": table.exponent });
    emit(&args.out, config, csv, doc)
}

fn cmd_gap(args: GapArgs) -> Result<()> {
    let params = args.geom.params()?;
    let value = spectral_gap(&params, args.mesh, args.cap)?;
    let mut config = base_config("spectral-gap", &params);
    config.insert("mesh".into(), json!(args.mesh));
    config.insert("cap".into(), json!(args.cap));
    let config = Value::Object(config);
    let csv = csv_table(
        "mesh,cap,value",
        &[vec![args.mesh.to_string(), num(args.cap), num(value)]],
    );
    let doc = json!({
        "config": config,
        "rows": [ { "mesh": args.mesh, "cap": args.cap, "value": value } ],
    });
    emit(&args.out, config, csv, doc)
}
