use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bicomplex_coulomb::bicomplex::Hyperbolic;
use bicomplex_coulomb::error::Error;
use bicomplex_coulomb::hilbert::orthonormality_matrix;
use bicomplex_coulomb::params::PhysicalParams;
use bicomplex_coulomb::quadrature::{GridConfig, QuadratureGrid};
use bicomplex_coulomb::spectrum::{degeneracy, energy, wavefunction_eval, QuantumNumbers};
use bicomplex_coulomb::surfaces::{
    export_surface, AxisRange, RadialQuantumNumbers, SurfaceFormat, SurfaceGrid, SurfaceMethod,
};
use bicomplex_coulomb::verify::{run_checks, VerifyConfig, CHECK_NAMES};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Relative `--output` paths are resolved against this directory when set.
const OUTPUT_DIR_ENV: &str = "BICOULOMB_OUTPUT_DIR";

/// Bicomplex Coulomb problem: energies, eigenfunctions, orthonormality
/// reports, hyperbolic-plane surfaces and the verification suite.
#[derive(Parser, Debug)]
#[command(name = "bicoulomb", version)]
struct RunConfig {
    #[command(flatten)]
    physics: PhysicsArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PhysicsArgs {
    /// Commutator scalar as idempotent components `xi1,xi2`.
    #[arg(long, global = true, default_value = "1,1", value_parser = parse_pair, allow_hyphen_values = true)]
    xi: (f64, f64),
    /// Reduced mass.
    #[arg(long, global = true, default_value_t = 1.0)]
    mu: f64,
    /// Nuclear charge.
    #[arg(long, global = true, default_value_t = 1.0)]
    z: f64,
    /// Squared elementary charge.
    #[arg(long, global = true, default_value_t = 1.0)]
    e2: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,
}

impl PhysicsArgs {
    fn params(&self) -> Result<PhysicalParams, CliError> {
        let p = PhysicalParams {
            mu: self.mu,
            z: self.z,
            e2: self.e2,
            hbar: self.hbar,
            xi1: self.xi.0,
            xi2: self.xi.1,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of levels (n1, n2, Re E, Hy E, E1, E2, degeneracy).
    Energy(EnergyArgs),
    /// Sample eigenfunctions at points (r, theta, phi).
    Wavefunction(WavefunctionArgs),
    /// Orthonormality report of eigenstates by quadrature.
    Orthocheck(OrthoArgs),
    /// Radial surface over the hyperbolic plane.
    Surface(SurfaceArgs),
    /// Run the named numerical checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct EnergyArgs {
    /// Range of n1, e.g. `1..3` or `2`.
    #[arg(long, default_value = "1..3", value_parser = parse_range)]
    n1: (u32, u32),
    #[arg(long, default_value = "1..3", value_parser = parse_range)]
    n2: (u32, u32),
    #[arg(long, value_enum, default_value_t = TableFormat::Table)]
    format: TableFormat,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct WavefunctionArgs {
    /// Quantum numbers `n1,n2,l1,l2,m1,m2`; repeatable.
    #[arg(long = "state", required = true)]
    states: Vec<String>,
    /// Radii as `start,end,count`.
    #[arg(long, default_value = "0.1,10,10", value_parser = parse_axis)]
    r: AxisRange,
    #[arg(long, default_value_t = 0.7)]
    theta: f64,
    #[arg(long, default_value_t = 0.3)]
    phi: f64,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct OrthoArgs {
    /// Explicit states `n1,n2,l1,l2,m1,m2`; repeatable.
    #[arg(long = "state", conflicts_with = "n_max")]
    states: Vec<String>,
    /// Use every state with both principal numbers at most this.
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    /// Override the number of radial panels.
    #[arg(long)]
    panels: Option<usize>,
    /// Override the Gauss-Legendre order per radial panel.
    #[arg(long)]
    panel_order: Option<usize>,
    /// Override the Gauss-Laguerre order of the radial tail.
    #[arg(long)]
    tail_order: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// Principal numbers `n1,n2`.
    #[arg(long, default_value = "25,25", value_parser = parse_u32_pair)]
    n: (u32, u32),
    /// Angular numbers `l1,l2`.
    #[arg(long, default_value = "12,12", value_parser = parse_u32_pair)]
    l: (u32, u32),
    /// `start,end,count` for x.
    #[arg(long, default_value = "0,120,400", value_parser = parse_axis, allow_hyphen_values = true)]
    x_range: AxisRange,
    /// `start,end,count` for y.
    #[arg(long, default_value = "-40,40,267", value_parser = parse_axis, allow_hyphen_values = true)]
    y_range: AxisRange,
    #[arg(long, value_enum, default_value_t = Method::Idempotent)]
    method: Method,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Idempotent,
    Polynomial,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run only these checks; repeatable.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
    only: Vec<String>,
    /// Principal number for the ODE residual and surface checks.
    #[arg(long)]
    n: Option<u32>,
    /// Angular number for the ODE residual and surface checks.
    #[arg(long)]
    l: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random samples for the algebraic checks.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => CliError::Io(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got '{s}'"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_u32_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got '{s}'"))?;
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("'{t}': {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("'{t}': {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if a == 0 || b < a {
        return Err(format!("range '{s}' must be nonempty with positive bounds"));
    }
    Ok((a, b))
}

fn parse_axis(s: &str) -> Result<AxisRange, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected `start,end,count`, got '{s}'"));
    }
    let f = |t: &str| t.parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    let count = parts[2]
        .parse::<usize>()
        .map_err(|e| format!("'{}': {e}", parts[2]))?;
    AxisRange::new(f(parts[0])?, f(parts[1])?, count).map_err(|e| e.to_string())
}

fn parse_states(raw: &[String]) -> Result<Vec<QuantumNumbers>, CliError> {
    raw.iter()
        .map(|s| s.parse::<QuantumNumbers>().map_err(CliError::from))
        .collect()
}

fn open_output(out: &OutputArgs) -> Result<Box<dyn Write>, CliError> {
    match &out.output {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(path) => {
            let path = match std::env::var_os(OUTPUT_DIR_ENV) {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            Ok(Box::new(BufWriter::new(File::create(path)?)))
        }
    }
}

fn cmd_energy(args: &EnergyArgs, params: &PhysicalParams) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for n1 in args.n1.0..=args.n1.1 {
        for n2 in args.n2.0..=args.n2.1 {
            let e = energy(n1, n2, params)?;
            let (e1, e2) = e.idempotent();
            rows.push((n1, n2, e.re(), e.hy(), e1, e2, degeneracy(n1, n2)));
        }
    }
    let mut w = open_output(&args.out)?;
    match args.format {
        TableFormat::Table => {
            writeln!(
                w,
                "{:>4} {:>4} {:>24} {:>24} {:>24} {:>24} {:>12}",
                "n1", "n2", "ReE", "HyE", "E1", "E2", "degeneracy"
            )?;
            for (n1, n2, re, hy, e1, e2, d) in rows {
                writeln!(
                    w,
                    "{n1:>4} {n2:>4} {re:>24} {hy:>24} {e1:>24} {e2:>24} {d:>12}"
                )?;
            }
        }
        TableFormat::Csv => {
            writeln!(w, "n1,n2,re,hy,e1,e2,degeneracy")?;
            for (n1, n2, re, hy, e1, e2, d) in rows {
                writeln!(w, "{n1},{n2},{re},{hy},{e1},{e2},{d}")?;
            }
        }
        TableFormat::Json => {
            let v: Vec<_> = rows
                .into_iter()
                .map(|(n1, n2, re, hy, e1, e2, d)| {
                    serde_json::json!({"n1": n1, "n2": n2, "re": re, "hy": hy, "e1": e1, "e2": e2, "degeneracy": d})
                })
                .collect();
            serde_json::to_writer_pretty(&mut w, &v).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_wavefunction(args: &WavefunctionArgs, params: &PhysicalParams) -> Result<(), CliError> {
    let states = parse_states(&args.states)?;
    let mut rows = Vec::new();
    for q in &states {
        for r in args.r.nodes() {
            let v = wavefunction_eval(q, params, r, args.theta, args.phi)?;
            rows.push((q.to_string(), r, v));
        }
    }
    let mut w = open_output(&args.out)?;
    match args.format {
        DataFormat::Csv => {
            writeln!(w, "state,r,theta,phi,re1,im1,re2,im2")?;
            for (q, r, v) in rows {
                writeln!(
                    w,
                    "\"{q}\",{r},{},{},{},{},{},{}",
                    args.theta, args.phi, v.c1.re, v.c1.im, v.c2.re, v.c2.im
                )?;
            }
        }
        DataFormat::Json => {
            let v: Vec<_> = rows
                .into_iter()
                .map(|(q, r, v)| {
                    serde_json::json!({
                        "state": q, "r": r, "theta": args.theta, "phi": args.phi,
                        "re1": v.c1.re, "im1": v.c1.im, "re2": v.c2.re, "im2": v.c2.im,
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut w, &v).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_orthocheck(args: &OrthoArgs, params: &PhysicalParams) -> Result<bool, CliError> {
    let states = match args.n_max {
        Some(n) => QuantumNumbers::enumerate_up_to(n),
        None if args.states.is_empty() => QuantumNumbers::enumerate_up_to(2),
        None => parse_states(&args.states)?,
    };
    if states.is_empty() {
        return Err(CliError::Usage("the state list is empty".into()));
    }
    let mut cfg = GridConfig::for_states(&states, params);
    cfg.panels = args.panels.unwrap_or(cfg.panels);
    cfg.panel_order = args.panel_order.unwrap_or(cfg.panel_order);
    cfg.tail_order = args.tail_order.unwrap_or(cfg.tail_order);
    let grid = QuadratureGrid::new(&cfg)?;
    let m = orthonormality_matrix(&states, params, &grid)?;
    let mut w = open_output(&args.out)?;
    m.write_csv(&mut w)?;
    w.flush()?;
    let dev = m.max_deviation();
    let ok = dev < args.tolerance;
    eprintln!(
        "{} states, max deviation {dev:e}, tolerance {:e}: {}",
        states.len(),
        args.tolerance,
        if ok { "PASS" } else { "FAIL" }
    );
    Ok(ok)
}

fn cmd_surface(args: &SurfaceArgs, params: &PhysicalParams) -> Result<(), CliError> {
    let q = RadialQuantumNumbers::new(args.n.0, args.n.1, args.l.0, args.l.1)?;
    let xi = Hyperbolic::from_idempotent(params.xi1, params.xi2);
    let method = match args.method {
        Method::Idempotent => SurfaceMethod::Idempotent,
        Method::Polynomial => SurfaceMethod::Polynomial,
    };
    let grid = SurfaceGrid::compute(&q, xi, params, args.x_range, args.y_range, method)?;
    let format = match args.format {
        DataFormat::Csv => SurfaceFormat::Csv,
        DataFormat::Json => SurfaceFormat::Json,
    };
    let mut w = open_output(&args.out)?;
    export_surface(&grid, format, &mut w)?;
    w.flush()?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let cfg = VerifyConfig {
        seed: args.seed,
        only: args.only.clone(),
        n: args.n,
        l: args.l,
        samples: args.samples,
    };
    let results = run_checks(&cfg)?;
    let mut w = open_output(&args.out)?;
    if args.json {
        serde_json::to_writer_pretty(&mut w, &results).map_err(io::Error::from)?;
        writeln!(w)?;
    } else {
        for r in &results {
            writeln!(
                w,
                "{} {:<18} metric {:.3e} tolerance {:.1e}  {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.metric,
                r.tolerance,
                r.detail
            )?;
        }
    }
    w.flush()?;
    Ok(results.iter().all(|r| r.passed))
}

fn run(cli: &RunConfig) -> Result<bool, CliError> {
    let params = cli.physics.params()?;
    match &cli.command {
        Command::Energy(a) => cmd_energy(a, &params).map(|_| true),
        Command::Wavefunction(a) => cmd_wavefunction(a, &params).map(|_| true),
        Command::Orthocheck(a) => cmd_orthocheck(a, &params),
        Command::Surface(a) => cmd_surface(a, &params).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn main() -> ExitCode {
    let cli = RunConfig::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
