//! Command-line front end for the Clebsch-Gordan evaluators: single
//! evaluations, CSV grid sweeps, region-geometry export, the 1-D model
//! integral and a self-verification suite.
//!
//! Exit codes: 0 success, 1 runtime or verification failure, 2 argument,
//! parse or usage violation, 3 evaluation on the caustic (beta^2 = 0).

mod config;
mod render;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use cgasym::model1d::{f_asymptotic, f_exact, f_quadrature, single_branch_gaussian, ModelInput};
use cgasym::{evaluate_with_caustic_scale, region, CgError, HalfInt, Method, QuantumNumbers};
use clap::{Args, Parser, Subcommand};

use config::Config;
use render::{full, rational_f64, sig6};
use sweep::{MRange, SweepSpec};

#[derive(Parser)]
#[command(name = "cgasym", version, about = "Clebsch-Gordan coefficients, exact and semiclassical")]
struct Cli {
    /// Configuration file (default: ./cgasym.conf when present)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one coefficient
    Eval(EvalArgs),
    /// Sweep an (m1, m2) grid at fixed j's and emit CSV
    Sweep(SweepArgs),
    /// Export the allowed/forbidden map geometry for fixed j's as JSON
    Region(RegionArgs),
    /// Evaluate the 1-D model integral F(m, n)
    Model1d(ModelArgs),
    /// Run the self-verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Quantum numbers j1,m1,j2,m2,j,m; each an integer, a p/2 fraction or
    /// a .5 decimal (e.g. 200,100,300.5,150.5,801/2,501/2)
    #[arg(long, value_name = "J1,M1,J2,M2,J,M", allow_hyphen_values = true)]
    q: String,
    /// exact | first | allreal | higher
    #[arg(long, default_value = "exact")]
    method: String,
    /// text | json
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    j1: String,
    #[arg(long)]
    j2: String,
    #[arg(long)]
    j: String,
    /// m1 values as lo:hi or lo:hi:step (default -j1:j1:1)
    #[arg(long, value_name = "LO:HI[:STEP]", allow_hyphen_values = true)]
    m1: Option<String>,
    /// m2 values as lo:hi or lo:hi:step (default -j2:j2:1)
    #[arg(long, value_name = "LO:HI[:STEP]", allow_hyphen_values = true)]
    m2: Option<String>,
    /// Write CSV here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long)]
    j1: String,
    #[arg(long)]
    j2: String,
    #[arg(long)]
    j: String,
    /// Write JSON here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    m: i64,
    #[arg(long)]
    n: i64,
    /// Absolute quadrature tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// text | json
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 20260814)]
    seed: u64,
    /// quick | full
    #[arg(long, default_value = "quick")]
    level: String,
}

/// Error with the exit code it should terminate with.
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> CliError {
        CliError { code, message: message.into() }
    }

    /// Argument, parse or usage violations.
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError::new(2, message)
    }

    fn from_cg(err: CgError) -> CliError {
        let code = match err {
            CgError::Parse(_) | CgError::InvalidInput(_) => 2,
            CgError::Boundary => 3,
            _ => 1,
        };
        CliError::new(code, err.to_string())
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes (sweep | head), like any
    // other unix filter, instead of panicking on the failed write
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let cfg = match Config::load(cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(message) => {
            eprintln!("cgasym: {message}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(&args, &cfg),
        Command::Sweep(args) => cmd_sweep(&args, &cfg),
        Command::Region(args) => cmd_region(&args),
        Command::Model1d(args) => cmd_model(&args),
        Command::Verify(args) => cmd_verify(&args, &cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cgasym: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn parse_q(s: &str) -> Result<QuantumNumbers, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err(CliError::usage(format!(
            "--q needs six comma-separated entries j1,m1,j2,m2,j,m; got {}",
            parts.len()
        )));
    }
    let mut h = [HalfInt::ZERO; 6];
    for (slot, part) in h.iter_mut().zip(&parts) {
        *slot = HalfInt::parse(part).map_err(CliError::from_cg)?;
    }
    QuantumNumbers::new(h[0], h[1], h[2], h[3], h[4], h[5]).map_err(CliError::from_cg)
}

fn parse_j(name: &str, s: &str) -> Result<HalfInt, CliError> {
    let j = HalfInt::parse(s).map_err(CliError::from_cg)?;
    if j.twice() < 0 {
        return Err(CliError::usage(format!("{name} = {j} is negative")));
    }
    Ok(j)
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::new(1, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_eval(args: &EvalArgs, cfg: &Config) -> Result<(), CliError> {
    let q = parse_q(&args.q)?;
    let method = Method::parse(&args.method).map_err(CliError::from_cg)?;
    let eval = evaluate_with_caustic_scale(&q, method, cfg.near_caustic_scale)
        .map_err(CliError::from_cg)?;
    let beta2 = rational_f64(&eval.beta_squared);

    match args.format.as_str() {
        "text" => {
            println!("q = {q}");
            println!("method = {}", args.method);
            println!("value = {} (full {})", sig6(eval.value), full(eval.value));
            if let Some(exact) = &eval.exact {
                println!("exact = {exact}");
            }
            println!("region = {}", eval.region);
            println!("beta_squared = {} (~{})", eval.beta_squared, full(beta2));
            println!("near_caustic = {}", eval.near_caustic);
        }
        "json" => {
            let [j1, m1, j2, m2, j, m] = [q.j1, q.m1, q.j2, q.m2, q.j, q.m].map(|h| h.to_string());
            let record = serde_json::json!({
                "q": {"j1": j1, "m1": m1, "j2": j2, "m2": m2, "j": j, "m": m},
                "method": args.method,
                "value": eval.value,
                "exact": eval.exact.as_ref().map(|r| serde_json::json!({
                    "sign": r.sign(),
                    "radicand": r.radicand().to_string(),
                    "display": r.to_string(),
                })),
                "region": eval.region,
                "beta_squared": {"exact": eval.beta_squared.to_string(), "value": beta2},
                "near_caustic": eval.near_caustic,
            });
            println!("{}", serde_json::to_string_pretty(&record).expect("serializable record"));
        }
        other => return Err(CliError::usage(format!("unknown format '{other}' (expected text or json)"))),
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, cfg: &Config) -> Result<(), CliError> {
    let j1 = parse_j("j1", &args.j1)?;
    let j2 = parse_j("j2", &args.j2)?;
    let j = parse_j("j", &args.j)?;
    let range = |src: &Option<String>, j| -> Result<MRange, CliError> {
        match src {
            Some(s) => MRange::parse(s).map_err(CliError::usage),
            None => Ok(MRange::covering(j)),
        }
    };
    let spec = SweepSpec {
        j1,
        j2,
        j,
        m1_range: range(&args.m1, j1)?,
        m2_range: range(&args.m2, j2)?,
        exact_cap: cfg.exact_cap,
    };
    let csv = sweep::run(&spec)?;
    write_or_print(args.out.as_ref(), &csv)
}

fn cmd_region(args: &RegionArgs) -> Result<(), CliError> {
    let j1 = parse_j("j1", &args.j1)?;
    let j2 = parse_j("j2", &args.j2)?;
    let j = parse_j("j", &args.j)?;
    // geometry domain failures are bad arguments here, not runtime faults
    let geometry = region::region_map_geometry(j1, j2, j)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let record = serde_json::json!({
        "j1": j1.to_string(),
        "j2": j2.to_string(),
        "j": j.to_string(),
        "hexagon_edges": geometry.hexagon_edges,
        "ellipse": geometry.ellipse,
        "tangency_points": geometry.tangency_points,
    });
    let mut text = serde_json::to_string_pretty(&record).expect("serializable record");
    text.push('\n');
    write_or_print(args.out.as_ref(), &text)
}

fn cmd_model(args: &ModelArgs) -> Result<(), CliError> {
    let inp = ModelInput::new(args.m, args.n).map_err(CliError::from_cg)?;
    let exact = f_exact(&inp);
    let exact_value = exact.value();
    let asymptotic = match f_asymptotic(&inp) {
        Ok(v) => Some(v),
        Err(CgError::CriticalRatio) => None,
        Err(e) => return Err(CliError::from_cg(e)),
    };
    let gaussian = single_branch_gaussian(&inp).ok();
    let quadrature = f_quadrature(&inp, args.tol).map_err(CliError::from_cg)?;
    let coefficient = exact.coefficient.to_string();
    let closed_form = if exact.times_pi {
        format!("({coefficient})*pi")
    } else {
        coefficient.clone()
    };

    match args.format.as_str() {
        "text" => {
            println!("F({}, {}) = {closed_form} = {}", args.m, args.n, full(exact_value));
            match asymptotic {
                Some(v) => println!("asymptotic = {}", full(v)),
                None => println!("asymptotic = undefined at the critical ratio m = n"),
            }
            if let Some(g) = gaussian {
                println!("single_branch_gaussian = {}", full(g));
            }
            println!("quadrature(tol={}) = {}", full(args.tol), full(quadrature));
        }
        "json" => {
            let record = serde_json::json!({
                "m": args.m,
                "n": args.n,
                "exact": {
                    "coefficient": coefficient,
                    "times_pi": exact.times_pi,
                    "value": exact_value,
                },
                "asymptotic": asymptotic,
                "critical_ratio": asymptotic.is_none(),
                "single_branch_gaussian": gaussian,
                "quadrature": quadrature,
                "tol": args.tol,
            });
            println!("{}", serde_json::to_string_pretty(&record).expect("serializable record"));
        }
        other => return Err(CliError::usage(format!("unknown format '{other}' (expected text or json)"))),
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, cfg: &Config) -> Result<(), CliError> {
    let level = verify::Level::parse(&args.level).map_err(CliError::usage)?;
    if verify::run(args.seed, level, cfg) {
        Ok(())
    } else {
        Err(CliError::new(1, "verification failed"))
    }
}
