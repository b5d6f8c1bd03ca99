use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sigcert::io::{
    maxcut_to_bpo, parse_rudy, read_csv, relative_gap, run_experiment, summarize, write_csv, write_rudy,
    ExperimentConfig, Instance, RunMethod, Setting,
};
use sigcert::lp::{write_mps, LpModel};
use sigcert::mincut::minimize_nns;
use sigcert::poly::{brute_force_min, is_nns, parse_polynomial, parse_polynomial_with_vars, write_polynomial};
use sigcert::rational::{self, Rational};
use sigcert::relax::{
    build_level_relaxation, extract_certificate, num_levels, sherali_adams_1, RelaxMethod, SolveMode,
};
use sigcert::solve::{solve_with, Arithmetic, SolveOptions, Status};
use sigcert::{Error, Polynomial};

#[derive(Parser)]
#[command(name = "sigcert", version, about = "Signed certificates and LP relaxations for binary polynomial optimization")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Solve LPs in floating point instead of exact rationals.
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Binary non-negativity of an NNS polynomial by min-cut (exit 1 if violated).
    Check(PolyArgs),
    /// Minimum of a polynomial: min-cut when NNS, enumeration otherwise.
    Min(PolyArgs),
    /// Solve one relaxation and print its bound.
    Relax(RelaxArgs),
    /// Write a relaxation as fixed-format MPS.
    Export {
        #[arg(long, value_name = "PATH")]
        mps: PathBuf,
        #[command(flatten)]
        relax: RelaxArgs,
    },
    /// Run relaxations over Max-Cut instances and write a CSV report.
    Run(RunArgs),
    /// Print the summary table of a CSV report.
    Report { csv: PathBuf },
    /// Print a random instance.
    Gen(GenArgs),
}

#[derive(Args)]
struct PolyArgs {
    input: PathBuf,
    /// Number of variables, when larger than the largest index used.
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Poly,
    Rudy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Std,
    Lov,
    Sa1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Extended,
    Cutplane,
}

#[derive(Args)]
struct RelaxArgs {
    /// Polynomial (`.poly`) or rudy graph (any other extension).
    input: PathBuf,
    /// Override the format implied by the file extension.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    vars: Option<usize>,
    #[arg(long, value_enum, default_value = "std")]
    method: MethodArg,
    #[arg(long, default_value_t = 1)]
    level: usize,
    #[arg(long, value_enum, default_value = "extended")]
    mode: ModeArg,
    /// Known optimum (maximum cut for graphs, minimum for polynomials); prints the gap.
    #[arg(long, allow_hyphen_values = true)]
    opt: Option<String>,
    /// Write the extracted certificate as JSON (exact signed relaxations only).
    #[arg(long, value_name = "PATH")]
    certificate: Option<PathBuf>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    /// Rudy graph files.
    #[arg(required = true)]
    instances: Vec<PathBuf>,
    /// Comma-separated methods.
    #[arg(long, value_delimiter = ',', default_value = "sa1,std")]
    methods: Vec<String>,
    /// Comma-separated levels for the signed methods.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    levels: Vec<usize>,
    /// File of `<instance> <maximum cut>` lines.
    #[arg(long)]
    optima: Option<PathBuf>,
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value = "extended")]
    mode: ModeArg,
    /// CSV output (stdout when omitted).
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    /// Polynomial with negative and positive nonlinear monomials.
    Poly,
    /// Polynomial whose nonlinear monomials are all negative.
    Nns,
    /// Rudy graph.
    Graph,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Nonlinear monomial budget for polynomials.
    #[arg(long, default_value_t = 6)]
    terms: usize,
    #[arg(long, default_value_t = 0.1)]
    density: f64,
    /// Comma-separated edge weights to draw from.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,1")]
    weights: Vec<i64>,
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Ok,
    Violated,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Violated) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_poly(path: &Path, vars: Option<usize>) -> Result<Polynomial, Error> {
    let text = read(path)?;
    match vars {
        Some(n) => parse_polynomial_with_vars(&text, n),
        None => parse_polynomial(&text),
    }
}

fn point(x: &[bool]) -> String {
    x.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_value(s: &str) -> Result<Rational, Error> {
    rational::parse(s).ok_or_else(|| Error::Parse {
        line: 0,
        msg: format!("not a number: `{s}`"),
    })
}

fn solve_options(cli_float: bool, time_limit: Option<f64>) -> SolveOptions {
    SolveOptions {
        arithmetic: if cli_float {
            Arithmetic::Float
        } else {
            Arithmetic::Exact
        },
        deadline: time_limit.map(|s| std::time::Instant::now() + Duration::from_secs_f64(s)),
        ..SolveOptions::default()
    }
}

fn run(cli: Cli) -> Result<Verdict, Error> {
    match cli.command {
        Command::Check(a) => {
            let f = load_poly(&a.input, a.vars)?;
            let (x, min) = minimize_nns(&f)?;
            println!("min = {}", rational::format(&min));
            if min >= Rational::from_integer(0.into()) {
                println!("nonnegative");
                Ok(Verdict::Ok)
            } else {
                println!("violated at x = {}", point(&x));
                Ok(Verdict::Violated)
            }
        }
        Command::Min(a) => {
            let f = load_poly(&a.input, a.vars)?;
            let (x, min) = if is_nns(&f) {
                minimize_nns(&f)?
            } else {
                brute_force_min(&f)?
            };
            println!("min = {}", rational::format(&min));
            println!("x = {}", point(&x));
            Ok(Verdict::Ok)
        }
        Command::Relax(a) => relax(&a, cli.float, None),
        Command::Export { mps, relax: a } => relax(&a, cli.float, Some(&mps)),
        Command::Run(a) => run_batch(&a, cli.float),
        Command::Report { csv } => {
            let file = fs::File::open(&csv).map_err(|e| Error::Io(format!("{}: {e}", csv.display())))?;
            let reports = read_csv(file)?;
            print!("{}", summarize(&reports).to_table());
            Ok(Verdict::Ok)
        }
        Command::Gen(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            match a.kind {
                GenKind::Poly => {
                    let f = sigcert::gen::random_polynomial(&mut rng, a.n, a.terms, a.terms);
                    print!("{}", write_polynomial(&f));
                }
                GenKind::Nns => {
                    let f = sigcert::gen::random_nns(&mut rng, a.n, a.terms);
                    print!("{}", write_polynomial(&f));
                }
                GenKind::Graph => {
                    if a.weights.is_empty() {
                        return Err(Error::EmptySet);
                    }
                    let g = sigcert::gen::random_graph(&mut rng, a.n, a.density, &a.weights);
                    print!("{}", write_rudy(&g));
                }
            }
            Ok(Verdict::Ok)
        }
    }
}

fn relax(a: &RelaxArgs, float: bool, mps: Option<&Path>) -> Result<Verdict, Error> {
    let is_poly = match a.format {
        Some(f) => f == Format::Poly,
        None => a.input.extension().is_some_and(|e| e == "poly"),
    };
    // graphs are minimized as f = -cut and reported as maximum cut bounds
    let (f, is_graph) = if is_poly {
        (load_poly(&a.input, a.vars)?, false)
    } else {
        (maxcut_to_bpo(&parse_rudy(&read(&a.input)?)?), true)
    };
    let opts = solve_options(float, a.time_limit);
    let mode = match a.mode {
        ModeArg::Extended => SolveMode::Extended,
        ModeArg::Cutplane => SolveMode::CuttingPlane,
    };
    let name = a.input.file_stem().map_or("relax".into(), |s| s.to_string_lossy().into_owned());

    let (lambda, rows, cols): (Rational, usize, usize) = match a.method {
        MethodArg::Sa1 => {
            if a.level != 1 {
                return Err(Error::LevelOutOfRange { level: a.level, max: 1 });
            }
            let sa = sherali_adams_1(&f)?;
            if let Some(path) = mps {
                return export(&sa.model, &name, path);
            }
            let sol = solve_with(&sa.model, &opts)?;
            if sol.status != Status::Optimal {
                println!("status = {:?}", sol.status);
                return Ok(Verdict::Violated);
            }
            (sol.values[sa.lambda.0].clone(), sa.model.num_rows(), sa.model.num_vars())
        }
        MethodArg::Std | MethodArg::Lov => {
            let method = if a.method == MethodArg::Std {
                RelaxMethod::Standard
            } else {
                RelaxMethod::Lovasz
            };
            let max = num_levels(&f, method);
            if a.level == 0 || a.level > max {
                return Err(Error::LevelOutOfRange { level: a.level, max });
            }
            let rm = build_level_relaxation(&f, a.level, method)?;
            if let Some(path) = mps {
                return export(&rm.model, &name, path);
            }
            let sol = match rm.solve(mode, &opts) {
                Ok(s) => s,
                Err(Error::Unsolved(why)) => {
                    println!("status = {why}");
                    return Ok(Verdict::Violated);
                }
                Err(e) => return Err(e),
            };
            if let Some(path) = &a.certificate {
                let cert = extract_certificate(&rm, &sol)?;
                fs::write(path, cert.to_json())?;
            }
            (sol.lambda, sol.rows, sol.cols)
        }
    };

    println!("rows = {rows}");
    println!("cols = {cols}");
    if is_graph {
        let bound = -lambda;
        println!("bound = {} (maximum cut upper bound)", show(&bound, float));
        if let Some(opt) = &a.opt {
            let opt = parse_value(opt)?;
            println!("gap = {:.6}", relative_gap(rational::to_f64(&bound), rational::to_f64(&opt)));
        }
    } else {
        println!("bound = {} (lower bound on min f)", show(&lambda, float));
        if let Some(opt) = &a.opt {
            // the same formula on -f, whose maximum is -min f
            let opt = parse_value(opt)?;
            println!("gap = {:.6}", relative_gap(-rational::to_f64(&lambda), -rational::to_f64(&opt)));
        }
    }
    Ok(Verdict::Ok)
}

fn show(v: &Rational, float: bool) -> String {
    if float {
        format!("{}", rational::to_f64(v))
    } else {
        rational::format(v)
    }
}

fn export(model: &LpModel, name: &str, path: &Path) -> Result<Verdict, Error> {
    let out = write_mps(model, name);
    fs::write(path, out.mps)?;
    let names = path.with_extension("names");
    fs::write(&names, out.names)?;
    println!("wrote {} and {}", path.display(), names.display());
    Ok(Verdict::Ok)
}

fn read_optima(path: &Path) -> Result<Vec<(String, Rational)>, Error> {
    let mut out = Vec::new();
    for (k, line) in read(path)?.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(name), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse {
                line: k + 1,
                msg: "expected `<instance> <value>`".into(),
            });
        };
        out.push((name.to_string(), parse_value(v)?));
    }
    Ok(out)
}

fn run_batch(a: &RunArgs, float: bool) -> Result<Verdict, Error> {
    let optima = match &a.optima {
        Some(p) => read_optima(p)?,
        None => Vec::new(),
    };
    let mut instances = Vec::new();
    for path in &a.instances {
        let name = path.file_name().map_or(String::new(), |s| s.to_string_lossy().into_owned());
        let graph = parse_rudy(&read(path)?)?;
        let optimum = optima.iter().find(|(n, _)| *n == name).map(|(_, v)| v.clone());
        instances.push(Instance { name, graph, optimum });
    }
    let mut settings = Vec::new();
    for m in &a.methods {
        let method: RunMethod = m.parse()?;
        if method == RunMethod::SheraliAdams {
            settings.push(Setting { method, level: 1 });
        } else {
            settings.extend(a.levels.iter().map(|&level| Setting { method, level }));
        }
    }
    let cfg = ExperimentConfig {
        settings,
        time_limit: a.time_limit.map(Duration::from_secs_f64),
        solve: solve_options(float, None),
        mode: match a.mode {
            ModeArg::Extended => SolveMode::Extended,
            ModeArg::Cutplane => SolveMode::CuttingPlane,
        },
        workers: a.workers,
    };
    let reports = run_experiment(&instances, &cfg)?;
    match &a.csv {
        Some(path) => {
            write_csv(&reports, fs::File::create(path)?)?;
            print!("{}", summarize(&reports).to_table());
        }
        None => write_csv(&reports, std::io::stdout().lock())?,
    }
    Ok(Verdict::Ok)
}
