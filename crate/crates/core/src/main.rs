use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mosub::geometry::PlaneCoords;
use mosub::harness::{run_benchmark, write_outputs, BenchmarkSpec, SolverKind};
use mosub::problems::{make_problem, registry};
use mosub::quadmodel::{lagrange_basis, poisedness_lambda, Quad1D, Quad2D};
use mosub::solver::trace::TraceDocument;
use mosub::solver::{solve, CountingObjective, SolverConfig};

#[derive(Parser)]
#[command(name = "mosub", version, about = "Two-dimensional model-based subspace optimizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize one test problem and optionally write the iteration trace.
    Solve(SolveArgs),
    /// Run solvers over a problem suite and write records and profiles.
    Bench(BenchArgs),
    /// Print the Lagrange basis of a standard interpolation layout and its
    /// poisedness constant.
    Poisedness(PoisednessArgs),
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Evaluation budget; defaults to 100 (n + 1).
    #[arg(long)]
    maxfev: Option<usize>,
    #[arg(long)]
    delta1: Option<f64>,
    #[arg(long)]
    delta_low: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    eta0: Option<f64>,
    #[arg(long)]
    gamma1: Option<f64>,
    #[arg(long)]
    gamma2: Option<f64>,
    /// Write the trace as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Classic,
}

#[derive(clap::Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "classic")]
    suite: Suite,
    #[arg(long, value_delimiter = ',', default_value = "20,50,100")]
    dims: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "mosub,baseline")]
    solvers: Vec<String>,
    #[arg(long, default_value_t = 0.01)]
    tau: f64,
    #[arg(long, default_value_t = 100.0)]
    budget_mult: f64,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    seeds: Vec<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(clap::Args)]
struct PoisednessArgs {
    /// 1: points (0, D), (0, -D), (D, D). 2: points (0, D), (0, 2D), (D, D).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    case: u8,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    q0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Bench(a) => run_bench(a),
        Command::Poisedness(a) => run_poisedness(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run_solve(a: SolveArgs) -> mosub::Result<()> {
    let prob = make_problem(&a.problem, a.dim)?;
    let d = SolverConfig::default();
    let cfg = SolverConfig {
        delta1: a.delta1.unwrap_or(d.delta1),
        delta_low: a.delta_low.unwrap_or(d.delta_low),
        eta: a.eta.unwrap_or(d.eta),
        eta0: a.eta0.unwrap_or(d.eta0),
        gamma1: a.gamma1.unwrap_or(d.gamma1),
        gamma2: a.gamma2.unwrap_or(d.gamma2),
        max_fevals: a.maxfev.unwrap_or(100 * (a.dim + 1)),
        seed: a.seed,
        ..d
    };
    let mut obj = CountingObjective::new(prob.objective);
    let result = solve(&mut obj, &prob.x_start, &cfg)?;
    println!("problem      {} (n = {})", prob.name, prob.dim);
    println!("termination  {:?}", result.termination);
    println!("evaluations  {}", result.n_evals);
    println!("iterations   {}", result.trace.len());
    println!("f(x0)        {:.10e}", result.f_init);
    println!("best value   {:.10e}", result.best_value);
    if let Some(path) = a.json {
        let doc = TraceDocument::new(prob.name, &cfg, &result);
        std::fs::write(&path, doc.to_json())
            .map_err(|e| mosub::Error::Harness(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run_bench(a: BenchArgs) -> mosub::Result<()> {
    let solvers = a
        .solvers
        .iter()
        .map(|s| s.parse::<SolverKind>())
        .collect::<mosub::Result<Vec<_>>>()?;
    let Suite::Classic = a.suite;
    let mut problems = Vec::new();
    for info in registry() {
        for &n in &a.dims {
            if info.accepts(n) {
                problems.push((info.name.to_string(), n));
            } else {
                log::warn!("skipping {} at n = {n} ({})", info.name, info.rule);
            }
        }
    }
    let spec = BenchmarkSpec {
        problems,
        solvers,
        budget_mult: a.budget_mult,
        tau: a.tau,
        seeds: a.seeds,
        config: SolverConfig::default(),
    };
    let out = run_benchmark(&spec)?;
    write_outputs(&a.out, &out)?;
    println!("{} runs written to {}", out.records.len(), a.out.display());
    for c in &out.performance {
        let at_one = c.fractions.first().copied().unwrap_or(0.0);
        let last = c.fractions.last().copied().unwrap_or(0.0);
        println!("{:10} pi(1) = {at_one:.3}  pi(max) = {last:.3}", c.solver);
    }
    Ok(())
}

fn format_quad(q: &Quad2D) -> String {
    format!(
        "{:+.6e} {:+.6e}*alpha {:+.6e}*alpha^2 {:+.6e}*beta {:+.6e}*beta^2 {:+.6e}*alpha*beta",
        q.q0, q.a, q.b, q.c, q.d, q.e
    )
}

fn run_poisedness(a: PoisednessArgs) -> mosub::Result<()> {
    if !(a.delta > 0.0) {
        return Err(mosub::Error::InvalidConfig("delta must be positive".into()));
    }
    let d = a.delta;
    let second = if a.case == 1 { -d } else { 2.0 * d };
    let pts = [
        PlaneCoords::new(0.0, d),
        PlaneCoords::new(0.0, second),
        PlaneCoords::new(d, d),
    ];
    let basis = lagrange_basis(&Quad1D::new(a.q0, a.a, a.b), &pts)?;
    println!("case {} with delta = {d}", a.case);
    for (i, ell) in basis.ell.iter().enumerate() {
        println!("l{}(alpha, beta) = {}", i + 1, format_quad(ell));
    }
    println!("Lambda = {:.12}", poisedness_lambda(&basis, d));
    Ok(())
}
