use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rbsep::axis_fpt::{solve_axis_parallel, Solution};
use rbsep::exact_search::{solve_axis_bruteforce, solve_general_bruteforce, SearchOutcome};
use rbsep::reduction::{build_rbs_instance_with_budget, solve_s2ths_bruteforce, witness_lines, DEFAULT_BIT_BUDGET};
use rbsep::{io, is_feasible, svg, Error, Instance, Line, Point};

/// Environment variable holding the worker thread count.
const THREADS_VAR: &str = "RBSEP_THREADS";

#[derive(Parser)]
#[command(name = "rbsep", version, about = "Separate red and blue points with few lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimum separating line set.
    Solve(SolveArgs),
    /// Verify a solution file against an instance.
    Check { instance: PathBuf, solution: PathBuf },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Render an instance and an optional solution as SVG.
    Plot {
        instance: PathBuf,
        solution: Option<PathBuf>,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Solve every instance file of a directory and write a CSV report.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Fpt,
    Bruteforce,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Restrict to horizontal and vertical lines (the default).
    #[arg(long, conflicts_with = "general")]
    axis_parallel: bool,
    /// Allow lines of any slope.
    #[arg(long)]
    general: bool,
    #[arg(long, value_enum, default_value = "fpt")]
    method: Method,
    /// Largest line count tried by the brute-force methods.
    #[arg(long, default_value_t = 8)]
    kmax: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random points on an integer grid.
    Random {
        #[arg(long, default_value_t = 10)]
        red: usize,
        #[arg(long, default_value_t = 3)]
        blue: usize,
        /// Coordinates are drawn from `0..=grid`.
        #[arg(long, default_value_t = 10)]
        grid: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A `width` by `height` lattice colored like a checkerboard.
    Grid {
        #[arg(long, default_value_t = 4)]
        width: i64,
        #[arg(long, default_value_t = 4)]
        height: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hardness instance from a two-track hitting-set description file.
    Reduction {
        s2ths: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the witness lines of the first hitting set found.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Where to write the layout sidecar.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BIT_BUDGET)]
        bit_budget: u64,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of `.txt` instance files, processed in file name order.
    corpus: PathBuf,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, value_enum, default_values_t = [Method::Fpt])]
    method: Vec<Method>,
    #[arg(long, default_value_t = 8)]
    kmax: usize,
}

/// A failure mapped to one of the documented exit codes.
enum Failure {
    Infeasible(String),
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Infeasible(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) | Error::TooLarge { .. } | Error::CoordinateOverflow { .. } => {
                Failure::Budget(e.to_string())
            }
            Error::Inseparable { .. } | Error::InvalidWitness(_) => Failure::Infeasible(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> CliResult<Instance> {
    io::parse_instance(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn solver_name(general: bool, method: Method) -> &'static str {
    match (general, method) {
        (false, Method::Fpt) => "axis-parallel fpt",
        (false, Method::Bruteforce) => "axis-parallel bruteforce",
        (true, _) => "general bruteforce",
    }
}

fn run_solver(inst: &Instance, general: bool, method: Method, kmax: usize) -> CliResult<Solution> {
    if general && method == Method::Fpt {
        return Err(Failure::Usage("--method fpt requires --axis-parallel; use --method bruteforce".into()));
    }
    if let Some((red, blue)) = inst.coincident_pair() {
        return Err(Error::Inseparable { red, blue }.into());
    }
    let outcome = match (general, method) {
        (false, Method::Fpt) => return Ok(solve_axis_parallel(inst)?),
        (false, Method::Bruteforce) => solve_axis_bruteforce(inst, kmax)?,
        (true, _) => solve_general_bruteforce(inst, kmax)?,
    };
    match outcome {
        SearchOutcome::Found(s) => Ok(s),
        SearchOutcome::NoneWithin(k) => Err(Failure::Infeasible(format!("no solution with at most {k} lines"))),
    }
}

fn cmd_solve(args: SolveArgs) -> CliResult {
    let inst = load_instance(&args.instance)?;
    let sol = run_solver(&inst, args.general, args.method, args.kmax)?;
    let text = io::emit_solution(&sol.lines, solver_name(args.general, args.method));
    match &args.out {
        Some(p) => {
            write_or_print(Some(p), &text)?;
            println!("cost {}", sol.cost());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_check(instance: &Path, solution: &Path) -> CliResult {
    let inst = load_instance(instance)?;
    let lines = io::parse_solution(&read(solution)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", solution.display())))?;
    let report = is_feasible(&inst, &lines);
    println!("{report}");
    if report.feasible() {
        println!("cost {}", lines.len());
        Ok(())
    } else {
        Err(Failure::Infeasible(String::new()))
    }
}

fn random_instance(red: usize, blue: usize, grid: i64, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |n: usize| -> Vec<Point> {
        (0..n).map(|_| Point::from_ints(rng.gen_range(0..=grid), rng.gen_range(0..=grid))).collect()
    };
    let red = draw(red);
    let blue = draw(blue);
    Instance::new(red, blue)
}

fn grid_instance(width: i64, height: i64) -> Instance {
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let target = if (x + y) % 2 == 0 { &mut red } else { &mut blue };
            target.push(Point::from_ints(x, y));
        }
    }
    Instance::new(red, blue)
}

fn cmd_gen(cmd: GenCommand) -> CliResult {
    match cmd {
        GenCommand::Random { red, blue, grid, seed, out } => {
            if grid < 0 {
                return Err(Failure::Usage("--grid must be nonnegative".into()));
            }
            write_or_print(out.as_deref(), &io::emit_instance(&random_instance(red, blue, grid, seed)))
        }
        GenCommand::Grid { width, height, out } => {
            write_or_print(out.as_deref(), &io::emit_instance(&grid_instance(width, height)))
        }
        GenCommand::Reduction { s2ths, out, witness, sidecar, bit_budget } => {
            let inst = io::parse_s2ths(&read(&s2ths)?)?;
            let (rbs, meta) = build_rbs_instance_with_budget(&inst, bit_budget)?;
            write_or_print(Some(&out), &io::emit_instance(&rbs))?;
            if let Some(path) = sidecar {
                write_or_print(Some(&path), &meta.to_sidecar())?;
            }
            println!("points {}", rbs.len());
            if let Some(path) = witness {
                let Some(w) = solve_s2ths_bruteforce(&inst)? else {
                    return Err(Failure::Infeasible("the hitting-set instance has no solution".into()));
                };
                let lines = witness_lines(&inst, &meta, &w)?;
                write_or_print(Some(&path), &io::emit_solution(&lines, "reduction witness"))?;
                println!("witness lines {}", lines.len());
            }
            Ok(())
        }
    }
}

fn cmd_plot(instance: &Path, solution: Option<&Path>, out: &Path) -> CliResult {
    let inst = load_instance(instance)?;
    let lines: Vec<Line> = match solution {
        Some(p) => io::parse_solution(&read(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => Vec::new(),
    };
    write_or_print(Some(out), &svg::render_svg(&inst, &lines))
}

fn method_label(m: Method) -> &'static str {
    match m {
        Method::Fpt => "fpt",
        Method::Bruteforce => "bruteforce",
    }
}

fn cmd_bench(args: BenchArgs) -> CliResult {
    let mut files: Vec<PathBuf> = fs::read_dir(&args.corpus)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.corpus.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    files.sort();
    let jobs: Vec<(&PathBuf, Method)> =
        files.iter().flat_map(|f| args.method.iter().map(move |&m| (f, m))).collect();
    let rows: Vec<CliResult<String>> = jobs
        .par_iter()
        .map(|&(path, method)| {
            let inst = load_instance(path)?;
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let start = Instant::now();
            let cost = match run_solver(&inst, false, method, args.kmax) {
                Ok(sol) => sol.cost().to_string(),
                Err(Failure::Infeasible(_)) => "infeasible".into(),
                Err(Failure::Budget(_)) => "budget".into(),
                Err(e) => return Err(e),
            };
            let ms = start.elapsed().as_millis();
            let blue = inst.red().len().min(inst.blue().len());
            Ok(format!("{name},{},{blue},{},{cost},{ms}\n", inst.len(), method_label(method)))
        })
        .collect();
    let mut csv = String::from("instance,n,|B|,method,cost,wall_ms\n");
    for row in rows {
        csv.push_str(&row?);
    }
    write_or_print(args.csv.as_deref(), &csv)
}

fn configure_threads() -> CliResult {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .map_err(|_| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> CliResult {
    configure_threads()?;
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Check { instance, solution } => cmd_check(&instance, &solution),
        Command::Gen(cmd) => cmd_gen(cmd),
        Command::Plot { instance, solution, svg } => cmd_plot(&instance, solution.as_deref(), &svg),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Infeasible(m) | Failure::Usage(m) | Failure::Budget(m) if !m.is_empty() => {
                    eprintln!("error: {m}")
                }
                _ => {}
            }
            ExitCode::from(code)
        }
    }
}
