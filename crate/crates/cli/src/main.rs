use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mondrian::app::{
    from_json, integer_search, no_perfect_integer, parse_aspect, perimeter_report, render_integer_svg, render_svg,
    to_json, write_svg, DEFAULT_WINDOW,
};
use mondrian::exactnum::FieldElement;
use mondrian::extend::{excluded_ratios, perfect_square_partition, rescale, rescale_plan};
use mondrian::geometry::{verify, Partition, VerificationReport};
use mondrian::layouts::enumerate_layouts;
use mondrian::solver::{census_with_bound, DEFAULT_CENSUS_MAX_K};
use mondrian::spiral::{closure_polynomial, conjecture_scan, largest_root, solve_spiral};
use mondrian::MondrianError;

#[derive(Parser)]
#[command(name = "mondrian", version, about = "Perfect Mondrian partitions: exact construction, census and certification")]
struct Cli {
    /// Accepted for interface stability; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the spiral layout with k rectangles and certify the result.
    Spiral {
        /// Number of rectangles.
        #[arg(long)]
        k: usize,
        /// Write the certified partition as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write an SVG rendering.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Classify the perfect partitions of every layout with k rectangles.
    Census {
        /// Number of rectangles.
        #[arg(long)]
        k: usize,
        /// Refuse k above this bound.
        #[arg(long, default_value_t = DEFAULT_CENSUS_MAX_K)]
        max_k: usize,
        /// Also list every layout code, up to symmetry.
        #[arg(long)]
        dump_layouts: bool,
    },
    /// Re-certify a partition stored as JSON.
    Verify { path: PathBuf },
    /// Perfect Mondrian partition of the square with k >= 7 rectangles by strip extension.
    Extend {
        /// Number of rectangles.
        #[arg(long)]
        k: usize,
        /// Write the certified partition as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write an SVG rendering.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Rescale a partition so that height / width becomes P/Q.
    Rescale {
        path: PathBuf,
        /// Target height / width, as P/Q or P.
        #[arg(long)]
        aspect: String,
        /// Write the rescaled partition as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Integer-sided non-congruent tiling of an n x n square with small defect.
    Integer {
        /// Side of the integer square.
        #[arg(long)]
        n: i64,
        /// Number of rectangles of the exact solution to round.
        #[arg(long, default_value_t = 7)]
        k: usize,
        /// Search radius around each rounded coordinate.
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: i64,
        /// Write an SVG rendering.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Largest rectangle perimeter of a stored partition.
    Perimeter { path: PathBuf },
    /// Spiral closure polynomials and their largest roots.
    Polys {
        /// Largest k to list.
        #[arg(long, default_value_t = 10)]
        k_max: usize,
    },
    /// Spiral solutions for k = 7..=k-max and whether each is proper perfect Mondrian.
    Conjecture {
        /// Largest k to check.
        #[arg(long)]
        k_max: usize,
    },
    /// Evidence that no perfect Mondrian partition of a square has integer sides.
    NoInteger {
        /// Largest k to enumerate.
        #[arg(long, default_value_t = DEFAULT_CENSUS_MAX_K)]
        k_max: usize,
    },
}

fn exit_code(e: &MondrianError) -> u8 {
    match e {
        MondrianError::UnsupportedK { .. } | MondrianError::KTooLarge { .. } | MondrianError::InvalidInput(_) | MondrianError::IoFailure(_) => 2,
        MondrianError::NoValidRoot { .. } | MondrianError::NoValidCandidate => 3,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<Partition, MondrianError> {
    from_json(&std::fs::read_to_string(path)?)
}

fn write_outputs(p: &Partition, json: Option<&Path>, svg: Option<&Path>) -> Result<(), MondrianError> {
    if let Some(path) = json {
        std::fs::write(path, to_json(p))?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = svg {
        write_svg(path, &render_svg(p, true))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn print_report(r: &VerificationReport) {
    println!(
        "tiling {} | perfect {} | mondrian {} | admissible {} | proper {}",
        r.tiling_ok, r.perfect, r.mondrian, r.admissible, r.proper
    );
    for w in &r.witnesses {
        println!("  witness: {w:?}");
    }
}

fn print_partition(p: &Partition) {
    println!("outer {} x {}", p.width().to_decimal(12), p.height().to_decimal(12));
    if p.base().degree() > 1 {
        println!("z = root of {} near {}", p.base().defining(), FieldElement::generator(p.base()).to_decimal(12));
    }
    for (i, r) in p.rects().iter().enumerate() {
        println!(
            "R{:<3} w = {:<16} h = {:<16} w = {}   h = {}",
            i + 1,
            r.w.to_decimal(10),
            r.h.to_decimal(10),
            r.w.exact_string(),
            r.h.exact_string()
        );
    }
}

fn run(cmd: Command) -> Result<ExitCode, MondrianError> {
    match cmd {
        Command::Spiral { k, json, svg } => {
            let sol = solve_spiral(k)?;
            println!("k = {k}, x1 = {} (root of {})", sol.root.to_decimal(12), sol.root.defining());
            for r in &sol.rejected {
                println!("rejected root {:.10}: {:?}", r.approx, r.reason);
            }
            print_partition(&sol.partition);
            print_report(&sol.report);
            write_outputs(&sol.partition, json.as_deref(), svg.as_deref())?;
        }
        Command::Census { k, max_k, dump_layouts } => {
            let c = census_with_bound(k, max_k)?;
            if dump_layouts {
                for l in enumerate_layouts(k)?.iter() {
                    println!("layout {}", l.code());
                }
            }
            println!("{}", c.scope());
            println!("perfect-admissible {}", c.perfect_admissible());
            println!("perfect-mondrian {}", c.perfect_mondrian());
            println!("proper-perfect-mondrian {}", c.proper_perfect_mondrian());
            for row in &c.rows {
                println!(
                    "{:<24} {:<18} longest side {:.10} [{}]{}",
                    row.class(),
                    row.layout,
                    row.x1,
                    row.certification,
                    if row.filter_pass { " filter-pass" } else { "" }
                );
            }
        }
        Command::Verify { path } => {
            let p = read(&path)?;
            let r = verify(&p);
            print_partition(&p);
            print_report(&r);
        }
        Command::Extend { k, json, svg } => {
            let p = perfect_square_partition(k)?;
            print_partition(&p);
            print_report(&verify(&p));
            write_outputs(&p, json.as_deref(), svg.as_deref())?;
        }
        Command::Rescale { path, aspect, json } => {
            let p = read(&path)?;
            let ratio = parse_aspect(&aspect)?;
            let a2 = p.width().clone();
            let b2 = a2.scale(&ratio);
            let plan = rescale_plan(&p, &a2, &b2)?;
            println!("excluded aspect ratios (height / width):");
            for ((i, j), v) in excluded_ratios(&p) {
                println!("  R{} R{}: {}", i + 1, j + 1, v.to_decimal(12));
            }
            if !plan.violations.is_empty() {
                let pairs: Vec<String> = plan.violations.iter().map(|(i, j)| format!("(R{}, R{})", i + 1, j + 1)).collect();
                println!("aspect {aspect} makes rectangles congruent: {}", pairs.join(", "));
                return Ok(ExitCode::from(1));
            }
            let out = rescale(&p, &a2, &b2)?;
            print_partition(&out);
            print_report(&verify(&out));
            write_outputs(&out, json.as_deref(), None)?;
        }
        Command::Integer { n, k, window, svg } => {
            let r = integer_search(n, k, window)?;
            println!("n = {n}, k = {k}, window = {window}: defect {}", r.defect);
            println!("candidates {}, valid {}", r.candidates, r.valid);
            for (i, q) in r.best.rects.iter().enumerate() {
                println!("R{:<3} x = {:<6} y = {:<6} w = {:<6} h = {:<6} area = {}", i + 1, q.x, q.y, q.w, q.h, q.area());
            }
            if let Some(path) = svg {
                write_svg(&path, &render_integer_svg(&r.best, true))?;
                println!("wrote {}", path.display());
            }
        }
        Command::Perimeter { path } => {
            println!("{}", perimeter_report(&read(&path)?));
        }
        Command::Polys { k_max } => {
            if k_max < 5 {
                return Err(MondrianError::UnsupportedK { k: k_max, min: 5 });
            }
            for k in 5..=k_max {
                let poly = closure_polynomial(k)?;
                let root = largest_root(k)?.map_or_else(|| "none".to_string(), |r| r.to_decimal(10));
                println!("k = {k}: {poly}   largest root {root}");
            }
        }
        Command::Conjecture { k_max } => {
            for e in conjecture_scan(k_max)? {
                let x1 = e.x1.map_or_else(|| "none".to_string(), |v| format!("{v:.10}"));
                println!("k = {}: x1 = {x1}, proper perfect Mondrian {} ({})", e.k, e.proper_perfect_mondrian, e.note);
            }
        }
        Command::NoInteger { k_max } => {
            let r = no_perfect_integer(k_max)?;
            println!("{r}");
            if !r.holds {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn configure_threads() {
    let Ok(v) = std::env::var("MONDRIAN_THREADS") else { return };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("MONDRIAN_THREADS ignored: {e}");
            }
        }
        _ => log::warn!("MONDRIAN_THREADS={v:?} is not a positive integer; ignored"),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    configure_threads();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
