//! `submaj`: decisions and quantities for state boxes from the command line.
//!
//! Exit-code protocol: 0 = computation succeeded / decision holds,
//! 1 = decision does not hold, 2 = input or solver error. Decision
//! subcommands therefore compose in shell pipelines.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use submaj_core::asymptotics::{
    asymptotic_geq, exponent_region_check, power_universal_exponent, strict_certificate,
    strong_converse_exponent, GridOptions,
};
use submaj_core::hypotest::{discrimination_feasible, tradeoff_curve, DiscriminationSpec};
use submaj_core::monotones::{sandwiched_divergence, sandwiched_f, Alpha, MonotoneIndex};
use submaj_core::submaj::check_submajorization;
use submaj_core::StateBox;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_alpha(raw: &str) -> Result<Alpha, String> {
    if raw == "inf" {
        return Ok(Alpha::Infinity);
    }
    let value: f64 = raw.parse().map_err(|_| format!("invalid alpha: {raw:?}"))?;
    Alpha::finite(value).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "submaj",
    about = "Relative submajorization of state boxes: feasibility, monotones, exponents",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sandwiched Rényi monotone f and divergence D of one box component.
    Divergence {
        /// Box JSON file.
        box_path: PathBuf,
        /// Component index (1-based).
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Order: a number >= 1 or "inf".
        #[arg(long, value_parser = parse_alpha, default_value = "2")]
        alpha: Alpha,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Single-shot relative submajorization A ⪰ B (Choi-matrix SDP).
    Check {
        a: PathBuf,
        b: PathBuf,
        /// Decision tolerance on the optimal slack.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Asymptotic preorder A ≳ B via the monotone inequalities on a grid.
    CheckAsymptotic {
        a: PathBuf,
        b: PathBuf,
        /// Relative-margin decision tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Number of finite grid points in s = (alpha-1)/alpha.
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Certificate that all monotone inequalities hold strictly
    /// (hypotheses for many-copy and catalytic transformations).
    StrictCert {
        a: PathBuf,
        b: PathBuf,
        /// Minimal relative gap that counts as strict.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 128)]
        grid: usize,
    },
    /// Strong-converse exponent R*(r) of a normalized box.
    Exponent {
        box_path: PathBuf,
        /// Type-II error decay rate r >= 0.
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 128)]
        grid: usize,
    },
    /// Achievability of per-index exponent pairs (R_i, r_i).
    Region {
        box_path: PathBuf,
        /// Type-I rates, one per component (repeat the flag).
        #[arg(long = "R", required = true)]
        big_r: Vec<f64>,
        /// Type-II rates, one per component (repeat the flag).
        #[arg(long, required = true)]
        r: Vec<f64>,
        #[arg(long, default_value_t = 128)]
        grid: usize,
    },
    /// Error tradeoff curve: optimal type-II error over a budget sweep.
    Tradeoff {
        box_path: PathBuf,
        /// Number of evenly spaced type-I budgets in [0, 1].
        #[arg(long, default_value_t = 11)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// POVM feasibility for discrimination targets {"a": [...], "b": [...]}.
    Discriminate {
        box_path: PathBuf,
        spec_path: PathBuf,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Power-universal exponents (k, k1, k2) for a box.
    PowerUniversal { box_path: PathBuf },
}

enum Failure {
    /// Input, parse or solver problem: exit 2.
    Error(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

fn load_box(path: &Path) -> Result<StateBox, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<DiscriminationSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn grid_options(points: usize) -> GridOptions {
    GridOptions {
        points: points.max(2),
        refine: true,
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn alpha_field(alpha: Alpha) -> String {
    match alpha {
        Alpha::Finite(a) => format!("{a}"),
        Alpha::Infinity => "inf".into(),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Divergence {
            box_path,
            i,
            alpha,
            format,
        } => {
            let bx = load_box(&box_path)?;
            let idx = MonotoneIndex::new(i, alpha);
            let f = sandwiched_f(&bx, idx)?;
            let d = sandwiched_divergence(&bx, idx)?;
            match format {
                Format::Json => print_json(&json!({
                    "i": i,
                    "alpha": alpha,
                    "f": f.value,
                    "log2_f": f.log2_value,
                    "D": d,
                }))?,
                Format::Csv => {
                    println!("i,alpha,f,log2_f,D");
                    println!(
                        "{i},{},{},{},{}",
                        alpha_field(alpha),
                        f.value,
                        f.log2_value,
                        d
                    );
                }
            }
            Ok(0)
        }
        Command::Check { a, b, tol } => {
            let box_a = load_box(&a)?;
            let box_b = load_box(&b)?;
            let res = check_submajorization(&box_a, &box_b, tol)?;
            print_json(&res)?;
            Ok(if res.feasible { 0 } else { 1 })
        }
        Command::CheckAsymptotic {
            a,
            b,
            tol,
            grid,
            format,
        } => {
            let box_a = load_box(&a)?;
            let box_b = load_box(&b)?;
            let decision = asymptotic_geq(&box_a, &box_b, tol, &grid_options(grid))?;
            match format {
                Format::Json => print_json(&decision)?,
                Format::Csv => {
                    println!("i,alpha,f_a,f_b,margin");
                    for p in &decision.grid {
                        println!(
                            "{},{},{},{},{}",
                            p.i,
                            alpha_field(p.alpha),
                            p.f_a,
                            p.f_b,
                            p.margin
                        );
                    }
                }
            }
            Ok(if decision.holds { 0 } else { 1 })
        }
        Command::StrictCert { a, b, tol, grid } => {
            let box_a = load_box(&a)?;
            let box_b = load_box(&b)?;
            let cert = strict_certificate(&box_a, &box_b, tol, &grid_options(grid))?;
            print_json(&cert)?;
            Ok(if cert.all_strict { 0 } else { 1 })
        }
        Command::Exponent { box_path, r, grid } => {
            let bx = load_box(&box_path)?;
            let result = strong_converse_exponent(&bx, r, &grid_options(grid))?;
            print_json(&result)?;
            Ok(0)
        }
        Command::Region {
            box_path,
            big_r,
            r,
            grid,
        } => {
            let bx = load_box(&box_path)?;
            let check = exponent_region_check(&bx, &big_r, &r, &grid_options(grid))?;
            print_json(&check)?;
            Ok(if check.ok { 0 } else { 1 })
        }
        Command::Tradeoff {
            box_path,
            n,
            format,
        } => {
            let bx = load_box(&box_path)?;
            if n < 2 {
                return Err(Failure::Error("tradeoff needs at least 2 budgets".into()));
            }
            let budgets: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
            let curve = tradeoff_curve(&bx, &budgets)?;
            match format {
                Format::Json => {
                    let rows: Vec<_> = curve
                        .iter()
                        .map(|(alpha, beta)| json!({"alpha": alpha, "beta": beta}))
                        .collect();
                    print_json(&rows)?;
                }
                Format::Csv => {
                    println!("alpha,beta");
                    for (alpha, beta) in &curve {
                        println!("{alpha},{beta}");
                    }
                }
            }
            Ok(0)
        }
        Command::Discriminate {
            box_path,
            spec_path,
            tol,
        } => {
            let bx = load_box(&box_path)?;
            let spec = load_spec(&spec_path)?;
            let outcome = discrimination_feasible(&bx, &spec, tol)?;
            print_json(&outcome)?;
            Ok(if outcome.feasibility.feasible { 0 } else { 1 })
        }
        Command::PowerUniversal { box_path } => {
            let bx = load_box(&box_path)?;
            let exp = power_universal_exponent(&bx)?;
            print_json(&exp)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Error(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
