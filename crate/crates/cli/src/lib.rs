//! Command-line surface of `gasket-fif`.
//!
//! Exit codes: 0 success, 1 a bound check failed, 2 malformed input
//! (expressions, addresses, flags), 3 rejected problem (scale, base,
//! depth), 4 I/O failure.

pub mod error;
pub mod output;
pub mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gasket_fif::expr::figure_texts;
use gasket_fif::fractal::{DEFAULT_BURN_IN, DEFAULT_COMPAT_TOL, FIGURE_COMPAT_TOL};
use gasket_fif::verify::{self, FieldPair};
use gasket_fif::{Address, CellIndex, GraphSample, ProblemSpec, ScalarField, ScaleVector};

pub use error::CliError;
use output::{manifest_path, table_rows, write_csv, write_csv_file, write_manifest, RunManifest};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Scale values of the four reference datasets per figure.
pub const FIGURE_ALPHAS: [f64; 4] = [0.1, 0.3, 0.6, 0.9];
pub const FIGURE_DEPTH: usize = 7;

#[derive(Debug, Parser)]
#[command(
    name = "gasket-fif",
    version,
    about = "Alpha-fractal interpolation functions on the Sierpinski gasket",
    after_help = "Expressions use x, y, pi, e, + - * / ^ and sin cos tan exp log sqrt abs. \
                  ^ is right-associative and binds tighter than unary minus (-x^2 = -(x^2))."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Original function f(x, y)
    #[arg(long = "f", conflicts_with = "figure", requires = "b", allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Base function b(x, y); must equal f on the three corners
    #[arg(long = "b", conflicts_with = "figure", requires = "f", allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Use the (f, b) pair of reference figure 1-4
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
    pub figure: Option<u32>,
    /// Scale vector `a1,a2,a3` or a single value for all three
    #[arg(long, default_value = "0.3", allow_hyphen_values = true)]
    pub alpha: String,
    /// Corner compatibility tolerance (default 1e-9, or 1e-3 for figures)
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact values on every vertex of V_m as CSV
    Table {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 6)]
        m: usize,
        /// CSV path; a manifest is written next to it. Stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Value at one cell corner by unrolling the functional equation
    Eval {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Cell address over 1, 2, 3 (outermost map first)
        #[arg(long, default_value = "")]
        address: String,
        /// Which corner of the cell to evaluate at
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=3))]
        corner: u32,
        /// Number of unrolling steps
        #[arg(long, default_value_t = 40)]
        n: usize,
    },
    /// Check a stability bound; prints JSON reports, exit 0 iff all pass
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Datasets (and optional PNGs) for the four reference figures
    Figures {
        /// Output directory
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        /// Also write PNG scatter plots
        #[arg(long)]
        render: bool,
        /// Only this figure
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        figure: Option<u32>,
        /// Uniform scale values, comma separated (default 0.1,0.3,0.6,0.9)
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, default_value_t = FIGURE_DEPTH)]
        m: usize,
    },
    /// Chaos-game sample of the graph as CSV
    Chaos {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BURN_IN)]
        burn_in: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a PNG next to the CSV
        #[arg(long, requires = "out")]
        render: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Continuity in the scale vector between --alpha and --beta
    Alpha {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 6)]
        m: usize,
    },
    /// Lipschitz dependence on the base: one report per --c
    Base {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long = "c", required = true, allow_hyphen_values = true)]
        c: Vec<String>,
        #[arg(long, default_value_t = 6)]
        m: usize,
    },
    /// f^alpha = f on V_1
    Interp {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
}

pub fn parse_scale(text: &str) -> Result<ScaleVector, CliError> {
    let parts: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match parts.as_deref() {
        Ok([a]) => Ok(ScaleVector::uniform(*a)),
        Ok([a1, a2, a3]) => Ok(ScaleVector::new(*a1, *a2, *a3)),
        _ => Err(CliError::Usage(format!(
            "scale vector {text:?} must be one number or three comma-separated numbers"
        ))),
    }
}

fn parse_field(text: &str, what: &'static str) -> Result<ScalarField, CliError> {
    ScalarField::parse(text).map_err(|source| CliError::Expr { what, source })
}

/// The resolved `(f, b)` pair with its source texts.
#[derive(Debug, Clone)]
pub struct Problem {
    pub figure: Option<u32>,
    pub f_text: String,
    pub b_text: String,
    pub pair: FieldPair,
    pub alpha: ScaleVector,
}

impl Problem {
    pub fn from_args(args: &ProblemArgs) -> Result<Self, CliError> {
        let (f_text, b_text, default_tol) = match (args.figure, &args.f, &args.b) {
            (Some(fig), _, _) => {
                let (f, b) = figure_texts(fig).map_err(|e| CliError::Usage(e.to_string()))?;
                (f, b, FIGURE_COMPAT_TOL)
            }
            (None, Some(f), Some(b)) => (f.clone(), b.clone(), DEFAULT_COMPAT_TOL),
            _ => {
                return Err(CliError::Usage(
                    "supply either --figure or both --f and --b".into(),
                ))
            }
        };
        let pair = FieldPair::new(
            parse_field(&f_text, "--f")?,
            parse_field(&b_text, "--b")?,
            args.tol.unwrap_or(default_tol),
        );
        Ok(Problem {
            figure: args.figure,
            f_text,
            b_text,
            pair,
            alpha: parse_scale(&args.alpha)?,
        })
    }

    pub fn spec(&self) -> Result<ProblemSpec, CliError> {
        Ok(self.pair.spec(self.alpha)?)
    }

    fn manifest(&self, command: &str, m: usize) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            figure: self.figure,
            f_text: self.f_text.clone(),
            b_text: self.b_text.clone(),
            alpha: self.alpha.components(),
            compat_tol: self.pair.compat_tol,
            m,
            seed: None,
            points: None,
            burn_in: None,
            tool_version: TOOL_VERSION.to_string(),
            output_files: Vec::new(),
        }
    }
}

fn path_string(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn ensure_depth(m: usize) -> Result<(), CliError> {
    let max = gasket_fif::gasket::MAX_DEPTH;
    if m > max {
        return Err(CliError::Invalid(format!("depth exceeds {max} (requested {m})")));
    }
    Ok(())
}

/// Runs one command, writing normal output to `out`. Returns the exit code
/// for successful runs (0, or 1 when a bound check fails).
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let stdout_err = |e| CliError::io("<stdout>", e);
    match cli.command {
        Command::Table { problem, m, out: path } => {
            let problem = Problem::from_args(&problem)?;
            ensure_depth(m)?;
            let table = problem.spec()?.vm_table(m)?;
            let rows = table_rows(&table);
            match path {
                Some(path) => {
                    write_csv_file(&path, &rows)?;
                    let mut manifest = problem.manifest("table", m);
                    manifest.output_files.push(path_string(&path));
                    write_manifest(&manifest_path(&path), &manifest)?;
                }
                None => write_csv(out, &rows).map_err(stdout_err)?,
            }
            Ok(0)
        }
        Command::Eval {
            problem,
            address,
            corner,
            n,
        } => {
            let problem = Problem::from_args(&problem)?;
            let addr: Address = address.parse()?;
            let corner = CellIndex::new(corner)?;
            let pv = problem.spec()?.eval_vertex(&addr, corner, n)?;
            writeln!(
                out,
                "value={} error_bound={}",
                output::sig17(pv.value),
                output::sig17(pv.error_bound)
            )
            .map_err(stdout_err)?;
            Ok(0)
        }
        Command::Verify { check } => {
            let reports = run_verify(check)?;
            let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
            writeln!(out, "{text}").map_err(stdout_err)?;
            Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
        }
        Command::Figures {
            out: dir,
            render,
            figure,
            alpha,
            m,
        } => {
            let alphas = match alpha {
                Some(text) => text
                    .split(',')
                    .map(|s| s.trim().parse::<f64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CliError::Usage(format!("bad --alpha list {text:?}")))?,
                None => FIGURE_ALPHAS.to_vec(),
            };
            let figures = figure.map_or_else(|| vec![1, 2, 3, 4], |f| vec![f]);
            let written = write_figures(&dir, &figures, &alphas, m, render)?;
            for path in written {
                writeln!(out, "{}", path.display()).map_err(stdout_err)?;
            }
            Ok(0)
        }
        Command::Chaos {
            problem,
            points,
            seed,
            burn_in,
            out: path,
            render,
        } => {
            let problem = Problem::from_args(&problem)?;
            let sample = problem.spec()?.chaos_game(points, seed, burn_in)?;
            match path {
                Some(path) => {
                    write_csv_file(&path, &sample.points)?;
                    let mut manifest = problem.manifest("chaos", 0);
                    manifest.seed = Some(seed);
                    manifest.points = Some(points);
                    manifest.burn_in = Some(burn_in);
                    manifest.output_files.push(path_string(&path));
                    if render {
                        let png = path.with_extension("png");
                        render::write_png(&png, &sample.points)?;
                        manifest.output_files.push(path_string(&png));
                    }
                    write_manifest(&manifest_path(&path), &manifest)?;
                }
                None => write_csv(out, &sample.points).map_err(stdout_err)?,
            }
            Ok(0)
        }
    }
}

fn run_verify(check: VerifyCommand) -> Result<Vec<verify::BoundReport>, CliError> {
    match check {
        VerifyCommand::Alpha { problem, beta, m } => {
            let problem = Problem::from_args(&problem)?;
            ensure_depth(m)?;
            let beta = parse_scale(&beta)?;
            Ok(vec![verify::check_alpha_continuity(
                &problem.pair,
                problem.alpha,
                beta,
                m,
            )?])
        }
        VerifyCommand::Base { problem, c, m } => {
            let problem = Problem::from_args(&problem)?;
            ensure_depth(m)?;
            let cs = c
                .iter()
                .map(|text| parse_field(text, "--c"))
                .collect::<Result<Vec<_>, _>>()?;
            cs.iter()
                .map(|c| {
                    verify::check_base_lipschitz(
                        &problem.pair.f,
                        &problem.pair.b,
                        c,
                        problem.alpha,
                        m,
                        problem.pair.compat_tol,
                    )
                    .map_err(CliError::from)
                })
                .collect()
        }
        VerifyCommand::Interp { problem, m } => {
            let problem = Problem::from_args(&problem)?;
            ensure_depth(m)?;
            let tol = problem.pair.compat_tol.max(if problem.figure.is_some() {
                FIGURE_COMPAT_TOL
            } else {
                gasket_fif::fractal::RESIDUAL_TOL
            });
            Ok(vec![verify::check_interpolation(&problem.spec()?, m, tol)?])
        }
    }
}

/// `fig{N}_alpha{A}` with `A` printed in shortest form.
pub fn dataset_stem(figure: u32, alpha: f64) -> String {
    format!("fig{figure}_alpha{alpha}")
}

/// Graph of `f^alpha` on `V_m` for a reference figure, rows sorted by `(y, x)`.
pub fn figure_dataset(
    figure: u32,
    alpha: f64,
    m: usize,
) -> Result<Vec<gasket_fif::GraphPoint>, CliError> {
    ensure_depth(m)?;
    let pair = FieldPair::figure(figure).map_err(|e| CliError::Usage(e.to_string()))?;
    let table = pair.spec(ScaleVector::uniform(alpha))?.vm_table(m)?;
    Ok(table_rows(&table))
}

pub fn write_figures(
    dir: &Path,
    figures: &[u32],
    alphas: &[f64],
    m: usize,
    render: bool,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    for &figure in figures {
        let (f_text, b_text) = figure_texts(figure).map_err(|e| CliError::Usage(e.to_string()))?;
        for &alpha in alphas {
            let rows = figure_dataset(figure, alpha, m)?;
            let stem = dataset_stem(figure, alpha);
            let csv = dir.join(format!("{stem}.csv"));
            write_csv_file(&csv, &rows)?;
            let mut manifest = RunManifest {
                command: "figures".into(),
                figure: Some(figure),
                f_text: f_text.clone(),
                b_text: b_text.clone(),
                alpha: [alpha; 3],
                compat_tol: FIGURE_COMPAT_TOL,
                m,
                seed: None,
                points: None,
                burn_in: None,
                tool_version: TOOL_VERSION.to_string(),
                output_files: vec![path_string(&csv)],
            };
            written.push(csv.clone());
            if render {
                let png = dir.join(format!("{stem}.png"));
                render::write_png(&png, &rows)?;
                manifest.output_files.push(path_string(&png));
                written.push(png);
            }
            write_manifest(&manifest_path(&csv), &manifest)?;
        }
    }
    Ok(written)
}

/// Chaos sample of a problem; exposed for tests.
pub fn chaos_sample(
    problem: &Problem,
    points: usize,
    seed: u64,
    burn_in: usize,
) -> Result<GraphSample, CliError> {
    Ok(problem.spec()?.chaos_game(points, seed, burn_in)?)
}
