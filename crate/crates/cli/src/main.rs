use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use matchtop_core::complex::{independence_complex, matching_complex, BuildOptions};
use matchtop_core::families::{build, FamilyId};
use matchtop_core::graph::Graph;
use matchtop_core::homology::reduced_homology;
use matchtop_core::recurrence::Evaluator;
use matchtop_core::reduce::{auto_reduce, parse_script, EvalOptions, Strategy};
use matchtop_core::tables::{closed_form_count, closed_form_dims};
use matchtop_cli::suites::{run_suite, Config, Suite};

/// Matching and independence complexes of path products: build them, compute
/// exact integral homology, replay reduction scripts, and verify the
/// published values.
#[derive(Parser)]
#[command(name = "matchtop", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Maximum number of simplices materialized per complex.
    #[arg(long, global = true)]
    max_simplices: Option<usize>,
    /// Maximum number of stored boundary-matrix entries.
    #[arg(long, global = true)]
    budget_matrix: Option<usize>,
}

impl BudgetArgs {
    /// Flags override MATCHTOP_BUDGET ("simplices" or "simplices:matrix"),
    /// which overrides the defaults.
    fn resolve(&self) -> (usize, usize) {
        let mut simplices = matchtop_core::complex::DEFAULT_SIMPLEX_BUDGET;
        let mut matrix = matchtop_core::homology::DEFAULT_MATRIX_BUDGET;
        if let Ok(env) = std::env::var("MATCHTOP_BUDGET") {
            let mut parts = env.split(':');
            if let Some(Ok(s)) = parts.next().map(str::parse) {
                simplices = s;
            }
            if let Some(Ok(m)) = parts.next().map(str::parse) {
                matrix = m;
            }
        }
        (
            self.max_simplices.unwrap_or(simplices),
            self.budget_matrix.unwrap_or(matrix),
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the reduced homology profile of a complex.
    Homology {
        /// Family spec such as Gamma:5:2 or BTilde:5:-1.
        #[arg(long, conflicts_with_all = ["product", "graph"])]
        family: Option<String>,
        /// Product spec NxM for the path product P_N x P_M.
        #[arg(long, conflicts_with = "graph")]
        product: Option<String>,
        /// Path to a graph JSON file ("-" for stdin).
        #[arg(long)]
        graph: Option<String>,
        /// Use the matching complex (default for --product and --graph).
        #[arg(long, conflicts_with = "independence")]
        matching: bool,
        /// Use the independence complex (default for --family).
        #[arg(long)]
        independence: bool,
        /// Restrict homology to dimensions a..b (inclusive).
        #[arg(long)]
        dims: Option<String>,
        /// Fold-reduce the graph before enumerating.
        #[arg(long)]
        fold: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print the predicted homotopy type of a family member.
    Predict { family: String },
    /// Print the predicted homotopy type of M(P_n x P_m).
    PredictMatching { n: usize, m: u8 },
    /// Print closed-form sphere dimensions (and, for m = 3, the count).
    Dims { n: usize, m: u8 },
    /// Run a verification suite.
    Verify {
        /// base-cases | recurrences | tables | rewrites | matching |
        /// components | replay | all
        suite: String,
        /// Exit 3 when over-budget skips are present.
        #[arg(long)]
        strict: bool,
        /// Worker threads (defaults to the core count).
        #[arg(long)]
        jobs: Option<usize>,
        /// Emit machine-readable JSON instead of the table.
        #[arg(long, conflicts_with = "table")]
        json: bool,
        /// Emit the human table (default).
        #[arg(long)]
        table: bool,
        /// Include wall-clock timings in the output.
        #[arg(long)]
        timings: bool,
        /// Override the per-family index cap of the recurrence scan.
        #[arg(long)]
        max_n: Option<i64>,
        /// Largest index replayed per fixture script.
        #[arg(long, default_value_t = 4)]
        replay_max_n: i64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Replay a reduction script against a family graph.
    Replay {
        /// Path to the script JSON ("-" for stdin).
        script: String,
        /// Family spec for the initial graph.
        #[arg(long)]
        family: String,
        /// Also check homology of the initial complex against the terminal
        /// expression.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn parse_product(spec: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = spec
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow::anyhow!("product spec must look like 4x3, got {spec:?}"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn parse_dims(spec: &str) -> anyhow::Result<(i32, i32)> {
    let (a, b) = spec
        .split_once("..")
        .ok_or_else(|| anyhow::anyhow!("dims must look like a..b, got {spec:?}"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Homology {
            family,
            product,
            graph,
            matching,
            independence,
            dims,
            fold,
            budget,
        } => {
            let (max_simplices, max_matrix) = budget.resolve();
            let (g, default_matching) = if let Some(spec) = family {
                let id: FamilyId = spec.parse()?;
                (build(id)?, false)
            } else if let Some(spec) = product {
                let (n, m) = parse_product(&spec)?;
                let g = Graph::path(n)?.categorical_product(&Graph::path(m)?)?;
                (g, true)
            } else if let Some(path) = graph {
                let g = Graph::from_json(&read_input(&path)?)
                    .map_err(|e| anyhow::anyhow!("bad graph JSON: {e}"))?;
                (g, true)
            } else {
                anyhow::bail!("one of --family, --product, --graph is required");
            };
            let use_matching = matching || (default_matching && !independence);
            let g = if fold {
                auto_reduce(&g, &Strategy::FoldOnly)?.terminal_graph()
            } else {
                g
            };
            let opts = BuildOptions {
                max_dim: None,
                max_simplices,
            };
            let complex = match if use_matching {
                matching_complex(&g, &opts)
            } else {
                independence_complex(&g, &opts)
            } {
                Ok(c) => c,
                Err(e) => {
                    println!("{{\"error\":{:?}}}", e.to_string());
                    return Ok(ExitCode::from(1));
                }
            };
            let range = dims.as_deref().map(parse_dims).transpose()?;
            match reduced_homology(&complex, range, max_matrix) {
                Ok(p) => {
                    println!("{}", p.to_json());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!(
                        "{{\"error\":{:?},\"simplices\":{}}}",
                        e.to_string(),
                        complex.total_simplices()
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }

        Command::Predict { family } => {
            let id: FamilyId = family.parse()?;
            let desc = Evaluator::new().predict_family(id)?;
            println!("{}", desc.to_json());
            Ok(ExitCode::SUCCESS)
        }

        Command::PredictMatching { n, m } => {
            if !(1..=5).contains(&m) || n < 2 {
                anyhow::bail!("predict-matching covers n >= 2 and m in 1..=5");
            }
            let desc = Evaluator::new().predict_matching(n, m)?;
            println!("{}", desc.to_json());
            Ok(ExitCode::SUCCESS)
        }

        Command::Dims { n, m } => {
            let dims = closed_form_dims(n, m)?;
            let mut doc = serde_json::Map::new();
            doc.insert("n".into(), n.into());
            doc.insert("m".into(), m.into());
            match dims {
                Some((lo, hi)) => {
                    doc.insert("d_min".into(), lo.into());
                    doc.insert("d_max".into(), hi.into());
                }
                None => {
                    doc.insert("contractible".into(), true.into());
                }
            }
            if m == 3 {
                doc.insert(
                    "count".into(),
                    closed_form_count(n, m)?.to_string().into(),
                );
            }
            println!("{}", serde_json::Value::Object(doc));
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            suite,
            strict,
            jobs,
            json,
            table: _,
            timings,
            max_n,
            replay_max_n,
            budget,
        } => {
            let suite = Suite::parse(&suite)
                .ok_or_else(|| anyhow::anyhow!("unknown suite {suite:?}"))?;
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build_global()
                    .ok();
            }
            let (max_simplices, max_matrix) = budget.resolve();
            let cfg = Config {
                max_simplices,
                max_matrix,
                timings,
                max_n,
                replay_max_n,
            };
            let report = run_suite(suite, &cfg);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_table());
            }
            Ok(ExitCode::from(report.exit_code(strict) as u8))
        }

        Command::Replay {
            script,
            family,
            check,
            budget,
        } => {
            let id: FamilyId = family.parse()?;
            let steps = parse_script(&read_input(&script)?)?;
            let g = build(id)?;
            let trace = match auto_reduce(&g, &Strategy::Script(steps)) {
                Ok(t) => t,
                Err(e) => {
                    println!("{{\"error\":{:?}}}", e.to_string());
                    return Ok(ExitCode::from(1));
                }
            };
            let mut doc = serde_json::json!({
                "initial": serde_json::from_str::<serde_json::Value>(&trace.initial.to_json())?,
                "steps": serde_json::to_value(&trace.steps)?,
                "terminal": serde_json::to_value(&trace.terminal)?,
            });
            if check {
                let (max_simplices, max_matrix) = budget.resolve();
                let opts = EvalOptions {
                    build: BuildOptions {
                        max_dim: None,
                        max_simplices,
                    },
                    max_matrix_entries: max_matrix,
                    fold_first: true,
                };
                let (lhs, rhs) = trace.check_homology(&opts)?;
                let ok = lhs == rhs;
                doc["check"] = serde_json::json!({
                    "initial_homology": serde_json::from_str::<serde_json::Value>(&lhs.to_json())?,
                    "terminal_homology": serde_json::from_str::<serde_json::Value>(&rhs.to_json())?,
                    "consistent": ok,
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
                return Ok(if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
