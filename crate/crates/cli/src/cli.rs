//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rescue_core::analysis::{self, Estimate, Method};
use rescue_core::figure::generate_figure_matrix;
use rescue_core::scheduler::{self, Direction, Objective, Permutation, ScheduleMetrics};
use rescue_core::{PopulationModel, PositivityReport, Strategy};
use serde::Serialize;

use crate::error::CliError;
use crate::render::{figure_csv, figure_svg, fmt_probability, fmt_value};
use crate::scenario::{parse_scenario, ObjectiveName, ScenarioConfig};

#[derive(Debug, Parser)]
#[command(name = "rescue", version, about = "Evaluate and optimize service orders under decaying success probabilities")]
pub struct Cli {
    /// Output style
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Sort,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Metrics for one service order
    Evaluate {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// `identity`, `ascending`, `descending`, or 1-based labels such as `3,1,2,4`
        #[arg(long, default_value = "identity")]
        order: String,
    },
    /// Best order by exhaustive search or by the recommended sorted order
    Optimize {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// Overrides the scenario's objective
        #[arg(long, value_enum)]
        objective: Option<ObjectiveName>,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
    },
    /// Monte Carlo estimate of P(no item clamped) for both sorted orders
    Simulate {
        #[command(flatten)]
        population: PopulationArgs,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 2018)]
        seed: u64,
    },
    /// Closed-form and quadrature values of P(no item clamped)
    Positivity {
        #[command(flatten)]
        population: PopulationArgs,
    },
    /// Stage-by-person survival table as CSV and/or SVG
    Figure {
        #[command(flatten)]
        population: PopulationArgs,
        #[arg(long, default_value_t = 2018)]
        seed: u64,
        /// Output path; `.svg` writes the heatmap, anything else CSV.
        /// Repeatable. Without it the CSV goes to standard output.
        #[arg(long)]
        out: Vec<PathBuf>,
        /// Label CSV rows and columns
        #[arg(long)]
        header: bool,
    },
}

#[derive(Debug, Args)]
pub struct ScenarioArg {
    /// Scenario file, or `-` for standard input
    #[arg(long)]
    pub scenario: PathBuf,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PopulationArgs {
    #[arg(long, default_value_t = 13)]
    pub n: usize,
    /// Drop in success probability per stage
    #[arg(long, default_value_t = 0.06)]
    pub decay: f64,
    #[arg(long, default_value_t = 0.5)]
    pub low: f64,
    #[arg(long, default_value_t = 1.0)]
    pub high: f64,
}

impl PopulationArgs {
    fn model(&self) -> Result<PopulationModel, CliError> {
        if self.n == 0 {
            return Err(CliError::validation("--n", "must be at least 1"));
        }
        if !(self.decay >= 0.0 && self.decay.is_finite()) {
            return Err(CliError::validation("--decay", format!("{} must be >= 0", self.decay)));
        }
        if !(0.0 <= self.low && self.low < self.high && self.high <= 1.0) {
            return Err(CliError::validation(
                "--low/--high",
                format!("need 0 <= low < high <= 1, got ({}, {})", self.low, self.high),
            ));
        }
        PopulationModel::new(self.n, self.low, self.high, self.decay)
            .map_err(|e| CliError::validation("--n/--decay/--low/--high", e))
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => match stdout.write_all(out.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: writing output: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command and returns what it prints to standard output.
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    match &cli.command {
        Command::Evaluate { scenario, order } => {
            let cfg = load_scenario(&scenario.scenario, stdin)?;
            evaluate(&cfg, order, cli.format)
        }
        Command::Optimize { scenario, objective, method } => {
            let cfg = load_scenario(&scenario.scenario, stdin)?;
            let objective = objective.map_or(cfg.objective, Into::into);
            optimize(&cfg, objective, *method, cli.format)
        }
        Command::Simulate { population, trials, seed } => {
            if *trials == 0 {
                return Err(CliError::validation("--trials", "must be positive"));
            }
            let model = population.model()?;
            let report = analysis::simulate_positivity(&model, *trials, *seed)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            Ok(positivity_output(&model, &report, cli.format))
        }
        Command::Positivity { population } => {
            let model = population.model()?;
            let report = analysis::positivity_report(&model)
                .map_err(|e| CliError::validation("--n/--decay", e))?;
            Ok(positivity_output(&model, &report, cli.format))
        }
        Command::Figure { population, seed, out, header } => {
            let model = population.model()?;
            let matrix =
                generate_figure_matrix(*seed, model.n(), model.decay_step(), model.low(), model.high())
                    .map_err(|e| CliError::validation("--n/--decay/--low/--high", e))?;
            let csv = figure_csv(&matrix, *header);
            if out.is_empty() {
                return Ok(match cli.format {
                    Format::Text => csv,
                    Format::Structured => json(&FigureOut {
                        seed: *seed,
                        initial: matrix.initial().to_vec(),
                        cells: matrix.rows().map(<[f64]>::to_vec).collect(),
                        written: Vec::new(),
                    }),
                });
            }
            for path in out {
                let body = if is_svg(path) { figure_svg(&matrix) } else { csv.clone() };
                std::fs::write(path, body)
                    .map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
            }
            Ok(match cli.format {
                Format::Text => out.iter().map(|p| format!("wrote {}\n", p.display())).collect(),
                Format::Structured => json(&FigureOut {
                    seed: *seed,
                    initial: matrix.initial().to_vec(),
                    cells: matrix.rows().map(<[f64]>::to_vec).collect(),
                    written: out.iter().map(|p| p.display().to_string()).collect(),
                }),
            })
        }
    }
}

fn is_svg(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg"))
}

fn load_scenario(path: &Path, stdin: &mut dyn Read) -> Result<ScenarioConfig, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| CliError::io("reading standard input", e))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading {}", path.display()), e))?
    };
    parse_scenario(&text)
}

fn parse_order(spec: &str, cfg: &ScenarioConfig) -> Result<Permutation, CliError> {
    let p0 = &cfg.probabilities;
    match spec.trim() {
        "identity" => Ok(Permutation::identity(p0.len())),
        "ascending" => Ok(scheduler::sort_order(p0, Direction::Ascending)),
        "descending" => Ok(scheduler::sort_order(p0, Direction::Descending)),
        labels => {
            let labels = labels
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::validation("--order", format!("{labels:?}: {e}")))?;
            if labels.len() != p0.len() {
                return Err(CliError::validation(
                    "--order",
                    format!("has {} labels but the scenario has {} items", labels.len(), p0.len()),
                ));
            }
            Permutation::from_one_based(&labels).map_err(|e| CliError::validation("--order", e))
        }
    }
}

#[derive(Serialize)]
struct MetricsOut {
    order: Vec<usize>,
    initial_in_order: Vec<f64>,
    at_processing: Vec<f64>,
    start_times: Vec<f64>,
    expected_successes: f64,
    prob_all_success: f64,
    pmf: Vec<f64>,
}

impl MetricsOut {
    fn new(cfg: &ScenarioConfig, order: &Permutation, m: &ScheduleMetrics) -> Self {
        let interval = match cfg.decay {
            crate::scenario::DecayConfig::Additive { interval, .. } => interval,
            crate::scenario::DecayConfig::Multiplicative { .. } => 1.0,
        };
        MetricsOut {
            order: order.to_one_based(),
            initial_in_order: order.iter().map(|&i| cfg.probabilities[i]).collect(),
            at_processing: m.at_processing.to_vec(),
            start_times: (0..order.len()).map(|i| i as f64 * interval).collect(),
            expected_successes: m.expected_successes,
            prob_all_success: m.prob_all_success,
            pmf: m.pmf.mass().to_vec(),
        }
    }

    fn text(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| fmt_value(*x)).collect::<Vec<_>>().join(" ");
        let order: Vec<String> = self.order.iter().map(usize::to_string).collect();
        format!(
            "order: {}\ninitial: {}\nat processing: {}\nexpected successes: {}\nP(all succeed): {}\npmf: {}\n",
            order.join(" "),
            list(&self.initial_in_order),
            list(&self.at_processing),
            fmt_value(self.expected_successes),
            fmt_value(self.prob_all_success),
            list(&self.pmf),
        )
    }
}

fn evaluate(cfg: &ScenarioConfig, order: &str, format: Format) -> Result<String, CliError> {
    let order = parse_order(order, cfg)?;
    let decay = cfg.decay_spec()?;
    let metrics = scheduler::evaluate_order(&cfg.probabilities, &order, &decay)
        .map_err(|e| CliError::validation("--order", e))?;
    let out = MetricsOut::new(cfg, &order, &metrics);
    Ok(match format {
        Format::Text => out.text(),
        Format::Structured => json(&out),
    })
}

#[derive(Serialize)]
struct OptimizeOut {
    method: &'static str,
    objective: ObjectiveName,
    /// Sorted strategy used (`sort`) or matched by the optimum (`brute`).
    strategy: Option<&'static str>,
    value: f64,
    #[serde(flatten)]
    metrics: MetricsOut,
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Ascending => "ascending",
        Strategy::Descending => "descending",
        Strategy::Any => "any",
    }
}

fn optimize(
    cfg: &ScenarioConfig,
    objective: Objective,
    method: MethodArg,
    format: Format,
) -> Result<String, CliError> {
    let p0 = &cfg.probabilities;
    let decay = cfg.decay_spec()?;
    let (order, value, strategy) = match method {
        MethodArg::Brute => {
            let (order, value) = scheduler::brute_force_optimal(p0, &decay, objective)
                .map_err(|e| CliError::validation("probabilities", e))?;
            let matched = [Direction::Ascending, Direction::Descending]
                .into_iter()
                .find(|&d| scheduler::sort_order(p0, d) == order)
                .map(|d| if d == Direction::Ascending { "ascending" } else { "descending" });
            (order, value, matched)
        }
        MethodArg::Sort => {
            let strategy = scheduler::recommended_order(&decay, objective);
            let order = strategy.order(p0);
            let value = scheduler::evaluate_order(p0, &order, &decay)
                .map_err(|e| CliError::Internal(e.to_string()))?
                .value(objective);
            (order, value, Some(strategy_name(strategy)))
        }
    };
    let metrics = scheduler::evaluate_order(p0, &order, &decay)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let out = OptimizeOut {
        method: if method == MethodArg::Brute { "brute" } else { "sort" },
        objective: objective.into(),
        strategy,
        value,
        metrics: MetricsOut::new(cfg, &order, &metrics),
    };
    Ok(match format {
        Format::Text => {
            let objective = match objective {
                Objective::ExpectedSuccesses => "expected successes",
                Objective::ProbAllSuccess => "P(all succeed)",
            };
            let mut s = format!(
                "method: {}\nobjective: {objective}\nbest value: {}\n",
                out.method,
                fmt_value(value)
            );
            if let Some(name) = strategy {
                s.push_str(&format!("strategy: {name}\n"));
            }
            s + &out.metrics.text()
        }
        Format::Structured => json(&out),
    })
}

#[derive(Serialize)]
struct EstimateOut {
    value: f64,
    std_error: f64,
    method: &'static str,
}

impl From<Estimate> for EstimateOut {
    fn from(e: Estimate) -> Self {
        EstimateOut {
            value: e.value,
            std_error: e.std_error,
            method: match e.method {
                Method::Analytic => "analytic",
                Method::Quadrature => "quadrature",
                Method::MonteCarlo => "montecarlo",
            },
        }
    }
}

#[derive(Serialize)]
struct ThresholdOut {
    rank: usize,
    value: f64,
}

#[derive(Serialize)]
struct PositivityOut {
    n: usize,
    low: f64,
    high: f64,
    decay: f64,
    active_thresholds: Vec<ThresholdOut>,
    strongest_first: EstimateOut,
    weakest_first: EstimateOut,
}

fn positivity_output(model: &PopulationModel, report: &PositivityReport, format: Format) -> String {
    let thresholds: Vec<ThresholdOut> = analysis::active_thresholds(model)
        .iter()
        .map(|t| ThresholdOut { rank: t.rank, value: t.value })
        .collect();
    match format {
        Format::Structured => json(&PositivityOut {
            n: model.n(),
            low: model.low(),
            high: model.high(),
            decay: model.decay_step(),
            active_thresholds: thresholds,
            strongest_first: report.strongest_first.into(),
            weakest_first: report.weakest_first.into(),
        }),
        Format::Text => {
            let line = |label: &str, e: &Estimate| {
                let method = EstimateOut::from(*e).method;
                if e.method == Method::MonteCarlo {
                    format!(
                        "{label}: {} (std error {:.3e}, {method})\n",
                        fmt_probability(e.value),
                        e.std_error
                    )
                } else {
                    format!("{label}: {} ({:.7e}, {method})\n", fmt_probability(e.value), e.value)
                }
            };
            let ranks: Vec<String> =
                thresholds.iter().map(|t| format!("{}>{}", t.rank, fmt_value(t.value))).collect();
            format!(
                "model: n={} Uniform({}, {}) decay {} per stage\nactive thresholds: {}\n{}{}",
                model.n(),
                fmt_value(model.low()),
                fmt_value(model.high()),
                fmt_value(model.decay_step()),
                if ranks.is_empty() { "none".to_string() } else { ranks.join(" ") },
                line("P(strongest first positive)", &report.strongest_first),
                line("P(weakest first positive)", &report.weakest_first),
            )
        }
    }
}

#[derive(Serialize)]
struct FigureOut {
    seed: u64,
    initial: Vec<f64>,
    cells: Vec<Vec<f64>>,
    written: Vec<String>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

/// Entry point for the binary.
pub fn main_with_std() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}
