//! `ruin`: first-hitting-time distributions of the lazy ruin walk from the
//! command line.
//!
//! All state comes in through flags (no environment variables), outputs are
//! byte-stable given identical flags and seed, and every error maps to a
//! fixed exit code with a JSON payload on stderr.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ruin::crosscheck::{self, CrosscheckConfig};
use ruin::figure2;
use ruin::moments::{self, MomentLadder};
use ruin::oracles;
use ruin::{asymptotics, exact, HopProbabilities, StartPosition, TimeIndex};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ruin",
    version,
    about = "First-hitting-time (ruin) distribution of a lazy random walk",
    long_about = "Computes the probability that a walker hopping right (pr), left (pl), or \
                  halting (pp) first reaches the origin at a given step, plus moments, \
                  generating function, asymptotics, figure data, simulation, and a \
                  cross-method validation sweep.\n\nExit codes: 0 ok, 2 usage, 3 bad \
                  parameter/domain, 4 divergent moment, 5 capacity, 6 precision, \
                  7 validation failure, 8 i/o."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate P(x, t) over a time range with a chosen method
    Pmf(PmfArgs),
    /// Emit the survey-figure CSV data (x = 50, three drifts, two pr values)
    Figure2(Figure2Args),
    /// Duration moments by closed forms and the bottom-up polynomial solver
    Moments(MomentsArgs),
    /// Moment generating function M_x(s) and its domain boundary
    Mgf(MgfArgs),
    /// Cross-method equivalence sweep; nonzero exit on discrepancy
    Validate(ValidateArgs),
    /// Monte Carlo histogram of absorption times, reproducible from the seed
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Rightward hop probability
    #[arg(long)]
    pr: f64,
    /// Leftward hop probability
    #[arg(long)]
    pl: f64,
    /// Halting probability; inferred as 1 - pr - pl when omitted
    #[arg(long)]
    pp: Option<f64>,
}

impl ParamArgs {
    fn build(&self) -> ruin::Result<HopProbabilities> {
        let pp = match self.pp {
            Some(pp) => pp,
            None => {
                let inferred = 1.0 - self.pr - self.pl;
                // rounding from the two subtractions may leave a sub-eps
                // negative residue for an on-simplex pair
                if inferred.abs() < 1e-12 {
                    0.0
                } else {
                    inferred
                }
            }
        };
        HopProbabilities::strict(self.pr, self.pl, pp)
    }
}

#[derive(Args)]
struct TimeRangeArgs {
    /// Single time point
    #[arg(long, conflicts_with_all = ["t_min", "t_max", "t_step"], required_unless_present = "t_min")]
    t: Option<u64>,
    /// Range start (inclusive)
    #[arg(long, requires = "t_max")]
    t_min: Option<u64>,
    /// Range end (inclusive)
    #[arg(long, requires = "t_min")]
    t_max: Option<u64>,
    /// Range stride
    #[arg(long, default_value_t = 1)]
    t_step: u64,
}

impl TimeRangeArgs {
    fn values(&self) -> ruin::Result<Vec<u64>> {
        if let Some(t) = self.t {
            return Ok(vec![t]);
        }
        match (self.t_min, self.t_max) {
            (Some(lo), Some(hi)) if lo <= hi && self.t_step >= 1 => {
                Ok((lo..=hi).step_by(self.t_step as usize).collect())
            }
            (Some(_), Some(_)) => Err(ruin::Error::domain(
                "empty time range: need t-min <= t-max and t-step >= 1",
            )),
            _ => Err(ruin::Error::domain("pass either --t or --t-min/--t-max")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Finite-sum closed form
    Exact,
    /// Hypergeometric closed form
    Hyp,
    /// Dynamic-programming recursion
    Dp,
    /// Gauss-Legendre quadrature of the integral form
    Integral,
    /// Monte Carlo frequency
    Mc,
    /// Long-time approximation
    Asymptotic,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::Exact => "exact",
            MethodArg::Hyp => "hyp",
            MethodArg::Dp => "dp",
            MethodArg::Integral => "integral",
            MethodArg::Mc => "mc",
            MethodArg::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct PmfArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Start position
    #[arg(long)]
    x: u64,
    #[command(flatten)]
    times: TimeRangeArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Monte Carlo sample count (mc method)
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Monte Carlo censoring cap (mc method)
    #[arg(long, default_value_t = 10_000)]
    t_cap: u64,
    /// Monte Carlo seed (mc method)
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct Figure2Args {
    /// Directory the per-panel CSV files are written into
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    x: u64,
    /// Highest moment order
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MgfArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    x: u64,
    /// Argument of M_x(s); must not exceed s_max
    #[arg(long)]
    s: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Small grid (x <= 10, t <= 60, 5 triples)
    #[arg(long)]
    quick: bool,
    #[arg(long)]
    x_max: Option<u64>,
    #[arg(long)]
    t_max: Option<u64>,
    #[arg(long)]
    triples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Override the absolute tolerance (exact vs dp, exact vs integral)
    #[arg(long)]
    tol_abs: Option<f64>,
    /// Override the relative tolerance (exact vs 2F1)
    #[arg(long)]
    tol_rel: Option<f64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    x: u64,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Walks not absorbed by this step are reported as censored
    #[arg(long, default_value_t = 10_000)]
    t_cap: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Pmf(args) => cmd_pmf(args),
        Command::Figure2(args) => cmd_figure2(args),
        Command::Moments(args) => cmd_moments(args),
        Command::Mgf(args) => cmd_mgf(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.code)
        }
    }
}

struct CliError {
    code: u8,
    kind: &'static str,
    message: String,
}

impl CliError {
    fn to_json(&self) -> String {
        serde_json::json!({
            "error": { "code": self.code, "kind": self.kind, "message": self.message }
        })
        .to_string()
    }

    fn io(err: std::io::Error) -> Self {
        CliError {
            code: 8,
            kind: "Io",
            message: err.to_string(),
        }
    }

    fn validation(failures: &[String]) -> Self {
        CliError {
            code: 7,
            kind: "ValidationFailed",
            message: failures.join("; "),
        }
    }
}

impl From<ruin::Error> for CliError {
    fn from(err: ruin::Error) -> Self {
        use ruin::Error::*;
        let (code, kind) = match err {
            NotFinite { .. } => (3, "NotFinite"),
            NegativeProbability { .. } => (3, "NegativeProbability"),
            SimplexViolation { .. } => (3, "SimplexViolation"),
            PairNotNormalized { .. } => (3, "PairNotNormalized"),
            NonTerminatingSeries { .. } => (3, "NonTerminatingSeries"),
            Domain(_) => (3, "Domain"),
            DivergentMoment { .. } => (4, "DivergentMoment"),
            Capacity { .. } => (5, "Capacity"),
            Precision { .. } => (6, "Precision"),
        };
        CliError {
            code,
            kind,
            message: err.to_string(),
        }
    }
}

type CmdResult = Result<(), CliError>;

fn cmd_pmf(args: PmfArgs) -> CmdResult {
    let params = args.params.build()?;
    let ts = args.times.values()?;
    let x = StartPosition(args.x);

    let rows: Vec<output::Row> = match args.method {
        MethodArg::Exact => ts
            .iter()
            .map(|&t| Ok(output::Row::new(t, exact::pmf(x, TimeIndex(t), &params)?.value)))
            .collect::<Result<_, ruin::Error>>()?,
        MethodArg::Hyp => ts
            .iter()
            .map(|&t| {
                Ok(output::Row::new(
                    t,
                    exact::pmf_via_2f1(x, TimeIndex(t), &params)?.value,
                ))
            })
            .collect::<Result<_, ruin::Error>>()?,
        MethodArg::Dp => {
            let t_hi = *ts.iter().max().expect("range is nonempty");
            let grid = oracles::dp_grid(args.x.max(1), t_hi, &params)?;
            ts.iter()
                .map(|&t| output::Row::new(t, grid.value(args.x, t)))
                .collect()
        }
        MethodArg::Integral => ts
            .iter()
            .map(|&t| {
                Ok(output::Row::new(
                    t,
                    oracles::pmf_integral(x, TimeIndex(t), &params)?.value,
                ))
            })
            .collect::<Result<_, ruin::Error>>()?,
        MethodArg::Mc => {
            let t_hi = *ts.iter().max().expect("range is nonempty");
            let hist = oracles::empirical_pmf(
                x,
                &params,
                args.samples,
                TimeIndex(args.t_cap.max(t_hi)),
                args.seed,
            )?;
            ts.iter()
                .map(|&t| output::Row::new(t, hist.frequency(t)))
                .collect()
        }
        MethodArg::Asymptotic => ts
            .iter()
            .map(|&t| {
                Ok(output::Row::new(
                    t,
                    asymptotics::asymptotic_pmf(x, TimeIndex(t), &params)?.value,
                ))
            })
            .collect::<Result<_, ruin::Error>>()?,
    };

    let table = output::PmfTable {
        params: output::ParamsOut::from(&params),
        method: args.method.name(),
        x: args.x,
        rows,
    };
    let text = match args.format {
        FormatArg::Csv => table.to_csv(),
        FormatArg::Json => table.to_json(),
    };
    output::emit(args.out.as_deref(), &text).map_err(CliError::io)
}

fn cmd_figure2(args: Figure2Args) -> CmdResult {
    std::fs::create_dir_all(&args.out).map_err(CliError::io)?;
    let curves = figure2::curves()?;
    for curve in &curves {
        let name = format!("fig2_dp{}_pr{}.csv", curve.delta_p, curve.pr);
        let mut csv = String::from("t,p\n");
        for row in &curve.rows {
            csv.push_str(&format!("{},{:.16e}\n", row.t, row.p));
        }
        std::fs::write(args.out.join(name), csv).map_err(CliError::io)?;

        if curve.delta_p == 0.0 {
            // the symmetric panel is read on logarithmic axes
            let name = format!("fig2_dp0_pr{}_loglog.csv", curve.pr);
            let mut csv = String::from("ln_t,ln_p\n");
            for row in &curve.rows {
                csv.push_str(&format!(
                    "{:.16e},{:.16e}\n",
                    (row.t as f64).ln(),
                    row.log_p
                ));
            }
            std::fs::write(args.out.join(name), csv).map_err(CliError::io)?;
        }
    }
    println!("wrote {} curves to {}", curves.len(), args.out.display());
    Ok(())
}

fn cmd_moments(args: MomentsArgs) -> CmdResult {
    let params = args.params.build()?;
    let x = StartPosition(args.x);
    let ladder = MomentLadder::up_to(&params, args.k.max(2))?;

    let closed = |k: usize| -> Option<ruin::Result<f64>> {
        match k {
            1 => Some(moments::mean(x, &params)),
            2 => Some(moments::second_moment(x, &params)),
            3 => Some(moments::third_moment(x, &params)),
            _ => None,
        }
    };
    let mut rows = Vec::new();
    for k in 1..=args.k {
        let closed_form = match closed(k) {
            Some(v) => Some(v?),
            None => None,
        };
        rows.push(output::MomentRow {
            quantity: format!("moment{k}"),
            closed_form,
            bottom_up: Some(ladder.moment(k, x)),
        });
    }
    let m1 = ladder.moment(1, x);
    rows.push(output::MomentRow {
        quantity: "variance".to_string(),
        closed_form: Some(moments::variance(x, &params)?),
        bottom_up: Some(ladder.moment(2, x) - m1 * m1),
    });

    let report = output::MomentsReport {
        params: output::ParamsOut::from(&params),
        x: args.x,
        rows,
    };
    let text = match args.format {
        FormatArg::Csv => report.to_csv(),
        FormatArg::Json => report.to_json(),
    };
    output::emit(args.out.as_deref(), &text).map_err(CliError::io)
}

fn cmd_mgf(args: MgfArgs) -> CmdResult {
    let params = args.params.build()?;
    let value = moments::mgf(StartPosition(args.x), args.s, &params)?;
    let report = output::MgfReport {
        params: output::ParamsOut::from(&params),
        x: args.x,
        s: value.s,
        m: value.value,
        s_max: value.s_max,
    };
    let text = match args.format {
        FormatArg::Csv => report.to_csv(),
        FormatArg::Json => report.to_json(),
    };
    output::emit(args.out.as_deref(), &text).map_err(CliError::io)
}

fn cmd_validate(args: ValidateArgs) -> CmdResult {
    let mut config = if args.quick {
        CrosscheckConfig::quick()
    } else {
        CrosscheckConfig::default()
    };
    if let Some(v) = args.x_max {
        config.x_max = v;
    }
    if let Some(v) = args.t_max {
        config.t_max = v;
    }
    if let Some(v) = args.triples {
        config.triples = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = args.tol_abs {
        config.tol_abs = v;
    }
    if let Some(v) = args.tol_rel {
        config.tol_rel = v;
    }

    let report = crosscheck::run(&config)?;
    for pair in &report.pairs {
        println!(
            "{}: max discrepancy {:.3e} (tolerance {:.1e}) {}",
            pair.pair,
            pair.max_discrepancy,
            pair.tolerance,
            if pair.passed() { "PASS" } else { "FAIL" }
        );
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::validation(&report.failures))
    }
}

fn cmd_simulate(args: SimulateArgs) -> CmdResult {
    let params = args.params.build()?;
    let hist = oracles::empirical_pmf(
        StartPosition(args.x),
        &params,
        args.samples,
        TimeIndex(args.t_cap),
        args.seed,
    )?;
    let text = match args.format {
        FormatArg::Csv => output::histogram_csv(&hist),
        FormatArg::Json => output::histogram_json(&hist),
    };
    output::emit(args.out.as_deref(), &text).map_err(CliError::io)
}
