//! `quickpick` command-line interface.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags, malformed
//! tickets, out-of-range ranks), 2 for runtime failures (I/O, unusable
//! data). Data goes to files or standard output, diagnostics to standard
//! error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::generators::Strategy;
use crate::salesmodel::{self, SalesModel, Scheme, SearchDomain};
use crate::simulate::{self, SimResult};
use crate::ticketspace::{self, Rank, Ticket, TicketSpaceConfig};

#[derive(Debug, Parser)]
#[command(
    name = "quickpick",
    version,
    about = "Lottery ticket ranking, issuance simulation and expected-value analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a ticket such as `1,2,3,4,5 pb 1` to its rank.
    Rank(RankArgs),
    /// Convert a rank to its ticket.
    Unrank(UnrankArgs),
    /// Simulate distinct tickets sold per strategy and write a CSV.
    Simulate(SimulateArgs),
    /// Tabulate expected value against jackpot and report break-even jackpots.
    Analyze(AnalyzeArgs),
    /// Fit the quadratic sales model to a CSV of observed sales.
    Fit(FitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Game {
    Powerball,
    Megamillions,
}

#[derive(Debug, Args)]
pub struct GameArgs {
    /// Game preset; overridden by the explicit shape flags.
    #[arg(long, value_enum, default_value_t = Game::Powerball)]
    pub game: Game,
    #[arg(long, requires_all = ["white_count", "special_max"])]
    pub white_max: Option<u32>,
    #[arg(long, requires_all = ["white_max", "special_max"])]
    pub white_count: Option<u32>,
    #[arg(long, requires_all = ["white_max", "white_count"])]
    pub special_max: Option<u32>,
}

impl GameArgs {
    fn config(&self) -> Result<TicketSpaceConfig, CliError> {
        match (self.white_max, self.white_count, self.special_max) {
            (Some(h), Some(s), Some(sp)) => {
                TicketSpaceConfig::new(h, s, sp).map_err(CliError::usage)
            }
            _ => Ok(match self.game {
                Game::Powerball => TicketSpaceConfig::powerball(),
                Game::Megamillions => TicketSpaceConfig::megamillions(),
            }),
        }
    }
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Ticket, e.g. `1,2,3,4,5 pb 1` (may be split across arguments).
    #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
    pub ticket: Vec<String>,
}

#[derive(Debug, Args)]
pub struct UnrankArgs {
    #[command(flatten)]
    pub game: GameArgs,
    pub rank: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    All,
    Independent,
    Central,
    Pairing,
}

impl StrategyArg {
    fn strategies(self) -> Vec<Strategy> {
        match self {
            StrategyArg::All => Strategy::ALL.to_vec(),
            StrategyArg::Independent => vec![Strategy::Independent],
            StrategyArg::Central => vec![Strategy::Central],
            StrategyArg::Pairing => vec![Strategy::Pairing],
        }
    }

    fn name(self) -> &'static str {
        match self {
            StrategyArg::All => "all",
            StrategyArg::Independent => "independent",
            StrategyArg::Central => "central",
            StrategyArg::Pairing => "pairing",
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 100_000)]
    pub space_size: u64,
    #[arg(long, default_value_t = 2)]
    pub stores: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::All)]
    pub strategy: StrategyArg,
    /// Largest sale count simulated; defaults to three times the space size.
    #[arg(long)]
    pub k_max: Option<u64>,
    #[arg(long, default_value_t = 60)]
    pub steps: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit the `#` manifest header.
    #[arg(long)]
    pub no_manifest: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Sales model coefficients `a,b,c` for T(j) = a j^2 + b j + c.
    #[arg(
        long,
        default_value = "278.36,-5364.95,10582740.74",
        allow_hyphen_values = true
    )]
    pub coeffs: String,
    #[arg(long, default_value_t = 292_201_338)]
    pub space_size: u64,
    /// Smallest jackpot in millions.
    #[arg(long, default_value_t = 40.0)]
    pub j_min: f64,
    /// Largest jackpot in millions.
    #[arg(long, default_value_t = 3000.0)]
    pub j_max: f64,
    #[arg(long, default_value_t = 296)]
    pub steps: usize,
    /// Ticket price in dollars.
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub cost: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_manifest: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV with header `jackpot_millions,tickets_sold`.
    #[arg(long)]
    pub input: PathBuf,
    /// Optional CSV of per-record residuals.
    #[arg(long)]
    pub residuals: Option<PathBuf>,
    #[arg(long)]
    pub no_manifest: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    fn runtime(e: impl std::fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::runtime(e)
    }
}

/// Provenance written atop every output file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunManifest {
    pub command: String,
    /// Flags in canonical order, enough to rerun the command.
    pub params: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub version: String,
    /// Taken from `SOURCE_DATE_EPOCH` when set; omitted otherwise so that
    /// reruns stay byte-identical.
    pub timestamp: Option<String>,
}

impl RunManifest {
    fn new(command: &str, params: Vec<(&str, String)>, seed: Option<u64>) -> Self {
        Self {
            command: command.into(),
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            seed,
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: std::env::var("SOURCE_DATE_EPOCH").ok(),
        }
    }

    pub fn command_line(&self) -> String {
        let mut line = format!("quickpick {}", self.command);
        for (k, v) in &self.params {
            let _ = write!(line, " --{k} {v}");
        }
        line
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# command: {}", self.command_line());
        let _ = writeln!(out, "# version: quickpick {}", self.version);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "# seed: {seed}");
        }
        if let Some(ts) = &self.timestamp {
            let _ = writeln!(out, "# timestamp: {ts}");
        }
        out
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing console output to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    write!(stdout, "{e}")?;
                    Ok(())
                }
                _ => Err(CliError::Usage(e.render().to_string())),
            };
        }
    };
    match cli.command {
        Command::Rank(a) => cmd_rank(&a, stdout),
        Command::Unrank(a) => cmd_unrank(&a, stdout),
        Command::Simulate(a) => cmd_simulate(&a, stdout),
        Command::Analyze(a) => cmd_analyze(&a, stdout),
        Command::Fit(a) => cmd_fit(&a, stdout),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(args, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.trim_end());
            e.exit_code()
        }
    }
}

pub fn cmd_rank(args: &RankArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = args.game.config()?;
    let ticket: Ticket = args.ticket.join(" ").parse().map_err(CliError::usage)?;
    let r = ticketspace::rank(&ticket, &config).map_err(CliError::usage)?;
    writeln!(stdout, "{r}")?;
    Ok(())
}

pub fn cmd_unrank(args: &UnrankArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = args.game.config()?;
    let t = ticketspace::unrank(Rank(args.rank), &config).map_err(CliError::usage)?;
    writeln!(stdout, "{t}")?;
    Ok(())
}

fn emit(out: &Option<PathBuf>, contents: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, contents)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => Ok(stdout.write_all(contents.as_bytes())?),
    }
}

/// `strategy,k,mean_distinct,stderr,pool_fraction` rows.
pub fn simulation_csv(results: &[SimResult]) -> String {
    let mut csv = String::from("strategy,k,mean_distinct,stderr,pool_fraction\n");
    for r in results {
        for p in &r.points {
            let _ = writeln!(
                csv,
                "{},{},{},{},{}",
                r.strategy, p.k, p.mean_distinct, p.std_error, p.pool_fraction
            );
        }
    }
    csv
}

pub fn cmd_simulate(args: &SimulateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    if args.steps == 0 {
        return Err(CliError::usage("--steps must be at least 1"));
    }
    let k_max = args.k_max.unwrap_or(args.space_size.saturating_mul(3));
    let k_grid = simulate::linear_grid(k_max, args.steps);
    let results = args
        .strategy
        .strategies()
        .into_iter()
        .map(|strategy| {
            simulate::run_sim(&simulate::SimConfig {
                space_size: args.space_size,
                stores: args.stores,
                strategy,
                k_grid: k_grid.clone(),
                trials: args.trials,
                seed: args.seed,
            })
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(CliError::usage)?;

    let mut contents = String::new();
    if !args.no_manifest {
        let manifest = RunManifest::new(
            "simulate",
            vec![
                ("space-size", args.space_size.to_string()),
                ("stores", args.stores.to_string()),
                ("strategy", args.strategy.name().into()),
                ("k-max", k_max.to_string()),
                ("steps", args.steps.to_string()),
                ("trials", args.trials.to_string()),
                ("seed", args.seed.to_string()),
            ],
            Some(args.seed),
        );
        contents.push_str(&manifest.render());
    }
    contents.push_str(&simulation_csv(&results));
    emit(&args.out, &contents, stdout)
}

fn fmt_opt(v: Result<f64, Error>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn cmd_analyze(args: &AnalyzeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let model: SalesModel = args.coeffs.parse().map_err(CliError::usage)?;
    if args.space_size == 0 {
        return Err(CliError::usage("--space-size must be at least 1"));
    }
    if !args.j_min.is_finite()
        || !args.j_max.is_finite()
        || args.j_min >= args.j_max
        || args.steps == 0
    {
        return Err(CliError::usage("need --j-min < --j-max and --steps >= 1"));
    }
    let n = args.space_size;

    let mut csv = String::from("jackpot_millions,tickets_sold,ev_ir,ev_cs\n");
    let h = (args.j_max - args.j_min) / args.steps as f64;
    for i in 0..=args.steps {
        let j = args.j_min + h * i as f64;
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            j,
            model.tickets_sold(j),
            fmt_opt(salesmodel::ev_at_jackpot(
                &model,
                j,
                Scheme::IndependentRandom,
                n
            )),
            fmt_opt(salesmodel::ev_at_jackpot(
                &model,
                j,
                Scheme::CentralServer,
                n
            )),
        );
    }

    let domain = SearchDomain {
        j_min: args.j_min,
        j_max: args.j_max,
        steps: ((args.j_max - args.j_min).ceil() as usize).clamp(100, 100_000),
    };
    let mut summary = String::new();
    for scheme in [Scheme::IndependentRandom, Scheme::CentralServer] {
        let name = scheme.name();
        match salesmodel::breakeven_roots_in(&model, scheme, n, args.cost, &domain) {
            Ok((lo, hi)) => {
                let _ = writeln!(
                    summary,
                    "{name} breakeven: {lo:.4} .. {hi:.4} million (cost ${})",
                    args.cost
                );
            }
            Err(e @ Error::NoRoot(_)) => {
                let _ = writeln!(summary, "{name} breakeven: none ({e})");
            }
            Err(e) => return Err(CliError::runtime(e)),
        }
        match salesmodel::argmax_ev_in(&model, scheme, n, &domain) {
            Ok((j, ev)) => {
                let _ = writeln!(summary, "{name} argmax: {j:.4} million (ev ${ev:.4})");
            }
            Err(e @ Error::NotUnimodal(_)) => {
                let _ = writeln!(summary, "{name} argmax: none ({e})");
            }
            Err(e) => return Err(CliError::runtime(e)),
        }
    }

    let mut contents = String::new();
    if !args.no_manifest {
        let manifest = RunManifest::new(
            "analyze",
            vec![
                ("coeffs", format!("{},{},{}", model.a, model.b, model.c)),
                ("space-size", n.to_string()),
                ("j-min", args.j_min.to_string()),
                ("j-max", args.j_max.to_string()),
                ("steps", args.steps.to_string()),
                ("cost", args.cost.to_string()),
            ],
            None,
        );
        contents.push_str(&manifest.render());
    }
    contents.push_str(&csv);

    match &args.out {
        Some(_) => {
            emit(&args.out, &contents, stdout)?;
            stdout.write_all(summary.as_bytes())?;
        }
        None => {
            // Keep standard output parseable: summary as comment lines first.
            for line in summary.lines() {
                writeln!(stdout, "# {line}")?;
            }
            stdout.write_all(contents.as_bytes())?;
        }
    }
    Ok(())
}

pub fn cmd_fit(args: &FitArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let file = fs::File::open(&args.input)
        .map_err(|e| CliError::Runtime(format!("cannot open {}: {e}", args.input.display())))?;
    let records = salesmodel::read_sales_csv(file)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", args.input.display())))?;
    let model = salesmodel::fit_quadratic(&records).map_err(CliError::runtime)?;
    let r2 = salesmodel::r_squared(&model, &records);
    writeln!(stdout, "a = {:.6}", model.a)?;
    writeln!(stdout, "b = {:.6}", model.b)?;
    writeln!(stdout, "c = {:.6}", model.c)?;
    writeln!(stdout, "r_squared = {r2:.6}")?;

    if let Some(path) = &args.residuals {
        let mut contents = String::new();
        if !args.no_manifest {
            let manifest = RunManifest::new(
                "fit",
                vec![("input", args.input.display().to_string())],
                None,
            );
            contents.push_str(&manifest.render());
        }
        contents.push_str("jackpot_millions,tickets_sold,predicted,residual\n");
        for r in &records {
            let predicted = model.tickets_sold(r.jackpot_millions);
            let _ = writeln!(
                contents,
                "{},{},{},{}",
                r.jackpot_millions,
                r.tickets_sold,
                predicted,
                r.tickets_sold as f64 - predicted
            );
        }
        emit(&Some(path.clone()), &contents, stdout)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> Result<String, CliError> {
        let mut out = Vec::new();
        let mut full = vec!["quickpick"];
        full.extend_from_slice(args);
        run(full, &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn unrank_worked_example() {
        assert_eq!(
            run_capture(&["unrank", "--game", "powerball", "100000000"]).unwrap(),
            "25,33,47,51,59 pb 9\n"
        );
    }

    #[test]
    fn rank_accepts_split_ticket() {
        assert_eq!(
            run_capture(&["rank", "--game", "powerball", "1,2,3,4,5", "pb", "1"]).unwrap(),
            "0\n"
        );
        assert_eq!(
            run_capture(&["rank", "25,33,47,51,59 pb 9"]).unwrap(),
            "100000000\n"
        );
    }

    #[test]
    fn usage_errors_exit_one() {
        for args in [
            &["unrank", "--game", "powerball", "292201338"][..],
            &["rank", "1,2,3,4 pb 1"],
            &["rank", "garbage"],
            &["bogus"],
            &["analyze", "--coeffs", "1,2"],
            &["unrank", "--white-max", "10", "5"],
        ] {
            let err = run_capture(args).unwrap_err();
            assert_eq!(err.exit_code(), 1, "{args:?}: {err}");
        }
    }

    #[test]
    fn custom_shape() {
        let out = run_capture(&[
            "unrank",
            "--white-max",
            "10",
            "--white-count",
            "3",
            "--special-max",
            "4",
            "479",
        ])
        .unwrap();
        assert_eq!(out, "8,9,10 pb 4\n");
    }

    #[test]
    fn manifest_rendering() {
        let m = RunManifest {
            command: "simulate".into(),
            params: vec![("seed".into(), "7".into())],
            seed: Some(7),
            version: "0.1.0".into(),
            timestamp: None,
        };
        assert_eq!(
            m.render(),
            "# command: quickpick simulate --seed 7\n# version: quickpick 0.1.0\n# seed: 7\n"
        );
    }
}
