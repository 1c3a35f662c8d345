//! Command-line front end. [`run`] takes the argument vector and output
//! streams so the whole CLI can be driven from tests.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mixgraph::census::{check_reference, Census, CensusResult, DEFAULT_MAX_ORDER};
use mixgraph::format::parse_records;
use mixgraph::iso::is_self_converse;
use mixgraph::oracle::brute_force_census;
use mixgraph::random::{
    run_asymmetry_experiment, run_lemma1_experiment, run_selfconverse_experiment, sample_mixed,
    trial_rng, ExperimentConfig, ExperimentReport, DEFAULT_EPSILON,
};
use mixgraph::report::{experiment_json, table_json, to_csv, CensusRow, OracleRow, SCHEMA_VERSION};
use mixgraph::spectral::{mixed_char_poly, CharPoly};
use mixgraph::MixedGraph;
use num_bigint::BigInt;

#[derive(Debug, Parser)]
#[command(
    name = "mixgraph",
    version,
    about = "Self-converse mixed graph census and experiments"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact counts M(n), S(n) and f(n) = S(n)/M(n).
    Census {
        #[arg(long)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        /// Show the exact fraction in table output.
        #[arg(long)]
        exact: bool,
        /// Compare f(n) with the embedded reference values; exit 1 on mismatch.
        #[arg(long)]
        verify: bool,
        /// Largest admissible order.
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        limit: usize,
    },
    /// Exhaustive enumeration of all labeled mixed graphs.
    Oracle {
        #[arg(long)]
        n: usize,
        /// Permit n = 5 (about a million graphs).
        #[arg(long)]
        allow_n5: bool,
    },
    /// Monte Carlo experiments.
    Mc {
        #[arg(value_enum)]
        experiment: Experiment,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Edge (or arc) probability; 1/4 for asymmetry and lemma1, 1/2 for selfconverse.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Worker threads; the report does not depend on this.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Characteristic polynomials of a graph and its converse.
    Spectrum {
        #[arg(long, conflicts_with_all = ["random", "n", "seed"], required_unless_present = "random")]
        input: Option<PathBuf>,
        /// Sample X(n, 1/2) instead of reading a file.
        #[arg(long, requires_all = ["n", "seed"])]
        random: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide whether a graph is isomorphic to its converse.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Asymmetry,
    Lemma1,
    Selfconverse,
}

impl Experiment {
    fn name(self) -> &'static str {
        match self {
            Experiment::Asymmetry => "asymmetry",
            Experiment::Lemma1 => "lemma1",
            Experiment::Selfconverse => "selfconverse",
        }
    }

    fn default_p(self) -> f64 {
        match self {
            Experiment::Asymmetry | Experiment::Lemma1 => 0.25,
            Experiment::Selfconverse => 0.5,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status: 0 on success, 1 on failure, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.report, out) {
                let _ = writeln!(err, "error: {e:#}");
                return 1;
            }
            for line in &outcome.failures {
                let _ = writeln!(err, "{line}");
            }
            i32::from(!outcome.failures.is_empty())
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

struct Outcome {
    report: String,
    /// Verification failures; the report is still emitted.
    failures: Vec<String>,
}

impl From<String> for Outcome {
    fn from(report: String) -> Self {
        Self {
            report,
            failures: Vec::new(),
        }
    }
}

fn emit(cli: &Cli, report: &str, out: &mut dyn Write) -> Result<()> {
    match &cli.output {
        Some(path) => {
            std::fs::write(path, report).with_context(|| format!("cannot write {}", path.display()))
        }
        None => Ok(out.write_all(report.as_bytes())?),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Census {
            min_n,
            max_n,
            exact,
            verify,
            limit,
        } => census(cli.format, *min_n, *max_n, *exact, *verify, *limit),
        Command::Oracle { n, allow_n5 } => oracle(cli.format, *n, *allow_n5).map(Outcome::from),
        Command::Mc {
            experiment,
            n,
            trials,
            seed,
            p,
            epsilon,
            workers,
        } => {
            let cfg =
                ExperimentConfig::new(*n, p.unwrap_or(experiment.default_p()), *trials, *seed)
                    .with_epsilon(*epsilon);
            cfg.validate()?;
            if *workers == Some(0) {
                bail!("--workers must be at least 1");
            }
            mc(cli.format, *experiment, &cfg, *workers).map(Outcome::from)
        }
        Command::Spectrum {
            input,
            random,
            n,
            seed,
        } => {
            let (graphs, seed) = if *random {
                let (n, seed) = (
                    n.expect("clap requires n"),
                    seed.expect("clap requires seed"),
                );
                (
                    vec![sample_mixed(n, 0.5, &mut trial_rng(seed, 0))],
                    Some(seed),
                )
            } else {
                (
                    read_graphs(input.as_ref().expect("clap requires input"))?,
                    None,
                )
            };
            spectrum(cli.format, &graphs, seed).map(Outcome::from)
        }
        Command::Check { input } => check(cli.format, &read_graphs(input)?).map(Outcome::from),
    }
}

fn read_graphs(path: &PathBuf) -> Result<Vec<MixedGraph>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let graphs =
        parse_records(&text).with_context(|| format!("malformed graph file {}", path.display()))?;
    if graphs.is_empty() {
        bail!("no graph record in {}", path.display());
    }
    Ok(graphs)
}

/// Right-aligned columns separated by two spaces.
fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let joined: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(&joined.join("  "));
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn census(
    format: Format,
    min_n: usize,
    max_n: usize,
    exact: bool,
    verify: bool,
    limit: usize,
) -> Result<Outcome> {
    if min_n == 0 {
        bail!("--min-n must be at least 1");
    }
    if min_n > max_n {
        bail!("--min-n {min_n} is greater than --max-n {max_n}");
    }
    if max_n > limit {
        bail!("--max-n {max_n} exceeds the limit {limit}");
    }
    let census = Census::new(limit);
    let results: Vec<CensusResult> = (min_n..=max_n)
        .map(|n| census.selfconverse_fraction(n))
        .collect::<Result<_, _>>()?;
    let rows: Vec<CensusRow> = results.iter().map(CensusRow::from).collect();

    let report = match format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => table_json("census", &rows) + "\n",
        Format::Table => {
            let mut header = vec!["n", "M(n)", "S(n)", "f(n)"];
            if exact {
                header.push("S/M");
            }
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![
                        r.n.to_string(),
                        r.mixed_count.clone(),
                        r.selfconverse_count.clone(),
                        r.fraction.clone(),
                    ];
                    if exact {
                        row.push(r.fraction_exact.clone());
                    }
                    row
                })
                .collect();
            render_table(&header, &cells)
        }
    };
    let failures = if verify {
        check_reference(&results)
            .iter()
            .map(|m| format!("verification failed: {m}"))
            .collect()
    } else {
        Vec::new()
    };
    Ok(Outcome { report, failures })
}

fn oracle(format: Format, n: usize, allow_n5: bool) -> Result<String> {
    let census = brute_force_census(n, allow_n5)?;
    let rows = vec![OracleRow::from(&census)];
    Ok(match format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => table_json("oracle", &rows) + "\n",
        Format::Table => {
            let r = &rows[0];
            render_table(
                &[
                    "n",
                    "M(n)",
                    "S(n)",
                    "f(n)",
                    "labeled",
                    "labeled self-converse",
                ],
                &[vec![
                    r.n.to_string(),
                    r.mixed_count.clone(),
                    r.selfconverse_count.clone(),
                    r.fraction.clone(),
                    r.labeled_total.clone(),
                    r.labeled_selfconverse.clone(),
                ]],
            )
        }
    })
}

fn mc(
    format: Format,
    experiment: Experiment,
    cfg: &ExperimentConfig,
    workers: Option<usize>,
) -> Result<String> {
    let run = || match experiment {
        Experiment::Asymmetry => run_asymmetry_experiment(cfg),
        Experiment::Lemma1 => run_lemma1_experiment(cfg),
        Experiment::Selfconverse => run_selfconverse_experiment(cfg),
    };
    let report = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| anyhow!("cannot start {w} workers: {e}"))?
            .install(run)?,
        None => run()?,
    };
    Ok(match format {
        Format::Json => experiment_json(experiment.name(), cfg, &report) + "\n",
        Format::Csv => mc_csv(experiment, cfg, &report),
        Format::Table => mc_table(experiment, cfg, &report),
    })
}

fn mc_csv(experiment: Experiment, cfg: &ExperimentConfig, r: &ExperimentReport) -> String {
    format!(
        "experiment,n,p,trials,seed,epsilon,successes,estimate,stderr\n{},{},{},{},{},{},{},{},{}\n",
        experiment.name(),
        cfg.n,
        cfg.p,
        cfg.trials,
        cfg.seed,
        cfg.epsilon,
        r.successes,
        r.estimate,
        r.stderr
    )
}

fn mc_table(experiment: Experiment, cfg: &ExperimentConfig, r: &ExperimentReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "experiment: {}", experiment.name());
    let _ = writeln!(
        s,
        "n = {}, p = {}, trials = {}, seed = {}, epsilon = {}",
        cfg.n, cfg.p, cfg.trials, cfg.seed, cfg.epsilon
    );
    let _ = writeln!(
        s,
        "estimate: {:.6} (stderr {:.6}), {} of {} trials",
        r.estimate, r.stderr, r.successes, r.trials
    );
    for (name, value) in &r.statistics {
        let _ = writeln!(s, "{name}: {value}");
    }
    for (name, hist) in &r.histograms {
        let cells: Vec<String> = hist.iter().map(|(v, c)| format!("{v}:{c}")).collect();
        let _ = writeln!(s, "{name}: {}", cells.join(" "));
    }
    s
}

fn coeff_strings(p: &CharPoly) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

fn spectrum(format: Format, graphs: &[MixedGraph], seed: Option<u64>) -> Result<String> {
    struct Entry {
        n: usize,
        poly: CharPoly,
        converse: CharPoly,
    }
    let entries: Vec<Entry> = graphs
        .iter()
        .map(|x| {
            Ok(Entry {
                n: x.order(),
                poly: mixed_char_poly(x)?,
                converse: mixed_char_poly(&x.converse())?,
            })
        })
        .collect::<Result<_>>()?;

    Ok(match format {
        Format::Json => {
            let graphs: Vec<_> = entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "n": e.n,
                        "charpoly": coeff_strings(&e.poly),
                        "converse_charpoly": coeff_strings(&e.converse),
                        "cospectral": e.poly == e.converse,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema": SCHEMA_VERSION,
                "command": "spectrum",
                "seed": seed,
                "graphs": graphs,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("graph,n,charpoly,converse_charpoly,cospectral\n");
            for (i, e) in entries.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{i},{},\"{}\",\"{}\",{}",
                    e.n,
                    e.poly,
                    e.converse,
                    e.poly == e.converse
                );
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            if let Some(seed) = seed {
                let _ = writeln!(s, "seed: {seed}");
            }
            for (i, e) in entries.iter().enumerate() {
                if entries.len() > 1 {
                    let _ = writeln!(s, "graph {i}:");
                }
                let _ = writeln!(s, "charpoly: {}", e.poly);
                let _ = writeln!(s, "converse charpoly: {}", e.converse);
                let verdict = if e.poly == e.converse { "yes" } else { "no" };
                let _ = writeln!(s, "cospectral with converse: {verdict}");
            }
            s
        }
    })
}

fn check(format: Format, graphs: &[MixedGraph]) -> Result<String> {
    let witnesses: Vec<_> = graphs.iter().map(|x| is_self_converse(x).map).collect();
    Ok(match format {
        Format::Json => {
            let results: Vec<_> = witnesses
                .iter()
                .map(|w| {
                    serde_json::json!({
                        "self_converse": w.is_some(),
                        "witness": w.as_ref().map(|f| f.images().to_vec()),
                        "witness_cycles": w.as_ref().map(ToString::to_string),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema": SCHEMA_VERSION,
                "command": "check",
                "graphs": results,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("graph,self_converse,witness\n");
            for (i, w) in witnesses.iter().enumerate() {
                let cycles = w.as_ref().map(ToString::to_string).unwrap_or_default();
                let _ = writeln!(s, "{i},{},{cycles}", w.is_some());
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for (i, w) in witnesses.iter().enumerate() {
                if witnesses.len() > 1 {
                    let _ = write!(s, "graph {i}: ");
                }
                match w {
                    Some(f) => {
                        let _ = writeln!(s, "self-converse: yes, witness {f}");
                    }
                    None => s.push_str("self-converse: no\n"),
                }
            }
            s
        }
    })
}
