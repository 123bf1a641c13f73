mod config;
mod run;
mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use su2k_core::anyon::{AnyonModel, Encoding, GeneratorSet};
use su2k_core::fixtures::{verify, FixtureSet};
use su2k_core::search::{Engine, SearchConfig, SearchError};

use run::{compile, default_threshold, fmt_matrix, ResultRecord, RunSpec, Target};
use sweep::{parse_list, write_csv, Axis, SweepSpec};

/// SU(2)_k anyon braid compiler.
#[derive(Parser, Debug)]
#[command(name = "su2k", version, about)]
struct Cli {
    /// Worker threads (default: hardware parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print elementary braiding matrices and braid-relation residuals
    Ebm(EbmArgs),
    /// Compile one target into a braidword and emit a JSON record
    Compile(CompileArgs),
    /// Re-evaluate the reference fixtures
    Verify(VerifyArgs),
    /// Run a grid of compilations and emit CSV rows
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct EbmArgs {
    #[arg(long)]
    k: u32,
    #[arg(long, default_value = "one_qubit")]
    encoding: Encoding,
    /// Qubit anyon label (doubled spin); defaults to the model's choice
    #[arg(long)]
    label: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// key = value file with SearchConfig fields
    #[arg(long, env = "SU2K_CONFIG")]
    config: Option<PathBuf>,
    /// Override a config field, e.g. --set generations=50
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Include inverse letters (default: yes for one-qubit, no for two-qubit)
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    inverses: Option<bool>,
}

#[derive(Args, Debug)]
struct CompileArgs {
    #[arg(long)]
    k: u32,
    /// H, T, CNOT, SWAP or custom
    #[arg(long)]
    target: String,
    /// Matrix file for --target custom
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Must agree with the target when given
    #[arg(long)]
    encoding: Option<Encoding>,
    /// exhaustive, ga or sk (default: sk with --sk-level, else by length)
    #[arg(long)]
    engine: Option<Engine>,
    /// Word length (level-0 length for sk)
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    sk_level: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    search: SearchArgs,
    /// Write the JSON record here as well as to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall time in the record (makes it non-reproducible)
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Fixture file (default: the bundled reference)
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Print failing fixtures only
    #[arg(long)]
    quiet: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Levels, e.g. 3,5,6,7
    #[arg(long, default_value = "5")]
    k: String,
    #[arg(long)]
    target: String,
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    encoding: Option<Encoding>,
    /// Word lengths, e.g. 1..31
    #[arg(long, conflicts_with = "sk_levels")]
    lengths: Option<String>,
    /// Solovay-Kitaev levels, e.g. 0..3
    #[arg(long)]
    sk_levels: Option<String>,
    #[arg(long, default_value = "0")]
    seeds: String,
    /// Longest exhaustive length (default 13, or 7 with inverses)
    #[arg(long)]
    threshold: Option<usize>,
    #[command(flatten)]
    search: SearchArgs,
    /// CSV output (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SearchArgs {
    fn config(&self) -> Result<SearchConfig> {
        let mut cfg = SearchConfig::default();
        if let Some(path) = &self.config {
            config::load(path, &mut cfg)?;
        }
        config::apply_overrides(&mut cfg, &self.sets)?;
        Ok(cfg)
    }

    fn inverses(&self, encoding: Encoding) -> bool {
        self.inverses.unwrap_or(encoding == Encoding::OneQubit)
    }
}

/// A usage error (exit code 1) raised after argument parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn target_for(name: &str, matrix: Option<&Path>, encoding: Option<Encoding>) -> Result<Target> {
    let target = Target::parse(name, matrix).map_err(|e| usage(format!("{e:#}")))?;
    if let Some(enc) = encoding {
        if enc != target.encoding() {
            return Err(usage(format!(
                "target {} needs encoding {}, not {enc}",
                target.name(),
                target.encoding()
            )));
        }
    }
    Ok(target)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    if let Some(path) = path {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn print_generators<const D: usize>(gens: &GeneratorSet<D>, out: &mut String) {
    for (i, g) in gens.matrices().iter().enumerate() {
        out.push_str(&format!("sigma{}\n", i + 1));
        out.push_str(&fmt_matrix(g));
    }
    let r = gens.relation_residuals();
    out.push_str(&format!(
        "residuals yang_baxter={:.3e} far_commutation={:.3e} unitarity={:.3e}\n",
        r.yang_baxter, r.far_commutation, r.unitarity
    ));
}

fn cmd_ebm(args: &EbmArgs) -> Result<ExitCode> {
    let model = match args.label {
        Some(label) => AnyonModel::with_qubit_label(args.k, label),
        None => AnyonModel::new(args.k),
    }
    .map_err(|e| usage(e.to_string()))?;
    let mut out = format!(
        "k={} encoding={} label={}\n",
        args.k,
        args.encoding,
        model.qubit_label().0
    );
    match args.encoding {
        Encoding::OneQubit => print_generators(&model.one_qubit_generators(), &mut out),
        Encoding::TwoQubit => print_generators(&model.two_qubit_generators(), &mut out),
    }
    print!("{out}");
    write_out(args.out.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_compile(args: &CompileArgs) -> Result<ExitCode> {
    let target = target_for(&args.target, args.matrix.as_deref(), args.encoding)?;
    let mut cfg = args.search.config().map_err(|e| usage(format!("{e:#}")))?;
    if let Some(seed) = args.seed {
        cfg.rng_seed = seed;
    }
    let inverses = args.search.inverses(target.encoding());
    let engine = match (args.engine, args.sk_level) {
        (Some(e), _) => e,
        (None, Some(_)) => Engine::Sk,
        (None, None) => match args.length {
            Some(l) if l <= default_threshold(inverses) => Engine::Exhaustive,
            Some(_) => Engine::Ga,
            None => return Err(usage("give --length or --sk-level")),
        },
    };
    let length = match (engine, args.length) {
        (_, Some(l)) => l,
        (Engine::Sk, None) => cfg.base_length,
        (_, None) => return Err(usage("give --length")),
    };
    let spec = RunSpec {
        k: args.k,
        target,
        engine,
        length,
        sk_level: args.sk_level,
        inverses,
        cfg,
    };
    spec.validate().map_err(|e| usage(format!("{e:#}")))?;
    let (result, label) = compile(&spec)?;
    eprintln!(
        "{} {} d={:.3e} ({:.1} ms)",
        result.engine,
        result.word,
        result.distance,
        result.wall_time.as_secs_f64() * 1e3
    );
    let record = ResultRecord::new(&spec, label, &result, args.timing);
    let json = serde_json::to_string_pretty(&record)? + "\n";
    print!("{json}");
    write_out(args.out.as_deref(), &json)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let set = match &args.fixtures {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            FixtureSet::parse(&text)?
        }
        None => FixtureSet::reference(),
    };
    let checks = verify(&set);
    let mut stdout = std::io::stdout().lock();
    for c in &checks {
        if args.quiet && c.pass {
            continue;
        }
        writeln!(
            stdout,
            "{} [{}] {}: error {:.3e} (limit {:.0e}) {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.group,
            c.name,
            c.error,
            c.limit,
            c.detail
        )?;
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    writeln!(
        stdout,
        "{} of {} fixtures pass",
        checks.len() - failed.len(),
        checks.len()
    )?;
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        writeln!(stdout, "failing: {}", failed.join("; "))?;
        Ok(ExitCode::from(2))
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<ExitCode> {
    let target = target_for(&args.target, args.matrix.as_deref(), args.encoding)?;
    let cfg = args.search.config().map_err(|e| usage(format!("{e:#}")))?;
    let inverses = args.search.inverses(target.encoding());
    let list = |s: &str| parse_list(s).map_err(|e| usage(format!("{e:#}")));
    let models = list(&args.k)?.into_iter().map(|k| k as u32).collect();
    let seeds = list(&args.seeds)?;
    let axis = match (&args.lengths, &args.sk_levels) {
        (Some(l), None) => Axis::Lengths(list(l)?.into_iter().map(|x| x as usize).collect()),
        (None, Some(l)) => Axis::SkLevels(list(l)?.into_iter().map(|x| x as u32).collect()),
        _ => return Err(usage("give --lengths or --sk-levels")),
    };
    if matches!(axis, Axis::SkLevels(_)) && target.encoding() != Encoding::OneQubit {
        return Err(usage("--sk-levels needs a one-qubit target"));
    }
    let spec = SweepSpec {
        models,
        target,
        axis,
        seeds,
        inverses,
        threshold: args.threshold.unwrap_or(default_threshold(inverses)),
        cfg,
    };
    let rows = spec.run()?;
    match &args.out {
        Some(path) => {
            let file =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&rows, file)?;
        }
        None => write_csv(&rows, std::io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 1;
    }
    match err.downcast_ref::<SearchError>() {
        Some(SearchError::BudgetExceeded { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match &cli.command {
        Command::Ebm(a) => cmd_ebm(a),
        Command::Compile(a) => cmd_compile(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
