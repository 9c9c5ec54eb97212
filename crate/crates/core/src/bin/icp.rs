use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use mvms_icp::experiments::{cmd_complexity, cmd_linearity, cmd_montecarlo, cmd_run, cmd_secrecy, ExperimentReport};
use mvms_icp::simnet::ConfigBuilder;
use mvms_icp::SessionConfig;

#[derive(Parser)]
#[command(name = "icp", about = "Run information checking sessions and experiments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// key=value configuration file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    t: Option<usize>,
    #[arg(long, global = true)]
    ell: Option<usize>,
    #[arg(long, global = true, conflicts_with = "epsilon")]
    kappa: Option<u32>,
    /// e.g. 0.012, 2^-40, 3*2^-8
    #[arg(long, global = true)]
    epsilon: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    rushing: Option<bool>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=2))]
    reveal_rounds: Option<u8>,
    #[arg(long, global = true)]
    corrupt_dealer: bool,
    #[arg(long, global = true)]
    corrupt_int: bool,
    /// comma-separated verifier indices
    #[arg(long, global = true)]
    corrupt_verifiers: Option<String>,
    /// honest, forging-int, guessing-int, inconsistent-dealer-b,
    /// inconsistent-dealer-c, d-guessing-dealer, rushing-int-one-round
    #[arg(long, global = true)]
    strategy: Option<String>,
    /// transcript path for `run`, JSON report path otherwise
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// print the JSON report instead of the text summary
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// One session
    Run,
    /// Seeded sweep of sessions with a Wilson interval
    Montecarlo {
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Exhaustive check that the corrupted verifiers learn nothing
    Secrecy {
        #[arg(long)]
        leak_one_honest_triple: bool,
        #[arg(long, default_value_t = 1)]
        sessions: u64,
    },
    /// Combine q signatures and reveal the sum
    Linearity {
        /// number of signatures, 2 unless set
        #[arg(long)]
        q: Option<usize>,
        /// comma-separated offset block of length ell
        #[arg(long)]
        offsets: Option<String>,
        /// comma-separated instances whose secrets the dealer publishes
        #[arg(long)]
        public_instances: Option<String>,
    },
    /// Analytic against measured communication
    Complexity,
}

fn file_builder(path: &Path) -> anyhow::Result<ConfigBuilder> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut b = ConfigBuilder::default();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').with_context(|| format!("expected key=value, got {line}"))?;
        b.set(k.trim(), v.trim())?;
    }
    Ok(b)
}

fn flag_builder(g: &Global, command: &Command) -> anyhow::Result<ConfigBuilder> {
    let mut pairs: Vec<(&str, Option<String>)> = vec![
        ("n", g.n.map(|x| x.to_string())),
        ("t", g.t.map(|x| x.to_string())),
        ("ell", g.ell.map(|x| x.to_string())),
        ("kappa", g.kappa.map(|x| x.to_string())),
        ("epsilon", g.epsilon.clone()),
        ("seed", g.seed.map(|x| x.to_string())),
        ("rushing", g.rushing.map(|x| x.to_string())),
        ("reveal_rounds", g.reveal_rounds.map(|x| x.to_string())),
        ("corrupt_dealer", g.corrupt_dealer.then(|| "true".into())),
        ("corrupt_int", g.corrupt_int.then(|| "true".into())),
        ("corrupt_verifiers", g.corrupt_verifiers.clone()),
        ("strategy", g.strategy.clone()),
    ];
    if let Command::Linearity { q, offsets, .. } = command {
        pairs.push(("q", q.map(|x| x.to_string())));
        pairs.push(("offsets", offsets.clone()));
    }
    let mut b = ConfigBuilder::default();
    for (k, v) in pairs {
        if let Some(v) = v {
            b.set(k, &v)?;
        }
    }
    Ok(b)
}

fn config(cli: &Cli) -> anyhow::Result<SessionConfig> {
    let flags = flag_builder(&cli.global, &cli.command)?;
    let mut b = match &cli.global.config {
        Some(path) => file_builder(path)?,
        None => ConfigBuilder::default(),
    };
    // an epsilon flag replaces a kappa taken from the file
    if flags.epsilon.is_some() && flags.kappa.is_none() {
        b.kappa = None;
    }
    b.merge(flags);
    if matches!(cli.command, Command::Linearity { .. }) && b.q.is_none() {
        b.q = Some(2);
    }
    Ok(b.build()?)
}

fn execute(cli: &Cli) -> anyhow::Result<ExperimentReport> {
    let cfg = config(cli)?;
    let report = match &cli.command {
        Command::Run => cmd_run(&cfg, cli.global.out.as_deref())?,
        Command::Montecarlo { trials } => cmd_montecarlo(&cfg, *trials, cfg.seed)?,
        Command::Secrecy { leak_one_honest_triple, sessions } => cmd_secrecy(&cfg, *sessions, *leak_one_honest_triple)?,
        Command::Linearity { public_instances, .. } => {
            let public = match public_instances {
                Some(s) => s
                    .split(',')
                    .map(|j| j.trim().parse::<usize>().with_context(|| format!("bad instance index {j}")))
                    .collect::<anyhow::Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            cmd_linearity(&cfg.params, cfg.instances, cfg.offset.clone(), &public, cfg.seed)?
        }
        Command::Complexity => cmd_complexity(&cfg.params, cfg.seed)?,
    };
    if !matches!(cli.command, Command::Run) {
        if let Some(path) = &cli.global.out {
            std::fs::write(path, report.to_json_with_time()).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            if cli.global.json {
                println!("{}", report.body_json());
            } else {
                print!("{}", report.human());
            }
            ExitCode::from(report.exit_code())
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
