use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Arg, ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};

use sentiscope::pipeline::{self, PipelineConfig, PipelineError, KEYS};

/// Sentiment timelines and outlier regions for multilingual tweet streams.
///
/// Every configuration key can be given in the --config file as `key = value`
/// or on the command line as `--key value`; the command line wins.
#[derive(Parser, Debug)]
#[command(name = "sentiscope", version)]
struct Cli {
    /// Configuration file (flat `key = value` lines)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Map source embeddings into the target space with a bilingual dictionary
    Align,
    /// Train the LSTM scorer on labeled text
    Train,
    /// Score every record of the corpus
    Score,
    /// Score the corpus and write the report, scores CSV and timeline SVG
    Analyze,
    /// Write the report from a previous `score` run
    Report,
}

fn command() -> clap::Command {
    let keys = KEYS.iter().map(|(key, default, help)| {
        let flag = key.replace('_', "-");
        let help = match default {
            Some(d) => format!("{help} [default: {d}]"),
            None => help.to_string(),
        };
        let arg = Arg::new(*key).long(flag.clone()).value_name("VALUE").help(help).global(true);
        if flag != *key {
            arg.alias(*key)
        } else {
            arg
        }
    });
    Cli::command().args(keys)
}

fn overrides(matches: &ArgMatches) -> Vec<(String, String)> {
    let sub = matches.subcommand().map(|(_, m)| m);
    KEYS.iter()
        .filter_map(|(key, _, _)| {
            sub.and_then(|m| m.get_one::<String>(key))
                .or_else(|| matches.get_one::<String>(key))
                .map(|v| (key.to_string(), v.clone()))
        })
        .collect()
}

fn run(cli: &Cli, matches: &ArgMatches) -> Result<(), PipelineError> {
    let file = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => Vec::new(),
    };
    let cfg = PipelineConfig::default().with(file)?.with(overrides(matches))?;
    match cli.command {
        Command::Align => {
            let s = pipeline::run_align(&cfg)?;
            println!("wrote {}", s.output.display());
            println!("dictionary pairs used: {} (skipped {})", s.pairs_used, s.pairs_skipped);
            println!("orthogonality residual: {:e}", s.orthogonality_residual);
            println!("alignment error: {:e}", s.alignment_error);
        }
        Command::Train => {
            let s = pipeline::run_train(&cfg)?;
            for e in &s.report.epochs {
                println!(
                    "epoch {}: train loss {:.4} acc {:.4}{}",
                    e.epoch,
                    e.train_loss,
                    e.train_accuracy,
                    match (e.valid_loss, e.valid_accuracy) {
                        (Some(l), Some(a)) => format!(", valid loss {l:.4} acc {a:.4}"),
                        _ => String::new(),
                    }
                );
            }
            if let Some(acc) = s.report.test_accuracy {
                println!("test accuracy {acc:.4}");
            }
            println!("wrote {} and {}", s.weights.display(), s.metrics.display());
        }
        Command::Score => {
            let s = pipeline::run_score(&cfg)?;
            let scored = s.records.iter().filter(|r| r.score.is_some()).count();
            println!("scored {scored} of {} records", s.records.len());
        }
        Command::Analyze | Command::Report => {
            let (a, paths) = if matches!(cli.command, Command::Analyze) {
                pipeline::run_analyze(&cfg)?
            } else {
                pipeline::run_report(&cfg)?
            };
            let r = &a.report;
            println!(
                "{} of {} records scored; {} outliers in {} regions",
                r.corpus.scored,
                r.corpus.total,
                r.esd.num_outliers,
                r.regions.len()
            );
            println!("wrote {}, {}, {}", paths.report.display(), paths.csv.display(), paths.svg.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let matches = command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli, &matches) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
