//! `confkit`: check an implementation model against a specification under
//! ioco or language-based conformance, and export models as DOT.
//!
//! Exit status: 0 conforms, 1 does not conform, 2 usage or input error.

mod load;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use confkit::automata::induced_fsa;
use confkit::conformance::{
    fault_model_ioco, fault_model_language, verify_ioco, verify_language, Bound, VerifyOptions,
};
use confkit::models::to_dot;

use load::{Loaded, ModelOptions};

#[derive(Debug, Parser)]
#[command(
    name = "confkit",
    version,
    about = "Conformance checking for (IO)LTS models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the IUT ioco-conforms to the spec.
    CheckIoco(CheckArgs),
    /// Decide language-based conformance for desirable/undesirable behaviour.
    CheckLang(LangArgs),
    /// Print a model or a derived automaton in Graphviz DOT.
    Render(RenderArgs),
    /// Summarize a model file.
    Info(InfoArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Specification model (.aut)
    #[arg(long)]
    spec: PathBuf,
    /// Implementation model (.aut)
    #[arg(long)]
    iut: PathBuf,
    #[command(flatten)]
    model: ModelOptions,
    /// Longest fault word to enumerate: a number or `auto`.
    #[arg(long, default_value = "auto", value_parser = parse_bound)]
    bound: Bound,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include elapsed time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct LangArgs {
    #[command(flatten)]
    check: CheckArgs,
    #[command(flatten)]
    languages: LanguageArgs,
}

#[derive(Debug, Args)]
struct LanguageArgs {
    /// Desirable behaviour D as a regular expression; blank means every word.
    #[arg(long)]
    desirable: Option<String>,
    /// Undesirable behaviour F as a regular expression; blank means no word.
    #[arg(long)]
    undesirable: Option<String>,
    /// Treat a blank --undesirable as every word instead of no word.
    #[arg(long)]
    blank_undesirable_is_universal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Model,
    Induced,
    FaultIoco,
    FaultLang,
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// Model file (.aut)
    path: PathBuf,
    #[arg(long, value_enum, default_value_t = What::Model)]
    what: What,
    #[command(flatten)]
    model: ModelOptions,
    #[command(flatten)]
    languages: LanguageArgs,
    /// Write the DOT text to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InfoArgs {
    /// Model file (.aut)
    path: PathBuf,
    #[command(flatten)]
    model: ModelOptions,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_bound(s: &str) -> Result<Bound, String> {
    if s == "auto" {
        return Ok(Bound::Auto);
    }
    s.parse()
        .map(Bound::Fixed)
        .map_err(|_| format!("expected a number or `auto`, got `{s}`"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::CheckIoco(args) => check_ioco(args),
        Command::CheckLang(args) => check_lang(args),
        Command::Render(args) => render(args),
        Command::Info(args) => info(args),
    }
}

fn verdict_exit(conforms: bool) -> ExitCode {
    if conforms {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check_ioco(args: CheckArgs) -> Result<ExitCode> {
    if !args.model.is_iolts() {
        bail!("check-ioco needs input/output labels; use --model-type iolts");
    }
    let Loaded { spec, iut } = load::pair(&args.spec, &args.iut, &args.model)?;
    let verdict = verify_ioco(&spec, &iut, VerifyOptions { bound: args.bound })?;
    report::verdict(&verdict, args.format, args.timing)?;
    Ok(verdict_exit(verdict.conforms))
}

fn check_lang(args: LangArgs) -> Result<ExitCode> {
    let check = args.check;
    let Loaded { spec, iut } = load::pair(&check.spec, &check.iut, &check.model)?;
    let alphabet = load::alphabet(&[&spec, &iut])?;
    let (d, f) = load::languages(&args.languages, &alphabet)?;
    let verdict = verify_language(&spec, &iut, &d, &f, VerifyOptions { bound: check.bound })?;
    report::verdict(&verdict, check.format, check.timing)?;
    Ok(verdict_exit(verdict.conforms))
}

fn render(args: RenderArgs) -> Result<ExitCode> {
    let ts = load::model(&args.path, &args.model)?;
    let dot = match args.what {
        What::Model => to_dot(&ts),
        What::Induced => induced_fsa(&ts).to_dot(),
        What::FaultIoco => {
            if !args.model.is_iolts() {
                bail!("the ioco fault model needs --model-type iolts");
            }
            fault_model_ioco(&ts)?.automaton.to_dot()
        }
        What::FaultLang => {
            let alphabet = load::alphabet(&[&ts])?;
            let (d, f) = load::languages(&args.languages, &alphabet)?;
            fault_model_language(&ts, &d, &f)?.automaton.to_dot()
        }
    };
    match args.out {
        Some(path) => std::fs::write(&path, dot)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{dot}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn info(args: InfoArgs) -> Result<ExitCode> {
    let ts = load::model(&args.path, &args.model)?;
    report::info(&ts, args.format)?;
    Ok(ExitCode::SUCCESS)
}
