use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use confkit::automata::Alphabet;
use confkit::conformance::Language;
use confkit::models::{
    parse_aldebaran, Diagnostic, InternalLabels, LabelMode, LabelingConfig, Location, ModelKind,
    TransitionSystem,
};
use confkit::regex::parse_regex;

use crate::LanguageArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelType {
    Lts,
    Iolts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelsArg {
    /// `?a` is an input and `!x` an output.
    Markers,
    /// Labels are classified by --inputs and --outputs.
    Explicit,
}

#[derive(Debug, Args)]
pub struct ModelOptions {
    #[arg(long, value_enum, default_value_t = ModelType::Iolts)]
    pub model_type: ModelType,
    #[arg(long, value_enum, default_value_t = LabelsArg::Markers)]
    pub labels: LabelsArg,
    /// Comma-separated input labels (with --labels explicit).
    #[arg(long, value_delimiter = ',')]
    pub inputs: Vec<String>,
    /// Comma-separated output labels (with --labels explicit).
    #[arg(long, value_delimiter = ',')]
    pub outputs: Vec<String>,
    /// Treat header/body count mismatches as errors.
    #[arg(long)]
    pub strict: bool,
    /// Comma-separated tokens read as internal actions [default: tau,i]
    #[arg(long, env = "CONFKIT_INTERNAL_LABELS", hide_env_values = true)]
    pub internal_labels: Option<String>,
}

impl ModelOptions {
    pub fn is_iolts(&self) -> bool {
        self.model_type == ModelType::Iolts
    }

    fn labeling(&self) -> Result<LabelingConfig> {
        let lists_given = !self.inputs.is_empty() || !self.outputs.is_empty();
        let mut cfg = match (self.model_type, self.labels) {
            (ModelType::Lts, _) if lists_given => {
                bail!("--inputs/--outputs only apply to --model-type iolts")
            }
            (ModelType::Lts, _) => LabelingConfig::lts(),
            (ModelType::Iolts, LabelsArg::Markers) if lists_given => {
                bail!("--inputs/--outputs require --labels explicit")
            }
            (ModelType::Iolts, LabelsArg::Markers) => LabelingConfig::iolts_markers(),
            (ModelType::Iolts, LabelsArg::Explicit) if !lists_given => {
                bail!("--labels explicit needs --inputs and/or --outputs")
            }
            (ModelType::Iolts, LabelsArg::Explicit) => LabelingConfig {
                kind: ModelKind::Iolts,
                mode: LabelMode::Explicit {
                    inputs: self.inputs.iter().cloned().collect(),
                    outputs: self.outputs.iter().cloned().collect(),
                },
                ..LabelingConfig::lts()
            },
        };
        cfg.strict = self.strict;
        if let Some(list) = &self.internal_labels {
            cfg.internal = InternalLabels::parse_list(list);
        }
        Ok(cfg)
    }
}

pub struct Loaded {
    pub spec: TransitionSystem,
    pub iut: TransitionSystem,
}

pub fn pair(spec: &Path, iut: &Path, opts: &ModelOptions) -> Result<Loaded> {
    Ok(Loaded {
        spec: model(spec, opts)?,
        iut: model(iut, opts)?,
    })
}

/// Reads and parses one model, printing parse warnings to stderr.
pub fn model(path: &Path, opts: &ModelOptions) -> Result<TransitionSystem> {
    let labeling = opts.labeling()?;
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let parsed = parse_aldebaran(&text, &labeling)
        .map_err(|e| anyhow::anyhow!("{}: {}", path.display(), located(&e.to_diagnostic())))?;
    for d in &parsed.diagnostics {
        eprintln!("warning: {}: {}", path.display(), located(d));
    }
    Ok(parsed.system)
}

fn located(d: &Diagnostic) -> String {
    match &d.location {
        Location::Line(l) => format!("line {l}: {}", d.message),
        Location::State(_) | Location::Unknown => d.message.clone(),
    }
}

pub fn alphabet(models: &[&TransitionSystem]) -> Result<Alphabet> {
    let mut out = Alphabet::default();
    for m in models {
        out = out.union(&Alphabet::of_system(m))?;
    }
    Ok(out)
}

pub fn languages(args: &LanguageArgs, alphabet: &Alphabet) -> Result<(Language, Language)> {
    let parse = |flag: &str, text: &Option<String>| -> Result<Option<Language>> {
        match text.as_deref().map(str::trim) {
            None | Some("") => Ok(None),
            Some(t) => parse_regex(t, alphabet)
                .map(|ast| Some(Language::Regex(ast)))
                .with_context(|| format!("--{flag} `{t}`")),
        }
    };
    let d = parse("desirable", &args.desirable)?.unwrap_or(Language::Default);
    let f = parse("undesirable", &args.undesirable)?.unwrap_or(
        if args.blank_undesirable_is_universal {
            Language::Universal
        } else {
            Language::Default
        },
    );
    Ok((d, f))
}
