//! Command-line front end. Every command reads JSON or CSV, writes one JSON
//! document, and maps failures to exit codes through [`CliError`].

use std::fs;
use std::io::{self, Read, Write};
use std::sync::Arc;

use casebelief_core::cases::random_set_lift;
use casebelief_core::conditional::{
    approximate_conditional, cano_conditional_exists, conditional_independence, decomposition_exists,
    is_marginally_consistent, marginally_correct, marginally_correct_joint, ApproxOptions, CoverRule, Split, Strategy,
    DEFAULT_FRAME_CAP,
};
use casebelief_core::propagation::{
    default_reorient_options, propagate, propagate_with_schedule, reorient_for_target, verify, EvidenceSet,
    EvidentialPolytree,
};
use casebelief_core::{CaseTable, JointFrame, MassFunction, ValueSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::cases_csv::read_cases;
use crate::error::CliError;
use crate::json::{self, MassDoc};

#[derive(Debug, Parser)]
#[command(name = "casebelief", version, about = "Belief functions from set-valued case data")]
pub struct Cli {
    /// Output file, `-` for stdout.
    #[arg(short, long, global = true, default_value = "-")]
    pub output: String,
    /// Log progress to stderr; repeat for more detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mass function of a case table.
    Bpa(CasesArgs),
    /// Relative frequencies of a table with single-valued cells.
    Prob(CasesArgs),
    /// Condition a mass function (shafer) or a case table (cases) on `X ∈ A`.
    Condition(ConditionArgs),
    /// Condition a case table on several events in turn.
    SerialCondition(SerialArgs),
    /// Normalized combination of two mass functions on the same frame.
    Combine { a: String, b: String },
    /// Projection onto a subset of the variables.
    Marginalize {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
    /// Vacuous extension onto the frame named by another document.
    Extend {
        input: String,
        /// Any JSON document with a `variables` list.
        #[arg(long)]
        frame: String,
    },
    /// Proper, pseudo or invalid.
    Classify { input: String },
    /// Replace every focal element by its smallest enclosing box.
    Hull { input: String },
    /// Belief function induced by a distribution and a multivalued mapping.
    Lift {
        /// JSON object from source label to probability.
        #[arg(long)]
        distribution: String,
        /// JSON document with `variables` and a `mapping` from label to set.
        #[arg(long)]
        mapping: String,
    },
    /// Approximate conditional of the rest given `--given`.
    ApproxCond(ApproxArgs),
    /// Does a marginally consistent Cano-type conditional exist?
    ExistsCond(ExistsArgs),
    /// Does the joint factor exactly as marginal ⊕ Cano-type conditional?
    ExistsDecomp(ExistsArgs),
    /// Is a conditional marginally consistent with a joint?
    CheckConsistency {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        given: Vec<String>,
        #[arg(long)]
        conditional: String,
    },
    /// Is an approximation dominated in belief by a reference?
    CheckCorrectness {
        #[arg(long)]
        reference: String,
        #[arg(long)]
        approx: String,
    },
    /// Conditional independence of `--p` and `--q` given `--r`.
    Indep {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<String>,
    },
    /// Structural and valuation checks on a network.
    NetValidate { input: String },
    /// Reorient a network toward a target.
    Reorient(NetArgs),
    /// Belief on the target given the evidence.
    Propagate(PropagateArgs),
    /// Compare propagation against the conditioned joint.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CasesArgs {
    /// CSV case table, `-` for stdin.
    pub input: String,
    /// Fix the domains from a JSON document with a `variables` list.
    #[arg(long)]
    pub frame: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConditionMode {
    /// `m ⊕ m_A` on a mass function.
    Shafer,
    /// Update the cells of a case table.
    Cases,
}

#[derive(Debug, Args)]
pub struct ConditionArgs {
    /// Mass JSON (shafer) or CSV case table (cases).
    pub input: String,
    #[arg(long, value_enum, default_value = "shafer")]
    pub mode: ConditionMode,
    #[arg(long)]
    pub var: String,
    /// Values separated by `|`.
    #[arg(long)]
    pub set: String,
    /// Frame for the case table (cases mode only).
    #[arg(long)]
    pub frame: Option<String>,
}

#[derive(Debug, Args)]
pub struct SerialArgs {
    pub input: String,
    /// `X=x1|x2`, applied in the order given.
    #[arg(long = "cond", required = true)]
    pub conditions: Vec<String>,
    /// Keep each original cell instead of narrowing it.
    #[arg(long)]
    pub naive: bool,
    #[arg(long)]
    pub frame: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Greedy,
    Exhaustive,
    Stochastic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoverArg {
    Union,
    Tightest,
}

#[derive(Debug, Args)]
pub struct StrategyFlags {
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Seed for the stochastic strategy.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub cover: Option<CoverArg>,
    /// Stochastic restarts, including the greedy one.
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Selections the exhaustive search may evaluate.
    #[arg(long)]
    pub node_budget: Option<usize>,
}

impl StrategyFlags {
    fn apply(&self, mut options: ApproxOptions) -> ApproxOptions {
        if let Some(s) = self.strategy {
            options.strategy = match s {
                StrategyArg::Greedy => Strategy::Greedy,
                StrategyArg::Exhaustive => Strategy::Exhaustive,
                StrategyArg::Stochastic => Strategy::Stochastic,
            };
        }
        if let Some(c) = self.cover {
            options.cover = Some(match c {
                CoverArg::Union => CoverRule::Union,
                CoverArg::Tightest => CoverRule::Tightest,
            });
        }
        if self.seed.is_some() {
            options.seed = self.seed;
        }
        if let Some(r) = self.restarts {
            options.restarts = r;
        }
        if let Some(b) = self.node_budget {
            options.node_budget = b;
        }
        options
    }
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    pub input: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub given: Vec<String>,
    #[command(flatten)]
    pub flags: StrategyFlags,
}

#[derive(Debug, Args)]
pub struct ExistsArgs {
    pub input: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub given: Vec<String>,
    /// Largest joint frame the decider accepts.
    #[arg(long, default_value_t = DEFAULT_FRAME_CAP)]
    pub cap: usize,
    /// Exit with 1 when the answer is infeasible.
    #[arg(long)]
    pub require_feasible: bool,
}

#[derive(Debug, Args)]
pub struct NetArgs {
    pub input: String,
    #[arg(long)]
    pub target: String,
    #[command(flatten)]
    pub flags: StrategyFlags,
}

#[derive(Debug, Args)]
pub struct PropagateArgs {
    #[command(flatten)]
    pub net: NetArgs,
    /// `X=x1|x2`; repeat for several variables.
    #[arg(long)]
    pub evidence: Vec<String>,
    /// Order in which the non-target nodes send their messages.
    #[arg(long, value_delimiter = ',')]
    pub schedule: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub net: NetArgs,
    #[arg(long)]
    pub evidence: Vec<String>,
    /// Joint mass function to condition instead of the network's own joint.
    #[arg(long)]
    pub reference: Option<String>,
}

/// Reads a whole input; `-` is stdin.
pub fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|source| CliError::Io { path: path.to_string(), source })?;
    Ok(text)
}

fn origin(path: &str) -> &str {
    if path == "-" {
        "<stdin>"
    } else {
        path
    }
}

fn parse_json<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::format(origin(path), e.to_string()))
}

pub fn load_mass(path: &str) -> Result<MassFunction, CliError> {
    let doc: MassDoc = parse_json(path)?;
    json::mass_from_doc(&doc).map_err(|e| CliError::format(origin(path), e))
}

pub fn load_frame(path: &str) -> Result<Arc<JointFrame>, CliError> {
    let doc: json::FrameDoc = parse_json(path)?;
    json::frame_from_doc(&doc.variables).map_err(|e| CliError::format(origin(path), e))
}

pub fn load_network(path: &str) -> Result<EvidentialPolytree, CliError> {
    let doc: json::NetworkDoc = parse_json(path)?;
    json::network_from_doc(&doc).map_err(|e| CliError::format(origin(path), e))
}

pub fn load_cases(path: &str, frame: Option<&str>) -> Result<CaseTable, CliError> {
    let frame = frame.map(load_frame).transpose()?;
    let text = read_input(path)?;
    read_cases(text.as_bytes(), origin(path), frame.as_ref())
}

/// Splits `X=x1|x2` into the variable and its labels.
pub fn parse_observation(text: &str) -> Result<(String, Vec<String>), CliError> {
    let (var, values) =
        text.split_once('=').ok_or_else(|| CliError::Usage(format!("`{text}` should look like X=x1|x2")))?;
    let labels: Vec<String> = values.split('|').map(|s| s.trim().to_string()).collect();
    if var.trim().is_empty() || labels.iter().any(String::is_empty) {
        return Err(CliError::Usage(format!("`{text}` should look like X=x1|x2")));
    }
    Ok((var.trim().to_string(), labels))
}

fn labels(text: &str) -> Vec<String> {
    text.split('|').map(|s| s.trim().to_string()).collect()
}

fn value_set(frame: &JointFrame, var: &str, text: &str) -> Result<ValueSet, CliError> {
    Ok(frame.value_set(var, &labels(text))?)
}

fn evidence(items: &[String]) -> Result<EvidenceSet, CliError> {
    let mut ev = EvidenceSet::new();
    for item in items {
        let (var, labels) = parse_observation(item)?;
        ev.observe(&var, &labels)?;
    }
    Ok(ev)
}

fn mass_out(m: &MassFunction) -> String {
    json::render(&json::mass_doc(m))
}

/// Runs one command and returns the document to write.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Bpa(a) => Ok(mass_out(&load_cases(&a.input, a.frame.as_deref())?.bpa()?)),
        Command::Prob(a) => Ok(mass_out(&load_cases(&a.input, a.frame.as_deref())?.probability()?)),
        Command::Condition(a) => {
            let m = match a.mode {
                ConditionMode::Shafer => {
                    if a.frame.is_some() {
                        return Err(CliError::Usage("--frame only applies to --mode cases".into()));
                    }
                    let m = load_mass(&a.input)?;
                    let set = value_set(m.frame(), &a.var, &a.set)?;
                    m.condition_shafer(&a.var, set)?
                }
                ConditionMode::Cases => {
                    let t = load_cases(&a.input, a.frame.as_deref())?;
                    let set = value_set(t.frame(), &a.var, &a.set)?;
                    t.condition(&a.var, set)?
                }
            };
            Ok(mass_out(&m))
        }
        Command::SerialCondition(a) => {
            let t = load_cases(&a.input, a.frame.as_deref())?;
            let mut conditions = Vec::with_capacity(a.conditions.len());
            for c in &a.conditions {
                let (var, labels) = parse_observation(c)?;
                let set = t.frame().value_set(&var, &labels)?;
                conditions.push((var, set));
            }
            let m = if a.naive { t.naive_serial_condition(&conditions)? } else { t.serial_condition(&conditions)? };
            Ok(mass_out(&m))
        }
        Command::Combine { a, b } => {
            if a == "-" && b == "-" {
                return Err(CliError::Usage("only one input can come from stdin".into()));
            }
            let (m, k) = load_mass(a)?.combine(&load_mass(b)?)?;
            Ok(json::render(&json::CombineDoc { mass: json::mass_doc(&m), conflict: (&k).into() }))
        }
        Command::Marginalize { input, vars } => Ok(mass_out(&load_mass(input)?.marginalize(vars)?)),
        Command::Extend { input, frame } => {
            if input == "-" && frame == "-" {
                return Err(CliError::Usage("only one input can come from stdin".into()));
            }
            Ok(mass_out(&load_mass(input)?.vacuous_extend(&load_frame(frame)?)?))
        }
        Command::Classify { input } => {
            let m = load_mass(input)?;
            Ok(json::render(&json!({ "classification": m.classify().as_str() })))
        }
        Command::Hull { input } => Ok(mass_out(&load_mass(input)?.box_hull())),
        Command::Lift { distribution, mapping } => {
            if distribution == "-" && mapping == "-" {
                return Err(CliError::Usage("only one input can come from stdin".into()));
            }
            let dist: indexmap::IndexMap<String, String> = parse_json(distribution)?;
            let p = dist
                .iter()
                .map(|(k, v)| {
                    Ok((k.clone(), json::parse_rational(v, k).map_err(|e| CliError::format(origin(distribution), e))?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let doc: json::MappingDoc = parse_json(mapping)?;
            let frame = json::frame_from_doc(&doc.variables).map_err(|e| CliError::format(origin(mapping), e))?;
            let mut map = std::collections::BTreeMap::new();
            for (label, set) in &doc.mapping {
                let s = json::set_from_doc(&frame, set)
                    .map_err(|e| CliError::format(origin(mapping), format!("mapping.{label}: {e}")))?;
                if s.is_empty() {
                    return Err(CliError::format(origin(mapping), format!("mapping.{label}: empty set")));
                }
                map.insert(label.clone(), s);
            }
            Ok(mass_out(&random_set_lift(frame, &p, &map)?))
        }
        Command::ApproxCond(a) => {
            let m = load_mass(&a.input)?;
            let options = a.flags.apply(ApproxOptions::new(Strategy::Greedy));
            let split = Split::new(m.frame(), &a.given)?;
            let result = approximate_conditional(&m, &a.given, &options)?;
            Ok(json::render(&json::approx_doc(&split, &options, &result)))
        }
        Command::ExistsCond(a) | Command::ExistsDecomp(a) => {
            let m = load_mass(&a.input)?;
            let (question, cert) = match command {
                Command::ExistsCond(_) => ("cano-conditional", cano_conditional_exists(&m, &a.given, a.cap)?),
                _ => ("decomposition", decomposition_exists(&m, &a.given, a.cap)?),
            };
            if a.require_feasible && !cert.is_feasible() {
                let document = json::render(&json::certificate_doc(question, &a.given, &cert));
                return Err(CliError::Negative {
                    code: "infeasible",
                    message: format!("no {question} exists"),
                    document,
                });
            }
            Ok(json::render(&json::certificate_doc(question, &a.given, &cert)))
        }
        Command::CheckConsistency { input, given, conditional } => {
            let consistent = is_marginally_consistent(&load_mass(input)?, given, &load_mass(conditional)?)?;
            Ok(json::render(&json!({ "consistent": consistent })))
        }
        Command::CheckCorrectness { reference, approx } => {
            let (r, a) = (load_mass(reference)?, load_mass(approx)?);
            Ok(json::render(&json!({
                "marginally_correct": marginally_correct(&r, &a)?,
                "jointly_correct": marginally_correct_joint(&r, &a)?,
            })))
        }
        Command::Indep { input, p, q, r } => {
            let independent = conditional_independence(&load_mass(input)?, p, q, r)?;
            Ok(json::render(&json!({ "independent": independent })))
        }
        Command::NetValidate { input } => {
            let violations = load_network(input)?.validate();
            let out = json::render(&json::validation_doc(&violations));
            if violations.is_empty() {
                Ok(out)
            } else {
                let message = format!("{} violation(s)", violations.len());
                Err(CliError::Negative { code: "invalid-network", message, document: out })
            }
        }
        Command::Reorient(a) => {
            let net = load_network(&a.input)?;
            let o = reorient_for_target(&net, &a.target, &a.flags.apply(default_reorient_options()))?;
            for w in o.warnings() {
                log::warn!("{w}");
            }
            Ok(json::render(&json::oriented_doc(&o)))
        }
        Command::Propagate(a) => {
            let net = load_network(&a.net.input)?;
            let ev = evidence(&a.evidence)?;
            let o = reorient_for_target(&net, &a.net.target, &a.net.flags.apply(default_reorient_options()))?;
            for w in o.warnings() {
                log::warn!("{w}");
            }
            let m = match &a.schedule {
                Some(s) => propagate_with_schedule(&o, &ev, s)?,
                None => propagate(&o, &ev)?,
            };
            Ok(mass_out(&m))
        }
        Command::Verify(a) => {
            if a.net.input == "-" && a.reference.as_deref() == Some("-") {
                return Err(CliError::Usage("only one input can come from stdin".into()));
            }
            let net = load_network(&a.net.input)?;
            let ev = evidence(&a.evidence)?;
            let reference = a.reference.as_deref().map(load_mass).transpose()?;
            let options = a.net.flags.apply(default_reorient_options());
            let report = verify(&net, &ev, &a.net.target, &options, reference.as_ref())?;
            Ok(json::render(&json::verify_doc(&report, reference.is_some())))
        }
    }
}

/// Writes `text` to `path`, `-` being stdout.
pub fn write_output(path: &str, text: &str) -> Result<(), CliError> {
    let res = if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes()).and_then(|_| out.flush())
    } else {
        fs::write(path, text)
    };
    res.map_err(|source| CliError::Io { path: path.to_string(), source })
}

/// Runs the parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(&cli.command) {
        Ok(text) => match write_output(&cli.output, &text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("{}", e.report());
                e.exit_code()
            }
        },
        Err(e @ CliError::Negative { .. }) => {
            if let CliError::Negative { document, .. } = &e {
                if let Err(w) = write_output(&cli.output, document) {
                    eprintln!("{}", w.report());
                    return w.exit_code();
                }
            }
            eprintln!("{}", e.report());
            e.exit_code()
        }
        Err(e) => {
            eprintln!("{}", e.report());
            e.exit_code()
        }
    }
}
