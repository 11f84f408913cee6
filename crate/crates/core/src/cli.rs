//! The `fdl` command line. [`run`] parses arguments and returns the exit
//! status together with everything that would be printed, so the binary is
//! a thin wrapper and tests can drive commands in process.
//!
//! Exit status: 0 when the command succeeds or the checked property holds,
//! 1 when the property fails or a counterexample is found, 2 on usage or
//! input errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::formula::{parse_formula, Formula};
use crate::hilbert::{load_derivation, verify_derivation};
use crate::model::{
    check_frame_property, load_model, save_model, FrameProperty, Model, Rational01, SamplerConfig,
};
use crate::scenarios::{
    belief_success_statistic, build_cpa_model, build_muddy_model, cpa_security_sweep,
    load_cpa_config, load_muddy_config, SweepConfig, SweepMode, CPA_AGENT, CPA_PROP,
};
use crate::semantics::{EvalContext, SkepticalVariant};
use crate::validity::{check_validity_in_model, search_counterexample, Scheme, SearchConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fdl",
    version,
    about = "Łukasiewicz doxastic logic toolkit: evaluation, validity search and proof checking"
)]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Base seed for random search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of sampled models for random search.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,
    /// Which state's value enters the skeptical product.
    #[arg(long, global = true, default_value = "source", value_parser = parse_variant)]
    variant: SkepticalVariant,
    #[command(subcommand)]
    command: Command,
}

fn parse_variant(s: &str) -> Result<SkepticalVariant, String> {
    s.parse()
}

fn parse_property(s: &str) -> Result<FrameProperty, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScenarioKind {
    Muddy,
    Cpa,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value of a formula at one state.
    Eval {
        model: PathBuf,
        state: String,
        formula: String,
    },
    /// Check a frame property for every agent of a model.
    Frame {
        model: PathBuf,
        #[arg(value_parser = parse_property)]
        property: FrameProperty,
    },
    /// Whether a formula takes value 1 at every state of a model.
    Valid { model: PathBuf, formula: String },
    /// Search random models for a counterexample to a scheme such as
    /// "B{?a} ?phi -> ?phi".
    Search {
        scheme: String,
        #[arg(long, default_value_t = 3)]
        states: usize,
        #[arg(long, default_value_t = 1)]
        agents: usize,
        /// Comma-separated proposition names.
        #[arg(long, default_value = "p,q", value_delimiter = ',')]
        props: Vec<String>,
        /// Bound on sampled denominators.
        #[arg(long, default_value_t = 10)]
        denominator: u32,
        /// Depth bound for random instantiations.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Frame constraints on sampled models (repeatable or comma-separated).
        #[arg(long = "constrain", value_delimiter = ',', value_parser = parse_property)]
        constraints: Vec<FrameProperty>,
        /// Write the counterexample model here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a derivation file.
    Prove { derivation: PathBuf },
    /// Build an application model from a JSON configuration.
    Scenario {
        #[arg(value_enum)]
        kind: ScenarioKind,
        config: PathBuf,
        /// Output model file; stdout when omitted.
        out: Option<PathBuf>,
    },
    /// Belief success statistic of a model or CPA configuration, or a sweep
    /// over the security parameter against the bound 1/n².
    Cpastat {
        /// Model file or CPA configuration file.
        #[arg(required_unless_present = "sweep", conflicts_with = "sweep")]
        input: Option<PathBuf>,
        #[arg(long, default_value = CPA_AGENT)]
        agent: String,
        #[arg(long, default_value = CPA_PROP)]
        prop: String,
        /// Range of n as `MIN..MAX` (inclusive).
        #[arg(long, value_parser = parse_range)]
        sweep: Option<(u32, u32)>,
        /// Number of queried strings in the sweep family.
        #[arg(long, default_value_t = 1)]
        n0: u64,
        /// Use a fresh challenge instead of a reused one.
        #[arg(long)]
        fresh: bool,
        /// Use the n₀/2^n formula instead of building models.
        #[arg(long)]
        analytic: bool,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected MIN..MAX, got `{s}`"))?;
    let a = a.parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b = b
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad range end `{b}`"))?;
    Ok((a, b))
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(code: i32, stdout: String) -> Self {
        CliOutput {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        CliOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Runs one command line; the first item is the program name.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput::ok(code, text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(message) => CliOutput::usage(message),
    }
}

/// `4/5 (0.8)`
pub fn show_value(v: &Rational01) -> String {
    format!("{v} ({})", v.to_decimal_string(6))
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn model_from(path: &Path) -> Result<Model, String> {
    load_model(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn formula_from(text: &str) -> Result<Formula, String> {
    parse_formula(text).map_err(|e| format!("formula: {e}"))
}

fn emit(json_mode: bool, code: i32, value: Value, human: String) -> CliOutput {
    let stdout = if json_mode {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&value).expect("json output")
        )
    } else {
        human
    };
    CliOutput::ok(code, stdout)
}

fn model_value(m: &Model) -> Value {
    serde_json::from_str(&save_model(m)).expect("model file is json")
}

fn dispatch(cli: &Cli) -> Result<CliOutput, String> {
    let variant = cli.variant;
    match &cli.command {
        Command::Eval {
            model,
            state,
            formula,
        } => {
            let m = model_from(model)?;
            let f = formula_from(formula)?;
            let v = EvalContext::with_variant(&m, variant)
                .eval(state, &f)
                .map_err(|e| e.to_string())?;
            let value = json!({
                "state": state, "formula": f.to_string(), "variant": variant.to_string(),
                "value": v.to_string(), "decimal": v.to_decimal_string(6),
            });
            Ok(emit(
                cli.json,
                EXIT_OK,
                value,
                format!("{}\n", show_value(&v)),
            ))
        }
        Command::Frame { model, property } => {
            let m = model_from(model)?;
            let check = check_frame_property(&m, *property);
            let human = match &check.witness {
                None => format!("{property}: holds\n"),
                Some(w) => format!("{property}: fails at {w}\n"),
            };
            let value = json!({"property": property.name(), "holds": check.holds, "witness": check.witness});
            Ok(emit(
                cli.json,
                if check.holds { EXIT_OK } else { EXIT_FAILS },
                value,
                human,
            ))
        }
        Command::Valid { model, formula } => {
            let m = model_from(model)?;
            let f = formula_from(formula)?;
            let check = check_validity_in_model(&m, &f, variant).map_err(|e| e.to_string())?;
            let human = if check.valid {
                "valid: 1 at every state\n".to_string()
            } else {
                format!(
                    "not valid: {} at {}\n",
                    show_value(&check.min_value),
                    check.argmin_state
                )
            };
            let value = json!({
                "formula": f.to_string(), "variant": variant.to_string(), "valid": check.valid,
                "min_value": check.min_value.to_string(), "argmin_state": check.argmin_state.to_string(),
            });
            Ok(emit(
                cli.json,
                if check.valid { EXIT_OK } else { EXIT_FAILS },
                value,
                human,
            ))
        }
        Command::Search {
            scheme,
            states,
            agents,
            props,
            denominator,
            depth,
            constraints,
            out,
        } => {
            let s = Scheme::parse(scheme).map_err(|e| format!("scheme: {e}"))?;
            let cfg = SearchConfig {
                sampler: SamplerConfig {
                    states: *states,
                    agents: *agents,
                    props: props.clone(),
                    denominator: *denominator,
                    seed: cli.seed,
                    constraints: constraints.iter().copied().collect::<BTreeSet<_>>(),
                },
                depth: *depth,
                trials: cli.trials,
                variant,
            };
            let found = search_counterexample(&s, &cfg).map_err(|e| e.to_string())?;
            match found {
                None => {
                    let value =
                        json!({"scheme": s.to_string(), "found": false, "trials": cli.trials});
                    let human = format!("no counterexample in {} trials\n", cli.trials);
                    Ok(emit(cli.json, EXIT_OK, value, human))
                }
                Some(r) => {
                    if let Some(path) = out {
                        fs::write(path, save_model(&r.model))
                            .map_err(|e| format!("{}: {e}", path.display()))?;
                    }
                    let inst: serde_json::Map<String, Value> = r
                        .instantiation
                        .formulas
                        .iter()
                        .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
                        .chain(
                            r.instantiation
                                .agents
                                .iter()
                                .map(|(k, v)| (k.clone(), Value::String(v.to_string()))),
                        )
                        .collect();
                    let value = json!({
                        "scheme": s.to_string(), "found": true, "trial": r.trial, "state": r.state.to_string(),
                        "formula": r.formula.to_string(), "value": r.value.to_string(),
                        "variant": r.variant.to_string(), "instantiation": inst, "model": model_value(&r.model),
                    });
                    let human = format!(
                        "counterexample in trial {}: {} = {} at {}\ninstantiation {}\n{}\n",
                        r.trial,
                        r.formula,
                        show_value(&r.value),
                        r.state,
                        r.instantiation,
                        save_model(&r.model)
                    );
                    Ok(emit(cli.json, EXIT_FAILS, value, human))
                }
            }
        }
        Command::Prove { derivation } => {
            let (sys, d) = load_derivation(&read(derivation)?)
                .map_err(|e| format!("{}: {e}", derivation.display()))?;
            let report = verify_derivation(&d, &sys);
            let mut human = String::new();
            for (diag, line) in report.lines.iter().zip(&d.lines) {
                let status = match &diag.message {
                    None => "ok".to_string(),
                    Some(m) => format!("FAIL: {m}"),
                };
                human.push_str(&format!("{:>3}. {}  [{status}]\n", diag.line, line.formula));
            }
            match (report.ok, d.conclusion()) {
                (true, Some(c)) => human.push_str(&format!("verified in {sys}: {c}\n")),
                _ => human.push_str(&format!("not a derivation in {sys}\n")),
            }
            let value = json!({
                "system": sys.to_string(), "ok": report.ok, "lines": report.lines,
                "conclusion": d.conclusion().map(ToString::to_string),
            });
            Ok(emit(
                cli.json,
                if report.ok { EXIT_OK } else { EXIT_FAILS },
                value,
                human,
            ))
        }
        Command::Scenario { kind, config, out } => {
            let text = read(config)?;
            let m = match kind {
                ScenarioKind::Muddy => load_muddy_config(&text).and_then(|c| build_muddy_model(&c)),
                ScenarioKind::Cpa => load_cpa_config(&text).and_then(|c| build_cpa_model(&c)),
            }
            .map_err(|e| format!("{}: {e}", config.display()))?;
            let file = save_model(&m);
            match out {
                Some(path) => {
                    fs::write(path, &file).map_err(|e| format!("{}: {e}", path.display()))?;
                    let value =
                        json!({"states": m.num_states(), "out": path.display().to_string()});
                    let human = format!("wrote {} states to {}\n", m.num_states(), path.display());
                    Ok(emit(cli.json, EXIT_OK, value, human))
                }
                None => Ok(CliOutput::ok(EXIT_OK, format!("{file}\n"))),
            }
        }
        Command::Cpastat {
            input,
            agent,
            prop,
            sweep,
            n0,
            fresh,
            analytic,
        } => {
            if let Some((n_min, n_max)) = sweep {
                let cfg = SweepConfig {
                    n_min: *n_min,
                    n_max: *n_max,
                    n0: *n0,
                    reuse: !fresh,
                    mode: if *analytic {
                        SweepMode::Analytic
                    } else {
                        SweepMode::Explicit
                    },
                    variant,
                };
                let rows = cpa_security_sweep(&cfg, |n| {
                    let n = i64::from(n);
                    Rational01::from_ratio(1, n * n)
                })
                .map_err(|e| e.to_string())?;
                let all = rows.iter().all(|r| r.pass);
                let mut human = format!("{:>3}  {:>12}  {:>12}  pass\n", "n", "statistic", "bound");
                for r in &rows {
                    human.push_str(&format!(
                        "{:>3}  {:>12}  {:>12}  {}\n",
                        r.n, r.statistic, r.bound, r.pass
                    ));
                }
                let value = json!({"rows": rows, "all_pass": all});
                return Ok(emit(
                    cli.json,
                    if all { EXIT_OK } else { EXIT_FAILS },
                    value,
                    human,
                ));
            }
            let path = input.as_ref().expect("clap requires input without --sweep");
            let text = read(path)?;
            let m = match load_model(&text) {
                Ok(m) => m,
                Err(model_err) => {
                    let cfg = load_cpa_config(&text).map_err(|_| {
                        format!(
                            "{}: not a model or CPA configuration ({model_err})",
                            path.display()
                        )
                    })?;
                    build_cpa_model(&cfg).map_err(|e| e.to_string())?
                }
            };
            let stat =
                belief_success_statistic(&m, agent, prop, variant).map_err(|e| e.to_string())?;
            let human = format!("{}\n", stat.ratio);
            let value = serde_json::to_value(&stat).expect("stat serializes");
            Ok(emit(cli.json, EXIT_OK, value, human))
        }
    }
}
