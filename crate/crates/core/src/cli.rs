//! Command-line front end. [`run`] is the whole program minus process
//! exit, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 domain error (total conflict, invalid rule
//! file, unknown hypothesis, failed check), 2 usage or syntax error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::aggregation::{fold_evidence, AggregateViews, EvidenceItem, PosteriorReport};
use crate::calculi::{combine_b, Calculus, ChanceBelief, Measure};
use crate::dstheory::{belief_of, chance_mass, conflict, dempster_combine, BinaryMass};
use crate::error::Error;
use crate::oracle::{run_check, MAX_CHANNELS};
use crate::ruledsl::{self, DslError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "confirm",
    version,
    about = "Evidence aggregation in likelihood-ratio, certainty-factor and belief coordinates"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a value between calculi.
    #[command(allow_negative_numbers = true)]
    Convert {
        value: f64,
        #[arg(long)]
        from: Calculus,
        #[arg(long)]
        to: Calculus,
    },
    /// Combine values in one calculus and show the result in all four.
    #[command(allow_negative_numbers = true)]
    Combine {
        #[arg(required = true, num_args = 1..)]
        values: Vec<f64>,
        #[arg(long)]
        calculus: Calculus,
    },
    /// Evaluate hypotheses of a rule file.
    Eval {
        file: PathBuf,
        #[arg(long = "hypothesis", required = true)]
        hypotheses: Vec<String>,
    },
    /// Compare every calculus against exact enumeration on random models.
    Check {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        models: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=MAX_CHANNELS as u64))]
        max_channels: u64,
    },
    /// Show Dempster's rule on two chance masses next to the belief combination.
    #[command(allow_negative_numbers = true)]
    DemoDempster { b1: f64, b2: f64 },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: u8, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Formats `x` to 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if (1e-6..1e15).contains(&rounded.abs()) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

/// Full-precision JSON number; infinities become the strings `"inf"`/`"-inf"`.
fn jnum(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(fmt_sig(x))
    }
}

fn views_json(v: &AggregateViews) -> Value {
    json!({
        "lambda": jnum(v.lambda.value()),
        "cf": jnum(v.cf.value()),
        "belief": jnum(v.belief.value()),
        "logl": jnum(v.logl.value()),
    })
}

fn mass_json(m: &BinaryMass) -> Value {
    json!({ "h": jnum(m.h()), "not_h": jnum(m.not_h()), "theta": jnum(m.theta()) })
}

fn mass_text(m: &BinaryMass) -> String {
    format!(
        "m(H)={} m(not H)={} m(theta)={}",
        fmt_sig(m.h()),
        fmt_sig(m.not_h()),
        fmt_sig(m.theta())
    )
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn domain_code(e: &Error) -> u8 {
    match e {
        Error::OutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    let json = cli.json;
    match cli.command {
        Command::Convert { value, from, to } => convert(value, from, to, json),
        Command::Combine { values, calculus } => combine(&values, calculus, json),
        Command::Eval { file, hypotheses } => eval(&file, &hypotheses, json),
        Command::Check {
            seed,
            models,
            max_channels,
        } => check(seed, models as usize, max_channels as usize, json),
        Command::DemoDempster { b1, b2 } => demo_dempster(b1, b2, json),
    }
}

fn convert(value: f64, from: Calculus, to: Calculus, json: bool) -> Outcome {
    let m = match Measure::new(from, value) {
        Ok(m) => m,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let out = m.convert(to).value();
    if json {
        Outcome::ok(render_json(&json!({
            "from": from.keyword(),
            "to": to.keyword(),
            "input": jnum(m.value()),
            "value": jnum(out),
        })))
    } else {
        Outcome::ok(format!("{}\n", fmt_sig(out)))
    }
}

fn combine(values: &[f64], calculus: Calculus, json: bool) -> Outcome {
    let mut items = Vec::with_capacity(values.len());
    for (i, &v) in values.iter().enumerate() {
        match Measure::new(calculus, v) {
            Ok(m) => items.push(EvidenceItem::new("H", format!("arg{}", i + 1), m)),
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("arg{}: {e}", i + 1)),
        }
    }
    let result = match fold_evidence(&items, calculus) {
        Ok(m) => m,
        Err(e) => return Outcome::fail(domain_code(&e), e),
    };
    let views = AggregateViews::of(result);
    if json {
        return Outcome::ok(render_json(&json!({
            "calculus": calculus.keyword(),
            "inputs": values.iter().map(|&v| jnum(v)).collect::<Vec<_>>(),
            "result": jnum(result.value()),
            "views": views_json(&views),
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", calculus, fmt_sig(result.value()));
    for other in Calculus::ALL.into_iter().filter(|&c| c != calculus) {
        let _ = writeln!(out, "{} {}", other, fmt_sig(views.get(other).value()));
    }
    Outcome::ok(out)
}

fn report_json(r: &PosteriorReport) -> Value {
    json!({
        "hypothesis": r.hypothesis,
        "prior": jnum(r.prior.value()),
        "aggregate": views_json(&r.aggregate),
        "posterior": jnum(r.posterior.value()),
        "sources": r.items_used,
        "warnings": r.lints.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn report_text(out: &mut String, r: &PosteriorReport) {
    let _ = writeln!(out, "hypothesis {}", r.hypothesis);
    let _ = writeln!(out, "  prior      {}", fmt_sig(r.prior.value()));
    for c in Calculus::ALL {
        let _ = writeln!(
            out,
            "  {:<10} {}",
            c.keyword(),
            fmt_sig(r.aggregate.get(c).value())
        );
    }
    let _ = writeln!(out, "  posterior  {}", fmt_sig(r.posterior.value()));
    let _ = writeln!(out, "  sources    {}", r.items_used.join(", "));
}

fn eval(file: &std::path::Path, hypotheses: &[String], json: bool) -> Outcome {
    let origin = file.display().to_string();
    let source = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("{origin}: {e}")),
    };
    let rb = match ruledsl::parse(&source) {
        Ok(rb) => rb,
        Err(e) => {
            let code = match e {
                DslError::Parse(_) => EXIT_USAGE,
                DslError::Validation(_) => EXIT_DOMAIN,
            };
            return Outcome::fail(code, ruledsl::render_error(&origin, &e));
        }
    };

    let mut reports = Vec::with_capacity(hypotheses.len());
    for h in hypotheses {
        match ruledsl::evaluate(&rb, h) {
            Ok(r) => reports.push(r),
            Err(e) => return Outcome::fail(domain_code(&e), e),
        }
    }

    let mut stderr = String::new();
    for r in &reports {
        for lint in &r.lints {
            let _ = writeln!(stderr, "warning: {}: {lint}", r.hypothesis);
        }
    }
    let stdout = if json {
        render_json(&json!({
            "file": origin,
            "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
        }))
    } else {
        let mut out = String::new();
        for r in &reports {
            report_text(&mut out, r);
        }
        out
    };
    Outcome {
        code: EXIT_OK,
        stdout,
        stderr,
    }
}

fn check(seed: u64, models: usize, max_channels: usize, json: bool) -> Outcome {
    let summary = match run_check(seed, models, max_channels) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let verdict = if summary.passed() { "pass" } else { "fail" };
    let stdout = if json {
        render_json(&json!({
            "seed": summary.seed,
            "models": summary.models,
            "max_channels": summary.max_channels,
            "worst_error": summary.worst_error,
            "worst_model": summary.worst_model,
            "failures": summary.failures,
            "tolerance": summary.tolerance,
            "result": verdict,
        }))
    } else {
        format!(
            "seed         {}\nmodels       {}\nmax channels {}\nworst error  {} (model {})\ntolerance    {}\nfailures     {}\nresult       {}\n",
            summary.seed,
            summary.models,
            summary.max_channels,
            fmt_sig(summary.worst_error),
            summary.worst_model,
            fmt_sig(summary.tolerance),
            summary.failures,
            verdict,
        )
    };
    Outcome {
        code: if summary.passed() {
            EXIT_OK
        } else {
            EXIT_DOMAIN
        },
        stdout,
        stderr: String::new(),
    }
}

fn demo_dempster(b1: f64, b2: f64, json: bool) -> Outcome {
    let parse = |v: f64| ChanceBelief::new(v).map_err(|e| Outcome::fail(EXIT_USAGE, e));
    let (b1, b2) = match (parse(b1), parse(b2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    let (m1, m2) = (chance_mass(b1), chance_mass(b2));
    let k = conflict(&m1, &m2);
    let combined = match dempster_combine(&m1, &m2) {
        Ok(m) => m,
        Err(e) => return Outcome::fail(EXIT_DOMAIN, e),
    };
    let via_mass = belief_of(&combined).expect("chance masses combine to a chance mass");
    let direct = combine_b(b1, b2).expect("no conflict: Dempster's rule succeeded");
    let difference = (via_mass.value() - direct.value()).abs();

    if json {
        return Outcome::ok(render_json(&json!({
            "b1": jnum(b1.value()),
            "b2": jnum(b2.value()),
            "m1": mass_json(&m1),
            "m2": mass_json(&m2),
            "conflict": jnum(k),
            "combined": mass_json(&combined),
            "belief_of_combined": jnum(via_mass.value()),
            "combine_b": jnum(direct.value()),
            "difference": jnum(difference),
        })));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "m1 = chance_mass({})   {}",
        fmt_sig(b1.value()),
        mass_text(&m1)
    );
    let _ = writeln!(
        out,
        "m2 = chance_mass({})   {}",
        fmt_sig(b2.value()),
        mass_text(&m2)
    );
    let _ = writeln!(out, "conflict K            {}", fmt_sig(k));
    let _ = writeln!(out, "m1 (+) m2             {}", mass_text(&combined));
    let _ = writeln!(out, "belief_of(m1 (+) m2)  {}", fmt_sig(via_mass.value()));
    let _ = writeln!(out, "combine_b(b1, b2)     {}", fmt_sig(direct.value()));
    let _ = writeln!(out, "difference            {}", fmt_sig(difference));
    Outcome::ok(out)
}
