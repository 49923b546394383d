//! `sdnb`: self-dual normal basis decisions and the arithmetic behind them.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sdnb_core::forms::{self, GramMatrix};
use sdnb_core::groups::decompose;
use sdnb_core::sdnb::{self, InvariantValue, SpecWire};
use sdnb_core::{
    hilbert, primes, DiagonalForm, Error, GaloisAlgebraSpec, GroupDescriptor, Place, Polynomial,
    Rational, Verdict,
};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;
const EXIT_BUDGET: u8 = 75;

#[derive(Parser)]
#[command(name = "sdnb", version, about = "Self-dual normal bases of G-Galois algebras over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the algebra has a self-dual normal basis.
    Decide {
        #[command(flatten)]
        spec: SpecArgs,
        /// Decide over the completion at this finite prime instead of over Q.
        #[arg(long)]
        place: Option<Place>,
    },
    /// Report the degree-2 invariants of every factor.
    Invariants {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Hilbert symbol (a, b)_v.
    #[command(allow_negative_numbers = true)]
    Hilbert {
        a: Rational,
        b: Rational,
        /// `real` or a prime.
        v: Place,
    },
    /// Invariants and isotropy of a quadratic form.
    Form {
        /// Diagonal entries, comma separated.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "gram", required_unless_present = "gram")]
        diag: Option<String>,
        /// Gram matrix, rows separated by `;` and entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        gram: Option<String>,
    },
    /// Involution-stable factors of Q[G].
    Factors {
        #[arg(long)]
        group: GroupDescriptor,
    },
    /// Obstruction to embedding the cyclic field Q[X]/(f) in a cyclic field of twice the degree.
    #[command(allow_negative_numbers = true)]
    Embed {
        /// Coefficients of f, constant term first, comma separated.
        f: Polynomial,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// JSON spec file; replaces the inline flags.
    #[arg(long, conflicts_with_all = ["group", "family"])]
    spec: Option<PathBuf>,
    #[arg(long, required_unless_present = "spec")]
    group: Option<String>,
    #[arg(long, required_unless_present = "spec")]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<Rational>,
    /// Polynomial coefficients, constant term first, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<Polynomial>,
}

/// Failure of a command, with the exit code it maps to.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::FactorBudgetExceeded(_) | Error::SearchBudgetExceeded(_) => (EXIT_BUDGET, "budget"),
            Error::Unsupported(_) => (EXIT_DATA, "unsupported"),
            Error::H1Violated(_) => (EXIT_DATA, "h1-violated"),
            _ => (EXIT_DATA, "invalid-input"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl SpecArgs {
    fn load(&self) -> Result<GaloisAlgebraSpec, Failure> {
        if let Some(path) = &self.spec {
            let text = fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_NO_INPUT,
                kind: "no-input",
                message: format!("{}: {e}", path.display()),
            })?;
            return serde_json::from_str(&text).map_err(|e| Failure {
                code: EXIT_DATA,
                kind: "invalid-input",
                message: format!("{}: {e}", path.display()),
            });
        }
        let wire = SpecWire {
            group: self.group.clone().unwrap_or_default(),
            family: self.family.clone().unwrap_or_default(),
            z: self.z.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            epsilon: self.epsilon.clone(),
            poly: self.poly.clone(),
        };
        Ok(GaloisAlgebraSpec::try_from(wire)?)
    }
}

/// Output document plus the exit code it implies.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Yes => 0,
        Verdict::No => 1,
        Verdict::Unknown => 2,
    }
}

fn label<T: serde::Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn decide(spec: &SpecArgs, place: Option<Place>) -> Result<Output, Failure> {
    let spec = spec.load()?;
    let decision = match place {
        Some(v) => sdnb::decide_local(&spec, v)?,
        None => sdnb::decide_global(&spec)?,
    };
    let mut text = format!("verdict: {}\nspec: {spec}\n", decision.verdict);
    if let Some(v) = decision.place {
        text += &format!("place: {v}\n");
    }
    text += "certificate:\n";
    for e in &decision.certificate {
        text += &format!(
            "  {} {:<10} {:<6} {:<14} {}\n",
            if e.passed { "pass" } else { "FAIL" },
            label(&e.condition),
            e.place.to_string(),
            e.factor.as_deref().unwrap_or("-"),
            e.detail
        );
    }
    Ok(Output {
        json: serde_json::to_value(&decision).expect("decision serializes"),
        text,
        code: verdict_code(decision.verdict),
    })
}

fn invariants(spec: &SpecArgs) -> Result<Output, Failure> {
    let spec = spec.load()?;
    let report = sdnb::invariants(&spec)?;
    let tf = &report.trace_form;
    let mut text = format!(
        "spec: {spec}\nH1-condition: {}\ntrace form: {}\n  det class {}, signature ({}, {}), w2 {}\nfactors:\n",
        if report.h1 { "holds" } else { "fails" },
        tf.diagonal,
        tf.det_class,
        tf.signature.0,
        tf.signature.1,
        tf.hasse_witt
    );
    for f in &report.factors {
        let value = match &f.value {
            InvariantValue::Class { class } => class.to_string(),
            InvariantValue::Zero { reason } => format!("0 ({reason})"),
            InvariantValue::NotComputed { reason } => format!("not computed ({reason})"),
        };
        text += &format!(
            "  {:<14} {:<11} {}_A = {value}\n",
            f.factor.id,
            label(&f.factor.kind),
            f.invariant
        );
    }
    if let Some(note) = &report.conditional {
        text += &format!("conditional: {note}\n");
    }
    Ok(Output {
        json: serde_json::to_value(&report).expect("report serializes"),
        text,
        code: 0,
    })
}

fn parse_list(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(Failure::from))
        .collect()
}

fn form(diag: Option<&str>, gram: Option<&str>) -> Result<Output, Failure> {
    let (form, source) = match (diag, gram) {
        (Some(d), _) => (DiagonalForm::new(parse_list(d)?)?, None),
        (None, Some(g)) => {
            let rows = g.split(';').map(parse_list).collect::<Result<Vec<_>, _>>()?;
            let m = GramMatrix::new(rows)?;
            (forms::diagonalize(&m)?, Some(m))
        }
        (None, None) => unreachable!("clap requires one of --diag and --gram"),
    };
    let (pos, neg) = form.signature();
    let w2 = form.hasse_witt()?;
    let det = form.det_square_class()?;
    let failing = form.anisotropic_place()?;
    let mut text = String::new();
    if source.is_some() {
        text += &format!("diagonalized: {form}\n");
    }
    text += &format!(
        "form: {form}\ndet class: {det}\nsignature: ({pos}, {neg})\nw2: {w2}\nisotropic over Q: {}\n",
        if failing.is_none() { "yes" } else { "no" }
    );
    if let Some(v) = failing {
        text += &format!("anisotropic at: {v}\n");
    }
    Ok(Output {
        json: json!({
            "diagonal": form,
            "det_class": det,
            "signature": [pos, neg],
            "w2": w2,
            "isotropic": failing.is_none(),
            "anisotropic_place": failing,
        }),
        text,
        code: 0,
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Decide { spec, place } => decide(spec, *place),
        Command::Invariants { spec } => invariants(spec),
        Command::Hilbert { a, b, v } => {
            let s = hilbert(a, b, *v)?;
            Ok(Output {
                json: json!({ "a": a, "b": b, "place": v, "symbol": s }),
                text: format!("{s}\n"),
                code: 0,
            })
        }
        Command::Form { diag, gram } => form(diag.as_deref(), gram.as_deref()),
        Command::Factors { group } => {
            let table = decompose(group)?;
            let mut text = format!("{group}:\n");
            for f in &table {
                text += &format!(
                    "  {:<14} {:<11} center {:<12} E = {:<12} {}{}\n",
                    f.id,
                    label(&f.kind),
                    label(&f.center),
                    f.fixed_field.to_string(),
                    if f.split { "split" } else { "non-split" },
                    f.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default()
                );
            }
            Ok(Output {
                json: serde_json::to_value(&table).expect("factor table serializes"),
                text,
                code: 0,
            })
        }
        Command::Embed { f } => {
            let class = sdnb::embedding_obstruction(f)?;
            Ok(Output {
                json: json!({ "poly": f, "obstruction": class, "trivial": class.is_trivial() }),
                text: format!(
                    "obstruction: {class}\n{}\n",
                    if class.is_trivial() { "embeds" } else { "does not embed" }
                ),
                code: 0,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if let Ok(budget) = std::env::var("SDNB_FACTOR_BUDGET") {
        match budget.parse::<u64>() {
            Ok(n) if n > 0 => primes::set_factor_budget(n),
            _ => {
                eprintln!("error: SDNB_FACTOR_BUDGET must be a positive integer, got {budget:?}");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    }
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
                Format::Text => out.text,
            };
            // a closed pipe downstream is not an error worth reporting
            let _ = io::stdout().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            match cli.format {
                Format::Json => eprintln!(
                    "{}",
                    json!({ "error": { "kind": f.kind, "message": f.message } })
                ),
                Format::Text => eprintln!("error: {}", f.message),
            }
            ExitCode::from(f.code)
        }
    }
}
