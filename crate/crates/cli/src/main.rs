//! `ivrf`: minimum-valuation envelopes, integer-valued rational function
//! membership, and the explicit constructions, from the command line.

mod commands;
mod config;
mod construct;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ivrf_core::par::Mode;
use ivrf_core::suites::{Suite, SuiteConfig, SCHEMA};
use ivrf_core::{Error, Result};
use serde_json::json;

use commands::Output;
use config::{AnyField, DomainSpec, FieldSpec, FileConfig};
use construct::{ConstructArgs, Kind};

#[derive(Parser, Debug)]
#[command(name = "ivrf", version, about = "Integer-valued rational functions over valued fields")]
struct Cli {
    /// TOML run configuration; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Recursion depth for membership certification.
    #[arg(long, global = true)]
    depth: Option<u32>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// `padic:5`, `tadic:GF(4)`, `hahn:GF(2)(u)` or `lex2:GF(3)`.
    #[arg(long, global = true)]
    field: Option<String>,
    /// `ring`, `pvd:GF(2)` or `intersection:2,3`.
    #[arg(long, global = true)]
    domain: Option<String>,
    /// Run batch work on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The envelope minval_f and a sweep of observed valuations.
    Minval {
        function: String,
        /// Values of gamma to sweep, e.g. 1/2 or "(1, -1)".
        #[arg(long, value_delimiter = ';')]
        gammas: Vec<String>,
    },
    /// Local polynomials of numerator and denominator at t, with slopes.
    Locpoly {
        function: String,
        #[arg(long)]
        at: String,
    },
    /// Decide membership in IntR(E, D).
    Member {
        function: String,
        /// `ring`, `field` or `list:a;b;...`.
        #[arg(long, default_value = "ring")]
        eval: String,
    },
    /// Decide membership in an ideal: mstar, point:a[@i], m, m^k, v>g, v>=g.
    Ideal {
        function: String,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "ring")]
        eval: String,
    },
    /// Classify φ by the locality dichotomy.
    Dichotomy { function: String },
    /// Build an explicit rational function and check its properties.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value = "2-3")]
        preset: String,
        #[arg(long, default_value = "x")]
        phi: String,
        #[arg(long, default_value = "x + 1")]
        phi2: String,
    },
    /// Exhaustive searches.
    Scan {
        #[command(subcommand)]
        what: ScanWhat,
    },
    /// Run a property-check suite.
    Verify {
        suite: String,
        #[arg(long, default_value = "2-3")]
        preset: String,
    },
}

#[derive(Subcommand, Debug)]
enum ScanWhat {
    /// Rational functions over L inducing maps L -> M off a few exceptions.
    Fieldmaps {
        #[arg(long)]
        residue: String,
        #[arg(long)]
        subfield: Option<String>,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long, default_value_t = 0)]
        exceptions: usize,
    },
}

struct Settings {
    seed: u64,
    depth: u32,
    samples: Option<usize>,
    format: Format,
    out: Option<PathBuf>,
    mode: Mode,
    field: Option<FieldSpec>,
    domain: DomainSpec,
}

fn settings(cli: &Cli, file: &FileConfig) -> Result<Settings> {
    let format = match (&cli.format, file.run.format.as_deref()) {
        (Some(f), _) => *f,
        (None, None) => Format::Json,
        (None, Some(s)) => Format::from_str(s, true).map_err(|_| Error::Config(format!("unknown format {s:?}")))?,
    };
    let field = match &cli.field {
        Some(s) => Some(FieldSpec::parse(s)?),
        None => file.field_spec()?,
    };
    let domain = match &cli.domain {
        Some(s) => DomainSpec::parse(s)?,
        None => file.domain_spec()?.unwrap_or(DomainSpec::Ring),
    };
    let parallel = !cli.sequential && file.run.parallel.unwrap_or(true);
    Ok(Settings {
        seed: cli.seed.or(file.run.seed).unwrap_or(0),
        depth: cli.depth.or(file.run.depth).unwrap_or(3),
        samples: cli.samples.or(file.run.samples),
        format,
        out: cli.out.clone().or_else(|| file.run.out.clone()),
        mode: if parallel { Mode::Parallel } else { Mode::Sequential },
        field,
        domain,
    })
}

/// Runs `$body` with `$k` bound to the concrete configured field.
macro_rules! with_field {
    ($s:expr, $k:ident => $body:expr) => {{
        let spec = $s.field.as_ref().ok_or_else(|| Error::Config("no field given; use --field or a [field] section".into()))?;
        match spec.build()? {
            AnyField::PAdic($k) => $body,
            AnyField::Monomial($k) => $body,
            AnyField::Lex($k) => $body,
        }
    }};
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Minval { .. } => "minval",
        Command::Locpoly { .. } => "locpoly",
        Command::Member { .. } => "member",
        Command::Ideal { .. } => "ideal",
        Command::Dichotomy { .. } => "dichotomy",
        Command::Construct { .. } => "construct",
        Command::Scan { .. } => "scan",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(c: &Command, s: &Settings) -> Result<Output> {
    match c {
        Command::Minval { function, gammas } => with_field!(s, k => commands::minval(&k, function, gammas)),
        Command::Locpoly { function, at } => with_field!(s, k => commands::locpoly(&k, function, at)),
        Command::Member { function, eval } => {
            with_field!(s, k => commands::member(&k, &s.domain, function, eval, s.depth))
        }
        Command::Ideal { function, ideal, eval } => {
            with_field!(s, k => commands::ideal(&k, &s.domain, function, ideal, eval, s.depth))
        }
        Command::Dichotomy { function } => with_field!(s, k => commands::dichotomy(&k, function)),
        Command::Construct { kind, preset, phi, phi2 } => {
            let a = ConstructArgs {
                kind: *kind,
                preset,
                phi,
                phi2,
                samples: s.samples.unwrap_or(100),
                depth: s.depth,
                seed: s.seed,
                mode: s.mode,
            };
            match kind {
                Kind::Witness => with_field!(s, k => construct::witness(&k, &s.domain, &a)),
                _ => construct::singular(&a),
            }
        }
        Command::Scan { what: ScanWhat::Fieldmaps { residue, subfield, bound, exceptions } } => {
            construct::scan(residue, subfield.as_deref(), *bound, *exceptions, s.mode)
        }
        Command::Verify { suite, preset } => {
            let suite: Suite = suite.parse()?;
            let cfg = SuiteConfig { seed: s.seed, samples: s.samples, depth: s.depth, mode: s.mode, preset: preset.clone() };
            construct::verify(suite, &cfg)
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Config(format!("{}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(|e| Error::Config(format!("stdout: {e}")))
        }
    }
}

fn run(args: Vec<String>) -> Result<bool> {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            if code == 0 {
                return Ok(true);
            }
            std::process::exit(2);
        }
    };
    let file = cli.config.as_deref().map(FileConfig::load).transpose()?.unwrap_or_default();
    let cli = match (&cli.command, &file.command) {
        (Some(_), _) => cli,
        (None, Some(cmd)) => {
            let mut again = args.clone();
            again.extend(cmd.iter().cloned());
            Cli::try_parse_from(&again).map_err(|e| Error::Config(format!("config command: {}", e.kind())))?
        }
        (None, None) => return Err(Error::Config("no command given; see ivrf --help".into())),
    };
    let command = cli.command.as_ref().expect("command resolved above");
    let s = settings(&cli, &file)?;
    let output = dispatch(command, &s)?;
    let text = match s.format {
        Format::Csv => output
            .csv
            .ok_or_else(|| Error::Config(format!("{} has no CSV output; use --format json", command_name(command))))?,
        Format::Json => {
            let envelope = json!({
                "schema": SCHEMA,
                "command": command_name(command),
                "field": s.field.as_ref().map(ToString::to_string),
                "domain": s.domain.to_string(),
                "result": output.body,
            });
            serde_json::to_string_pretty(&envelope).expect("json values serialize") + "\n"
        }
    };
    emit(&text, s.out.as_ref())?;
    Ok(!output.violation)
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
