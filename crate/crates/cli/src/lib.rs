//! Command-line front end for the algebroid calculus: fixture loading,
//! check dispatch and reports.

pub mod fixture;
pub mod report;
pub mod run;

use algebroid_core::nambu::SampleLevel;
use clap::{Parser, ValueEnum};
use run::{Command, Flags};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Samples {
    Basis,
    Linear,
    Quadratic,
}

impl From<Samples> for SampleLevel {
    fn from(s: Samples) -> Self {
        match s {
            Samples::Basis => SampleLevel::Basis,
            Samples::Linear => SampleLevel::Linear,
            Samples::Quadratic => SampleLevel::Quadratic,
        }
    }
}

/// Exact checks and cohomology for Nambu structures on Lie algebroids.
#[derive(Debug, Parser)]
#[command(name = "algebroid-lab", version)]
pub struct Cli {
    pub command: Command,
    /// Fixture path, or the name of a bundled fixture such as `r3_standard`.
    pub fixture: String,
    /// Largest form stratum (total weight) in cohomology computations.
    #[arg(long)]
    pub max_stratum: Option<i64>,
    /// Degree bound for the fundamental identity and the nullity search.
    #[arg(long)]
    pub degree_bound: Option<u32>,
    #[arg(long, value_enum)]
    pub samples: Option<Samples>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Also search potentials of the form exp(h)·polynomial for declared generators.
    #[arg(long)]
    pub allow_exp: bool,
    /// Record wall-clock time per entry (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

/// Parses arguments, runs the command and prints the report; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let f = match fixture::parse_fixture(&cli.fixture) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let flags = Flags {
        max_stratum: cli.max_stratum,
        degree_bound: cli.degree_bound,
        samples: cli.samples.map(Into::into),
        allow_exp: cli.allow_exp,
        timings: cli.timings,
    };
    let report = run::run(cli.command, &f, &flags);
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    // A closed pipe downstream is not an error of ours.
    let _ = std::io::Write::write_all(&mut std::io::stdout(), text.as_bytes());
    run::exit_code(&report)
}
