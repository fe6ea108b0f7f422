use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use weylkit::albert::Validation;
use weylkit::error::{Error, Result};
use weylkit::harness::{self, SuiteConfig};
use weylkit::ring::RingSpec;

#[derive(Parser)]
#[command(name = "weylkit", version, about = "Weyl elements and their squares in rank-1 isotropic groups, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named check suite and report pass/fail per check.
    Suite {
        #[arg(long)]
        name: String,
        /// `int`, `rat`, `zmod:<n>` or `poly:<base>:<k>`.
        #[arg(long, default_value = "rat")]
        ring: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Realization for the `weyl` suite, e.g. `sp:2`.
        #[arg(long)]
        realization: Option<String>,
        #[arg(long, hide = true)]
        inject_mutation: bool,
    },
    /// Build the Weyl element through t+(x) and print w, w^2 and verdicts.
    Weyl {
        #[arg(long)]
        realization: String,
        #[arg(long, default_value = "rat")]
        ring: String,
        /// Matrix rows separated by `;`, vectors and triples by `,`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply a word in t+, t-, d and l to an element of W given as 57 scalars.
    E7 {
        #[arg(long, default_value = "rat")]
        ring: String,
        /// e.g. `t+:<albert>;d:2;t-:<albert>`; the last letter acts first.
        #[arg(long, allow_hyphen_values = true)]
        action: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Decide whether a 27x27 matrix preserves the cubic norm.
    ValidateE6 {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "int")]
        ring: String,
    },
    /// Print layer sizes, lemma reports and table rows of a Tits index.
    Grading {
        #[arg(long)]
        index: String,
        /// Comma-separated parameters, e.g. `4` or `3,1`.
        #[arg(long, default_value = "")]
        params: String,
    },
}

fn ring(s: &str) -> Result<RingSpec> {
    s.parse()
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Suite { name, ring: r, trials, seed, json, realization, inject_mutation } => {
            let mut cfg = SuiteConfig::new(&name, ring(&r)?, trials, seed);
            cfg.realization = realization;
            cfg.mutation = inject_mutation;
            let report = harness::run_suite(&cfg)?;
            let text = report.to_json();
            if let Some(path) = json {
                std::fs::write(&path, format!("{text}\n"))
                    .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            for c in &report.checks {
                let status = if c.passed() { "pass" } else { "FAIL" };
                println!("{status}  {}", c.name);
            }
            let s = &report.summary;
            println!("{}: {} checks, {} passed, {} failed", report.suite, s.total, s.passed, s.failed);
            Ok(report.exit_code())
        }
        Command::Weyl { realization, ring: r, x, seed } => {
            let rep = harness::weyl_report(&realization, &ring(&r)?, &x, seed)?;
            println!("{}", to_json(&rep));
            let ok = rep.constructible && rep.is_weyl == Some(true) && rep.square_equals_coroot != Some(false);
            Ok(if ok { 0 } else { 1 })
        }
        Command::E7 { ring: r, action, vector } => {
            println!("{}", harness::e7_action(&ring(&r)?, &action, &vector)?);
            Ok(0)
        }
        Command::ValidateE6 { matrix, ring: r } => {
            let text = std::fs::read_to_string(&matrix)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", matrix.display())))?;
            match harness::validate_e6(&ring(&r)?, &text)? {
                Validation::Accepted(_) => {
                    println!("accepted: N(Mx) = N(x)");
                    Ok(0)
                }
                Validation::Rejected { monomial, coefficient } => {
                    println!("rejected: N(Mx) - N(x) has the term {coefficient}*{monomial}");
                    Ok(1)
                }
            }
        }
        Command::Grading { index, params } => {
            let ps: Vec<usize> = params
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| p.parse().map_err(|_| Error::Usage(format!("bad parameter `{p}`"))))
                .collect::<Result<_>>()?;
            println!("{}", to_json(&harness::grading_report(&index, &ps)?));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("weylkit: {e}");
            ExitCode::from(harness::error_exit_code(&e) as u8)
        }
    }
}
