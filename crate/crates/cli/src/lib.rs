//! Scenario-driven front end for the `phimod` library: TOML scenarios in,
//! versioned TOML reports out.

pub mod batch;
pub mod commands;
pub mod error;
pub mod expr;
pub mod report;
pub mod sample;
pub mod scenario;

use std::path::PathBuf;

use clap::Parser;

use commands::{Command, Flags, Outcome};
use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "phimod",
    version,
    about = "Build, validate, classify and admissibility-check rank-2 filtered (phi, N, Gal(F/K), E)-modules",
    after_help = "COMMAND is one of validate, build, check, classify, oracle, enumerate, batch. \
                  With only a scenario path, the commands listed in its [run] section are run."
)]
pub struct Cli {
    /// `COMMAND [SCENARIO]` or `SCENARIO`.
    #[arg(num_args = 1..=2, required = true)]
    pub args: Vec<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub case: Option<String>,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn load(path: &str) -> Result<scenario::Scenario, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    scenario::parse(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn plan(cli: &Cli) -> Result<(Vec<Command>, Option<scenario::Scenario>), CliError> {
    let first = &cli.args[0];
    match (Command::from_name(first), cli.args.get(1)) {
        (Some(cmd), path) => Ok((vec![cmd], path.map(|p| load(p)).transpose()?)),
        (None, Some(_)) => Err(CliError::Input(format!("unknown command '{first}'"))),
        (None, None) => {
            let sc = load(first)?;
            let cmds = sc
                .run
                .commands
                .iter()
                .map(|c| {
                    Command::from_name(c).ok_or_else(|| {
                        CliError::Input(format!("run.commands: unknown command '{c}'"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if cmds.is_empty() {
                return Err(CliError::Input(
                    "run.commands: empty; name a command on the command line".into(),
                ));
            }
            Ok((cmds, Some(sc)))
        }
    }
}

/// Runs the parsed command line; the exit status is the worst of the commands'.
pub fn run(cli: &Cli) -> Outcome {
    let flags = Flags {
        seed: cli.seed,
        n: cli.n,
        case: cli.case.clone(),
    };
    let (cmds, sc) = match plan(cli) {
        Ok(x) => x,
        Err(e) => {
            return Outcome {
                code: e.exit_code(),
                report: String::new(),
                notes: vec![format!("error: {e}")],
            }
        }
    };
    let mut total = Outcome {
        code: 0,
        report: String::new(),
        notes: Vec::new(),
    };
    for cmd in cmds {
        match commands::run(cmd, sc.as_ref(), &flags) {
            Ok(o) => {
                if !total.report.is_empty() {
                    total.report.push('\n');
                }
                total.report.push_str(&o.report);
                total.notes.extend(o.notes);
                total.code = total.code.max(o.code);
            }
            Err(e) => {
                total.notes.push(format!("error: {}: {e}", cmd.name()));
                total.code = total.code.max(e.exit_code());
            }
        }
    }
    total
}
