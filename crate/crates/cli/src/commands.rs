//! The seven commands. Each returns a rendered report and an exit status.

use std::sync::Arc;
use std::time::Instant;

use phimod::admissibility::{check_general, closed_form_data, oracle_compare};
use phimod::builder::{
    build_module, build_module_unchecked, enumerate_admissible_partitions, CaseKind, Characters,
    Scalars,
};
use phimod::classify::classify;
use phimod::phimod::{validate, FiltrationData, PhiNModule};
use phimod::tower::build_tower;
use serde::Serialize;

use crate::batch::{run_case, TowerCache};
use crate::error::CliError;
use crate::report::{self, Report};
use crate::scenario::{Input, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Build,
    Check,
    Classify,
    Oracle,
    Enumerate,
    Batch,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Validate,
        Command::Build,
        Command::Check,
        Command::Classify,
        Command::Oracle,
        Command::Enumerate,
        Command::Batch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Build => "build",
            Command::Check => "check",
            Command::Classify => "classify",
            Command::Oracle => "oracle",
            Command::Enumerate => "enumerate",
            Command::Batch => "batch",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Flags that override the scenario's `[run]` section.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub case: Option<String>,
}

pub struct Outcome {
    pub code: i32,
    pub report: String,
    /// Timing and progress notes, kept out of the deterministic report.
    pub notes: Vec<String>,
}

fn outcome(cmd: Command, report: Report, ok: bool, pass: &str, fail: &str) -> Outcome {
    Outcome {
        code: if ok { 0 } else { 1 },
        report: report.render(cmd.name(), if ok { pass } else { fail }),
        notes: Vec::new(),
    }
}

/// A validated module, from `[params]` through the builder or from `[module]`.
fn module_input(
    sc: &Scenario,
    report: &mut Report,
) -> Result<Option<(PhiNModule, FiltrationData)>, CliError> {
    let (d, fil) = match sc.input()? {
        Input::Params(p) => build_module_unchecked(&p)?,
        Input::Module(d, fil) => (d, fil),
    };
    let v = validate(&d, &fil);
    if !v.all_passed() {
        report.add("validation", report::validation(&v));
        return Ok(None);
    }
    Ok(Some((d, fil)))
}

pub fn run(cmd: Command, sc: Option<&Scenario>, flags: &Flags) -> Result<Outcome, CliError> {
    let mut rep = Report::default();
    let need =
        || sc.ok_or_else(|| CliError::Input(format!("{}: needs a scenario file", cmd.name())));
    match cmd {
        Command::Validate => {
            let sc = need()?;
            let (d, fil) = match sc.input()? {
                Input::Params(p) => build_module_unchecked(&p)?,
                Input::Module(d, fil) => (d, fil),
            };
            let v = validate(&d, &fil);
            rep.add("validation", report::validation(&v));
            Ok(outcome(cmd, rep, v.all_passed(), "valid", "invalid"))
        }
        Command::Build => {
            let Input::Params(p) = need()?.input()? else {
                return Err(CliError::Input("build: needs a [params] section".into()));
            };
            let (d, fil) = build_module(&p)?;
            rep.add("module", report::module(&d, &fil));
            Ok(outcome(cmd, rep, true, "built", "failed"))
        }
        Command::Check => match need()?.input()? {
            Input::Params(p) => {
                let (r, ..) = oracle_compare(&p)?;
                rep.add("general", report::general(&r.general));
                rep.add("closed_form", report::closed_form(&r.closed_form));
                rep.add("oracle", Agree { agree: r.agree });
                let ok = r.admissible() && r.agree;
                let fail = if r.agree { "inadmissible" } else { "disagree" };
                Ok(outcome(cmd, rep, ok, "admissible", fail))
            }
            Input::Module(..) => {
                let Some((d, fil)) = module_input(need()?, &mut rep)? else {
                    return Ok(outcome(cmd, rep, false, "", "invalid"));
                };
                let g = check_general(&d, &fil)?;
                rep.add("general", report::general(&g));
                Ok(outcome(cmd, rep, g.passed, "admissible", "inadmissible"))
            }
        },
        Command::Classify => {
            let Some((d, _)) = module_input(need()?, &mut rep)? else {
                return Ok(outcome(cmd, rep, false, "", "invalid"));
            };
            let c = classify(&d)?;
            rep.add("classification", report::classification(&c));
            Ok(outcome(cmd, rep, true, "classified", ""))
        }
        Command::Oracle => {
            let run = sc.map(|s| &s.run);
            let batch = sc.is_none() || flags.n.is_some() || run.is_some_and(|r| r.n.is_some());
            if batch {
                return batch_cmd(cmd, sc, flags, 500);
            }
            let Input::Params(p) = need()?.input()? else {
                return Err(CliError::Input("oracle: needs a [params] section".into()));
            };
            let (r, ..) = oracle_compare(&p)?;
            rep.add("general", report::general(&r.general));
            rep.add("closed_form", report::closed_form(&r.closed_form));
            rep.add("oracle", Agree { agree: r.agree });
            Ok(outcome(cmd, rep, r.agree, "agree", "disagree"))
        }
        Command::Enumerate => {
            let Input::Params(p) = need()?.input()? else {
                return Err(CliError::Input(
                    "enumerate: needs a [params] section".into(),
                ));
            };
            let tower = Arc::new(build_tower(&p.tower)?);
            p.check_schema(&tower.field)?;
            let data = closed_form_data(&p, &tower)?;
            let l_condition = match (&p.scalars, &p.characters) {
                (Scalars::PsSplit { a, b }, Characters::Cyclic { chi1, chi2 }) => {
                    a == b && (*chi1 - *chi2).is_integer()
                }
                _ => false,
            };
            let parts =
                enumerate_admissible_partitions(&data.vals, data.e_k, &data.weights, l_condition);
            rep.add(
                "enumerate",
                Partitions {
                    count: parts.len(),
                    partitions: parts.iter().map(report::partition).collect(),
                },
            );
            Ok(outcome(cmd, rep, !parts.is_empty(), "found", "none"))
        }
        Command::Batch => batch_cmd(cmd, sc, flags, 100),
    }
}

#[derive(Serialize)]
struct Agree {
    agree: bool,
}

#[derive(Serialize)]
struct Partitions {
    count: usize,
    partitions: Vec<String>,
}

#[derive(Serialize)]
struct BatchSection {
    seed: u64,
    n: usize,
    agreement: String,
    cases: Vec<crate::batch::CaseSummary>,
}

fn batch_cmd(
    cmd: Command,
    sc: Option<&Scenario>,
    flags: &Flags,
    default_n: usize,
) -> Result<Outcome, CliError> {
    let run = sc.map(|s| s.run.clone()).unwrap_or_default();
    let n = flags.n.or(run.n).unwrap_or(default_n);
    let seed = flags.seed.or(run.seed).unwrap_or(0);
    let case = flags.case.clone().or(run.case);
    let kinds: Vec<CaseKind> = match case.as_deref() {
        None | Some("all") => CaseKind::ALL.to_vec(),
        Some(name) => vec![CaseKind::from_name(name)
            .ok_or_else(|| CliError::Input(format!("--case: unknown case '{name}'")))?],
    };
    let mut cache = TowerCache::default();
    let mut cases = Vec::new();
    let mut notes = Vec::new();
    for kind in kinds {
        let start = Instant::now();
        let s = run_case(kind, n, seed, &mut cache, |_| {})?;
        notes.push(format!(
            "{}: {} instances in {:.2?}",
            kind.name(),
            s.instances,
            start.elapsed()
        ));
        cases.push(s);
    }
    let total: usize = cases.iter().map(|c| c.instances).sum();
    let agree: usize = cases.iter().map(|c| c.agree).sum();
    let ok = if cmd == Command::Oracle {
        agree == total
    } else {
        cases
            .iter()
            .all(|c| c.all_agree() && c.validated == c.instances && c.round_trip == c.instances)
    };
    let mut rep = Report::default();
    rep.add(
        "batch",
        BatchSection {
            seed,
            n,
            agreement: format!("{agree}/{total} agree"),
            cases,
        },
    );
    let mut out = outcome(cmd, rep, ok, "agree", "disagree");
    out.notes = notes;
    Ok(out)
}
