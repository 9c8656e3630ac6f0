//! Reports: TOML documents behind a version header line.

use phimod::admissibility::{ClosedForm, GeneralVerdict, Part, Relation};
use phimod::builder::{Characters, Partition};
use phimod::classify::{Classification, TypeDescription};
use phimod::phimod::{FiltrationData, Mat2, PhiNModule, StableTag, ValidationReport};
use phimod::Q64;
use serde::Serialize;

use crate::expr::format_coeff;

pub const HEADER: &str = "# phimod report, format 1";

/// Accumulates named sections in insertion order.
#[derive(Debug, Default)]
pub struct Report {
    sections: Vec<(String, toml::Value)>,
}

impl Report {
    pub fn add(&mut self, name: &str, section: impl Serialize) {
        let v = toml::Value::try_from(section).expect("report sections serialize to TOML");
        self.sections.push((name.to_string(), v));
    }

    pub fn render(&self, command: &str, status: &str) -> String {
        let mut out = format!("{HEADER}\ncommand = \"{command}\"\nstatus = \"{status}\"\n");
        for (name, v) in &self.sections {
            let mut t = toml::Table::new();
            t.insert(name.clone(), v.clone());
            out.push('\n');
            out.push_str(&toml::to_string(&t).expect("TOML rendering"));
        }
        out
    }
}

pub fn q(x: Q64) -> String {
    x.to_string()
}

pub fn matrix(m: &Mat2) -> [[String; 2]; 2] {
    [
        [format_coeff(&m.a[0][0]), format_coeff(&m.a[0][1])],
        [format_coeff(&m.a[1][0]), format_coeff(&m.a[1][1])],
    ]
}

#[derive(Serialize)]
pub struct GenSection {
    pub name: String,
    pub shift: u32,
    pub mats: Vec<[[String; 2]; 2]>,
}

#[derive(Serialize)]
pub struct ModuleSection {
    pub n0: usize,
    pub frob: Vec<[[String; 2]; 2]>,
    pub mono: Vec<[[String; 2]; 2]>,
    pub galois: Vec<GenSection>,
    pub weights: Vec<[i64; 2]>,
    /// "u : v" or "none" per (j, g).
    pub lines: Vec<String>,
}

pub fn module(d: &PhiNModule, fil: &FiltrationData) -> ModuleSection {
    let gens = d.tower.group.generators();
    ModuleSection {
        n0: d.n0(),
        frob: d.frob.iter().map(matrix).collect(),
        mono: d.mono.iter().map(matrix).collect(),
        galois: gens
            .iter()
            .zip(&d.galois)
            .map(|((name, _), a)| GenSection {
                name: name.clone(),
                shift: a.shift,
                mats: a.mats.iter().map(matrix).collect(),
            })
            .collect(),
        weights: fil.weights.iter().map(|&(a, b)| [a, b]).collect(),
        lines: fil
            .lines
            .iter()
            .map(|l| match l {
                Some(l) => format!("{} : {}", format_coeff(l.u()), format_coeff(l.v())),
                None => "none".into(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Serialize)]
pub struct ValidationSection {
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
}

pub fn validation(r: &ValidationReport) -> ValidationSection {
    ValidationSection {
        passed: r.all_passed(),
        checks: r
            .checks
            .iter()
            .map(|c| CheckEntry {
                name: c.name.clone(),
                passed: c.passed,
                counterexample: c.counterexample.clone(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct LineEntry {
    /// ℓ_i per component, as "u : v".
    pub line: Vec<String>,
    pub t_h: String,
    pub t_n: String,
    pub passed: bool,
    pub generic: bool,
}

#[derive(Serialize)]
pub struct GeneralSection {
    pub t_h: String,
    pub t_n: String,
    pub stable_family: &'static str,
    pub conditional: bool,
    pub passed: bool,
    pub lines: Vec<LineEntry>,
}

pub fn general(v: &GeneralVerdict) -> GeneralSection {
    GeneralSection {
        t_h: q(v.t_h),
        t_n: q(v.t_n),
        stable_family: match v.tag {
            StableTag::Finite => "finite",
            StableTag::ScalarFamily => "scalar family",
        },
        conditional: v.conditional,
        passed: v.passed,
        lines: v
            .lines
            .iter()
            .map(|l| LineEntry {
                line: l
                    .line
                    .lines
                    .iter()
                    .map(|x| format!("{} : {}", format_coeff(x.u()), format_coeff(x.v())))
                    .collect(),
                t_h: q(l.t_h),
                t_n: q(l.t_n),
                passed: l.passed,
                generic: l.generic,
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct ConditionEntry {
    pub label: String,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub passed: bool,
    pub binding: bool,
}

#[derive(Serialize)]
pub struct ClosedFormSection {
    pub passed: bool,
    pub conditions: Vec<ConditionEntry>,
    pub t_j: Vec<String>,
}

pub fn closed_form(c: &ClosedForm) -> ClosedFormSection {
    ClosedFormSection {
        passed: c.passed,
        conditions: c
            .trace
            .iter()
            .map(|x| ConditionEntry {
                label: x.label.clone(),
                lhs: q(x.lhs),
                relation: match x.relation {
                    Relation::Eq => "=",
                    Relation::Le => "<=",
                },
                rhs: q(x.rhs),
                passed: x.passed,
                binding: x.binding,
            })
            .collect(),
        t_j: c.t_j_values.iter().map(|v| q(*v)).collect(),
    }
}

#[derive(Serialize)]
pub struct CharactersSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    pub chi1: Vec<String>,
    pub chi2: Vec<String>,
}

pub fn characters(c: &Characters) -> CharactersSection {
    match c {
        Characters::Cyclic { chi1, chi2 } => CharactersSection {
            s: None,
            chi1: vec![q(*chi1)],
            chi2: vec![q(*chi2)],
        },
        Characters::Induced(d) => CharactersSection {
            s: Some(d.s),
            chi1: d.chi1.iter().map(|v| q(*v)).collect(),
            chi2: d.chi2.iter().map(|v| q(*v)).collect(),
        },
    }
}

#[derive(Serialize)]
pub struct ClassificationSection {
    pub case: String,
    pub phi: &'static str,
    pub conditional: bool,
    pub type_case: u8,
    pub type_description: String,
    pub characters: CharactersSection,
}

pub fn classification(c: &Classification) -> ClassificationSection {
    let fmt_char =
        |g: &phimod::tower::GroupChar| g.ab.iter().map(|v| q(*v)).collect::<Vec<_>>().join(", ");
    ClassificationSection {
        case: c.case.map_or("unclassified", |k| k.name()).to_string(),
        phi: c.phi.shape.name(),
        conditional: c.phi.conditional,
        type_case: c.type_case.number(),
        type_description: match &c.inertial.description {
            TypeDescription::Scalar(x) => format!("scalar chi + chi, chi = ({})", fmt_char(x)),
            TypeDescription::Pair(x, y) => format!(
                "chi1 + chi2, chi1 = ({}), chi2 = ({})",
                fmt_char(x),
                fmt_char(y)
            ),
            TypeDescription::Induced { conjugate, .. } => {
                format!(
                    "induced from Gal(F/K'), conjugate character = ({})",
                    fmt_char(conjugate)
                )
            }
        },
        characters: characters(&c.characters),
    }
}

pub fn partition(p: &Partition) -> String {
    p.iter()
        .map(|x| match x {
            None => "-".to_string(),
            Some(Part::I1) => "I1".into(),
            Some(Part::I2) => "I2".into(),
            Some(Part::I3) => "I3".into(),
            Some(Part::Point { zero_product: true }) => "coordinate".into(),
            Some(Part::Point {
                zero_product: false,
            }) => "generic".into(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
