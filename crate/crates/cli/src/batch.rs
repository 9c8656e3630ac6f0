//! Seeded batches: build, validate, compare both checkers and classify.

use std::collections::HashMap;
use std::sync::Arc;

use phimod::admissibility::{oracle_compare_on, AdmissReport, Relation};
use phimod::builder::{CaseKind, CaseParams, Characters};
use phimod::classify::{classify, scalar_type_check, Classification, TypeCase};
use phimod::phimod::validate;
use phimod::tower::{build_tower, Tower, TowerParams};
use phimod::{Error, Q64};
use serde::Serialize;

use crate::error::CliError;
use crate::report::q;
use crate::sample::{rng, sample};

/// Per-instance results of one batch member.
pub struct Instance {
    pub index: usize,
    pub params: CaseParams,
    pub report: AdmissReport,
    pub validated: bool,
    pub classification: Classification,
}

impl Instance {
    pub fn round_trip(&self) -> bool {
        let kind = self.params.kind();
        if self.classification.case != Some(kind) {
            return false;
        }
        let frac = |r: Q64| r - Q64::from_integer(r.floor().to_integer());
        match (&self.classification.characters, &self.params.characters) {
            (Characters::Cyclic { chi1, chi2 }, Characters::Cyclic { chi1: a, chi2: b }) => {
                frac(*chi1) == frac(*a) && (kind != CaseKind::PsSplit || frac(*chi2) == frac(*b))
            }
            (Characters::Induced(got), Characters::Induced(want)) => {
                let p = self.params.tower.p as i64;
                let q = p.pow(self.params.tower.m0);
                let delta = if kind == CaseKind::ScRamified {
                    q - 1
                } else {
                    q * q - 1
                };
                let same = |x: &[Q64], y: &[Q64]| {
                    x.len() == y.len() && x.iter().zip(y).all(|(u, v)| frac(*u) == frac(*v))
                };
                got.s.rem_euclid(delta) == want.s.rem_euclid(delta)
                    && same(&got.chi1, &want.chi1)
                    && same(&got.chi2, &want.chi2)
            }
            _ => false,
        }
    }

    pub fn expected_type_case(&self) -> TypeCase {
        match self.params.kind() {
            CaseKind::ScUnramified => TypeCase::InducedUnramified,
            CaseKind::ScRamified => TypeCase::InducedRamified,
            _ => TypeCase::Decomposable,
        }
    }

    /// The closed form's equality condition holds.
    pub fn equality_holds(&self) -> bool {
        self.report
            .closed_form
            .trace
            .iter()
            .filter(|c| c.relation == Relation::Eq)
            .all(|c| c.passed)
    }

    /// The closed form fails only through 𝔏-conditions.
    pub fn l_condition_decides(&self) -> bool {
        let failing: Vec<_> = self
            .report
            .closed_form
            .trace
            .iter()
            .filter(|c| c.binding && !c.passed)
            .collect();
        !failing.is_empty()
            && failing
                .iter()
                .all(|c| c.label.starts_with("(U_L)") || c.label.starts_with("(R_L)"))
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CaseSummary {
    pub case: String,
    pub seed: u64,
    pub instances: usize,
    /// Draws rejected by a builder precondition and redrawn.
    pub redrawn: usize,
    pub agree: usize,
    pub admissible: usize,
    pub validated: usize,
    pub round_trip: usize,
    pub trichotomy: usize,
    pub scalar_type: usize,
    pub equality_instances: usize,
    pub equality_newton_hodge: usize,
    pub t_j_values: usize,
    pub t_j_max: String,
    pub l_condition_decisive: usize,
    pub disagreements: Vec<usize>,
}

impl CaseSummary {
    pub fn all_agree(&self) -> bool {
        self.agree == self.instances
    }
}

/// Builds towers once per parameter set.
#[derive(Default)]
pub struct TowerCache(HashMap<TowerParams, Arc<Tower>>);

impl TowerCache {
    pub fn get(&mut self, p: &TowerParams) -> Result<Arc<Tower>, Error> {
        if let Some(t) = self.0.get(p) {
            return Ok(t.clone());
        }
        let t = Arc::new(build_tower(p)?);
        self.0.insert(p.clone(), t.clone());
        Ok(t)
    }
}

/// Seed of the case's stream, so cases are independent of each other.
pub fn case_seed(seed: u64, kind: CaseKind) -> u64 {
    let idx = CaseKind::ALL.iter().position(|k| *k == kind).unwrap() as u64;
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(idx)
}

/// Runs `n` valid instances of `kind`, calling `visit` on each in order.
pub fn run_case(
    kind: CaseKind,
    n: usize,
    seed: u64,
    cache: &mut TowerCache,
    mut visit: impl FnMut(&Instance),
) -> Result<CaseSummary, CliError> {
    let mut r = rng(case_seed(seed, kind));
    let mut s = CaseSummary {
        case: kind.name().into(),
        seed,
        ..Default::default()
    };
    let mut t_j_max: Option<Q64> = None;
    while s.instances < n {
        let params = sample(&mut r, kind)?;
        let tower = cache.get(&params.tower)?;
        let (report, d, fil) = match oracle_compare_on(&params, tower) {
            Ok(x) => x,
            Err(Error::Precondition(_)) => {
                s.redrawn += 1;
                continue;
            }
            Err(e) => {
                return Err(CliError::Input(format!(
                    "{} instance {}: {e}",
                    kind.name(),
                    s.instances
                )))
            }
        };
        let validated = validate(&d, &fil).all_passed();
        let classification = classify(&d)?;
        let inst = Instance {
            index: s.instances,
            params,
            report,
            validated,
            classification,
        };
        s.agree += usize::from(inst.report.agree);
        if !inst.report.agree {
            s.disagreements.push(inst.index);
        }
        s.admissible += usize::from(inst.report.admissible());
        s.validated += usize::from(validated);
        s.round_trip += usize::from(inst.round_trip());
        s.trichotomy += usize::from(inst.classification.type_case == inst.expected_type_case());
        s.scalar_type += usize::from(scalar_type_check(&d)?);
        if inst.equality_holds() {
            s.equality_instances += 1;
            s.equality_newton_hodge +=
                usize::from(inst.report.general.t_h == inst.report.general.t_n);
        }
        for v in &inst.report.closed_form.t_j_values {
            s.t_j_values += 1;
            t_j_max = Some(t_j_max.map_or(*v, |m| m.max(*v)));
        }
        s.l_condition_decisive += usize::from(inst.l_condition_decides());
        visit(&inst);
        s.instances += 1;
    }
    s.t_j_max = t_j_max.map_or_else(|| "none".into(), q);
    Ok(s)
}
