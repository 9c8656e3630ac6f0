//! Weak admissibility, by closed-form conditions and by brute force.

mod closed_form;
mod data;
mod general;

pub use closed_form::{
    evaluate, ClosedForm, ClosedFormData, Condition, LCandidate, Part, Relation, ScalarVals,
};
pub use data::{closed_form_data, t_j_count};
pub use general::{check_general, GeneralVerdict, LineRecord};

use alloc::sync::Arc;

use crate::builder::{build_on_tower, CaseParams};
use crate::phimod::{validate, FiltrationData, PhiNModule};
use crate::tower::{build_tower, Tower};
use crate::{Error, Result};

pub fn check_closed_form(params: &CaseParams, tower: &Tower) -> Result<ClosedForm> {
    params.check_schema(&tower.field)?;
    Ok(evaluate(&closed_form_data(params, tower)?))
}

#[derive(Clone, Debug)]
pub struct AdmissReport {
    pub general: GeneralVerdict,
    pub closed_form: ClosedForm,
    pub agree: bool,
}

impl AdmissReport {
    pub fn admissible(&self) -> bool {
        self.general.passed
    }
}

/// Builds the module, runs both checkers and compares their verdicts.
pub fn oracle_compare(params: &CaseParams) -> Result<(AdmissReport, PhiNModule, FiltrationData)> {
    oracle_compare_on(params, Arc::new(build_tower(&params.tower)?))
}

/// `oracle_compare` on a prebuilt tower matching `params.tower`.
pub fn oracle_compare_on(
    params: &CaseParams,
    tower: Arc<Tower>,
) -> Result<(AdmissReport, PhiNModule, FiltrationData)> {
    let (d, fil) = build_on_tower(params, tower.clone())?;
    let report = validate(&d, &fil);
    if let Some(c) = report.failures().next() {
        return Err(Error::Internal(alloc::format!(
            "built module fails '{}'",
            c.name
        )));
    }
    let general = check_general(&d, &fil)?;
    let closed_form = check_closed_form(params, &tower)?;
    let agree = general.passed == closed_form.passed;
    Ok((
        AdmissReport {
            general,
            closed_form,
            agree,
        },
        d,
        fil,
    ))
}
