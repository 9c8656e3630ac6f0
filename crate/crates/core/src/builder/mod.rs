//! Canonical modules of the six classification cases.

mod enumerate;
mod filtration;
mod matrices;
mod params;

pub use enumerate::{enumerate_admissible_partitions, Partition};
pub use filtration::FiberBasis;
pub use params::{CaseKind, CaseParams, Characters, FilChoice, Scalars};

use alloc::format;
use alloc::sync::Arc;

use num_bigint::BigInt;

use crate::coeff::{sqrt_in_e, NoRootReason, SqrtResult};
use crate::phimod::{validate, FiltrationData, PhiNModule, DEFAULT_SQRT_BOUND};
use crate::tower::{build_tower, check_extendability, Tower};
use crate::{Error, Result};

/// Preconditions that need field arithmetic: irreducibility of X² − aX − bc
/// and non-extendability of χ.
pub fn check_preconditions(params: &CaseParams, tower: &Tower) -> Result<()> {
    params.check_schema(&tower.field)?;
    match (&params.scalars, &params.characters) {
        (Scalars::PsIrreducible { a, b, c }, _) => {
            let disc = a * a + b * c * tower.field.from_int(4);
            match sqrt_in_e(&disc, &BigInt::from(DEFAULT_SQRT_BOUND))? {
                SqrtResult::Root(_) => Err(Error::Precondition(
                    "X^2 - aX - bc is reducible in E[X]: its discriminant is a square".into(),
                )),
                SqrtResult::NoRoot(
                    NoRootReason::NotSquare(_) | NoRootReason::BoundCertified { .. },
                ) => Ok(()),
            }
        }
        (_, Characters::Induced(chi)) => {
            if check_extendability(chi, &tower.group)? {
                let why = if params.kind() == CaseKind::ScUnramified {
                    "s = 0 mod q+1 and chi_2^2 = 1"
                } else {
                    "chi_2^2 = 1"
                };
                Err(Error::Precondition(format!(
                    "chi extends ({why}); the case needs a non-extendable character"
                )))
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}

/// Builds without running `validate` on the result.
pub fn build_module_unchecked(params: &CaseParams) -> Result<(PhiNModule, FiltrationData)> {
    let tower = Arc::new(build_tower(&params.tower)?);
    build_on_tower(params, tower)
}

pub fn build_on_tower(
    params: &CaseParams,
    tower: Arc<Tower>,
) -> Result<(PhiNModule, FiltrationData)> {
    check_preconditions(params, &tower)?;
    let n0 = tower.tower.n0 as usize;
    let frob = matrices::frobenius(params, &tower)?;
    let mono = matrices::monodromy(params.kind(), &tower.field, n0);
    let galois = matrices::galois(params, &tower)?;
    let basis = FiberBasis::new(params, &tower)?;
    let fil = filtration::filtration(params, &tower, &basis)?;
    Ok((
        PhiNModule {
            tower,
            frob,
            mono,
            galois,
        },
        fil,
    ))
}

pub fn build_module(params: &CaseParams) -> Result<(PhiNModule, FiltrationData)> {
    let (d, fil) = build_module_unchecked(params)?;
    let report = validate(&d, &fil);
    if let Some(c) = report.failures().next() {
        return Err(Error::Internal(format!(
            "built module fails '{}' at {}",
            c.name,
            c.counterexample.as_deref().unwrap_or("?")
        )));
    }
    Ok((d, fil))
}
