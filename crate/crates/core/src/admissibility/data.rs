//! Closed-form inputs read off the case parameters: valuations, partitions
//! and t_j values for the 𝔏-candidates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::closed_form::{ClosedFormData, LCandidate, Part, ScalarVals};
use crate::builder::{CaseParams, Characters, FiberBasis, FilChoice, Scalars};
use crate::coeff::ECoeff;
use crate::tower::Tower;
use crate::{Error, Result, Q64};

/// |{positions k : values[k] = targets[k]}| / len, with exact equality in E.
pub fn t_j_count(values: &[ECoeff], targets: &[ECoeff]) -> Result<Q64> {
    if values.is_empty() || values.len() != targets.len() {
        return Err(Error::InvalidParameter(
            "t_j needs two fibers of equal positive length".into(),
        ));
    }
    let hits = values.iter().zip(targets).filter(|(a, b)| a == b).count();
    Ok(Q64::new(hits as i64, values.len() as i64))
}

fn val(x: &ECoeff) -> Result<Q64> {
    x.valuation()
        .ok_or_else(|| Error::Schema("Frobenius scalar is zero".into()))
}

fn frac_eq(a: Q64, b: Q64) -> bool {
    (a - b).is_integer()
}

pub fn closed_form_data(params: &CaseParams, tower: &Tower) -> Result<ClosedFormData> {
    let vals = match &params.scalars {
        Scalars::Steinberg { alphas } => {
            let mut s = Q64::from_integer(0);
            for a in alphas {
                s += val(a)?;
            }
            ScalarVals::Steinberg { sum_alpha: s }
        }
        Scalars::PsIrreducible { b, c, .. } => ScalarVals::PsIrreducible {
            v_bc: val(b)? + val(c)?,
        },
        Scalars::PsNonSplit { a, .. } => ScalarVals::PsNonSplit { v_a: val(a)? },
        Scalars::PsSplit { a, b } => ScalarVals::PsSplit {
            v_a: val(a)?,
            v_b: val(b)?,
        },
        Scalars::ScUnramified { alpha1, beta1 } => ScalarVals::ScUnramified {
            v_alpha: val(alpha1)?,
            v_beta: val(beta1)?,
        },
        Scalars::ScRamified { alpha1 } => ScalarVals::ScRamified {
            v_alpha: val(alpha1)?,
        },
    };
    let parts = params
        .fil
        .iter()
        .map(|c| {
            c.as_ref().map(|c| match c {
                FilChoice::I1 => Part::I1,
                FilChoice::I2 { .. } => Part::I2,
                FilChoice::I3 { .. } => Part::I3,
                FilChoice::Point { a, b } => Part::Point {
                    zero_product: a.is_zero() || b.is_zero(),
                },
            })
        })
        .collect();
    let l_candidates = l_candidates(params, tower)?;
    Ok(ClosedFormData {
        e_k: params.tower.e_k as i64,
        weights: params.weights.clone(),
        vals,
        parts,
        l_candidates,
    })
}

fn l_candidates(params: &CaseParams, tower: &Tower) -> Result<Vec<LCandidate>> {
    match (&params.scalars, &params.characters) {
        (Scalars::PsSplit { a, b }, Characters::Cyclic { chi1, chi2 }) => {
            if a != b || !frac_eq(*chi1, *chi2) {
                return Ok(Vec::new());
            }
            let basis = FiberBasis::new(params, tower)?;
            let x0 = basis.x0.as_ref().expect("PS-split basis");
            let x_e = &x0[0];
            if x0.iter().any(|x| x != x_e) {
                return Err(Error::Internal(
                    "x_0 is not constant although chi_1 = chi_2".into(),
                ));
            }
            let mut cands: Vec<ECoeff> = Vec::new();
            for c in params.fil.iter().flatten() {
                if let FilChoice::I3 { l } = c {
                    let v = l * x_e;
                    if !cands.contains(&v) {
                        cands.push(v);
                    }
                }
            }
            let mut out = Vec::new();
            for (k, cand) in cands.iter().enumerate() {
                let mut t = Vec::with_capacity(params.fil.len());
                for c in &params.fil {
                    t.push(match c {
                        Some(FilChoice::I3 { l }) => {
                            let values: Vec<ECoeff> = x0.iter().map(|x| l * x).collect();
                            t_j_count(&values, &alloc::vec![cand.clone(); values.len()])?
                        }
                        _ => Q64::from_integer(0),
                    });
                }
                out.push(LCandidate {
                    name: format!("#{k}"),
                    t,
                });
            }
            Ok(out)
        }
        (Scalars::ScUnramified { .. } | Scalars::ScRamified { .. }, _) => {
            sc_candidates(params, tower)
        }
        _ => Ok(Vec::new()),
    }
}

/// 𝔏 ∈ (F_0⊗E)^× is recorded by 𝔏_0 through 𝔏_i = c_i·𝔏_0, where c_i is
/// the product of the ratios α/β the Frobenius table prescribes.
fn component_factors(params: &CaseParams, tower: &Tower) -> Result<Vec<ECoeff>> {
    let ctx = &tower.field;
    let n0 = tower.tower.n0 as usize;
    let m0 = tower.tower.m0 as usize;
    let mut c = alloc::vec![ctx.one(); n0];
    if let Scalars::ScUnramified { alpha1, beta1 } = &params.scalars {
        let up = alpha1.checked_div(beta1)?;
        let down = beta1.checked_div(alpha1)?;
        for i in 1..n0 {
            let prev = i - 1;
            c[i] = if prev % (2 * m0) == 0 {
                &c[prev] * &up
            } else if prev % (2 * m0) == m0 {
                &c[prev] * &down
            } else {
                c[prev].clone()
            };
        }
    }
    Ok(c)
}

fn sc_candidates(params: &CaseParams, tower: &Tower) -> Result<Vec<LCandidate>> {
    let basis = FiberBasis::new(params, tower)?;
    let factors = component_factors(params, tower)?;
    let torsor = &tower.torsor;
    let fiber = torsor.fiber_size();
    let nj = params.fil.len();
    let mut counts: BTreeMap<ECoeff, Vec<i64>> = BTreeMap::new();
    for (j, c) in params.fil.iter().enumerate() {
        let Some(FilChoice::Point { a, b }) = c else {
            continue;
        };
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let x = basis.x(a, b);
        let xt = basis.x_conj(&x);
        for g in 0..fiber {
            let i = torsor.component(j * fiber + g) as usize;
            let key = -(xt[g].checked_div(&x[g])?.checked_div(&factors[i])?);
            counts.entry(key).or_insert_with(|| alloc::vec![0; nj])[j] += 1;
        }
    }
    Ok(counts
        .into_values()
        .enumerate()
        .map(|(k, v)| LCandidate {
            name: format!("#{k}"),
            t: v.into_iter().map(|n| Q64::new(n, fiber as i64)).collect(),
        })
        .collect())
}
