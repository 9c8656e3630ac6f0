//! Frobenius, monodromy and Galois matrices of the canonical modules.

use alloc::vec::Vec;

use super::params::{CaseKind, CaseParams, Characters, Scalars};
use crate::coeff::{ECoeff, ECtx};
use crate::phimod::{GenAction, Mat2};
use crate::tower::{GroupChar, Tower};
use crate::{Error, Result, Q64};

fn inv(x: &ECoeff) -> Result<ECoeff> {
    x.inv()
}

pub(crate) fn frobenius(params: &CaseParams, tower: &Tower) -> Result<Vec<Mat2>> {
    let ctx = &tower.field;
    let n0 = tower.tower.n0 as usize;
    let m0 = tower.tower.m0 as usize;
    let id = Mat2::identity(ctx);
    let mut frob = alloc::vec![id; n0];
    match &params.scalars {
        Scalars::Steinberg { alphas } => {
            if alphas.len() > n0 {
                return Err(Error::Schema(alloc::format!(
                    "at most {n0} Steinberg scalars"
                )));
            }
            let p = ctx.from_int(tower.tower.p as i64);
            for (i, a) in frob.iter_mut().enumerate() {
                let ai = alphas
                    .get(i)
                    .map(inv)
                    .transpose()?
                    .unwrap_or_else(|| ctx.one());
                *a = Mat2::diag(&p * &ai, ai);
            }
        }
        Scalars::PsIrreducible { a, b, c } => {
            frob[0] = Mat2::new(a.clone(), b.clone(), c.clone(), ctx.zero())
        }
        Scalars::PsNonSplit { a, b } => {
            frob[0] = Mat2::new(a.clone(), b.clone(), ctx.zero(), a.clone())
        }
        Scalars::PsSplit { a, b } => frob[0] = Mat2::diag(inv(a)?, inv(b)?),
        Scalars::ScUnramified { alpha1, beta1 } => {
            let (ia, ib) = (inv(alpha1)?, inv(beta1)?);
            for (i, a) in frob.iter_mut().enumerate() {
                if i % (2 * m0) == 0 {
                    *a = Mat2::diag(ia.clone(), ib.clone());
                } else if i % (2 * m0) == m0 {
                    *a = Mat2::diag(ib.clone(), ia.clone());
                }
            }
        }
        Scalars::ScRamified { alpha1 } => {
            let ia = inv(alpha1)?;
            for (i, a) in frob.iter_mut().enumerate() {
                if i % m0 == 0 {
                    *a = Mat2::scalar(ia.clone());
                }
            }
        }
    }
    Ok(frob)
}

/// N e_1 = e_2, N e_2 = 0 in the Steinberg case; zero otherwise.
pub(crate) fn monodromy(kind: CaseKind, ctx: &ECtx, n0: usize) -> Vec<Mat2> {
    let n = if kind == CaseKind::Steinberg {
        Mat2::new(ctx.zero(), ctx.zero(), ctx.one(), ctx.zero())
    } else {
        Mat2::zero(ctx)
    };
    alloc::vec![n; n0]
}

/// Characters by which inertia acts on e_1 and e_2.
pub(crate) fn basis_characters(
    params: &CaseParams,
    tower: &Tower,
) -> Result<(GroupChar, GroupChar)> {
    let group = &tower.group;
    match &params.characters {
        Characters::Cyclic { chi1, chi2 } => {
            let c1 = GroupChar {
                top: Q64::from_integer(0),
                ab: alloc::vec![*chi1],
            };
            let c2 = if params.kind() == CaseKind::PsSplit {
                *chi2
            } else {
                *chi1
            };
            let c2 = GroupChar {
                top: Q64::from_integer(0),
                ab: alloc::vec![c2],
            };
            let n = Q64::from_integer(group.order() as i64);
            if !(*chi1 * n).is_integer() || !(c2.ab[0] * n).is_integer() {
                return Err(Error::Character(alloc::format!(
                    "character order must divide {}",
                    group.order()
                )));
            }
            Ok((c1, c2))
        }
        Characters::Induced(chi) => {
            let twist = if params.kind() == CaseKind::ScUnramified {
                tower.tower.q as i64
            } else {
                1
            };
            Ok((
                chi.to_group_char(group)?,
                chi.to_group_char_twisted(group, twist, -1)?,
            ))
        }
    }
}

pub(crate) fn galois(params: &CaseParams, tower: &Tower) -> Result<Vec<GenAction>> {
    let ctx = &tower.field;
    let group = &tower.group;
    let n0 = tower.tower.n0 as usize;
    let (c1, c2) = basis_characters(params, tower)?;
    let mut out = Vec::new();
    for (name, g) in group.generators() {
        let shift = group.shift(g);
        let m = match (params.kind(), name.as_str()) {
            (CaseKind::ScUnramified, "sigma") => {
                Mat2::new(ctx.zero(), ctx.one(), ctx.one(), ctx.zero())
            }
            (CaseKind::ScRamified, "sigma") => {
                let Characters::Induced(chi) = &params.characters else {
                    unreachable!()
                };
                let sign = if chi.s.rem_euclid(2) == 0 {
                    ctx.one()
                } else {
                    -ctx.one()
                };
                Mat2::diag(ctx.one(), sign)
            }
            (CaseKind::ScRamified, "iota") => {
                let d = group.generator("delta").expect("delta generator");
                Mat2::new(ctx.zero(), c1.value(ctx, d)?, ctx.one(), ctx.zero())
            }
            _ => Mat2::diag(c1.value(ctx, g)?, c2.value(ctx, g)?),
        };
        out.push(GenAction {
            shift,
            mats: alloc::vec![m; n0],
        });
    }
    Ok(out)
}
