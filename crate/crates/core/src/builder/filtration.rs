//! Filtration lines on the fibers, realized through eigenvector bases.
//!
//! Vectors over a fiber are indexed by the group element labelling j_F; the
//! values do not depend on j, so each basis is computed once.

use alloc::vec::Vec;

use super::matrices::basis_characters;
use super::params::{CaseKind, CaseParams, FilChoice};
use crate::coeff::ECoeff;
use crate::phimod::{FiltrationData, ProjLine};
use crate::tower::{lemma_basis, Tower};
use crate::Result;

/// Ingredients shared by all j: x_0 = x_1^{-1}x_2 (PS-split), or the pair
/// x_{j,1}, x_{j,2} and the coset representative t = σ or ι (supercuspidal).
pub struct FiberBasis {
    pub x0: Option<Vec<ECoeff>>,
    pub pair: Option<[Vec<ECoeff>; 2]>,
    /// Index of g·t for every fiber index g.
    pub conj: Vec<usize>,
}

impl FiberBasis {
    pub fn new(params: &CaseParams, tower: &Tower) -> Result<Self> {
        let ctx = &tower.field;
        let group = &tower.group;
        let (c1, c2) = basis_characters(params, tower)?;
        let mut out = FiberBasis {
            x0: None,
            pair: None,
            conj: Vec::new(),
        };
        match params.kind() {
            CaseKind::PsSplit => {
                let id = [group.identity()];
                let x1 = lemma_basis(ctx, &tower.torsor, 0, |_| true, &id, &c1)?;
                let x2 = lemma_basis(ctx, &tower.torsor, 0, |_| true, &id, &c2)?;
                let x0 = x1.vectors[0]
                    .iter()
                    .zip(&x2.vectors[0])
                    .map(|(a, b)| b.checked_div(a))
                    .collect::<Result<Vec<_>>>()?;
                out.x0 = Some(x0);
            }
            CaseKind::ScUnramified | CaseKind::ScRamified => {
                let reps = group.k_prime_coset_reps();
                let b = lemma_basis(
                    ctx,
                    &tower.torsor,
                    0,
                    |g| group.in_k_prime_subgroup(g),
                    &reps,
                    &c1,
                )?;
                let t = &reps[1];
                out.conj = group
                    .elements()
                    .map(|g| group.index_of(&group.mul(&g, t)))
                    .collect();
                out.pair = Some([b.vectors[0].clone(), b.vectors[1].clone()]);
            }
            _ => {}
        }
        Ok(out)
    }

    /// x_j(a_1, a_2) over the fiber.
    pub fn x(&self, a1: &ECoeff, a2: &ECoeff) -> Vec<ECoeff> {
        let [v1, v2] = self.pair.as_ref().expect("supercuspidal basis");
        v1.iter().zip(v2).map(|(x, y)| x * a1 + y * a2).collect()
    }

    /// x_j^t(a_1, a_2)(g) = x_j(a_1, a_2)(g·t).
    pub fn x_conj(&self, x: &[ECoeff]) -> Vec<ECoeff> {
        self.conj.iter().map(|&i| x[i].clone()).collect()
    }
}

pub(crate) fn filtration(
    params: &CaseParams,
    tower: &Tower,
    basis: &FiberBasis,
) -> Result<FiltrationData> {
    let ctx = &tower.field;
    let torsor = &tower.torsor;
    let fiber = torsor.fiber_size();
    let mut lines = alloc::vec![None; torsor.jf_count()];
    for (j, choice) in params.fil.iter().enumerate() {
        let Some(choice) = choice else { continue };
        let per_g: Vec<ProjLine> = match (params.kind(), choice) {
            (CaseKind::Steinberg, FilChoice::I1) | (CaseKind::PsSplit, FilChoice::I2 { .. }) => {
                alloc::vec![ProjLine::e2(ctx); fiber]
            }
            (CaseKind::PsNonSplit | CaseKind::PsSplit, FilChoice::I1) => {
                alloc::vec![ProjLine::e1(ctx); fiber]
            }
            (CaseKind::Steinberg, FilChoice::I2 { l }) => {
                let l = l.clone().unwrap_or_else(|| ctx.zero());
                alloc::vec![ProjLine::new(ctx.one(), -l)?; fiber]
            }
            (CaseKind::PsNonSplit, FilChoice::I2 { l }) => {
                let l = l.clone().unwrap_or_else(|| ctx.zero());
                alloc::vec![ProjLine::new(-l, ctx.one())?; fiber]
            }
            (CaseKind::PsSplit, FilChoice::I3 { l }) => {
                let x0 = basis.x0.as_ref().expect("PS-split basis");
                x0.iter()
                    .map(|x| ProjLine::new(ctx.one(), -(l * x)))
                    .collect::<Result<_>>()?
            }
            (CaseKind::PsIrreducible, FilChoice::Point { a, b }) => {
                alloc::vec![ProjLine::new(a.clone(), b.clone())?; fiber]
            }
            (_, FilChoice::Point { a, b }) => {
                let x = basis.x(a, b);
                let xt = basis.x_conj(&x);
                x.into_iter()
                    .zip(xt)
                    .map(|(u, v)| ProjLine::new(u, v))
                    .collect::<Result<_>>()?
            }
            (kind, c) => {
                return Err(crate::Error::Schema(alloc::format!(
                    "{c:?} is not a valid choice for {}",
                    kind.name()
                )))
            }
        };
        for (g, l) in per_g.into_iter().enumerate() {
            lines[j * fiber + g] = Some(l);
        }
    }
    Ok(FiltrationData {
        weights: params.weights.clone(),
        lines,
    })
}
