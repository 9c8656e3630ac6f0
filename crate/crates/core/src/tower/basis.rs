//! Bases of χ^{-1}-eigenvectors on a torsor fiber.
//!
//! With H ⊆ Gal(F/K) acting on the fiber over j, the vector x_t is supported
//! on the orbit b_t·H and has x_t(b_t·h) = χ(h)^{-1}. Vectors are indexed by
//! the group element labelling the fiber point.

use alloc::format;
use alloc::vec::Vec;

use super::character::GroupChar;
use super::group::GroupElem;
use super::torsor::EmbeddingTorsor;
use crate::coeff::{ECoeff, ECtx};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct LemmaBasis {
    pub j: usize,
    pub reps: Vec<GroupElem>,
    pub vectors: Vec<Vec<ECoeff>>,
}

impl LemmaBasis {
    /// Σ a_t·x_t, componentwise over the fiber.
    pub fn combination(&self, coeffs: &[ECoeff]) -> Vec<ECoeff> {
        let n = self.vectors[0].len();
        (0..n)
            .map(|i| {
                self.vectors
                    .iter()
                    .zip(coeffs)
                    .fold(coeffs[0].ctx().zero(), |acc, (v, a)| acc + &v[i] * a)
            })
            .collect()
    }

    /// A vector of the product ring ∏ E is a unit iff every component is nonzero.
    pub fn is_unit(v: &[ECoeff]) -> bool {
        v.iter().all(|x| !x.is_zero())
    }
}

pub fn lemma_basis(
    ctx: &ECtx,
    torsor: &EmbeddingTorsor,
    j: usize,
    member: impl Fn(&GroupElem) -> bool,
    reps: &[GroupElem],
    chi: &GroupChar,
) -> Result<LemmaBasis> {
    let group = torsor.group();
    if !chi.is_character_on(group, &member) {
        return Err(Error::Character("χ is not a character of H".into()));
    }
    let n = group.order();
    let h_elems: Vec<GroupElem> = group.elements().filter(|x| member(x)).collect();
    let inv = chi.inverse();
    let mut owner: Vec<Option<usize>> = alloc::vec![None; n];
    let mut vectors = Vec::with_capacity(reps.len());
    for (t, b) in reps.iter().enumerate() {
        let mut x = alloc::vec![ctx.zero(); n];
        for h in &h_elems {
            let idx = group.index_of(&group.mul(b, h));
            if owner[idx].is_some_and(|o| o != t) {
                return Err(Error::Structure(format!(
                    "representatives {t} and {} share an orbit",
                    owner[idx].unwrap()
                )));
            }
            owner[idx] = Some(t);
            x[idx] = inv.value(ctx, h)?;
        }
        vectors.push(x);
    }
    if owner.iter().any(|o| o.is_none()) {
        return Err(Error::Structure("representatives miss an H-orbit".into()));
    }
    let basis = LemmaBasis {
        j,
        reps: reps.to_vec(),
        vectors,
    };
    verify(ctx, torsor, &basis, &h_elems, chi)?;
    Ok(basis)
}

/// x(j_F·h) = χ(h)^{-1}·x(j_F) on the whole fiber, and Σ x_t is a unit while
/// dropping any x_t leaves zeros.
fn verify(
    ctx: &ECtx,
    torsor: &EmbeddingTorsor,
    b: &LemmaBasis,
    h_elems: &[GroupElem],
    chi: &GroupChar,
) -> Result<()> {
    let group = torsor.group();
    let base = torsor.base_point(b.j);
    let gens: Vec<&GroupElem> = h_elems
        .iter()
        .filter(|h| {
            group
                .generators()
                .iter()
                .any(|(_, g)| g == *h || &group.mul(g, g) == *h)
        })
        .collect();
    let inv = chi.inverse();
    for x in &b.vectors {
        for (gi, val) in x.iter().enumerate() {
            for h in &gens {
                let moved = torsor.act(base + gi, h) - base;
                if x[moved] != val * &inv.value(ctx, h)? {
                    return Err(Error::Internal(
                        "eigenvector propagation rule violated".into(),
                    ));
                }
            }
        }
    }
    let ones: Vec<ECoeff> = b.vectors.iter().map(|_| ctx.one()).collect();
    if !LemmaBasis::is_unit(&b.combination(&ones)) {
        return Err(Error::Internal("sum of basis vectors is not a unit".into()));
    }
    for t in 0..b.vectors.len() {
        let mut c = ones.clone();
        c[t] = ctx.zero();
        if LemmaBasis::is_unit(&b.combination(&c)) {
            return Err(Error::Internal(
                "dropping a basis vector still gives a unit".into(),
            ));
        }
    }
    Ok(())
}
