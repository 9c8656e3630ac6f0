//! The module D = ⊕_i D_i and its filtration on D_F = ⊕_{j_F} D_{F,j_F}.

use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};

use super::linalg::{Mat2, ProjLine};
use crate::coeff::ECtx;
use crate::tower::{GroupElem, Tower, Word};
use crate::{Error, Result};

/// Action of one group generator: D_i → D_{i+shift} via `mats[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenAction {
    pub shift: u32,
    pub mats: Vec<Mat2>,
}

#[derive(Clone, Debug)]
pub struct PhiNModule {
    pub tower: Arc<Tower>,
    /// A_i: D_i → D_{i+1}.
    pub frob: Vec<Mat2>,
    /// N_i: D_i → D_i.
    pub mono: Vec<Mat2>,
    /// Indexed like `tower.group.generators()`.
    pub galois: Vec<GenAction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationData {
    /// (k_{j,1}, k_{j,2}) per embedding j of K.
    pub weights: Vec<(i64, i64)>,
    /// Fil line per fiber element j_F, `None` exactly when k_{j,1} = k_{j,2}.
    pub lines: Vec<Option<ProjLine>>,
}

impl FiltrationData {
    pub fn weight(&self, j: usize) -> (i64, i64) {
        self.weights[j]
    }
}

/// Composition rule: (gh) acts on D_i as G_{i+s(h)}(g)·G_i(h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedMats {
    pub shift: u32,
    pub mats: Vec<Mat2>,
}

impl PhiNModule {
    pub fn ctx(&self) -> &ECtx {
        &self.tower.field
    }

    pub fn n0(&self) -> usize {
        self.frob.len()
    }

    fn identity_action(&self) -> ShiftedMats {
        ShiftedMats {
            shift: 0,
            mats: vec![Mat2::identity(self.ctx()); self.n0()],
        }
    }

    /// `outer ∘ inner`.
    fn compose(&self, outer: &ShiftedMats, inner: &ShiftedMats) -> ShiftedMats {
        let n = self.n0();
        let mats = (0..n)
            .map(|i| outer.mats[(i + inner.shift as usize) % n].mul(&inner.mats[i]))
            .collect();
        ShiftedMats {
            shift: (outer.shift + inner.shift) % n as u32,
            mats,
        }
    }

    fn inverse(&self, x: &ShiftedMats) -> Result<ShiftedMats> {
        let n = self.n0();
        let s = x.shift as usize % n;
        let mut mats = vec![Mat2::identity(self.ctx()); n];
        for i in 0..n {
            mats[(i + s) % n] = x.mats[i].inv()?;
        }
        Ok(ShiftedMats {
            shift: ((n - s) % n) as u32,
            mats,
        })
    }

    fn generator_action(&self, g: usize) -> ShiftedMats {
        let a = &self.galois[g];
        ShiftedMats {
            shift: a.shift % self.n0() as u32,
            mats: a.mats.clone(),
        }
    }

    /// Evaluates a word left to right: the rightmost letter acts first.
    pub fn eval_word(&self, w: &Word) -> Result<ShiftedMats> {
        let mut acc = self.identity_action();
        for &(g, e) in w {
            let base = self.generator_action(g);
            let mut step = if e < 0 { self.inverse(&base)? } else { base };
            let mut k = e.unsigned_abs();
            let mut power = self.identity_action();
            while k > 0 {
                if k & 1 == 1 {
                    power = self.compose(&power, &step);
                }
                step = self.compose(&step, &step);
                k >>= 1;
            }
            acc = self.compose(&acc, &power);
        }
        Ok(acc)
    }

    /// Action of an arbitrary group element.
    pub fn action(&self, x: &GroupElem) -> Result<ShiftedMats> {
        self.eval_word(&self.tower.group.word_of(x))
    }

    /// R = A_{n0-1}···A_0: D_0 → D_0.
    pub fn return_map(&self) -> Mat2 {
        self.frob
            .iter()
            .skip(1)
            .fold(self.frob[0].clone(), |acc, a| a.mul(&acc))
    }

    /// φ^k from D_0 to D_k, for 0 ≤ k ≤ n0.
    pub fn transport(&self, k: usize) -> Mat2 {
        self.frob
            .iter()
            .take(k)
            .fold(Mat2::identity(self.ctx()), |acc, a| a.mul(&acc))
    }

    pub fn check_shape(&self) -> Result<()> {
        let n = self.n0();
        let gens = self.tower.group.generators().len();
        if n == 0 || n != self.tower.tower.n0 as usize {
            return Err(Error::Schema(format!(
                "expected {} Frobenius components, got {n}",
                self.tower.tower.n0
            )));
        }
        if self.mono.len() != n {
            return Err(Error::Schema(format!(
                "expected {n} monodromy components, got {}",
                self.mono.len()
            )));
        }
        if self.galois.len() != gens {
            return Err(Error::Schema(format!(
                "expected {gens} generator actions, got {}",
                self.galois.len()
            )));
        }
        if self.galois.iter().any(|g| g.mats.len() != n) {
            return Err(Error::Schema(
                "every generator needs one matrix per component".into(),
            ));
        }
        let ctx = self.ctx();
        for m in self
            .frob
            .iter()
            .chain(&self.mono)
            .chain(self.galois.iter().flat_map(|g| &g.mats))
        {
            m.checked_same_ctx(ctx)?;
        }
        Ok(())
    }
}

/// Index in `mats` of the first failing component, if any.
pub(crate) fn first_mismatch(lhs: &[Mat2], rhs: &[Mat2]) -> Option<usize> {
    lhs.iter().zip(rhs).position(|(a, b)| a != b)
}
