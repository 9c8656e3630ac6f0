//! Embeddings as abstract torsors.
//!
//! J = Hom(K, E) is indexed by (i0, r) with i0 ∈ ℤ/m0 the restriction to K_0
//! and r < e_K. The fiber of Hom(F, E) over j is a copy of Gal(F/K) with base
//! point (j, 1) and right action (j, g)·h = (j, g·h). The component of
//! (j, g) is i0 − shift(g) in ℤ/n0.

use super::group::{GaloisData, GroupElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JIndex {
    pub i0: u32,
    pub r: u32,
}

#[derive(Clone, Debug)]
pub struct EmbeddingTorsor {
    m0: u32,
    e_k: u32,
    n0: u32,
    group: GaloisData,
    fiber: usize,
}

impl EmbeddingTorsor {
    pub fn new(m0: u32, e_k: u32, n0: u32, group: GaloisData) -> Self {
        let fiber = group.order();
        EmbeddingTorsor {
            m0,
            e_k,
            n0,
            group,
            fiber,
        }
    }

    pub fn group(&self) -> &GaloisData {
        &self.group
    }

    pub fn n0(&self) -> u32 {
        self.n0
    }

    /// |J| = [K : ℚ_p].
    pub fn j_count(&self) -> usize {
        (self.m0 * self.e_k) as usize
    }

    pub fn j(&self, idx: usize) -> JIndex {
        JIndex {
            i0: idx as u32 / self.e_k,
            r: idx as u32 % self.e_k,
        }
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber
    }

    /// |J_F| = [F : ℚ_p].
    pub fn jf_count(&self) -> usize {
        self.j_count() * self.fiber
    }

    pub fn jf(&self, j: usize, g: &GroupElem) -> usize {
        j * self.fiber + self.group.index_of(g)
    }

    /// (j, index of g) for a fiber element.
    pub fn split(&self, jf: usize) -> (usize, usize) {
        (jf / self.fiber, jf % self.fiber)
    }

    pub fn base_point(&self, j: usize) -> usize {
        j * self.fiber
    }

    pub fn restrict_to_j(&self, jf: usize) -> usize {
        jf / self.fiber
    }

    pub fn act(&self, jf: usize, h: &GroupElem) -> usize {
        let (j, gi) = self.split(jf);
        let g = self.group.element(gi);
        self.jf(j, &self.group.mul(&g, h))
    }

    /// The index i ∈ ℤ/n0 of the component D_i that jf lands in.
    pub fn component(&self, jf: usize) -> u32 {
        let (j, gi) = self.split(jf);
        let i0 = self.j(j).i0;
        let s = self.group.shift(&self.group.element(gi));
        (i0 + self.n0 - s % self.n0) % self.n0
    }
}
