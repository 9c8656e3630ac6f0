//! Normalized t_N and t_H, for the whole module and for stable lines.
//!
//! Both are divided by [E:ℚ_p]: t_N(line) = (1/n0)·Σ v_p(λ_i) and
//! t_H(line) = −(1/[F:ℚ_p])·Σ_{j_F} w(j_F).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::linalg::ProjLine;
use super::module::{FiltrationData, PhiNModule};
use crate::coeff::ECoeff;
use crate::{Error, Result, Q64};

/// A φ-stable family of lines ℓ_i ⊂ D_i with A_i·v_i = λ_{i+1}·v_{i+1} for
/// the normalized generators v_i; `lambdas[i]` is λ_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableLine {
    pub lines: Vec<ProjLine>,
    pub lambdas: Vec<ECoeff>,
}

impl StableLine {
    /// Propagates ℓ_0 along φ; fails unless the family closes up.
    pub fn from_seed(d: &PhiNModule, seed: ProjLine) -> Result<Self> {
        let n = d.n0();
        let mut lines = Vec::with_capacity(n);
        let mut lambdas = alloc::vec![d.ctx().zero(); n];
        lines.push(seed);
        for i in 0..n {
            let img = d.frob[i].apply(&lines[i].vector());
            let next = if i + 1 == n {
                lines[0].clone()
            } else {
                ProjLine::from_vec(&img)?
            };
            if !next.contains(&img) {
                return Err(Error::Structure("line is not φ-stable".into()));
            }
            let v = next.vector();
            lambdas[(i + 1) % n] = if v[0].is_zero() {
                img[1].checked_div(&v[1])?
            } else {
                img[0].checked_div(&v[0])?
            };
            if i + 1 < n {
                lines.push(next);
            }
        }
        Ok(StableLine { lines, lambdas })
    }

    pub fn is_n_stable(&self, d: &PhiNModule) -> bool {
        self.lines
            .iter()
            .zip(&d.mono)
            .all(|(l, n)| l.contains(&n.apply(&l.vector())))
    }
}

fn valuation(x: &ECoeff) -> Result<Q64> {
    x.valuation()
        .ok_or_else(|| Error::Structure("valuation of zero".into()))
}

fn n0_q(d: &PhiNModule) -> Q64 {
    Q64::from_integer(d.n0() as i64)
}

pub fn t_n_module(d: &PhiNModule) -> Result<Q64> {
    let mut s = Q64::from_integer(0);
    for a in &d.frob {
        s += valuation(&a.det())?;
    }
    Ok(s / n0_q(d))
}

pub fn t_n_line(d: &PhiNModule, line: &StableLine) -> Result<Q64> {
    let mut s = Q64::from_integer(0);
    for l in &line.lambdas {
        s += valuation(l)?;
    }
    Ok(s / n0_q(d))
}

pub fn t_h_module(d: &PhiNModule, fil: &FiltrationData) -> Q64 {
    let s: i64 = fil.weights.iter().map(|&(a, b)| a + b).sum();
    -Q64::new(s, d.tower.tower.k_degree() as i64)
}

/// Fil lines grouped by component, for t_H of many candidate lines.
#[derive(Clone, Debug)]
pub struct FilIndex {
    /// Σ_{j_F} k_{j,2}.
    base: i64,
    /// (component, Fil line) → Σ (k_{j,2} − k_{j,1}) over the j_F carrying it.
    drops: BTreeMap<(u32, ProjLine), i64>,
    f_degree: i64,
}

impl FilIndex {
    pub fn new(d: &PhiNModule, fil: &FiltrationData) -> Self {
        let torsor = &d.tower.torsor;
        let mut base = 0;
        let mut drops = BTreeMap::new();
        for jf in 0..torsor.jf_count() {
            let (j, _) = torsor.split(jf);
            let (k1, k2) = fil.weights[j];
            base += k2;
            if let Some(l) = &fil.lines[jf] {
                *drops.entry((torsor.component(jf), l.clone())).or_insert(0) += k2 - k1;
            }
        }
        FilIndex {
            base,
            drops,
            f_degree: d.tower.tower.f_degree() as i64,
        }
    }

    pub fn t_h(&self, line: &StableLine) -> Q64 {
        let matched: i64 = line
            .lines
            .iter()
            .enumerate()
            .filter_map(|(i, l)| self.drops.get(&(i as u32, l.clone())))
            .sum();
        -Q64::new(self.base - matched, self.f_degree)
    }

    /// Distinct (component, Fil line) pairs.
    pub fn fil_lines(&self) -> impl Iterator<Item = (u32, &ProjLine)> {
        self.drops.keys().map(|(i, l)| (*i, l))
    }
}

pub fn t_h_line(d: &PhiNModule, fil: &FiltrationData, line: &StableLine) -> Q64 {
    FilIndex::new(d, fil).t_h(line)
}
