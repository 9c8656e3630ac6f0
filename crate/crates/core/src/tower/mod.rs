//! Field-tower bookkeeping, the finite Galois group Gal(F/K), its
//! characters, the embedding torsor, and eigenvector bases on fibers.

mod basis;
mod character;
mod group;
mod torsor;

pub use basis::{lemma_basis, LemmaBasis};
pub use character::{check_extendability, root_of_unity, CharacterData, GroupChar};
pub use group::{GaloisData, GroupElem, RelationCheck, RelationReport, Word};
pub use torsor::{EmbeddingTorsor, JIndex};

use alloc::format;

use crate::coeff::ECtx;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TowerCase {
    Steinberg,
    PrincipalSeries,
    ScUnramified,
    ScRamified,
}

impl TowerCase {
    pub fn is_supercuspidal(self) -> bool {
        matches!(self, TowerCase::ScUnramified | TowerCase::ScRamified)
    }
}

/// Inputs of `build_tower`. `cyclic_order` is the order of the totally
/// ramified group Gal(F/K) in the Steinberg and principal series cases;
/// `m1`, `n1` describe F in the supercuspidal cases; `m`, `e` fix E.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerParams {
    pub case: TowerCase,
    pub p: u64,
    pub m0: u32,
    pub e_k: u32,
    pub cyclic_order: u64,
    pub m1: u32,
    pub n1: u32,
    pub m: u64,
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    pub case: TowerCase,
    pub p: u64,
    /// Residue cardinality of K.
    pub q: u64,
    /// [K_0 : ℚ_p].
    pub m0: u32,
    /// [K : K_0].
    pub e_k: u32,
    pub m1: u32,
    pub n1: u32,
    /// [F_0 : ℚ_p], the number of components D_i.
    pub n0: u32,
    /// [F : K].
    pub f_over_k: u64,
    /// [K' : K]: 2 in the supercuspidal cases, 1 otherwise.
    pub k_prime_index: u32,
}

impl FieldTower {
    /// [K : ℚ_p].
    pub fn k_degree(&self) -> u64 {
        self.m0 as u64 * self.e_k as u64
    }

    /// [F : ℚ_p].
    pub fn f_degree(&self) -> u64 {
        self.k_degree() * self.f_over_k
    }
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub tower: FieldTower,
    pub torsor: EmbeddingTorsor,
    pub group: GaloisData,
    pub field: ECtx,
}

pub fn build_tower(params: &TowerParams) -> Result<Tower> {
    let p = params.p;
    if p == 2 {
        return Err(Error::EvenPrime(2));
    }
    if !crate::coeff::poly::is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
    }
    if params.m0 == 0 || params.e_k == 0 {
        return Err(Error::InvalidParameter(
            "m0 and e_K must be positive".into(),
        ));
    }
    let q = p
        .checked_pow(params.m0)
        .filter(|q| *q < 1 << 20)
        .ok_or_else(|| Error::InvalidParameter("q too large".into()))?;
    let group = match params.case {
        TowerCase::Steinberg | TowerCase::PrincipalSeries => {
            if params.cyclic_order == 0 {
                return Err(Error::InvalidParameter(
                    "cyclic order must be positive".into(),
                ));
            }
            GaloisData::cyclic(params.cyclic_order)
        }
        TowerCase::ScUnramified | TowerCase::ScRamified => {
            if params.m1 == 0 || params.n1 == 0 {
                return Err(Error::InvalidParameter("m1 and n1 must be positive".into()));
            }
            if params.case == TowerCase::ScUnramified {
                GaloisData::sc_unramified(p, params.m0, params.m1, params.n1)
            } else {
                GaloisData::sc_ramified(p, params.m0, params.m1, params.n1)
            }
        }
    };
    let report = group.verify_relations();
    if !report.relations_passed() {
        return Err(Error::Internal(format!(
            "group relations failed: {}",
            report.first_failure()
        )));
    }
    let n0 = group.n0(params.m0);
    let (m1, n1, k_prime_index) = if params.case.is_supercuspidal() {
        (params.m1, params.n1, 2)
    } else {
        (0, 0, 1)
    };
    let tower = FieldTower {
        case: params.case,
        p,
        q,
        m0: params.m0,
        e_k: params.e_k,
        m1,
        n1,
        n0,
        f_over_k: group.order() as u64,
        k_prime_index,
    };
    let field = ECtx::new(p, params.m, params.e)?;
    let torsor = EmbeddingTorsor::new(params.m0, params.e_k, n0, group.clone());
    Ok(Tower {
        tower,
        torsor,
        group,
        field,
    })
}
