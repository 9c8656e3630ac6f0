//! Classification parameters of the six cases.

use alloc::format;
use alloc::vec::Vec;

use crate::coeff::{ECoeff, ECtx};
use crate::tower::{CharacterData, TowerCase, TowerParams};
use crate::{Error, Result, Q64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseKind {
    Steinberg,
    PsIrreducible,
    PsNonSplit,
    PsSplit,
    ScUnramified,
    ScRamified,
}

impl CaseKind {
    pub const ALL: [CaseKind; 6] = [
        CaseKind::Steinberg,
        CaseKind::PsIrreducible,
        CaseKind::PsNonSplit,
        CaseKind::PsSplit,
        CaseKind::ScUnramified,
        CaseKind::ScRamified,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseKind::Steinberg => "steinberg",
            CaseKind::PsIrreducible => "ps-irreducible",
            CaseKind::PsNonSplit => "ps-non-split",
            CaseKind::PsSplit => "ps-split",
            CaseKind::ScUnramified => "sc-unramified",
            CaseKind::ScRamified => "sc-ramified",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn tower_case(self) -> TowerCase {
        match self {
            CaseKind::Steinberg => TowerCase::Steinberg,
            CaseKind::PsIrreducible | CaseKind::PsNonSplit | CaseKind::PsSplit => {
                TowerCase::PrincipalSeries
            }
            CaseKind::ScUnramified => TowerCase::ScUnramified,
            CaseKind::ScRamified => TowerCase::ScRamified,
        }
    }

    /// Number of partition sets I_1, I_2(, I_3); 0 when the filtration is a free ℙ¹ point.
    pub fn partition_arity(self) -> usize {
        match self {
            CaseKind::Steinberg | CaseKind::PsNonSplit => 2,
            CaseKind::PsSplit => 3,
            _ => 0,
        }
    }
}

/// Frobenius scalars. `alphas[i]` enters A_i in the Steinberg case (missing
/// entries are 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalars {
    Steinberg { alphas: Vec<ECoeff> },
    PsIrreducible { a: ECoeff, b: ECoeff, c: ECoeff },
    PsNonSplit { a: ECoeff, b: ECoeff },
    PsSplit { a: ECoeff, b: ECoeff },
    ScUnramified { alpha1: ECoeff, beta1: ECoeff },
    ScRamified { alpha1: ECoeff },
}

impl Scalars {
    pub fn kind(&self) -> CaseKind {
        match self {
            Scalars::Steinberg { .. } => CaseKind::Steinberg,
            Scalars::PsIrreducible { .. } => CaseKind::PsIrreducible,
            Scalars::PsNonSplit { .. } => CaseKind::PsNonSplit,
            Scalars::PsSplit { .. } => CaseKind::PsSplit,
            Scalars::ScUnramified { .. } => CaseKind::ScUnramified,
            Scalars::ScRamified { .. } => CaseKind::ScRamified,
        }
    }

    pub fn values(&self) -> Vec<&ECoeff> {
        match self {
            Scalars::Steinberg { alphas } => alphas.iter().collect(),
            Scalars::PsIrreducible { a, b, c } => alloc::vec![a, b, c],
            Scalars::PsNonSplit { a, b } | Scalars::PsSplit { a, b } => alloc::vec![a, b],
            Scalars::ScUnramified { alpha1, beta1 } => alloc::vec![alpha1, beta1],
            Scalars::ScRamified { alpha1 } => alloc::vec![alpha1],
        }
    }
}

/// Characters as values in ℚ/ℤ: on the generator of the cyclic group, or
/// ω^s·χ_1·χ_2 in the supercuspidal cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Characters {
    Cyclic { chi1: Q64, chi2: Q64 },
    Induced(CharacterData),
}

/// Filtration choice for one j with k_{j,1} < k_{j,2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilChoice {
    /// j ∈ I_1.
    I1,
    /// j ∈ I_2, with 𝔏_j where the case's line carries one (0 if absent).
    I2 { l: Option<ECoeff> },
    /// j ∈ I_3 with 𝔏_j ∈ E^×.
    I3 { l: ECoeff },
    /// (a_j : b_j), resp. (a_{j,1} : a_{j,2}), in ℙ¹(E).
    Point { a: ECoeff, b: ECoeff },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseParams {
    pub tower: TowerParams,
    /// (k_{j,1}, k_{j,2}) per j, indexed as the embedding torsor indexes J.
    pub weights: Vec<(i64, i64)>,
    pub scalars: Scalars,
    pub characters: Characters,
    /// `Some` exactly for the j with k_{j,1} < k_{j,2}.
    pub fil: Vec<Option<FilChoice>>,
}

impl CaseParams {
    pub fn kind(&self) -> CaseKind {
        self.scalars.kind()
    }

    /// [K : ℚ_p] = |J|.
    pub fn j_count(&self) -> usize {
        (self.tower.m0 * self.tower.e_k) as usize
    }

    /// Structural checks that need no field arithmetic beyond zero tests.
    pub fn check_schema(&self, ctx: &ECtx) -> Result<()> {
        let kind = self.kind();
        if self.tower.case != kind.tower_case() {
            return Err(Error::Schema(format!(
                "case {} needs tower case {:?}",
                kind.name(),
                kind.tower_case()
            )));
        }
        let n = self.j_count();
        if self.weights.len() != n {
            return Err(Error::Schema(format!(
                "weights: expected {n} pairs, got {}",
                self.weights.len()
            )));
        }
        if self.fil.len() != n {
            return Err(Error::Schema(format!(
                "filtration: expected {n} entries, got {}",
                self.fil.len()
            )));
        }
        for (j, (&(k1, k2), f)) in self.weights.iter().zip(&self.fil).enumerate() {
            if k1 < 0 || k1 > k2 {
                return Err(Error::Schema(format!(
                    "weights[{j}] = ({k1}, {k2}) violates 0 <= k1 <= k2"
                )));
            }
            match (k1 < k2, f) {
                (true, None) => {
                    return Err(Error::Schema(format!(
                        "filtration[{j}] missing for k1 < k2"
                    )))
                }
                (false, Some(_)) => {
                    return Err(Error::Schema(format!(
                        "filtration[{j}] given although k1 = k2"
                    )))
                }
                (true, Some(c)) => check_choice(kind, j, c, ctx)?,
                (false, None) => {}
            }
        }
        // The trace a of an irreducible Frobenius may vanish.
        let may_vanish = usize::from(kind == CaseKind::PsIrreducible);
        for (k, x) in self.scalars.values().into_iter().enumerate() {
            if x.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
            if x.is_zero() && k >= may_vanish {
                return Err(Error::Schema(format!(
                    "{}: Frobenius scalars must be nonzero",
                    kind.name()
                )));
            }
        }
        match (&self.characters, kind.tower_case().is_supercuspidal()) {
            (Characters::Cyclic { .. }, false) | (Characters::Induced(_), true) => Ok(()),
            _ => Err(Error::Schema(format!(
                "{}: wrong character data shape",
                kind.name()
            ))),
        }
    }
}

fn check_choice(kind: CaseKind, j: usize, c: &FilChoice, ctx: &ECtx) -> Result<()> {
    let ok = match (kind, c) {
        (CaseKind::Steinberg | CaseKind::PsNonSplit, FilChoice::I1 | FilChoice::I2 { .. }) => true,
        (CaseKind::PsSplit, FilChoice::I1 | FilChoice::I2 { l: None }) => true,
        (CaseKind::PsSplit, FilChoice::I3 { l }) => {
            if l.is_zero() {
                return Err(Error::Schema(format!(
                    "filtration[{j}]: I_3 needs L_j in E^x"
                )));
            }
            true
        }
        (
            CaseKind::PsIrreducible | CaseKind::ScUnramified | CaseKind::ScRamified,
            FilChoice::Point { a, b },
        ) => {
            if a.is_zero() && b.is_zero() {
                return Err(Error::Schema(format!(
                    "filtration[{j}]: (0 : 0) is not a point of P^1"
                )));
            }
            true
        }
        _ => false,
    };
    let coeffs: Vec<&ECoeff> = match c {
        FilChoice::I2 { l: Some(l) } | FilChoice::I3 { l } => alloc::vec![l],
        FilChoice::Point { a, b } => alloc::vec![a, b],
        _ => Vec::new(),
    };
    if coeffs.iter().any(|x| x.ctx() != ctx) {
        return Err(Error::ContextMismatch);
    }
    if ok {
        Ok(())
    } else {
        Err(Error::Schema(format!(
            "filtration[{j}]: {c:?} is not a valid choice for {}",
            kind.name()
        )))
    }
}
