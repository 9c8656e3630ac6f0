//! Classification of a module by Frobenius shape and inertial type.

mod inertia;

pub use inertia::{
    galois_type_trichotomy, inertial_type, scalar_type_check, InertialType, TypeCase,
    TypeDescription,
};

use num_bigint::BigInt;

use crate::builder::{CaseKind, Characters};
use crate::phimod::{eigenvalues, PhiNModule, DEFAULT_SQRT_BOUND};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhiShape {
    Irreducible,
    NonSplit,
    Split,
}

impl PhiShape {
    pub fn name(self) -> &'static str {
        match self {
            PhiShape::Irreducible => "irreducible",
            PhiShape::NonSplit => "non-split reducible",
            PhiShape::Split => "split reducible",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiClass {
    pub shape: PhiShape,
    /// Irreducibility rests on a bound-certified square-root negative.
    pub conditional: bool,
}

/// Counts φ-stable lines, ignoring N, through the eigenlines of the return
/// map on D_0.
pub fn classify_phi(d: &PhiNModule) -> Result<PhiClass> {
    let r = d.return_map();
    if r.is_scalar() {
        return Ok(PhiClass {
            shape: PhiShape::Split,
            conditional: false,
        });
    }
    let (vals, conditional) = eigenvalues(&r, &BigInt::from(DEFAULT_SQRT_BOUND))?;
    let shape = match vals.len() {
        0 => PhiShape::Irreducible,
        1 => PhiShape::NonSplit,
        _ => PhiShape::Split,
    };
    Ok(PhiClass { shape, conditional })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub phi: PhiClass,
    pub inertial: InertialType,
    pub type_case: TypeCase,
    /// `None` when the data matches no case of the classification
    /// (e.g. a decomposable type on a supercuspidal tower).
    pub case: Option<CaseKind>,
    pub characters: Characters,
}

pub fn classify(d: &PhiNModule) -> Result<Classification> {
    let phi = classify_phi(d)?;
    let inertial = inertial_type(d)?;
    let type_case = galois_type_trichotomy(&inertial, &d.tower.group)?;
    let supercuspidal = d.tower.tower.case.is_supercuspidal();
    let case = if d.mono.iter().any(|n| !n.is_zero()) {
        (!supercuspidal).then_some(CaseKind::Steinberg)
    } else {
        match (type_case, supercuspidal) {
            (TypeCase::InducedUnramified, _) => Some(CaseKind::ScUnramified),
            (TypeCase::InducedRamified, _) => Some(CaseKind::ScRamified),
            (TypeCase::Decomposable, true) => None,
            (TypeCase::Decomposable, false) => Some(match phi.shape {
                PhiShape::Irreducible => CaseKind::PsIrreducible,
                PhiShape::NonSplit => CaseKind::PsNonSplit,
                PhiShape::Split => CaseKind::PsSplit,
            }),
        }
    };
    let characters = match &inertial.description {
        TypeDescription::Induced { chi, .. } => Characters::Induced(chi.clone()),
        _ => Characters::Cyclic {
            chi1: inertial.characters.0.ab[0],
            chi2: inertial.characters.1.ab[0],
        },
    };
    Ok(Classification {
        phi,
        inertial,
        type_case,
        case,
        characters,
    })
}
