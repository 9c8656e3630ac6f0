//! The inertial type: the action of I(F/K) on D_0, and the characters by
//! which the inertia of Gal(F/K') acts on it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::coeff::{ECoeff, ECtx};
use crate::phimod::{eigenvalues, Mat2, PhiNModule, Vec2, DEFAULT_SQRT_BOUND};
use crate::tower::{check_extendability, CharacterData, GaloisData, GroupChar, TowerCase};
use crate::{Error, Result, Q64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeDescription {
    /// χ ⊕ χ.
    Scalar(GroupChar),
    /// χ_1 ⊕ χ_2 with χ_1 ≠ χ_2, in the order of the eigenbasis.
    Pair(GroupChar, GroupChar),
    /// Induced from Gal(F/K'); `chi` acts on the first eigenline of the
    /// inertia of Gal(F/K'), `conjugate` on the second.
    Induced {
        chi: CharacterData,
        conjugate: GroupChar,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertialType {
    pub case: TowerCase,
    /// Inertia generators and their action on D_0.
    pub generators: Vec<(String, Mat2)>,
    /// Characters of the inertia of Gal(F/K) ∩ Gal(F/K') on the two
    /// eigenlines, as values on the factors of the abelian part.
    pub characters: (GroupChar, GroupChar),
    pub description: TypeDescription,
}

impl InertialType {
    pub fn is_scalar(&self) -> bool {
        self.generators.iter().all(|(_, m)| m.is_scalar())
    }
}

/// Cases (1), (2), (3) of the trichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeCase {
    /// Sum of two characters extending to Gal(F/K).
    Decomposable = 1,
    /// Induced from the unramified quadratic extension.
    InducedUnramified = 2,
    /// Induced from a ramified quadratic extension.
    InducedRamified = 3,
}

impl TypeCase {
    pub fn number(self) -> u8 {
        self as u8
    }
}

/// r ∈ [0, 1) with v = ζ_m^{r·m}.
fn root_exponent(ctx: &ECtx, v: &ECoeff) -> Result<Q64> {
    let m = ctx.m() as i64;
    (0..m)
        .find(|&k| &ctx.zeta(k) == v)
        .map(|k| Q64::new(k, m))
        .ok_or_else(|| {
            Error::Structure(format!(
                "inertia eigenvalue {v} is not a root of unity of E"
            ))
        })
}

/// Nonzero vector spanning ker(M) for a singular nonzero M.
fn kernel(m: &Mat2) -> Vec2 {
    let [[a, b], [c, d]] = &m.a;
    if !a.is_zero() || !b.is_zero() {
        [b.clone(), -a.clone()]
    } else {
        [d.clone(), -c.clone()]
    }
}

/// A basis diagonalizing every matrix of a commuting family, with columns
/// e_1, e_2 when the family is already diagonal.
fn common_eigenbasis(mats: &[&Mat2], ctx: &ECtx) -> Result<Mat2> {
    let Some(m) = mats
        .iter()
        .find(|m| !m.a[0][1].is_zero() || !m.a[1][0].is_zero())
    else {
        return Ok(Mat2::identity(ctx));
    };
    let (vals, _) = eigenvalues(m, &BigInt::from(DEFAULT_SQRT_BOUND))?;
    if vals.len() != 2 {
        return Err(Error::Structure(
            "inertia action is not diagonalizable over E".into(),
        ));
    }
    let v1 = kernel(&m.sub(&Mat2::scalar(vals[0].clone())));
    let v2 = kernel(&m.sub(&Mat2::scalar(vals[1].clone())));
    Ok(Mat2::new(
        v1[0].clone(),
        v2[0].clone(),
        v1[1].clone(),
        v2[1].clone(),
    ))
}

/// Restriction of the Galois action at D_0 to I(F/K), checked against every
/// relation among inertia generators.
pub fn inertial_type(d: &PhiNModule) -> Result<InertialType> {
    let group = &d.tower.group;
    let ctx = d.ctx();
    let gens = group.generators();
    let inertia: Vec<usize> = (0..gens.len())
        .filter(|&k| group.in_inertia(&gens[k].1))
        .collect();
    for &k in &inertia {
        if !d.galois[k].shift.is_multiple_of(d.n0() as u32) {
            return Err(Error::Structure(format!(
                "inertia generator {} moves components",
                gens[k].0
            )));
        }
    }
    for (name, lhs, rhs) in group.relation_words() {
        if !lhs.iter().chain(&rhs).all(|(g, _)| inertia.contains(g)) {
            continue;
        }
        if d.eval_word(&lhs)?.mats[0] != d.eval_word(&rhs)?.mats[0] {
            return Err(Error::Structure(format!(
                "inertial type violates relation {name}"
            )));
        }
    }
    let generators: Vec<(String, Mat2)> = inertia
        .iter()
        .map(|&k| (gens[k].0.clone(), d.galois[k].mats[0].clone()))
        .collect();

    // The abelian inertia of Gal(F/K') is generated by unit vectors of A.
    let sub: Vec<usize> = inertia
        .iter()
        .copied()
        .filter(|&k| group.in_k_prime_subgroup(&gens[k].1))
        .collect();
    let mats: Vec<&Mat2> = sub.iter().map(|&k| &d.galois[k].mats[0]).collect();
    let p = common_eigenbasis(&mats, ctx)?;
    let p_inv = p.inv()?;
    let mut c1 = GroupChar::trivial(group);
    let mut c2 = GroupChar::trivial(group);
    for &k in &sub {
        let diag = p_inv.mul(&d.galois[k].mats[0]).mul(&p);
        if !diag.a[0][1].is_zero() || !diag.a[1][0].is_zero() {
            return Err(Error::Structure(
                "inertia of Gal(F/K') does not act through characters".into(),
            ));
        }
        let Some(idx) = gens[k].1.ab.iter().position(|&x| x != 0) else {
            continue;
        };
        c1.ab[idx] = root_exponent(ctx, &diag.a[0][0])?;
        c2.ab[idx] = root_exponent(ctx, &diag.a[1][1])?;
    }
    let case = d.tower.tower.case;
    let description = if case.is_supercuspidal() {
        let delta = group.delta_index().expect("supercuspidal group has δ");
        let s = c1.ab[delta] * Q64::from_integer(CharacterData::delta_order(group) as i64);
        let chi = CharacterData {
            s: s.to_integer(),
            chi1: group.u_plus_range().map(|i| c1.ab[i]).collect(),
            chi2: group.u_minus_range().map(|i| c1.ab[i]).collect(),
        };
        TypeDescription::Induced {
            chi,
            conjugate: c2.clone(),
        }
    } else if c1 == c2 {
        TypeDescription::Scalar(c1.clone())
    } else {
        TypeDescription::Pair(c1.clone(), c2.clone())
    };
    Ok(InertialType {
        case,
        generators,
        characters: (c1, c2),
        description,
    })
}

/// Which form of the trichotomy τ takes; `group` supplies the extension data.
pub fn galois_type_trichotomy(tau: &InertialType, group: &GaloisData) -> Result<TypeCase> {
    match &tau.description {
        TypeDescription::Scalar(_) | TypeDescription::Pair(..) => Ok(TypeCase::Decomposable),
        TypeDescription::Induced { chi, .. } => {
            if check_extendability(chi, group)? {
                Ok(TypeCase::Decomposable)
            } else if group.is_ramified_sc() {
                Ok(TypeCase::InducedRamified)
            } else {
                Ok(TypeCase::InducedUnramified)
            }
        }
    }
}

/// N ≠ 0 forces a scalar inertial type; true when the implication holds.
pub fn scalar_type_check(d: &PhiNModule) -> Result<bool> {
    if d.mono.iter().all(Mat2::is_zero) {
        return Ok(true);
    }
    Ok(inertial_type(d)?.is_scalar())
}
