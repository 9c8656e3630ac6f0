//! Characters with values in the roots of unity of E.
//!
//! A value exp(2πi·r) is carried as r ∈ ℚ/ℤ, normalized to [0, 1), and
//! realized in E as ζ_m^{r·m}.

use alloc::format;
use alloc::vec::Vec;

use super::group::{GaloisData, GroupElem};
use crate::coeff::{ECoeff, ECtx};
use crate::{Error, Result, Q64};

fn frac(r: Q64) -> Q64 {
    r - Q64::from_integer(r.floor().to_integer())
}

/// exp(2πi·r) as an element of E.
pub fn root_of_unity(ctx: &ECtx, r: Q64) -> Result<ECoeff> {
    let k = frac(r) * Q64::from_integer(ctx.m() as i64);
    if !k.is_integer() {
        return Err(Error::Character(format!(
            "character value not in E: exp(2πi·{r}) with m = {}",
            ctx.m()
        )));
    }
    Ok(ctx.zeta(k.to_integer()))
}

/// A function on Gal(F/K) given by its values on t and on the cyclic
/// factors of A; a character wherever it is multiplicative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupChar {
    pub top: Q64,
    pub ab: Vec<Q64>,
}

impl GroupChar {
    pub fn trivial(g: &GaloisData) -> Self {
        GroupChar {
            top: Q64::from_integer(0),
            ab: alloc::vec![Q64::from_integer(0); g.ab_orders().len()],
        }
    }

    pub fn eval(&self, g: &GroupElem) -> Q64 {
        let mut r = self.top * Q64::from_integer(g.top as i64);
        for (a, v) in g.ab.iter().zip(&self.ab) {
            r += *v * Q64::from_integer(*a as i64);
        }
        frac(r)
    }

    pub fn value(&self, ctx: &ECtx, g: &GroupElem) -> Result<ECoeff> {
        root_of_unity(ctx, self.eval(g))
    }

    pub fn inverse(&self) -> Self {
        GroupChar {
            top: frac(-self.top),
            ab: self.ab.iter().map(|v| frac(-*v)).collect(),
        }
    }

    /// Multiplicativity on the subgroup cut out by `member`, checked against
    /// every element and every generator lying in the subgroup.
    pub fn is_character_on(&self, group: &GaloisData, member: impl Fn(&GroupElem) -> bool) -> bool {
        let elems: Vec<GroupElem> = group.elements().filter(|x| member(x)).collect();
        let gens: Vec<&GroupElem> = elems
            .iter()
            .filter(|x| is_generator_like(group, x))
            .collect();
        let gens: Vec<&GroupElem> = if gens.is_empty() {
            elems.iter().collect()
        } else {
            gens
        };
        if frac(self.eval(&group.identity())) != Q64::from_integer(0) {
            return false;
        }
        elems.iter().all(|x| {
            gens.iter().all(|h| {
                let xh = group.mul(x, h);
                frac(self.eval(x) + self.eval(h)) == self.eval(&xh)
            })
        })
    }
}

/// Elements of a subgroup that together generate it: the named generators
/// lying in it, squares of those outside, and the products of pairs of
/// outside generators.
fn is_generator_like(group: &GaloisData, x: &GroupElem) -> bool {
    group.generators().iter().any(|(_, g)| {
        g == x
            || &group.mul(g, g) == x
            || group
                .generators()
                .iter()
                .any(|(_, h)| &group.mul(g, h) == x)
    })
}

/// χ = ω^s·χ_1·χ_2 on the inertia part of Gal(F/K'), with χ_1 on U_+ and
/// χ_2 on U_− given by their values (in ℚ/ℤ) on the chosen generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    pub s: i64,
    pub chi1: Vec<Q64>,
    pub chi2: Vec<Q64>,
}

impl CharacterData {
    pub fn validate(&self, group: &GaloisData) -> Result<()> {
        if group.delta_index().is_none() {
            return Err(Error::Character(
                "ω^s·χ_1·χ_2 data needs a supercuspidal group".into(),
            ));
        }
        let orders = group.ab_orders();
        for (name, vals, range) in [
            ("chi1", &self.chi1, group.u_plus_range()),
            ("chi2", &self.chi2, group.u_minus_range()),
        ] {
            if vals.len() != range.len() {
                return Err(Error::Character(format!(
                    "{name} needs {} values, got {}",
                    range.len(),
                    vals.len()
                )));
            }
            for (v, idx) in vals.iter().zip(range) {
                if !(*v * Q64::from_integer(orders[idx] as i64)).is_integer() {
                    return Err(Error::Character(format!(
                        "{name} value {v} has order not dividing {}",
                        orders[idx]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Order of δ, so that ω(δ) = exp(2πi / order).
    pub fn delta_order(group: &GaloisData) -> u64 {
        group
            .delta_index()
            .map(|i| group.ab_orders()[i])
            .unwrap_or(1)
    }

    /// ω^{s·twist}·χ_1·χ_2^{sign} as a function on Gal(F/K'), trivial on σ² (unramified)
    /// or on σ (ramified).
    pub fn to_group_char_twisted(
        &self,
        group: &GaloisData,
        twist: i64,
        chi2_sign: i64,
    ) -> Result<GroupChar> {
        self.validate(group)?;
        let mut ch = GroupChar::trivial(group);
        let d = group.delta_index().unwrap();
        ch.ab[d] = frac(Q64::new(self.s * twist, Self::delta_order(group) as i64));
        for (v, idx) in self.chi1.iter().zip(group.u_plus_range()) {
            ch.ab[idx] = frac(*v);
        }
        for (v, idx) in self.chi2.iter().zip(group.u_minus_range()) {
            ch.ab[idx] = frac(*v * Q64::from_integer(chi2_sign));
        }
        Ok(ch)
    }

    pub fn to_group_char(&self, group: &GaloisData) -> Result<GroupChar> {
        self.to_group_char_twisted(group, 1, 1)
    }

    pub fn chi2_squared_trivial(&self) -> bool {
        self.chi2
            .iter()
            .all(|v| (*v * Q64::from_integer(2)).is_integer())
    }
}

/// Whether χ extends: to Gal(F/K) in the unramified case, and from the
/// inertia of Gal(F/K') to the inertia of Gal(F/K) in the ramified case.
pub fn check_extendability(chi: &CharacterData, group: &GaloisData) -> Result<bool> {
    chi.validate(group)?;
    if group.is_unramified_sc() {
        let q = group.residue_q() as i64;
        Ok(chi.s.rem_euclid(q + 1) == 0 && chi.chi2_squared_trivial())
    } else if group.is_ramified_sc() {
        Ok(chi.chi2_squared_trivial())
    } else {
        Err(Error::Precondition(
            "extendability is only defined in the supercuspidal cases".into(),
        ))
    }
}
