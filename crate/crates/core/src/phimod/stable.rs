//! Enumeration of (φ, N)-stable lines.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::invariants::{FilIndex, StableLine};
use super::linalg::{Mat2, ProjLine};
use super::module::{FiltrationData, PhiNModule};
use crate::coeff::{sqrt_in_e, ECoeff, NoRootReason, SqrtResult};
use crate::Result;

/// Default height bound for the discriminant square root of the return map.
pub const DEFAULT_SQRT_BOUND: u64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableTag {
    /// The return map is not scalar: finitely many φ-stable families.
    Finite,
    /// The return map is scalar: every line is φ-stable; `lines` is the
    /// finite candidate set.
    ScalarFamily,
}

#[derive(Clone, Debug)]
pub struct StableLines {
    pub tag: StableTag,
    /// (φ, N)-stable lines (candidates in the scalar case).
    pub lines: Vec<StableLine>,
    /// Index in `lines` of the generic candidate (scalar case only).
    pub generic: Option<usize>,
    /// Number of φ-stable families before the N filter (finite case only).
    pub phi_families: usize,
    /// The eigenline search relied on a bound-certified square-root negative.
    pub conditional: bool,
}

/// Kernel of a nonzero singular 2×2 matrix.
fn kernel_line(m: &Mat2) -> Result<ProjLine> {
    let row = if m.a[0][0].is_zero() && m.a[0][1].is_zero() {
        &m.a[1]
    } else {
        &m.a[0]
    };
    ProjLine::new(-row[1].clone(), row[0].clone())
}

/// Eigenvalues of R in E; `conditional` when only a bounded search excluded them.
pub fn eigenvalues(r: &Mat2, bound: &BigInt) -> Result<(Vec<ECoeff>, bool)> {
    let mut vals = Vec::new();
    if r.a[0][1].is_zero() || r.a[1][0].is_zero() {
        vals.push(r.a[0][0].clone());
        if r.a[1][1] != r.a[0][0] {
            vals.push(r.a[1][1].clone());
        }
        return Ok((vals, false));
    }
    let ctx = r.ctx();
    let tr = r.trace();
    let disc = &tr * &tr - r.det() * ctx.from_int(4);
    let half = ctx.from_ratio(1, 2)?;
    if disc.is_zero() {
        return Ok((alloc::vec![tr * half], false));
    }
    match sqrt_in_e(&disc, bound)? {
        SqrtResult::Root(s) => Ok((alloc::vec![(&tr + &s) * &half, (&tr - &s) * &half], false)),
        SqrtResult::NoRoot(NoRootReason::BoundCertified { .. }) => Ok((vals, true)),
        SqrtResult::NoRoot(NoRootReason::NotSquare(_)) => Ok((vals, false)),
    }
}

pub fn stable_lines(d: &PhiNModule, fil: &FiltrationData) -> Result<StableLines> {
    stable_lines_with_bound(d, fil, &BigInt::from(DEFAULT_SQRT_BOUND))
}

pub fn stable_lines_with_bound(
    d: &PhiNModule,
    fil: &FiltrationData,
    bound: &BigInt,
) -> Result<StableLines> {
    let r = d.return_map();
    if r.is_scalar() {
        return scalar_family(d, fil);
    }
    let (vals, conditional) = eigenvalues(&r, bound)?;
    let mut families = Vec::new();
    for lam in vals {
        let seed = kernel_line(&r.sub(&Mat2::scalar(lam)))?;
        families.push(StableLine::from_seed(d, seed)?);
    }
    let phi_families = families.len();
    let lines = families.into_iter().filter(|l| l.is_n_stable(d)).collect();
    Ok(StableLines {
        tag: StableTag::Finite,
        lines,
        generic: None,
        phi_families,
        conditional,
    })
}

fn scalar_family(d: &PhiNModule, fil: &FiltrationData) -> Result<StableLines> {
    let ctx = d.ctx();
    let index = FilIndex::new(d, fil);
    let mut seeds = BTreeSet::new();
    seeds.insert(ProjLine::e1(ctx));
    seeds.insert(ProjLine::e2(ctx));
    let transports: Vec<Mat2> = (0..d.n0())
        .map(|i| d.transport(i).inv())
        .collect::<Result<_>>()?;
    for (i, l) in index.fil_lines() {
        seeds.insert(l.image(&transports[i as usize])?);
    }
    let mut t = 1i64;
    let generic = loop {
        let cand = ProjLine::new(ctx.one(), ctx.from_int(t))?;
        if !seeds.contains(&cand) {
            break cand;
        }
        t += 1;
    };
    let mut lines = Vec::with_capacity(seeds.len() + 1);
    for s in seeds {
        let l = StableLine::from_seed(d, s)?;
        if l.is_n_stable(d) {
            lines.push(l);
        }
    }
    let g = StableLine::from_seed(d, generic)?;
    let generic = g.is_n_stable(d).then(|| {
        lines.push(g);
        lines.len() - 1
    });
    Ok(StableLines {
        tag: StableTag::ScalarFamily,
        lines,
        generic,
        phi_families: 0,
        conditional: false,
    })
}
