#![allow(dead_code)]

use phimod::builder::{CaseKind, CaseParams, Characters, FilChoice, Scalars};
use phimod::coeff::{ECoeff, ECtx};
use phimod::tower::{CharacterData, TowerParams};
use phimod::Q64;

pub fn q(n: i64, d: i64) -> Q64 {
    Q64::new(n, d)
}

pub fn tower(
    kind: CaseKind,
    p: u64,
    m0: u32,
    e_k: u32,
    cyclic: u64,
    m1: u32,
    n1: u32,
    m: u64,
    e: usize,
) -> TowerParams {
    TowerParams {
        case: kind.tower_case(),
        p,
        m0,
        e_k,
        cyclic_order: cyclic,
        m1,
        n1,
        m,
        e,
    }
}

pub fn ctx_of(t: &TowerParams) -> ECtx {
    ECtx::new(t.p, t.m, t.e).unwrap()
}

pub fn of_val(ctx: &ECtx, v: Q64) -> ECoeff {
    ctx.element_of_valuation(v).unwrap()
}

/// K = ℚ_3, Gal(F/K) cyclic of order 2, χ the sign character, weights (0, 1).
pub fn steinberg(v_alpha: Q64, choice: FilChoice) -> CaseParams {
    let t = tower(CaseKind::Steinberg, 3, 1, 1, 2, 0, 0, 2, 2);
    let ctx = ctx_of(&t);
    CaseParams {
        scalars: Scalars::Steinberg {
            alphas: vec![of_val(&ctx, v_alpha)],
        },
        tower: t,
        weights: vec![(0, 1)],
        characters: Characters::Cyclic {
            chi1: q(1, 2),
            chi2: q(1, 2),
        },
        fil: vec![Some(choice)],
    }
}

/// K = ℚ_5, Gal(F/K) cyclic of order 4, E = ℚ(i).
pub fn ps_split(
    a_val: Q64,
    b_val: Q64,
    chi: (Q64, Q64),
    weights: Vec<(i64, i64)>,
    fil: Vec<Option<FilChoice>>,
) -> CaseParams {
    let t = tower(CaseKind::PsSplit, 5, 1, weights.len() as u32, 4, 0, 0, 4, 2);
    let ctx = ctx_of(&t);
    CaseParams {
        scalars: Scalars::PsSplit {
            a: of_val(&ctx, a_val),
            b: of_val(&ctx, b_val),
        },
        tower: t,
        weights,
        characters: Characters::Cyclic {
            chi1: chi.0,
            chi2: chi.1,
        },
        fil,
    }
}

/// q = 3, m1 = n1 = 1, E = ℚ(ζ_8)[ϖ]/(ϖ² − 3).
pub fn sc_unramified(s: i64, v_alpha: Q64, v_beta: Q64, point: (i64, i64)) -> CaseParams {
    let t = tower(CaseKind::ScUnramified, 3, 1, 1, 0, 1, 1, 8, 2);
    let ctx = ctx_of(&t);
    CaseParams {
        scalars: Scalars::ScUnramified {
            alpha1: of_val(&ctx, v_alpha),
            beta1: of_val(&ctx, v_beta),
        },
        weights: vec![(0, 1)],
        characters: Characters::Induced(CharacterData {
            s,
            chi1: vec![],
            chi2: vec![],
        }),
        fil: vec![Some(FilChoice::Point {
            a: ctx.from_int(point.0),
            b: ctx.from_int(point.1),
        })],
        tower: t,
    }
}

/// q = 3, n1 = 1, χ_2 of order 3, E = ℚ(ζ_6).
pub fn sc_ramified(m1: u32, s: i64, v_alpha: Q64, point: (i64, i64)) -> CaseParams {
    let t = tower(CaseKind::ScRamified, 3, 1, 1, 0, m1, 1, 6, 1);
    let ctx = ctx_of(&t);
    CaseParams {
        scalars: Scalars::ScRamified {
            alpha1: of_val(&ctx, v_alpha),
        },
        weights: vec![(0, 1)],
        characters: Characters::Induced(CharacterData {
            s,
            chi1: vec![q(0, 1)],
            chi2: vec![q(1, 3)],
        }),
        fil: vec![Some(FilChoice::Point {
            a: ctx.from_int(point.0),
            b: ctx.from_int(point.1),
        })],
        tower: t,
    }
}

/// Principal series on the ℚ_5 tower of `ps_split`, weights (0, 1).
pub fn ps_cyclic(scalars: impl FnOnce(&ECtx) -> Scalars, chi: Q64, fil: FilChoice) -> CaseParams {
    let mut pr = ps_split(q(0, 1), q(0, 1), (chi, chi), vec![(0, 1)], vec![Some(fil)]);
    pr.scalars = scalars(&ctx_of(&pr.tower));
    pr.tower.case = pr.scalars.kind().tower_case();
    pr
}
