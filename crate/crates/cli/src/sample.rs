//! Seeded random parameter sets for every case.
//!
//! Valuations are usually solved from the Newton–Hodge equality so that the
//! inequalities decide the verdict; about one draw in six is perturbed off
//! the equality. Ranges:
//! - cyclic cases: p ∈ {3, 5, 7}, m0 ≤ 3, e_K ≤ 2, Gal(F/K) of order
//!   dividing q − 1 and at most 4, weights ≤ 5;
//! - supercuspidal cases: p ∈ {3, 5}, m0 = 1, m1 ≤ 2, n1 ≤ 2 (n1 = 1 for
//!   p = 5), e_K ≤ 2, weights ≤ 5.

use phimod::builder::{CaseKind, CaseParams, Characters, FilChoice, Scalars};
use phimod::coeff::{ECoeff, ECtx};
use phimod::tower::{CharacterData, TowerParams};
use phimod::Q64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn weights(rng: &mut SampleRng, count: usize) -> Vec<(i64, i64)> {
    (0..count)
        .map(|_| {
            let k1 = rng.gen_range(0..=5);
            let k2 = if rng.gen_bool(0.2) {
                k1
            } else {
                rng.gen_range(k1..=5)
            };
            (k1, k2)
        })
        .collect()
}

fn weight_sum(w: &[(i64, i64)]) -> i64 {
    w.iter().map(|&(a, b)| a + b).sum()
}

/// A random unit: ±1, ±2 or a root of unity.
fn unit(rng: &mut SampleRng, ctx: &ECtx) -> ECoeff {
    match rng.gen_range(0..4) {
        0 => ctx.one(),
        1 => -ctx.one(),
        2 if ctx.p() != 2 => ctx.from_int(2),
        _ => ctx.zeta(rng.gen_range(0..ctx.m() as i64)),
    }
}

fn in_value_group(ctx: &ECtx, v: Q64) -> bool {
    (v * Q64::from_integer(ctx.value_group_denominator())).is_integer()
}

/// Element of valuation `v` times a random unit.
fn element(rng: &mut SampleRng, ctx: &ECtx, v: Q64) -> ECoeff {
    let x = ctx
        .element_of_valuation(v)
        .expect("valuation inside the value group");
    x * unit(rng, ctx)
}

/// A random valuation in (1/d)ℤ ∩ [−2, 2].
fn small_valuation(rng: &mut SampleRng, ctx: &ECtx) -> Q64 {
    let d = ctx.value_group_denominator();
    Q64::new(rng.gen_range(-2 * d..=2 * d), d)
}

/// Moves `v` off the equality by one step of the value group.
fn maybe_perturb(rng: &mut SampleRng, ctx: &ECtx, v: Q64) -> Q64 {
    if rng.gen_bool(1.0 / 6.0) {
        let step = Q64::new(
            if rng.gen_bool(0.5) { 1 } else { -1 },
            ctx.value_group_denominator(),
        );
        v + step
    } else {
        v
    }
}

fn small_int(rng: &mut SampleRng, ctx: &ECtx) -> ECoeff {
    ctx.from_int(*[1, 2, -1, 3].choose(rng).unwrap())
}

fn point(rng: &mut SampleRng, ctx: &ECtx) -> FilChoice {
    let pick = |rng: &mut SampleRng| match rng.gen_range(0..5) {
        0 => ctx.zero(),
        1 => ctx.one(),
        2 => ctx.from_int(2),
        3 => -ctx.one(),
        _ => ctx.zeta(1),
    };
    loop {
        let (a, b) = (pick(rng), pick(rng));
        if !(a.is_zero() && b.is_zero()) {
            return FilChoice::Point { a, b };
        }
    }
}

/// Draws valuations solving `target(S)` for some draw of weights whose
/// target lies in the value group (up to 20 redraws).
fn weights_for(
    rng: &mut SampleRng,
    ctx: &ECtx,
    count: usize,
    target: impl Fn(i64) -> Q64,
) -> (Vec<(i64, i64)>, Q64) {
    let mut w = weights(rng, count);
    for _ in 0..20 {
        if in_value_group(ctx, target(weight_sum(&w))) {
            break;
        }
        w = weights(rng, count);
    }
    let t = target(weight_sum(&w));
    let t = if in_value_group(ctx, t) {
        maybe_perturb(rng, ctx, t)
    } else {
        small_valuation(rng, ctx)
    };
    (w, t)
}

fn cyclic_tower(rng: &mut SampleRng, kind: CaseKind) -> TowerParams {
    let p = *[3u64, 5, 7].choose(rng).unwrap();
    let m0 = rng.gen_range(1..=3u32);
    let e_k = rng.gen_range(1..=2u32);
    let q = p.pow(m0);
    let orders: Vec<u64> = (1..=4).filter(|d| (q - 1) % d == 0).collect();
    let cyclic_order = *orders.choose(rng).unwrap();
    // Value group (1/e)ℤ with e = 2·e_K covers every equality target.
    TowerParams {
        case: kind.tower_case(),
        p,
        m0,
        e_k,
        cyclic_order,
        m1: 0,
        n1: 0,
        m: lcm(2, cyclic_order),
        e: 2 * e_k as usize,
    }
}

fn sc_tower(rng: &mut SampleRng, kind: CaseKind) -> TowerParams {
    let p = *[3u64, 5].choose(rng).unwrap();
    let m1 = rng.gen_range(1..=2u32);
    let n1 = if p == 3 { rng.gen_range(1..=2u32) } else { 1 };
    let e_k = rng.gen_range(1..=2u32);
    let q = p;
    let (m, e) = if kind == CaseKind::ScUnramified {
        let u = p.pow(n1 - 1);
        let m = lcm(q * q - 1, u);
        (m, if u > 1 { 1 } else { 2 })
    } else {
        (lcm(lcm(q - 1, p.pow(n1)), 2), 1)
    };
    TowerParams {
        case: kind.tower_case(),
        p,
        m0: 1,
        e_k,
        cyclic_order: 1,
        m1,
        n1,
        m,
        e,
    }
}

fn cyclic_char(rng: &mut SampleRng, order: u64) -> Q64 {
    Q64::new(rng.gen_range(0..order as i64), order as i64)
}

fn sc_characters(rng: &mut SampleRng, kind: CaseKind, t: &TowerParams) -> CharacterData {
    let q = t.p.pow(t.m0) as i64;
    let ramified = kind == CaseKind::ScRamified;
    let delta = if ramified { q - 1 } else { q * q - 1 };
    let (u_order, rank) = if ramified {
        (t.p.pow(t.n1) as i64, t.m0 as usize)
    } else {
        let u = t.p.pow(t.n1 - 1) as i64;
        (u, if u > 1 { t.m0 as usize } else { 0 })
    };
    loop {
        let s = rng.gen_range(0..delta);
        let draw = |rng: &mut SampleRng| -> Vec<Q64> {
            (0..rank)
                .map(|_| Q64::new(rng.gen_range(0..u_order), u_order))
                .collect()
        };
        let chi1 = draw(rng);
        let chi2 = draw(rng);
        let chi2_square_trivial = chi2.iter().all(|v| (*v * 2).is_integer());
        let extends = if ramified {
            chi2_square_trivial
        } else {
            s % (q + 1) == 0 && chi2_square_trivial
        };
        if !extends {
            return CharacterData { s, chi1, chi2 };
        }
    }
}

/// One random parameter set of the given case. Builder preconditions that
/// need field arithmetic (irreducibility) are left to the caller.
pub fn sample(rng: &mut SampleRng, kind: CaseKind) -> Result<CaseParams, CliError> {
    let supercuspidal = kind.tower_case().is_supercuspidal();
    let tower = if supercuspidal {
        sc_tower(rng, kind)
    } else {
        cyclic_tower(rng, kind)
    };
    let ctx = ECtx::new(tower.p, tower.m, tower.e)?;
    let count = (tower.m0 * tower.e_k) as usize;
    let e_k = tower.e_k as i64;
    let mut l_pair = false;
    let (weights, scalars) = match kind {
        CaseKind::Steinberg => {
            let (w, v) = weights_for(rng, &ctx, count, |s| Q64::new(s + count as i64, 2 * e_k));
            let mut alphas = vec![element(rng, &ctx, v)];
            for _ in 1..tower.m0 {
                if rng.gen_bool(0.5) {
                    alphas.push(unit(rng, &ctx));
                }
            }
            (w, Scalars::Steinberg { alphas })
        }
        CaseKind::PsIrreducible => {
            let (w, v) = weights_for(rng, &ctx, count, |s| Q64::new(-s, e_k));
            let vb = small_valuation(rng, &ctx);
            let a = if rng.gen_bool(0.5) {
                ctx.zero()
            } else {
                small_int(rng, &ctx)
            };
            (
                w,
                Scalars::PsIrreducible {
                    a,
                    b: element(rng, &ctx, vb),
                    c: element(rng, &ctx, v - vb),
                },
            )
        }
        CaseKind::PsNonSplit => {
            let (w, v) = weights_for(rng, &ctx, count, |s| Q64::new(-s, 2 * e_k));
            (
                w,
                Scalars::PsNonSplit {
                    a: element(rng, &ctx, v),
                    b: unit(rng, &ctx),
                },
            )
        }
        CaseKind::PsSplit => {
            l_pair = rng.gen_bool(0.3);
            if l_pair {
                let (w, v) = weights_for(rng, &ctx, count, |s| Q64::new(s, 2 * e_k));
                let a = element(rng, &ctx, v);
                (w, Scalars::PsSplit { a: a.clone(), b: a })
            } else {
                let (w, v) = weights_for(rng, &ctx, count, |s| Q64::new(s, e_k));
                let va = small_valuation(rng, &ctx);
                (
                    w,
                    Scalars::PsSplit {
                        a: element(rng, &ctx, va),
                        b: element(rng, &ctx, v - va),
                    },
                )
            }
        }
        CaseKind::ScUnramified => {
            let (w, v) = weights_for(rng, &ctx, count, |s| Q64::new(s, e_k));
            let va = small_valuation(rng, &ctx);
            (
                w,
                Scalars::ScUnramified {
                    alpha1: element(rng, &ctx, va),
                    beta1: element(rng, &ctx, v - va),
                },
            )
        }
        CaseKind::ScRamified => {
            let (w, v) = weights_for(rng, &ctx, count, |s| Q64::new(s, 2 * e_k));
            (
                w,
                Scalars::ScRamified {
                    alpha1: element(rng, &ctx, v),
                },
            )
        }
    };
    let characters = if supercuspidal {
        Characters::Induced(sc_characters(rng, kind, &tower))
    } else {
        let chi1 = cyclic_char(rng, tower.cyclic_order);
        let chi2 = if l_pair {
            chi1
        } else {
            cyclic_char(rng, tower.cyclic_order)
        };
        Characters::Cyclic { chi1, chi2 }
    };
    let fil = weights
        .iter()
        .map(|&(k1, k2)| {
            (k1 < k2).then(|| match kind {
                CaseKind::Steinberg | CaseKind::PsNonSplit => {
                    if rng.gen_bool(0.5) {
                        FilChoice::I1
                    } else {
                        let l = rng.gen_bool(0.5).then(|| small_int(rng, &ctx));
                        FilChoice::I2 { l }
                    }
                }
                CaseKind::PsSplit => match rng.gen_range(0..3) {
                    0 => FilChoice::I1,
                    1 => FilChoice::I2 { l: None },
                    _ => FilChoice::I3 {
                        l: small_int(rng, &ctx),
                    },
                },
                CaseKind::PsIrreducible | CaseKind::ScUnramified | CaseKind::ScRamified => {
                    point(rng, &ctx)
                }
            })
        })
        .collect();
    Ok(CaseParams {
        tower,
        weights,
        scalars,
        characters,
        fil,
    })
}
