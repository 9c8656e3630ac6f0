use num_bigint::BigInt;
use num_rational::BigRational;
use phimod::coeff::{sqrt_in_e, ECoeff, ECtx, NoRootReason, SqrtResult};
use phimod::{Error, Q64};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Q64 {
    Q64::new(n, d)
}

#[test]
fn root_of_unity_order() {
    let ctx = ECtx::new(5, 3, 1).unwrap();
    assert!((ctx.zeta(1) * ctx.zeta(2)).is_one());
}

#[test]
fn uniformizer_relation() {
    let ctx = ECtx::new(5, 1, 2).unwrap();
    assert_eq!(ctx.pi_pow(1) * ctx.pi_pow(1), ctx.from_int(5));
    assert_eq!(ctx.pi_pow(-1) * ctx.pi_pow(1), ctx.one());
}

#[test]
fn inverse_round_trip() {
    let ctx = ECtx::new(5, 3, 1).unwrap();
    let x = ctx.one() + ctx.zeta(1);
    assert!((&x * &x.inv().unwrap()).is_one());
    // 1 + ζ_3 = −ζ_3^2, so the inverse is −ζ_3.
    assert_eq!(x.inv().unwrap(), -ctx.zeta(1));
}

#[test]
fn division_errors() {
    let ctx = ECtx::new(5, 3, 2).unwrap();
    assert_eq!(
        ctx.one().checked_div(&ctx.zero()),
        Err(Error::DivisionByZero)
    );
    let other = ECtx::new(7, 3, 2).unwrap();
    assert_eq!(
        ctx.one().checked_add(&other.one()),
        Err(Error::ContextMismatch)
    );
}

#[test]
fn valuation_examples() {
    let ctx = ECtx::new(5, 3, 2).unwrap();
    assert_eq!(ctx.from_int(5).valuation(), Some(q(1, 1)));
    assert_eq!(ctx.pi_pow(1).valuation(), Some(q(1, 2)));
    assert_eq!(ctx.zero().valuation(), None);
    let unr = ECtx::new(5, 3, 1).unwrap();
    let x = unr.one() - unr.zeta(1);
    // Oracle: the norm of 1 − ζ_3 is 3, prime to 5.
    assert_eq!(x.norm_to_q(), BigRational::from_integer(3.into()));
    assert_eq!(x.valuation(), Some(q(0, 1)));
}

#[test]
fn elements_of_prescribed_valuation() {
    let ctx = ECtx::new(3, 9, 1).unwrap();
    assert_eq!(ctx.value_group_denominator(), 6);
    for n in -7..8 {
        let r = q(n, 6);
        assert_eq!(ctx.element_of_valuation(r).unwrap().valuation(), Some(r));
    }
    let ctx2 = ECtx::new(5, 4, 3).unwrap();
    assert_eq!(
        ctx2.element_of_valuation(q(-2, 3)).unwrap().valuation(),
        Some(q(-2, 3))
    );
    assert!(ctx2.element_of_valuation(q(1, 2)).is_err());
}

#[test]
fn ramified_context_condition() {
    // φ(9) = 6 shares a factor with e = 2.
    assert!(ECtx::new(3, 9, 2).is_err());
    assert!(ECtx::new(3, 9, 5).is_ok());
}

#[test]
fn sqrt_examples() {
    let b = BigInt::from(10).pow(10);
    let ctx = ECtx::new(5, 1, 1).unwrap();
    assert_eq!(
        sqrt_in_e(&ctx.from_int(4), &b).unwrap().root(),
        Some(&ctx.from_int(2))
    );
    let r = sqrt_in_e(&ctx.from_int(-5), &b).unwrap();
    assert!(matches!(r, SqrtResult::NoRoot(NoRootReason::NotSquare(_))));
    let ctx2 = ECtx::new(5, 1, 2).unwrap();
    let root = sqrt_in_e(&ctx2.from_int(5), &b)
        .unwrap()
        .root()
        .cloned()
        .unwrap();
    assert!(root == ctx2.pi_pow(1) || root == -ctx2.pi_pow(1));
}

fn ctx_strategy() -> impl Strategy<Value = ECtx> {
    prop_oneof![
        Just((3u64, 4u64, 2usize)),
        Just((5, 3, 2)),
        Just((3, 3, 1)),
        Just((5, 5, 3)),
        Just((7, 1, 3)),
    ]
    .prop_map(|(p, m, e)| ECtx::new(p, m, e).unwrap())
}

fn element(ctx: &ECtx, raw: &[(i64, i64)]) -> ECoeff {
    let phi = ctx.cyclo().degree();
    let parts = raw
        .chunks(phi)
        .take(ctx.e())
        .map(|ch| {
            let c: Vec<BigRational> = ch
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect();
            ctx.cyclo().from_coeffs(&c)
        })
        .collect();
    ctx.from_parts(parts)
}

fn raw_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..30, 1i64..12), 12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_multiplicative(ctx in ctx_strategy(), a in raw_strategy(), b in raw_strategy()) {
        let x = element(&ctx, &a);
        let y = element(&ctx, &b);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let vx = x.valuation().unwrap();
        let vy = y.valuation().unwrap();
        prop_assert_eq!((&x * &y).valuation(), Some(vx + vy));
        prop_assert_eq!(x.inv().unwrap().valuation(), Some(-vx));
    }

    #[test]
    fn valuation_is_ultrametric(ctx in ctx_strategy(), a in raw_strategy(), b in raw_strategy()) {
        let x = element(&ctx, &a);
        let y = element(&ctx, &b);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
        match (&x + &y).valuation() {
            None => prop_assert_eq!(vx, vy),
            Some(v) => {
                prop_assert!(v >= vx.min(vy));
                if vx != vy {
                    prop_assert_eq!(v, vx.min(vy));
                }
            }
        }
    }

    #[test]
    fn division_round_trips(ctx in ctx_strategy(), a in raw_strategy(), b in raw_strategy()) {
        let x = element(&ctx, &a);
        let y = element(&ctx, &b);
        prop_assume!(!y.is_zero());
        prop_assert_eq!(x.checked_div(&y).unwrap() * y, x);
    }

    #[test]
    fn square_roots_of_squares(ctx in ctx_strategy(), a in prop::collection::vec((-6i64..6, 1i64..4), 12)) {
        let x = element(&ctx, &a);
        prop_assume!(!x.is_zero());
        let sq = &x * &x;
        let res = sqrt_in_e(&sq, &BigInt::from(10).pow(8)).unwrap();
        let root = res.root().cloned();
        prop_assert!(root.is_some());
        let root = root.unwrap();
        prop_assert_eq!(&root * &root, sq);
    }

    #[test]
    fn rational_valuation_matches_p_adic_order(n in 1i64..100_000, d in 1i64..100_000, ctx in ctx_strategy()) {
        let p = ctx.p() as i64;
        let vp = |mut x: i64| { let mut v = 0; while x % p == 0 { x /= p; v += 1; } v };
        let x = ctx.from_ratio(n, d).unwrap();
        prop_assert_eq!(x.valuation(), Some(Q64::from_integer(vp(n) - vp(d))));
    }
}

#[test]
fn lift_refines_compatibly() {
    let ctx = ECtx::new(7, 15, 1).unwrap();
    let emb = ctx.padic();
    let hi = emb.lifted_factor(9);
    let lo = emb.lifted_factor(4);
    let m = BigInt::from(7).pow(4);
    let reduced: Vec<BigInt> = hi.iter().map(|c| ((c % &m) + &m) % &m).collect();
    let mut reduced = reduced;
    while reduced.last().is_some_and(|c| c == &BigInt::from(0)) {
        reduced.pop();
    }
    assert_eq!(reduced, lo);
}
