mod common;

use common::*;
use phimod::builder::{build_module, CaseKind, CaseParams, Characters, FilChoice, Scalars};
use phimod::classify::{
    classify, classify_phi, galois_type_trichotomy, inertial_type, scalar_type_check, PhiShape,
    TypeCase, TypeDescription,
};
use phimod::phimod::Mat2;

fn ps_irreducible() -> CaseParams {
    let mut pr = ps_cyclic(
        |c| Scalars::PsIrreducible {
            a: c.zero(),
            b: c.one(),
            c: c.from_int(3),
        },
        q(1, 4),
        FilChoice::I1,
    );
    let ctx = ctx_of(&pr.tower);
    pr.fil = vec![Some(FilChoice::Point {
        a: ctx.one(),
        b: ctx.zero(),
    })];
    pr
}

fn ps_non_split() -> CaseParams {
    ps_cyclic(
        |c| Scalars::PsNonSplit {
            a: c.from_int(5),
            b: c.one(),
        },
        q(3, 4),
        FilChoice::I2 { l: None },
    )
}

#[test]
fn phi_shapes() {
    let shape = |pr: &CaseParams| classify_phi(&build_module(pr).unwrap().0).unwrap().shape;
    assert_eq!(shape(&ps_irreducible()), PhiShape::Irreducible);
    assert_eq!(shape(&ps_non_split()), PhiShape::NonSplit);
    let split = ps_split(
        q(0, 1),
        q(1, 1),
        (q(0, 1), q(1, 4)),
        vec![(0, 1)],
        vec![Some(FilChoice::I1)],
    );
    assert_eq!(shape(&split), PhiShape::Split);
}

#[test]
fn round_trip_cases() {
    let cases: Vec<(CaseParams, CaseKind, TypeCase)> = vec![
        (
            steinberg(q(1, 1), FilChoice::I2 { l: None }),
            CaseKind::Steinberg,
            TypeCase::Decomposable,
        ),
        (
            ps_irreducible(),
            CaseKind::PsIrreducible,
            TypeCase::Decomposable,
        ),
        (ps_non_split(), CaseKind::PsNonSplit, TypeCase::Decomposable),
        (
            ps_split(
                q(0, 1),
                q(1, 1),
                (q(1, 2), q(1, 4)),
                vec![(0, 1)],
                vec![Some(FilChoice::I1)],
            ),
            CaseKind::PsSplit,
            TypeCase::Decomposable,
        ),
        (
            sc_unramified(1, q(1, 2), q(1, 2), (1, 1)),
            CaseKind::ScUnramified,
            TypeCase::InducedUnramified,
        ),
        (
            sc_ramified(2, 1, q(1, 2), (1, 1)),
            CaseKind::ScRamified,
            TypeCase::InducedRamified,
        ),
    ];
    for (pr, kind, tc) in cases {
        let (d, _) = build_module(&pr).unwrap();
        let c = classify(&d).unwrap();
        assert_eq!(c.case, Some(kind));
        assert_eq!(c.type_case, tc);
        match (&c.characters, &pr.characters) {
            (Characters::Cyclic { chi1, chi2 }, Characters::Cyclic { chi1: a, chi2: b }) => {
                assert_eq!(*chi1, *a);
                if kind == CaseKind::PsSplit {
                    assert_eq!(*chi2, *b);
                }
            }
            (Characters::Induced(got), Characters::Induced(want)) => {
                let delta = if kind == CaseKind::ScUnramified { 8 } else { 2 };
                assert_eq!(got.s.rem_euclid(delta), want.s.rem_euclid(delta));
                assert_eq!(got.chi1, want.chi1);
                assert_eq!(got.chi2, want.chi2);
            }
            other => panic!("character shape mismatch: {other:?}"),
        }
    }
}

#[test]
fn inertial_types() {
    let (d, _) = build_module(&steinberg(q(1, 1), FilChoice::I2 { l: None })).unwrap();
    let tau = inertial_type(&d).unwrap();
    assert!(matches!(tau.description, TypeDescription::Scalar(_)));
    assert_eq!(
        galois_type_trichotomy(&tau, &d.tower.group)
            .unwrap()
            .number(),
        1
    );
    assert!(scalar_type_check(&d).unwrap());

    let (d, _) = build_module(&sc_unramified(1, q(1, 2), q(1, 2), (1, 1))).unwrap();
    let tau = inertial_type(&d).unwrap();
    let TypeDescription::Induced { chi, conjugate } = &tau.description else {
        panic!()
    };
    // χ^σ(δ) = ω^{sq}(δ).
    assert_eq!(chi.s, 1);
    assert_eq!(conjugate.ab[0], q(3, 8));
    assert_eq!(
        galois_type_trichotomy(&tau, &d.tower.group)
            .unwrap()
            .number(),
        2
    );
    assert!(scalar_type_check(&d).unwrap());
}

#[test]
fn classify_phi_basis_invariant() {
    let (mut d, _) = build_module(&ps_non_split()).unwrap();
    let ctx = d.ctx().clone();
    let p = Mat2::new(ctx.one(), ctx.from_int(2), ctx.from_int(1), ctx.from_int(3));
    let p_inv = p.inv().unwrap();
    for a in d.frob.iter_mut() {
        *a = p.mul(a).mul(&p_inv);
    }
    for g in d.galois.iter_mut() {
        for m in g.mats.iter_mut() {
            *m = p.mul(m).mul(&p_inv);
        }
    }
    assert_eq!(classify_phi(&d).unwrap().shape, PhiShape::NonSplit);
    assert_eq!(classify(&d).unwrap().case, Some(CaseKind::PsNonSplit));
}

#[test]
fn nonscalar_inertia_with_monodromy_fails_validation() {
    let pr = ps_split(
        q(0, 1),
        q(1, 1),
        (q(0, 1), q(1, 4)),
        vec![(0, 1)],
        vec![Some(FilChoice::I1)],
    );
    let (mut d, fil) = build_module(&pr).unwrap();
    let ctx = d.ctx().clone();
    d.mono = vec![Mat2::new(ctx.zero(), ctx.zero(), ctx.one(), ctx.zero()); d.n0()];
    assert!(!scalar_type_check(&d).unwrap());
    assert!(!phimod::phimod::validate(&d, &fil).all_passed());
}
