mod common;

use common::*;
use phimod::admissibility::{check_general, oracle_compare};
use phimod::builder::{build_module, build_module_unchecked, CaseKind, FilChoice};
use phimod::phimod::{validate, StableTag};
use phimod::Error;

#[test]
fn steinberg_worked_instance() {
    let (d, fil) = build_module(&steinberg(q(1, 1), FilChoice::I2 { l: None })).unwrap();
    assert!(validate(&d, &fil).all_passed());
    let v = check_general(&d, &fil).unwrap();
    assert_eq!(v.t_h, q(-1, 1));
    assert_eq!(v.t_n, q(-1, 1));
    assert_eq!(v.tag, StableTag::Finite);
    assert_eq!(v.lines.len(), 1);
    assert!(v.passed);

    let (report, ..) = oracle_compare(&steinberg(q(1, 1), FilChoice::I1)).unwrap();
    assert!(report.agree);
    assert!(!report.admissible());
    assert!(!report.closed_form.passed);
}

#[test]
fn steinberg_wrong_valuation_breaks_equality() {
    let (report, ..) = oracle_compare(&steinberg(q(1, 2), FilChoice::I2 { l: None })).unwrap();
    assert!(report.agree);
    assert!(report.general.t_h != report.general.t_n);
}

#[test]
fn ps_split_examples() {
    let w = vec![(0, 1)];
    let ok = ps_split(
        q(0, 1),
        q(1, 1),
        (q(0, 1), q(1, 4)),
        w.clone(),
        vec![Some(FilChoice::I1)],
    );
    let (r, ..) = oracle_compare(&ok).unwrap();
    assert!(r.agree && r.admissible(), "{:?}", r.closed_form.trace);
    let bad = ps_split(
        q(0, 1),
        q(1, 1),
        (q(0, 1), q(1, 4)),
        w,
        vec![Some(FilChoice::I2 { l: None })],
    );
    let (r, ..) = oracle_compare(&bad).unwrap();
    assert!(r.agree && !r.admissible());
}

#[test]
fn ps_split_l_condition() {
    // a = b and χ_1 = χ_2: the closed form needs the 𝔏 condition.
    let ctx = ctx_of(
        &ps_split(
            q(1, 2),
            q(1, 2),
            (q(0, 1), q(0, 1)),
            vec![(0, 1)],
            vec![None],
        )
        .tower,
    );
    let w = vec![(0, 1), (0, 1)];
    let fil = |l0: i64, l1: i64| {
        vec![
            Some(FilChoice::I3 {
                l: ctx.from_int(l0),
            }),
            Some(FilChoice::I3 {
                l: ctx.from_int(l1),
            }),
        ]
    };
    for (l0, l1) in [(1, 1), (1, 2)] {
        let pr = ps_split(q(1, 2), q(1, 2), (q(1, 4), q(1, 4)), w.clone(), fil(l0, l1));
        let (r, ..) = oracle_compare(&pr).unwrap();
        assert!(r.agree, "l = ({l0}, {l1}): {:?}", r.closed_form.trace);
        assert_eq!(r.admissible(), l0 != l1);
    }
}

#[test]
fn sc_unramified_validates() {
    let pr = sc_unramified(1, q(1, 2), q(1, 2), (1, 1));
    let (d, fil) = build_module(&pr).unwrap();
    assert!(validate(&d, &fil).all_passed());
    let (r, ..) = oracle_compare(&pr).unwrap();
    assert!(r.agree && r.admissible());
}

#[test]
fn sc_unramified_extension_criterion() {
    // s ≡ 0 mod q+1 with trivial χ_2 extends to Gal(F/K): not supercuspidal.
    let pr = sc_unramified(4, q(1, 2), q(1, 2), (1, 1));
    assert!(matches!(build_module(&pr), Err(Error::Precondition(_))));
}

#[test]
fn sc_ramified_validates() {
    let pr = sc_ramified(2, 1, q(1, 2), (1, 1));
    let (d, fil) = build_module(&pr).unwrap();
    let report = validate(&d, &fil);
    assert!(
        report.all_passed(),
        "{:?}",
        report.failures().map(|c| &c.name).collect::<Vec<_>>()
    );
    let (r, ..) = oracle_compare(&pr).unwrap();
    assert!(r.agree && r.admissible());
    let (r, ..) = oracle_compare(&sc_ramified(2, 1, q(1, 1), (1, 0))).unwrap();
    assert!(r.agree && !r.admissible());
}

#[test]
fn corrupted_module_fails_validation() {
    let (mut d, fil) =
        build_module_unchecked(&steinberg(q(1, 1), FilChoice::I2 { l: None })).unwrap();
    let ctx = d.ctx().clone();
    d.mono[0] = phimod::phimod::Mat2::new(ctx.zero(), ctx.one(), ctx.zero(), ctx.zero());
    let report = validate(&d, &fil);
    assert!(!report.all_passed());
    assert_eq!(CaseKind::from_name("steinberg"), Some(CaseKind::Steinberg));
}
