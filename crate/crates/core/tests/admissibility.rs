mod common;

use common::*;
use phimod::admissibility::{
    evaluate, oracle_compare, t_j_count, ClosedFormData, Part, Relation, ScalarVals,
};
use phimod::builder::{enumerate_admissible_partitions, FilChoice};
use proptest::prelude::*;

#[test]
fn enumerate_steinberg() {
    let vals = ScalarVals::Steinberg { sum_alpha: q(1, 1) };
    let parts = enumerate_admissible_partitions(&vals, 1, &[(0, 1)], false);
    assert_eq!(parts, vec![vec![Some(Part::I2)]]);
    let parts = enumerate_admissible_partitions(&vals, 1, &[(0, 0)], false);
    assert!(parts.is_empty());
}

#[test]
fn closed_form_trace_labels() {
    let data = ClosedFormData {
        e_k: 1,
        weights: vec![(0, 1)],
        vals: ScalarVals::Steinberg { sum_alpha: q(1, 1) },
        parts: vec![Some(Part::I1)],
        l_candidates: vec![],
    };
    let cf = evaluate(&data);
    assert!(!cf.passed);
    let eq = cf
        .trace
        .iter()
        .find(|c| c.label.starts_with("(eq)"))
        .unwrap();
    assert!(eq.passed && eq.relation == Relation::Eq);
    assert!(cf
        .trace
        .iter()
        .any(|c| c.label.starts_with("(D'_2)") && !c.passed));
}

#[test]
fn t_j_counting() {
    let pr = steinberg(q(1, 1), FilChoice::I1);
    let ctx = ctx_of(&pr.tower);
    let (a, b) = (ctx.from_int(1), ctx.from_int(2));
    assert_eq!(
        t_j_count(&[a.clone(), b.clone()], &[a.clone(), a.clone()]).unwrap(),
        q(1, 2)
    );
    assert!(t_j_count(&[], &[]).is_err());
}

fn fil_choice(code: u8) -> FilChoice {
    if code.is_multiple_of(2) {
        FilChoice::I1
    } else {
        FilChoice::I2 { l: None }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn steinberg_oracle_agrees(v in 0i64..6, k1 in 0i64..3, dk in 0i64..3, code in 0u8..2) {
        let mut pr = steinberg(q(v, 2), fil_choice(code));
        pr.weights = vec![(k1, k1 + dk)];
        if dk == 0 {
            pr.fil = vec![None];
        }
        let (r, ..) = oracle_compare(&pr).unwrap();
        prop_assert!(r.agree, "{:?} vs {:?}", r.general, r.closed_form.trace);
    }

    #[test]
    fn ps_split_oracle_agrees(
        va in -2i64..4, vb in -2i64..4, c1 in 0i64..4, c2 in 0i64..4,
        w in prop::collection::vec((0i64..3, 0i64..3, 0u8..3), 1..3),
    ) {
        let weights: Vec<_> = w.iter().map(|&(k, d, _)| (k, k + d)).collect();
        let mut pr = ps_split(q(va, 2), q(vb, 2), (q(c1, 4), q(c2, 4)), weights, vec![]);
        let ctx = ctx_of(&pr.tower);
        pr.fil = w.iter().enumerate().map(|(j, &(_, d, c))| (d > 0).then(|| match c {
            0 => FilChoice::I1,
            1 => FilChoice::I2 { l: None },
            _ => FilChoice::I3 { l: ctx.from_int(1 + (j as i64 + va).rem_euclid(2)) },
        })).collect();
        let (r, ..) = oracle_compare(&pr).unwrap();
        prop_assert!(r.agree, "{:?} vs {:?}", r.general, r.closed_form.trace);
    }

    #[test]
    fn sc_unramified_oracle_agrees(va in 0i64..4, vb in 0i64..4, a in 0i64..3, b in 0i64..3) {
        prop_assume!(a != 0 || b != 0);
        let pr = sc_unramified(1, q(va, 2), q(vb, 2), (a, b));
        let (r, ..) = oracle_compare(&pr).unwrap();
        prop_assert!(r.agree, "{:?} vs {:?}", r.general, r.closed_form.trace);
    }

    #[test]
    fn sc_ramified_oracle_agrees(va in 0i64..4, a in 0i64..3, b in 0i64..3, s in 0i64..2) {
        prop_assume!(a != 0 || b != 0);
        let pr = sc_ramified(2, s, q(va, 2), (a, b));
        let (r, ..) = oracle_compare(&pr).unwrap();
        prop_assert!(r.agree, "{:?} vs {:?}", r.general, r.closed_form.trace);
    }
}
