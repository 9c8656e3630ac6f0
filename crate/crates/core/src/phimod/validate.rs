//! Exact check of every module and filtration axiom.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::linalg::Mat2;
use super::module::{first_mismatch, FiltrationData, PhiNModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Component, embedding or relation index where the check first failed.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: impl Into<String>, counterexample: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: counterexample.is_none(),
            counterexample,
        });
    }
}

pub fn validate(d: &PhiNModule, fil: &FiltrationData) -> ValidationReport {
    let mut r = ValidationReport::default();
    if let Err(e) = d.check_shape() {
        r.push("shape", Some(e.to_string()));
        return r;
    }
    r.push("shape", None);
    module_checks(d, &mut r);
    galois_checks(d, &mut r);
    filtration_checks(d, fil, &mut r);
    r
}

fn at(i: Option<usize>, what: &str) -> Option<String> {
    i.map(|i| format!("{what} = {i}"))
}

fn module_checks(d: &PhiNModule, r: &mut ValidationReport) {
    let n = d.n0();
    let p = d.ctx().from_int(d.tower.tower.p as i64);
    r.push(
        "A_i invertible",
        at(d.frob.iter().position(|a| a.det().is_zero()), "i"),
    );
    let lhs: Vec<Mat2> = (0..n)
        .map(|i| d.mono[(i + 1) % n].mul(&d.frob[i]))
        .collect();
    let rhs: Vec<Mat2> = (0..n)
        .map(|i| d.frob[i].mul(&d.mono[i]).scale(&p))
        .collect();
    r.push(
        "N_{i+1} A_i = p A_i N_i",
        at(first_mismatch(&lhs, &rhs), "i"),
    );
    r.push(
        "N_i^2 = 0",
        at(d.mono.iter().position(|m| !m.mul(m).is_zero()), "i"),
    );
}

fn galois_checks(d: &PhiNModule, r: &mut ValidationReport) {
    let n = d.n0();
    let group = &d.tower.group;
    for (gi, (name, elem)) in group.generators().iter().enumerate() {
        let act = &d.galois[gi];
        let s = act.shift as usize % n;
        let expected = group.shift(elem) as usize % n;
        r.push(
            format!("shift [{name}]"),
            (s != expected).then(|| format!("shift {s}, expected {expected}")),
        );
        r.push(
            format!("G invertible [{name}]"),
            at(act.mats.iter().position(|m| m.det().is_zero()), "i"),
        );
        let lhs: Vec<Mat2> = (0..n)
            .map(|i| act.mats[(i + 1) % n].mul(&d.frob[i]))
            .collect();
        let rhs: Vec<Mat2> = (0..n)
            .map(|i| d.frob[(i + s) % n].mul(&act.mats[i]))
            .collect();
        r.push(
            format!("G commutes with phi [{name}]"),
            at(first_mismatch(&lhs, &rhs), "i"),
        );
        let lhs: Vec<Mat2> = (0..n).map(|i| act.mats[i].mul(&d.mono[i])).collect();
        let rhs: Vec<Mat2> = (0..n)
            .map(|i| d.mono[(i + s) % n].mul(&act.mats[i]))
            .collect();
        r.push(
            format!("G commutes with N [{name}]"),
            at(first_mismatch(&lhs, &rhs), "i"),
        );
    }
    if r.checks
        .iter()
        .any(|c| c.name.starts_with("G invertible") && !c.passed)
    {
        r.push(
            "representation",
            Some("skipped: singular generator matrix".into()),
        );
        return;
    }
    for (name, lhs, rhs) in group.relation_words() {
        let res = match (d.eval_word(&lhs), d.eval_word(&rhs)) {
            (Ok(a), Ok(b)) if a.shift != b.shift => {
                Some(format!("shifts {} and {}", a.shift, b.shift))
            }
            (Ok(a), Ok(b)) => at(first_mismatch(&a.mats, &b.mats), "i"),
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
        };
        r.push(format!("relation [{name}]"), res);
    }
}

fn filtration_checks(d: &PhiNModule, fil: &FiltrationData, r: &mut ValidationReport) {
    let torsor = &d.tower.torsor;
    if fil.weights.len() != torsor.j_count() {
        r.push(
            "filtration shape",
            Some(format!(
                "{} weight pairs for {} embeddings",
                fil.weights.len(),
                torsor.j_count()
            )),
        );
        return;
    }
    if fil.lines.len() != torsor.jf_count() {
        r.push(
            "filtration shape",
            Some(format!(
                "{} lines for {} embeddings of F",
                fil.lines.len(),
                torsor.jf_count()
            )),
        );
        return;
    }
    r.push("filtration shape", None);
    r.push(
        "weights 0 <= k1 <= k2",
        at(fil.weights.iter().position(|&(a, b)| a < 0 || a > b), "j"),
    );
    let line_ok = |jf: usize| {
        let (j, _) = torsor.split(jf);
        let (a, b) = fil.weights[j];
        fil.lines[jf].is_some() == (a < b)
            && fil.lines[jf].as_ref().is_none_or(|l| l.ctx() == d.ctx())
    };
    let bad = (0..torsor.jf_count()).find(|&jf| !line_ok(jf));
    r.push("line present iff k1 < k2", at(bad, "j_F"));
    if bad.is_some() {
        return;
    }
    let group = &d.tower.group;
    for (gi, (name, g)) in group.generators().iter().enumerate() {
        let act = &d.galois[gi];
        let mut fail = None;
        for jf in 0..torsor.jf_count() {
            let moved = torsor.act(jf, g);
            let (Some(target), Some(src)) = (&fil.lines[jf], &fil.lines[moved]) else {
                continue;
            };
            let comp = torsor.component(moved) as usize;
            let ok = act.mats[comp].det().is_zero()
                || src.image(&act.mats[comp]).is_ok_and(|l| &l == target);
            if !ok {
                fail = Some(jf);
                break;
            }
        }
        r.push(format!("Fil stable [{name}]"), at(fail, "j_F"));
    }
}
