//! The displayed (in)equalities of each case, evaluated over ℚ.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::builder::CaseKind;
use crate::Q64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
}

/// One evaluated condition. Non-binding records are reported but do not
/// enter the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub label: String,
    pub lhs: Q64,
    pub rhs: Q64,
    pub relation: Relation,
    pub passed: bool,
    pub binding: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub passed: bool,
    pub trace: Vec<Condition>,
    /// Every t_j value computed for an 𝔏-candidate.
    pub t_j_values: Vec<Q64>,
}

/// Valuations of the Frobenius scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarVals {
    /// Σ_i v_p(α_i).
    Steinberg {
        sum_alpha: Q64,
    },
    PsIrreducible {
        v_bc: Q64,
    },
    PsNonSplit {
        v_a: Q64,
    },
    PsSplit {
        v_a: Q64,
        v_b: Q64,
    },
    ScUnramified {
        v_alpha: Q64,
        v_beta: Q64,
    },
    ScRamified {
        v_alpha: Q64,
    },
}

impl ScalarVals {
    pub fn kind(&self) -> CaseKind {
        match self {
            ScalarVals::Steinberg { .. } => CaseKind::Steinberg,
            ScalarVals::PsIrreducible { .. } => CaseKind::PsIrreducible,
            ScalarVals::PsNonSplit { .. } => CaseKind::PsNonSplit,
            ScalarVals::PsSplit { .. } => CaseKind::PsSplit,
            ScalarVals::ScUnramified { .. } => CaseKind::ScUnramified,
            ScalarVals::ScRamified { .. } => CaseKind::ScRamified,
        }
    }
}

/// Partition membership of one j with k_{j,1} < k_{j,2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    I1,
    I2,
    I3,
    /// A ℙ¹ point; `zero_product` records a_{j,1}·a_{j,2} = 0.
    Point {
        zero_product: bool,
    },
}

/// An 𝔏-candidate with t_j(𝔏, ·) for every j (0 where absent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LCandidate {
    pub name: String,
    pub t: Vec<Q64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormData {
    pub e_k: i64,
    pub weights: Vec<(i64, i64)>,
    pub vals: ScalarVals,
    pub parts: Vec<Option<Part>>,
    /// Empty unless the case's 𝔏-conditions apply.
    pub l_candidates: Vec<LCandidate>,
}

fn q(n: i64) -> Q64 {
    Q64::from_integer(n)
}

struct Sums<'a> {
    d: &'a ClosedFormData,
}

impl Sums<'_> {
    /// Σ over j with k1 < k2 of f(part, k1, k2), plus Σ_{k1 = k2} k2.
    fn with(&self, f: impl Fn(Part, i64, i64) -> Q64) -> Q64 {
        let mut s = q(0);
        for (&(k1, k2), p) in self.d.weights.iter().zip(&self.d.parts) {
            s += match p {
                Some(p) if k1 < k2 => f(*p, k1, k2),
                _ => q(k2),
            };
        }
        s
    }

    fn total(&self) -> Q64 {
        q(self.d.weights.iter().map(|&(a, b)| a + b).sum())
    }
}

struct Trace {
    out: Vec<Condition>,
}

impl Trace {
    fn push(&mut self, label: &str, lhs: Q64, rel: Relation, rhs: Q64, binding: bool) {
        let passed = match rel {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
        };
        self.out.push(Condition {
            label: label.into(),
            lhs,
            rhs,
            relation: rel,
            passed,
            binding,
        });
    }
}

pub fn evaluate(d: &ClosedFormData) -> ClosedForm {
    let s = Sums { d };
    let ek = q(d.e_k);
    let half = Q64::new(1, 2);
    let mut t = Trace { out: Vec::new() };
    let mut t_j_values = Vec::new();
    match &d.vals {
        ScalarVals::Steinberg { sum_alpha } => {
            let nj = q(d.weights.len() as i64);
            t.push(
                "(eq) 2[K:K0] sum v(alpha_i) = sum (k1+k2+1)",
                q(2) * ek * sum_alpha,
                Relation::Eq,
                s.total() + nj,
                true,
            );
            let rhs = s.with(|p, k1, k2| q(if p == Part::I1 { k1 } else { k2 }));
            t.push(
                "(D'_2) [K:K0] sum v(alpha_i) <= sum_I1 k1 + sum_I2 k2",
                ek * sum_alpha,
                Relation::Le,
                rhs,
                true,
            );
        }
        ScalarVals::PsIrreducible { v_bc } => {
            t.push(
                "(eq) -[K:K0] v(bc) = sum (k1+k2)",
                -ek * v_bc,
                Relation::Eq,
                s.total(),
                true,
            );
        }
        ScalarVals::PsNonSplit { v_a } => {
            t.push(
                "(eq) -2[K:K0] v(a) = sum (k1+k2)",
                -q(2) * ek * v_a,
                Relation::Eq,
                s.total(),
                true,
            );
            let rhs = s.with(|p, k1, k2| q(if p == Part::I1 { k1 } else { k2 }));
            t.push(
                "(D'_1) -[K:K0] v(a) <= sum_I1 k1 + sum_I2 k2",
                -ek * v_a,
                Relation::Le,
                rhs,
                true,
            );
        }
        ScalarVals::PsSplit { v_a, v_b } => {
            t.push(
                "(S) [K:K0] v(ab) = sum (k1+k2)",
                ek * (v_a + v_b),
                Relation::Eq,
                s.total(),
                true,
            );
            let r1 = s.with(|p, k1, k2| q(if p == Part::I1 { k1 } else { k2 }));
            t.push(
                "(D'_1) [K:K0] v(a) <= sum_I1 k1 + sum_I2+I3 k2",
                ek * v_a,
                Relation::Le,
                r1,
                true,
            );
            let r2 = s.with(|p, k1, k2| q(if p == Part::I2 { k1 } else { k2 }));
            t.push(
                "(D'_2) [K:K0] v(b) <= sum_I2 k1 + sum_I1+I3 k2",
                ek * v_b,
                Relation::Le,
                r2,
                true,
            );
            for c in &d.l_candidates {
                let rhs = l_rhs(d, c, |p| p == Part::I3);
                t_j_values.extend(c.t.iter().copied());
                t.push(
                    &format!("(S_L) L = {}", c.name),
                    ek * v_a,
                    Relation::Le,
                    rhs,
                    true,
                );
            }
        }
        // In labels, sum_0 runs over coordinate lines and sum_gen over the rest.
        ScalarVals::ScUnramified { v_alpha, v_beta } => {
            let v_ab = v_alpha + v_beta;
            t.push(
                "(U) [K:K0] v(alpha1 beta1) = sum (k1+k2)",
                ek * v_ab,
                Relation::Eq,
                s.total(),
                true,
            );
            let rhs = s.with(|p, k1, k2| {
                if p == (Part::Point { zero_product: true }) {
                    q(k1 + k2) * half
                } else {
                    q(k2)
                }
            });
            t.push(
                "(D'_1) [K:K0] v(alpha1 beta1)/2 <= sum_0 (k1+k2)/2 + sum_gen k2",
                ek * v_ab * half,
                Relation::Le,
                rhs,
                true,
            );
            t.push(
                "(D'_2) [K:K0] v(alpha1 beta1)/2 <= sum_0 (k1+k2)/2 + sum_gen k2",
                ek * v_ab * half,
                Relation::Le,
                rhs,
                true,
            );
            let zero_drop: Q64 = d
                .weights
                .iter()
                .zip(&d.parts)
                .filter(|(_, p)| **p == Some(Part::Point { zero_product: true }))
                .map(|(&(k1, k2), _)| q(k2 - k1) * half)
                .sum();
            let lo = q(d.weights.iter().map(|&(a, _)| a).sum()) + zero_drop;
            let hi = q(d.weights.iter().map(|&(_, b)| b).sum()) - zero_drop;
            t.push(
                "(bound, as displayed) sum k1 + sum_0 (k2-k1)/2 <= [K:K0] v(alpha1)",
                lo,
                Relation::Le,
                ek * v_alpha,
                false,
            );
            t.push(
                "(bound, as displayed) [K:K0] v(alpha1) <= sum k2 - sum_0 (k2-k1)/2",
                ek * v_alpha,
                Relation::Le,
                hi,
                false,
            );
            sc_l_conditions(d, &mut t, &mut t_j_values, ek * v_ab * half, "(U_L)");
        }
        ScalarVals::ScRamified { v_alpha } => {
            t.push(
                "(R) 2[K:K0] v(alpha1) = sum (k1+k2)",
                q(2) * ek * v_alpha,
                Relation::Eq,
                s.total(),
                true,
            );
            let rhs = s.with(|p, k1, k2| {
                if p == (Part::Point { zero_product: true }) {
                    q(k1 + k2) * half
                } else {
                    q(k2)
                }
            });
            t.push(
                "(D'_1) [K:K0] v(alpha1) <= sum_0 (k1+k2)/2 + sum_gen k2",
                ek * v_alpha,
                Relation::Le,
                rhs,
                true,
            );
            t.push(
                "(D'_2) [K:K0] v(alpha1) <= sum_0 (k1+k2)/2 + sum_gen k2",
                ek * v_alpha,
                Relation::Le,
                rhs,
                true,
            );
            sc_l_conditions(d, &mut t, &mut t_j_values, ek * v_alpha, "(R_L)");
        }
    }
    let passed = t.out.iter().all(|c| c.passed || !c.binding);
    ClosedForm {
        passed,
        trace: t.out,
        t_j_values,
    }
}

/// Σ over matching j of t_j k1 + (1 − t_j) k2, k2 elsewhere.
fn l_rhs(d: &ClosedFormData, c: &LCandidate, matches: impl Fn(Part) -> bool) -> Q64 {
    let mut s = q(0);
    for (j, (&(k1, k2), p)) in d.weights.iter().zip(&d.parts).enumerate() {
        s += match p {
            Some(p) if k1 < k2 && matches(*p) => c.t[j] * q(k1) + (q(1) - c.t[j]) * q(k2),
            _ => q(k2),
        };
    }
    s
}

fn sc_l_conditions(d: &ClosedFormData, t: &mut Trace, t_j: &mut Vec<Q64>, lhs: Q64, label: &str) {
    let half = Q64::new(1, 2);
    for c in &d.l_candidates {
        for (j, v) in c.t.iter().enumerate() {
            if d.parts[j]
                == Some(Part::Point {
                    zero_product: false,
                })
            {
                t_j.push(*v);
                t.push(
                    &format!("(t_j <= 1/2) j = {j}, L = {}", c.name),
                    *v,
                    Relation::Le,
                    half,
                    false,
                );
            }
        }
        let rhs = l_rhs(d, c, |p| {
            p == Part::Point {
                zero_product: false,
            }
        });
        t.push(
            &format!("{label} L = {}", c.name),
            lhs,
            Relation::Le,
            rhs,
            true,
        );
    }
}
