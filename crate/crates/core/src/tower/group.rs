//! Gal(F/K) as an extension of a cyclic group ⟨t⟩ by a finite abelian group A.
//!
//! An element t^k·a is stored as (k, a) with 0 ≤ k < T and a an exponent
//! vector. Conjugation is t^{-1}·a·t = θ(a) and t^T = c ∈ A, so
//! (k, a)·(l, b) = (k + l, θ^l(a) + b), folding t^T into c when k + l ≥ T.
//! Defining relations are stored separately as words in named generators,
//! so corrupting θ is caught by `verify_relations`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub top: u64,
    pub ab: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Cyclic,
    ScUnramified,
    ScRamified,
}

/// A word in the named generators: (generator index, exponent) pairs, left to right.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
struct Relation {
    name: String,
    lhs: Word,
    rhs: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
    /// Ramified case only: `Some(true)` when no element ι·a squares to 1.
    pub non_split: Option<bool>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.relations_passed() && self.non_split != Some(false)
    }

    /// The defining relations alone, ignoring the non-split check.
    pub fn relations_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> String {
        if let Some(c) = self.checks.iter().find(|c| !c.passed) {
            return c.name.clone();
        }
        if self.non_split == Some(false) {
            return "non-split extension".to_string();
        }
        String::new()
    }
}

#[derive(Clone, Debug)]
pub struct GaloisData {
    shape: Shape,
    /// Orders of the cyclic factors of A.
    orders: Vec<u64>,
    top_order: u64,
    /// c = t^T.
    top_power: Vec<u64>,
    /// θ as an integer matrix: θ(a)_i = Σ_j theta[i][j]·a_j.
    theta: Vec<Vec<i64>>,
    /// Named generators, each a group element.
    generators: Vec<(String, GroupElem)>,
    relations: Vec<Relation>,
    /// Position of σ inside A (ramified case) and of δ.
    delta_ab: Option<usize>,
    u_plus: (usize, usize),
    u_minus: (usize, usize),
    q: u64,
    m0: u32,
}

impl GaloisData {
    /// Cyclic totally ramified group of order n with generator "g".
    pub fn cyclic(n: u64) -> Self {
        let mut g = GaloisData {
            shape: Shape::Cyclic,
            orders: vec![n],
            top_order: 1,
            top_power: vec![0],
            theta: vec![vec![1]],
            generators: Vec::new(),
            relations: Vec::new(),
            delta_ab: None,
            u_plus: (1, 1),
            u_minus: (1, 1),
            q: 0,
            m0: 0,
        };
        g.generators.push(("g".into(), g.unit_vector(0)));
        g.relations.push(Relation {
            name: format!("g^{n} = 1"),
            lhs: vec![(0, n as i64)],
            rhs: vec![],
        });
        g
    }

    /// Gal(F/K) for F = K'_{m1}·K'_{π,n1} with K'/K unramified quadratic.
    /// A = ⟨δ⟩ × U_+ × U_− is inertia, t = σ of order 2·m1.
    pub fn sc_unramified(p: u64, m0: u32, m1: u32, n1: u32) -> Self {
        let q = p.pow(m0);
        let u_order = p.pow(n1 - 1);
        let mut orders = vec![q * q - 1];
        let u_rank = if u_order > 1 { m0 as usize } else { 0 };
        orders.extend(core::iter::repeat_n(u_order, 2 * u_rank));
        let n = orders.len();
        let mut theta = identity(n);
        theta[0][0] = q as i64;
        for i in 1 + u_rank..n {
            theta[i][i] = -1;
        }
        let mut g = GaloisData {
            shape: Shape::ScUnramified,
            orders,
            top_order: 2 * m1 as u64,
            top_power: vec![0; n],
            theta,
            generators: Vec::new(),
            relations: Vec::new(),
            delta_ab: Some(0),
            u_plus: (1, 1 + u_rank),
            u_minus: (1 + u_rank, 1 + 2 * u_rank),
            q,
            m0,
        };
        g.generators.push((
            "sigma".into(),
            GroupElem {
                top: 1 % g.top_order,
                ab: vec![0; n],
            },
        ));
        g.generators.push(("delta".into(), g.unit_vector(0)));
        for i in 0..u_rank {
            g.generators
                .push((format!("gamma1_{i}"), g.unit_vector(1 + i)));
        }
        for i in 0..u_rank {
            g.generators
                .push((format!("gamma2_{i}"), g.unit_vector(1 + u_rank + i)));
        }
        let (s, d) = (0usize, 1usize);
        g.relation(
            &format!("sigma^{} = 1", 2 * m1),
            vec![(s, 2 * m1 as i64)],
            vec![],
        );
        g.relation(
            &format!("delta^{} = 1", q * q - 1),
            vec![(d, (q * q - 1) as i64)],
            vec![],
        );
        g.relation(
            "sigma^-1 delta sigma = delta^q",
            vec![(s, -1), (d, 1), (s, 1)],
            vec![(d, q as i64)],
        );
        g.unipotent_relations(s, 2, u_rank, u_order, "sigma");
        g
    }

    /// Gal(F/K) for F = K'_{2m1}·K'_{π',2n1+1} with K'/K ramified quadratic.
    /// A = ⟨σ⟩ × ⟨δ⟩ × U_+ × U_− = Gal(F/K'), t = ι with ι² = δ_0 = δ.
    pub fn sc_ramified(p: u64, m0: u32, m1: u32, n1: u32) -> Self {
        let q = p.pow(m0);
        let u_order = p.pow(n1);
        let u_rank = m0 as usize;
        let mut orders = vec![2 * m1 as u64, q - 1];
        orders.extend(core::iter::repeat_n(u_order, 2 * u_rank));
        let n = orders.len();
        let mut theta = identity(n);
        theta[1][0] = ((q - 1) / 2) as i64;
        for i in 2 + u_rank..n {
            theta[i][i] = -1;
        }
        let mut top_power = vec![0; n];
        top_power[1] = 1 % (q - 1);
        let mut g = GaloisData {
            shape: Shape::ScRamified,
            orders,
            top_order: 2,
            top_power,
            theta,
            generators: Vec::new(),
            relations: Vec::new(),
            delta_ab: Some(1),
            u_plus: (2, 2 + u_rank),
            u_minus: (2 + u_rank, 2 + 2 * u_rank),
            q,
            m0,
        };
        g.generators.push((
            "iota".into(),
            GroupElem {
                top: 1,
                ab: vec![0; n],
            },
        ));
        g.generators.push(("sigma".into(), g.unit_vector(0)));
        g.generators.push(("delta".into(), g.unit_vector(1)));
        for i in 0..u_rank {
            g.generators
                .push((format!("gamma1_{i}"), g.unit_vector(2 + i)));
        }
        for i in 0..u_rank {
            g.generators
                .push((format!("gamma2_{i}"), g.unit_vector(2 + u_rank + i)));
        }
        let (io, s, d) = (0usize, 1usize, 2usize);
        g.relation(
            &format!("sigma^{} = 1", 2 * m1),
            vec![(s, 2 * m1 as i64)],
            vec![],
        );
        g.relation(
            &format!("delta^{} = 1", q - 1),
            vec![(d, (q - 1) as i64)],
            vec![],
        );
        g.relation("iota^2 = delta_0", vec![(io, 2)], vec![(d, 1)]);
        g.relation(
            "iota^-1 sigma iota = sigma delta_0^((q-1)/2)",
            vec![(io, -1), (s, 1), (io, 1)],
            vec![(s, 1), (d, ((q - 1) / 2) as i64)],
        );
        g.relation(
            "iota^-1 delta iota = delta",
            vec![(io, -1), (d, 1), (io, 1)],
            vec![(d, 1)],
        );
        g.relation(
            "sigma delta = delta sigma",
            vec![(s, 1), (d, 1)],
            vec![(d, 1), (s, 1)],
        );
        g.unipotent_relations(io, 3, u_rank, u_order, "iota");
        for k in 0..2 * u_rank {
            let gk = 3 + k;
            let name = g.generators[gk].0.clone();
            g.relation(
                &format!("sigma {name} = {name} sigma"),
                vec![(s, 1), (gk, 1)],
                vec![(gk, 1), (s, 1)],
            );
        }
        g
    }

    /// Defining relations as (name, lhs, rhs) words.
    pub fn relation_words(&self) -> Vec<(String, Word, Word)> {
        self.relations
            .iter()
            .map(|r| (r.name.clone(), r.lhs.clone(), r.rhs.clone()))
            .collect()
    }

    /// Normal-form word t^k·Π a_i^{e_i} for an element.
    pub fn word_of(&self, x: &GroupElem) -> Word {
        let mut w = Word::new();
        if x.top > 0 {
            let t = self
                .generators
                .iter()
                .position(|(_, g)| g.top == 1)
                .expect("top generator");
            w.push((t, x.top as i64));
        }
        for (i, &a) in x.ab.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let unit = self.unit_vector(i);
            let gi = self
                .generators
                .iter()
                .position(|(_, g)| *g == unit)
                .expect("abelian generator");
            w.push((gi, a as i64));
        }
        w
    }

    fn relation(&mut self, name: &str, lhs: Word, rhs: Word) {
        self.relations.push(Relation {
            name: name.into(),
            lhs,
            rhs,
        });
    }

    /// Orders of γ's, conjugation by `t_gen` fixing γ_1 and inverting γ_2, and
    /// commutation with δ and among the γ's.
    fn unipotent_relations(
        &mut self,
        t_gen: usize,
        first: usize,
        rank: usize,
        order: u64,
        t_name: &str,
    ) {
        let delta = self
            .generators
            .iter()
            .position(|(n, _)| n == "delta")
            .unwrap();
        for k in 0..2 * rank {
            let gk = first + k;
            let name = self.generators[gk].0.clone();
            self.relation(
                &format!("{name}^{order} = 1"),
                vec![(gk, order as i64)],
                vec![],
            );
            let rhs = if k < rank {
                vec![(gk, 1)]
            } else {
                vec![(gk, -1)]
            };
            let inv = if k < rank { "" } else { "^-1" };
            self.relation(
                &format!("{t_name}^-1 {name} {t_name} = {name}{inv}"),
                vec![(t_gen, -1), (gk, 1), (t_gen, 1)],
                rhs,
            );
            self.relation(
                &format!("delta {name} = {name} delta"),
                vec![(delta, 1), (gk, 1)],
                vec![(gk, 1), (delta, 1)],
            );
            for l in k + 1..2 * rank {
                let gl = first + l;
                let other = self.generators[gl].0.clone();
                self.relation(
                    &format!("{name} {other} = {other} {name}"),
                    vec![(gk, 1), (gl, 1)],
                    vec![(gl, 1), (gk, 1)],
                );
            }
        }
    }

    fn unit_vector(&self, i: usize) -> GroupElem {
        let mut ab = vec![0; self.orders.len()];
        ab[i] = 1 % self.orders[i];
        GroupElem { top: 0, ab }
    }

    pub fn order(&self) -> usize {
        (self.top_order * self.ab_order()) as usize
    }

    fn ab_order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem {
            top: 0,
            ab: vec![0; self.orders.len()],
        }
    }

    pub fn generators(&self) -> &[(String, GroupElem)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&GroupElem> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
    }

    pub fn residue_q(&self) -> u64 {
        self.q
    }

    /// Index of an element in `0..order()`, matching `element`.
    pub fn index_of(&self, g: &GroupElem) -> usize {
        let mut idx = g.top;
        for (a, n) in g.ab.iter().zip(&self.orders) {
            idx = idx * n + a;
        }
        idx as usize
    }

    pub fn element(&self, mut idx: usize) -> GroupElem {
        let mut ab = vec![0; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as usize;
            ab[i] = (idx % n) as u64;
            idx /= n;
        }
        GroupElem {
            top: idx as u64,
            ab,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    fn theta_apply(&self, a: &[u64]) -> Vec<u64> {
        let n = self.orders.len();
        (0..n)
            .map(|i| {
                let ni = self.orders[i] as i64;
                let s: i64 = (0..n)
                    .map(|j| (self.theta[i][j] % ni) * (a[j] as i64 % ni) % ni)
                    .sum();
                s.rem_euclid(ni) as u64
            })
            .collect()
    }

    fn ab_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }

    pub fn mul(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        let mut a = x.ab.clone();
        for _ in 0..y.top {
            a = self.theta_apply(&a);
        }
        let mut ab = self.ab_add(&a, &y.ab);
        let mut top = x.top + y.top;
        if top >= self.top_order {
            top -= self.top_order;
            ab = self.ab_add(&ab, &self.top_power);
        }
        GroupElem { top, ab }
    }

    pub fn inv(&self, x: &GroupElem) -> GroupElem {
        if x.top == 0 {
            let ab =
                x.ab.iter()
                    .zip(&self.orders)
                    .map(|(a, n)| (n - a) % n)
                    .collect();
            return GroupElem { top: 0, ab };
        }
        let l = self.top_order - x.top;
        let mut a = x.ab.clone();
        for _ in 0..l {
            a = self.theta_apply(&a);
        }
        let s = self.ab_add(&a, &self.top_power);
        let ab = s
            .iter()
            .zip(&self.orders)
            .map(|(a, n)| (n - a) % n)
            .collect();
        GroupElem { top: l, ab }
    }

    pub fn pow(&self, x: &GroupElem, k: i64) -> GroupElem {
        let base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    fn eval_word(&self, w: &Word) -> GroupElem {
        w.iter().fold(self.identity(), |acc, &(g, k)| {
            self.mul(&acc, &self.pow(&self.generators[g].1, k))
        })
    }

    pub fn is_identity(&self, x: &GroupElem) -> bool {
        x.top == 0 && x.ab.iter().all(|&a| a == 0)
    }

    /// Every defining relation, plus the non-split check in the ramified case.
    pub fn verify_relations(&self) -> RelationReport {
        let checks = self
            .relations
            .iter()
            .map(|r| RelationCheck {
                name: r.name.clone(),
                passed: self.eval_word(&r.lhs) == self.eval_word(&r.rhs),
            })
            .collect();
        let non_split = (self.shape == Shape::ScRamified).then(|| self.no_order_two_lift());
        RelationReport { checks, non_split }
    }

    fn no_order_two_lift(&self) -> bool {
        self.order_two_lift().is_none()
    }

    /// An element ι·a with a ∈ A squaring to the identity, if one exists.
    pub fn order_two_lift(&self) -> Option<GroupElem> {
        if self.top_order != 2 {
            return None;
        }
        let n_ab = self.ab_order() as usize;
        (0..n_ab)
            .map(|i| {
                let mut x = self.element(i);
                x.top = 1;
                x
            })
            .find(|x| self.is_identity(&self.mul(x, x)))
    }

    /// Replaces the image of the i-th abelian generator under conjugation by t.
    /// Only meaningful for constructing deliberately invalid data.
    pub fn with_conjugation_column(mut self, i: usize, column: Vec<i64>) -> Self {
        for (row, v) in self.theta.iter_mut().zip(column) {
            row[i] = v;
        }
        self
    }

    /// [F_0 : ℚ_p] given m0.
    pub fn n0(&self, m0: u32) -> u32 {
        match self.shape {
            Shape::Cyclic => m0,
            Shape::ScUnramified => m0 * self.top_order as u32,
            Shape::ScRamified => m0 * self.orders[0] as u32,
        }
    }

    /// Shift homomorphism Gal(F/K) → ℤ/n0: how far g moves the index i of D_i.
    pub fn shift(&self, g: &GroupElem) -> u32 {
        match self.shape {
            Shape::Cyclic => 0,
            Shape::ScUnramified => g.top as u32 * self.m0,
            Shape::ScRamified => g.ab[0] as u32 * self.m0,
        }
    }

    pub fn in_inertia(&self, g: &GroupElem) -> bool {
        match self.shape {
            Shape::Cyclic => true,
            Shape::ScUnramified => g.top == 0,
            Shape::ScRamified => g.ab[0] == 0,
        }
    }

    /// Membership in Gal(F/K'), the index-[K':K] subgroup used for induction.
    pub fn in_k_prime_subgroup(&self, g: &GroupElem) -> bool {
        match self.shape {
            Shape::Cyclic => true,
            Shape::ScUnramified => g.top.is_multiple_of(2),
            Shape::ScRamified => g.top == 0,
        }
    }

    /// Representatives of the cosets of Gal(F/K').
    pub fn k_prime_coset_reps(&self) -> Vec<GroupElem> {
        match self.shape {
            Shape::Cyclic => vec![self.identity()],
            Shape::ScUnramified => vec![self.identity(), self.generators[0].1.clone()],
            Shape::ScRamified => vec![self.identity(), self.generators[0].1.clone()],
        }
    }

    pub(crate) fn ab_orders(&self) -> &[u64] {
        &self.orders
    }

    pub(crate) fn delta_index(&self) -> Option<usize> {
        self.delta_ab
    }

    pub(crate) fn u_plus_range(&self) -> core::ops::Range<usize> {
        self.u_plus.0..self.u_plus.1
    }

    pub(crate) fn u_minus_range(&self) -> core::ops::Range<usize> {
        self.u_minus.0..self.u_minus.1
    }

    /// (|U_+|, |U_−|); (1, 1) for cyclic groups.
    pub fn unipotent_orders(&self) -> (u64, u64) {
        let prod = |r: core::ops::Range<usize>| self.orders[r].iter().product::<u64>();
        (prod(self.u_plus_range()), prod(self.u_minus_range()))
    }

    pub fn top_order(&self) -> u64 {
        self.top_order
    }

    pub fn is_ramified_sc(&self) -> bool {
        self.shape == Shape::ScRamified
    }

    pub fn is_unramified_sc(&self) -> bool {
        self.shape == Shape::ScUnramified
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unramified_q3_has_order_16() {
        let g = GaloisData::sc_unramified(3, 1, 1, 1);
        assert_eq!(g.order(), 16);
        assert!(g.verify_relations().all_passed());
    }

    #[test]
    fn ramified_q3_is_non_split() {
        let g = GaloisData::sc_ramified(3, 1, 2, 1);
        assert_eq!(g.order(), 2 * 4 * 2 * 3 * 3);
        let r = g.verify_relations();
        assert_eq!(r.non_split, Some(true));
        assert!(r.all_passed());
    }

    #[test]
    fn ramified_q3_m1_1_has_order_two_lift() {
        // (ι·σ)^2 = σ^2·δ_0^{(q+1)/2} = 1 when q = 3 and σ has order 2.
        let g = GaloisData::sc_ramified(3, 1, 1, 1);
        let r = g.verify_relations();
        assert!(r.relations_passed());
        assert_eq!(r.non_split, Some(false));
        let x = g.order_two_lift().unwrap();
        assert_eq!(x.top, 1);
        assert_eq!(x.ab[0], 1);
    }

    #[test]
    fn index_round_trip_and_inverse() {
        let g = GaloisData::sc_ramified(3, 1, 2, 1);
        for i in 0..g.order() {
            let x = g.element(i);
            assert_eq!(g.index_of(&x), i);
            assert!(g.is_identity(&g.mul(&x, &g.inv(&x))));
            assert!(g.is_identity(&g.mul(&g.inv(&x), &x)));
        }
    }

    #[test]
    fn tampering_breaks_conjugation_relation() {
        let g = GaloisData::sc_unramified(3, 1, 1, 1).with_conjugation_column(0, vec![1]);
        let r = g.verify_relations();
        let failing: Vec<_> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failing, ["sigma^-1 delta sigma = delta^q"]);
    }
}
