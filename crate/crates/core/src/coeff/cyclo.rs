//! Exact arithmetic in ℚ(ζ_m) = ℚ[x]/(Φ_m).
//!
//! An element is stored as an integer coefficient vector of length φ(m)
//! together with one positive common denominator, reduced so that the
//! gcd of all numerators and the denominator is 1. This makes the
//! representation unique, so structural equality is field equality.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, Poly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloRational {
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialOrd for CycloRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycloRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.den
            .cmp(&other.den)
            .then_with(|| self.num.cmp(&other.num))
    }
}

impl CycloRational {
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Coefficients as exact rationals, ζ_m^0 first.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// The rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(|c| c.is_zero()) {
            return CycloRational {
                num,
                den: BigInt::one(),
            };
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= g;
        }
        CycloRational { num, den }
    }
}

/// Shared data for ℚ(ζ_m): the cyclotomic modulus and its degree.
#[derive(Clone, Debug)]
pub struct CycloCtx {
    m: u64,
    phi: usize,
    modulus: Poly,
}

impl CycloCtx {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        let modulus = poly::cyclotomic(m);
        let phi = modulus.len() - 1;
        Ok(CycloCtx { m, phi, modulus })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Degree φ(m) of ℚ(ζ_m) over ℚ.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> CycloRational {
        CycloRational {
            num: vec![BigInt::zero(); self.phi],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> CycloRational {
        self.from_rational(&BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> CycloRational {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: &BigRational) -> CycloRational {
        let mut num = vec![BigInt::zero(); self.phi];
        num[0] = q.numer().clone();
        CycloRational::normalize(num, q.denom().clone())
    }

    /// Element from rational coefficients of ζ^0, ζ^1, … (any length; reduced mod Φ_m).
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> CycloRational {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Poly = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        self.reduce(num, den)
    }

    /// ζ_m^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CycloRational {
        let k = k.rem_euclid(self.m as i64) as usize;
        let mut num = vec![BigInt::zero(); k + 1];
        num[k] = BigInt::one();
        self.reduce(num, BigInt::one())
    }

    fn reduce(&self, num: Poly, den: BigInt) -> CycloRational {
        let (_, mut r) = poly::divrem_monic(&num, &self.modulus, None);
        r.resize(self.phi, BigInt::zero());
        CycloRational::normalize(r, den)
    }

    pub fn add(&self, a: &CycloRational, b: &CycloRational) -> CycloRational {
        let den = &a.den * &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        CycloRational::normalize(num, den)
    }

    pub fn neg(&self, a: &CycloRational) -> CycloRational {
        CycloRational {
            num: a.num.iter().map(|c| -c).collect(),
            den: a.den.clone(),
        }
    }

    pub fn sub(&self, a: &CycloRational, b: &CycloRational) -> CycloRational {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &CycloRational, b: &CycloRational) -> CycloRational {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let prod = poly::mul(&a.num, &b.num);
        self.reduce(prod, &a.den * &b.den)
    }

    pub fn scale(&self, a: &CycloRational, q: &BigRational) -> CycloRational {
        let num = a.num.iter().map(|c| c * q.numer()).collect();
        CycloRational::normalize(num, &a.den * q.denom())
    }

    /// Inverse through the extended Euclidean algorithm in ℚ[x] against Φ_m.
    pub fn inv(&self, a: &CycloRational) -> Result<CycloRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let to_q = |p: &[BigInt]| -> Vec<BigRational> {
            p.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        };
        let mut r0 = to_q(&self.modulus);
        let mut r1 = to_q(&a.num);
        qtrim(&mut r1);
        let mut t0: Vec<BigRational> = Vec::new();
        let mut t1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = qdivrem(&r0, &r1);
            let t2 = qsub(&t0, &qmul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        // r1 is a nonzero constant because Φ_m is irreducible.
        let c = r1
            .first()
            .cloned()
            .ok_or_else(|| Error::Internal("cyclotomic inverse hit zero remainder".into()))?;
        let coeffs: Vec<BigRational> = t1.iter().map(|t| t / &c).collect();
        // t1 carries the original denominator of `a` inverted.
        let inv_num = self.from_coeffs(&coeffs);
        Ok(self.scale(&inv_num, &BigRational::from_integer(a.den.clone())))
    }

    /// Exact norm N_{ℚ(ζ_m)/ℚ}, as the determinant of multiplication.
    pub fn norm(&self, a: &CycloRational) -> BigRational {
        let n = self.phi;
        let mut mat: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut basis_img = a.clone();
        let zeta = self.zeta_pow(1);
        for _ in 0..n {
            mat.push(basis_img.coeffs());
            basis_img = self.mul(&basis_img, &zeta);
        }
        det(mat)
    }
}

fn qtrim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(&mut out);
    out
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    qtrim(&mut out);
    out
}

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r = a.to_vec();
    qtrim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        let c = &r[k] / &lead;
        if c.is_zero() {
            continue;
        }
        let shift = k - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
    }
    r.truncate(db);
    qtrim(&mut r);
    qtrim(&mut q);
    (q, r)
}

/// Determinant over ℚ by fraction-free elimination on the rational matrix.
pub(crate) fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut result = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            result = -result;
        }
        let pv = a[col][col].clone();
        result *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_has_order_m() {
        let ctx = CycloCtx::new(3).unwrap();
        let z = ctx.zeta_pow(1);
        let z2 = ctx.zeta_pow(2);
        assert!(ctx.mul(&z, &z2).is_one());
        assert_eq!(ctx.zeta_pow(3), ctx.one());
        assert_eq!(ctx.zeta_pow(-1), z2);
    }

    #[test]
    fn inverse_of_one_plus_zeta3() {
        let ctx = CycloCtx::new(3).unwrap();
        let x = ctx.add(&ctx.one(), &ctx.zeta_pow(1));
        let y = ctx.inv(&x).unwrap();
        assert!(ctx.mul(&x, &y).is_one());
        // 1 + ζ_3 = -ζ_3^2, so its inverse is -ζ_3.
        assert_eq!(y, ctx.neg(&ctx.zeta_pow(1)));
    }

    #[test]
    fn inverse_with_denominators() {
        let ctx = CycloCtx::new(8).unwrap();
        let x = ctx.from_coeffs(&[
            BigRational::new(1.into(), 2.into()),
            BigRational::new(3.into(), 5.into()),
            BigRational::zero(),
            BigRational::new((-7).into(), 3.into()),
        ]);
        let y = ctx.inv(&x).unwrap();
        assert!(ctx.mul(&x, &y).is_one());
    }

    #[test]
    fn norm_of_one_minus_zeta3_is_three() {
        let ctx = CycloCtx::new(3).unwrap();
        let x = ctx.sub(&ctx.one(), &ctx.zeta_pow(1));
        assert_eq!(ctx.norm(&x), BigRational::from_integer(3.into()));
    }

    #[test]
    fn zero_has_no_inverse() {
        let ctx = CycloCtx::new(5).unwrap();
        assert_eq!(ctx.inv(&ctx.zero()), Err(Error::DivisionByZero));
    }
}
