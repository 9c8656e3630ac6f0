//! Dense univariate polynomials with integer coefficients, low degree first,
//! plus the handful of modular operations the p-adic machinery needs.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Poly = Vec<BigInt>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Multiplicative order of `a` modulo `n` (`n ≥ 1`, `gcd(a, n) = 1`).
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    k
}

/// The m-th cyclotomic polynomial, monic, integer coefficients.
pub fn cyclotomic(m: u64) -> Poly {
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num: Poly = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic(d);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    num
}

/// Quotient of `a` by monic `b`, assuming exact divisibility over ℤ.
fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Poly {
    let (q, _) = divrem_monic(a, b, None);
    q
}

/// Division with remainder by a monic polynomial, optionally reducing modulo `modulus`.
pub(crate) fn divrem_monic(a: &[BigInt], b: &[BigInt], modulus: Option<&BigInt>) -> (Poly, Poly) {
    let db = degree(b).expect("divisor is nonzero");
    debug_assert!(b[db].is_one());
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        let shift = k - db;
        q[shift] = c.clone();
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            r[shift + i] -= &c * bi;
        }
        if let Some(m) = modulus {
            for i in shift..=k {
                r[i] = r[i].mod_floor(m);
            }
        }
    }
    if let Some(m) = modulus {
        for c in q.iter_mut() {
            *c = c.mod_floor(m);
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Poly {
    let mut out = mul(a, b);
    reduce_coeffs(&mut out, m);
    out
}

pub(crate) fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    reduce_coeffs(&mut out, m);
    out
}

pub(crate) fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    reduce_coeffs(&mut out, m);
    out
}

pub(crate) fn reduce_coeffs(p: &mut Poly, m: &BigInt) {
    for c in p.iter_mut() {
        *c = c.mod_floor(m);
    }
    trim(p);
}

pub(crate) fn scale_mod(a: &[BigInt], s: &BigInt, m: &BigInt) -> Poly {
    let mut out: Poly = a.iter().map(|c| c * s).collect();
    reduce_coeffs(&mut out, m);
    out
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub(crate) fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if g.gcd.abs().is_one() {
        Some((g.x * g.gcd.signum()).mod_floor(m))
    } else {
        None
    }
}

/// Extended gcd over F_p: returns (g, s, t) with s·a + t·b = g, g monic.
pub(crate) fn xgcd_fp(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (Poly, Poly, Poly) {
    let mut r0: Poly = a.to_vec();
    let mut r1: Poly = b.to_vec();
    reduce_coeffs(&mut r0, p);
    reduce_coeffs(&mut r1, p);
    let mut s0: Poly = vec![BigInt::one()];
    let mut s1: Poly = Vec::new();
    let mut t0: Poly = Vec::new();
    let mut t1: Poly = vec![BigInt::one()];
    while !r1.is_empty() {
        let lead = r1.last().unwrap().clone();
        let lead_inv = inv_mod(&lead, p).expect("p prime");
        let r1_monic = scale_mod(&r1, &lead_inv, p);
        let (q, r) = divrem_monic(&r0, &r1_monic, Some(p));
        let q = scale_mod(&q, &lead_inv, p);
        let s2 = sub_mod(&s0, &mul_mod(&q, &s1, p), p);
        let t2 = sub_mod(&t0, &mul_mod(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let lead = r0.last().cloned().unwrap_or_else(BigInt::one);
    let li = inv_mod(&lead, p).expect("p prime");
    (
        scale_mod(&r0, &li, p),
        scale_mod(&s0, &li, p),
        scale_mod(&t0, &li, p),
    )
}

/// p-adic valuation of an integer, capped at `cap` (returned for zero).
pub(crate) fn vp_int(x: &BigInt, p: &BigInt, cap: u32) -> u32 {
    if x.is_zero() {
        return cap;
    }
    let mut v = 0;
    let mut y = x.clone();
    while v < cap {
        let (q, r) = y.div_rem(p);
        if !r.is_zero() {
            break;
        }
        y = q;
        v += 1;
    }
    v
}

/// Uncapped p-adic valuation of a nonzero integer.
pub(crate) fn vp_exact(x: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!x.is_zero());
    vp_int(x, p, u32::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Poly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(9).len() as u64, euler_phi(9) + 1);
    }

    #[test]
    fn orders_and_phi() {
        assert_eq!(euler_phi(24), 8);
        assert_eq!(mult_order(5, 24), 2);
        assert_eq!(mult_order(3, 8), 2);
        assert!(is_prime(601));
    }

    #[test]
    fn xgcd_over_fp() {
        let p = BigInt::from(5);
        // x^2 + 1 = (x - 2)(x - 3) over F_5
        let a = ints(&[-2, 1]);
        let b = ints(&[-3, 1]);
        let (g, s, t) = xgcd_fp(&a, &b, &p);
        assert_eq!(g, ints(&[1]));
        let lhs = add_mod(&mul_mod(&s, &a, &p), &mul_mod(&t, &b, &p), &p);
        assert_eq!(lhs, ints(&[1]));
    }
}
