//! A fixed prime of ℚ(ζ_m) above p, realized through a Hensel-lifted factor
//! of the prime-to-p cyclotomic polynomial, and the valuation it induces.
//!
//! Write m = m'·p^a with p ∤ m'. The completion is W[λ] where W = ℤ_p[Y]/(g)
//! is unramified of degree f = ord_{m'}(p) and λ = 1 − ζ_{p^a} is a
//! uniformizer of valuation 1/φ(p^a). An element written in the basis
//! Y^i λ^k has valuation min_k (v(c_k) + k/φ(p^a)); the residues k/φ(p^a)
//! are distinct, so the minimum is attained once.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::cyclo::{CycloCtx, CycloRational};
use super::poly::{self, Poly};
use crate::{Error, Result, Q64};

const FACTOR_SEARCH_LIMIT: u64 = 4_000_000;
const START_PRECISION: u32 = 12;

#[derive(Clone, Debug)]
pub struct PAdicEmbedding {
    p: u64,
    m: u64,
    m_prime: u64,
    p_exp: u32,
    f: usize,
    /// Monic irreducible factor of Φ_{m'} modulo p.
    g_mod_p: Poly,
    /// Bezout data for the lift: s·g + t·h ≡ 1 (mod p), with h = Φ_{m'}/g.
    h_mod_p: Poly,
    s_mod_p: Poly,
    t_mod_p: Poly,
}

impl PAdicEmbedding {
    pub fn new(p: u64, m: u64) -> Result<Self> {
        let mut m_prime = m;
        let mut p_exp = 0;
        while m_prime.is_multiple_of(p) {
            m_prime /= p;
            p_exp += 1;
        }
        let f = poly::mult_order(p % m_prime.max(1), m_prime) as usize;
        let pb = BigInt::from(p);
        let phi_mp = poly::cyclotomic(m_prime);
        let g_mod_p = find_factor(&phi_mp, f, p)?;
        let (h_mod_p, rem) = poly::divrem_monic(&phi_mp, &g_mod_p, Some(&pb));
        if !rem.is_empty() {
            return Err(Error::Internal(
                "factor search returned a non-divisor".into(),
            ));
        }
        let (gcd, s, t) = poly::xgcd_fp(&g_mod_p, &h_mod_p, &pb);
        if gcd != vec![BigInt::one()] {
            return Err(Error::Internal(
                "cyclotomic polynomial not separable mod p".into(),
            ));
        }
        Ok(PAdicEmbedding {
            p,
            m,
            m_prime,
            p_exp,
            f,
            g_mod_p,
            h_mod_p,
            s_mod_p: s,
            t_mod_p: t,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// m' with m = m'·p^a and p ∤ m'.
    pub fn prime_to_p_part(&self) -> u64 {
        self.m_prime
    }

    /// Residue degree f of the chosen prime.
    pub fn residue_degree(&self) -> usize {
        self.f
    }

    /// Ramification index φ(p^a) of the chosen prime in ℚ(ζ_m).
    pub fn ramification(&self) -> u64 {
        if self.p_exp == 0 {
            1
        } else {
            (self.p - 1) * self.p.pow(self.p_exp - 1)
        }
    }

    /// Coefficients of the factor g mod p, constant term first. Fixes the prime above p.
    pub fn factor_mod_p(&self) -> Vec<u64> {
        self.g_mod_p
            .iter()
            .map(|c| c.to_u64().unwrap_or(0))
            .collect()
    }

    /// The factor g lifted so that g | Φ_{m'} modulo p^n.
    pub fn lifted_factor(&self, n: u32) -> Poly {
        let pb = BigInt::from(self.p);
        let phi = poly::cyclotomic(self.m_prime);
        let mut g = self.g_mod_p.clone();
        let mut h = self.h_mod_p.clone();
        let mut pk = pb.clone();
        for _ in 1..n {
            let pk1 = &pk * &pb;
            let gh = poly::mul(&g, &h);
            let mut err = poly::sub_mod(&phi, &gh, &pk1);
            for c in err.iter_mut() {
                *c = &*c / &pk;
            }
            poly::reduce_coeffs(&mut err, &pb);
            if !err.is_empty() {
                let te = poly::mul_mod(&self.t_mod_p, &err, &pb);
                let (quo, dg) = poly::divrem_monic(&te, &g_mod_p_view(&g, &pb), Some(&pb));
                let se = poly::mul_mod(&self.s_mod_p, &err, &pb);
                let dh = poly::add_mod(&se, &poly::mul_mod(&quo, &h, &pb), &pb);
                g = poly::add_mod(&g, &poly::scale_mod(&dg, &pk, &pk1), &pk1);
                h = poly::add_mod(&h, &poly::scale_mod(&dh, &pk, &pk1), &pk1);
            }
            pk = pk1;
        }
        g
    }

    /// Valuation of a nonzero element of ℚ(ζ_m), normalized by v(p) = 1.
    /// Returns `None` for zero.
    pub fn valuation(&self, ctx: &CycloCtx, x: &CycloRational) -> Option<Q64> {
        if x.is_zero() {
            return None;
        }
        let pb = BigInt::from(self.p);
        let den_v = poly::vp_exact(x.denominator(), &pb) as i64;
        let mut n = START_PRECISION;
        let mut hard_cap: Option<u32> = None;
        loop {
            if let Some(v) = self.integral_valuation_at(x.numerators(), n) {
                return Some(v - Q64::from_integer(den_v));
            }
            n *= 2;
            if hard_cap.is_none() && n > 64 {
                // v_P(x) ≤ v_p(N(x)) for integral x, so precision past that always succeeds.
                let integral = ctx.from_coeffs(
                    &x.numerators()
                        .iter()
                        .map(|c| num_rational::BigRational::from_integer(c.clone()))
                        .collect::<Vec<_>>(),
                );
                let norm = ctx.norm(&integral);
                hard_cap = Some(poly::vp_exact(norm.numer(), &pb) + 2);
            }
            if let Some(cap) = hard_cap {
                if n > cap.max(64) * 2 {
                    // Unreachable for a nonzero element; kept as a loud failure.
                    panic!("valuation precision exceeded the norm bound");
                }
            }
        }
    }

    /// Valuation of an integral numerator vector at precision p^n, if determined.
    fn integral_valuation_at(&self, num: &[BigInt], n: u32) -> Option<Q64> {
        let pb = BigInt::from(self.p);
        let modulus = pb.pow(n);
        let g = self.lifted_factor(n);
        let pa = self.p.pow(self.p_exp) as usize;
        let phi_a = self.ramification() as usize;
        let mp = self.m_prime as usize;

        // Split ζ_m = Y·Z with Y = ζ_{m'}, Z = ζ_{p^a}.
        let mut by_z: Vec<Poly> = vec![vec![BigInt::zero(); mp]; pa];
        for (k, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            by_z[k % pa][k % mp] += c;
        }
        let mut w: Vec<Poly> = by_z
            .into_iter()
            .map(|yp| {
                let (_, r) = poly::divrem_monic(&yp, &g, Some(&modulus));
                r
            })
            .collect();

        // Reduce the Z-degree below φ(p^a) using Φ_{p^a}(Z) = Σ_{t<p} Z^{t·p^{a-1}}.
        if self.p_exp > 0 {
            let step = pa / self.p as usize;
            for z in (phi_a..pa).rev() {
                let c = core::mem::take(&mut w[z]);
                if c.is_empty() {
                    continue;
                }
                let base = z - phi_a;
                for t in 0..self.p as usize - 1 {
                    let idx = base + t * step;
                    w[idx] = poly::sub_mod(&w[idx], &c, &modulus);
                }
            }
            w.truncate(phi_a);
        }

        // Substitute Z = 1 − λ.
        let mut lam: Vec<Poly> = vec![Vec::new(); phi_a];
        for (z, c) in w.iter().enumerate() {
            if c.is_empty() {
                continue;
            }
            let mut binom = BigInt::one();
            for k in 0..=z {
                let coef = if k % 2 == 0 {
                    binom.clone()
                } else {
                    -binom.clone()
                };
                lam[k] = poly::add_mod(&lam[k], &poly::scale_mod(c, &coef, &modulus), &modulus);
                binom = binom * BigInt::from(z - k) / BigInt::from(k + 1);
            }
        }

        let mut best: Option<Q64> = None;
        for (k, c) in lam.iter().enumerate() {
            let vk = c.iter().map(|x| poly::vp_int(x, &pb, n)).min().unwrap_or(n);
            if vk >= n {
                continue;
            }
            let cand = Q64::new(vk as i64 * phi_a as i64 + k as i64, phi_a as i64);
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
        best
    }
}

fn g_mod_p_view(g: &[BigInt], p: &BigInt) -> Poly {
    let mut out = g.to_vec();
    poly::reduce_coeffs(&mut out, p);
    out
}

/// First monic degree-f divisor of `phi` over F_p in lexicographic order.
/// Every irreducible factor of a cyclotomic polynomial mod p has degree f,
/// so any monic degree-f divisor is irreducible.
fn find_factor(phi: &[BigInt], f: usize, p: u64) -> Result<Poly> {
    let pb = BigInt::from(p);
    let mut reduced = phi.to_vec();
    poly::reduce_coeffs(&mut reduced, &pb);
    if poly::degree(&reduced) == Some(f) {
        return Ok(reduced);
    }
    let total = (p as u128).checked_pow(f as u32).unwrap_or(u128::MAX);
    if total > FACTOR_SEARCH_LIMIT as u128 {
        return Err(Error::BoundExhausted(
            "residue field too large for factor search".into(),
        ));
    }
    let mut digits = vec![0u64; f];
    for _ in 0..total as u64 {
        let mut cand: Poly = digits.iter().map(|&d| BigInt::from(d)).collect();
        cand.push(BigInt::one());
        let (_, r) = poly::divrem_monic(&reduced, &cand, Some(&pb));
        if r.is_empty() {
            return Ok(cand);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Err(Error::Internal(
        "no factor of the cyclotomic polynomial found".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> Q64 {
        Q64::new(n, d)
    }

    #[test]
    fn lifted_factor_divides_mod_pn() {
        let emb = PAdicEmbedding::new(5, 24).unwrap();
        assert_eq!(emb.residue_degree(), 2);
        let g = emb.lifted_factor(6);
        let modulus = BigInt::from(5).pow(6);
        let (_, r) = poly::divrem_monic(&poly::cyclotomic(24), &g, Some(&modulus));
        assert!(r.is_empty());
        // Compatible with the lower precision lift.
        let g3 = emb.lifted_factor(3);
        let m3 = BigInt::from(125);
        let mut g_red = g.clone();
        poly::reduce_coeffs(&mut g_red, &m3);
        assert_eq!(g_red, g3);
    }

    #[test]
    fn unit_and_prime_valuations() {
        let ctx = CycloCtx::new(3).unwrap();
        let emb = PAdicEmbedding::new(5, 3).unwrap();
        let x = ctx.sub(&ctx.one(), &ctx.zeta_pow(1));
        assert_eq!(emb.valuation(&ctx, &x), Some(q(0, 1)));
        assert_eq!(emb.valuation(&ctx, &ctx.from_int(25)), Some(q(2, 1)));
        let fifth = ctx.from_rational(&BigRational::new(3.into(), 5.into()));
        assert_eq!(emb.valuation(&ctx, &fifth), Some(q(-1, 1)));
        assert_eq!(emb.valuation(&ctx, &ctx.zero()), None);
    }

    #[test]
    fn ramified_cyclotomic_uniformizer() {
        // m = 3 with p = 3: 1 − ζ_3 has valuation 1/2.
        let ctx = CycloCtx::new(3).unwrap();
        let emb = PAdicEmbedding::new(3, 3).unwrap();
        let x = ctx.sub(&ctx.one(), &ctx.zeta_pow(1));
        assert_eq!(emb.valuation(&ctx, &x), Some(q(1, 2)));
        // 3 = -ζ_3^2 (1 − ζ_3)^2
        assert_eq!(emb.valuation(&ctx, &ctx.from_int(3)), Some(q(1, 1)));
        // m = 12, p = 3: λ = 1 − ζ_12^4 is a uniformizer.
        let ctx12 = CycloCtx::new(12).unwrap();
        let emb12 = PAdicEmbedding::new(3, 12).unwrap();
        let lam = ctx12.sub(&ctx12.one(), &ctx12.zeta_pow(4));
        assert_eq!(emb12.valuation(&ctx12, &lam), Some(q(1, 2)));
        let unit = ctx12.sub(&ctx12.one(), &ctx12.zeta_pow(3));
        assert_eq!(emb12.valuation(&ctx12, &unit), Some(q(0, 1)));
    }
}
