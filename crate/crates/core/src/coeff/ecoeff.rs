//! Elements of E = ℚ(ζ_m)[ϖ]/(ϖ^e − p).
//!
//! When p | m the polynomial ϖ^e − p stays irreducible as long as
//! gcd(e, φ(p^a)) = 1, which `ECtx::new` enforces.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclo::{CycloCtx, CycloRational};
use super::padic::PAdicEmbedding;
use super::poly;
use crate::{Error, Result, Q64};

#[derive(Debug)]
struct Inner {
    p: u64,
    m: u64,
    e: usize,
    cyclo: CycloCtx,
    padic: PAdicEmbedding,
}

/// Shared, immutable context for one coefficient field.
#[derive(Clone, Debug)]
pub struct ECtx(Arc<Inner>);

impl PartialEq for ECtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.e == other.0.e)
    }
}

impl Eq for ECtx {}

impl ECtx {
    pub fn new(p: u64, m: u64, e: usize) -> Result<Self> {
        if !poly::is_prime(p) {
            return Err(Error::InvalidParameter(alloc::format!(
                "p = {p} is not prime"
            )));
        }
        if m == 0 || e == 0 {
            return Err(Error::InvalidParameter("m and e must be positive".into()));
        }
        let mut pa = 1u64;
        let mut mm = m;
        while mm.is_multiple_of(p) {
            mm /= p;
            pa *= p;
        }
        let phi_a = poly::euler_phi(pa);
        if pa > 1 && poly::gcd_u64(e as u64, phi_a) != 1 {
            return Err(Error::InvalidParameter(alloc::format!(
                "gcd(e, φ({pa})) must be 1 when p divides m (e = {e})"
            )));
        }
        let cyclo = CycloCtx::new(m)?;
        let padic = PAdicEmbedding::new(p, m)?;
        Ok(ECtx(Arc::new(Inner {
            p,
            m,
            e,
            cyclo,
            padic,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m(&self) -> u64 {
        self.0.m
    }

    pub fn e(&self) -> usize {
        self.0.e
    }

    pub fn cyclo(&self) -> &CycloCtx {
        &self.0.cyclo
    }

    pub fn padic(&self) -> &PAdicEmbedding {
        &self.0.padic
    }

    /// [E:ℚ] = φ(m)·e.
    pub fn degree(&self) -> usize {
        self.0.cyclo.degree() * self.0.e
    }

    /// Denominator of the value group: v(E^×) = (1/d)ℤ.
    pub fn value_group_denominator(&self) -> i64 {
        (self.0.e as u64 * self.0.padic.ramification()) as i64
    }

    pub fn zero(&self) -> ECoeff {
        ECoeff {
            ctx: self.clone(),
            parts: vec![self.0.cyclo.zero(); self.0.e],
        }
    }

    pub fn one(&self) -> ECoeff {
        self.from_cyclo(self.0.cyclo.one())
    }

    pub fn from_int(&self, n: i64) -> ECoeff {
        self.from_cyclo(self.0.cyclo.from_int(n))
    }

    pub fn from_rational(&self, q: &BigRational) -> ECoeff {
        self.from_cyclo(self.0.cyclo.from_rational(q))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<ECoeff> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.from_rational(&BigRational::new(num.into(), den.into())))
    }

    pub fn from_cyclo(&self, c: CycloRational) -> ECoeff {
        let mut parts = vec![self.0.cyclo.zero(); self.0.e];
        parts[0] = c;
        ECoeff {
            ctx: self.clone(),
            parts,
        }
    }

    /// Element Σ parts[i]·ϖ^i; `parts` is padded or folded (ϖ^e = p) to length e.
    pub fn from_parts(&self, parts: Vec<CycloRational>) -> ECoeff {
        let mut out = self.zero();
        for (i, c) in parts.into_iter().enumerate() {
            let (wraps, slot) = (i / self.0.e, i % self.0.e);
            let scale = BigRational::from_integer(BigInt::from(self.0.p).pow(wraps as u32));
            let term = self.0.cyclo.scale(&c, &scale);
            out.parts[slot] = self.0.cyclo.add(&out.parts[slot], &term);
        }
        out
    }

    /// ζ_m^k.
    pub fn zeta(&self, k: i64) -> ECoeff {
        self.from_cyclo(self.0.cyclo.zeta_pow(k))
    }

    /// ϖ^k for any integer k (ϖ^{-1} = ϖ^{e−1}/p).
    pub fn pi_pow(&self, k: i64) -> ECoeff {
        let e = self.0.e as i64;
        let (q, r) = k.div_mod_floor(&e);
        let mut parts = vec![self.0.cyclo.zero(); self.0.e];
        let pb = BigInt::from(self.0.p);
        let scale = if q >= 0 {
            BigRational::from_integer(pb.pow(q as u32))
        } else {
            BigRational::new(BigInt::one(), pb.pow((-q) as u32))
        };
        parts[r as usize] = self.0.cyclo.from_rational(&scale);
        ECoeff {
            ctx: self.clone(),
            parts,
        }
    }

    /// An element of valuation exactly r, of the form p^k·ϖ^i·(1 − ζ_{p^a})^l.
    pub fn element_of_valuation(&self, r: Q64) -> Result<ECoeff> {
        let d = self.value_group_denominator();
        let scaled = r * Q64::from_integer(d);
        if !scaled.is_integer() {
            return Err(Error::InvalidParameter(alloc::format!(
                "valuation {r} is not in (1/{d})Z"
            )));
        }
        let big_r = scaled.to_integer();
        let e = self.0.e as i64;
        let a = self.0.padic.ramification() as i64;
        let i = if e == 1 {
            0
        } else {
            (big_r * mod_inverse(a, e)).rem_euclid(e)
        };
        let l = if a == 1 {
            0
        } else {
            (big_r * mod_inverse(e, a)).rem_euclid(a)
        };
        let k = (big_r - i * a - l * e) / (e * a);
        let mut x = self.pi_pow(k * e + i);
        if l > 0 {
            let lam = self.one() - self.zeta(self.0.padic.prime_to_p_part() as i64);
            for _ in 0..l {
                x = &x * &lam;
            }
        }
        Ok(x)
    }
}

fn mod_inverse(a: i64, n: i64) -> i64 {
    let g = a.extended_gcd(&n);
    debug_assert_eq!(g.gcd.abs(), 1);
    (g.x * g.gcd).rem_euclid(n)
}

/// An exact element of E. Binary operators panic on mixed contexts; the
/// `checked_*` methods report `Error::ContextMismatch` instead.
#[derive(Clone, Debug)]
pub struct ECoeff {
    ctx: ECtx,
    parts: Vec<CycloRational>,
}

impl ECoeff {
    pub fn ctx(&self) -> &ECtx {
        &self.ctx
    }

    /// Coefficients of ϖ^0, …, ϖ^{e−1}.
    pub fn parts(&self) -> &[CycloRational] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.parts[0].is_one() && self.parts[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, if it lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.parts[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        self.parts[0].as_rational()
    }

    fn same_ctx(&self, other: &ECoeff) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &ECoeff) -> Result<ECoeff> {
        self.same_ctx(other)?;
        let c = self.ctx.cyclo();
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| c.add(a, b))
            .collect();
        Ok(ECoeff {
            ctx: self.ctx.clone(),
            parts,
        })
    }

    pub fn checked_sub(&self, other: &ECoeff) -> Result<ECoeff> {
        self.same_ctx(other)?;
        let c = self.ctx.cyclo();
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| c.sub(a, b))
            .collect();
        Ok(ECoeff {
            ctx: self.ctx.clone(),
            parts,
        })
    }

    pub fn checked_mul(&self, other: &ECoeff) -> Result<ECoeff> {
        self.same_ctx(other)?;
        let c = self.ctx.cyclo();
        let e = self.ctx.e();
        let mut acc = vec![c.zero(); 2 * e - 1];
        for (i, a) in self.parts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.parts.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] = c.add(&acc[i + j], &c.mul(a, b));
            }
        }
        let p = BigRational::from_integer(BigInt::from(self.ctx.p()));
        for k in (e..2 * e - 1).rev() {
            let hi = core::mem::replace(&mut acc[k], c.zero());
            acc[k - e] = c.add(&acc[k - e], &c.scale(&hi, &p));
        }
        acc.truncate(e);
        Ok(ECoeff {
            ctx: self.ctx.clone(),
            parts: acc,
        })
    }

    pub fn checked_div(&self, other: &ECoeff) -> Result<ECoeff> {
        self.same_ctx(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Matrix of multiplication by `self` on the basis ϖ^0..ϖ^{e−1} over ℚ(ζ_m);
    /// column c holds the parts of self·ϖ^c.
    fn mult_matrix(&self) -> Vec<Vec<CycloRational>> {
        let e = self.ctx.e();
        let mut rows = vec![vec![self.ctx.cyclo().zero(); e]; e];
        for col in 0..e {
            let img = self * &self.ctx.pi_pow(col as i64);
            for (row, part) in img.parts.into_iter().enumerate() {
                rows[row][col] = part;
            }
        }
        rows
    }

    pub fn inv(&self) -> Result<ECoeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.ctx.cyclo();
        let e = self.ctx.e();
        if e == 1 {
            return Ok(self.ctx.from_cyclo(c.inv(&self.parts[0])?));
        }
        let mut a = self.mult_matrix();
        let mut rhs = vec![c.zero(); e];
        rhs[0] = c.one();
        for col in 0..e {
            let piv = (col..e)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::Internal("singular multiplication matrix".into()))?;
            a.swap(col, piv);
            rhs.swap(col, piv);
            let inv = c.inv(&a[col][col])?;
            for k in col..e {
                a[col][k] = c.mul(&a[col][k], &inv);
            }
            rhs[col] = c.mul(&rhs[col], &inv);
            for r in 0..e {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for k in col..e {
                    let t = c.mul(&f, &a[col][k]);
                    a[r][k] = c.sub(&a[r][k], &t);
                }
                let t = c.mul(&f, &rhs[col]);
                rhs[r] = c.sub(&rhs[r], &t);
            }
        }
        Ok(ECoeff {
            ctx: self.ctx.clone(),
            parts: rhs,
        })
    }

    /// self^k for any integer k; negative powers need a nonzero base.
    pub fn pow(&self, k: i64) -> Result<ECoeff> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = self.ctx.one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Valuation normalized by v(p) = 1; `None` stands for +∞.
    pub fn valuation(&self) -> Option<Q64> {
        let e = self.ctx.e() as i64;
        let cyclo = self.ctx.cyclo();
        let padic = self.ctx.padic();
        self.parts
            .iter()
            .enumerate()
            .filter_map(|(i, part)| {
                padic
                    .valuation(cyclo, part)
                    .map(|v| v + Q64::new(i as i64, e))
            })
            .min()
    }

    /// Norm N_{E/ℚ}.
    pub fn norm_to_q(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let c = self.ctx.cyclo();
        let e = self.ctx.e();
        let mut a = self.mult_matrix();
        let mut det_l = c.one();
        for col in 0..e {
            let Some(piv) = (col..e).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                a.swap(col, piv);
                det_l = c.neg(&det_l);
            }
            det_l = c.mul(&det_l, &a[col][col]);
            let inv = c.inv(&a[col][col]).expect("nonzero pivot");
            for r in col + 1..e {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = c.mul(&a[r][col], &inv);
                for k in col..e {
                    let t = c.mul(&f, &a[col][k]);
                    a[r][k] = c.sub(&a[r][k], &t);
                }
            }
        }
        c.norm(&det_l)
    }

    /// Rational coefficient matrix of the parts, part-major, for serialization.
    pub fn coefficient_lists(&self) -> Vec<Vec<BigRational>> {
        self.parts.iter().map(|c| c.coeffs()).collect()
    }
}

impl PartialEq for ECoeff {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.parts == other.parts
    }
}

impl Eq for ECoeff {}

impl Hash for ECoeff {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.p().hash(state);
        self.ctx.m().hash(state);
        self.parts.hash(state);
    }
}

impl PartialOrd for ECoeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ECoeff {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ctx.p(), self.ctx.m(), self.ctx.e())
            .cmp(&(other.ctx.p(), other.ctx.m(), other.ctx.e()))
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&ECoeff> for &ECoeff {
            type Output = ECoeff;
            fn $method(self, rhs: &ECoeff) -> ECoeff {
                self.$checked(rhs)
                    .expect("coefficients from different fields")
            }
        }
        impl $tr<ECoeff> for ECoeff {
            type Output = ECoeff;
            fn $method(self, rhs: ECoeff) -> ECoeff {
                (&self)
                    .$checked(&rhs)
                    .expect("coefficients from different fields")
            }
        }
        impl $tr<&ECoeff> for ECoeff {
            type Output = ECoeff;
            fn $method(self, rhs: &ECoeff) -> ECoeff {
                (&self)
                    .$checked(rhs)
                    .expect("coefficients from different fields")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &ECoeff {
    type Output = ECoeff;
    fn neg(self) -> ECoeff {
        let c = self.ctx.cyclo();
        ECoeff {
            ctx: self.ctx.clone(),
            parts: self.parts.iter().map(|x| c.neg(x)).collect(),
        }
    }
}

impl Neg for ECoeff {
    type Output = ECoeff;
    fn neg(self) -> ECoeff {
        -&self
    }
}

/// Writes the part lists, e.g. `[[1, 1/2], [0, -3]]` for (1 + ζ/2) − 3ζ·ϖ.
impl fmt::Display for ECoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let items: Vec<String> = part
                .coeffs()
                .iter()
                .map(|q| alloc::format!("{q}"))
                .collect();
            write!(f, "[{}]", items.join(", "))?;
        }
        f.write_str("]")
    }
}
