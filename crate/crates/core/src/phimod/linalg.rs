//! 2×2 matrices and projective lines over E.

use core::fmt;

use crate::coeff::{ECoeff, ECtx};
use crate::{Error, Result};

/// Row-major 2×2 matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: [[ECoeff; 2]; 2],
}

pub type Vec2 = [ECoeff; 2];

impl Mat2 {
    pub fn new(a: ECoeff, b: ECoeff, c: ECoeff, d: ECoeff) -> Self {
        Mat2 {
            a: [[a, b], [c, d]],
        }
    }

    pub fn identity(ctx: &ECtx) -> Self {
        Self::diag(ctx.one(), ctx.one())
    }

    pub fn zero(ctx: &ECtx) -> Self {
        Self::diag(ctx.zero(), ctx.zero())
    }

    pub fn diag(x: ECoeff, y: ECoeff) -> Self {
        let z = x.ctx().zero();
        Mat2::new(x, z.clone(), z, y)
    }

    pub fn scalar(x: ECoeff) -> Self {
        Self::diag(x.clone(), x)
    }

    pub fn ctx(&self) -> &ECtx {
        self.a[0][0].ctx()
    }

    pub fn entry(&self, r: usize, c: usize) -> &ECoeff {
        &self.a[r][c]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = |r: usize, c: usize| &self.a[r][0] * &o.a[0][c] + &self.a[r][1] * &o.a[1][c];
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        let e = |r: usize, c: usize| &self.a[r][c] + &o.a[r][c];
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        let e = |r: usize, c: usize| &self.a[r][c] - &o.a[r][c];
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn scale(&self, x: &ECoeff) -> Mat2 {
        let e = |r: usize, c: usize| &self.a[r][c] * x;
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        [
            &self.a[0][0] * &v[0] + &self.a[0][1] * &v[1],
            &self.a[1][0] * &v[0] + &self.a[1][1] * &v[1],
        ]
    }

    pub fn det(&self) -> ECoeff {
        &self.a[0][0] * &self.a[1][1] - &self.a[0][1] * &self.a[1][0]
    }

    pub fn trace(&self) -> ECoeff {
        &self.a[0][0] + &self.a[1][1]
    }

    pub fn inv(&self) -> Result<Mat2> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::Structure("matrix is not invertible".into()));
        }
        let di = d.inv()?;
        Ok(Mat2::new(
            &self.a[1][1] * &di,
            -(&self.a[0][1] * &di),
            -(&self.a[1][0] * &di),
            &self.a[0][0] * &di,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_scalar(&self) -> bool {
        self.a[0][1].is_zero() && self.a[1][0].is_zero() && self.a[0][0] == self.a[1][1]
    }

    pub fn checked_same_ctx(&self, ctx: &ECtx) -> Result<()> {
        if self.a.iter().flatten().all(|x| x.ctx() == ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a[0][0], self.a[0][1], self.a[1][0], self.a[1][1]
        )
    }
}

/// A line E·(u, v) in a two-dimensional space, kept in the normal form
/// (1 : v/u) or (0 : 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    u: ECoeff,
    v: ECoeff,
}

impl ProjLine {
    pub fn new(u: ECoeff, v: ECoeff) -> Result<Self> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::InvalidParameter(
                "the zero vector spans no line".into(),
            ));
        }
        if u.is_zero() {
            let one = v.ctx().one();
            return Ok(ProjLine { u, v: one });
        }
        let v = v.checked_div(&u)?;
        Ok(ProjLine {
            u: u.ctx().one(),
            v,
        })
    }

    pub fn from_vec(x: &Vec2) -> Result<Self> {
        Self::new(x[0].clone(), x[1].clone())
    }

    pub fn e1(ctx: &ECtx) -> Self {
        ProjLine {
            u: ctx.one(),
            v: ctx.zero(),
        }
    }

    pub fn e2(ctx: &ECtx) -> Self {
        ProjLine {
            u: ctx.zero(),
            v: ctx.one(),
        }
    }

    pub fn u(&self) -> &ECoeff {
        &self.u
    }

    pub fn v(&self) -> &ECoeff {
        &self.v
    }

    pub fn vector(&self) -> Vec2 {
        [self.u.clone(), self.v.clone()]
    }

    pub fn ctx(&self) -> &ECtx {
        self.u.ctx()
    }

    /// Image under an invertible matrix.
    pub fn image(&self, m: &Mat2) -> Result<Self> {
        Self::from_vec(&m.apply(&self.vector()))
    }

    /// Whether `x` lies on this line.
    pub fn contains(&self, x: &Vec2) -> bool {
        (&self.u * &x[1] - &self.v * &x[0]).is_zero()
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.u, self.v)
    }
}
