//! Frobenius modules on free modules: `F(v) = A * v^[q]` with `q = p^e`.

use serde::Serialize;

use crate::arith::{Embed, FpPoly, Ring};
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};

/// A free module of rank `n` with a `p^e`-linear endomorphism given by the
/// structure matrix `A`; column `j` of `A` is the image of the `j`-th basis
/// vector.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobModule<R: Ring> {
    ring: R,
    e: u32,
    a: Matrix<R::Elem>,
}

/// `A_r = A * A^[q] * ... * A^[q^(r-1)]`, the matrix of `F^r`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobMatrixPower<E> {
    pub r: u32,
    pub matrix: Matrix<E>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitReport {
    pub is_unit: bool,
    pub det: String,
}

impl<R: Ring> FrobModule<R> {
    pub fn new(ring: R, e: u32, a: Matrix<R::Elem>) -> Result<Self> {
        if e == 0 {
            return Err(Error::Validation("twist e must be at least 1".into()));
        }
        if a.rows() == 0 {
            return Err(Error::Validation("rank n must be at least 1".into()));
        }
        if !a.is_square() {
            return Err(Error::Validation(format!(
                "structure matrix is {}x{}, expected square",
                a.rows(),
                a.cols()
            )));
        }
        Ok(FrobModule { ring, e, a })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn matrix(&self) -> &Matrix<R::Elem> {
        &self.a
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n(),
                got: len,
            })
        }
    }

    /// `F^r(v) = A_r * v^[q^r]`.
    pub fn apply(&self, v: &[R::Elem], r: u32) -> Result<Vec<R::Elem>> {
        self.check_len(v.len())?;
        let ar = self.power_matrix(r)?.matrix;
        self.apply_with(&ar, v, r)
    }

    /// Same as [`apply`](Self::apply) with a precomputed `A_r`.
    pub fn apply_with(&self, ar: &Matrix<R::Elem>, v: &[R::Elem], r: u32) -> Result<Vec<R::Elem>> {
        self.check_len(v.len())?;
        let twisted = matrix::frobenius_vec(&self.ring, v, self.e * r);
        matrix::mul_vec(&self.ring, ar, &twisted)
    }

    /// `A_r` by the recursion `A_r = A_(r-1) * A^[q^(r-1)]`.
    pub fn power_matrix(&self, r: u32) -> Result<FrobMatrixPower<R::Elem>> {
        if r == 0 {
            return Err(Error::InvalidArgument("power r must be at least 1".into()));
        }
        let mut acc = self.a.clone();
        for i in 1..r {
            let twisted = matrix::frobenius(&self.ring, &self.a, self.e * i);
            acc = matrix::mul(&self.ring, &acc, &twisted)?;
        }
        Ok(FrobMatrixPower { r, matrix: acc })
    }

    /// Matrix of `F^r` in the basis given by the columns of `C`:
    /// `C^-1 * A_r * C^[q^r]`.
    pub fn change_basis(&self, c: &Matrix<R::Elem>, r: u32) -> Result<Matrix<R::Elem>> {
        if c.rows() != self.n() || !c.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: c.rows(),
            });
        }
        let c_inv = matrix::inverse(&self.ring, c).map_err(|_| Error::SingularBasisChange)?;
        let ar = self.power_matrix(r)?.matrix;
        let twisted = matrix::frobenius(&self.ring, c, self.e * r);
        matrix::mul(&self.ring, &matrix::mul(&self.ring, &c_inv, &ar)?, &twisted)
    }

    /// The module with structure matrix `C^-1 * A * C^[q]`.
    pub fn conjugate(&self, c: &Matrix<R::Elem>) -> Result<FrobModule<R>> {
        FrobModule::new(self.ring.clone(), self.e, self.change_basis(c, 1)?)
    }

    /// Entries mapped through the canonical embedding into `target`.
    pub fn extend_scalars<T: Ring>(&self, target: &T) -> Result<FrobModule<T>>
    where
        R: Embed<T>,
    {
        let entries = self.ring.embed_all(target, self.a.entries())?;
        let a = Matrix::from_vec(self.n(), self.n(), entries)?;
        FrobModule::new(target.clone(), self.e, a)
    }

    /// The same module viewed through `F^r`: twist `e*r`, matrix `A_r`.
    pub fn compose_twist(&self, r: u32) -> Result<FrobModule<R>> {
        let ar = self.power_matrix(r)?.matrix;
        FrobModule::new(self.ring.clone(), self.e * r, ar)
    }

    pub fn determinant(&self) -> R::Elem {
        matrix::det(&self.ring, &self.a).expect("structure matrix is square")
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.determinant())
    }

    pub fn unit_report(&self) -> UnitReport {
        let det = self.determinant();
        UnitReport {
            is_unit: self.ring.is_unit(&det),
            det: self.ring.render(&det),
        }
    }

    pub fn render_matrix(&self) -> String {
        matrix::render(&self.ring, &self.a)
    }
}

/// Entrywise `p^e`-th power of a presentation matrix: the presentation of
/// the Frobenius pullback of its cokernel.
pub fn frobenius_twist_presentation<R: Ring>(ring: &R, g: &Matrix<R::Elem>, e: u32) -> Matrix<R::Elem> {
    matrix::frobenius(ring, g, e)
}

/// `a_r` over `F_p` with `a_(-1) = 0`, `a_0 = 1` and
/// `a_r = a_(r-2) + a_(r-1) * x^(q^(r-1))`.
pub fn coefficient_sequence(p: u64, e: u32, r: i64) -> Result<FpPoly> {
    if r < -1 {
        return Err(Error::InvalidArgument(format!("index {r} is below -1")));
    }
    let q = p
        .checked_pow(e)
        .ok_or_else(|| Error::InvalidArgument("q = p^e overflows".into()))?;
    let (mut prev, mut cur) = (FpPoly::zero(p), FpPoly::one(p));
    if r == -1 {
        return Ok(prev);
    }
    let mut qpow: u64 = 1;
    for _ in 0..r {
        let next = prev.add(&cur.shift(qpow as usize));
        prev = cur;
        cur = next;
        qpow = qpow
            .checked_mul(q)
            .ok_or_else(|| Error::InvalidArgument("exponent q^r overflows".into()))?;
    }
    Ok(cur)
}
