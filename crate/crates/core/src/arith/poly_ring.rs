use super::fp_poly::mod_inv;
use super::{validate_prime, FpPoly, Ring, RingDescriptor};
use crate::error::{Error, Result};

/// The polynomial ring `F_p[x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    p: u64,
}

impl PolyRing {
    pub fn new(p: u64) -> Result<Self> {
        validate_prime(p)?;
        Ok(PolyRing { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn x(&self) -> FpPoly {
        FpPoly::x(self.p)
    }
}

impl Ring for PolyRing {
    type Elem = FpPoly;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PolyRing { p: self.p }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> FpPoly {
        FpPoly::zero(self.p)
    }

    fn one(&self) -> FpPoly {
        FpPoly::one(self.p)
    }

    fn from_int(&self, n: i64) -> FpPoly {
        FpPoly::from_signed(self.p, &[n])
    }

    fn is_zero(&self, a: &FpPoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.add(b)
    }

    fn neg(&self, a: &FpPoly) -> FpPoly {
        a.neg()
    }

    fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.sub(b)
    }

    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b)
    }

    fn is_field(&self) -> bool {
        false
    }

    /// Units of `F_p[x]` are the nonzero constants.
    fn is_unit(&self, a: &FpPoly) -> bool {
        a.deg() == Some(0)
    }

    fn inv(&self, a: &FpPoly) -> Result<FpPoly> {
        if !self.is_unit(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(FpPoly::constant(self.p, mod_inv(a.coeff(0), self.p)))
    }

    fn div_exact(&self, a: &FpPoly, b: &FpPoly) -> Option<FpPoly> {
        a.div_exact(b)
    }

    fn frobenius(&self, a: &FpPoly, e: u32) -> FpPoly {
        a.frobenius(e)
    }

    fn pow(&self, a: &FpPoly, n: u64) -> FpPoly {
        a.pow(n)
    }

    fn variable(&self, name: &str) -> Option<FpPoly> {
        (name == "x").then(|| self.x())
    }

    fn render(&self, a: &FpPoly) -> String {
        a.render("x")
    }
}
