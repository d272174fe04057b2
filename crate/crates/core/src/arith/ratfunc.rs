use std::fmt;

use super::fp_poly::mod_inv;
use super::{validate_prime, wrap, FpPoly, Ring, RingDescriptor};
use crate::error::{Error, Result};

/// A reduced fraction `num / den` over `F_p[x]`: `den` monic and
/// `gcd(num, den) = 1`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FpPoly,
    den: FpPoly,
}

impl RatFunc {
    /// Reduces `num / den` to canonical form. Panics on a zero denominator.
    pub fn new(num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let p = num.characteristic();
        if num.is_zero() {
            return RatFunc {
                num,
                den: FpPoly::one(p),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading();
        if lead != 1 {
            let k = mod_inv(lead, p);
            num = num.scale(k);
            den = den.scale(k);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.characteristic();
        RatFunc {
            num,
            den: FpPoly::one(p),
        }
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn characteristic(&self) -> u64 {
        self.num.characteristic()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            if self.den.is_one() {
                return RatFunc::from_poly(self.num.add(&other.num));
            }
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::from_poly(FpPoly::zero(self.characteristic()));
        }
        if self.is_polynomial() && other.is_polynomial() {
            return RatFunc::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel first so the gcds stay small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.div_rem(&g1).0.mul(&other.num.div_rem(&g2).0);
        let den = self.den.div_rem(&g2).0.mul(&other.den.div_rem(&g1).0);
        RatFunc::new(num, den)
    }

    pub fn inv(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn frobenius(&self, e: u32) -> RatFunc {
        // coprime inputs stay coprime and the leading coefficient is fixed
        RatFunc {
            num: self.num.frobenius(e),
            den: self.den.frobenius(e),
        }
    }

    pub fn frobenius_root(&self, e: u32) -> Option<RatFunc> {
        Some(RatFunc {
            num: self.num.frobenius_root(e)?,
            den: self.den.frobenius_root(e)?,
        })
    }

    pub fn is_frobenius_power(&self, e: u32) -> bool {
        self.num.is_frobenius_power(e) && self.den.is_frobenius_power(e)
    }

    pub fn render(&self, var: &str) -> String {
        let num = self.num.render(var);
        if self.den.is_one() {
            return num;
        }
        format!("{}/{}", wrap(num), wrap(self.den.render(var)))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.render("x"))
    }
}

/// The rational function field `F_p(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatFuncField {
    p: u64,
}

impl RatFuncField {
    pub fn new(p: u64) -> Result<Self> {
        validate_prime(p)?;
        Ok(RatFuncField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn from_poly(&self, f: FpPoly) -> RatFunc {
        RatFunc::from_poly(f)
    }
}

impl Ring for RatFuncField {
    type Elem = RatFunc;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::RatFuncField { p: self.p }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(FpPoly::zero(self.p))
    }

    fn one(&self) -> RatFunc {
        RatFunc::from_poly(FpPoly::one(self.p))
    }

    fn from_int(&self, n: i64) -> RatFunc {
        RatFunc::from_poly(FpPoly::from_signed(self.p, &[n]))
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }

    fn is_field(&self) -> bool {
        true
    }

    fn is_unit(&self, a: &RatFunc) -> bool {
        !a.is_zero()
    }

    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        a.inv().ok_or(Error::DivisionByZero)
    }

    fn div_exact(&self, a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
        b.inv().map(|bi| a.mul(&bi))
    }

    fn frobenius(&self, a: &RatFunc, e: u32) -> RatFunc {
        a.frobenius(e)
    }

    fn variable(&self, name: &str) -> Option<RatFunc> {
        (name == "x").then(|| RatFunc::from_poly(FpPoly::x(self.p)))
    }

    fn render(&self, a: &RatFunc) -> String {
        a.render("x")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let k = RatFuncField::new(5).unwrap();
        let a = k.parse("x/(x+1)").unwrap();
        let b = k.parse("(x+1)/x").unwrap();
        assert_eq!(k.mul(&a, &b), k.one());
    }

    #[test]
    fn canonical_form_is_reduced_with_monic_denominator() {
        let k = RatFuncField::new(3).unwrap();
        let a = k.parse("(x^2-1)/(2*x-2)").unwrap();
        // (x-1)(x+1) / (2(x-1)) = (x+1)/2 = 2x+2
        assert_eq!(a, k.parse("2*x+2").unwrap());
        assert!(a.den().is_one());
        let b = k.parse("1/(2*x)").unwrap();
        assert!(b.den().is_monic());
        assert_eq!(k.parse(&k.render(&b)).unwrap(), b);
    }

    #[test]
    fn frobenius_matches_powering() {
        let k = RatFuncField::new(3).unwrap();
        let a = k.parse("(x^2+1)/(x+2)").unwrap();
        assert_eq!(k.frobenius(&a, 2), k.pow(&a, 9));
    }
}
