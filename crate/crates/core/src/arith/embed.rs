use super::{
    FpPoly, GaloisField, PerfElem, PerfectClosure, PolyRing, QuotElem, QuotientRing, RatFunc,
    RatFuncField, Ring,
};
use crate::error::{Error, Result};

/// Canonical ring embeddings used for scalar extension.
pub trait Embed<T: Ring>: Ring {
    /// Maps every element through the canonical embedding `self -> target`.
    fn embed_all(&self, target: &T, elems: &[Self::Elem]) -> Result<Vec<T::Elem>>;
}

fn no_embedding<S: Ring, T: Ring>(src: &S, dst: &T) -> Error {
    Error::NoCanonicalEmbedding {
        from: src.descriptor().to_string(),
        to: dst.descriptor().to_string(),
    }
}

fn check_characteristic<S: Ring, T: Ring>(src: &S, dst: &T) -> Result<()> {
    if src.characteristic() == dst.characteristic() {
        Ok(())
    } else {
        Err(no_embedding(src, dst))
    }
}

/// A root of `src`'s modulus inside the copy of `F_(p^m)` in `dst`; the
/// first one in enumeration order, so the embedding is deterministic.
fn subfield_root(src: &GaloisField, dst: &GaloisField) -> FpPoly {
    let sub = dst.subfield_basis(src.degree());
    (0..src.order())
        .map(|idx| dst.combination(&sub, idx))
        .find(|y| {
            let value = src.modulus().coeffs().iter().rev().fold(dst.zero(), |acc, &c| {
                dst.add(&dst.mul(&acc, y), &dst.from_int(c as i64))
            });
            dst.is_zero(&value)
        })
        .expect("a finite field contains every subfield of dividing degree")
}

impl Embed<GaloisField> for GaloisField {
    fn embed_all(&self, target: &GaloisField, elems: &[FpPoly]) -> Result<Vec<FpPoly>> {
        check_characteristic(self, target)?;
        if self == target || self.is_prime_field() {
            return Ok(elems.iter().map(|a| FpPoly::new(target.p(), a.coeffs().to_vec())).collect());
        }
        if !target.degree().is_multiple_of(self.degree()) {
            return Err(no_embedding(self, target));
        }
        let root = subfield_root(self, target);
        Ok(elems
            .iter()
            .map(|a| {
                a.coeffs().iter().rev().fold(target.zero(), |acc, &c| {
                    target.add(&target.mul(&acc, &root), &target.from_int(c as i64))
                })
            })
            .collect())
    }
}

/// Prime-field constants into any ring of the same characteristic.
fn constants<T: Ring>(src: &GaloisField, dst: &T, elems: &[FpPoly]) -> Result<Vec<T::Elem>> {
    check_characteristic(src, dst)?;
    if !src.is_prime_field() {
        return Err(no_embedding(src, dst));
    }
    Ok(elems.iter().map(|a| dst.from_int(a.coeff(0) as i64)).collect())
}

macro_rules! from_prime_field {
    ($($target:ty),*) => {$(
        impl Embed<$target> for GaloisField {
            fn embed_all(&self, target: &$target, elems: &[FpPoly]) -> Result<Vec<<$target as Ring>::Elem>> {
                constants(self, target, elems)
            }
        }
    )*};
}

from_prime_field!(PolyRing, RatFuncField, PerfectClosure, QuotientRing);

macro_rules! identity_embedding {
    ($($ring:ty),*) => {$(
        impl Embed<$ring> for $ring {
            fn embed_all(&self, target: &$ring, elems: &[<$ring as Ring>::Elem]) -> Result<Vec<<$ring as Ring>::Elem>> {
                if self == target {
                    Ok(elems.to_vec())
                } else {
                    Err(no_embedding(self, target))
                }
            }
        }
    )*};
}

identity_embedding!(PolyRing, RatFuncField, PerfectClosure, QuotientRing);

impl Embed<RatFuncField> for PolyRing {
    fn embed_all(&self, target: &RatFuncField, elems: &[FpPoly]) -> Result<Vec<RatFunc>> {
        check_characteristic(self, target)?;
        Ok(elems.iter().cloned().map(RatFunc::from_poly).collect())
    }
}

impl Embed<PerfectClosure> for PolyRing {
    fn embed_all(&self, target: &PerfectClosure, elems: &[FpPoly]) -> Result<Vec<PerfElem>> {
        check_characteristic(self, target)?;
        Ok(elems
            .iter()
            .map(|a| PerfElem::new(RatFunc::from_poly(a.clone()), 0))
            .collect())
    }
}

impl Embed<QuotientRing> for PolyRing {
    fn embed_all(&self, target: &QuotientRing, elems: &[FpPoly]) -> Result<Vec<QuotElem>> {
        check_characteristic(self, target)?;
        Ok(elems
            .iter()
            .map(|a| target.constant(RatFunc::from_poly(a.clone())))
            .collect())
    }
}

impl Embed<PerfectClosure> for RatFuncField {
    fn embed_all(&self, target: &PerfectClosure, elems: &[RatFunc]) -> Result<Vec<PerfElem>> {
        check_characteristic(self, target)?;
        Ok(elems.iter().map(|a| PerfElem::new(a.clone(), 0)).collect())
    }
}

impl Embed<QuotientRing> for RatFuncField {
    fn embed_all(&self, target: &QuotientRing, elems: &[RatFunc]) -> Result<Vec<QuotElem>> {
        check_characteristic(self, target)?;
        Ok(elems.iter().map(|a| target.constant(a.clone())).collect())
    }
}
