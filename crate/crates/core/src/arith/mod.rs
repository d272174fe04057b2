//! Exact arithmetic for every supported coefficient ring.
//!
//! Each ring is a small value type implementing [`Ring`]; elements are plain
//! data kept in canonical form, and all operations go through the ring so
//! that the same matrix and module code runs over every coefficient ring.

mod degree;
mod descriptor;
mod embed;
mod expr;
pub mod fp_poly;
mod galois;
mod perfect;
mod poly_ring;
mod quotient;
mod ratfunc;
pub mod upoly;

use std::fmt::Debug;
use std::hash::Hash;

pub use degree::Degree;
pub use descriptor::{AnyElem, AnyRing, RingDescriptor, RingKind, RingScalar};
pub use embed::Embed;
pub use fp_poly::FpPoly;
pub use galois::GaloisField;
pub use perfect::{PerfElem, PerfectClosure};
pub use poly_ring::PolyRing;
pub use quotient::{QuotElem, QuotientRing};
pub use ratfunc::{RatFunc, RatFuncField};

use crate::error::{Error, Result};

/// A commutative ring of characteristic `p` with canonical element forms.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn descriptor(&self) -> RingDescriptor;
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_field(&self) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// Multiplicative inverse of a unit.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Exact quotient `a / b` when `b` divides `a`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        if self.is_field() {
            Ok(self.mul(a, &self.inv(b)?))
        } else {
            self.div_exact(a, b).ok_or(Error::DivisionByZero)
        }
    }

    /// `a^(p^e)`.
    fn frobenius(&self, a: &Self::Elem, e: u32) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Value of a named generator (`x`, `u`, `t`) in this ring, if any.
    fn variable(&self, name: &str) -> Option<Self::Elem>;

    /// Canonical literal for an element; `parse(render(a)) == a`.
    fn render(&self, a: &Self::Elem) -> String;

    fn parse(&self, literal: &str) -> Result<Self::Elem> {
        expr::evaluate(self, literal)
    }
}

/// Sum of a sequence of ring elements.
pub fn sum<R: Ring>(ring: &R, items: impl IntoIterator<Item = R::Elem>) -> R::Elem {
    items
        .into_iter()
        .fold(ring.zero(), |acc, x| ring.add(&acc, &x))
}

/// `a^(p^e)` computed by repeated `p`-th powering.
pub(crate) fn frobenius_by_powering<R: Ring>(ring: &R, a: &R::Elem, e: u32) -> R::Elem {
    let p = ring.characteristic();
    (0..e).fold(a.clone(), |acc, _| ring.pow(&acc, p))
}

pub fn validate_prime(p: u64) -> Result<()> {
    if !fp_poly::is_prime(p) {
        return Err(Error::Validation(format!("{p} is not prime")));
    }
    if p >= 1 << 31 {
        return Err(Error::Validation(format!(
            "characteristic {p} exceeds the supported range"
        )));
    }
    Ok(())
}

/// Adds parentheses around a rendered element unless it is a single atom.
pub(crate) fn wrap(rendered: String) -> String {
    if rendered.contains(['+', '*', '/', ',']) {
        format!("({rendered})")
    } else {
        rendered
    }
}
