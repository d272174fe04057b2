//! Runtime ring descriptors and dynamically typed scalars.
//!
//! The typed rings are what the algorithms use; this layer exists for file
//! formats, the CLI and the Python bindings, where the ring is only known
//! after parsing.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{
    FpPoly, GaloisField, PerfElem, PerfectClosure, PolyRing, QuotElem, QuotientRing, RatFunc,
    RatFuncField, Ring,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RingKind {
    PrimeField,
    ExtField,
    PolyRing,
    RatFuncField,
    QuotientRing,
    PerfectClosure,
}

/// Serializable description of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum RingDescriptor {
    PrimeField { p: u64 },
    ExtField { p: u64, m: usize, modulus: String },
    PolyRing { p: u64 },
    RatFuncField { p: u64 },
    QuotientRing { p: u64, modulus: String },
    PerfectClosure { p: u64 },
}

impl RingDescriptor {
    pub fn kind(&self) -> RingKind {
        match self {
            RingDescriptor::PrimeField { .. } => RingKind::PrimeField,
            RingDescriptor::ExtField { .. } => RingKind::ExtField,
            RingDescriptor::PolyRing { .. } => RingKind::PolyRing,
            RingDescriptor::RatFuncField { .. } => RingKind::RatFuncField,
            RingDescriptor::QuotientRing { .. } => RingKind::QuotientRing,
            RingDescriptor::PerfectClosure { .. } => RingKind::PerfectClosure,
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            RingDescriptor::PrimeField { p }
            | RingDescriptor::ExtField { p, .. }
            | RingDescriptor::PolyRing { p }
            | RingDescriptor::RatFuncField { p }
            | RingDescriptor::QuotientRing { p, .. }
            | RingDescriptor::PerfectClosure { p } => *p,
        }
    }

    /// The `ring` field of the module description format.
    pub fn spec(&self) -> String {
        match self {
            RingDescriptor::PrimeField { .. } => "prime".into(),
            RingDescriptor::ExtField { modulus, .. } => format!("ext:{modulus}"),
            RingDescriptor::PolyRing { .. } => "poly".into(),
            RingDescriptor::RatFuncField { .. } => "ratfunc".into(),
            RingDescriptor::QuotientRing { modulus, .. } => format!("quotient:{modulus}"),
            RingDescriptor::PerfectClosure { .. } => "perfect".into(),
        }
    }

    /// Parses a `ring` field value for characteristic `p`.
    ///
    /// Accepted forms: `prime`, `ext:<m>`, `ext:<modulus in u>`, `poly`,
    /// `ratfunc`, `perfect`, `quotient:<monic modulus in t>`.
    pub fn parse(p: u64, spec: &str) -> Result<AnyRing> {
        let spec = spec.trim();
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (spec, None),
        };
        let ring = match (head, arg) {
            ("prime", None) => AnyRing::Galois(GaloisField::prime(p)?),
            ("ext", Some(arg)) => match arg.parse::<usize>() {
                Ok(m) => AnyRing::Galois(GaloisField::new(p, m)?),
                Err(_) => {
                    let modulus = PolyRing::new(p)?.parse(&arg.replace('u', "x"))?;
                    AnyRing::Galois(GaloisField::with_modulus(modulus)?)
                }
            },
            ("poly", None) => AnyRing::Poly(PolyRing::new(p)?),
            ("ratfunc", None) => AnyRing::RatFunc(RatFuncField::new(p)?),
            ("perfect", None) => AnyRing::Perfect(PerfectClosure::new(p)?),
            ("quotient", Some(arg)) => AnyRing::Quotient(QuotientRing::from_literal(p, arg)?),
            _ => return Err(Error::Validation(format!("unknown ring `{spec}`"))),
        };
        Ok(ring)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::PrimeField { p } => write!(f, "F_{p}"),
            RingDescriptor::ExtField { p, modulus, .. } => write!(f, "F_{p}[u]/({modulus})"),
            RingDescriptor::PolyRing { p } => write!(f, "F_{p}[x]"),
            RingDescriptor::RatFuncField { p } => write!(f, "F_{p}(x)"),
            RingDescriptor::QuotientRing { p, modulus } => write!(f, "F_{p}(x)[t]/({modulus})"),
            RingDescriptor::PerfectClosure { p } => write!(f, "F_{p}(x)^(1/p^inf)"),
        }
    }
}

/// One of the concrete rings, chosen at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyRing {
    Galois(GaloisField),
    Poly(PolyRing),
    RatFunc(RatFuncField),
    Perfect(PerfectClosure),
    Quotient(QuotientRing),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnyElem {
    Galois(FpPoly),
    Poly(FpPoly),
    RatFunc(RatFunc),
    Perfect(PerfElem),
    Quotient(QuotElem),
}

/// Applies `$body` with `$r` bound to the concrete ring inside an [`AnyRing`].
macro_rules! with_ring {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            AnyRing::Galois($r) => $body,
            AnyRing::Poly($r) => $body,
            AnyRing::RatFunc($r) => $body,
            AnyRing::Perfect($r) => $body,
            AnyRing::Quotient($r) => $body,
        }
    };
}

impl AnyRing {
    pub fn descriptor(&self) -> RingDescriptor {
        with_ring!(self, r => r.descriptor())
    }

    pub fn parse(&self, literal: &str) -> Result<AnyElem> {
        Ok(match self {
            AnyRing::Galois(r) => AnyElem::Galois(r.parse(literal)?),
            AnyRing::Poly(r) => AnyElem::Poly(r.parse(literal)?),
            AnyRing::RatFunc(r) => AnyElem::RatFunc(r.parse(literal)?),
            AnyRing::Perfect(r) => AnyElem::Perfect(r.parse(literal)?),
            AnyRing::Quotient(r) => AnyElem::Quotient(r.parse(literal)?),
        })
    }
}

/// A ring element bundled with its ring.
#[derive(Clone, Debug)]
pub struct RingScalar {
    ring: Arc<AnyRing>,
    value: AnyElem,
}

impl PartialEq for RingScalar {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.value == other.value
    }
}

impl Eq for RingScalar {}

macro_rules! binary {
    ($a:expr, $b:expr, $r:ident, $x:ident, $y:ident => $body:expr) => {{
        $a.check_same($b)?;
        let value = match (&*$a.ring, &$a.value, &$b.value) {
            (AnyRing::Galois($r), AnyElem::Galois($x), AnyElem::Galois($y)) => {
                AnyElem::Galois($body)
            }
            (AnyRing::Poly($r), AnyElem::Poly($x), AnyElem::Poly($y)) => AnyElem::Poly($body),
            (AnyRing::RatFunc($r), AnyElem::RatFunc($x), AnyElem::RatFunc($y)) => {
                AnyElem::RatFunc($body)
            }
            (AnyRing::Perfect($r), AnyElem::Perfect($x), AnyElem::Perfect($y)) => {
                AnyElem::Perfect($body)
            }
            (AnyRing::Quotient($r), AnyElem::Quotient($x), AnyElem::Quotient($y)) => {
                AnyElem::Quotient($body)
            }
            _ => unreachable!("element kind always matches its ring"),
        };
        Ok(RingScalar {
            ring: $a.ring.clone(),
            value,
        })
    }};
}

macro_rules! unary {
    ($a:expr, $r:ident, $x:ident => $body:expr) => {{
        let value = match (&*$a.ring, &$a.value) {
            (AnyRing::Galois($r), AnyElem::Galois($x)) => AnyElem::Galois($body),
            (AnyRing::Poly($r), AnyElem::Poly($x)) => AnyElem::Poly($body),
            (AnyRing::RatFunc($r), AnyElem::RatFunc($x)) => AnyElem::RatFunc($body),
            (AnyRing::Perfect($r), AnyElem::Perfect($x)) => AnyElem::Perfect($body),
            (AnyRing::Quotient($r), AnyElem::Quotient($x)) => AnyElem::Quotient($body),
            _ => unreachable!("element kind always matches its ring"),
        };
        RingScalar {
            ring: $a.ring.clone(),
            value,
        }
    }};
}

impl RingScalar {
    pub fn parse(ring: Arc<AnyRing>, literal: &str) -> Result<Self> {
        let value = ring.parse(literal)?;
        Ok(RingScalar { ring, value })
    }

    pub fn ring(&self) -> &Arc<AnyRing> {
        &self.ring
    }

    pub fn value(&self) -> &AnyElem {
        &self.value
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.ring.descriptor()
    }

    fn check_same(&self, other: &RingScalar) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!(
                "{} vs {}",
                self.descriptor(),
                other.descriptor()
            )))
        }
    }

    pub fn add(&self, other: &RingScalar) -> Result<RingScalar> {
        binary!(self, other, r, x, y => r.add(x, y))
    }

    pub fn sub(&self, other: &RingScalar) -> Result<RingScalar> {
        binary!(self, other, r, x, y => r.sub(x, y))
    }

    pub fn mul(&self, other: &RingScalar) -> Result<RingScalar> {
        binary!(self, other, r, x, y => r.mul(x, y))
    }

    pub fn div(&self, other: &RingScalar) -> Result<RingScalar> {
        binary!(self, other, r, x, y => r.div(x, y)?)
    }

    pub fn neg(&self) -> RingScalar {
        unary!(self, r, x => r.neg(x))
    }

    pub fn inv(&self) -> Result<RingScalar> {
        Ok(unary!(self, r, x => r.inv(x)?))
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            AnyElem::Galois(a) | AnyElem::Poly(a) => a.is_zero(),
            AnyElem::RatFunc(a) => a.is_zero(),
            AnyElem::Perfect(a) => a.value().is_zero(),
            AnyElem::Quotient(a) => a.coeffs().is_empty(),
        }
    }

    /// `a^(p^e)`.
    pub fn frobenius_power(&self, e: u32) -> RingScalar {
        unary!(self, r, x => r.frobenius(x, e))
    }

    /// The unique `b` with `b^(p^e) = a`, where it exists in the ring.
    pub fn p_th_root(&self, e: u32) -> Result<RingScalar> {
        let unsupported = || Error::UnsupportedRing(format!("{} has no p^{e}-th root of this element", self.descriptor()));
        let value = match (&*self.ring, &self.value) {
            (AnyRing::Galois(r), AnyElem::Galois(a)) => AnyElem::Galois(r.frobenius_root(a, e)),
            (AnyRing::Perfect(r), AnyElem::Perfect(a)) => AnyElem::Perfect(r.frobenius_root(a, e)),
            (AnyRing::Poly(_), AnyElem::Poly(a)) => {
                AnyElem::Poly(a.frobenius_root(e).ok_or_else(unsupported)?)
            }
            (AnyRing::RatFunc(_), AnyElem::RatFunc(a)) => {
                AnyElem::RatFunc(a.frobenius_root(e).ok_or_else(unsupported)?)
            }
            _ => return Err(unsupported()),
        };
        Ok(RingScalar {
            ring: self.ring.clone(),
            value,
        })
    }

    pub fn render(&self) -> String {
        match (&*self.ring, &self.value) {
            (AnyRing::Galois(r), AnyElem::Galois(a)) => r.render(a),
            (AnyRing::Poly(r), AnyElem::Poly(a)) => r.render(a),
            (AnyRing::RatFunc(r), AnyElem::RatFunc(a)) => r.render(a),
            (AnyRing::Perfect(r), AnyElem::Perfect(a)) => r.render(a),
            (AnyRing::Quotient(r), AnyElem::Quotient(a)) => r.render(a),
            _ => unreachable!("element kind always matches its ring"),
        }
    }
}

impl fmt::Display for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
