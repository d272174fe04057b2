use super::upoly::{self, UPoly};
use super::{wrap, RatFunc, RatFuncField, Ring, RingDescriptor};
use crate::error::{Error, Result};

/// A residue class in `F_p(x)[t]/(P)`, stored as its remainder of degree
/// below `deg P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotElem(Vec<RatFunc>);

impl QuotElem {
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.0
    }
}

/// `F_p(x)[t]/(P)` for a monic `P` of positive degree in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    base: RatFuncField,
    modulus: UPoly<RatFunc>,
}

impl QuotientRing {
    pub fn new(base: RatFuncField, modulus: UPoly<RatFunc>) -> Result<Self> {
        let modulus = upoly::trim(&base, modulus);
        match modulus.last() {
            Some(lead) if modulus.len() >= 2 && *lead == base.one() => {
                Ok(QuotientRing { base, modulus })
            }
            _ => Err(Error::Validation(
                "quotient modulus must be monic of positive degree in t".into(),
            )),
        }
    }

    /// Parses the modulus from a literal in `t` with coefficients in `F_p(x)`.
    pub fn from_literal(p: u64, modulus: &str) -> Result<Self> {
        let base = RatFuncField::new(p)?;
        let poly = super::expr::evaluate(&PolyInT { base }, modulus)?;
        Self::new(base, poly)
    }

    /// `t^(p^2) + x t^p - t`, whose roots are fixed by the rank-two module
    /// with structure matrix `[[0,1],[1,x]]`.
    pub fn adjoined_root(p: u64) -> Result<Self> {
        let base = RatFuncField::new(p)?;
        let pp = (p * p) as usize;
        let mut modulus = vec![base.zero(); pp + 1];
        modulus[pp] = base.one();
        modulus[p as usize] = base.variable("x").expect("x");
        modulus[1] = base.from_int(-1);
        Self::new(base, modulus)
    }

    pub fn base(&self) -> &RatFuncField {
        &self.base
    }

    pub fn modulus(&self) -> &UPoly<RatFunc> {
        &self.modulus
    }

    pub fn modulus_degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Canonical residue of an arbitrary polynomial in `t`.
    pub fn reduce(&self, poly: &UPoly<RatFunc>) -> QuotElem {
        let poly = upoly::trim(&self.base, poly.clone());
        QuotElem(upoly::rem(&self.base, &poly, &self.modulus))
    }

    /// The class of `t`.
    pub fn t(&self) -> QuotElem {
        self.reduce(&upoly::var(&self.base))
    }

    pub fn constant(&self, c: RatFunc) -> QuotElem {
        self.reduce(&vec![c])
    }

    fn frobenius_once(&self, a: &QuotElem) -> QuotElem {
        let p = self.base.p() as usize;
        let Some(deg) = upoly::degree(&a.0) else {
            return a.clone();
        };
        let mut spread = vec![self.base.zero(); deg * p + 1];
        for (i, c) in a.0.iter().enumerate() {
            spread[i * p] = c.frobenius(1);
        }
        self.reduce(&spread)
    }
}

pub(crate) fn render_t_poly(base: &RatFuncField, coeffs: &[RatFunc]) -> String {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        let coef = base.render(c);
        terms.push(if mono.is_empty() {
            wrap_sum(coef)
        } else if *c == base.one() {
            mono
        } else {
            format!("{}*{mono}", wrap(coef))
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn wrap_sum(s: String) -> String {
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

/// Helper ring used only to evaluate literals for the modulus itself.
#[derive(Clone, Debug, PartialEq)]
struct PolyInT {
    base: RatFuncField,
}

impl Ring for PolyInT {
    type Elem = UPoly<RatFunc>;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::RatFuncField { p: self.base.p() }
    }
    fn characteristic(&self) -> u64 {
        self.base.p()
    }
    fn zero(&self) -> Self::Elem {
        vec![]
    }
    fn one(&self) -> Self::Elem {
        vec![self.base.one()]
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        upoly::constant(&self.base, self.base.from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        upoly::add(&self.base, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        upoly::neg(&self.base, a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        upoly::mul(&self.base, a, b)
    }
    fn is_field(&self) -> bool {
        false
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.len() == 1
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        match a.as_slice() {
            [c] => Ok(vec![self.base.inv(c)?]),
            _ => Err(Error::DivisionByZero),
        }
    }
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let (q, r) = upoly::div_rem(&self.base, a, b)?;
        r.is_empty().then_some(q)
    }
    fn frobenius(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        super::frobenius_by_powering(self, a, e)
    }
    fn variable(&self, name: &str) -> Option<Self::Elem> {
        match name {
            "x" => Some(vec![self.base.variable("x")?]),
            "t" => Some(upoly::var(&self.base)),
            _ => None,
        }
    }
    fn render(&self, a: &Self::Elem) -> String {
        render_t_poly(&self.base, a)
    }
}

impl Ring for QuotientRing {
    type Elem = QuotElem;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::QuotientRing {
            p: self.base.p(),
            modulus: render_t_poly(&self.base, &self.modulus),
        }
    }

    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn zero(&self) -> QuotElem {
        QuotElem(vec![])
    }

    fn one(&self) -> QuotElem {
        self.constant(self.base.one())
    }

    fn from_int(&self, n: i64) -> QuotElem {
        self.constant(self.base.from_int(n))
    }

    fn is_zero(&self, a: &QuotElem) -> bool {
        a.0.is_empty()
    }

    fn add(&self, a: &QuotElem, b: &QuotElem) -> QuotElem {
        QuotElem(upoly::add(&self.base, &a.0, &b.0))
    }

    fn neg(&self, a: &QuotElem) -> QuotElem {
        QuotElem(upoly::neg(&self.base, &a.0))
    }

    fn mul(&self, a: &QuotElem, b: &QuotElem) -> QuotElem {
        self.reduce(&upoly::mul(&self.base, &a.0, &b.0))
    }

    fn is_field(&self) -> bool {
        false
    }

    fn is_unit(&self, a: &QuotElem) -> bool {
        !a.0.is_empty() && upoly::gcd(&self.base, &a.0, &self.modulus).len() == 1
    }

    fn inv(&self, a: &QuotElem) -> Result<QuotElem> {
        let (g, s, _) = upoly::ext_gcd(&self.base, &a.0, &self.modulus);
        if g.len() != 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.reduce(&s))
    }

    fn div_exact(&self, a: &QuotElem, b: &QuotElem) -> Option<QuotElem> {
        self.inv(b).ok().map(|bi| self.mul(a, &bi))
    }

    fn frobenius(&self, a: &QuotElem, e: u32) -> QuotElem {
        (0..e).fold(a.clone(), |acc, _| self.frobenius_once(&acc))
    }

    fn variable(&self, name: &str) -> Option<QuotElem> {
        match name {
            "t" => Some(self.t()),
            "x" => Some(self.constant(self.base.variable("x")?)),
            _ => None,
        }
    }

    fn render(&self, a: &QuotElem) -> String {
        render_t_poly(&self.base, &a.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_power_reduces_by_the_modulus() {
        let ring = QuotientRing::adjoined_root(3).unwrap();
        let t = ring.t();
        let t9 = ring.pow(&t, 9);
        assert_eq!(t9, ring.parse("t-x*t^3").unwrap());
        let t10 = ring.pow(&t, 10);
        assert_eq!(t10, ring.mul(&t, &t9));
        assert!(t10.coeffs().len() <= ring.modulus_degree());
    }

    #[test]
    fn frobenius_matches_powering() {
        let ring = QuotientRing::adjoined_root(2).unwrap();
        let a = ring.parse("x*t^3+(x+1)/x*t+1").unwrap();
        assert_eq!(ring.frobenius(&a, 1), ring.pow(&a, 2));
        assert_eq!(ring.frobenius(&a, 2), ring.pow(&a, 4));
    }

    #[test]
    fn literal_roundtrip() {
        let ring = QuotientRing::from_literal(3, "t^2+x*t+1").unwrap();
        let a = ring.parse("(x^2+1)/(x+2)*t+x").unwrap();
        assert_eq!(ring.parse(&ring.render(&a)).unwrap(), a);
        let d = ring.descriptor();
        assert_eq!(
            d,
            RingDescriptor::QuotientRing {
                p: 3,
                modulus: "t^2+x*t+1".into()
            }
        );
    }

    #[test]
    fn constants_pass_through() {
        let ring = QuotientRing::adjoined_root(3).unwrap();
        let c = ring.base().parse("x+1").unwrap();
        assert_eq!(ring.reduce(&vec![c.clone()]).coeffs(), &[c]);
    }
}
