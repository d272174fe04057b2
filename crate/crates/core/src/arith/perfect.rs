use super::{validate_prime, FpPoly, RatFunc, Ring, RingDescriptor};
use crate::error::{Error, Result};

/// An element `f(x^(1/p^level))` of the perfect closure of `F_p(x)`.
///
/// The level is minimal: `value` is not a `p`-th power unless `level = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PerfElem {
    value: RatFunc,
    level: u32,
}

impl PerfElem {
    pub fn new(value: RatFunc, level: u32) -> Self {
        let mut elem = PerfElem { value, level };
        elem.minimize();
        elem
    }

    pub fn value(&self) -> &RatFunc {
        &self.value
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    fn minimize(&mut self) {
        while self.level > 0 {
            match self.value.frobenius_root(1) {
                Some(root) => {
                    self.value = root;
                    self.level -= 1;
                }
                None => break,
            }
        }
    }

    /// Same element written at a higher level.
    fn lifted(&self, level: u32) -> RatFunc {
        debug_assert!(level >= self.level);
        self.value.frobenius(level - self.level)
    }
}

/// Truncated perfect closure `F_p(x)^(1/p^inf)`; binary operations lift
/// both operands to the larger level and re-minimize the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerfectClosure {
    p: u64,
}

impl PerfectClosure {
    pub fn new(p: u64) -> Result<Self> {
        validate_prime(p)?;
        Ok(PerfectClosure { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn from_ratfunc(&self, value: RatFunc) -> PerfElem {
        PerfElem::new(value, 0)
    }

    /// The unique `b` with `b^(p^e) = a`.
    pub fn frobenius_root(&self, a: &PerfElem, e: u32) -> PerfElem {
        PerfElem::new(a.value.clone(), a.level + e)
    }

    fn binary(&self, a: &PerfElem, b: &PerfElem, op: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> PerfElem {
        let level = a.level.max(b.level);
        PerfElem::new(op(&a.lifted(level), &b.lifted(level)), level)
    }

    fn parse_pair(&self, literal: &str) -> Result<Option<PerfElem>> {
        let s = literal.trim();
        let Some(inner) = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')) else {
            return Ok(None);
        };
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return Ok(None);
                    }
                }
                ',' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        let Some(i) = split else { return Ok(None) };
        let value = super::RatFuncField::new(self.p)?.parse(&inner[..i])?;
        let level_text = inner[i + 1..].trim();
        let level = level_text.parse::<u32>().map_err(|_| {
            Error::parse(i + 2, format!("invalid perfect-closure level `{level_text}`"))
        })?;
        Ok(Some(PerfElem::new(value, level)))
    }
}

impl Ring for PerfectClosure {
    type Elem = PerfElem;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PerfectClosure { p: self.p }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> PerfElem {
        PerfElem::new(RatFunc::from_poly(FpPoly::zero(self.p)), 0)
    }

    fn one(&self) -> PerfElem {
        PerfElem::new(RatFunc::from_poly(FpPoly::one(self.p)), 0)
    }

    fn from_int(&self, n: i64) -> PerfElem {
        PerfElem::new(RatFunc::from_poly(FpPoly::from_signed(self.p, &[n])), 0)
    }

    fn add(&self, a: &PerfElem, b: &PerfElem) -> PerfElem {
        self.binary(a, b, RatFunc::add)
    }

    fn neg(&self, a: &PerfElem) -> PerfElem {
        PerfElem {
            value: a.value.neg(),
            level: a.level,
        }
    }

    fn mul(&self, a: &PerfElem, b: &PerfElem) -> PerfElem {
        self.binary(a, b, RatFunc::mul)
    }

    fn is_field(&self) -> bool {
        true
    }

    fn is_unit(&self, a: &PerfElem) -> bool {
        !a.value.is_zero()
    }

    fn inv(&self, a: &PerfElem) -> Result<PerfElem> {
        let value = a.value.inv().ok_or(Error::DivisionByZero)?;
        Ok(PerfElem {
            value,
            level: a.level,
        })
    }

    fn div_exact(&self, a: &PerfElem, b: &PerfElem) -> Option<PerfElem> {
        self.inv(b).ok().map(|bi| self.mul(a, &bi))
    }

    fn frobenius(&self, a: &PerfElem, e: u32) -> PerfElem {
        if a.level >= e {
            PerfElem::new(a.value.clone(), a.level - e)
        } else {
            PerfElem::new(a.value.frobenius(e - a.level), 0)
        }
    }

    fn variable(&self, name: &str) -> Option<PerfElem> {
        (name == "x").then(|| PerfElem::new(RatFunc::from_poly(FpPoly::x(self.p)), 0))
    }

    fn render(&self, a: &PerfElem) -> String {
        format!("({}, {})", a.value.render("x"), a.level)
    }

    fn parse(&self, literal: &str) -> Result<PerfElem> {
        match self.parse_pair(literal)? {
            Some(elem) => Ok(elem),
            None => super::expr::evaluate(self, literal),
        }
    }
}
