//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficients are stored lowest degree first and always reduced into
//! `0..p`; trailing zeros are stripped so that the zero polynomial has an
//! empty coefficient vector.

use std::fmt;

use super::degree::Degree;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    /// Builds a polynomial from signed coefficients, reducing them mod p.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let m = p as i64;
        FpPoly::new(p, coeffs.iter().map(|c| c.rem_euclid(m) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    /// The indeterminate itself.
    pub fn x(p: u64) -> Self {
        FpPoly::monomial(p, 1, 1)
    }

    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        FpPoly::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            len => Degree::Finite(len as u64 - 1),
        }
    }

    /// Degree as an index; the zero polynomial reports `None`.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (self.coeff(i) + other.coeff(i)) % p)
            .collect();
        FpPoly::new(p, coeffs)
    }

    pub fn neg(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p;
        let c = c % p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| a * c % p).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        FpPoly { p: self.p, coeffs }
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        // iterate over the sparser operand; Frobenius images are mostly zero
        let (sparse, dense) = if self.nonzero_terms() <= other.nonzero_terms() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in sparse.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in dense.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = (out[i + j] + a * b) % p;
                }
            }
        }
        FpPoly::new(p, out)
    }

    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn pow(&self, mut n: u64) -> FpPoly {
        let mut acc = FpPoly::one(self.p);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let inv_lead = mod_inv(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * inv_lead % p;
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[k + j] = (rem[k + j] + p - c * d % p) % p;
                }
            }
        }
        rem.truncate(dd);
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &FpPoly) -> Option<FpPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &FpPoly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inv(self.leading(), self.p))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = mod_inv(r0.leading(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    /// `self^(p^e)`; over `F_p` this spreads the exponents by `p^e`.
    pub fn frobenius(&self, e: u32) -> FpPoly {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let step = (self.p as usize).pow(e);
        let mut coeffs = vec![0u64; (self.coeffs.len() - 1) * step + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c;
        }
        FpPoly { p: self.p, coeffs }
    }

    /// True if every exponent with a nonzero coefficient is divisible by `p^e`.
    pub fn is_frobenius_power(&self, e: u32) -> bool {
        let step = (self.p as usize).pow(e);
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % step == 0)
    }

    /// Inverse of [`FpPoly::frobenius`]; `None` if not a `p^e`-th power.
    pub fn frobenius_root(&self, e: u32) -> Option<FpPoly> {
        if !self.is_frobenius_power(e) {
            return None;
        }
        let step = (self.p as usize).pow(e);
        let coeffs = self.coeffs.iter().step_by(step).copied().collect();
        Some(FpPoly::new(self.p, coeffs))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect();
        FpPoly::new(p, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * (x % p) + c) % p)
    }

    /// Trial division against every monic polynomial of degree `<= deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.deg() else { return false };
        if d == 0 {
            return false;
        }
        for k in 1..=d / 2 {
            let count = self.p.pow(k as u32);
            for idx in 0..count {
                let divisor = monic_from_index(self.p, k, idx);
                if divisor.divides(self) {
                    return false;
                }
            }
        }
        true
    }

    /// Renders the polynomial with the given indeterminate name, highest
    /// degree first: `2*x^3+x+1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        terms.join("+")
    }

    /// Number of terms; used to decide on parentheses when rendering.
    pub fn is_monomial(&self) -> bool {
        self.nonzero_terms() <= 1
    }
}

/// The monic polynomial of degree `k` whose lower coefficients are the
/// base-`p` digits of `idx`, with the `x^(k-1)` coefficient most significant.
pub fn monic_from_index(p: u64, k: usize, mut idx: u64) -> FpPoly {
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    for i in 0..k {
        coeffs[i] = idx % p;
        idx /= p;
    }
    FpPoly::new(p, coeffs)
}

/// Lexicographically least monic irreducible polynomial of degree `m`,
/// comparing coefficients from `x^(m-1)` down to the constant term.
pub fn least_irreducible(p: u64, m: usize) -> FpPoly {
    assert!(m >= 1);
    if m == 1 {
        return FpPoly::x(p);
    }
    (0..p.pow(m as u32))
        .map(|idx| monic_from_index(p, m, idx))
        .find(FpPoly::is_irreducible)
        .expect("irreducible polynomials exist in every degree")
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[p={}]({})", self.p, self.render("x"))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn freshmans_dream() {
        let f = FpPoly::new(3, vec![1, 1]);
        assert_eq!(f.frobenius(1), FpPoly::new(3, vec![1, 0, 0, 1]));
        assert_eq!(f.frobenius(1), f.pow(3));
        let g = FpPoly::new(5, vec![2, 0, 3, 1]);
        assert_eq!(g.frobenius(2), g.pow(25));
    }

    #[test]
    fn degree_of_zero_is_minus_infinity() {
        assert_eq!(FpPoly::zero(7).degree(), Degree::NegInfinity);
        assert_eq!(FpPoly::new(3, vec![1, 0, 0, 0, 1]).degree(), Degree::Finite(4));
    }

    #[test]
    fn division_identity() {
        let a = FpPoly::new(5, vec![1, 2, 3, 4, 0, 1]);
        let b = FpPoly::new(5, vec![3, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_and_bezout() {
        let p = 7;
        let f = FpPoly::new(p, vec![1, 1]).mul(&FpPoly::new(p, vec![2, 0, 1]));
        let g = FpPoly::new(p, vec![1, 1]).mul(&FpPoly::new(p, vec![3, 1]));
        let (d, s, t) = f.ext_gcd(&g);
        assert_eq!(d, FpPoly::new(p, vec![1, 1]));
        assert_eq!(s.mul(&f).add(&t.mul(&g)), d);
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(3, 2), FpPoly::new(3, vec![1, 0, 1]));
        assert_eq!(least_irreducible(2, 2), FpPoly::new(2, vec![1, 1, 1]));
        assert_eq!(least_irreducible(2, 3), FpPoly::new(2, vec![1, 1, 0, 1]));
        assert!(!FpPoly::new(3, vec![1, 0, 0, 1]).is_irreducible());
    }

    #[test]
    fn frobenius_root_inverts() {
        let f = FpPoly::new(3, vec![0, 1, 1]);
        assert_eq!(f.frobenius(1).frobenius_root(1), Some(f.clone()));
        assert_eq!(f.frobenius_root(1), None);
    }

    #[test]
    fn derivative_kills_pth_powers() {
        let f = FpPoly::new(3, vec![2, 1, 1]).frobenius(1);
        assert!(f.derivative().is_zero());
        assert_eq!(FpPoly::new(3, vec![0, 0, 1]).derivative(), FpPoly::new(3, vec![0, 2]));
    }

    #[test]
    fn rendering() {
        assert_eq!(FpPoly::new(3, vec![1, 2, 0, 0, 1]).render("x"), "x^4+2*x+1");
        assert_eq!(FpPoly::zero(3).render("t"), "0");
    }
}
