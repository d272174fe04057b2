use super::fp_poly::{least_irreducible, mod_inv};
use super::{validate_prime, FpPoly, Ring, RingDescriptor};
use crate::error::{Error, Result};

/// The finite field `F_p[u]/(f)` with `f` monic irreducible of degree `m`.
///
/// `m = 1` gives the prime field (modulus `u`). Elements are residues of
/// degree below `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: u64,
    m: usize,
    modulus: FpPoly,
}

impl GaloisField {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `F_{p^m}` with the lexicographically least irreducible modulus.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        validate_prime(p)?;
        if m == 0 {
            return Err(Error::Validation("extension degree must be at least 1".into()));
        }
        if m > 64 {
            return Err(Error::Validation(format!("extension degree {m} is too large")));
        }
        Ok(GaloisField {
            p,
            m,
            modulus: least_irreducible(p, m),
        })
    }

    pub fn with_modulus(modulus: FpPoly) -> Result<Self> {
        let p = modulus.characteristic();
        validate_prime(p)?;
        if !modulus.is_monic() {
            return Err(Error::Validation("field modulus must be monic".into()));
        }
        if !modulus.is_irreducible() {
            return Err(Error::Validation(format!(
                "field modulus {} is not irreducible",
                modulus.render("u")
            )));
        }
        let m = modulus.deg().unwrap_or(0);
        Ok(GaloisField { p, m, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    /// Number of elements, `p^m`.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.m as u32)
    }

    /// `F_{p^(m*s)}` with its own least irreducible modulus.
    pub fn extension(&self, s: usize) -> Result<GaloisField> {
        GaloisField::new(self.p, self.m * s)
    }

    /// Power-basis coordinates over `F_p`, length `m`.
    pub fn coords(&self, a: &FpPoly) -> Vec<u64> {
        (0..self.m).map(|i| a.coeff(i)).collect()
    }

    pub fn from_coords(&self, coords: &[u64]) -> FpPoly {
        FpPoly::new(self.p, coords.to_vec())
    }

    /// Position of an element in the enumeration order `0..p^m`.
    pub fn index_of(&self, a: &FpPoly) -> u128 {
        (0..self.m)
            .rev()
            .fold(0u128, |acc, i| acc * self.p as u128 + a.coeff(i) as u128)
    }

    pub fn element(&self, mut index: u128) -> FpPoly {
        let p = self.p as u128;
        let coeffs = (0..self.m)
            .map(|_| {
                let c = (index % p) as u64;
                index /= p;
                c
            })
            .collect();
        FpPoly::new(self.p, coeffs)
    }

    pub fn elements(&self) -> impl Iterator<Item = FpPoly> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// The generator `u` of the power basis.
    pub fn generator(&self) -> FpPoly {
        FpPoly::x(self.p).rem(&self.modulus)
    }

    /// Inverse Frobenius: the unique `b` with `b^(p^e) = a`.
    pub fn frobenius_root(&self, a: &FpPoly, e: u32) -> FpPoly {
        let m = self.m as u32;
        self.frobenius(a, (m - e % m) % m)
    }

    /// `F_p`-basis of the subfield `F_(p^d) = {y : y^(p^d) = y}`, computed as
    /// the kernel of the `F_p`-linear map `y -> y^(p^d) - y`.
    pub fn subfield_basis(&self, d: usize) -> Vec<FpPoly> {
        let basis = self.power_basis();
        let cols: Vec<Vec<u64>> = basis
            .iter()
            .map(|b| self.coords(&self.sub(&self.frobenius(b, d as u32), b)))
            .collect();
        let matrix = crate::fp_linalg::from_columns(&cols, self.m);
        crate::fp_linalg::kernel(&matrix, self.m, self.p)
            .iter()
            .map(|v| self.from_coords(v))
            .collect()
    }

    /// `F_p`-combination of `basis` with coefficients the base-`p` digits of `index`.
    pub fn combination(&self, basis: &[FpPoly], mut index: u128) -> FpPoly {
        let p = self.p as u128;
        basis.iter().fold(self.zero(), |acc, b| {
            let c = (index % p) as u64;
            index /= p;
            self.add(&acc, &b.scale(c))
        })
    }

    /// `F_p`-basis `1, u, ..., u^(m-1)`.
    pub fn power_basis(&self) -> Vec<FpPoly> {
        (0..self.m).map(|i| FpPoly::monomial(self.p, 1, i)).collect()
    }
}

impl Ring for GaloisField {
    type Elem = FpPoly;

    fn descriptor(&self) -> RingDescriptor {
        if self.m == 1 {
            RingDescriptor::PrimeField { p: self.p }
        } else {
            RingDescriptor::ExtField {
                p: self.p,
                m: self.m,
                modulus: self.modulus.render("u"),
            }
        }
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
        if self.m == 1 {
            return FpPoly::constant(self.p, a.coeff(0) * b.coeff(0));
        }
        a.mul(b).rem(&self.modulus)
    }

    fn is_field(&self) -> bool {
        true
    }

    fn is_unit(&self, a: &FpPoly) -> bool {
        !a.is_zero()
    }

    fn inv(&self, a: &FpPoly) -> Result<FpPoly> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            return Ok(FpPoly::constant(self.p, mod_inv(a.coeff(0), self.p)));
        }
        let (_, s, _) = a.ext_gcd(&self.modulus);
        Ok(s.rem(&self.modulus))
    }

    fn div_exact(&self, a: &FpPoly, b: &FpPoly) -> Option<FpPoly> {
        self.inv(b).ok().map(|bi| self.mul(a, &bi))
    }

    fn frobenius(&self, a: &FpPoly, e: u32) -> FpPoly {
        if self.m == 1 {
            return a.clone();
        }
        let e = e % self.m as u32;
        super::frobenius_by_powering(self, a, e)
    }

    fn variable(&self, name: &str) -> Option<FpPoly> {
        (name == "u").then(|| self.generator())
    }

    fn render(&self, a: &FpPoly) -> String {
        a.render("u")
    }
}
