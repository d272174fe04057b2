//! Univariate polynomials with coefficients in an arbitrary [`Ring`].
//!
//! A polynomial is a coefficient vector, lowest degree first, with no
//! trailing zeros. Division-based routines require the leading coefficient
//! of the divisor to be a unit.

use super::Ring;

pub type UPoly<E> = Vec<E>;

pub fn trim<R: Ring>(ring: &R, mut f: UPoly<R::Elem>) -> UPoly<R::Elem> {
    while f.last().is_some_and(|c| ring.is_zero(c)) {
        f.pop();
    }
    f
}

pub fn degree<E>(f: &UPoly<E>) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn constant<R: Ring>(ring: &R, c: R::Elem) -> UPoly<R::Elem> {
    trim(ring, vec![c])
}

/// `z`, the indeterminate.
pub fn var<R: Ring>(ring: &R) -> UPoly<R::Elem> {
    vec![ring.zero(), ring.one()]
}

pub fn add<R: Ring>(ring: &R, f: &UPoly<R::Elem>, g: &UPoly<R::Elem>) -> UPoly<R::Elem> {
    let len = f.len().max(g.len());
    let zero = ring.zero();
    let out = (0..len)
        .map(|i| ring.add(f.get(i).unwrap_or(&zero), g.get(i).unwrap_or(&zero)))
        .collect();
    trim(ring, out)
}

pub fn neg<R: Ring>(ring: &R, f: &UPoly<R::Elem>) -> UPoly<R::Elem> {
    f.iter().map(|c| ring.neg(c)).collect()
}

pub fn sub<R: Ring>(ring: &R, f: &UPoly<R::Elem>, g: &UPoly<R::Elem>) -> UPoly<R::Elem> {
    add(ring, f, &neg(ring, g))
}

pub fn scale<R: Ring>(ring: &R, f: &UPoly<R::Elem>, c: &R::Elem) -> UPoly<R::Elem> {
    trim(ring, f.iter().map(|a| ring.mul(a, c)).collect())
}

pub fn mul<R: Ring>(ring: &R, f: &UPoly<R::Elem>, g: &UPoly<R::Elem>) -> UPoly<R::Elem> {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![ring.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if ring.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            if !ring.is_zero(b) {
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
            }
        }
    }
    trim(ring, out)
}

/// Euclidean division; `None` if `g` is zero or its leading coefficient is
/// not a unit.
pub fn div_rem<R: Ring>(
    ring: &R,
    f: &UPoly<R::Elem>,
    g: &UPoly<R::Elem>,
) -> Option<(UPoly<R::Elem>, UPoly<R::Elem>)> {
    let dg = degree(g)?;
    let lead_inv = ring.inv(&g[dg]).ok()?;
    if f.len() <= dg {
        return Some((vec![], f.clone()));
    }
    let mut rem = f.clone();
    let mut quot = vec![ring.zero(); f.len() - dg];
    for k in (0..quot.len()).rev() {
        let c = ring.mul(&rem[k + dg], &lead_inv);
        if ring.is_zero(&c) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            rem[k + j] = ring.sub(&rem[k + j], &ring.mul(&c, b));
        }
        quot[k] = c;
    }
    rem.truncate(dg);
    Some((trim(ring, quot), trim(ring, rem)))
}

pub fn rem<R: Ring>(ring: &R, f: &UPoly<R::Elem>, g: &UPoly<R::Elem>) -> UPoly<R::Elem> {
    div_rem(ring, f, g).expect("divisor with unit leading coefficient").1
}

pub fn monic<R: Ring>(ring: &R, f: &UPoly<R::Elem>) -> UPoly<R::Elem> {
    match f.last() {
        None => vec![],
        Some(lead) => {
            let inv = ring.inv(lead).expect("field coefficients");
            scale(ring, f, &inv)
        }
    }
}

/// Monic gcd over a field.
pub fn gcd<R: Ring>(ring: &R, f: &UPoly<R::Elem>, g: &UPoly<R::Elem>) -> UPoly<R::Elem> {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_empty() {
        let r = rem(ring, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    monic(ring, &a)
}

/// `(g, s, t)` with `s*f + t*h = g` and `g` monic, over a field.
pub fn ext_gcd<R: Ring>(
    ring: &R,
    f: &UPoly<R::Elem>,
    h: &UPoly<R::Elem>,
) -> (UPoly<R::Elem>, UPoly<R::Elem>, UPoly<R::Elem>) {
    let one = constant(ring, ring.one());
    let (mut r0, mut r1) = (f.clone(), h.clone());
    let (mut s0, mut s1) = (one.clone(), vec![]);
    let (mut t0, mut t1) = (vec![], one);
    while !r1.is_empty() {
        let (q, r) = div_rem(ring, &r0, &r1).expect("field coefficients");
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(ring, &s0, &mul(ring, &q, &s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(ring, &t0, &mul(ring, &q, &t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(lead) => {
            let k = ring.inv(lead).expect("field coefficients");
            (
                scale(ring, &r0, &k),
                scale(ring, &s0, &k),
                scale(ring, &t0, &k),
            )
        }
    }
}

pub fn derivative<R: Ring>(ring: &R, f: &UPoly<R::Elem>) -> UPoly<R::Elem> {
    let out = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ring.mul(&ring.from_int(i as i64), c))
        .collect();
    trim(ring, out)
}

/// `f^n mod g`.
pub fn pow_mod<R: Ring>(
    ring: &R,
    f: &UPoly<R::Elem>,
    mut n: u64,
    g: &UPoly<R::Elem>,
) -> UPoly<R::Elem> {
    let mut acc = rem(ring, &constant(ring, ring.one()), g);
    let mut base = rem(ring, f, g);
    while n > 0 {
        if n & 1 == 1 {
            acc = rem(ring, &mul(ring, &acc, &base), g);
        }
        n >>= 1;
        if n > 0 {
            base = rem(ring, &mul(ring, &base, &base), g);
        }
    }
    acc
}

pub fn eval<R: Ring>(ring: &R, f: &UPoly<R::Elem>, at: &R::Elem) -> R::Elem {
    f.iter()
        .rev()
        .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, at), c))
}
