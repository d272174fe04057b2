mod common;

use common::{gf, poly};
use frobmod_core::arith::{
    FpPoly, PerfElem, PerfectClosure, PolyRing, QuotElem, QuotientRing, RatFunc, RatFuncField,
    Ring,
};
use proptest::prelude::*;

fn coeffs() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..5, 0..5)
}

fn nonzero_coeffs() -> impl Strategy<Value = Vec<u64>> {
    (coeffs(), 1u64..5).prop_map(|(mut c, lead)| {
        c.push(lead);
        c
    })
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

fn ratfunc(p: u64, num: &[u64], den: &[u64]) -> RatFunc {
    let den = poly(p, den);
    let den = if den.is_zero() { FpPoly::one(p) } else { den };
    RatFunc::new(poly(p, num), den)
}

fn quot_elem(ring: &QuotientRing, p: u64, parts: &[(Vec<u64>, Vec<u64>)]) -> QuotElem {
    let t = ring.t();
    parts.iter().enumerate().fold(ring.zero(), |acc, (i, (n, d))| {
        let term = ring.mul(&ring.constant(ratfunc(p, n, d)), &ring.pow(&t, i as u64));
        ring.add(&acc, &term)
    })
}

fn check_hom<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem, e: u32) -> std::result::Result<(), TestCaseError> {
    let f = |x: &R::Elem| ring.frobenius(x, e);
    prop_assert_eq!(f(&ring.mul(a, b)), ring.mul(&f(a), &f(b)));
    prop_assert_eq!(f(&ring.add(a, b)), ring.add(&f(a), &f(b)));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn frobenius_is_a_ring_map_on_finite_fields(p in prime(), m in 1usize..4, i: u64, j: u64, e in 0u32..4) {
        let f = gf(p, m);
        let (a, b) = (f.element(i as u128 % f.order()), f.element(j as u128 % f.order()));
        check_hom(&f, &a, &b, e)?;
    }

    #[test]
    fn frobenius_is_a_ring_map_on_polynomials(p in prime(), a in coeffs(), b in coeffs(), e in 0u32..3) {
        let r = PolyRing::new(p).unwrap();
        check_hom(&r, &poly(p, &a), &poly(p, &b), e)?;
    }

    #[test]
    fn frobenius_is_a_ring_map_on_rational_functions(
        p in prime(), a in coeffs(), b in nonzero_coeffs(), c in coeffs(), d in nonzero_coeffs(), e in 0u32..3
    ) {
        let r = RatFuncField::new(p).unwrap();
        check_hom(&r, &ratfunc(p, &a, &b), &ratfunc(p, &c, &d), e)?;
    }

    #[test]
    fn frobenius_is_a_ring_map_on_the_perfect_closure(
        p in prime(), a in coeffs(), b in nonzero_coeffs(), la in 0u32..3, lb in 0u32..3, e in 0u32..3
    ) {
        let r = PerfectClosure::new(p).unwrap();
        let x = PerfElem::new(ratfunc(p, &a, &[1]), la);
        let y = PerfElem::new(ratfunc(p, &[1], &b), lb);
        check_hom(&r, &r.add(&x, &r.zero()), &r.add(&y, &r.zero()), e)?;
    }

    #[test]
    fn p_th_root_inverts_frobenius(p in prime(), m in 1usize..4, i: u64, a in coeffs(), b in nonzero_coeffs(), l in 0u32..3, e in 0u32..3) {
        let f = gf(p, m);
        let x = f.element(i as u128 % f.order());
        prop_assert_eq!(f.frobenius_root(&f.frobenius(&x, e), e), x);
        let r = PerfectClosure::new(p).unwrap();
        let y = r.add(&PerfElem::new(ratfunc(p, &a, &b), l), &r.zero());
        prop_assert_eq!(r.frobenius_root(&r.frobenius(&y, e), e), y.clone());
        prop_assert_eq!(r.frobenius(&r.frobenius_root(&y, e), e), y);
    }

    #[test]
    fn canonical_forms_are_idempotent(p in prime(), a in coeffs(), b in nonzero_coeffs(), l in 0u32..3) {
        let q = ratfunc(p, &a, &b);
        prop_assert_eq!(RatFunc::new(q.num().clone(), q.den().clone()), q.clone());
        let fr = RatFuncField::new(p).unwrap();
        prop_assert_eq!(fr.parse(&fr.render(&q)).unwrap(), q.clone());
        let pc = PerfectClosure::new(p).unwrap();
        let y = pc.add(&PerfElem::new(q, l), &pc.zero());
        prop_assert_eq!(pc.add(&y, &pc.zero()), y.clone());
        prop_assert_eq!(pc.parse(&pc.render(&y)).unwrap(), y);
    }

    #[test]
    fn rational_functions_agree_with_polynomials(p in prime(), a in coeffs(), b in coeffs()) {
        let (f, g) = (poly(p, &a), poly(p, &b));
        let r = RatFuncField::new(p).unwrap();
        let (rf, rg) = (RatFunc::from_poly(f.clone()), RatFunc::from_poly(g.clone()));
        prop_assert_eq!(r.mul(&rf, &rg), RatFunc::from_poly(f.mul(&g)));
        prop_assert_eq!(r.add(&rf, &rg), RatFunc::from_poly(f.add(&g)));
        prop_assert_eq!(r.sub(&rf, &rg), RatFunc::from_poly(f.sub(&g)));
        if !g.is_zero() {
            let (quo, rem) = f.div_rem(&g);
            let back = r.add(&r.mul(&RatFunc::from_poly(quo), &rg), &RatFunc::from_poly(rem));
            prop_assert_eq!(back, rf);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frobenius_is_a_ring_map_on_the_adjoined_root_ring(
        p in prop::sample::select(vec![2u64, 3]),
        a in prop::collection::vec((coeffs(), nonzero_coeffs()), 0..4),
        b in prop::collection::vec((coeffs(), nonzero_coeffs()), 0..4),
    ) {
        let ring = QuotientRing::adjoined_root(p).unwrap();
        let (x, y) = (quot_elem(&ring, p, &a), quot_elem(&ring, p, &b));
        check_hom(&ring, &x, &y, 1)?;
        prop_assert_eq!(ring.parse(&ring.render(&x)).unwrap(), x);
    }
}
