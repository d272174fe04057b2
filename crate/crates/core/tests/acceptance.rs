//! Acceptance criteria 1-12, one PASS/FAIL line each.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{f3_example, gf, gf_matrix, is_invertible, oracle_stable_sets, paper_module, poly, subspace_set};
use frobmod_core::arith::{FpPoly, GaloisField, RatFunc, RatFuncField, Ring};
use frobmod_core::certify;
use frobmod_core::frobmod::coefficient_sequence;
use frobmod_core::matrix::{self, Matrix};
use frobmod_core::stable::{self, Subspace};
use frobmod_core::submodule::{self, frob_image, Submodule};
use frobmod_core::{Config, FrobModule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let over = limit.filter(|&l| elapsed > l);
    let (ok, detail) = match (result, over) {
        (Ok(d), None) => (true, d),
        (Ok(d), Some(l)) => (false, format!("{d}; took longer than {:.0} s", l.as_secs_f64())),
        (Err(d), _) => (false, d),
    };
    println!(
        "{} criterion {id:>2} {name} [{:.2} s]: {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn random_unit(rng: &mut ChaCha8Rng, field: &GaloisField, n: usize) -> FrobModule<GaloisField> {
    loop {
        let idx: Vec<u128> = (0..n * n).map(|_| rng.gen_range(0..field.order())).collect();
        let a = gf_matrix(field, n, &idx);
        if is_invertible(field, &a) {
            return FrobModule::new(field.clone(), 1, a).unwrap();
        }
    }
}

fn geometric_sum(q: u128, from: u32, to: i64) -> u128 {
    (from as i64..=to).map(|i| q.pow(i as u32)).sum()
}

fn c1() -> Outcome {
    let m = paper_module(3, 1);
    let expected = Matrix::from_rows(vec![
        vec![poly(3, &[1]), poly(3, &[0, 0, 0, 1])],
        vec![poly(3, &[0, 1]), poly(3, &[1, 0, 0, 0, 1])],
    ])
    .unwrap();
    let a2 = m.power_matrix(2).map_err(|e| e.to_string())?.matrix;
    ensure(a2 == expected, || format!("A_2 = {}", matrix::render(m.ring(), &a2)))?;
    Ok("A_2 = [1, x^3; x, x^4+1]".into())
}

fn c2() -> Outcome {
    for p in [2u64, 3, 5] {
        let m = paper_module(p, 1);
        let f = m.ring();
        for r in 1..=6 {
            let d = matrix::det(f, &m.power_matrix(r).unwrap().matrix).unwrap();
            let sign = if r % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            ensure(d == sign, || format!("p={p} r={r}: det = {}", f.render(&d)))?;
        }
    }
    Ok("det A_r = (-1)^r for r <= 6, p in {2, 3, 5}".into())
}

fn c3() -> Outcome {
    for p in [2u64, 3] {
        for r in 1..=8i64 {
            let a = coefficient_sequence(p, 1, r).unwrap();
            let formula = geometric_sum(p as u128, 0, r - 1);
            ensure(a.deg().map(|d| d as u128) == Some(formula), || format!("p={p} r={r}: deg {:?} vs {formula}", a.deg()))?;
        }
        let m = paper_module(p, 1);
        for r in 1..=5u32 {
            let ar = m.power_matrix(r).unwrap().matrix;
            ensure(*ar.get(1, 1) == coefficient_sequence(p, 1, r as i64).unwrap(), || {
                format!("p={p} r={r}: bottom-right entry of A_r differs from a_r")
            })?;
        }
    }
    Ok("deg a_r = 1 + q + ... + q^(r-1) for r <= 8, p in {2, 3}".into())
}

fn c4() -> Outcome {
    let cfg = Config::default();
    let m = f3_example();
    let f = m.ring().clone();
    ensure(stable::is_simple(&m, 1, &cfg).unwrap(), || "not simple under F".into())?;
    let twisted = m.compose_twist(4).unwrap();
    let minus = matrix::scale(&f, &f.neg(&f.one()), &matrix::identity(&f, 2));
    ensure(*twisted.matrix() == minus, || format!("A_4 = {}", matrix::render(&f, twisted.matrix())))?;
    ensure(!stable::is_simple(&m, 4, &cfg).unwrap(), || "simple under F^4".into())?;
    let f9 = gf(3, 2);
    let over_f9 = m.extend_scalars(&f9).unwrap();
    let simple9 = stable::is_simple(&over_f9, 1, &cfg).unwrap();
    let first = (1..=4usize)
        .map(|s| (s, stable::length_by_charpoly(&m.extend_scalars(&f.extension(s).unwrap()).unwrap(), 1).unwrap()))
        .find(|&(_, l)| l > 1);
    ensure(!simple9, || {
        format!(
            "simple under F^1, F^4 = -id and not simple under F^4 all hold, but over F_9 the module is still simple \
             (F_9-stable subspaces: {}); the first extension with a stable line is F_3^{} (length {})",
            stable::enumerate_stable_subspaces(&over_f9, 1, &cfg).unwrap().len(),
            first.map(|x| x.0).unwrap_or(0),
            first.map(|x| x.1).unwrap_or(0)
        )
    })?;
    Ok("simple under F, F^4 = -id, not simple under F^4, not simple over F_9".into())
}

fn c5() -> Outcome {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    let mut worst = 0;
    for i in 0..100 {
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let n = rng.gen_range(1..=3);
        let m = random_unit(&mut rng, &gf(p, 1), n);
        let outcome = stable::geometric_length(&m, &cfg).and_then(|g| {
            let db = stable::dieudonne_basis(&m, 1, &cfg)?;
            let fixed = db.basis.iter().all(|v| db.module.apply(v, 1).unwrap() == *v);
            let spans = Subspace::span(&db.field, n, &db.basis)?.dim() == n;
            Ok((g, fixed && spans))
        });
        match outcome {
            Ok((g, true)) if g.length == n => worst = worst.max(g.s),
            Ok((g, _)) => failures.push(format!("#{i} p={p} n={n}: length {} at s={}", g.length, g.s)),
            Err(e) => {
                let wide = Config { s_max: 26, ..Config::default() };
                let needed = stable::geometric_length(&m, &wide)
                    .map(|g| format!("length {} first reached at s = {}", g.length, g.s))
                    .unwrap_or_else(|e| e.to_string());
                failures.push(format!(
                    "#{i} p={p} n={n} A=[{}]: {e}; with s up to 26: {needed}",
                    matrix::render(m.ring(), m.matrix())
                ))
            }
        }
    }
    ensure(failures.is_empty(), || {
        format!(
            "{} of 100 modules fail (largest s among passing: {worst}); first: {}",
            failures.len(),
            failures[0]
        )
    })?;
    Ok(format!("100 modules reach length n with a fixed basis, s <= {worst}"))
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    for field in [gf(3, 1), gf(2, 2)] {
        let subspaces = common::all_subspace_sets(&field, 2);
        let mut all: Vec<Subspace> = std::iter::once(Subspace::zero(2))
            .chain(common::all_vectors(&field, 2).into_iter().map(|v| Subspace::span(&field, 2, &[v]).unwrap()))
            .chain(std::iter::once(Subspace::full(&field, 2)))
            .collect::<std::collections::HashSet<_>>()
            .into_iter()
            .collect();
        all.sort_by_key(|w| w.sort_key(&field));
        ensure(all.len() == subspaces.len(), || "subspace listing incomplete".into())?;
        for _ in 0..20 {
            let m = random_unit(&mut rng, &field, 2);
            for w in &all {
                let t = stable::descent_preimage(&m, w, 1).unwrap();
                ensure(stable::image(&m, &t, 1).unwrap() == *w, || "F(T(N)) != N".into())?;
                let img = stable::image(&m, w, 1).unwrap();
                ensure(stable::descent_preimage(&m, &img, 1).unwrap() == *w, || "T(F(N)) != N".into())?;
                checked += 1;
            }
        }
    }
    Ok(format!("F(T(N)) = N = T(F(N)) on {checked} (module, subspace) pairs"))
}

fn c7() -> Outcome {
    for p in [2u64, 3] {
        for r in 1..=4 {
            ensure(certify::verify_br(p, 1, r).unwrap(), || format!("p={p} r={r}: verify_br false"))?;
            let (s_r, t_r) = certify::closed_forms(p, 1, r).unwrap();
            let field = RatFuncField::new(p).unwrap();
            let module = paper_module(p, 1).extend_scalars(&field).unwrap();
            let c = certify::basis_change(p, 1, r).unwrap().map(|x| RatFunc::from_poly(x.clone()));
            let b = module.change_basis(&c, r).map_err(|e| format!("p={p} r={r}: {e}"))?;
            let expected = Matrix::from_rows(vec![
                vec![field.zero(), RatFunc::from_poly(s_r)],
                vec![field.one(), RatFunc::from_poly(t_r)],
            ])
            .unwrap();
            ensure(b == expected, || format!("p={p} r={r}: B_r = {}", matrix::render(module.ring(), &b)))?;
        }
    }
    Ok("B_r = [[0, s_r], [1, t_r]] for r <= 4, p in {2, 3}".into())
}

fn c8() -> Outcome {
    for p in [3u64, 2] {
        let certs = certify::simplicity_certificate(p, 1, 4).unwrap();
        ensure(certs.len() == 4, || format!("p={p}: {} certificates", certs.len()))?;
        for c in &certs {
            ensure(c.verdict && c.checks.degree_divisibility && c.checks.s_nonzero, || {
                format!("p={p} r={}: {:?}", c.r, c.checks)
            })?;
        }
    }
    Ok("8 certificates, all verdicts true".into())
}

fn c9() -> Outcome {
    for p in [2u64, 3] {
        let rep = certify::adjoined_root_check(p).unwrap();
        ensure(rep.passed(), || format!("p={p}: {rep:?}"))?;
    }
    Ok("(alpha^p, alpha) fixed by F for p in {2, 3}".into())
}

fn c10() -> Outcome {
    let cfg = Config::default();
    for p in [2u64, 3] {
        let m = paper_module(p, 1);
        let report = submodule::root_from_generators(&m, &[vec![FpPoly::one(p), FpPoly::zero(p)]], &cfg).unwrap();
        ensure(report.root == Submodule::full(p, 2) && report.m_used == 2 && report.verified, || {
            format!("p={p}: m_used {} verified {}", report.m_used, report.verified)
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..100 {
        let p = if i % 2 == 0 { 2 } else { 3 };
        let m = paper_module(p, 1);
        let mut gens = || -> Vec<Vec<FpPoly>> {
            (0..rng.gen_range(1..=2))
                .map(|_| {
                    (0..2)
                        .map(|_| {
                            let len = rng.gen_range(0..=3);
                            poly(p, &(0..len).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>())
                        })
                        .collect()
                })
                .collect()
        };
        let n1 = Submodule::new(p, 2, &gens()).unwrap();
        let n2 = Submodule::new(p, 2, &gens()).unwrap();
        let lhs = frob_image(&m, &n1.intersect(&n2).unwrap(), 1).unwrap();
        let rhs = frob_image(&m, &n1, 1).unwrap().intersect(&frob_image(&m, &n2, 1).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("pair {i}: F(N1 ∩ N2) != F(N1) ∩ F(N2)"))?;
    }
    Ok("root is the full module with m_used = 2; F commutes with ∩ on 100 pairs".into())
}

fn c11() -> Outcome {
    let cfg = Config::default();
    let mut modules = 0;
    for p in [2u64, 3] {
        let field = gf(p, 1);
        for idx in 0..(p as u128).pow(4) {
            let digits: Vec<u128> = (0..4).map(|k| idx / (p as u128).pow(k) % p as u128).collect();
            let a = gf_matrix(&field, 2, &digits);
            if !is_invertible(&field, &a) {
                continue;
            }
            let m = FrobModule::new(field.clone(), 1, a).unwrap();
            modules += 1;
            for r in 1..=4 {
                let mut ours: Vec<_> = stable::enumerate_stable_subspaces(&m, r, &cfg)
                    .unwrap()
                    .iter()
                    .map(|w| subspace_set(&field, w))
                    .collect();
                ours.sort();
                let mut oracle = oracle_stable_sets(&m, r);
                oracle.sort();
                ensure(ours == oracle, || format!("p={p} r={r} A={:?}", m.matrix()))?;
            }
        }
    }
    ensure(modules == 6 + 48, || format!("{modules} invertible matrices"))?;
    Ok("agreement on all 54 invertible 2x2 matrices over F_2 and F_3, r <= 4".into())
}

fn c12() -> Outcome {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let field = gf(3, 1);
    for i in 0..50 {
        let n = rng.gen_range(1..=3);
        let m = random_unit(&mut rng, &field, n);
        let l1 = stable::composition_series(&m, 1, &cfg).unwrap().length;
        let doubled = m.compose_twist(2).unwrap();
        let l2 = stable::composition_series(&doubled, 1, &cfg).unwrap().length;
        ensure(l1 <= l2 && l2 <= n, || format!("module {i}: lengths {l1}, {l2}, n = {n}"))?;
        ensure(stable::length_by_charpoly(&doubled, 1).unwrap() == l2, || format!("module {i}: char poly length differs"))?;
    }
    Ok("length(e) <= length(2e) <= n on 50 modules".into())
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        run(1, "A_2 identity", secs(1), c1),
        run(2, "det A_r = (-1)^r", secs(10), c2),
        run(3, "degree of a_r", None, c3),
        run(4, "F_3 example simplicity", secs(1), c4),
        run(5, "geometric length = rank", secs(60), c5),
        run(6, "descent inverse", None, c6),
        run(7, "B_r identity", secs(30), c7),
        run(8, "simplicity certificates", secs(30), c8),
        run(9, "adjoined root", secs(5), c9),
        run(10, "root construction", secs(60), c10),
        run(11, "brute-force oracle", None, c11),
        run(12, "length monotonicity", None, c12),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed} of {} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
