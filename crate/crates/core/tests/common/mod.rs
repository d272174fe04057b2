#![allow(dead_code)]

use frobmod_core::arith::{FpPoly, GaloisField, PolyRing, Ring};
use frobmod_core::matrix::{self, Matrix};
use frobmod_core::FrobModule;

pub fn gf(p: u64, m: usize) -> GaloisField {
    GaloisField::new(p, m).unwrap()
}

pub fn poly(p: u64, coeffs: &[u64]) -> FpPoly {
    FpPoly::new(p, coeffs.to_vec())
}

/// `n x n` matrix over `field` from element indices, row-major.
pub fn gf_matrix(field: &GaloisField, n: usize, idx: &[u128]) -> Matrix<FpPoly> {
    let order = field.order();
    let entries = idx.iter().take(n * n).map(|&i| field.element(i % order)).collect();
    Matrix::from_vec(n, n, entries).unwrap()
}

pub fn is_invertible<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    ring.is_unit(&matrix::det(ring, a).unwrap())
}

/// The module `[[0, 1], [1, x]]` over `F_p[x]`.
pub fn paper_module(p: u64, e: u32) -> FrobModule<PolyRing> {
    let r = PolyRing::new(p).unwrap();
    let a = Matrix::from_rows(vec![vec![r.zero(), r.one()], vec![r.one(), r.x()]]).unwrap();
    FrobModule::new(r, e, a).unwrap()
}

pub fn f3_example() -> FrobModule<GaloisField> {
    let f = gf(3, 1);
    let a = gf_matrix(&f, 2, &[0, 1, 1, 1]);
    FrobModule::new(f, 1, a).unwrap()
}

/// A unimodular matrix over `F_p[x]` as a product of elementary matrices.
pub fn unimodular(p: u64, n: usize, steps: &[(usize, usize, Vec<u64>)]) -> Matrix<FpPoly> {
    let ring = PolyRing::new(p).unwrap();
    let mut m = matrix::identity(&ring, n);
    for (i, j, coeffs) in steps {
        let (i, j) = (i % n, j % n);
        let mut el = matrix::identity(&ring, n);
        if i == j {
            continue;
        }
        el.set(i, j, poly(p, coeffs));
        m = matrix::mul(&ring, &m, &el).unwrap();
    }
    m
}

/// Every vector of `F^n` for a small finite field, in index order.
pub fn all_vectors(field: &GaloisField, n: usize) -> Vec<Vec<FpPoly>> {
    let order = field.order();
    let total = order.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let e = field.element(idx % order);
                    idx /= order;
                    e
                })
                .collect()
        })
        .collect()
}

pub type VectorSet = std::collections::BTreeSet<Vec<u128>>;

fn key(field: &GaloisField, v: &[FpPoly]) -> Vec<u128> {
    v.iter().map(|x| field.index_of(x)).collect()
}

/// All elements of the span, by brute force over coefficient tuples.
pub fn span_set(field: &GaloisField, n: usize, gens: &[Vec<FpPoly>]) -> VectorSet {
    let coeffs = all_vectors(field, gens.len());
    coeffs
        .iter()
        .map(|c| {
            let v: Vec<FpPoly> = (0..n)
                .map(|i| {
                    gens.iter().zip(c).fold(field.zero(), |acc, (g, ci)| field.add(&acc, &field.mul(ci, &g[i])))
                })
                .collect();
            key(field, &v)
        })
        .collect()
}

/// Every subspace of `F^n`, each as its full set of vectors.
pub fn all_subspace_sets(field: &GaloisField, n: usize) -> Vec<VectorSet> {
    let vectors = all_vectors(field, n);
    let mut found = std::collections::BTreeSet::new();
    found.insert(span_set(field, n, &[]));
    let mut frontier: Vec<Vec<Vec<FpPoly>>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for gens in &frontier {
            for v in &vectors {
                let mut g = gens.clone();
                g.push(v.clone());
                if found.insert(span_set(field, n, &g)) {
                    next.push(g);
                }
            }
        }
        frontier = next;
    }
    found.into_iter().collect()
}

/// Subspaces `W` with `F^r(w) ∈ W` for every `w ∈ W`, applying `F^r` to each vector.
pub fn oracle_stable_sets(module: &FrobModule<GaloisField>, r: u32) -> Vec<VectorSet> {
    let field = module.ring();
    let n = module.n();
    let image = |v: &Vec<u128>| -> Vec<u128> {
        let mut w: Vec<FpPoly> = v.iter().map(|&i| field.element(i)).collect();
        for _ in 0..r {
            w = module.apply(&w, 1).unwrap();
        }
        key(field, &w)
    };
    all_subspace_sets(field, n)
        .into_iter()
        .filter(|s| s.iter().all(|v| s.contains(&image(v))))
        .collect()
}

pub fn subspace_set(field: &GaloisField, w: &frobmod_core::stable::Subspace) -> VectorSet {
    span_set(field, w.ambient_dim(), w.basis())
}

/// Lengths of every maximal chain `0 ⊂ W_1 ⊂ ... ⊂ F^n` through `stable`.
pub fn maximal_chain_lengths(stable: &[VectorSet]) -> std::collections::BTreeSet<usize> {
    fn walk(stable: &[VectorSet], at: usize, depth: usize, out: &mut std::collections::BTreeSet<usize>) {
        let cur = &stable[at];
        let covers: Vec<usize> = (0..stable.len())
            .filter(|&j| stable[j].len() > cur.len() && cur.is_subset(&stable[j]))
            .filter(|&j| {
                !stable.iter().any(|m| m.len() > cur.len() && m.len() < stable[j].len() && cur.is_subset(m) && m.is_subset(&stable[j]))
            })
            .collect();
        if covers.is_empty() {
            out.insert(depth);
        }
        for j in covers {
            walk(stable, j, depth + 1, out);
        }
    }
    let zero = (0..stable.len()).min_by_key(|&i| stable[i].len()).unwrap();
    let mut out = std::collections::BTreeSet::new();
    walk(stable, zero, 0, &mut out);
    out
}
