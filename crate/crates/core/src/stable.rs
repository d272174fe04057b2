//! Fixed points, stable subspaces, composition series and geometric length
//! of Frobenius modules over finite fields.
//!
//! Over `K = F_(p^m)` the map `v -> A_r v^[q^r]` is additive and commutes
//! with `F_p`-scalars, so fixed points and preimages are kernels of
//! `nm x nm` matrices over `F_p`. Coordinates are expanded in the power basis
//! of `K`, one block of `m` coordinates per vector entry.

use serde::Serialize;

use crate::arith::upoly::{self, UPoly};
use crate::arith::{FpPoly, GaloisField, Ring};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::fp_linalg::{self, FpMatrix};
use crate::frobmod::FrobModule;
use crate::matrix::{self, Matrix};

pub type Vector = Vec<FpPoly>;

/// A `K`-subspace of `K^n`, stored as the nonzero rows of its reduced row
/// echelon form so that equal subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vector>,
}

fn rref(field: &GaloisField, mut rows: Vec<Vector>, n: usize) -> Vec<Vector> {
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        rows[r] = rows[r].iter().map(|x| field.mul(x, &inv)).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                rows[i] = rows[i]
                    .iter()
                    .zip(&rows[r])
                    .map(|(a, b)| field.sub(a, &field.mul(&f, b)))
                    .collect();
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

impl Subspace {
    pub fn span(field: &GaloisField, n: usize, vectors: &[Vector]) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(Subspace {
            n,
            rows: rref(field, vectors.to_vec(), n),
        })
    }

    pub fn zero(n: usize) -> Self {
        Subspace { n, rows: vec![] }
    }

    pub fn full(field: &GaloisField, n: usize) -> Self {
        Subspace {
            n,
            rows: matrix::identity(field, n).columns(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis vectors.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect()
    }

    /// `v` minus its component along the echelon basis; zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, field: &GaloisField, v: &[FpPoly]) -> Vector {
        let mut out = v.to_vec();
        for (row, c) in self.rows.iter().zip(self.pivots()) {
            if out[c].is_zero() {
                continue;
            }
            let f = out[c].clone();
            out = out
                .iter()
                .zip(row)
                .map(|(a, b)| field.sub(a, &field.mul(&f, b)))
                .collect();
        }
        out
    }

    pub fn contains(&self, field: &GaloisField, v: &[FpPoly]) -> bool {
        v.len() == self.n && self.reduce(field, v).iter().all(FpPoly::is_zero)
    }

    pub fn is_subspace_of(&self, field: &GaloisField, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(field, r))
    }

    /// Ordering key: dimension, then the echelon entries in field order.
    pub fn sort_key(&self, field: &GaloisField) -> (usize, Vec<u128>) {
        let entries = self.rows.iter().flatten().map(|x| field.index_of(x)).collect();
        (self.dim(), entries)
    }

    /// Basis vectors as literal lists.
    pub fn render(&self, field: &GaloisField) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| field.render(x)).collect())
            .collect()
    }
}

fn to_fp(field: &GaloisField, v: &[FpPoly]) -> Vec<u64> {
    v.iter().flat_map(|x| field.coords(x)).collect()
}

fn from_fp(field: &GaloisField, coords: &[u64]) -> Vector {
    coords
        .chunks(field.degree())
        .map(|c| field.from_coords(c))
        .collect()
}

/// The `F_p`-matrix of `v -> A v^[q]` on `F_p^(nm)`.
fn linearize(module: &FrobModule<GaloisField>) -> FpMatrix {
    let field = module.ring();
    let (n, m) = (module.n(), field.degree());
    let mut columns = Vec::with_capacity(n * m);
    for i in 0..n {
        for k in 0..m {
            let mut b = vec![field.zero(); n];
            b[i] = FpPoly::monomial(field.p(), 1, k);
            let image = module
                .apply_with(module.matrix(), &b, 1)
                .expect("basis vector has length n");
            columns.push(to_fp(field, &image));
        }
    }
    fp_linalg::from_columns(&columns, n * m)
}

/// `F_p`-basis of the `K`-span of a subspace.
fn fp_span(field: &GaloisField, w: &Subspace) -> Vec<Vec<u64>> {
    let powers = field.power_basis();
    w.rows
        .iter()
        .flat_map(|row| {
            powers
                .iter()
                .map(move |c| to_fp(field, &row.iter().map(|x| field.mul(c, x)).collect::<Vec<_>>()))
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Solutions of `A_r v^[q^r] = v`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedSpace {
    pub r: u32,
    /// Basis over `F_p`.
    pub fp_basis: Vec<Vector>,
    /// Degree `d` of the subfield `F_(p^d)` over which the solutions form a
    /// vector space: `d = gcd(e*r, m)`.
    pub subfield_degree: usize,
    /// Basis over `F_(p^d)`.
    pub basis: Vec<Vector>,
    /// Number of fixed vectors, `p^(dim over F_p)`.
    pub count: u128,
}

impl FixedSpace {
    /// Dimension over `K` of the span of the fixed vectors.
    pub fn span_rank(&self, field: &GaloisField, n: usize) -> usize {
        Subspace::span(field, n, &self.fp_basis)
            .expect("fixed vectors have length n")
            .dim()
    }
}

pub fn fixed_points(module: &FrobModule<GaloisField>, r: u32) -> Result<FixedSpace> {
    let field = module.ring();
    let composed = module.compose_twist(r)?;
    let nm = module.n() * field.degree();
    let mut l = linearize(&composed);
    for (i, row) in l.iter_mut().enumerate() {
        row[i] = (row[i] + field.p() - 1) % field.p();
    }
    let fp_basis: Vec<Vector> = fp_linalg::kernel(&l, nm, field.p())
        .iter()
        .map(|v| from_fp(field, v))
        .collect();
    let d = gcd(composed.e() as usize, field.degree());
    let scalars = field.subfield_basis(d);
    // greedy basis over F_(p^d): keep a vector unless its F_(p^d)-multiples
    // are already in the F_p-span of the chosen ones
    let mut basis: Vec<Vector> = Vec::new();
    let mut span: Vec<Vec<u64>> = Vec::new();
    for v in &fp_basis {
        let coords = to_fp(field, v);
        let mut trial = span.clone();
        trial.push(coords);
        if fp_linalg::rank(&trial, field.p()) > span.len() {
            for c in &scalars {
                let scaled: Vector = v.iter().map(|x| field.mul(c, x)).collect();
                span.push(to_fp(field, &scaled));
            }
            basis.push(v.clone());
        }
    }
    Ok(FixedSpace {
        r,
        count: (field.p() as u128).pow(fp_basis.len() as u32),
        fp_basis,
        subfield_degree: d,
        basis,
    })
}

fn require_unit(module: &FrobModule<GaloisField>) -> Result<()> {
    if module.is_unit() {
        Ok(())
    } else {
        Err(Error::NotUnit)
    }
}

/// `T(N) = {v : A_r v^[q^r] in N}`.
pub fn descent_preimage(module: &FrobModule<GaloisField>, target: &Subspace, r: u32) -> Result<Subspace> {
    require_unit(module)?;
    let field = module.ring();
    let n = module.n();
    if target.n != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: target.n,
        });
    }
    let p = field.p();
    let nm = n * field.degree();
    let l = linearize(&module.compose_twist(r)?);
    let nb = fp_span(field, target);
    // kernel of [L | -N] projected to the first block
    let block: FpMatrix = l
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut out = row.clone();
            out.extend(nb.iter().map(|col| (p - col[i]) % p));
            out
        })
        .collect();
    let vectors: Vec<Vector> = fp_linalg::kernel(&block, nm + nb.len(), p)
        .iter()
        .map(|v| from_fp(field, &v[..nm]))
        .collect();
    Subspace::span(field, n, &vectors)
}

/// The `K`-span of `F^r(W)`.
pub fn image(module: &FrobModule<GaloisField>, w: &Subspace, r: u32) -> Result<Subspace> {
    let field = module.ring();
    let ar = module.power_matrix(r)?.matrix;
    let images = w
        .rows
        .iter()
        .map(|v| module.apply_with(&ar, v, r))
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(field, module.n(), &images)
}

/// `F^r(W) ⊆ W`, checked on the echelon basis.
pub fn is_stable(module: &FrobModule<GaloisField>, ar: &Matrix<FpPoly>, w: &Subspace, r: u32) -> bool {
    let field = module.ring();
    w.rows.iter().all(|v| {
        let fv = module.apply_with(ar, v, r).expect("vector has length n");
        w.contains(field, &fv)
    })
}

fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = q.checked_pow((n - i) as u32).map(|x| x - 1);
        let den = q.pow(i as u32 + 1) - 1;
        acc = match num.and_then(|num| acc.checked_mul(num)) {
            Some(v) => v / den,
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of subspaces of `F_Q^n`, saturating at `u128::MAX`.
pub fn subspace_count(n: usize, q: u128) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(n, k, q)))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Calls `visit` on every `k`-dimensional subspace of `K^n`, each in echelon form.
fn for_each_subspace(field: &GaloisField, n: usize, k: usize, visit: &mut dyn FnMut(Subspace)) {
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &c)| {
                let pivots = &pivots;
                (c + 1..n)
                    .filter(move |j| !pivots.contains(j))
                    .map(move |j| (row, j))
            })
            .collect();
        let total = field.order().pow(free.len() as u32);
        for idx in 0..total {
            let mut rows = vec![vec![field.zero(); n]; k];
            for (row, &c) in pivots.iter().enumerate() {
                rows[row][c] = field.one();
            }
            let mut rest = idx;
            for &(row, j) in &free {
                rows[row][j] = field.element(rest % field.order());
                rest /= field.order();
            }
            visit(Subspace { n, rows });
        }
    }
}

/// All `W` with `F^r(W) ⊆ W`, sorted by dimension then echelon entries.
pub fn enumerate_stable_subspaces(module: &FrobModule<GaloisField>, r: u32, cfg: &Config) -> Result<Vec<Subspace>> {
    let field = module.ring();
    let n = module.n();
    let needed = subspace_count(n, field.order());
    if needed > cfg.enumeration_cap {
        return Err(Error::EnumerationCapExceeded {
            needed,
            cap: cfg.enumeration_cap,
        });
    }
    let ar = module.power_matrix(r)?.matrix;
    let mut out = Vec::new();
    for k in 0..=n {
        for_each_subspace(field, n, k, &mut |w| {
            if is_stable(module, &ar, &w, r) {
                out.push(w);
            }
        });
    }
    out.sort_by_cached_key(|w| w.sort_key(field));
    Ok(out)
}

pub fn is_simple(module: &FrobModule<GaloisField>, r: u32, cfg: &Config) -> Result<bool> {
    Ok(enumerate_stable_subspaces(module, r, cfg)?.len() == 2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionSeries {
    pub r: u32,
    /// `0 = W_0 ⊂ W_1 ⊂ ... ⊂ W_l = K^n`.
    pub chain: Vec<Subspace>,
    /// Structure matrix of `F^r` on each `W_(i+1) / W_i`.
    pub quotients: Vec<Matrix<FpPoly>>,
    pub length: usize,
}

/// Quotient coordinates of `v` modulo `w`: the entries at the non-pivot
/// positions after reduction.
fn quotient_coords(field: &GaloisField, w: &Subspace, v: &[FpPoly]) -> Vector {
    let pivots = w.pivots();
    let reduced = w.reduce(field, v);
    (0..w.n)
        .filter(|c| !pivots.contains(c))
        .map(|c| reduced[c].clone())
        .collect()
}

fn lift(w: &Subspace, coords: &[FpPoly], zero: &FpPoly) -> Vector {
    let pivots = w.pivots();
    let mut it = coords.iter();
    (0..w.n)
        .map(|c| {
            if pivots.contains(&c) {
                zero.clone()
            } else {
                it.next().expect("one coordinate per non-pivot").clone()
            }
        })
        .collect()
}

/// Structure matrix of `F^r` on `upper / lower`, in the echelon basis of the
/// image of `upper` in the complement spanned by the non-pivot coordinates of
/// `lower`.
pub fn quotient_matrix(
    module: &FrobModule<GaloisField>,
    ar: &Matrix<FpPoly>,
    lower: &Subspace,
    upper: &Subspace,
    r: u32,
) -> Matrix<FpPoly> {
    let field = module.ring();
    let qn = lower.n - lower.dim();
    let images: Vec<Vector> = upper.rows.iter().map(|v| quotient_coords(field, lower, v)).collect();
    let basis = Subspace::span(field, qn, &images).expect("quotient coordinates");
    let piv = basis.pivots();
    let columns: Vec<Vector> = basis
        .rows
        .iter()
        .map(|b| {
            let fb = module
                .apply_with(ar, &lift(lower, b, &field.zero()), r)
                .expect("vector has length n");
            let coords = quotient_coords(field, lower, &fb);
            piv.iter().map(|&c| coords[c].clone()).collect()
        })
        .collect();
    Matrix::from_columns(basis.dim(), &columns).expect("square quotient")
}

/// A maximal chain of stable subspaces, built greedily from the smallest
/// stable subspace strictly above the current one.
pub fn composition_series(module: &FrobModule<GaloisField>, r: u32, cfg: &Config) -> Result<CompositionSeries> {
    let field = module.ring();
    let stable = enumerate_stable_subspaces(module, r, cfg)?;
    let ar = module.power_matrix(r)?.matrix;
    let mut chain = vec![Subspace::zero(module.n())];
    let mut quotients = Vec::new();
    while chain.last().expect("nonempty").dim() < module.n() {
        let current = chain.last().expect("nonempty");
        let next = stable
            .iter()
            .find(|w| w.dim() > current.dim() && current.is_subspace_of(field, w))
            .expect("the full space is stable")
            .clone();
        quotients.push(quotient_matrix(module, &ar, current, &next, r));
        chain.push(next);
    }
    Ok(CompositionSeries {
        r,
        length: chain.len() - 1,
        chain,
        quotients,
    })
}

/// Characteristic polynomial via reduction to Hessenberg form.
pub fn charpoly(field: &GaloisField, a: &Matrix<FpPoly>) -> UPoly<FpPoly> {
    let n = a.rows();
    let mut h: Vec<Vec<FpPoly>> = (0..n).map(|i| a.row(i)).collect();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = field.inv(&h[j + 1][j]).expect("nonzero pivot");
        for k in j + 2..n {
            if h[k][j].is_zero() {
                continue;
            }
            let f = field.mul(&h[k][j], &inv);
            for c in 0..n {
                let v = field.sub(&h[k][c], &field.mul(&f, &h[j + 1][c]));
                h[k][c] = v;
            }
            for row in h.iter_mut() {
                let v = field.add(&row[j + 1], &field.mul(&f, &row[k]));
                row[j + 1] = v;
            }
        }
    }
    // p_k = (z - h_kk) p_(k-1) - sum_i h_ik (prod_(j=i+1..k) h_(j,j-1)) p_(i-1)
    let z = upoly::var(field);
    let mut polys: Vec<UPoly<FpPoly>> = vec![upoly::constant(field, field.one())];
    for k in 0..n {
        let lin = upoly::sub(field, &z, &upoly::constant(field, h[k][k].clone()));
        let mut pk = upoly::mul(field, &lin, &polys[k]);
        let mut prod = field.one();
        for i in (0..k).rev() {
            prod = field.mul(&prod, &h[i + 1][i]);
            let c = field.mul(&h[i][k], &prod);
            pk = upoly::sub(field, &pk, &upoly::scale(field, &polys[i], &c));
        }
        polys.push(pk);
    }
    polys.pop().expect("n + 1 polynomials")
}

fn pth_root_poly(field: &GaloisField, f: &UPoly<FpPoly>) -> UPoly<FpPoly> {
    let p = field.p() as usize;
    f.iter()
        .step_by(p)
        .map(|c| field.frobenius_root(c, 1))
        .collect()
}

/// Squarefree decomposition `f = prod g_i^(m_i)` of a monic polynomial.
fn squarefree(field: &GaloisField, f: &UPoly<FpPoly>) -> Vec<(UPoly<FpPoly>, usize)> {
    let one = upoly::constant(field, field.one());
    let mut out = Vec::new();
    let mut c = upoly::gcd(field, f, &upoly::derivative(field, f));
    let mut w = upoly::div_rem(field, f, &c).expect("monic gcd").0;
    let mut i = 1;
    while w != one {
        let y = upoly::gcd(field, &w, &c);
        let fac = upoly::div_rem(field, &w, &y).expect("monic gcd").0;
        if fac != one {
            out.push((fac, i));
        }
        c = upoly::div_rem(field, &c, &y).expect("monic gcd").0;
        w = y;
        i += 1;
    }
    if c != one {
        let p = field.p() as usize;
        for (g, j) in squarefree(field, &pth_root_poly(field, &c)) {
            out.push((g, j * p));
        }
    }
    out
}

/// Number of irreducible factors over `F_Q` of a squarefree polynomial
/// whose coefficients lie in `F_Q`.
fn distinct_degree_count(field: &GaloisField, f: &UPoly<FpPoly>, q: u64) -> usize {
    let z = upoly::var(field);
    let mut rest = f.clone();
    let mut h = z.clone();
    let mut count = 0;
    let mut d = 1;
    while upoly::degree(&rest).unwrap_or(0) >= 2 * d {
        h = upoly::pow_mod(field, &h, q, &rest);
        let g = upoly::gcd(field, &upoly::sub(field, &h, &z), &rest);
        let dg = upoly::degree(&g).unwrap_or(0);
        if dg > 0 {
            count += dg / d;
            rest = upoly::div_rem(field, &rest, &g).expect("monic gcd").0;
            h = upoly::rem(field, &h, &rest);
        }
        d += 1;
    }
    if upoly::degree(&rest).unwrap_or(0) > 0 {
        count += 1;
    }
    count
}

/// Irreducible factors of `f` over `F_(p^d)`, counted with multiplicity.
pub fn factor_count(field: &GaloisField, f: &UPoly<FpPoly>, d: usize) -> usize {
    let q = field.p().pow(d as u32);
    squarefree(field, &upoly::monic(field, f))
        .iter()
        .map(|(g, mult)| distinct_degree_count(field, g, q) * mult)
        .sum()
}

/// Length of the module under `F^r` without enumerating subspaces.
///
/// With `e' = e*r`, `d = gcd(m, e')` and `g = m/d`, the power `F^g` is
/// `K`-linear with matrix `L = A'_g` whose characteristic polynomial has
/// coefficients in `F_(p^d)`; each simple constituent contributes one
/// irreducible factor over `F_(p^d)`.
pub fn length_by_charpoly(module: &FrobModule<GaloisField>, r: u32) -> Result<usize> {
    let field = module.ring();
    let composed = module.compose_twist(r)?;
    let m = field.degree();
    let d = gcd(m, composed.e() as usize);
    let l = composed.power_matrix((m / d) as u32)?.matrix;
    let chi = charpoly(field, &l);
    debug_assert!(chi.iter().all(|c| field.frobenius(c, d as u32) == *c));
    Ok(factor_count(field, &chi, d))
}

fn extension(field: &GaloisField, s: u32) -> Result<GaloisField> {
    if s == 1 {
        Ok(field.clone())
    } else {
        field.extension(s as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricLength {
    pub length: usize,
    /// Smallest `s` at which the length over `F_(p^(m*s))` reaches `n`.
    pub s: u32,
}

/// Length after extending scalars to `F_(p^(m*s))`, for the least `s` with
/// length `n`.
pub fn geometric_length(module: &FrobModule<GaloisField>, cfg: &Config) -> Result<GeometricLength> {
    require_unit(module)?;
    let field = module.ring();
    for s in 1..=cfg.s_max {
        let ext = module.extend_scalars(&extension(field, s)?)?;
        let length = length_by_charpoly(&ext, 1)?;
        if length == module.n() {
            return Ok(GeometricLength { length, s });
        }
    }
    Err(Error::WitnessBoundExceeded { s_max: cfg.s_max })
}

/// A basis of `F^r`-fixed vectors over the smallest extension that has one.
#[derive(Clone, Debug, PartialEq)]
pub struct DieudonneBasis {
    pub s: u32,
    pub field: GaloisField,
    pub module: FrobModule<GaloisField>,
    pub basis: Vec<Vector>,
}

pub fn dieudonne_basis(module: &FrobModule<GaloisField>, r: u32, cfg: &Config) -> Result<DieudonneBasis> {
    let ar = module.power_matrix(r)?.matrix;
    if !module.ring().is_unit(&matrix::det(module.ring(), &ar)?) {
        return Err(Error::NotUnit);
    }
    let n = module.n();
    for s in 1..=cfg.s_max {
        let field = extension(module.ring(), s)?;
        let ext = module.extend_scalars(&field)?;
        let fixed = fixed_points(&ext, r)?;
        let mut basis: Vec<Vector> = Vec::new();
        for v in &fixed.fp_basis {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if Subspace::span(&field, n, &trial)?.dim() == trial.len() {
                basis = trial;
            }
        }
        if basis.len() == n {
            return Ok(DieudonneBasis {
                s,
                field,
                module: ext,
                basis,
            });
        }
    }
    Err(Error::WitnessBoundExceeded { s_max: cfg.s_max })
}
