//! Finitely generated submodules of `F_p[x]^n` and roots of unit Frobenius
//! modules over `F_p[x]`.
//!
//! Submodules are kept in column Hermite normal form: each column's pivot is
//! its topmost nonzero entry, pivot rows strictly increase from left to
//! right, pivots are monic, and every other column's entry in a pivot row has
//! smaller degree than that pivot.

use serde::Serialize;

use crate::arith::{FpPoly, PolyRing};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::frobmod::FrobModule;
use crate::matrix::{self, Matrix};

pub type Column = Vec<FpPoly>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    p: u64,
    n: usize,
    columns: Vec<Column>,
}

struct Hnf {
    /// Nonzero columns in normal form.
    columns: Vec<Column>,
    /// Columns of the unimodular transform that map to zero.
    kernel: Vec<Column>,
}

fn axpy(target: &mut Column, factor: &FpPoly, source: &Column) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t = t.sub(&factor.mul(s));
        }
    }
}

/// Column Hermite normal form of `cols` (each of length `n`), tracking the
/// unimodular transform.
fn hnf(p: u64, n: usize, mut cols: Vec<Column>) -> Hnf {
    let k = cols.len();
    let mut u: Vec<Column> = (0..k)
        .map(|j| (0..k).map(|i| FpPoly::constant(p, (i == j) as u64)).collect())
        .collect();
    let mut slot = 0;
    for row in 0..n {
        if slot == k {
            break;
        }
        loop {
            let Some(best) = (slot..k)
                .filter(|&j| !cols[j][row].is_zero())
                .min_by_key(|&j| cols[j][row].deg())
            else {
                break;
            };
            cols.swap(slot, best);
            u.swap(slot, best);
            let mut done = true;
            for j in slot + 1..k {
                if cols[j][row].is_zero() {
                    continue;
                }
                let (q, r) = cols[j][row].div_rem(&cols[slot][row]);
                let (pc, pu) = (cols[slot].clone(), u[slot].clone());
                axpy(&mut cols[j], &q, &pc);
                axpy(&mut u[j], &q, &pu);
                done &= r.is_zero();
            }
            if done {
                break;
            }
        }
        if cols.get(slot).is_some_and(|c| !c[row].is_zero()) {
            let lead = cols[slot][row].leading();
            let inv = crate::arith::fp_poly::mod_inv(lead, p);
            cols[slot] = cols[slot].iter().map(|x| x.scale(inv)).collect();
            u[slot] = u[slot].iter().map(|x| x.scale(inv)).collect();
            let (pc, pu) = (cols[slot].clone(), u[slot].clone());
            for j in 0..slot {
                let q = cols[j][row].div_rem(&pc[row]).0;
                if !q.is_zero() {
                    axpy(&mut cols[j], &q, &pc);
                    axpy(&mut u[j], &q, &pu);
                }
            }
            slot += 1;
        }
    }
    Hnf {
        columns: cols[..slot].to_vec(),
        kernel: u[slot..].to_vec(),
    }
}

fn check_len(n: usize, v: &[FpPoly]) -> Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        })
    }
}

impl Submodule {
    /// The submodule generated by `gens`, in canonical form.
    pub fn new(p: u64, n: usize, gens: &[Column]) -> Result<Self> {
        for g in gens {
            check_len(n, g)?;
        }
        Ok(Submodule {
            p,
            n,
            columns: hnf(p, n, gens.to_vec()).columns,
        })
    }

    pub fn zero(p: u64, n: usize) -> Self {
        Submodule {
            p,
            n,
            columns: vec![],
        }
    }

    pub fn full(p: u64, n: usize) -> Self {
        let ring = PolyRing::new(p).expect("valid characteristic");
        Submodule {
            p,
            n,
            columns: matrix::identity(&ring, n).columns(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    /// Canonical generators.
    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Canonical form of the canonical generators; always equal to `self`.
    pub fn canonical_form(&self) -> Submodule {
        Submodule::new(self.p, self.n, &self.columns).expect("same ambient")
    }

    fn same_ambient(&self, other: &Submodule) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            })
        }
    }

    /// Membership by successive division by the pivots.
    pub fn contains(&self, v: &[FpPoly]) -> Result<bool> {
        check_len(self.n, v)?;
        let mut rest = v.to_vec();
        let mut cols = self.columns.iter().peekable();
        for row in 0..self.n {
            if let Some(col) = cols.next_if(|c| !c[row].is_zero() && c[..row].iter().all(FpPoly::is_zero)) {
                let (q, r) = rest[row].div_rem(&col[row]);
                if !r.is_zero() {
                    return Ok(false);
                }
                axpy(&mut rest, &q, col);
            } else if !rest[row].is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_subset_of(&self, other: &Submodule) -> Result<bool> {
        self.same_ambient(other)?;
        for c in &self.columns {
            if !other.contains(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.same_ambient(other)?;
        let gens: Vec<Column> = self.columns.iter().chain(&other.columns).cloned().collect();
        Submodule::new(self.p, self.n, &gens)
    }

    /// `N1 ∩ N2` from the kernel of `[G1 | -G2]`, read off the unimodular
    /// transform of its Hermite form and mapped through `G1`.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.same_ambient(other)?;
        let k1 = self.columns.len();
        let block: Vec<Column> = self
            .columns
            .iter()
            .cloned()
            .chain(other.columns.iter().map(|c| c.iter().map(FpPoly::neg).collect()))
            .collect();
        let kernel = hnf(self.p, self.n, block).kernel;
        let gens: Vec<Column> = kernel
            .iter()
            .map(|w| {
                let mut v = vec![FpPoly::zero(self.p); self.n];
                for (coef, col) in w[..k1].iter().zip(&self.columns) {
                    axpy(&mut v, &coef.neg(), col);
                }
                v
            })
            .collect();
        Submodule::new(self.p, self.n, &gens)
    }

    pub fn max_degree(&self) -> u64 {
        self.columns
            .iter()
            .flatten()
            .filter_map(FpPoly::deg)
            .max()
            .unwrap_or(0) as u64
    }

    pub fn check_guard(&self, guard: u64) -> Result<()> {
        let degree = self.max_degree();
        if degree > guard {
            Err(Error::DegreeGuardExceeded { degree, guard })
        } else {
            Ok(())
        }
    }

    /// Canonical columns as literal lists.
    pub fn render(&self) -> Vec<Vec<String>> {
        self.columns
            .iter()
            .map(|c| c.iter().map(|x| x.render("x")).collect())
            .collect()
    }

    pub fn to_matrix(&self) -> Matrix<FpPoly> {
        Matrix::from_columns(self.n, &self.columns).expect("columns of length n")
    }
}

fn check_module(module: &FrobModule<PolyRing>, n: &Submodule) -> Result<()> {
    if module.n() == n.n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: module.n(),
            got: n.n,
        })
    }
}

/// The submodule generated by `F^r(N)`: columns `A_r g^[q^r]`.
pub fn frob_image(module: &FrobModule<PolyRing>, n: &Submodule, r: u32) -> Result<Submodule> {
    check_module(module, n)?;
    let ar = module.power_matrix(r)?.matrix;
    let images = n
        .columns
        .iter()
        .map(|g| module.apply_with(&ar, g, r))
        .collect::<Result<Vec<_>>>()?;
    Submodule::new(module.ring().p(), module.n(), &images)
}

/// `N ⊆ F(N)`.
pub fn is_root(module: &FrobModule<PolyRing>, n: &Submodule) -> Result<bool> {
    n.is_subset_of(&frob_image(module, n, 1)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub root: Submodule,
    /// Number of Frobenius translates summed into the root.
    pub m_used: u32,
    /// `root ⊆ F(root)`.
    pub verified: bool,
    /// Steps of `root ⊆ F(root) ⊆ F^2(root) ⊆ ...` checked by membership.
    pub chain_steps: u32,
}

#[derive(Serialize)]
pub struct RootRecord {
    pub m_used: u32,
    pub verified: bool,
    pub chain_steps: u32,
    pub root: Vec<Vec<String>>,
}

impl RootReport {
    pub fn record(&self) -> RootRecord {
        RootRecord {
            m_used: self.m_used,
            verified: self.verified,
            chain_steps: self.chain_steps,
            root: self.root.render(),
        }
    }
}

const CHAIN_STEPS: u32 = 3;

/// Builds a root from generators: finds the least `m` with
/// `span(gens) ⊆ F(gens) + ... + F^m(gens)` and returns
/// `span(gens) + F(gens) + ... + F^(m-1)(gens)`.
pub fn root_from_generators(module: &FrobModule<PolyRing>, gens: &[Column], cfg: &Config) -> Result<RootReport> {
    if !module.is_unit() {
        return Err(Error::NotUnit);
    }
    let p = module.ring().p();
    let base = Submodule::new(p, module.n(), gens)?;
    if base.rank() == 0 {
        return Ok(RootReport {
            root: base,
            m_used: 0,
            verified: true,
            chain_steps: CHAIN_STEPS,
        });
    }
    base.check_guard(cfg.degree_guard)?;
    let mut translate = base.clone();
    let mut root = base.clone();
    let mut above = Submodule::zero(p, module.n());
    for m in 1..=cfg.m_max {
        translate = frob_image(module, &translate, 1)?;
        translate.check_guard(cfg.degree_guard)?;
        above = above.sum(&translate)?;
        if base.is_subset_of(&above)? {
            let verified = is_root(module, &root)?;
            let chain_steps = certify_chain(module, &root, cfg)?;
            return Ok(RootReport {
                root,
                m_used: m,
                verified,
                chain_steps,
            });
        }
        root = root.sum(&translate)?;
    }
    Err(Error::BoundExceeded { bound: cfg.m_max })
}

fn certify_chain(module: &FrobModule<PolyRing>, root: &Submodule, cfg: &Config) -> Result<u32> {
    let mut current = root.clone();
    for step in 0..CHAIN_STEPS {
        let next = frob_image(module, &current, 1)?;
        next.check_guard(cfg.degree_guard)?;
        if !current.is_subset_of(&next)? {
            return Ok(step);
        }
        current = next;
    }
    Ok(CHAIN_STEPS)
}

/// Closes `span(gens)` under `F` and intersects it with a root; the result
/// is checked to be a root again.
pub fn induced_root(
    module: &FrobModule<PolyRing>,
    root: &Submodule,
    gens: &[Column],
    cfg: &Config,
) -> Result<Submodule> {
    let p = module.ring().p();
    let mut saturated = Submodule::new(p, module.n(), gens)?;
    let mut closed = false;
    for _ in 0..cfg.m_max {
        let next = saturated.sum(&frob_image(module, &saturated, 1)?)?;
        next.check_guard(cfg.degree_guard)?;
        if next == saturated {
            closed = true;
            break;
        }
        saturated = next;
    }
    if !closed {
        return Err(Error::BoundExceeded { bound: cfg.m_max });
    }
    let result = root.intersect(&saturated)?;
    if !is_root(module, &result)? {
        return Err(Error::RootCheckFailed(format!(
            "intersection with generators {:?} is not contained in its Frobenius image",
            result.render()
        )));
    }
    Ok(result)
}
