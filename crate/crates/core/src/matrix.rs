//! Dense matrices over any [`Ring`]. Entries are stored row-major; all
//! arithmetic goes through the ring passed to each operation.

use crate::arith::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// `rows x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch {
                expected: rows,
                got: bad.len(),
            });
        }
        let data = (0..rows)
            .flat_map(|i| columns.iter().map(move |c| c[i].clone()))
            .collect();
        Ok(Matrix {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| self.get(i, j).clone()))
            .collect();
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<F, T>(&self, f: F) -> Matrix<T>
    where
        F: FnMut(&E) -> T,
    {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let data = (0..self.rows)
            .filter(|&i| i != skip_row)
            .flat_map(|i| {
                (0..self.cols)
                    .filter(move |&j| j != skip_col)
                    .map(move |j| self.get(i, j).clone())
            })
            .collect();
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    let data = (0..n * n)
        .map(|k| if k / n == k % n { ring.one() } else { ring.zero() })
        .collect();
    Matrix {
        rows: n,
        cols: n,
        data,
    }
}

pub fn zeros<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix {
        rows,
        cols,
        data: vec![ring.zero(); rows * cols],
    }
}

pub fn is_identity<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.is_square() && *a == identity(ring, a.rows)
}

pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            expected: a.cols,
            got: b.rows,
        });
    }
    let mut data = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = ring.zero();
            for k in 0..a.cols {
                let x = a.get(i, k);
                let y = b.get(k, j);
                if !ring.is_zero(x) && !ring.is_zero(y) {
                    acc = ring.add(&acc, &ring.mul(x, y));
                }
            }
            data.push(acc);
        }
    }
    Ok(Matrix {
        rows: a.rows,
        cols: b.cols,
        data,
    })
}

pub fn mul_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if a.cols != v.len() {
        return Err(Error::DimensionMismatch {
            expected: a.cols,
            got: v.len(),
        });
    }
    Ok((0..a.rows)
        .map(|i| {
            (0..a.cols).fold(ring.zero(), |acc, k| {
                ring.add(&acc, &ring.mul(a.get(i, k), &v[k]))
            })
        })
        .collect())
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::DimensionMismatch {
            expected: a.rows * a.cols,
            got: b.rows * b.cols,
        });
    }
    Ok(Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect(),
    })
}

pub fn scale<R: Ring>(ring: &R, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(c, x))
}

/// Entrywise `p^e`-th power, written `A^[p^e]`.
pub fn frobenius<R: Ring>(ring: &R, a: &Matrix<R::Elem>, e: u32) -> Matrix<R::Elem> {
    a.map(|x| ring.frobenius(x, e))
}

/// Entrywise `p^e`-th power of a vector.
pub fn frobenius_vec<R: Ring>(ring: &R, v: &[R::Elem], e: u32) -> Vec<R::Elem> {
    v.iter().map(|x| ring.frobenius(x, e)).collect()
}

fn require_square<E: Clone>(a: &Matrix<E>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.rows,
            got: a.cols,
        })
    }
}

/// Determinant. Fields use Gaussian elimination; other rings use
/// fraction-free Bareiss elimination, falling back to cofactor expansion
/// when an exact division is unavailable (rings with zero divisors).
pub fn det<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    require_square(a)?;
    if ring.is_field() {
        return Ok(det_gauss(ring, a));
    }
    Ok(det_bareiss(ring, a).unwrap_or_else(|| det_cofactor(ring, a)))
}

fn det_gauss<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.rows;
    let mut m = a.clone();
    let mut acc = ring.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !ring.is_zero(m.get(i, k))) else {
            return ring.zero();
        };
        if piv != k {
            swap_rows(&mut m, piv, k);
            acc = ring.neg(&acc);
        }
        let pivot = m.get(k, k).clone();
        acc = ring.mul(&acc, &pivot);
        let inv = ring.inv(&pivot).expect("nonzero field element is invertible");
        for i in k + 1..n {
            if ring.is_zero(m.get(i, k)) {
                continue;
            }
            let f = ring.mul(m.get(i, k), &inv);
            for j in k..n {
                let v = ring.sub(m.get(i, j), &ring.mul(&f, m.get(k, j)));
                m.set(i, j, v);
            }
        }
    }
    acc
}

fn det_bareiss<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Option<R::Elem> {
    let n = a.rows;
    if n == 0 {
        return Some(ring.one());
    }
    let mut m = a.clone();
    let mut sign = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        let Some(piv) = (k..n).find(|&i| !ring.is_zero(m.get(i, k))) else {
            return Some(ring.zero());
        };
        if piv != k {
            swap_rows(&mut m, piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(m.get(k, k), m.get(i, j)),
                    &ring.mul(m.get(i, k), m.get(k, j)),
                );
                let v = ring.div_exact(&num, &prev)?;
                m.set(i, j, v);
            }
            m.set(i, k, ring.zero());
        }
        prev = m.get(k, k).clone();
    }
    let d = m.get(n - 1, n - 1).clone();
    Some(if sign { ring.neg(&d) } else { d })
}

fn det_cofactor<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    match a.rows {
        0 => ring.one(),
        1 => a.get(0, 0).clone(),
        n => (0..n).fold(ring.zero(), |acc, j| {
            if ring.is_zero(a.get(0, j)) {
                return acc;
            }
            let term = ring.mul(a.get(0, j), &det_cofactor(ring, &a.minor(0, j)));
            if j % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            }
        }),
    }
}

fn swap_rows<E: Clone>(m: &mut Matrix<E>, a: usize, b: usize) {
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

/// Inverse of a matrix whose determinant is a unit.
pub fn inverse<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    require_square(a)?;
    let d = det(ring, a)?;
    if !ring.is_unit(&d) {
        return Err(Error::NotUnit);
    }
    if ring.is_field() {
        return Ok(gauss_jordan_inverse(ring, a));
    }
    // adjugate / det
    let n = a.rows;
    let d_inv = ring.inv(&d)?;
    if n == 1 {
        return Ok(Matrix::from_vec(1, 1, vec![d_inv]).expect("1x1"));
    }
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let minor = det(ring, &a.minor(j, i))?;
            let cof = if (i + j) % 2 == 0 { minor } else { ring.neg(&minor) };
            data.push(ring.mul(&cof, &d_inv));
        }
    }
    Matrix::from_vec(n, n, data)
}

fn gauss_jordan_inverse<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.rows;
    let mut m = a.clone();
    let mut inv = identity(ring, n);
    for k in 0..n {
        let piv = (k..n)
            .find(|&i| !ring.is_zero(m.get(i, k)))
            .expect("determinant is nonzero");
        swap_rows(&mut m, piv, k);
        swap_rows(&mut inv, piv, k);
        let s = ring.inv(m.get(k, k)).expect("nonzero pivot");
        for j in 0..n {
            m.set(k, j, ring.mul(&s, m.get(k, j)));
            inv.set(k, j, ring.mul(&s, inv.get(k, j)));
        }
        for i in 0..n {
            if i == k || ring.is_zero(m.get(i, k)) {
                continue;
            }
            let f = m.get(i, k).clone();
            for j in 0..n {
                m.set(i, j, ring.sub(m.get(i, j), &ring.mul(&f, m.get(k, j))));
                inv.set(i, j, ring.sub(inv.get(i, j), &ring.mul(&f, inv.get(k, j))));
            }
        }
    }
    inv
}

/// Renders each row as a comma-separated list of literals, rows joined by `; `.
pub fn render<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> String {
    (0..a.rows)
        .map(|i| {
            (0..a.cols)
                .map(|j| ring.render(a.get(i, j)))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Row-major literals of every entry.
pub fn render_entries<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Vec<Vec<String>> {
    (0..a.rows)
        .map(|i| (0..a.cols).map(|j| ring.render(a.get(i, j))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{GaloisField, PolyRing, QuotientRing, RatFuncField};

    fn poly_matrix(r: &PolyRing, rows: &[&[&str]]) -> Matrix<crate::arith::FpPoly> {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_routes_agree() {
        let r = PolyRing::new(3).unwrap();
        let a = poly_matrix(&r, &[&["x", "1", "x^2"], &["0", "x+1", "2"], &["x", "x", "1"]]);
        let bareiss = det_bareiss(&r, &a).unwrap();
        assert_eq!(bareiss, det_cofactor(&r, &a));
        let f = RatFuncField::new(3).unwrap();
        let af = a.map(|p| crate::arith::RatFunc::from_poly(p.clone()));
        assert_eq!(det(&f, &af).unwrap(), crate::arith::RatFunc::from_poly(bareiss));
    }

    #[test]
    fn paper_matrix_has_unit_determinant() {
        let r = PolyRing::new(5).unwrap();
        let a = poly_matrix(&r, &[&["0", "1"], &["1", "x"]]);
        assert_eq!(det(&r, &a).unwrap(), r.from_int(-1));
        let inv = inverse(&r, &a).unwrap();
        assert!(is_identity(&r, &mul(&r, &a, &inv).unwrap()));
    }

    #[test]
    fn singular_polynomial_matrix_has_no_inverse() {
        let r = PolyRing::new(2).unwrap();
        let a = poly_matrix(&r, &[&["x", "0"], &["0", "1"]]);
        assert_eq!(inverse(&r, &a), Err(Error::NotUnit));
    }

    #[test]
    fn field_inverse() {
        let f9 = GaloisField::new(3, 2).unwrap();
        let a = Matrix::from_rows(vec![
            vec![f9.parse("u").unwrap(), f9.one()],
            vec![f9.one(), f9.parse("u+1").unwrap()],
        ])
        .unwrap();
        let inv = inverse(&f9, &a).unwrap();
        assert!(is_identity(&f9, &mul(&f9, &inv, &a).unwrap()));
    }

    #[test]
    fn quotient_ring_determinant_uses_cofactors() {
        let q = QuotientRing::adjoined_root(2).unwrap();
        let t = q.t();
        let a = Matrix::from_rows(vec![vec![t.clone(), q.one()], vec![q.one(), q.zero()]]).unwrap();
        assert_eq!(det(&q, &a).unwrap(), q.from_int(-1));
    }

    #[test]
    fn shape_errors() {
        let r = PolyRing::new(2).unwrap();
        let a = zeros(&r, 2, 3);
        assert!(det(&r, &a).is_err());
        assert!(mul(&r, &a, &a).is_err());
        assert!(Matrix::from_rows(vec![vec![1], vec![1, 2]]).is_err());
    }
}
