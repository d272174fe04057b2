//! Dense linear algebra over a prime field `F_p` with `u64` residues.
//!
//! Used for the `F_p`-linearization of Frobenius-semilinear maps. Matrices
//! are row-major `Vec<Vec<u64>>`.

use crate::arith::fp_poly::mod_inv;

pub type FpMatrix = Vec<Vec<u64>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut FpMatrix, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = mod_inv(m[r][c], p);
        for v in m[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = f * m[r][j] % p;
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &FpMatrix, p: u64) -> usize {
    let mut work = m.clone();
    rref(&mut work, p).len()
}

/// Basis of the right kernel `{v : M v = 0}`; `cols` is needed for empty `M`.
pub fn kernel(m: &FpMatrix, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut work = m.clone();
    let pivots = rref(&mut work, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - work[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Builds the matrix whose columns are the given vectors.
pub fn from_columns(columns: &[Vec<u64>], rows: usize) -> FpMatrix {
    (0..rows)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect()
}
