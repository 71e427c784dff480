use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Integer matrix as a sorted list of nonzero triplets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: Vec<(usize, usize, BigInt)>,
}

pub type Dense = Vec<Vec<BigInt>>;

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, entries: Vec::new() }
    }

    pub fn from_triplets(nrows: usize, ncols: usize, triplets: Vec<(usize, usize, BigInt)>) -> Self {
        let mut acc = std::collections::BTreeMap::new();
        for (i, j, v) in triplets {
            assert!(i < nrows && j < ncols, "triplet out of range");
            *acc.entry((i, j)).or_insert_with(BigInt::zero) += v;
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((i, j), v)| (i, j, v)).collect();
        SparseMatrix { nrows, ncols, entries }
    }

    pub fn from_dense(d: &Dense, ncols: usize) -> Self {
        let mut entries = Vec::new();
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, j, v.clone()));
                }
            }
        }
        SparseMatrix { nrows: d.len(), ncols, entries }
    }

    pub fn to_dense(&self) -> Dense {
        let mut d = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (i, j, v) in &self.entries {
            d[*i][*j] += v;
        }
        d
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}

pub fn dense_zeros(r: usize, c: usize) -> Dense {
    vec![vec![BigInt::zero(); c]; r]
}

pub fn dense_identity(n: usize) -> Dense {
    let mut d = dense_zeros(n, n);
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = BigInt::from(1);
    }
    d
}

pub fn dense_mul(a: &Dense, b: &Dense, inner: usize, bcols: usize) -> Dense {
    let mut out = dense_zeros(a.len(), bcols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            if row[k].is_zero() {
                continue;
            }
            for j in 0..bcols {
                if !b[k][j].is_zero() {
                    out[i][j] += &row[k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn dense_from_i64(rows: &[Vec<i64>]) -> Dense {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Columns of `d` as vectors.
pub fn dense_columns(d: &Dense, ncols: usize) -> Vec<Vec<BigInt>> {
    (0..ncols).map(|j| d.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Matrix with the given column vectors.
pub fn dense_from_columns(cols: &[Vec<BigInt>], nrows: usize) -> Dense {
    let mut d = dense_zeros(nrows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..nrows {
            d[i][j] = c[i].clone();
        }
    }
    d
}

/// Horizontal concatenation [a | b].
pub fn hcat(a: &Dense, b: &Dense, nrows: usize) -> Dense {
    (0..nrows)
        .map(|i| {
            let mut r = a.get(i).cloned().unwrap_or_default();
            r.extend(b.get(i).cloned().unwrap_or_default());
            r
        })
        .collect()
}
