//! Dense linear algebra over a prime field.

use super::ring::inv_mod_u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u64,
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<u64>>,
}

impl FpMatrix {
    pub fn zeros(p: u64, nrows: usize, ncols: usize) -> Self {
        FpMatrix { p, nrows, ncols, rows: vec![vec![0; ncols]; nrows] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.rows[i][i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u64, ncols: usize, rows: Vec<Vec<u64>>) -> Self {
        let rows: Vec<Vec<u64>> =
            rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        FpMatrix { p, nrows: rows.len(), ncols, rows }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u64, nrows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..nrows {
                m.rows[i][j] = c[i] % p;
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.rows[i][j] = v % self.p;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.nrows).map(|i| self.rows[i][j]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.ncols, other.nrows);
        let p = self.p;
        let mut out = Self::zeros(p, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.rows[k][j];
                    if b != 0 {
                        out.rows[i][j] = (out.rows[i][j] + a * b) % p;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        (0..self.nrows)
            .map(|i| {
                self.rows[i].iter().zip(v).fold(0, |acc, (&a, &b)| (acc + a * b) % p)
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        let p = self.p;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect())
            .collect();
        FpMatrix { p, nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn scale(&self, c: u64) -> FpMatrix {
        let p = self.p;
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * c % p).collect()).collect();
        FpMatrix { p, nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.p, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.rows[j][i] = self.rows[i][j];
            }
        }
        t
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(piv) = (r..self.nrows).find(|&i| self.rows[i][c] != 0) else {
                continue;
            };
            self.rows.swap(r, piv);
            let inv = inv_mod_u64(self.rows[r][c], p);
            for x in self.rows[r].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot_row = self.rows[r].clone();
            for i in 0..self.nrows {
                if i != r && self.rows[i][c] != 0 {
                    let f = self.rows[i][c];
                    for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the null space, as vectors of length `ncols`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; self.ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m.rows[r][free]) % p;
            }
            basis.push(v);
        }
        basis
    }

    /// Some x with Ax = b, if one exists.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let mut aug = self.clone();
        for (i, row) in aug.rows.iter_mut().enumerate() {
            row.push(b[i] % p);
        }
        aug.ncols += 1;
        let pivots = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![0; self.ncols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.rows[r][self.ncols];
        }
        Some(x)
    }
}

/// A subspace of F_p^n kept in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub p: u64,
    pub dim_ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u64, n: usize) -> Self {
        Subspace { p, dim_ambient: n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn span(p: u64, n: usize, vectors: &[Vec<u64>]) -> Self {
        let mut s = Self::zero(p, n);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce v against the echelon basis; zero iff v lies in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if f != 0 {
                for (x, y) in w.iter_mut().zip(row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds v; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod_u64(w[pc], p);
        for x in w.iter_mut() {
            *x = *x * inv % p;
        }
        for row in self.rows.iter_mut() {
            let f = row[pc];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&w) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}
