//! Smith normal form over Z with unimodular transforms.

use super::matrix::{dense_identity, Dense};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub const MAX_BITS: u64 = 512;

/// `u * a * v = d` with `d` diagonal, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Dense,
    pub v: Dense,
    pub d: Dense,
    pub nrows: usize,
    pub ncols: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.nrows.min(self.ncols)).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn guard(x: &BigInt) -> Result<()> {
    if x.bits() > MAX_BITS {
        Err(Error::Overflow(MAX_BITS))
    } else {
        Ok(())
    }
}

struct State {
    a: Dense,
    u: Dense,
    v: Dense,
    nr: usize,
    nc: usize,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        for r in self.v.iter_mut() {
            r.swap(i, j);
        }
    }

    // row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) -> Result<()> {
        for c in 0..self.nc {
            let t = &self.a[j][c] * q;
            if !t.is_zero() {
                self.a[i][c] -= t;
                guard(&self.a[i][c])?;
            }
        }
        for c in 0..self.nr {
            let t = &self.u[j][c] * q;
            if !t.is_zero() {
                self.u[i][c] -= t;
                guard(&self.u[i][c])?;
            }
        }
        Ok(())
    }

    // col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) -> Result<()> {
        for r in 0..self.nr {
            let t = &self.a[r][j] * q;
            if !t.is_zero() {
                self.a[r][i] -= t;
                guard(&self.a[r][i])?;
            }
        }
        for r in 0..self.nc {
            let t = &self.v[r][j] * q;
            if !t.is_zero() {
                self.v[r][i] -= t;
                guard(&self.v[r][i])?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
    }
}

pub fn smith(a: &Dense, nrows: usize, ncols: usize) -> Result<Smith> {
    for row in a {
        for x in row {
            guard(x)?;
        }
    }
    let mut st = State { a: a.clone(), u: dense_identity(nrows), v: dense_identity(ncols), nr: nrows, nc: ncols };
    let n = nrows.min(ncols);
    for t in 0..n {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    let x = &st.a[i][j];
                    if !x.is_zero() {
                        match best {
                            Some((bi, bj)) if st.a[bi][bj].abs() <= x.abs() => {}
                            _ => best = Some((i, j)),
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(st, nrows, ncols);
            };
            st.swap_rows(t, bi);
            st.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..nrows {
                if !st.a[i][t].is_zero() {
                    let q = st.a[i][t].div_floor(&st.a[t][t]);
                    st.row_sub(i, t, &q)?;
                    if !st.a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..ncols {
                if !st.a[t][j].is_zero() {
                    let q = st.a[t][j].div_floor(&st.a[t][t]);
                    st.col_sub(j, t, &q)?;
                    if !st.a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let piv = st.a[t][t].clone();
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !(&st.a[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    st.row_sub(t, i, &minus_one)?;
                }
                None => break,
            }
        }
        if st.a[t][t].is_negative() {
            st.negate_row(t);
        }
    }
    finish(st, nrows, ncols)
}

fn finish(st: State, nrows: usize, ncols: usize) -> Result<Smith> {
    Ok(Smith { u: st.u, v: st.v, d: st.a, nrows, ncols })
}

/// Nonzero invariant factors together with the rank deficiency of the cokernel.
pub fn invariant_factors(a: &Dense, nrows: usize, ncols: usize) -> Result<Vec<BigInt>> {
    let s = smith(a, nrows, ncols)?;
    Ok(s.diagonal().into_iter().filter(|x| !x.is_zero()).collect())
}
