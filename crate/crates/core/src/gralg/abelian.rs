//! Finitely generated abelian groups given by generators and relations,
//! and kernels/cokernels of maps between them.

use super::matrix::{dense_columns, dense_from_columns, dense_mul, dense_zeros, hcat, Dense};
use super::ring::valuation;
use super::snf::smith;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Z^ngens modulo the span of the relation columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroup {
    pub ngens: usize,
    pub relations: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupSummary {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for GroupSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup { ngens: 0, relations: Vec::new() }
    }

    /// Direct sum of cyclic groups; `None` is an infinite cyclic summand.
    pub fn cyclic_sum(orders: &[Option<BigInt>]) -> Self {
        let n = orders.len();
        let mut relations = Vec::new();
        for (i, o) in orders.iter().enumerate() {
            if let Some(o) = o {
                let mut col = vec![BigInt::zero(); n];
                col[i] = o.clone();
                relations.push(col);
            }
        }
        AbGroup { ngens: n, relations }
    }

    fn rel_dense(&self) -> Dense {
        if self.relations.is_empty() {
            dense_zeros(self.ngens, 0)
        } else {
            dense_from_columns(&self.relations, self.ngens)
        }
    }

    pub fn summary(&self) -> Result<GroupSummary> {
        let r = self.rel_dense();
        let s = smith(&r, self.ngens, self.relations.len())?;
        let diag = s.diagonal();
        let rank = diag.iter().filter(|x| !x.is_zero()).count();
        let torsion = diag.into_iter().filter(|x| !x.is_zero() && !x.abs().is_one()).collect();
        Ok(GroupSummary { free_rank: self.ngens - rank, torsion })
    }

    /// Cyclic decomposition: (order, generator in the original coordinates).
    pub fn decompose(&self) -> Result<Vec<(Option<BigInt>, Vec<BigInt>)>> {
        let n = self.ngens;
        let r = self.rel_dense();
        let s = smith(&r, n, self.relations.len())?;
        let uinv = unimodular_inverse(&s.u, n)?;
        let diag = s.diagonal();
        let mut out = Vec::new();
        for i in 0..n {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.abs().is_one() {
                continue;
            }
            let gen: Vec<BigInt> = (0..n).map(|k| uinv[k][i].clone()).collect();
            out.push((if d.is_zero() { None } else { Some(d.abs()) }, gen));
        }
        Ok(out)
    }

    /// Whether v is zero in the group.
    pub fn is_zero_element(&self, v: &[BigInt]) -> Result<bool> {
        Ok(solve_in_span(&self.relations, self.ngens, v)?.is_some())
    }

    /// Whether two elements agree in the group.
    pub fn equal_elements(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool> {
        let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&d)
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(u: &Dense, n: usize) -> Result<Dense> {
    let s = smith(u, n, n)?;
    if s.diagonal().iter().any(|x| !x.is_one()) {
        return Err(Error::Inconsistent("matrix is not unimodular".into()));
    }
    Ok(dense_mul(&s.v, &s.u, n, n))
}

/// Z-basis of the null space of an integer matrix.
pub fn integer_kernel(a: &Dense, nrows: usize, ncols: usize) -> Result<Vec<Vec<BigInt>>> {
    let s = smith(a, nrows, ncols)?;
    let rank = s.rank();
    Ok((rank..ncols).map(|j| (0..ncols).map(|i| s.v[i][j].clone()).collect()).collect())
}

/// Some integer c with sum c_j * cols_j = b.
pub fn solve_in_span(cols: &[Vec<BigInt>], n: usize, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.iter().all(|x| x.is_zero()) {
        return Ok(Some(vec![BigInt::zero(); cols.len()]));
    }
    if cols.is_empty() {
        return Ok(None);
    }
    let a = dense_from_columns(cols, n);
    let k = cols.len();
    let s = smith(&a, n, k)?;
    // u a v = d, so a x = b  <=>  d y = u b with x = v y
    let ub: Vec<BigInt> = (0..n).map(|i| (0..n).map(|j| &s.u[i][j] * &b[j]).sum()).collect();
    let mut y = vec![BigInt::zero(); k];
    for i in 0..n {
        let d = if i < k { s.d[i][i].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !ub[i].is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = ub[i].div_rem(&d);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    let x = (0..k).map(|i| (0..k).map(|j| &s.v[i][j] * &y[j]).sum()).collect();
    Ok(Some(x))
}

/// A homomorphism between presented groups, given on generators.
#[derive(Clone, Debug)]
pub struct GroupMap {
    pub source: AbGroup,
    pub target: AbGroup,
    /// target.ngens x source.ngens
    pub matrix: Dense,
}

impl GroupMap {
    pub fn new(source: AbGroup, target: AbGroup, matrix: Dense) -> Result<Self> {
        let m = GroupMap { source, target, matrix };
        m.check_well_defined()?;
        Ok(m)
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.target.ngens)
            .map(|i| (0..self.source.ngens).map(|j| &self.matrix[i][j] * &v[j]).sum())
            .collect()
    }

    pub fn check_well_defined(&self) -> Result<()> {
        for r in &self.source.relations {
            let img = self.apply(r);
            if !self.target.is_zero_element(&img)? {
                return Err(Error::IllDefined("relation not sent to zero".into()));
            }
        }
        Ok(())
    }

    fn image_columns(&self) -> Vec<Vec<BigInt>> {
        dense_columns(&self.matrix, self.source.ngens)
    }

    pub fn cokernel(&self) -> AbGroup {
        let mut relations = self.target.relations.clone();
        relations.extend(self.image_columns().into_iter().filter(|c| c.iter().any(|x| !x.is_zero())));
        AbGroup { ngens: self.target.ngens, relations }
    }

    /// Kernel as a presented group plus its generators in source coordinates.
    pub fn kernel(&self) -> Result<(AbGroup, Vec<Vec<BigInt>>)> {
        let na = self.source.ngens;
        let nb = self.target.ngens;
        if na == 0 {
            return Ok((AbGroup::zero(), Vec::new()));
        }
        let rb = if self.target.relations.is_empty() {
            dense_zeros(nb, 0)
        } else {
            dense_from_columns(&self.target.relations, nb)
        };
        let block = hcat(&self.matrix, &rb, nb);
        let ncols = na + self.target.relations.len();
        let gens: Vec<Vec<BigInt>> = if nb == 0 {
            (0..na).map(|i| (0..na).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
        } else {
            integer_kernel(&block, nb, ncols)?
                .into_iter()
                .map(|v| v[..na].to_vec())
                .filter(|v| v.iter().any(|x| !x.is_zero()))
                .collect()
        };
        let k = gens.len();
        if k == 0 {
            return Ok((AbGroup::zero(), gens));
        }
        // relations: c with K c in the span of the source relations
        let kd = dense_from_columns(&gens, na);
        let ra = if self.source.relations.is_empty() {
            dense_zeros(na, 0)
        } else {
            dense_from_columns(&self.source.relations, na)
        };
        let block = hcat(&kd, &ra, na);
        let rels: Vec<Vec<BigInt>> = integer_kernel(&block, na, k + self.source.relations.len())?
            .into_iter()
            .map(|v| v[..k].to_vec())
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        Ok((AbGroup { ngens: k, relations: rels }, gens))
    }

    pub fn is_zero(&self) -> Result<bool> {
        for c in self.image_columns() {
            if !self.target.is_zero_element(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A p-primary group computed at precision p^m: summands of order p^m are
/// read as copies of Z_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicGroup {
    pub p: u64,
    pub zp_rank: usize,
    /// exponents e of the finite summands Z/p^e
    pub torsion: Vec<u32>,
}

impl PadicGroup {
    pub fn from_summary(s: &GroupSummary, p: u64, m: u32) -> Result<Self> {
        if s.free_rank > 0 {
            return Err(Error::Inconsistent("free summand in a p^m-torsion computation".into()));
        }
        let mut zp_rank = 0;
        let mut torsion = Vec::new();
        for t in &s.torsion {
            let e = valuation(t, p).unwrap_or(0);
            if BigInt::from(p).pow(e) != *t {
                return Err(Error::Inconsistent(format!("{t} is not a power of {p}")));
            }
            if e >= m {
                zp_rank += 1;
            } else {
                torsion.push(e);
            }
        }
        torsion.sort_unstable();
        Ok(PadicGroup { p, zp_rank, torsion })
    }

    pub fn zero(p: u64) -> Self {
        PadicGroup { p, zp_rank: 0, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.zp_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for PadicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for _ in 0..self.zp_rank {
            parts.push(format!("Z_{}", self.p));
        }
        for e in &self.torsion {
            if *e == 1 {
                parts.push(format!("F_{}", self.p));
            } else {
                parts.push(format!("Z/{}^{}", self.p, e));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn unit_on_zpm_is_iso() {
        // 1 - 4 on Z/2^5
        let g = AbGroup::cyclic_sum(&[Some(b(32))]);
        let f = GroupMap::new(g.clone(), g, vec![vec![b(-3)]]).unwrap();
        assert!(f.cokernel().summary().unwrap().is_zero());
        assert_eq!(f.kernel().unwrap().0.summary().unwrap().torsion.len(), 0);
    }

    #[test]
    fn zero_map_kernel() {
        let g = AbGroup::cyclic_sum(&[Some(b(8)), Some(b(2))]);
        let f = GroupMap::new(g.clone(), g.clone(), vec![vec![b(0), b(0)], vec![b(0), b(0)]]).unwrap();
        let (k, _) = f.kernel().unwrap();
        assert_eq!(k.summary().unwrap().torsion, vec![b(2), b(8)]);
    }

    #[test]
    fn ill_defined_rejected() {
        let a = AbGroup::cyclic_sum(&[Some(b(2))]);
        let t = AbGroup::cyclic_sum(&[Some(b(8))]);
        assert!(GroupMap::new(a, t, vec![vec![b(1)]]).is_err());
    }
}
