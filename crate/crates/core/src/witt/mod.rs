//! p-typical Witt vectors of finite fields in two representations, the Witt
//! vector Frobenius, and the kernel and cokernel of 1 - F.

pub mod coords;
pub mod field;
pub mod quotient;
pub mod universal;

pub use coords::{WittCoords, WittVector};
pub use field::{FiniteField, Fq};
pub use quotient::{Elem, QuotientRing};
pub use universal::{ghost_components, universal_polynomials, UniversalPolynomials};

use crate::coeff::{MackeyFunctor, MackeyMap, MackeyScalars};
use crate::gralg::matrix::{dense_identity, Dense};
use crate::gralg::{AbGroup, BaseRing, GroupMap, PadicGroup};
use crate::{Error, Result};
use num_bigint::BigInt;
use serde::Serialize;

/// W_m(F_q) in both representations.
#[derive(Clone, Debug)]
pub struct WittRing {
    pub p: u64,
    pub n: usize,
    pub m: u32,
    pub field: FiniteField,
    pub quotient: QuotientRing,
    pub coords: WittCoords,
}

pub fn witt_ring(p: u64, n: usize, m: u32) -> Result<WittRing> {
    if !crate::coeff::is_prime(p) {
        return Err(Error::Presentation(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(Error::Window("precision must be positive".into()));
    }
    let field = FiniteField::new(p, n)?;
    Ok(WittRing { p, n, m, quotient: QuotientRing::new(&field, m)?, coords: WittCoords::new(&field, m)?, field })
}

impl WittRing {
    /// sum_i p^i [a_i^{p^{-i}}]
    pub fn to_quotient(&self, a: &WittVector) -> Elem {
        let r = &self.quotient;
        let mut acc = r.zero();
        for (i, ai) in a.iter().enumerate() {
            let t = r.teichmuller(&self.field.frobenius_inverse_power(ai, i));
            acc = r.add(&acc, &r.scale(&t, self.p.pow(i as u32)));
        }
        acc
    }

    /// Inverse of `to_quotient`: peel off Teichmueller digits.
    pub fn to_coords(&self, x: &Elem) -> Result<WittVector> {
        let r = &self.quotient;
        let mut rest = x.clone();
        let mut out = Vec::new();
        for i in 0..self.m {
            let pi = self.p.pow(i);
            if rest.iter().any(|c| c % pi != 0) {
                return Err(Error::Inconsistent("digit expansion failed".into()));
            }
            let digit: Fq = rest.iter().map(|c| (c / pi) % self.p).collect();
            let t = r.teichmuller(&digit);
            rest = r.sub(&rest, &r.scale(&t, pi));
            // a_i^{p^{-i}} = digit, so a_i = digit^{p^i}
            out.push((0..i).fold(digit, |acc, _| self.field.frobenius(&acc)));
        }
        Ok(out)
    }

    /// Matrix of 1 - F on the basis 1, X, ..., X^{n-1} over Z/p^m.
    pub fn one_minus_f(&self) -> Dense {
        let r = &self.quotient;
        let n = self.n;
        let mut mat = dense_identity(n);
        let mut xj = r.one();
        let x = r.gen();
        for j in 0..n {
            let fx = r.frobenius(&xj);
            for i in 0..n {
                mat[i][j] -= BigInt::from(fx[i]);
            }
            xj = r.mul(&xj, &x);
        }
        let q = BigInt::from(r.modulus);
        for row in mat.iter_mut() {
            for c in row.iter_mut() {
                *c = num_integer::Integer::mod_floor(c, &q);
            }
        }
        mat
    }
}

pub fn one_minus_f(w: &WittRing) -> Dense {
    w.one_minus_f()
}

/// (ker, coker) of 1 - F on W_m(F_q), read p-adically.
pub fn kernel_cokernel_at(p: u64, n: usize, m: u32) -> Result<(PadicGroup, PadicGroup)> {
    let w = witt_ring(p, n, m)?;
    let q = BigInt::from(p).pow(m);
    let g = AbGroup::cyclic_sum(&vec![Some(q); n]);
    let f = GroupMap::new(g.clone(), g, w.one_minus_f())?;
    let (k, _) = f.kernel()?;
    let ker = PadicGroup::from_summary(&k.summary()?, p, m)?;
    let coker = PadicGroup::from_summary(&f.cokernel().summary()?, p, m)?;
    Ok((ker, coker))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct PerfectReport {
    pub p: u64,
    pub n: usize,
    pub precision: u32,
    pub kernel: PadicGroup,
    pub cokernel: PadicGroup,
    pub stabilized: bool,
    pub mackey_kernel: Option<MackeyScalars>,
    pub mackey_cokernel: Option<MackeyScalars>,
}

/// TCR of a finite field: H ker(1-F) + Sigma^-1 H coker(1-F), both constant
/// Mackey functors. The answer is checked at m and m + 1.
pub fn tcr_perfect_answer(p: u64, n: usize, m: u32) -> Result<PerfectReport> {
    let (k, c) = kernel_cokernel_at(p, n, m)?;
    let (k1, c1) = kernel_cokernel_at(p, n, m + 1)?;
    let stabilized = k == k1 && c == c1;
    let (kk, cc) = witt_mackey_map(p, n, m)?.kernel_cokernel()?;
    Ok(PerfectReport {
        p,
        n,
        precision: m,
        mackey_kernel: MackeyScalars::of(&kk)?,
        mackey_cokernel: MackeyScalars::of(&cc)?,
        kernel: k,
        cokernel: c,
        stabilized,
    })
}

/// 1 - F as a map of constant Mackey functors on W_m(F_q).
pub fn witt_mackey_map(p: u64, n: usize, m: u32) -> Result<MackeyMap> {
    let w = witt_ring(p, n, m)?;
    let g = AbGroup::cyclic_sum(&vec![Some(BigInt::from(p).pow(m)); n]);
    let mf = MackeyFunctor::constant(&g);
    let mat = w.one_minus_f();
    MackeyMap::new(mf.clone(), mf, mat.clone(), mat)
}

pub fn base_ring(p: u64, m: u32) -> BaseRing {
    BaseRing::zpm(p, m)
}
