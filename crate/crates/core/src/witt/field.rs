//! F_q = F_p[X]/(f) with f the smallest monic irreducible of degree n.

use crate::gralg::ring::inv_mod_u64;
use crate::{Error, Result};

/// Polynomials over F_p, lowest coefficient first, trimmed.
pub type FpPoly = Vec<u64>;

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn poly_rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod_u64(*b.last().expect("division by zero polynomial"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Monic polynomial of degree n with coefficient vector given by the base-p digits of k.
fn monic_from_index(k: u64, n: usize, p: u64) -> FpPoly {
    let mut c = Vec::with_capacity(n + 1);
    let mut k = k;
    for _ in 0..n {
        c.push(k % p);
        k /= p;
    }
    c.push(1);
    c
}

pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = trim(f.to_vec()).len() - 1;
    for d in 1..=n / 2 {
        for k in 0..p.pow(d as u32) {
            let g = monic_from_index(k, d, p);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    n >= 1
}

/// Smallest monic irreducible of degree n, ordered by sum c_i p^i over the
/// non-leading coefficients.
pub fn smallest_irreducible(p: u64, n: usize) -> Result<FpPoly> {
    if n == 0 {
        return Err(Error::Presentation("field degree must be positive".into()));
    }
    let bound = p.checked_pow(n as u32).ok_or(Error::Overflow(64))?;
    (0..bound)
        .map(|k| monic_from_index(k, n, p))
        .find(|f| is_irreducible(f, p))
        .ok_or_else(|| Error::Inconsistent("no irreducible polynomial found".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    pub p: u64,
    pub n: usize,
    pub modulus: FpPoly,
}

/// Element: coefficients of 1, X, ..., X^{n-1}.
pub type Fq = Vec<u64>;

impl FiniteField {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        Ok(FiniteField { p, n, modulus: smallest_irreducible(p, n)? })
    }

    pub fn with_modulus(p: u64, modulus: FpPoly) -> Result<Self> {
        if !is_irreducible(&modulus, p) {
            return Err(Error::Presentation("modulus is reducible".into()));
        }
        let n = modulus.len() - 1;
        Ok(FiniteField { p, n, modulus })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n as u32)
    }

    pub fn zero(&self) -> Fq {
        vec![0; self.n]
    }

    pub fn one(&self) -> Fq {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    fn pad(&self, a: FpPoly) -> Fq {
        let mut a = a;
        a.resize(self.n, 0);
        a
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let mut prod = vec![0u64; 2 * self.n];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.pad(poly_rem(&prod, &self.modulus, self.p))
    }

    pub fn pow(&self, a: &Fq, e: u64) -> Fq {
        let mut base = a.clone();
        let mut acc = self.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: &Fq) -> Fq {
        self.pow(a, self.p)
    }

    /// a^{p^{-i}}
    pub fn frobenius_inverse_power(&self, a: &Fq, i: usize) -> Fq {
        let j = (self.n - i % self.n) % self.n;
        (0..j).fold(a.clone(), |acc, _| self.frobenius(&acc))
    }

    /// Elements in order of their base-p index.
    pub fn element(&self, k: u64) -> Fq {
        let mut v = self.zero();
        let mut k = k;
        for c in v.iter_mut() {
            *c = k % self.p;
            k /= self.p;
        }
        v
    }

    pub fn elements(&self) -> Vec<Fq> {
        (0..self.order()).map(|k| self.element(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
        assert_eq!(smallest_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn field_axioms_small() {
        let f = FiniteField::new(2, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(&a, 8), a);
        }
        let g = FiniteField::new(3, 2).unwrap();
        let x = g.element(3);
        assert_eq!(g.frobenius_inverse_power(&g.frobenius(&x), 1), x);
    }
}
