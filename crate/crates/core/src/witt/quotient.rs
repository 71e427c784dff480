//! W_m(F_q) as (Z/p^m)[X]/(f~), f~ the lift of f with coefficients in [0, p).

use super::field::{FiniteField, Fq};
use crate::{Error, Result};

/// Element: coefficients of 1, X, ..., X^{n-1} in [0, p^m).
pub type Elem = Vec<u64>;

#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub p: u64,
    pub n: usize,
    pub m: u32,
    pub modulus: u64,
    /// f~, monic, lowest first
    pub lift: Vec<u64>,
    /// image of X under the Frobenius lift
    pub frobenius_root: Elem,
}

impl QuotientRing {
    pub fn new(field: &FiniteField, m: u32) -> Result<Self> {
        let p = field.p;
        let modulus = p.checked_pow(m).filter(|&q| q < 1 << 62).ok_or(Error::Overflow(62))?;
        let mut ring = QuotientRing {
            p,
            n: field.n,
            m,
            modulus,
            lift: field.modulus.clone(),
            frobenius_root: Vec::new(),
        };
        ring.frobenius_root = ring.newton_root()?;
        Ok(ring)
    }

    fn md(&self, a: u128) -> u64 {
        (a % self.modulus as u128) as u64
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.n]
    }

    pub fn one(&self) -> Elem {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Elem {
        let mut v = self.zero();
        v[0] = c.rem_euclid(self.modulus as i64) as u64;
        v
    }

    pub fn gen(&self) -> Elem {
        if self.n == 1 {
            // X is the root of f~ = X + c0
            return self.constant(-(self.lift[0] as i64));
        }
        let mut v = self.zero();
        v[1] = 1;
        v
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(&x, &y)| self.md(x as u128 + y as u128)).collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|&x| self.md((self.modulus - x) as u128)).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Elem, c: u64) -> Elem {
        a.iter().map(|&x| self.md(x as u128 * (c % self.modulus) as u128)).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let n = self.n;
        let mut prod = vec![0u128; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % self.modulus as u128;
            }
        }
        for d in (n..2 * n).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &fi) in self.lift[..n].iter().enumerate() {
                let idx = d - n + i;
                prod[idx] = (prod[idx] + (self.modulus as u128 - c) * fi as u128) % self.modulus as u128;
            }
        }
        prod[..n].iter().map(|&x| x as u64).collect()
    }

    pub fn pow(&self, a: &Elem, e: u128) -> Elem {
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

    /// Evaluates a polynomial with coefficients in Z/p^m at an element.
    pub fn eval(&self, coeffs: &[u64], at: &Elem) -> Elem {
        coeffs.iter().rev().fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, at), &self.constant(c as i64)))
    }

    pub fn reduce_mod_p(&self, a: &Elem) -> Fq {
        a.iter().map(|x| x % self.p).collect()
    }

    pub fn lift_from_field(&self, a: &Fq) -> Elem {
        a.clone()
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        a.iter().any(|x| x % self.p != 0)
    }

    pub fn inverse(&self, a: &Elem, field: &FiniteField) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::Inconsistent("element is not a unit".into()));
        }
        let a0 = self.reduce_mod_p(a);
        let mut y = self.lift_from_field(&field.pow(&a0, field.order() - 2));
        let two = self.constant(2);
        for _ in 0..=(self.m.max(1)).ilog2() + 1 {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
        }
        if self.mul(a, &y) != self.one() {
            return Err(Error::Inconsistent("Newton inversion did not converge".into()));
        }
        Ok(y)
    }

    fn newton_root(&self) -> Result<Elem> {
        let field = FiniteField { p: self.p, n: self.n, modulus: self.lift.iter().map(|c| c % self.p).collect() };
        let deriv: Vec<u64> = (1..self.lift.len()).map(|i| self.md(self.lift[i] as u128 * i as u128)).collect();
        let mut r = self.pow(&self.gen(), self.p as u128);
        for _ in 0..=self.m.ilog2() + 1 {
            let fr = self.eval(&self.lift, &r);
            let dr = self.eval(&deriv, &r);
            r = self.sub(&r, &self.mul(&fr, &self.inverse(&dr, &field)?));
        }
        if self.eval(&self.lift, &r) != self.zero() {
            return Err(Error::Inconsistent("Frobenius root did not converge".into()));
        }
        Ok(r)
    }

    /// The Frobenius lift: X -> root of f~ congruent to X^p.
    pub fn frobenius(&self, a: &Elem) -> Elem {
        self.eval(a, &self.frobenius_root)
    }

    /// Teichmueller lift of a field element: any lift raised to q^{m-1}.
    pub fn teichmuller(&self, a: &Fq) -> Elem {
        let q = (self.p as u128).pow(self.n as u32);
        (1..self.m).fold(self.lift_from_field(a), |acc, _| self.pow(&acc, q))
    }
}
