//! Witt coordinates (a_0, ..., a_{m-1}) over F_q. Sums and products are found
//! one coordinate at a time from the ghost identities, evaluated on lifts in
//! (Z/p^m)[X]/(f~).

use super::field::{FiniteField, Fq};
use super::quotient::{Elem, QuotientRing};
use crate::{Error, Result};

pub type WittVector = Vec<Fq>;

#[derive(Clone, Debug)]
pub struct WittCoords {
    pub field: FiniteField,
    pub m: u32,
    lifts: QuotientRing,
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Mul,
}

impl WittCoords {
    pub fn new(field: &FiniteField, m: u32) -> Result<Self> {
        Ok(WittCoords { field: field.clone(), m, lifts: QuotientRing::new(field, m)? })
    }

    pub fn zero(&self) -> WittVector {
        vec![self.field.zero(); self.m as usize]
    }

    pub fn one(&self) -> WittVector {
        let mut v = self.zero();
        v[0] = self.field.one();
        v
    }

    /// w_k = sum_{i <= k} p^i a_i^{p^{k-i}} on lifts
    fn ghost(&self, a: &[Elem], k: usize) -> Elem {
        let r = &self.lifts;
        let mut acc = r.zero();
        for (i, ai) in a.iter().enumerate().take(k + 1) {
            let e = (self.field.p as u128).pow((k - i) as u32);
            let term = r.scale(&r.pow(ai, e), self.field.p.pow(i as u32));
            acc = r.add(&acc, &term);
        }
        acc
    }

    fn combine(&self, a: &WittVector, b: &WittVector, op: Op) -> Result<WittVector> {
        let r = &self.lifts;
        let p = self.field.p;
        let la: Vec<Elem> = a.iter().map(|x| r.lift_from_field(x)).collect();
        let lb: Vec<Elem> = b.iter().map(|x| r.lift_from_field(x)).collect();
        let mut out: Vec<Elem> = Vec::new();
        for k in 0..self.m as usize {
            let (ga, gb) = (self.ghost(&la, k), self.ghost(&lb, k));
            let target = match op {
                Op::Add => r.add(&ga, &gb),
                Op::Mul => r.mul(&ga, &gb),
            };
            let mut partial = out.clone();
            partial.push(r.zero());
            let rest = r.sub(&target, &self.ghost(&partial, k));
            let pk = p.pow(k as u32);
            if rest.iter().any(|c| c % pk != 0) {
                return Err(Error::Inconsistent(format!("ghost component {k} not divisible by p^{k}")));
            }
            let s: Fq = rest.iter().map(|c| (c / pk) % p).collect();
            out.push(r.lift_from_field(&s));
        }
        Ok(out.iter().map(|x| r.reduce_mod_p(x)).collect())
    }

    pub fn add(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.combine(a, b, Op::Add)
    }

    pub fn mul(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.combine(a, b, Op::Mul)
    }

    /// Coordinatewise p-th power.
    pub fn frobenius(&self, a: &WittVector) -> WittVector {
        a.iter().map(|x| self.field.frobenius(x)).collect()
    }

    /// Teichmueller representative [c] = (c, 0, ..., 0).
    pub fn teichmuller(&self, c: &Fq) -> WittVector {
        let mut v = self.zero();
        v[0] = c.clone();
        v
    }
}
