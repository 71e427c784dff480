//! Universal Witt addition and multiplication polynomials over Z, from the
//! ghost identities. Cached per (p, m); m is capped at MAX_LENGTH.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

pub const MAX_LENGTH: u32 = 8;

/// Polynomial in variables a_0..a_{m-1}, b_0..b_{m-1} (exponent vector of length 2m).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        IntPoly { terms: BTreeMap::from([(e, BigInt::one())]) }
    }

    fn add_assign(&mut self, o: &IntPoly, sign: i64) {
        for (e, c) in &o.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c * sign;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    fn mul(&self, o: &IntPoly) -> IntPoly {
        let mut out = IntPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    fn pow(&self, k: u64, nvars: usize) -> IntPoly {
        let mut acc = IntPoly { terms: BTreeMap::from([(vec![0; nvars], BigInt::one())]) };
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly { terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect() }
    }

    fn exact_div(&self, d: &BigInt) -> Result<IntPoly> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::Inconsistent("ghost recursion is not integral".into()));
            }
            out.insert(e.clone(), q);
        }
        Ok(IntPoly { terms: out })
    }

    /// Evaluate at integers.
    pub fn eval(&self, values: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(values).fold(c.clone(), |acc, (&k, v)| acc * v.pow(k)))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct UniversalPolynomials {
    pub p: u64,
    pub m: u32,
    pub sum: Vec<IntPoly>,
    pub product: Vec<IntPoly>,
}

/// Ghost polynomial w_k in the given coordinate polynomials.
fn ghost_of(coords: &[IntPoly], k: usize, p: u64, nvars: usize) -> IntPoly {
    let mut acc = IntPoly::default();
    for (i, c) in coords.iter().enumerate().take(k + 1) {
        let t = c.pow(p.pow((k - i) as u32), nvars).scale(&BigInt::from(p).pow(i as u32));
        acc.add_assign(&t, 1);
    }
    acc
}

fn build(p: u64, m: u32) -> Result<UniversalPolynomials> {
    let nvars = 2 * m as usize;
    let a: Vec<IntPoly> = (0..m as usize).map(|i| IntPoly::var(nvars, i)).collect();
    let b: Vec<IntPoly> = (0..m as usize).map(|i| IntPoly::var(nvars, m as usize + i)).collect();
    let mut sum: Vec<IntPoly> = Vec::new();
    let mut product: Vec<IntPoly> = Vec::new();
    for k in 0..m as usize {
        let (ga, gb) = (ghost_of(&a, k, p, nvars), ghost_of(&b, k, p, nvars));
        let pk = BigInt::from(p).pow(k as u32);
        for (out, target) in [(&mut sum, { let mut t = ga.clone(); t.add_assign(&gb, 1); t }), (&mut product, ga.mul(&gb))] {
            let mut rest = target;
            let mut partial = out.clone();
            partial.push(IntPoly::default());
            rest.add_assign(&ghost_of(&partial, k, p, nvars), -1);
            out.push(rest.exact_div(&pk)?);
        }
    }
    Ok(UniversalPolynomials { p, m, sum, product })
}

type Cache = Mutex<HashMap<(u64, u32), Arc<UniversalPolynomials>>>;

/// Cached universal polynomials for length m.
pub fn universal_polynomials(p: u64, m: u32) -> Result<Arc<UniversalPolynomials>> {
    if m == 0 || m > MAX_LENGTH {
        return Err(Error::Window(format!("universal polynomials are built for lengths 1..={MAX_LENGTH}")));
    }
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(u) = cache.lock().unwrap().get(&(p, m)) {
        return Ok(u.clone());
    }
    let u = Arc::new(build(p, m)?);
    cache.lock().unwrap().insert((p, m), u.clone());
    Ok(u)
}

/// Ghost components of an integer Witt vector.
pub fn ghost_components(a: &[BigInt], p: u64) -> Vec<BigInt> {
    (0..a.len())
        .map(|k| (0..=k).map(|i| BigInt::from(p).pow(i as u32) * a[i].pow(p.pow((k - i) as u32) as u32)).sum())
        .collect()
}
