use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coefficient ring of a graded algebra or an abelian group computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseRing {
    Fp { p: u64 },
    Zpm { p: u64, m: u32 },
    Z,
}

impl BaseRing {
    pub fn fp(p: u64) -> Self {
        BaseRing::Fp { p }
    }

    pub fn zpm(p: u64, m: u32) -> Self {
        BaseRing::Zpm { p, m }
    }

    /// Characteristic as an integer, zero for Z.
    pub fn modulus(&self) -> BigInt {
        match *self {
            BaseRing::Fp { p } => BigInt::from(p),
            BaseRing::Zpm { p, m } => BigInt::from(p).pow(m),
            BaseRing::Z => BigInt::zero(),
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match *self {
            BaseRing::Fp { p } | BaseRing::Zpm { p, .. } => Some(p),
            BaseRing::Z => None,
        }
    }

    /// Canonical representative in [0, n) for the finite rings.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        let n = self.modulus();
        if n.is_zero() {
            x.clone()
        } else {
            x.mod_floor(&n)
        }
    }

    pub fn is_zero(&self, x: &BigInt) -> bool {
        self.reduce(x).is_zero()
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&-a)
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        match *self {
            BaseRing::Z => a.abs().is_one(),
            _ => {
                let p = BigInt::from(self.prime().unwrap());
                !a.mod_floor(&p).is_zero()
            }
        }
    }

    pub fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        match *self {
            BaseRing::Z => {
                if a.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            _ => {
                let n = self.modulus();
                let g = a.mod_floor(&n).extended_gcd(&n);
                if g.gcd.is_one() {
                    Some(g.x.mod_floor(&n))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BaseRing::Fp { p } => write!(f, "F{p}"),
            BaseRing::Zpm { p, m } => write!(f, "Z/{p}^{m}"),
            BaseRing::Z => write!(f, "Z"),
        }
    }
}

/// p-adic valuation, `None` for zero.
pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    while (&y % &p).is_zero() {
        y /= &p;
        v += 1;
    }
    Some(v)
}

pub fn binomial(n: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i as i64);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1u128 % n as u128;
    let n128 = n as u128;
    let mut b128 = b as u128 % n128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % n128;
        }
        b128 = b128 * b128 % n128;
        e >>= 1;
    }
    b = r as u64;
    b
}

pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    pow_mod_u64(a, p - 2, p)
}
