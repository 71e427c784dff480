//! Independent oracles shared by the integration targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rcyclo_core::gralg::matrix::Dense;
use rcyclo_core::gralg::snf::smith;
use rcyclo_core::specseq::DifferentialRule;
use rcyclo_core::{GradedElement, Monomial, Presentation};
use std::collections::{BTreeMap, BTreeSet};

/// (Z_2 towers, F_2 summands) per stem, enumerated from the three summand families.
/// tau^2 x^2 and tau^2 u^-2 sit in stem 4, rho x and rho u^-1 in stem 1.
pub fn summand_oracle(stems: (i64, i64)) -> BTreeMap<i64, (usize, usize)> {
    let mut out: BTreeMap<i64, (usize, usize)> = (stems.0..=stems.1).map(|n| (n, (0, 0))).collect();
    let mut bump = |n: i64, free: bool| {
        if let Some(e) = out.get_mut(&n) {
            if free {
                e.0 += 1
            } else {
                e.1 += 1
            }
        }
    };
    // Z_2[A, B]/(2B){1}: A^a B^b with A in stem 4, B in stem 1
    for a in 0..=stems.1 / 4 {
        for b in 0..=stems.1 {
            bump(4 * a + b, b == 0);
        }
    }
    // Z_2[u^2/tau^2]{theta u^2}: stem -4 - 4k
    for k in 0..=stems.0.abs() {
        bump(-4 - 4 * k, true);
    }
    // F_2{theta / (rho^i tau^(2j+1)) u^(i+2j+3)}: stem -i - 4j - 6
    for i in 0..=stems.0.abs() {
        for j in 0..=stems.0.abs() {
            bump(-i - 4 * j - 6, false);
        }
    }
    out
}

/// Dimensions of ker(1 + sigma) and im(1 + sigma) on F2[w1, w2]_t with the swap,
/// by listing all 2^(t+1) vectors. Basis vector a is w1^a w2^(t-a); the swap reverses bits.
pub fn brute_force_swap(t: u32) -> (u32, u32) {
    let n = t + 1;
    let swap = |v: u32| v.reverse_bits() >> (32 - n);
    let mut kernel = 0u64;
    let mut image = BTreeSet::new();
    for v in 0..(1u32 << n) {
        let d = v ^ swap(v);
        if d == 0 {
            kernel += 1;
        }
        image.insert(d);
    }
    (kernel.trailing_zeros(), (image.len() as u64).trailing_zeros())
}

/// (H^0, H^s for s > 0, Tate H^s) dimensions from the two-periodic resolution,
/// whose differentials all equal 1 + sigma over F2.
pub fn brute_force_c2(t: u32) -> (u32, u32, u32) {
    let (k, i) = brute_force_swap(t);
    (k, k - i, k - i)
}

/// d(ab) - d(a) b - a d(b) vanishes.
pub fn leibniz_holds(pres: &Presentation, rule: &DifferentialRule, a: &Monomial, b: &Monomial) -> bool {
    let p = BigInt::from(pres.ring.prime().unwrap());
    let lhs = match pres.multiply(a, b) {
        Some(ab) => rule.apply(pres, &ab).unwrap(),
        None => GradedElement::zero(pres.ring),
    };
    let ea = GradedElement::monomial(pres.ring, a.clone());
    let eb = GradedElement::monomial(pres.ring, b.clone());
    let rhs = rule.apply(pres, a).unwrap().multiply(&eb, pres).add(&ea.multiply(&rule.apply(pres, b).unwrap(), pres));
    let diff = lhs.add(&rhs.scale(&BigInt::from(-1)));
    diff.terms.iter().all(|(_, c)| c.mod_floor(&p).is_zero())
}

/// Fraction-free determinant.
pub fn bareiss_det(a: &Dense, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else { return BigInt::zero() };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn mul(a: &Dense, b: &Dense, rows: usize, inner: usize, cols: usize) -> Dense {
    (0..rows)
        .map(|i| (0..cols).map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

/// u a v = d, u and v unimodular, d diagonal with each entry dividing the next.
pub fn snf_valid(a: &Dense, nrows: usize, ncols: usize) -> bool {
    let s = smith(a, nrows, ncols).unwrap();
    let uav = mul(&mul(&s.u, a, nrows, nrows, ncols), &s.v, nrows, ncols, ncols);
    if uav != s.d {
        return false;
    }
    for i in 0..nrows {
        for j in 0..ncols {
            if i != j && !s.d[i][j].is_zero() {
                return false;
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        if w[0].is_zero() && !w[1].is_zero() {
            return false;
        }
        if !w[0].is_zero() && !w[1].is_multiple_of(&w[0]) {
            return false;
        }
    }
    if diag.iter().any(|x| x.is_negative()) {
        return false;
    }
    bareiss_det(&s.u, nrows).abs().is_one() && bareiss_det(&s.v, ncols).abs().is_one()
}
