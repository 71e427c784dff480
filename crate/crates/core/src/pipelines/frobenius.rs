//! Monomial images of the canonical map and of the Frobenius, from their values
//! on generators: phi(x) = u^-1, phi(u) = lambda u, phi(rho) = rho, phi(theta) = theta,
//! phi(tau^2) = tau^2 + epsilon rho^4 u^-2.

use crate::gralg::ring::binomial;
use crate::gralg::{Monomial, Presentation};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sum of monomials of the target presentation. `exact` is false when only the
/// leading term is known; such an image must vanish in the target group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub terms: Vec<(Monomial, BigInt)>,
    pub exact: bool,
}

impl Image {
    fn collect(target: &Presentation, raw: Vec<(Vec<i64>, BigInt)>, exact: bool) -> Image {
        let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            let Some(m) = target.normalize(&Monomial::new(e)) else { continue };
            match terms.iter_mut().find(|(t, _)| *t == m) {
                Some(entry) => entry.1 += c,
                None => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Image { terms, exact }
    }
}

/// The evident inclusion of a fixed-point class into the Tate presentation.
pub fn can_image(target: &Presentation, m: &Monomial) -> Image {
    Image::collect(target, vec![(m.exps.clone(), BigInt::one())], true)
}

fn lambda_pow(lambda: &BigInt, c: i64) -> Result<BigInt> {
    if c < 0 {
        return Err(Error::Inconsistent("negative power of u in a fixed-point class".into()));
    }
    Ok(lambda.pow(c as u32))
}

/// phi on the F2 presentation (tau, rho, theta, u, x).
pub fn phi_f2(source: &Presentation, target: &Presentation, m: &Monomial, lambda: &BigInt, epsilon: u64) -> Result<Image> {
    let [tau, rho, theta, u, x] = ["tau", "rho", "theta", "u", "x"].map(|g| source.gen(g));
    let e = &m.exps;
    let (c, i) = (e[u], e[x]);
    let scale = lambda_pow(lambda, c)?;
    let eps = BigInt::from(epsilon);
    let mut raw = Vec::new();
    let mut exact = true;
    let base = |t: i64, r: i64, th: i64, uu: i64| {
        let mut v = vec![0; 5];
        v[tau] = t;
        v[rho] = r;
        v[theta] = th;
        v[u] = uu;
        v
    };
    if e[theta] == 0 {
        if e[tau] % 2 != 0 {
            return Err(Error::Inconsistent(format!("no Frobenius image assigned to {}", source.format(m))));
        }
        let a = e[tau] / 2;
        for k in 0..=a {
            let coeff = &scale * binomial(a, k as u64) * eps.pow(k as u32);
            raw.push((base(2 * (a - k), e[rho] + 4 * k, 0, c - i - 2 * k), coeff));
        }
    } else {
        let j = -e[tau];
        if j % 2 == 0 {
            // (tau^2)^{-j/2}: binomial series, cut off once theta rho^{>0} = 0
            let mut k = 0;
            while e[rho] + 4 * k <= 0 {
                let coeff = &scale * binomial(-j / 2, k as u64) * eps.pow(k as u32);
                raw.push((base(-j - 2 * k, e[rho] + 4 * k, 1, c - i - 2 * k), coeff));
                k += 1;
            }
        } else {
            // only the leading term: tau itself has no assigned image
            raw.push((base(-j, e[rho], 1, c - i), scale));
            exact = false;
        }
    }
    Ok(Image::collect(target, raw, exact))
}

/// phi on F_p[tau^{+-2}, u, x]: tau^2 is fixed.
pub fn phi_odd(source: &Presentation, target: &Presentation, m: &Monomial, lambda: &BigInt) -> Result<Image> {
    let [t2, u, x] = ["tau2", "u", "x"].map(|g| source.gen(g));
    let e = &m.exps;
    let mut v = vec![0; 3];
    v[t2] = e[t2];
    v[u] = e[u] - e[x];
    Ok(Image::collect(target, vec![(v, lambda_pow(lambda, e[u])?)], true))
}

/// phi on the underlying F_p[u, x].
pub fn phi_underlying(source: &Presentation, target: &Presentation, m: &Monomial, lambda: &BigInt) -> Result<Image> {
    let [u, x] = ["u", "x"].map(|g| source.gen(g));
    let e = &m.exps;
    let mut v = vec![0; 2];
    v[u] = e[u] - e[x];
    Ok(Image::collect(target, vec![(v, lambda_pow(lambda, e[u])?)], true))
}

/// Restriction to the underlying level: tau, tau2 -> 1, rho, theta -> 0.
pub fn restriction(source: &Presentation, m: &Monomial) -> Option<Monomial> {
    let e = &m.exps;
    for g in ["rho", "theta"] {
        if let Some(i) = source.alphabet.index(g) {
            if e[i] != 0 {
                return None;
            }
        }
    }
    let u = source.gen("u");
    let x = source.gen("x");
    Some(Monomial::new(vec![e[u], e[x]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specseq::e2::{e2_f2, Flavor};

    #[test]
    fn phi_of_ux_is_two() {
        let h = e2_f2(Flavor::Fixed);
        let t = e2_f2(Flavor::Tate);
        let img = phi_f2(&h, &t, &h.monomial("u x"), &BigInt::from(2), 1).unwrap();
        assert_eq!(img.terms, vec![(t.alphabet.unit(), BigInt::from(2))]);
    }

    #[test]
    fn phi_of_tau_square_x_square() {
        let h = e2_f2(Flavor::Fixed);
        let t = e2_f2(Flavor::Tate);
        let img = phi_f2(&h, &t, &h.monomial("tau^2 x^2"), &BigInt::from(2), 1).unwrap();
        assert_eq!(img.terms.len(), 2);
        assert!(img.terms.contains(&(t.monomial("tau^2 u^-2"), BigInt::one())));
        assert!(img.terms.contains(&(t.monomial("rho^4 u^-4"), BigInt::one())));
        let img0 = phi_f2(&h, &t, &h.monomial("tau^2 x^2"), &BigInt::from(2), 0).unwrap();
        assert_eq!(img0.terms, vec![(t.monomial("tau^2 u^-2"), BigInt::one())]);
    }

    #[test]
    fn odd_tau_power_has_no_image() {
        let h = e2_f2(Flavor::Fixed);
        let t = e2_f2(Flavor::Tate);
        assert!(phi_f2(&h, &t, &h.monomial("tau x"), &BigInt::from(2), 0).is_err());
    }

    #[test]
    fn can_kills_nothing_on_monomials() {
        let h = e2_f2(Flavor::Fixed);
        let t = e2_f2(Flavor::Tate);
        let m = h.monomial("rho x");
        assert_eq!(can_image(&t, &m).terms, vec![(m, BigInt::one())]);
    }
}
