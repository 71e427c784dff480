//! The first differential of the x1-adic filtration on F2[w1, w2], x1 = w1 + w2,
//! evaluated on the class of x2^n through the snake lemma.

use super::module::{c2_cohomology, induced_map, symmetric_piece, CohomologyGroup, GModule, ShortExact};
use crate::coeff::gfp_thr_f2_coefficients;
use crate::gralg::{FpMatrix, Monomial, Tridegree};
use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct X1AdicReport {
    pub n: i64,
    /// the class of x2^n is not the image of a fixed-point class of F2[w1, w2]_n
    pub outside_image: bool,
    pub connecting_nonzero: bool,
    /// projection of the connecting image to the associated graded
    pub d2_nonzero: bool,
}

fn x1_multiples(n: i64, power: i64) -> Result<Vec<Vec<u64>>> {
    // x1^power * (degree n - power monomials), as vectors in the degree n basis
    let c = gfp_thr_f2_coefficients();
    let pres = &c.presentation;
    let target = pres.degree_basis(Tridegree::new(n, 0, 0))?;
    if power > n {
        return Ok(Vec::new());
    }
    let source = pres.degree_basis(Tridegree::new(n - power, 0, 0))?;
    let w1 = pres.monomial("w1");
    let w2 = pres.monomial("w2");
    let mut out = Vec::new();
    for m in source {
        let mut terms: Vec<(Monomial, u64)> = vec![(m, 1)];
        for _ in 0..power {
            let mut next: Vec<(Monomial, u64)> = Vec::new();
            for (t, c) in &terms {
                for g in [&w1, &w2] {
                    let prod = pres.multiply(t, g).ok_or_else(|| Error::Inconsistent("polynomial product vanished".into()))?;
                    match next.iter_mut().find(|(u, _)| *u == prod) {
                        Some(e) => e.1 = (e.1 + c) % 2,
                        None => next.push((prod, *c)),
                    }
                }
            }
            terms = next;
        }
        let mut v = vec![0u64; target.len()];
        for (t, c) in terms {
            let i = target.binary_search(&t).map_err(|_| Error::Inconsistent("product outside the basis".into()))?;
            v[i] = (v[i] + c) % 2;
        }
        out.push(v);
    }
    Ok(out)
}

/// Computes d2 on x2^n in the spectral sequence of the x1-adic filtration, as
/// the composite of the connecting map for 0 -> x1 F -> F -> F/x1 -> 0 with the
/// projection x1 F -> x1 F / x1^2 F.
pub fn x1_adic_d2(n: i64) -> Result<X1AdicReport> {
    if n < 1 {
        return Err(Error::Window("x1-adic differential needs n >= 1".into()));
    }
    let b = symmetric_piece(n)?;
    let ses = ShortExact::from_submodule(&b, &x1_multiples(n, 1)?)?;
    let h0c = &c2_cohomology(&ses.c, (0, 0))?[0];
    let h0b = &c2_cohomology(&ses.b, (0, 0))?[0];
    let h1a = &c2_cohomology(&ses.a, (1, 1))?[0];
    if h0c.dim() != 1 {
        return Err(Error::Inconsistent("F/x1 should be one-dimensional".into()));
    }
    let qh = induced_map(&ses.q, h0b, h0c)?;
    let outside_image = qh.rank() == 0;
    let delta = super::module::connecting_map(&ses, 0)?;

    // x1^2 F inside x1 F, in the coordinates of A
    let deeper: Vec<Vec<u64>> = x1_multiples(n, 2)?
        .iter()
        .map(|v| ses.i.solve(v).ok_or_else(|| Error::Inconsistent("x1^2 F not inside x1 F".into())))
        .collect::<Result<_>>()?;
    let (gr, proj): (GModule, FpMatrix) = ses.a.quotient(&deeper)?;
    let h1gr: &CohomologyGroup = &c2_cohomology(&gr, (1, 1))?[0];
    let ph = induced_map(&proj, h1a, h1gr)?;
    let composite = ph.mul(&delta);
    Ok(X1AdicReport { n, outside_image, connecting_nonzero: !delta.is_zero(), d2_nonzero: !composite.is_zero() })
}
