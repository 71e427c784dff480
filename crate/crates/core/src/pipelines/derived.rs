//! d3(tau) from group cohomology and target uniqueness, rather than by fiat.

use crate::groupcoh::{x1_adic_d2, X1AdicReport};
use crate::gralg::{GradedElement, Monomial, Presentation, Tridegree};
use crate::specseq::{build_e2, shift, DifferentialRule, Window};
use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct D3Derivation {
    pub presentation: String,
    pub x1_adic: X1AdicReport,
    /// E3 basis of the target of d3 on tau x
    pub tau_x_target: Vec<String>,
    /// E3 basis of the target of d3 on tau
    pub tau_target: Vec<String>,
    /// multiplication by x from the second target piece onto the first is bijective
    pub times_x_bijective: bool,
    pub image: String,
}

fn e3_basis(pres: &Presentation, d: Tridegree) -> Result<Vec<Monomial>> {
    // E3 = E2 near d: every generator has even t, so d2 vanishes
    if pres.alphabet.gens.iter().any(|g| g.degree.t % 2 != 0) {
        return Err(Error::Inconsistent("d2 is not zero for degree reasons".into()));
    }
    let win = Window::new((d.s, d.s), (d.t, d.t), (d.w, d.w));
    let page = build_e2(pres, win)?;
    page.piece(d)
        .and_then(|p| p.rep_monomials())
        .ok_or_else(|| Error::Inconsistent(format!("non-monomial E3 basis at {d}")))
}

/// Derives d3(tau) on an F2 presentation:
/// (i) the x1-adic d2 on the class of x2 is nonzero, so d3(tau) is nonzero
///     after transport along tau -> x2;
/// (ii) the only possible value of d3(tau x) is the unique basis element of its target;
/// (iii) x permanent and multiplication by x bijective between the targets pins down d3(tau).
pub fn derive_d3(pres: &Presentation) -> Result<(DifferentialRule, D3Derivation)> {
    let x1 = x1_adic_d2(1)?;
    if !(x1.outside_image && x1.connecting_nonzero && x1.d2_nonzero) {
        return Err(Error::UndeterminedDifferential("the x1-adic d2 on x2 vanishes".into()));
    }
    let tau = pres.monomial("tau");
    let x = pres.monomial("x");
    let tau_x = pres.multiply(&tau, &x).ok_or_else(|| Error::Inconsistent("tau x vanishes".into()))?;
    let big = e3_basis(pres, pres.degree(&tau_x) + shift(3))?;
    let small = e3_basis(pres, pres.degree(&tau) + shift(3))?;
    if big.len() != 1 || small.len() != 1 {
        return Err(Error::UndeterminedDifferential(format!(
            "d3 targets have dimensions {} and {}, not one",
            big.len(),
            small.len()
        )));
    }
    let times_x_bijective = pres.multiply(&small[0], &x).as_ref() == Some(&big[0]);
    if !times_x_bijective {
        return Err(Error::UndeterminedDifferential("multiplication by x does not identify the targets".into()));
    }
    let img = GradedElement::monomial(pres.ring, small[0].clone());
    let rule = DifferentialRule::new(pres, 3, &[("tau", img)], "d3(tau) derived: x1-adic d2 and target uniqueness")?;
    let report = D3Derivation {
        presentation: pres.name.clone(),
        x1_adic: x1,
        tau_x_target: big.iter().map(|m| pres.format(m)).collect(),
        tau_target: small.iter().map(|m| pres.format(m)).collect(),
        times_x_bijective,
        image: pres.format(&small[0]),
    };
    Ok((rule, report))
}
