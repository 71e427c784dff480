//! Coefficient rings and C2-Mackey functors.

pub mod mackey;

pub use mackey::{CyclicMackey, MackeyFunctor, MackeyMap, MackeyScalars};

use crate::gralg::{BaseRing, ExpRange, GeneratorSpec, Presentation, Tridegree};
use crate::{Error, Result};

/// Named coefficient algebra, optionally with an involution permuting generators.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CoefficientPresentation {
    pub name: String,
    pub p: u64,
    pub spectrum: String,
    pub flavor: String,
    pub presentation: Presentation,
    pub involution: Option<Vec<usize>>,
}

fn bideg(s: i64, w: i64) -> Tridegree {
    Tridegree::new(s, 0, w)
}

fn hf2_gens() -> Vec<GeneratorSpec> {
    vec![
        GeneratorSpec::new("tau", bideg(0, -1), ExpRange::Cone),
        GeneratorSpec::new("rho", bideg(-1, -1), ExpRange::Cone),
        GeneratorSpec::new("theta", bideg(0, 2), ExpRange::Marker),
    ]
}

fn odd_gens() -> Vec<GeneratorSpec> {
    vec![GeneratorSpec::new("tau2", bideg(0, -4), ExpRange::Laurent)]
}

/// F2[tau, rho] plus the theta-cone, bigraded by (s, w).
pub fn hf2_coefficients() -> CoefficientPresentation {
    CoefficientPresentation {
        name: "hf2".into(),
        p: 2,
        spectrum: "HF2".into(),
        flavor: "C2-equivariant".into(),
        presentation: Presentation::new("hf2", BaseRing::fp(2), hf2_gens(), vec![]),
        involution: None,
    }
}

/// F_p[tau^{+-2}] for odd p, with tau of weight -2.
pub fn hfp_odd_coefficients(p: u64) -> Result<CoefficientPresentation> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Presentation(format!("odd prime required, got {p}")));
    }
    Ok(CoefficientPresentation {
        name: "hfp".into(),
        p,
        spectrum: format!("HF{p}"),
        flavor: "C2-equivariant".into(),
        presentation: Presentation::new("hfp", BaseRing::fp(p), odd_gens(), vec![]),
        involution: None,
    })
}

/// Polynomial extension of the HF_p coefficients by x of bidegree (2, 1).
pub fn thr_coefficients(p: u64) -> Result<CoefficientPresentation> {
    let mut gens = if p == 2 {
        hf2_gens()
    } else {
        hfp_odd_coefficients(p)?.presentation.alphabet.gens
    };
    gens.push(GeneratorSpec::new("x", bideg(2, 1), ExpRange::NonNeg));
    Ok(CoefficientPresentation {
        name: "thr".into(),
        p,
        spectrum: format!("THR(HF{p})"),
        flavor: "C2-equivariant".into(),
        presentation: Presentation::new("thr", BaseRing::fp(p), gens, vec![]),
        involution: None,
    })
}

/// F2[w1, w2] with |w_i| = 1 and the swap involution.
pub fn gfp_thr_f2_coefficients() -> CoefficientPresentation {
    let gens = vec![
        GeneratorSpec::new("w1", bideg(1, 0), ExpRange::NonNeg),
        GeneratorSpec::new("w2", bideg(1, 0), ExpRange::NonNeg),
    ];
    CoefficientPresentation {
        name: "gfp".into(),
        p: 2,
        spectrum: "THR(HF2)".into(),
        flavor: "geometric fixed points".into(),
        presentation: Presentation::new("gfp", BaseRing::fp(2), gens, vec![]),
        involution: Some(vec![1, 0]),
    }
}

impl CoefficientPresentation {
    pub fn by_name(name: &str, p: u64) -> Result<Self> {
        match name {
            "hf2" => Ok(hf2_coefficients()),
            "hfp" => hfp_odd_coefficients(p),
            "thr" => thr_coefficients(p),
            "gfp" => Ok(gfp_thr_f2_coefficients()),
            _ => Err(Error::Presentation(format!("unknown coefficient ring {name}"))),
        }
    }

    pub fn apply_involution(&self, m: &crate::gralg::Monomial) -> crate::gralg::Monomial {
        match &self.involution {
            None => m.clone(),
            Some(perm) => {
                let mut out = m.clone();
                for (i, &j) in perm.iter().enumerate() {
                    out.exps[j] = m.exps[i];
                }
                out
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gralg::{SpecValue, Specialization};

    #[test]
    fn hf2_pieces() {
        let c = hf2_coefficients();
        let pr = &c.presentation;
        let b = pr.degree_basis(bideg(0, 0)).unwrap();
        assert_eq!(b, vec![pr.alphabet.unit()]);
        assert_eq!(pr.degree_basis(bideg(0, -1)).unwrap(), vec![pr.monomial("tau")]);
        assert_eq!(pr.degree_basis(bideg(0, 2)).unwrap(), vec![pr.monomial("theta")]);
    }

    #[test]
    fn hf2_cone_rules() {
        let pr = hf2_coefficients().presentation;
        let th = pr.monomial("theta");
        assert!(pr.multiply(&th, &pr.monomial("tau")).is_none());
        assert!(pr.multiply(&th, &pr.monomial("rho")).is_none());
        assert!(pr.multiply(&th, &th).is_none());
        let cone = pr.monomial("theta tau^-1");
        assert_eq!(pr.multiply(&cone, &pr.monomial("tau")), Some(th));
    }

    #[test]
    fn odd_pieces() {
        let pr = hfp_odd_coefficients(3).unwrap().presentation;
        assert_eq!(pr.degree_basis(bideg(0, -4)).unwrap(), vec![pr.monomial("tau2")]);
        assert!(pr.degree_basis(bideg(0, -2)).unwrap().is_empty());
        assert!(pr.degree_basis(bideg(1, 0)).unwrap().is_empty());
        assert!(hfp_odd_coefficients(2).is_err());
    }

    #[test]
    fn thr_underlying() {
        let pr = thr_coefficients(2).unwrap().presentation;
        assert!(pr.degree_basis(bideg(2, 1)).unwrap().contains(&pr.monomial("x")));
        assert!(pr.degree_basis(bideg(4, 2)).unwrap().contains(&pr.monomial("x^2")));
        let sp = Specialization::new(
            &pr,
            "thh",
            &[("tau", SpecValue::One), ("rho", SpecValue::Zero), ("theta", SpecValue::Zero)],
        );
        assert_eq!(sp.target.alphabet.len(), 1);
        assert_eq!(sp.apply(&pr.monomial("tau^3 x^2")), Some(sp.target.monomial("x^2")));
        assert_eq!(sp.apply(&pr.monomial("rho x")), None);
    }

    #[test]
    fn gfp_swap() {
        let c = gfp_thr_f2_coefficients();
        let pr = &c.presentation;
        assert_eq!(pr.degree_basis(bideg(2, 0)).unwrap().len(), 3);
        assert_eq!(c.apply_involution(&pr.monomial("w1^2 w2")), pr.monomial("w1 w2^2"));
    }
}
