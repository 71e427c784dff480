use super::page::shift;
use crate::gralg::{BaseRing, ExpRange, GradedElement, Monomial, Presentation};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// d_r on algebra generators; missing generators are sent to zero.
#[derive(Clone, Debug)]
pub struct DifferentialRule {
    pub r: u32,
    pub images: BTreeMap<usize, GradedElement>,
    pub permanent: Vec<usize>,
    pub provenance: String,
}

impl DifferentialRule {
    pub fn zero(pres: &Presentation, r: u32, provenance: &str) -> Self {
        DifferentialRule {
            r,
            images: BTreeMap::new(),
            permanent: (0..pres.alphabet.len()).collect(),
            provenance: provenance.to_string(),
        }
    }

    pub fn new(pres: &Presentation, r: u32, images: &[(&str, GradedElement)], provenance: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, img) in images {
            let g = pres
                .alphabet
                .index(name)
                .ok_or_else(|| Error::Presentation(format!("no generator {name}")))?;
            let want = pres.alphabet.gens[g].degree + shift(r);
            if let Some(d) = img.degree(pres) {
                if d != want {
                    return Err(Error::Inconsistent(format!("image of {name} has degree {d}, expected {want}")));
                }
            } else if !img.is_zero() {
                return Err(Error::Inconsistent(format!("image of {name} is not homogeneous")));
            }
            if !img.is_zero() {
                map.insert(g, img.clone());
            }
        }
        let permanent = (0..pres.alphabet.len()).filter(|g| !map.contains_key(g)).collect();
        Ok(DifferentialRule { r, images: map, permanent, provenance: provenance.to_string() })
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Leibniz extension to a monomial. On the cone, a cone generator enters with
    /// its local-cohomology exponent (one less than the stored one).
    pub fn apply(&self, pres: &Presentation, m: &Monomial) -> Result<GradedElement> {
        let p = pres.ring.prime().unwrap_or(0);
        let ring = pres.ring;
        let mut out = GradedElement::zero(ring);
        let cone = pres.on_cone(m);
        for (&g, img) in &self.images {
            let stored = m.exps[g];
            let lexp = if cone && pres.alphabet.gens[g].range == ExpRange::Cone { stored - 1 } else { stored };
            let c = if p > 0 { lexp.rem_euclid(p as i64) } else { lexp };
            if c == 0 {
                continue;
            }
            let rest = m.with(g, stored - 1);
            for (t, a) in &img.terms {
                if let Some(prod) = pres.multiply(&rest, t) {
                    out.add_term(prod, a * BigInt::from(c));
                }
            }
        }
        Ok(out)
    }
}

pub fn element(pres: &Presentation, terms: &[&str]) -> GradedElement {
    let mut e = GradedElement::zero(pres.ring);
    for t in terms {
        e.add_term(pres.monomial(t), BigInt::from(1));
    }
    e
}

pub fn integral(e: &GradedElement) -> GradedElement {
    GradedElement { ring: BaseRing::Z, terms: e.terms.clone() }
}
