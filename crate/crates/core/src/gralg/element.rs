use super::monomial::{Monomial, Tridegree};
use super::presentation::Presentation;
use super::ring::BaseRing;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Finite linear combination of normal-form monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub ring: BaseRing,
    pub terms: BTreeMap<Monomial, BigInt>,
}

impl GradedElement {
    pub fn zero(ring: BaseRing) -> Self {
        GradedElement { ring, terms: BTreeMap::new() }
    }

    pub fn monomial(ring: BaseRing, m: Monomial) -> Self {
        Self::term(ring, m, BigInt::one())
    }

    pub fn term(ring: BaseRing, m: Monomial, c: BigInt) -> Self {
        let mut e = Self::zero(ring);
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        let ring = self.ring;
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry = ring.add(entry, &c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> GradedElement {
        let mut out = Self::zero(self.ring);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn multiply(&self, other: &GradedElement, pres: &Presentation) -> GradedElement {
        let mut out = Self::zero(self.ring);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(m) = pres.multiply(a, b) {
                    out.add_term(m, x * y);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32, pres: &Presentation) -> GradedElement {
        let mut out = GradedElement::monomial(self.ring, pres.alphabet.unit());
        for _ in 0..k {
            out = out.multiply(self, pres);
        }
        out
    }

    /// Common degree of all terms, if homogeneous.
    pub fn degree(&self, pres: &Presentation) -> Option<Tridegree> {
        let mut it = self.terms.keys().map(|m| pres.degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn format(&self, pres: &Presentation) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| if c.is_one() { pres.format(m) } else { format!("{c}*{}", pres.format(m)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
