//! Abutment groups from E-infinity classes and declared detection rules.

use super::page::{Page, Window};
use crate::gralg::{AbGroup, Monomial, PadicGroup, Tridegree};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// "multiplication by `detects` is detected by the class `detector`".
#[derive(Clone, Debug)]
pub struct ExtensionRule {
    pub detector: Monomial,
    pub detects: u64,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub bottom: Monomial,
    pub generator: String,
    /// None: the chain leaves the computed page, read as a copy of Z_p
    pub length: Option<u32>,
    pub chain: Vec<(Tridegree, Monomial)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemGroup {
    pub stem: i64,
    pub p: u64,
    pub summands: Vec<Summand>,
    pub assoc_graded_only: bool,
    /// class -> (summand, power of p it detects)
    pub classes: BTreeMap<Monomial, (usize, u32)>,
}

impl StemGroup {
    pub fn padic(&self) -> PadicGroup {
        let mut g = PadicGroup::zero(self.p);
        for s in &self.summands {
            match s.length {
                None => g.zp_rank += 1,
                Some(l) => g.torsion.push(l),
            }
        }
        g.torsion.sort_unstable();
        g
    }

    /// The group at precision p^m: open summands become Z/p^m.
    pub fn group(&self, m: u32) -> AbGroup {
        let orders: Vec<Option<BigInt>> = self
            .summands
            .iter()
            .map(|s| Some(BigInt::from(self.p).pow(s.length.map_or(m, |l| l.min(m)))))
            .collect();
        AbGroup::cyclic_sum(&orders)
    }
}

/// Class of a monomial cycle on `page`: `Some(None)` when it is zero, `Some(Some(rep))`
/// when it equals a representative, `None` when the piece is unknown.
pub fn class_of(page: &Page, d: Tridegree, m: &Monomial) -> Result<Option<Option<Monomial>>> {
    let Some(pc) = page.piece(d) else { return Ok(None) };
    if !pc.exact {
        return Ok(None);
    }
    let Some(i) = pc.index_of(m) else {
        return Err(Error::Inconsistent(format!("monomial not in piece {d}")));
    };
    let mut v = vec![0u64; pc.ambient.len()];
    v[i] = 1;
    let Some(c) = pc.coords(&v, page.p) else {
        return Err(Error::Inconsistent(format!("{} is not a cycle", page.presentation.format(m))));
    };
    let nz: Vec<usize> = c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, _)| k).collect();
    match nz.as_slice() {
        [] => Ok(Some(None)),
        [k] if c[*k] == 1 => match pc.rep_monomial(*k) {
            Some(r) => Ok(Some(Some(r))),
            None => Err(Error::ExtensionAmbiguity(format!("non-monomial class at {d}"))),
        },
        _ => Err(Error::ExtensionAmbiguity(format!("class at {d} is a sum of representatives"))),
    }
}

/// Groups the E-infinity classes of each stem in the region into chains linked by
/// the detecting class.
pub fn assemble_abutment(
    page: &Page,
    region: Window,
    stems: (i64, i64),
    rule: Option<&ExtensionRule>,
) -> Result<BTreeMap<i64, StemGroup>> {
    let pres = &page.presentation;
    let p = page.p;
    let mut out = BTreeMap::new();
    for n in stems.0..=stems.1 {
        let mut classes: Vec<(Tridegree, Monomial)> = Vec::new();
        for d in region.degrees().into_iter().filter(|d| d.stem() == n) {
            let Some(pc) = page.piece(d) else { continue };
            if pc.dim() == 0 {
                continue;
            }
            if !pc.exact {
                return Err(Error::Window(format!("piece {d} is not exact")));
            }
            let reps = pc
                .rep_monomials()
                .ok_or_else(|| Error::ExtensionAmbiguity(format!("non-monomial representatives at {d}")))?;
            for m in reps {
                classes.push((d, m));
            }
        }
        let Some(rule) = rule else {
            let filtrations: std::collections::BTreeSet<i64> = classes.iter().map(|(d, _)| d.t).collect();
            let summands: Vec<Summand> = classes
                .iter()
                .map(|(d, m)| Summand { bottom: m.clone(), generator: pres.format(m), length: Some(1), chain: vec![(*d, m.clone())] })
                .collect();
            let cls = summands.iter().enumerate().map(|(i, s)| (s.bottom.clone(), (i, 0))).collect();
            out.insert(n, StemGroup { stem: n, p, summands, assoc_graded_only: filtrations.len() > 1, classes: cls });
            continue;
        };
        if rule.detects != p {
            return Err(Error::Inconsistent(format!("rule detects {} on a mod {p} page", rule.detects)));
        }
        let step = pres.degree(&rule.detector);
        let mut summands: Vec<Summand> = Vec::new();
        let mut cls: BTreeMap<Monomial, (usize, u32)> = BTreeMap::new();
        for (d, m) in &classes {
            if cls.contains_key(m) {
                continue;
            }
            // walk down to the bottom of the chain
            let (mut bd, mut bm) = (*d, m.clone());
            loop {
                let pd = bd - step;
                let Some(pc) = page.piece(pd) else { break };
                if !pc.exact {
                    return Err(Error::Window(format!("cannot decide the bottom of a chain at {pd}")));
                }
                let reps = pc.rep_monomials().ok_or_else(|| Error::ExtensionAmbiguity(format!("non-monomial class at {pd}")))?;
                let mut pred = None;
                for r in reps {
                    if let Some(prod) = pres.multiply(&r, &rule.detector) {
                        if prod == bm && class_of(page, bd, &prod)? == Some(Some(bm.clone())) {
                            if pred.is_some() {
                                return Err(Error::ExtensionAmbiguity("detector is not injective".into()));
                            }
                            pred = Some(r);
                        }
                    }
                }
                match pred {
                    Some(r) => {
                        bd = pd;
                        bm = r;
                    }
                    None => break,
                }
            }
            // walk up
            let mut chain = vec![(bd, bm.clone())];
            let length = loop {
                let (cd, cm) = chain.last().unwrap().clone();
                let Some(prod) = pres.multiply(&cm, &rule.detector) else { break Some(chain.len() as u32) };
                match class_of(page, cd + step, &prod)? {
                    None => break None,
                    Some(None) => break Some(chain.len() as u32),
                    Some(Some(next)) => chain.push((cd + step, next)),
                }
            };
            let j = summands.len();
            for (k, (_, c)) in chain.iter().enumerate() {
                if cls.insert(c.clone(), (j, k as u32)).is_some() {
                    return Err(Error::ExtensionAmbiguity("chains overlap".into()));
                }
            }
            summands.push(Summand { bottom: bm.clone(), generator: pres.format(&bm), length, chain });
        }
        out.insert(n, StemGroup { stem: n, p, summands, assoc_graded_only: false, classes: cls });
    }
    Ok(out)
}
