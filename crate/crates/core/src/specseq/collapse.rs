//! Generator-based certification that no differential beyond the declared
//! rules can be nonzero inside a window.

use super::page::{build_e2, shift, Page, Window};
use super::rules::DifferentialRule;
use crate::gralg::abelian::solve_in_span;
use crate::gralg::{ExpRange, Monomial, Presentation, Tridegree};
use crate::{Error, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// the target piece of d_r is zero
    TargetZero,
    /// the class is a product of generators that are permanent at this page
    Product,
    /// permanence supplied with the generator, with its justification
    Declared(String),
}

impl Evidence {
    fn label(&self) -> String {
        match self {
            Evidence::TargetZero => "target-zero".into(),
            Evidence::Product => "leibniz-product".into(),
            Evidence::Declared(l) => format!("declared: {l}"),
        }
    }
}

/// Algebra generator of the later pages, written in local-cohomology exponents:
/// on the cone every cone generator carries one less than its stored exponent.
#[derive(Clone, Debug)]
pub struct PermanentGenerator {
    pub name: String,
    pub cech: Vec<i64>,
    pub degree: Tridegree,
    pub declared: Option<String>,
    pub evidence: BTreeMap<u32, Evidence>,
}

impl PermanentGenerator {
    pub fn new(pres: &Presentation, name: &str, cech: Vec<i64>, declared: Option<&str>) -> Self {
        let stored = stored_from_cech(pres, &cech);
        PermanentGenerator {
            name: name.to_string(),
            degree: pres.degree(&Monomial::new(stored)),
            cech,
            declared: declared.map(str::to_string),
            evidence: BTreeMap::new(),
        }
    }

    pub fn certified(&self, r: u32) -> bool {
        self.evidence.contains_key(&r)
    }
}

fn stored_from_cech(pres: &Presentation, cech: &[i64]) -> Vec<i64> {
    let cone = pres.alphabet.marker().is_some_and(|k| cech[k] == 1);
    cech.iter()
        .zip(&pres.alphabet.gens)
        .map(|(&e, g)| if cone && g.range == ExpRange::Cone { e + 1 } else { e })
        .collect()
}

pub fn cech_of(pres: &Presentation, m: &Monomial) -> Vec<i64> {
    let cone = pres.on_cone(m);
    m.exps
        .iter()
        .zip(&pres.alphabet.gens)
        .map(|(&e, g)| if cone && g.range == ExpRange::Cone { e - 1 } else { e })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CollapseCertificate {
    pub presentation: String,
    pub collapse_page: u32,
    pub first_checked: u32,
    pub r_max: u32,
    pub region: Window,
    pub generators: Vec<PermanentGenerator>,
    pub classes_checked: usize,
    pub evidence_counts: BTreeMap<String, usize>,
}

impl CollapseCertificate {
    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| {
                let ev: BTreeMap<String, String> = g.evidence.iter().map(|(r, e)| (r.to_string(), e.label())).collect();
                json!({ "name": g.name, "degree": [g.degree.s, g.degree.t, g.degree.w], "evidence": ev })
            })
            .collect();
        json!({
            "schema": "rcyclo/collapse",
            "version": 1,
            "presentation": self.presentation,
            "collapse_page": self.collapse_page,
            "checked_pages": [self.first_checked, self.r_max],
            "region": { "s": [self.region.s.0, self.region.s.1], "t": [self.region.t.0, self.region.t.1], "w": [self.region.w.0, self.region.w.1] },
            "generators": gens,
            "classes_checked": self.classes_checked,
            "evidence_counts": self.evidence_counts,
        })
    }
}

/// Builds E2 on `window`, applies the rules in order and returns the last page.
pub fn run_pages(pres: &Presentation, rules: &[DifferentialRule], window: Window) -> Result<(Page, Vec<Page>)> {
    let mut page = build_e2(pres, window)?;
    let mut history = Vec::new();
    for rule in rules {
        let with_d = page.with_differential(rule)?;
        with_d.check_d_squared()?;
        page = with_d.turn();
        history.push(with_d);
    }
    Ok((page, history))
}

fn padding(rules: &[DifferentialRule]) -> (i64, i64) {
    let ps: i64 = rules.iter().map(|r| r.r as i64).sum();
    (ps + 1, ps)
}

/// Turns the declared pages, then certifies every later differential vanishes
/// on and into `region` for pages up to `r_max`.
pub fn run_to_collapse(
    pres: &Presentation,
    rules: &[DifferentialRule],
    region: Window,
    r_max: u32,
    generators: Vec<PermanentGenerator>,
) -> Result<(Page, CollapseCertificate, Vec<Page>)> {
    let first = rules.last().map_or(2, |r| r.r + 1);
    for (i, r) in rules.iter().enumerate() {
        if r.r != 2 + i as u32 {
            return Err(Error::Inconsistent("rules must cover consecutive pages from 2".into()));
        }
    }
    let (ps, pt) = padding(rules);
    let rm = r_max as i64;
    let window = region.pad(rm + ps, rm + pt);
    let (page, history) = run_pages(pres, rules, window)?;

    // generator targets, page by page; other weights get their own pages
    let mut gens = generators;
    let mut by_weight: BTreeMap<i64, Window> = BTreeMap::new();
    for g in &gens {
        let lo = g.degree + shift(r_max);
        let hi = g.degree + shift(first);
        let w = Window::at_weight(g.degree.w, (lo.s, hi.s), (hi.t, lo.t));
        by_weight.entry(g.degree.w).and_modify(|x| *x = x.hull(&w)).or_insert(w);
    }
    let mut aux: BTreeMap<i64, Page> = BTreeMap::new();
    for (w, win) in by_weight {
        if region.w == (w, w) {
            aux.insert(w, page.clone());
        } else {
            aux.insert(w, run_pages(pres, rules, win.pad(ps, pt))?.0);
        }
    }
    for g in gens.iter_mut() {
        let pg = &aux[&g.degree.w];
        for r in first..=r_max {
            let tgt = g.degree + shift(r);
            if pg.is_exact(tgt) && pg.dim(tgt) == 0 {
                g.evidence.insert(r, Evidence::TargetZero);
            } else if let Some(l) = &g.declared {
                g.evidence.insert(r, Evidence::Declared(l.clone()));
            }
        }
    }

    let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| g.cech.iter().map(|&e| BigInt::from(e)).collect()).collect();
    let n = pres.alphabet.len();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut checked = 0;
    let mut factor_cache: BTreeMap<Monomial, Option<Vec<usize>>> = BTreeMap::new();
    let mut to_check: BTreeMap<Tridegree, Vec<u32>> = BTreeMap::new();
    for d in region.degrees() {
        for r in first..=r_max {
            to_check.entry(d).or_default().push(r);
            to_check.entry(d - shift(r)).or_default().push(r);
        }
    }
    for (d, rs) in to_check {
        let Some(pc) = page.piece(d) else {
            return Err(Error::Window(format!("piece {d} not computed")));
        };
        if pc.dim() == 0 {
            continue;
        }
        if !pc.exact {
            return Err(Error::Window(format!("piece {d} is not exact on E{}", page.r)));
        }
        let mut rs = rs;
        rs.sort_unstable();
        rs.dedup();
        for i in 0..pc.dim() {
            checked += 1;
            let mono = pc.rep_monomial(i);
            for &r in &rs {
                let tgt = d + shift(r);
                if page.is_exact(tgt) && page.dim(tgt) == 0 {
                    *counts.entry("target-zero".into()).or_default() += 1;
                    continue;
                }
                let used = match &mono {
                    Some(m) => factor_cache
                        .entry(m.clone())
                        .or_insert_with(|| {
                            let c: Vec<BigInt> = cech_of(pres, m).into_iter().map(BigInt::from).collect();
                            solve_in_span(&cols, n, &c).ok().flatten().map(|k| {
                                k.iter().enumerate().filter(|(_, x)| !num_traits::Zero::is_zero(*x)).map(|(j, _)| j).collect()
                            })
                        })
                        .clone(),
                    None => None,
                };
                match used {
                    Some(js) if js.iter().all(|&j| gens[j].certified(r)) => {
                        *counts.entry("leibniz-product".into()).or_default() += 1;
                    }
                    _ => {
                        let name = page.describe(d).get(i).cloned().unwrap_or_default();
                        return Err(Error::UndeterminedDifferential(format!(
                            "d{r} on {name} at {d} has a possible target in {tgt}"
                        )));
                    }
                }
            }
        }
    }
    let last_nonzero = history.iter().filter(|p| p.differential.values().any(|m| !m.is_zero())).map(|p| p.r).max();
    let cert = CollapseCertificate {
        presentation: pres.name.clone(),
        collapse_page: last_nonzero.map_or(2, |r| r + 1),
        first_checked: first,
        r_max,
        region,
        generators: gens,
        classes_checked: checked,
        evidence_counts: counts,
    };
    Ok((page, cert, history))
}
