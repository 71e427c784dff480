//! The x-adic spectral sequences used by the pipelines, run to collapse and
//! assembled into abutment groups.

use super::derived::derive_d3;
use crate::gralg::{AbGroup, Monomial, Presentation};
use crate::specseq::e2::by_name;
use crate::specseq::rules::element;
use crate::specseq::{
    assemble_abutment, class_of, run_to_collapse, CollapseCertificate, DifferentialRule, ExtensionRule, Page,
    PermanentGenerator, StemGroup, Window,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use std::collections::BTreeMap;

pub const R_MAX: u32 = 20;

/// How the page-three differential on tau enters the F2 sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D3Route {
    Asserted,
    Derived,
}

/// d2 = 0 and d3(tau) = u rho x, either stated or derived.
pub fn f2_rules(pres: &Presentation, route: D3Route) -> Result<Vec<DifferentialRule>> {
    let d2 = DifferentialRule::zero(pres, 2, "d2 = 0: the E2 term is concentrated in even t");
    let d3 = match route {
        D3Route::Asserted => {
            DifferentialRule::new(pres, 3, &[("tau", element(pres, &["u rho x"]))], "d3(tau) = u rho x (asserted)")?
        }
        D3Route::Derived => derive_d3(pres)?.0,
    };
    Ok(vec![d2, d3])
}

/// Algebra generators of E4 in local-cohomology exponents (tau, rho, theta, u, x).
pub fn f2_generators(pres: &Presentation) -> Vec<PermanentGenerator> {
    let mut g = vec![
        PermanentGenerator::new(pres, "tau^2", vec![2, 0, 0, 0, 0], None),
        PermanentGenerator::new(pres, "rho", vec![0, 1, 0, 0, 0], Some("rho is a permanent cycle")),
        PermanentGenerator::new(pres, "u", vec![0, 0, 0, 1, 0], None),
        PermanentGenerator::new(pres, "x", vec![0, 0, 0, 0, 1], None),
        PermanentGenerator::new(pres, "theta/(tau rho)", vec![0, 0, 1, 0, 0], None),
    ];
    if pres.name == "tss" {
        g.push(PermanentGenerator::new(pres, "u^-1", vec![0, 0, 0, -1, 0], None));
    }
    g
}

/// Generators (tau2, u, x) of the odd-primary E2 terms.
pub fn odd_generators(pres: &Presentation) -> Vec<PermanentGenerator> {
    let mut g = vec![
        PermanentGenerator::new(pres, "tau^2", vec![1, 0, 0], None),
        PermanentGenerator::new(pres, "tau^-2", vec![-1, 0, 0], None),
        PermanentGenerator::new(pres, "u", vec![0, 1, 0], None),
        PermanentGenerator::new(pres, "x", vec![0, 0, 1], None),
    ];
    if pres.name.starts_with("tss") {
        g.push(PermanentGenerator::new(pres, "u^-1", vec![0, -1, 0], None));
    }
    g
}

pub fn underlying_generators(pres: &Presentation) -> Vec<PermanentGenerator> {
    let mut g = vec![
        PermanentGenerator::new(pres, "u", vec![1, 0], None),
        PermanentGenerator::new(pres, "x", vec![0, 1], None),
    ];
    if pres.name.starts_with("tss") {
        g.push(PermanentGenerator::new(pres, "u^-1", vec![-1, 0], None));
    }
    g
}

/// Declared differentials and E-infinity generators for one of the E2 presentations.
pub fn rules_and_generators(pres: &Presentation, route: D3Route) -> Result<(Vec<DifferentialRule>, Vec<PermanentGenerator>)> {
    if pres.alphabet.index("theta").is_some() {
        Ok((f2_rules(pres, route)?, f2_generators(pres)))
    } else if pres.alphabet.index("tau2").is_some() {
        Ok((Vec::new(), odd_generators(pres)))
    } else {
        Ok((Vec::new(), underlying_generators(pres)))
    }
}

/// Runs hfpss, tss, hfpss-e or tss-e at the prime p.
pub fn run_named(name: &str, p: u64, stems: (i64, i64), route: D3Route) -> Result<SpectralRun> {
    let pres = by_name(name, p).ok_or_else(|| Error::Presentation(format!("unknown spectral sequence {name}")))?;
    let (rules, gens) = rules_and_generators(&pres, route)?;
    SpectralRun::run(&pres, &rules, gens, stems)
}

/// Box at weight 0 holding every E-infinity class of the stems, chain bottoms included.
pub fn stem_region(stems: (i64, i64)) -> Window {
    let s_lo = stems.0.min(-stems.1) - 2;
    let s_hi = stems.1.max(0) + 2;
    Window::at_weight(0, (s_lo, s_hi), (0, stems.1 - s_lo))
}

/// A spectral sequence run to its collapse page, with abutment groups.
#[derive(Clone, Debug)]
pub struct SpectralRun {
    pub page: Page,
    pub certificate: CollapseCertificate,
    pub region: Window,
    pub groups: BTreeMap<i64, StemGroup>,
    pub rule: ExtensionRule,
}

impl SpectralRun {
    pub fn run(
        pres: &Presentation,
        rules: &[DifferentialRule],
        generators: Vec<PermanentGenerator>,
        stems: (i64, i64),
    ) -> Result<Self> {
        let region = stem_region(stems);
        let (page, certificate, _) = run_to_collapse(pres, rules, region, R_MAX, generators)?;
        let p = pres.ring.prime().ok_or_else(|| Error::Presentation("spectral sequence over Z".into()))?;
        let rule = ExtensionRule { detector: pres.monomial("u x"), detects: p, label: format!("u x detects {p}") };
        let groups = assemble_abutment(&page, region, stems, Some(&rule))?;
        Ok(SpectralRun { page, certificate, region, groups, rule })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.page.presentation
    }

    pub fn p(&self) -> u64 {
        self.page.p
    }

    pub fn stem_group(&self, n: i64) -> Result<&StemGroup> {
        self.groups.get(&n).ok_or_else(|| Error::Window(format!("stem {n} outside {}", self.page.presentation.name)))
    }

    pub fn group(&self, n: i64, m: u32) -> Result<AbGroup> {
        Ok(self.stem_group(n)?.group(m))
    }

    /// Orders of the summands of stem n at precision m.
    pub fn orders(&self, n: i64, m: u32) -> Result<Vec<BigInt>> {
        let g = self.stem_group(n)?;
        Ok(g.summands.iter().map(|s| BigInt::from(g.p).pow(s.length.map_or(m, |l| l.min(m)))).collect())
    }

    /// Coordinates in the stem-n group of a sum of monomials detected on the page.
    pub fn evaluate(&self, n: i64, terms: &[(Monomial, BigInt)], m: u32) -> Result<Vec<BigInt>> {
        let g = self.stem_group(n)?;
        let orders = self.orders(n, m)?;
        let pres = self.presentation();
        let mut v = vec![BigInt::from(0); g.summands.len()];
        for (mono, c) in terms {
            let d = pres.degree(mono);
            if d.stem() != n || d.w != 0 {
                return Err(Error::Inconsistent(format!("{} does not lie in stem {n}", pres.format(mono))));
            }
            match class_of(&self.page, d, mono)? {
                None => return Err(Error::Window(format!("class of {} at {d} is not determined", pres.format(mono)))),
                Some(None) => {}
                Some(Some(rep)) => {
                    let &(j, k) = g
                        .classes
                        .get(&rep)
                        .ok_or_else(|| Error::Window(format!("{} lies on no assembled chain", pres.format(&rep))))?;
                    v[j] += c * BigInt::from(g.p).pow(k);
                }
            }
        }
        for (x, o) in v.iter_mut().zip(&orders) {
            *x = x.mod_floor(o);
        }
        Ok(v)
    }
}

/// The four sequences for one prime: equivariant and underlying, fixed points and Tate.
#[derive(Clone, Debug)]
pub struct SequenceFamily {
    pub p: u64,
    pub fixed: SpectralRun,
    pub tate: SpectralRun,
    pub fixed_e: SpectralRun,
    pub tate_e: SpectralRun,
}

impl SequenceFamily {
    pub fn build(p: u64, stems: (i64, i64), route: D3Route) -> Result<Self> {
        let run = |name: &str| run_named(name, p, stems, route);
        let ((fixed, tate), (fixed_e, tate_e)) =
            rayon::join(|| rayon::join(|| run("hfpss"), || run("tss")), || rayon::join(|| run("hfpss-e"), || run("tss-e")));
        Ok(SequenceFamily { p, fixed: fixed?, tate: tate?, fixed_e: fixed_e?, tate_e: tate_e? })
    }
}
