//! End-to-end computations: spectral sequences, abutments, the maps can and
//! phi, and the fiber of their difference.

pub mod derived;
pub mod frobenius;
pub mod gfp;
pub mod sequences;
pub mod tcr;

pub use derived::{derive_d3, D3Derivation};
pub use gfp::{gfp_tcr_f2, SwapChoice};
pub use sequences::{D3Route, SpectralRun};
pub use tcr::{can_and_phi, tcr_f2, tcr_minus_f2, tcr_odd, tcr_perfect, tpr_f2, TcrOptions};

use crate::coeff::MackeyScalars;
use crate::gralg::{GradedMap, PadicGroup};
use crate::specseq::taxonomy::classify;
use crate::specseq::StemGroup;
use crate::{Presentation, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiSummand {
    pub generator: String,
    pub exponents: Vec<i64>,
    /// B, G or R
    pub color: String,
    pub filtration: i64,
    pub order: String,
    /// chain members found on the page
    pub detected_by_chain: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiEntry {
    pub degree: i64,
    pub group: PadicGroup,
    pub display: String,
    pub assoc_graded_only: bool,
    pub summands: Vec<PiSummand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiTable {
    pub schema: String,
    pub version: u32,
    pub name: String,
    pub p: u64,
    pub grading: String,
    pub window: (i64, i64),
    pub entries: BTreeMap<i64, PiEntry>,
    pub detectors: Vec<String>,
    pub provenance: Vec<String>,
}

impl PiTable {
    pub fn from_groups(name: &str, pres: &Presentation, groups: &BTreeMap<i64, StemGroup>, window: (i64, i64)) -> Self {
        let mut entries = BTreeMap::new();
        let mut p = 0;
        for (n, g) in groups.range(window.0..=window.1) {
            p = g.p;
            let summands = g
                .summands
                .iter()
                .map(|s| PiSummand {
                    generator: s.generator.clone(),
                    exponents: s.bottom.exps.clone(),
                    color: classify(pres, &s.bottom).letter().to_string(),
                    filtration: s.chain[0].0.t,
                    order: match s.length {
                        None => format!("Z_{}", g.p),
                        Some(1) => format!("Z/{}", g.p),
                        Some(l) => format!("Z/{}^{l}", g.p),
                    },
                    detected_by_chain: s.chain.len(),
                })
                .collect();
            let group = g.padic();
            entries.insert(
                *n,
                PiEntry { degree: *n, display: group.to_string(), group, assoc_graded_only: g.assoc_graded_only, summands },
            );
        }
        PiTable {
            schema: "rcyclo/pi-table".into(),
            version: SCHEMA_VERSION,
            name: name.to_string(),
            p,
            grading: "stem".into(),
            window,
            entries,
            detectors: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn group(&self, n: i64) -> Option<&PadicGroup> {
        self.entries.get(&n).map(|e| &e.group)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDegree {
    pub degree: i64,
    pub source: PadicGroup,
    pub target: PadicGroup,
    pub kernel: PadicGroup,
    pub cokernel: PadicGroup,
    /// length(source) - length(target) = length(kernel) - length(cokernel)
    pub rank_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDegree {
    pub degree: i64,
    /// coker of the map one degree up
    pub sub: PadicGroup,
    /// ker of the map in this degree
    pub quotient: PadicGroup,
    /// None when both ends are nonzero
    pub group: Option<PadicGroup>,
    pub extension_ambiguous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyEntry {
    pub degree: i64,
    /// "kernel" or "cokernel"
    pub part: String,
    pub scalars: MackeyScalars,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub schema: String,
    pub version: u32,
    pub name: String,
    pub p: u64,
    pub precision: Option<u32>,
    pub window: (i64, i64),
    pub map: String,
    pub degrees: Vec<MapDegree>,
    pub fiber: Vec<FiberDegree>,
    pub mackey: Vec<MackeyEntry>,
    pub checks: BTreeMap<String, bool>,
    pub provenance: Vec<String>,
}

impl FiberReport {
    /// Assembles pi_n of the fiber from 0 -> coker f_{n+1} -> pi_n -> ker f_n -> 0
    /// for n in the window; `degrees` must cover the window and one degree above.
    pub fn assemble(name: &str, p: u64, precision: Option<u32>, window: (i64, i64), map: &str, degrees: Vec<MapDegree>) -> Self {
        let by: BTreeMap<i64, &MapDegree> = degrees.iter().map(|d| (d.degree, d)).collect();
        let mut fiber = Vec::new();
        for n in window.0..=window.1 {
            let (Some(here), Some(up)) = (by.get(&n), by.get(&(n + 1))) else { continue };
            let sub = up.cokernel.clone();
            let quotient = here.kernel.clone();
            let ambiguous = !sub.is_zero() && !quotient.is_zero();
            let group = if sub.is_zero() {
                Some(quotient.clone())
            } else if quotient.is_zero() {
                Some(sub.clone())
            } else {
                None
            };
            fiber.push(FiberDegree { degree: n, sub, quotient, group, extension_ambiguous: ambiguous });
        }
        let mut checks = BTreeMap::new();
        checks.insert("rank_identity".to_string(), degrees.iter().all(|d| d.rank_identity));
        FiberReport {
            schema: "rcyclo/fiber-report".into(),
            version: SCHEMA_VERSION,
            name: name.to_string(),
            p,
            precision,
            window,
            map: map.to_string(),
            degrees,
            fiber,
            mackey: Vec::new(),
            checks,
            provenance: Vec::new(),
        }
    }

    pub fn group(&self, n: i64) -> Option<&PadicGroup> {
        self.fiber.iter().find(|f| f.degree == n).and_then(|f| f.group.as_ref())
    }

    pub fn ambiguous_degrees(&self) -> Vec<i64> {
        self.fiber.iter().filter(|f| f.extension_ambiguous).map(|f| f.degree).collect()
    }

    pub fn kernels_and_cokernels(&self) -> Vec<(i64, PadicGroup, PadicGroup)> {
        self.degrees.iter().map(|d| (d.degree, d.kernel.clone(), d.cokernel.clone())).collect()
    }
}

fn length(g: &PadicGroup, m: u32) -> u64 {
    g.zp_rank as u64 * m as u64 + g.torsion.iter().map(|&e| e as u64).sum::<u64>()
}

/// Kernel and cokernel of every component of `f`, read p-adically at precision m.
pub fn map_degrees(f: &GradedMap, p: u64, m: u32) -> Result<Vec<MapDegree>> {
    let mut out = Vec::new();
    for (d, comp) in &f.components {
        let pg = |s: &crate::gralg::GroupSummary| PadicGroup::from_summary(s, p, m);
        let source = pg(&comp.source.summary()?)?;
        let target = pg(&comp.target.summary()?)?;
        let kernel = pg(&comp.kernel()?.0.summary()?)?;
        let cokernel = pg(&comp.cokernel().summary()?)?;
        let lhs = length(&source, m) as i64 - length(&target, m) as i64;
        let rhs = length(&kernel, m) as i64 - length(&cokernel, m) as i64;
        out.push(MapDegree { degree: *d, source, target, kernel, cokernel, rank_identity: lhs == rhs });
    }
    Ok(out)
}
