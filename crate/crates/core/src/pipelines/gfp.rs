//! Geometric fixed points of TCR(HF2) as the fiber of psi - can from the
//! homotopy fixed points to the Tate construction of F2[w1, w2] with the swap.

use super::{FiberReport, MapDegree};
use crate::coeff::gfp_thr_f2_coefficients;
use crate::groupcoh::{c2_cohomology, c2_tate, symmetric_piece, CohomologyGroup};
use crate::gralg::{FpMatrix, Monomial, PadicGroup, Tridegree};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Which generator goes to w y (the other goes to y^-1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapChoice {
    W1,
    W2,
}

struct Piece {
    basis: Vec<Monomial>,
    fixed: BTreeMap<i64, CohomologyGroup>,
    tate: BTreeMap<i64, CohomologyGroup>,
}

/// Degree-t pieces for t <= t_max, with H^s and Tate cohomology for |s| <= t_max + d_max.
struct Bigraded {
    t_max: i64,
    pieces: Vec<Piece>,
}

impl Bigraded {
    fn new(t_max: i64, s_max: i64) -> Result<Self> {
        let pres = gfp_thr_f2_coefficients().presentation;
        let mut pieces = Vec::new();
        for t in 0..=t_max {
            let m = symmetric_piece(t)?;
            let basis = pres.degree_basis(Tridegree::new(t, 0, 0))?;
            let fixed = c2_cohomology(&m, (0, s_max))?.into_iter().map(|g| (g.s, g)).collect();
            let tate = c2_tate(&m, (-s_max, s_max)).into_iter().map(|g| (g.s, g)).collect();
            pieces.push(Piece { basis, fixed, tate });
        }
        Ok(Bigraded { t_max, pieces })
    }

    fn fixed_basis(&self, d: i64) -> Vec<(i64, i64, usize)> {
        let mut out = Vec::new();
        for t in 0..=self.t_max {
            let s = t - d;
            if let Some(g) = self.pieces[t as usize].fixed.get(&s) {
                out.extend((0..g.dim()).map(|k| (t, s, k)));
            }
        }
        out
    }

    fn tate_basis(&self, d: i64) -> Vec<(i64, i64, usize)> {
        let mut out = Vec::new();
        for t in 0..=self.t_max {
            let s = t - d;
            if let Some(g) = self.pieces[t as usize].tate.get(&s) {
                out.extend((0..g.dim()).map(|k| (t, s, k)));
            }
        }
        out
    }

    fn tate_coords(&self, t: i64, s: i64, v: &[u64]) -> Result<Vec<u64>> {
        let g = self
            .pieces
            .get(t as usize)
            .and_then(|p| p.tate.get(&s))
            .ok_or_else(|| Error::Window(format!("Tate piece (s, t) = ({s}, {t}) outside the truncation")))?;
        g.coords(v).ok_or_else(|| Error::Inconsistent("image is not a Tate cocycle".into()))
    }

    /// psi - can in degree d, over F2; rows index the Tate basis.
    fn map(&self, d: i64, swap: SwapChoice) -> Result<(usize, usize, usize)> {
        let src = self.fixed_basis(d);
        let tgt = self.tate_basis(d);
        let index: BTreeMap<(i64, i64, usize), usize> = tgt.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut mat = FpMatrix::zeros(2, tgt.len(), src.len());
        for (j, &(t, s, k)) in src.iter().enumerate() {
            let v = &self.pieces[t as usize].fixed[&s].reps[k];
            let mut add = |tt: i64, ss: i64, w: &[u64]| -> Result<()> {
                for (kk, c) in self.tate_coords(tt, ss, w)?.into_iter().enumerate() {
                    if c != 0 {
                        let i = index[&(tt, ss, kk)];
                        mat.set(i, j, (mat.get(i, j) + c) % 2);
                    }
                }
                Ok(())
            };
            // can: the class itself
            add(t, s, v)?;
            // psi: zero for s > 0; on fixed vectors apply w1 -> w y, w2 -> y^-1 termwise
            if s == 0 {
                for (pos, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let mono = &self.pieces[t as usize].basis[pos];
                    let (a, b) = match swap {
                        SwapChoice::W1 => (mono.exps[0], mono.exps[1]),
                        SwapChoice::W2 => (mono.exps[1], mono.exps[0]),
                    };
                    // w^a y^(a - b): piece 2a, cohomological degree a - b
                    let tt = 2 * a;
                    if tt > self.t_max {
                        return Err(Error::Window(format!("truncation {} below {tt}", self.t_max)));
                    }
                    let piece = &self.pieces[tt as usize];
                    let w = Monomial::new(vec![a, a]);
                    let mut e = vec![0u64; piece.basis.len()];
                    e[piece.basis.binary_search(&w).map_err(|_| Error::Inconsistent("w^a outside the basis".into()))?] = 1;
                    add(tt, a - b, &e)?;
                }
            }
        }
        Ok((src.len(), tgt.len(), mat.rank()))
    }
}

fn f2_group(dim: usize) -> PadicGroup {
    PadicGroup { p: 2, zp_rank: 0, torsion: vec![1; dim] }
}

fn degrees(b: &Bigraded, window: (i64, i64), swap: SwapChoice) -> Result<Vec<MapDegree>> {
    (window.0..=window.1 + 1)
        .map(|d| {
            let (ns, nt, r) = b.map(d, swap)?;
            Ok(MapDegree {
                degree: d,
                source: f2_group(ns),
                target: f2_group(nt),
                kernel: f2_group(ns - r),
                cokernel: f2_group(nt - r),
                rank_identity: true,
            })
        })
        .collect()
}

fn kc(ds: &[MapDegree]) -> Vec<(i64, PadicGroup, PadicGroup)> {
    ds.iter().map(|d| (d.degree, d.kernel.clone(), d.cokernel.clone())).collect()
}

/// Fiber of psi - can in degrees `window`, with both swap choices and two truncations.
pub fn gfp_tcr_f2(window: (i64, i64)) -> Result<FiberReport> {
    let d_max = window.0.abs().max(window.1.abs()) + 1;
    let t_max = 2 * d_max + 4;
    let b = Bigraded::new(t_max + 2, t_max + 2 + d_max)?;
    let small = Bigraded::new(t_max, t_max + d_max)?;
    let first = degrees(&b, window, SwapChoice::W1)?;
    let second = degrees(&b, window, SwapChoice::W2)?;
    let truncated = degrees(&small, window, SwapChoice::W1)?;
    let swap_invariant = kc(&first) == kc(&second);
    let truncation_stable = kc(&first) == kc(&truncated);
    let mut report = FiberReport::assemble("TCR(HF_2)^phiC2", 2, None, window, "psi - can", first);
    report.checks.insert("swap_invariant".into(), swap_invariant);
    report.checks.insert("truncation_stable".into(), truncation_stable);
    report.provenance.push(format!("F2[w1, w2] pieces t <= {}, compared with t <= {t_max}", t_max + 2));
    report.provenance.push("collapse of both sequences by naturality along the augmentation".into());
    report.provenance.push("source and target dimensions are those of the truncation".into());
    if !swap_invariant {
        return Err(Error::Inconsistent("kernel and cokernel depend on the swap choice".into()));
    }
    if !truncation_stable {
        return Err(Error::Window("kernel and cokernel change with the truncation".into()));
    }
    let amb = report.ambiguous_degrees();
    if !amb.is_empty() {
        return Err(Error::ExtensionAmbiguity(format!("both ends nonzero in degrees {amb:?}")));
    }
    Ok(report)
}
