use super::rules::DifferentialRule;
use crate::gralg::{FpMatrix, GradedElement, Monomial, Presentation, Subspace, Tridegree};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Inclusive box of tridegrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub s: (i64, i64),
    pub t: (i64, i64),
    pub w: (i64, i64),
}

impl Window {
    pub fn new(s: (i64, i64), t: (i64, i64), w: (i64, i64)) -> Self {
        Window { s, t, w }
    }

    pub fn at_weight(w: i64, s: (i64, i64), t: (i64, i64)) -> Self {
        Window { s, t, w: (w, w) }
    }

    pub fn contains(&self, d: Tridegree) -> bool {
        (self.s.0..=self.s.1).contains(&d.s) && (self.t.0..=self.t.1).contains(&d.t) && (self.w.0..=self.w.1).contains(&d.w)
    }

    pub fn degrees(&self) -> Vec<Tridegree> {
        let mut out = Vec::new();
        for w in self.w.0..=self.w.1 {
            for s in self.s.0..=self.s.1 {
                for t in self.t.0..=self.t.1 {
                    out.push(Tridegree::new(s, t, w));
                }
            }
        }
        out
    }

    pub fn pad(&self, ds: i64, dt: i64) -> Window {
        Window { s: (self.s.0 - ds, self.s.1 + ds), t: (self.t.0 - dt, self.t.1 + dt), w: self.w }
    }

    /// Smallest box containing both.
    pub fn hull(&self, o: &Window) -> Window {
        Window {
            s: (self.s.0.min(o.s.0), self.s.1.max(o.s.1)),
            t: (self.t.0.min(o.t.0), self.t.1.max(o.t.1)),
            w: (self.w.0.min(o.w.0), self.w.1.max(o.w.1)),
        }
    }
}

/// One tridegree of a page: a subquotient of the E2 piece with chosen representatives.
#[derive(Clone, Debug)]
pub struct Piece {
    pub degree: Tridegree,
    pub ambient: Vec<Monomial>,
    pub boundaries: Subspace,
    pub reps: Vec<Vec<u64>>,
    /// false when a neighbouring differential fell outside the computed window
    pub exact: bool,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.ambient.binary_search(m).ok()
    }

    /// E2 coordinates of an element whose terms lie in this piece.
    pub fn vector(&self, e: &GradedElement, p: u64) -> Result<Vec<u64>> {
        let mut v = vec![0u64; self.ambient.len()];
        for (m, c) in &e.terms {
            let i = self
                .index_of(m)
                .ok_or_else(|| Error::Inconsistent(format!("monomial outside piece {}", self.degree)))?;
            let c = num_integer::Integer::mod_floor(c, &num_bigint::BigInt::from(p));
            let c: u64 = c.try_into().unwrap_or(0);
            v[i] = (v[i] + c) % p;
        }
        Ok(v)
    }

    /// Coordinates of a cycle in the representative basis, modulo boundaries.
    pub fn coords(&self, v: &[u64], p: u64) -> Option<Vec<u64>> {
        if self.reps.is_empty() {
            return self.boundaries.contains(v).then(Vec::new);
        }
        let mut cols = self.reps.clone();
        cols.extend(self.boundaries.basis().iter().cloned());
        let m = FpMatrix::from_columns(p, self.ambient.len(), &cols);
        m.solve(v).map(|x| x[..self.reps.len()].to_vec())
    }

    /// The representative as a single monomial, when it is one.
    pub fn rep_monomial(&self, i: usize) -> Option<Monomial> {
        let nz: Vec<usize> = self.reps[i].iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, _)| k).collect();
        (nz.len() == 1 && self.reps[i][nz[0]] == 1).then(|| self.ambient[nz[0]].clone())
    }

    pub fn rep_monomials(&self) -> Option<Vec<Monomial>> {
        (0..self.dim()).map(|i| self.rep_monomial(i)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Page {
    pub r: u32,
    pub p: u64,
    pub presentation: Presentation,
    pub window: Window,
    pub pieces: BTreeMap<Tridegree, Piece>,
    /// d_r keyed by source degree: rows index target reps, columns source reps
    pub differential: BTreeMap<Tridegree, FpMatrix>,
    /// E2 vectors of d_r of each source representative
    pub images: BTreeMap<Tridegree, Vec<Vec<u64>>>,
    pub differential_is_zero: bool,
    pub provenance: Vec<String>,
}

pub fn shift(r: u32) -> Tridegree {
    Tridegree::new(-(r as i64), r as i64 - 1, 0)
}

impl Page {
    pub fn piece(&self, d: Tridegree) -> Option<&Piece> {
        self.pieces.get(&d)
    }

    pub fn dim(&self, d: Tridegree) -> usize {
        self.pieces.get(&d).map_or(0, |p| p.dim())
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(|p| p.dim()).sum()
    }

    /// Whether d is known exactly on this page (zero outside the box counts as unknown).
    pub fn is_exact(&self, d: Tridegree) -> bool {
        self.pieces.get(&d).is_some_and(|p| p.exact)
    }

    /// Applies d_r from the rule to every representative.
    pub fn with_differential(mut self, rule: &DifferentialRule) -> Result<Page> {
        if rule.r != self.r {
            return Err(Error::Inconsistent(format!("rule for d_{} applied to E_{}", rule.r, self.r)));
        }
        let sh = shift(self.r);
        let p = self.p;
        let pres = &self.presentation;
        let mut diff = BTreeMap::new();
        let mut images = BTreeMap::new();
        for (&d, src) in &self.pieces {
            let Some(tgt) = self.pieces.get(&(d + sh)) else { continue };
            let mut cols = Vec::new();
            let mut raw = Vec::new();
            for rep in &src.reps {
                let mut img = GradedElement::zero(crate::gralg::BaseRing::fp(p));
                for (k, &c) in rep.iter().enumerate() {
                    if c != 0 {
                        img = img.add(&rule.apply(pres, &src.ambient[k])?.scale(&c.into()));
                    }
                }
                let v = tgt.vector(&img, p)?;
                let c = tgt.coords(&v, p).ok_or_else(|| {
                    Error::Inconsistent(format!("d_{} of a class at {d} is not a cycle", self.r))
                })?;
                cols.push(c);
                raw.push(v);
            }
            diff.insert(d, FpMatrix::from_columns(p, tgt.dim(), &cols));
            images.insert(d, raw);
        }
        self.differential = diff;
        self.images = images;
        self.differential_is_zero = rule.is_zero();
        self.provenance.push(rule.provenance.clone());
        Ok(self)
    }

    /// d o d = 0 wherever both matrices are stored.
    pub fn check_d_squared(&self) -> Result<()> {
        let sh = shift(self.r);
        for (&d, m) in &self.differential {
            if let Some(m2) = self.differential.get(&(d + sh)) {
                if !m2.mul(m).is_zero() {
                    return Err(Error::Inconsistent(format!("d o d != 0 at {d}")));
                }
            }
        }
        Ok(())
    }

    /// Homology of the page; pieces next to the window edge are flagged inexact.
    pub fn turn(&self) -> Page {
        let sh = shift(self.r);
        let p = self.p;
        let mut pieces = BTreeMap::new();
        for (&d, pc) in &self.pieces {
            if self.differential_is_zero {
                pieces.insert(d, pc.clone());
                continue;
            }
            let n = pc.ambient.len();
            let mut exact = pc.exact;
            let cycles: Vec<Vec<u64>> = match self.differential.get(&d) {
                Some(m) => {
                    exact &= self.is_exact(d + sh);
                    m.kernel()
                        .into_iter()
                        .map(|c| {
                            let mut v = vec![0; n];
                            for (i, &a) in c.iter().enumerate() {
                                for (k, &x) in pc.reps[i].iter().enumerate() {
                                    v[k] = (v[k] + a * x) % p;
                                }
                            }
                            v
                        })
                        .collect()
                }
                None => {
                    exact = false;
                    pc.reps.clone()
                }
            };
            let mut boundaries = pc.boundaries.clone();
            match self.images.get(&(d - sh)) {
                Some(imgs) => {
                    exact &= self.is_exact(d - sh);
                    for v in imgs {
                        boundaries.insert(v);
                    }
                }
                None => exact = false,
            }
            let mut z = pc.boundaries.clone();
            for v in &cycles {
                z.insert(v);
            }
            let mut quot = boundaries.clone();
            let reps: Vec<Vec<u64>> = z.basis().iter().filter(|row| quot.insert(row)).cloned().collect();
            pieces.insert(d, Piece { degree: d, ambient: pc.ambient.clone(), boundaries, reps, exact });
        }
        let mut provenance = self.provenance.clone();
        provenance.push(format!("E{} = H(E{}, d{})", self.r + 1, self.r, self.r));
        Page {
            r: self.r + 1,
            p,
            presentation: self.presentation.clone(),
            window: self.window,
            pieces,
            differential: BTreeMap::new(),
            images: BTreeMap::new(),
            differential_is_zero: false,
            provenance,
        }
    }

    /// Pieces whose representatives are listed, as formatted monomial sums.
    pub fn describe(&self, d: Tridegree) -> Vec<String> {
        let Some(pc) = self.pieces.get(&d) else { return Vec::new() };
        pc.reps
            .iter()
            .map(|rep| {
                let terms: Vec<String> = rep
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| {
                        let m = self.presentation.format(&pc.ambient[k]);
                        if c == 1 {
                            m
                        } else {
                            format!("{c}*{m}")
                        }
                    })
                    .collect();
                terms.join(" + ")
            })
            .collect()
    }

    /// Every nonzero piece with its representatives.
    pub fn classes(&self) -> BTreeMap<Tridegree, Vec<String>> {
        self.pieces.iter().filter(|(_, pc)| pc.dim() > 0).map(|(&d, _)| (d, self.describe(d))).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut pieces = serde_json::Map::new();
        for (d, pc) in &self.pieces {
            if pc.dim() == 0 {
                continue;
            }
            pieces.insert(d.key(), json!({ "basis": self.describe(*d), "exact": pc.exact }));
        }
        let mut diff = serde_json::Map::new();
        for (d, m) in &self.differential {
            if !m.is_zero() {
                diff.insert(d.key(), json!(m.rows));
            }
        }
        json!({
            "schema": "rcyclo/page",
            "version": 1,
            "presentation": self.presentation.name,
            "alphabet": self.presentation.alphabet.gens.iter().map(|g| json!({
                "name": g.name, "degree": [g.degree.s, g.degree.t, g.degree.w]
            })).collect::<Vec<_>>(),
            "p": self.p,
            "r": self.r,
            "window": { "s": [self.window.s.0, self.window.s.1], "t": [self.window.t.0, self.window.t.1], "w": [self.window.w.0, self.window.w.1] },
            "pieces": pieces,
            "differential": diff,
            "provenance": self.provenance,
        })
    }
}

/// E2 page on a window; every piece is exact.
pub fn build_e2(pres: &Presentation, window: Window) -> Result<Page> {
    let p = pres.ring.prime().ok_or_else(|| Error::Presentation("E2 needs a prime field".into()))?;
    let degrees = window.degrees();
    let bases: Vec<Result<(Tridegree, Vec<Monomial>)>> =
        degrees.par_iter().map(|&d| pres.degree_basis(d).map(|b| (d, b))).collect();
    let mut pieces = BTreeMap::new();
    for b in bases {
        let (d, basis) = b?;
        let n = basis.len();
        let reps = (0..n).map(|i| (0..n).map(|k| (i == k) as u64).collect()).collect();
        pieces.insert(d, Piece { degree: d, ambient: basis, boundaries: Subspace::zero(p, n), reps, exact: true });
    }
    Ok(Page {
        r: 2,
        p,
        presentation: pres.clone(),
        window,
        pieces,
        differential: BTreeMap::new(),
        images: BTreeMap::new(),
        differential_is_zero: false,
        provenance: vec![format!("E2 of {}", pres.name)],
    })
}
