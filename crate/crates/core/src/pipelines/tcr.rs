//! TCR as the fiber of can - phi from the fixed-point to the Tate abutment.

use super::frobenius::{can_image, phi_f2, phi_odd, phi_underlying, restriction, Image};
use super::sequences::{D3Route, SequenceFamily, SpectralRun};
use super::{map_degrees, FiberReport, MackeyEntry, MapDegree, PiTable};
use crate::coeff::{is_prime, MackeyFunctor, MackeyMap, MackeyScalars};
use crate::gralg::abelian::solve_in_span;
use crate::gralg::matrix::{dense_columns, dense_from_columns, dense_identity, dense_mul, Dense};
use crate::gralg::{AbGroup, GradedMap, GroupMap, Monomial};
use crate::witt::{tcr_perfect_answer, PerfectReport};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TcrOptions {
    pub stems: (i64, i64),
    pub precision: u32,
    pub route: D3Route,
}

impl Default for TcrOptions {
    fn default() -> Self {
        TcrOptions { stems: (-12, 12), precision: 5, route: D3Route::Asserted }
    }
}

/// Frobenius data: phi(u) = lambda u, and at p = 2 the rho-correction of phi(tau^2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusChoice {
    pub lambda: BigInt,
    pub epsilon: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Level {
    Equivariant,
    Underlying,
}

fn phi_image(p: u64, level: Level, src: &SpectralRun, tgt: &SpectralRun, m: &Monomial, f: &FrobeniusChoice) -> Result<Image> {
    let (sp, tp) = (src.presentation(), tgt.presentation());
    match (level, p) {
        (Level::Underlying, _) => phi_underlying(sp, tp, m, &f.lambda),
        (Level::Equivariant, 2) => phi_f2(sp, tp, m, &f.lambda, f.epsilon),
        (Level::Equivariant, _) => phi_odd(sp, tp, m, &f.lambda),
    }
}

/// Matrix of a map of abutments, evaluated on chain bottoms.
fn abutment_map(
    src: &SpectralRun,
    tgt: &SpectralRun,
    stems: (i64, i64),
    m: u32,
    image: &dyn Fn(&Monomial) -> Result<Image>,
    out: &mut GradedMap,
) -> Result<()> {
    for n in stems.0..=stems.1 {
        let sg = src.stem_group(n)?;
        let target = tgt.group(n, m)?;
        let mut cols = Vec::new();
        for s in &sg.summands {
            let img = image(&s.bottom)?;
            let v = tgt.evaluate(n, &img.terms, m)?;
            if !img.exact && !target.is_zero_element(&v)? {
                return Err(Error::Inconsistent(format!(
                    "image of {} is known only to leading order and does not vanish",
                    s.generator
                )));
            }
            cols.push(v);
        }
        let matrix = dense_from_columns(&cols, target.ngens);
        out.components.insert(n, GroupMap::new(src.group(n, m)?, target, matrix)?);
    }
    Ok(())
}

fn maps_at(fam: &SequenceFamily, level: Level, stems: (i64, i64), m: u32, f: &FrobeniusChoice) -> Result<(GradedMap, GradedMap)> {
    let (src, tgt) = match level {
        Level::Equivariant => (&fam.fixed, &fam.tate),
        Level::Underlying => (&fam.fixed_e, &fam.tate_e),
    };
    let tp = tgt.presentation().clone();
    let mut can = GradedMap::new("can", &[("all generators", "themselves")]);
    abutment_map(src, tgt, stems, m, &|mono| Ok(can_image(&tp, mono)), &mut can)?;
    let lambda = f.lambda.to_string();
    let u_img = format!("{lambda} u");
    let t_img = if f.epsilon == 0 { "tau^2".to_string() } else { format!("tau^2 + {} rho^4 u^-2", f.epsilon) };
    let gens: Vec<(&str, &str)> = match (level, fam.p) {
        (Level::Equivariant, 2) => vec![("x", "u^-1"), ("u", &u_img), ("tau^2", &t_img), ("rho", "rho"), ("theta", "theta")],
        (Level::Equivariant, _) => vec![("x", "u^-1"), ("u", &u_img), ("tau^2", "tau^2")],
        (Level::Underlying, _) => vec![("x", "u^-1"), ("u", &u_img)],
    };
    let mut phi = GradedMap::new("phi", &gens);
    abutment_map(src, tgt, stems, m, &|mono| phi_image(fam.p, level, src, tgt, mono, f), &mut phi)?;
    Ok((can, phi))
}

fn difference(fam: &SequenceFamily, level: Level, stems: (i64, i64), m: u32, f: &FrobeniusChoice) -> Result<GradedMap> {
    let (can, phi) = maps_at(fam, level, stems, m, f)?;
    can.difference(&phi, "can - phi")
}

/// (can, phi) between the F2 abutments at precision m.
pub fn can_and_phi(opts: &TcrOptions, epsilon: u64) -> Result<(GradedMap, GradedMap)> {
    let fam = SequenceFamily::build(2, opts.stems, opts.route)?;
    maps_at(&fam, Level::Equivariant, opts.stems, opts.precision, &FrobeniusChoice { lambda: BigInt::from(2), epsilon })
}

fn table(run: &SpectralRun, name: &str, stems: (i64, i64)) -> PiTable {
    let mut t = PiTable::from_groups(name, run.presentation(), &run.groups, stems);
    t.detectors.push(run.rule.label.clone());
    t.provenance.extend(run.page.provenance.iter().cloned());
    t.provenance.push(format!(
        "collapse at E{} certified on pages {}..{}",
        run.certificate.collapse_page, run.certificate.first_checked, run.certificate.r_max
    ));
    t
}

pub fn tcr_minus_table(fam: &SequenceFamily, stems: (i64, i64)) -> PiTable {
    table(&fam.fixed, "TCR^-", stems)
}

pub fn tpr_table(fam: &SequenceFamily, stems: (i64, i64)) -> PiTable {
    table(&fam.tate, "TPR", stems)
}

pub fn tcr_minus_f2(opts: &TcrOptions) -> Result<PiTable> {
    let fam = SequenceFamily::build(2, opts.stems, opts.route)?;
    Ok(tcr_minus_table(&fam, opts.stems))
}

pub fn tpr_f2(opts: &TcrOptions) -> Result<PiTable> {
    let fam = SequenceFamily::build(2, opts.stems, opts.route)?;
    Ok(tpr_table(&fam, opts.stems))
}

// g with g f = 1 and f g = 1 on the groups, when f is invertible
fn group_inverse(f: &Dense, src: &AbGroup, tgt: &AbGroup) -> Result<Option<Dense>> {
    let mut cols = dense_columns(f, src.ngens);
    cols.extend(tgt.relations.iter().cloned());
    let mut inv = Vec::new();
    for i in 0..tgt.ngens {
        let e: Vec<BigInt> = (0..tgt.ngens).map(|k| BigInt::from((k == i) as i64)).collect();
        match solve_in_span(&cols, tgt.ngens, &e)? {
            None => return Ok(None),
            Some(x) => inv.push(x[..src.ngens].to_vec()),
        }
    }
    let g = dense_from_columns(&inv, src.ngens);
    let gf = dense_mul(&g, f, tgt.ngens, src.ngens);
    for (j, col) in dense_columns(&gf, src.ngens).into_iter().enumerate() {
        let d: Vec<BigInt> = col.iter().enumerate().map(|(k, x)| x - BigInt::from((k == j) as i64)).collect();
        if !src.is_zero_element(&d)? {
            return Ok(None);
        }
    }
    Ok(Some(g))
}

/// Mackey functor in stem n: fixed level from `eq`, underlying level from `un`,
/// res by tau -> 1, rho, theta -> 0. The Weyl action fixes the image of res, so
/// when res is invertible weyl = 1 and tr = 2 res^-1.
fn mackey_functor(eq: &SpectralRun, un: &SpectralRun, n: i64, m: u32) -> Result<Option<MackeyFunctor>> {
    let top = eq.group(n, m)?;
    let bottom = un.group(n, m)?;
    let mut cols = Vec::new();
    for s in &eq.stem_group(n)?.summands {
        cols.push(match restriction(eq.presentation(), &s.bottom) {
            None => vec![BigInt::from(0); bottom.ngens],
            Some(r) => un.evaluate(n, &[(r, BigInt::one())], m)?,
        });
    }
    let res = dense_from_columns(&cols, bottom.ngens);
    let Some(inv) = group_inverse(&res, &top, &bottom)? else { return Ok(None) };
    let tr: Dense = inv.iter().map(|r| r.iter().map(|x| x * BigInt::from(2)).collect()).collect();
    let f = MackeyFunctor { top, weyl: dense_identity(bottom.ngens), bottom, res, tr };
    f.check_axioms()?;
    Ok(Some(f))
}

fn mackey_entries(fam: &SequenceFamily, n: i64, m: u32, f: &FrobeniusChoice, degrees: &[MapDegree]) -> Result<Vec<MackeyEntry>> {
    let Some(d) = degrees.iter().find(|d| d.degree == n) else { return Ok(Vec::new()) };
    if d.kernel.is_zero() && d.cokernel.is_zero() {
        return Ok(Vec::new());
    }
    let (Some(src), Some(tgt)) = (mackey_functor(&fam.fixed, &fam.fixed_e, n, m)?, mackey_functor(&fam.tate, &fam.tate_e, n, m)?)
    else {
        return Ok(Vec::new());
    };
    let top = difference(fam, Level::Equivariant, (n, n), m, f)?;
    let bottom = difference(fam, Level::Underlying, (n, n), m, f)?;
    let map = MackeyMap::new(src, tgt, top.component(n)?.matrix.clone(), bottom.component(n)?.matrix.clone())?;
    let (k, c) = map.kernel_cokernel()?;
    let mut out = Vec::new();
    if let Some(s) = MackeyScalars::of(&k)? {
        out.push(MackeyEntry { degree: n, part: "kernel".into(), scalars: s });
    }
    if let Some(s) = MackeyScalars::of(&c)? {
        out.push(MackeyEntry { degree: n - 1, part: "cokernel".into(), scalars: s });
    }
    Ok(out)
}

fn summaries(ds: &[MapDegree]) -> Vec<(i64, String, String)> {
    ds.iter().map(|d| (d.degree, d.kernel.to_string(), d.cokernel.to_string())).collect()
}

/// The fiber of can - phi on the map stems, for every Frobenius choice; the
/// kernels and cokernels must agree across choices and between m and m + 1.
pub fn tcr_fiber(fam: &SequenceFamily, opts: &TcrOptions, choices: &[FrobeniusChoice], check_name: &str) -> Result<FiberReport> {
    let (lo, hi) = opts.stems;
    let m = opts.precision;
    let mut tables = Vec::new();
    for f in choices {
        tables.push(map_degrees(&difference(fam, Level::Equivariant, opts.stems, m, f)?, fam.p, m)?);
    }
    let base = tables[0].clone();
    let invariant = tables.iter().all(|t| summaries(t) == summaries(&base));
    let next = map_degrees(&difference(fam, Level::Equivariant, opts.stems, m + 1, &choices[0])?, fam.p, m + 1)?;
    let stabilized = summaries(&next) == summaries(&base);

    let name = if fam.p == 2 { "TCR(HF_2)".to_string() } else { format!("TCR(HF_{})", fam.p) };
    let mut report = FiberReport::assemble(&name, fam.p, Some(m), (lo + 1, hi - 1), "can - phi", base.clone());
    report.checks.insert(check_name.to_string(), invariant);
    report.checks.insert("stabilized".into(), stabilized);
    for n in lo..=hi {
        report.mackey.extend(mackey_entries(fam, n, m, &choices[0], &base)?);
    }
    for f in choices {
        report.provenance.push(format!("phi(u) = {} u, rho-correction {}", f.lambda, f.epsilon));
    }
    for run in [&fam.fixed, &fam.tate] {
        report.provenance.push(format!(
            "{}: collapse at E{}, certified through E{}",
            run.presentation().name,
            run.certificate.collapse_page,
            run.certificate.r_max
        ));
    }
    if !invariant {
        return Err(Error::Inconsistent(format!("kernels and cokernels depend on the Frobenius choice ({check_name})")));
    }
    if !stabilized {
        return Err(Error::NotStabilized(format!("can - phi at precision {m} and {}", m + 1)));
    }
    let amb = report.ambiguous_degrees();
    if !amb.is_empty() {
        return Err(Error::ExtensionAmbiguity(format!("both ends nonzero in degrees {amb:?}")));
    }
    Ok(report)
}

pub fn f2_choices() -> Vec<FrobeniusChoice> {
    (0..=1).map(|epsilon| FrobeniusChoice { lambda: BigInt::from(2), epsilon }).collect()
}

pub fn odd_choices(p: u64) -> Vec<FrobeniusChoice> {
    let mut ls: Vec<u64> = vec![p, 2 * p, (p - 1) * p, (p + 1) * p];
    ls.dedup();
    ls.sort_unstable();
    ls.dedup();
    ls.into_iter().map(|l| FrobeniusChoice { lambda: BigInt::from(l), epsilon: 0 }).collect()
}

pub fn tcr_f2(opts: &TcrOptions) -> Result<FiberReport> {
    let fam = SequenceFamily::build(2, opts.stems, opts.route)?;
    tcr_fiber(&fam, opts, &f2_choices(), "phi_correction_invariant")
}

pub fn tcr_odd(p: u64, opts: &TcrOptions) -> Result<FiberReport> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Inconsistent(format!("{p} is not an odd prime")));
    }
    let fam = SequenceFamily::build(p, opts.stems, opts.route)?;
    tcr_fiber(&fam, opts, &odd_choices(p), "lambda_independent")
}

/// TCR of a finite field of order p^n through Witt vectors.
pub fn tcr_perfect(p: u64, n: usize, m: u32) -> Result<PerfectReport> {
    tcr_perfect_answer(p, n, m)
}

/// Kernels and cokernels of can - phi keyed by degree, as displayed strings.
pub fn kernel_cokernel_table(report: &FiberReport) -> BTreeMap<i64, (String, String)> {
    report.degrees.iter().map(|d| (d.degree, (d.kernel.to_string(), d.cokernel.to_string()))).collect()
}
