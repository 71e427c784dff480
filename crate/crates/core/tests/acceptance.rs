//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use common::{brute_force_c2, leibniz_holds, snf_valid, summand_oracle};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rcyclo_core::coeff::MackeyFunctor;
use rcyclo_core::gralg::matrix::{dense_from_columns, hcat};
use rcyclo_core::groupcoh::{c2_cohomology, c2_tate, d8_resolution_check, symmetric_piece, D8Module};
use rcyclo_core::pipelines::sequences::{f2_generators, f2_rules, odd_generators, stem_region, SequenceFamily};
use rcyclo_core::pipelines::tcr::{f2_choices, kernel_cokernel_table, tcr_fiber, tcr_minus_table, tpr_table};
use rcyclo_core::pipelines::*;
use rcyclo_core::specseq::e2::{e2_f2, e2_odd, Flavor};
use rcyclo_core::specseq::{run_to_collapse, CollapseCertificate};
use rcyclo_core::witt::{kernel_cokernel_at, tcr_perfect_answer, witt_mackey_map, witt_ring};
use rcyclo_core::{GroupMap, Monomial, PadicGroup, Presentation};
use std::time::Instant;

type Outcome = Result<String, String>;

const STEMS: (i64, i64) = (-12, 12);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Context {
    fam: SequenceFamily,
    opts: TcrOptions,
}

fn table_matches(table: &PiTable) -> Outcome {
    for (n, (free, torsion)) in summand_oracle(STEMS) {
        let g = table.group(n).ok_or(format!("stem {n} missing"))?;
        ensure!(g.torsion.iter().all(|&e| e == 1), "stem {n}: {g} has torsion beyond Z/2");
        ensure!(
            (g.zp_rank, g.torsion.len()) == (free, torsion),
            "stem {n}: {g}, expected {free} towers and {torsion} copies of F_2"
        );
        ensure!(!table.entries[&n].assoc_graded_only || torsion == 0 || free == 0, "stem {n}: unresolved extension");
    }
    Ok(format!("{} stems", table.entries.len()))
}

fn criterion_1(cx: &Context) -> Outcome {
    table_matches(&tcr_minus_table(&cx.fam, STEMS))
}

fn criterion_2(cx: &Context) -> Outcome {
    table_matches(&tpr_table(&cx.fam, STEMS))
}

fn criterion_3(cx: &Context) -> Outcome {
    let report = tcr_fiber(&cx.fam, &cx.opts, &f2_choices(), "phi_correction_invariant").map_err(err)?;
    ensure!(report.checks.values().all(|&b| b), "checks {:?}", report.checks);
    let z2 = PadicGroup { p: 2, zp_rank: 1, torsion: vec![] };
    for f in &report.fiber {
        let want = if f.degree == 0 || f.degree == -1 { z2.clone() } else { PadicGroup::zero(2) };
        let got = f.group.as_ref().ok_or(format!("degree {} ambiguous", f.degree))?;
        ensure!(*got == want, "pi_{} = {got}", f.degree);
    }
    ensure!(report.window == (-11, 11), "window {:?}", report.window);
    // 2 in pi_0 is detected by u x: ux evaluates to twice the generator
    let m = cx.opts.precision;
    let ux = cx.fam.fixed.presentation().monomial("u x");
    let v = cx.fam.fixed.evaluate(0, &[(ux, BigInt::from(1))], m).map_err(err)?;
    ensure!(v.len() == 1 && v[0].mod_floor(&BigInt::from(2).pow(m)) == BigInt::from(2), "u x evaluates to {v:?}");
    ensure!(report.mackey.len() == 2, "Mackey entries {:?}", report.mackey);
    for e in &report.mackey {
        let s = &e.scalars;
        ensure!(s.res == "1" && s.tr == "2" && s.weyl == "1", "degree {}: res {} tr {}", e.degree, s.res, s.tr);
    }
    Ok("pi_0 = pi_-1 = Z_2, res = 1, tr = 2".into())
}

fn criterion_4(cx: &Context) -> Outcome {
    let (_, d) = derive_d3(cx.fam.fixed.presentation()).map_err(err)?;
    ensure!(d.x1_adic.connecting_nonzero && d.x1_adic.d2_nonzero, "x1-adic d2 vanishes");
    ensure!(d.image == "rho u x", "d3(tau) = {}", d.image);
    let derived = SequenceFamily::build(2, STEMS, D3Route::Derived).map_err(err)?;
    for (a, b, name) in [(&cx.fam.fixed, &derived.fixed, "fixed"), (&cx.fam.tate, &derived.tate, "Tate")] {
        ensure!(a.page.classes() == b.page.classes(), "{name} E4 differs between routes");
    }
    Ok(format!("d3(tau) = {}, E4 identical", d.image))
}

fn certified(c: &CollapseCertificate, from: u32) -> bool {
    c.first_checked == from && c.r_max >= 20 && c.classes_checked > 0 && c.generators.iter().all(|g| (from..=c.r_max).all(|r| g.certified(r)))
}

fn criterion_5(cx: &Context) -> Outcome {
    for run in [&cx.fam.fixed, &cx.fam.tate] {
        let c = &run.certificate;
        ensure!(c.collapse_page == 4 && c.r_max >= 20, "{}: E{} through {}", c.presentation, c.collapse_page, c.r_max);
        ensure!(certified(c, 4), "{} not certified on every page", c.presentation);
    }
    for p in [3u64, 5] {
        let fam = SequenceFamily::build(p, STEMS, D3Route::Asserted).map_err(err)?;
        for run in [&fam.fixed, &fam.tate] {
            let c = &run.certificate;
            ensure!(c.collapse_page == 2 && certified(c, 2), "p = {p} {}: E{}", c.presentation, c.collapse_page);
        }
    }
    Ok("F_2 at E4, p = 3, 5 at E2, r <= 20".into())
}

fn criterion_6() -> Outcome {
    let report = gfp_tcr_f2((-10, 10)).map_err(err)?;
    ensure!(report.checks.values().all(|&b| b), "checks {:?}", report.checks);
    let f2 = PadicGroup { p: 2, zp_rank: 0, torsion: vec![1] };
    for d in report.degrees.iter().filter(|d| d.degree <= 10) {
        let want = if (0..=10).contains(&d.degree) && d.degree % 2 == 0 { f2.clone() } else { PadicGroup::zero(2) };
        ensure!(d.kernel == want && d.cokernel == want, "degree {}: ker {} coker {}", d.degree, d.kernel, d.cokernel);
    }
    for f in &report.fiber {
        let n = f.degree;
        let want = usize::from(n >= 0 && n % 2 == 0) + usize::from(n >= -1 && n % 2 != 0);
        let got = f.group.as_ref().ok_or(format!("degree {n} ambiguous"))?;
        ensure!(got.zp_rank == 0 && got.torsion.len() == want, "fiber degree {n}: {got}");
    }
    Ok("ker = coker = F_2 in even 0..10".into())
}

fn criterion_7() -> Outcome {
    for t in 0..=16u32 {
        let m = symmetric_piece(t as i64).map_err(err)?;
        let fixed: Vec<usize> = c2_cohomology(&m, (0, 4)).map_err(err)?.iter().map(|g| g.dim()).collect();
        let tate: Vec<usize> = c2_tate(&m, (-4, 4)).iter().map(|g| g.dim()).collect();
        let (h0, hs, ht) = brute_force_c2(t);
        let even = usize::from(t % 2 == 0);
        // symmetric sums w1^a w2^b + w1^b w2^a (a < b) and w^(t/2); y^s w^(t/2); Tate F2[w, y^+-1]
        let closed = (t as usize / 2 + 1, even, even);
        ensure!((h0 as usize, hs as usize, ht as usize) == closed, "t = {t}: brute force {:?} vs {closed:?}", (h0, hs, ht));
        ensure!(fixed[0] == closed.0 && fixed[1..].iter().all(|&d| d == closed.1), "t = {t}: H^* {fixed:?}");
        ensure!(tate.iter().all(|&d| d == closed.2), "t = {t}: Tate {tate:?}");
    }
    Ok("t <= 16".into())
}

fn criterion_8() -> Outcome {
    let mut through = Vec::new();
    for m in [D8Module::trivial(), D8Module::regular(), D8Module::sigma_cosets()] {
        let r = d8_resolution_check(&m, 12, 12).map_err(err)?;
        ensure!(r.squares_commute, "{}: d o d != 0", m.name);
        ensure!(r.exact_through >= 10, "{}: exact only through {}", m.name, r.exact_through);
        ensure!(r.quotient_sigma_x_zero && r.quotient_commutes, "{}: quotient maps", m.name);
        through.push(r.exact_through);
    }
    Ok(format!("exact through {through:?}"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (p, n) in [(2u64, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let r = tcr_perfect_answer(p, n, 5).map_err(err)?;
        let zp = PadicGroup { p, zp_rank: 1, torsion: vec![] };
        ensure!(r.stabilized, "({p}, {n}) not stable from 5 to 6");
        ensure!(r.kernel == zp && r.cokernel == zp, "({p}, {n}): ker {} coker {}", r.kernel, r.cokernel);
        let (k6, c6) = kernel_cokernel_at(p, n, 6).map_err(err)?;
        ensure!(k6 == zp && c6 == zp, "({p}, {n}) at m = 6");
        let w = witt_ring(p, n, 5).map_err(err)?;
        let q = &w.quotient;
        let order = w.field.order();
        for _ in 0..100 {
            let a: Vec<_> = (0..w.m).map(|_| w.field.element(rng.gen_range(0..order))).collect();
            let b: Vec<_> = (0..w.m).map(|_| w.field.element(rng.gen_range(0..order))).collect();
            let (qa, qb) = (w.to_quotient(&a), w.to_quotient(&b));
            ensure!(w.to_quotient(&w.coords.add(&a, &b).map_err(err)?) == q.add(&qa, &qb), "({p}, {n}): sums differ");
            ensure!(w.to_quotient(&w.coords.mul(&a, &b).map_err(err)?) == q.mul(&qa, &qb), "({p}, {n}): products differ");
            ensure!(w.to_quotient(&w.coords.frobenius(&a)) == q.frobenius(&qa), "({p}, {n}): Frobenius differs");
            ensure!(w.to_coords(&qa).map_err(err)? == a, "({p}, {n}): round trip");
        }
    }
    Ok("six fields, m = 5 and 6".into())
}

fn random_monomial(pres: &Presentation, rng: &mut ChaCha8Rng) -> Monomial {
    let cone = pres.alphabet.index("theta").is_some() && rng.gen_bool(0.3);
    let mut e = vec![0i64; pres.alphabet.len()];
    for (i, g) in pres.alphabet.gens.iter().enumerate() {
        e[i] = match g.name.as_str() {
            "theta" => i64::from(cone),
            "tau" | "rho" if cone => rng.gen_range(-5..=0),
            "u" if pres.name == "tss" => rng.gen_range(-5..=5),
            _ => rng.gen_range(0..=5),
        };
    }
    pres.normalize(&Monomial::new(e.clone())).unwrap_or_else(|| Monomial::new(vec![0; e.len()]))
}

fn criterion_10(cx: &Context) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pairs = 0;
    for flavor in [Flavor::Fixed, Flavor::Tate] {
        let pres = e2_f2(flavor);
        let rules = f2_rules(&pres, D3Route::Asserted).map_err(err)?;
        for _ in 0..5000 {
            let (a, b) = (random_monomial(&pres, &mut rng), random_monomial(&pres, &mut rng));
            ensure!(leibniz_holds(&pres, &rules[1], &a, &b), "Leibniz fails on {} * {}", pres.format(&a), pres.format(&b));
            pairs += 1;
        }
    }
    // d o d on every page that carries a differential
    let mut pages = 0;
    let region = stem_region(STEMS);
    for pres in [e2_f2(Flavor::Fixed), e2_f2(Flavor::Tate)] {
        let rules = f2_rules(&pres, D3Route::Asserted).map_err(err)?;
        let (_, _, history) = run_to_collapse(&pres, &rules, region, 20, f2_generators(&pres)).map_err(err)?;
        for pg in &history {
            pg.check_d_squared().map_err(err)?;
            pages += 1;
        }
    }
    let pres = e2_odd(3, Flavor::Fixed);
    run_to_collapse(&pres, &[], region, 20, odd_generators(&pres)).map_err(err)?;
    // Mackey axioms and SNF on the Witt maps
    let mut functors = 0;
    let mut matrices = 0;
    for (p, n) in [(2u64, 1usize), (2, 3), (3, 2), (5, 1)] {
        let f = witt_mackey_map(p, n, 5).map_err(err)?;
        let (k, c) = f.kernel_cokernel().map_err(err)?;
        for mf in [&f.source, &f.target, &k, &c] {
            mf.check_axioms().map_err(err)?;
            functors += 1;
        }
        ensure!(snf_valid(&f.top, n, n), "SNF of 1 - F over F_{p}^{n}");
        matrices += 1;
    }
    MackeyFunctor::constant(&rcyclo_core::AbGroup::cyclic_sum(&[None])).check_axioms().map_err(err)?;
    // SNF of every presentation matrix of can - phi, and phi-correction invariance
    let (can, phi) = can_and_phi(&cx.opts, 1).map_err(err)?;
    let diff = can.difference(&phi, "can - phi").map_err(err)?;
    for g in [&can, &phi, &diff] {
        for c in g.components.values() {
            ensure!(snf_valid(&presentation_matrix(c), c.target.ngens, c.source.ngens + c.target.relations.len()), "SNF");
            matrices += 1;
        }
    }
    let tables: Vec<_> = f2_choices()
        .into_iter()
        .map(|ch| tcr_fiber(&cx.fam, &cx.opts, &[ch], "single").map(|r| kernel_cokernel_table(&r)))
        .collect::<rcyclo_core::Result<_>>()
        .map_err(err)?;
    ensure!(tables.windows(2).all(|w| w[0] == w[1]), "kernels and cokernels depend on the rho-correction");
    Ok(format!("{pairs} Leibniz pairs, {pages} pages, {functors} Mackey functors, {matrices} SNFs"))
}

fn presentation_matrix(f: &GroupMap) -> Vec<Vec<BigInt>> {
    let rel = dense_from_columns(&f.target.relations, f.target.ngens);
    if f.target.relations.is_empty() {
        return f.matrix.clone();
    }
    hcat(&f.matrix, &rel, f.target.ngens)
}

fn main() {
    let start = Instant::now();
    let opts = TcrOptions::default();
    let fam = match SequenceFamily::build(2, STEMS, D3Route::Asserted) {
        Ok(f) => f,
        Err(e) => {
            println!("criteria 1-5, 10: FAIL (sequences: {e})");
            std::process::exit(1);
        }
    };
    let cx = Context { fam, opts };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("homotopy of TCR^- of HF_2", Box::new(|| criterion_1(&cx))),
        ("homotopy of TPR of HF_2", Box::new(|| criterion_2(&cx))),
        ("TCR(HF_2) = HZ_2 + shifted HZ_2 with Mackey structure", Box::new(|| criterion_3(&cx))),
        ("d3(tau) derived, pages agree with the asserted route", Box::new(|| criterion_4(&cx))),
        ("collapse certificates", Box::new(|| criterion_5(&cx))),
        ("geometric fixed points pipeline", Box::new(criterion_6)),
        ("mu_2 cohomology of F2[w1, w2] against brute force", Box::new(criterion_7)),
        ("D8 bicomplex exactness and quotient", Box::new(criterion_8)),
        ("Witt vector pipeline", Box::new(criterion_9)),
        ("property suites", Box::new(|| criterion_10(&cx))),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {title} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
