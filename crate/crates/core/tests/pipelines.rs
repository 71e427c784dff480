mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use rcyclo_core::pipelines::sequences::SequenceFamily;
use rcyclo_core::pipelines::tcr::{tcr_minus_table, tpr_table};
use rcyclo_core::pipelines::*;
use rcyclo_core::PadicGroup;
use common::summand_oracle;
use std::collections::BTreeSet;
use std::sync::OnceLock;

const STEMS: (i64, i64) = (-12, 12);

fn family() -> &'static SequenceFamily {
    static FAM: OnceLock<SequenceFamily> = OnceLock::new();
    FAM.get_or_init(|| SequenceFamily::build(2, STEMS, D3Route::Asserted).unwrap())
}

fn shape(g: &PadicGroup) -> (usize, usize) {
    assert!(g.torsion.iter().all(|&e| e == 1), "torsion beyond Z/2 in {g}");
    (g.zp_rank, g.torsion.len())
}

#[test]
fn tcr_minus_matches_summand_families() {
    let table = tcr_minus_table(family(), STEMS);
    for (n, want) in summand_oracle(STEMS) {
        assert_eq!(shape(table.group(n).unwrap()), want, "stem {n}");
    }
    let zero = &table.entries[&0];
    assert_eq!(zero.summands[0].generator, "1");
    assert!(zero.summands[0].detected_by_chain > 1);
    let gens: BTreeSet<&str> = table.entries[&-4].summands.iter().map(|s| s.generator.as_str()).collect();
    assert!(gens.contains("theta u^2"));
}

#[test]
fn tpr_matches_summand_families() {
    let table = tpr_table(family(), STEMS);
    for (n, want) in summand_oracle(STEMS) {
        assert_eq!(shape(table.group(n).unwrap()), want, "stem {n}");
    }
    let gens: BTreeSet<&str> = table.entries[&4].summands.iter().map(|s| s.generator.as_str()).collect();
    assert_eq!(gens, BTreeSet::from(["tau^2 u^-2", "rho^4 u^-4"]));
}

#[test]
fn tables_survive_json() {
    let table = tcr_minus_table(family(), (-4, 4));
    let text = serde_json::to_string(&table).unwrap();
    let back: PiTable = serde_json::from_str(&text).unwrap();
    assert_eq!(back, table);
}

#[test]
fn can_and_phi_on_named_classes() {
    let opts = TcrOptions { stems: (-8, 4), ..TcrOptions::default() };
    let m = opts.precision;
    let modulus = BigInt::from(2).pow(m);
    let (can, phi) = can_and_phi(&opts, 1).unwrap();
    // red class rho x dies under can
    assert!(can.component(1).unwrap().is_zero().unwrap());
    // green theta u^2 (tau^2/u^2)^k: can = 1, phi = 2^(2 + 2k)
    for (n, k) in [(-4, 0u32), (-8, 1)] {
        let c = &can.component(n).unwrap().matrix;
        let f = &phi.component(n).unwrap().matrix;
        assert_eq!(c[0][0].mod_floor(&modulus), BigInt::from(1));
        assert_eq!(f[0][0].mod_floor(&modulus), BigInt::from(2).pow(2 + 2 * k).mod_floor(&modulus));
    }
    let diff = can.difference(&phi, "can - phi").unwrap();
    assert!(diff.component(0).unwrap().is_zero().unwrap());
    let (k, c) = diff.kernel_cokernel(-4).unwrap();
    assert!(k.is_zero() && c.is_zero());
}

#[test]
fn tcr_f2_is_z2_plus_shifted_z2() {
    let report = tcr_f2(&TcrOptions::default()).unwrap();
    assert!(report.checks.values().all(|&b| b), "{:?}", report.checks);
    let z2 = PadicGroup { p: 2, zp_rank: 1, torsion: vec![] };
    for f in &report.fiber {
        let want = if f.degree == 0 || f.degree == -1 { z2.clone() } else { PadicGroup::zero(2) };
        assert_eq!(f.group.as_ref().unwrap(), &want, "degree {}", f.degree);
    }
    assert_eq!(report.window, (-11, 11));
    let parts: Vec<(i64, &str)> = report.mackey.iter().map(|e| (e.degree, e.part.as_str())).collect();
    assert_eq!(parts, vec![(0, "kernel"), (-1, "cokernel")]);
    for e in &report.mackey {
        assert_eq!((e.scalars.res.as_str(), e.scalars.tr.as_str(), e.scalars.weyl.as_str()), ("1", "2", "1"));
    }
    // same Mackey answer as the Witt route for F_2
    let perfect = tcr_perfect(2, 1, report.precision.unwrap()).unwrap();
    assert_eq!(Some(&report.mackey[0].scalars), perfect.mackey_kernel.as_ref());
    assert_eq!(Some(&report.mackey[1].scalars), perfect.mackey_cokernel.as_ref());
}

#[test]
fn tcr_odd_primes() {
    for p in [3u64, 5] {
        let report = tcr_odd(p, &TcrOptions::default()).unwrap();
        assert!(report.checks.values().all(|&b| b), "p = {p}: {:?}", report.checks);
        let zp = PadicGroup { p, zp_rank: 1, torsion: vec![] };
        for f in &report.fiber {
            let want = if f.degree == 0 || f.degree == -1 { zp.clone() } else { PadicGroup::zero(p) };
            assert_eq!(f.group.as_ref().unwrap(), &want, "p = {p}, degree {}", f.degree);
        }
    }
    assert!(tcr_odd(4, &TcrOptions::default()).is_err());
}

#[test]
fn derived_d3_reproduces_the_asserted_pages() {
    let asserted = family();
    let derived = SequenceFamily::build(2, STEMS, D3Route::Derived).unwrap();
    assert_eq!(asserted.fixed.page.classes(), derived.fixed.page.classes());
    assert_eq!(asserted.tate.page.classes(), derived.tate.page.classes());
    let (_, report) = derive_d3(asserted.fixed.presentation()).unwrap();
    assert!(report.x1_adic.d2_nonzero);
    assert_eq!(report.image, "rho u x");
    assert_eq!(report.tau_x_target, vec!["rho u x^2"]);
}

#[test]
fn gfp_kernel_and_cokernel() {
    let report = gfp_tcr_f2((-10, 10)).unwrap();
    assert!(report.checks.values().all(|&b| b), "{:?}", report.checks);
    let f2 = PadicGroup { p: 2, zp_rank: 0, torsion: vec![1] };
    for d in report.degrees.iter().filter(|d| d.degree <= 10) {
        let want = if d.degree >= 0 && d.degree % 2 == 0 { f2.clone() } else { PadicGroup::zero(2) };
        assert_eq!(d.kernel, want, "ker in degree {}", d.degree);
        assert_eq!(d.cokernel, want, "coker in degree {}", d.degree);
    }
    // F_2[tau^2] + shifted F_2[tau^2] with |tau^2| = 2
    for f in &report.fiber {
        let n = f.degree;
        let want = usize::from(n >= 0 && n % 2 == 0) + usize::from(n >= -1 && n % 2 != 0);
        assert_eq!(f.group.as_ref().unwrap().torsion.len(), want, "degree {n}");
    }
}
