use clap::Parser;
use rcyclo_cli::golden::GoldenError;
use rcyclo_cli::{compare_golden, run, Cli};
use rcyclo_core::pipelines::sequences::{rules_and_generators, stem_region};
use rcyclo_core::pipelines::D3Route;
use rcyclo_core::specseq::collapse::run_pages;
use rcyclo_core::specseq::e2::by_name;
use rcyclo_core::specseq::{ClassColor, Page};
use rcyclo_cli::ChartSpec;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(name)
}

fn golden(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(golden_path(name)).unwrap()).unwrap()
}

fn invoke(args: &[&str]) -> (String, i32) {
    let cli = Cli::try_parse_from(std::iter::once("rcyclo").chain(args.iter().copied())).unwrap();
    let out = run(&cli).unwrap();
    (out.text, out.code)
}

fn tcr_f2_output() -> &'static str {
    static OUT: OnceLock<String> = OnceLock::new();
    OUT.get_or_init(|| invoke(&["tcr", "--window=-11:11"]).0)
}

fn pages(name: &str) -> (Page, Vec<Page>) {
    let pres = by_name(name, 2).unwrap();
    let (rules, _) = rules_and_generators(&pres, D3Route::Asserted).unwrap();
    run_pages(&pres, &rules, stem_region((-6, 6))).unwrap()
}

#[test]
fn tcr_f2_matches_golden() {
    let actual: Value = serde_json::from_str(tcr_f2_output()).unwrap();
    assert_eq!(compare_golden(&actual, &golden("tcr_f2.json")).unwrap(), Vec::<String>::new());
}

#[test]
fn perturbed_pi_one_gives_one_line() {
    let mut actual: Value = serde_json::from_str(tcr_f2_output()).unwrap();
    let fiber = actual["fiber"].as_array_mut().unwrap();
    let entry = fiber.iter_mut().find(|f| f["degree"] == 1).unwrap();
    entry["group"] = json!({ "p": 2, "torsion": [1], "zp_rank": 0 });
    let diff = compare_golden(&actual, &golden("tcr_f2.json")).unwrap();
    assert_eq!(diff.len(), 1, "{diff:?}");
    assert!(diff[0].starts_with("s=1 pi:"), "{}", diff[0]);
}

#[test]
fn schema_drift_is_rejected() {
    let mut actual: Value = serde_json::from_str(tcr_f2_output()).unwrap();
    actual["schema"] = json!("rcyclo/pi-table");
    assert!(matches!(compare_golden(&actual, &golden("tcr_f2.json")), Err(GoldenError::Schema { .. })));
    let mut bumped = golden("tcr_f2.json");
    bumped["version"] = json!(2);
    assert!(matches!(compare_golden(&golden("tcr_f2.json"), &bumped), Err(GoldenError::Schema { .. })));
}

#[test]
fn other_goldens_match() {
    let (text, code) = invoke(&["gfp"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(compare_golden(&v, &golden("gfp.json")).unwrap().is_empty());
    for p in ["2", "3", "5"] {
        let (text, code) = invoke(&["tcr-perfect", "--p", p]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(compare_golden(&v, &golden(&format!("tcr_perfect_p{p}.json"))).unwrap().is_empty(), "p = {p}");
    }
    let (text, _) = invoke(&["specseq", "--stems=-12:12"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(compare_golden(&v["table"], &golden("tcr_minus_table.json")).unwrap().is_empty());
}

#[test]
fn json_round_trip_is_byte_stable() {
    let text = tcr_f2_output();
    let v: Value = serde_json::from_str(text).unwrap();
    assert_eq!(rcyclo_cli::json::render(&v), text);
    let stored = std::fs::read_to_string(golden_path("tcr_f2.json")).unwrap();
    assert_eq!(stored, text);
}

#[test]
fn chart_counts_match_page_dimensions() {
    let (last, history) = pages("hfpss");
    for page in history.iter().chain(std::iter::once(&last)) {
        let dim: usize = page.pieces.iter().filter(|(d, _)| d.w == 0).map(|(_, pc)| pc.reps.len()).sum();
        let spec = ChartSpec::from_page(page, 0);
        assert_eq!(spec.classes.len(), dim);
        assert_eq!(spec.svg().matches("<circle ").count(), dim);
        assert!(spec.ascii().contains(&format!("{dim} classes")));
    }
}

#[test]
fn e2_has_the_unit() {
    let (_, history) = pages("hfpss");
    let spec = ChartSpec::from_page(&history[0], 0);
    assert_eq!(spec.page, 2);
    assert!(spec.classes.iter().any(|c| (c.s, c.t) == (0, 0)));
}

#[test]
fn e3_arrows_have_the_right_shift() {
    let (_, history) = pages("hfpss");
    let spec = ChartSpec::from_page(&history[1], 0);
    assert_eq!(spec.page, 3);
    assert!(!spec.arrows.is_empty());
    for a in &spec.arrows {
        assert_eq!((a.to.0 - a.from.0, a.to.1 - a.from.1), (-3, 2));
    }
}

#[test]
fn tate_e4_has_red_classes_on_the_bottom_line() {
    let (last, history) = pages("tss");
    let page = history.get(2).unwrap_or(&last);
    let spec = ChartSpec::from_page(page, 0);
    assert!(spec.classes.iter().any(|c| c.t == 0 && c.color == ClassColor::Red));
}

#[test]
fn window_arguments_accept_negative_bounds() {
    assert!(Cli::try_parse_from(["rcyclo", "gfp", "--window", "-4:4"]).is_ok());
    assert!(Cli::try_parse_from(["rcyclo", "gfp", "--window", "4:-4"]).is_err());
    assert!(Cli::try_parse_from(["rcyclo", "gfp", "--window", "4"]).is_err());
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rcyclo"))
}

#[test]
fn binary_exit_codes() {
    let dir = std::env::temp_dir().join(format!("rcyclo-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("tcr.json");
    let status = binary().args(["tcr", "--window=-11:11", "--out"]).arg(&out).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), tcr_f2_output());

    let ok = binary().arg("compare").arg("--golden").arg(golden_path("tcr_f2.json")).arg(&out).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));

    let drifted = dir.join("gfp.json");
    std::fs::copy(golden_path("gfp.json"), &drifted).unwrap();
    let mut v = golden("gfp.json");
    v["schema"] = json!("rcyclo/other");
    std::fs::write(&drifted, serde_json::to_string(&v).unwrap()).unwrap();
    let bad = binary().arg("compare").arg("--golden").arg(golden_path("gfp.json")).arg(&drifted).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));

    let unknown = binary().args(["d8-check", "--module", "nonsense"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn precision_comes_from_the_environment() {
    let out = binary().args(["witt", "--p", "2", "--n", "1"]).env("RCYCLO_PRECISION", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision"], json!(3));
    let flag = binary().args(["witt", "--prec", "4"]).env("RCYCLO_PRECISION", "3").output().unwrap();
    let v: Value = serde_json::from_slice(&flag.stdout).unwrap();
    assert_eq!(v["precision"], json!(4));
}

#[test]
fn engine_errors_map_to_exit_codes() {
    use rcyclo_cli::exit_code;
    use rcyclo_core::Error;
    let code = |e: Error| exit_code(&anyhow::Error::from(e).context("running"));
    assert_eq!(code(Error::UndeterminedDifferential("d5".into())), 3);
    assert_eq!(code(Error::ExtensionAmbiguity("stem 2".into())), 3);
    assert_eq!(code(Error::NotStabilized("m = 5".into())), 4);
    assert_eq!(exit_code(&anyhow::anyhow!("io")), 1);
}
