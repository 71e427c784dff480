//! Subcommands and their exit codes.

use crate::chart::ChartSpec;
use crate::golden::compare_golden;
use crate::json::{envelope, render, to_value};
use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rcyclo_core::coeff::CoefficientPresentation;
use rcyclo_core::groupcoh::{c2_cohomology, c2_tate, d8_resolution_check, symmetric_piece, x1_adic_d2, D8Module};
use rcyclo_core::pipelines::sequences::{rules_and_generators, run_named, stem_region};
use rcyclo_core::pipelines::{gfp_tcr_f2, tcr_f2, tcr_odd, tcr_perfect, D3Route, PiTable, TcrOptions};
use rcyclo_core::specseq::collapse::run_pages;
use rcyclo_core::specseq::e2::by_name;
use rcyclo_core::witt::kernel_cokernel_at;
use serde_json::{json, Value};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_GOLDEN_MISMATCH: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;
pub const EXIT_NOT_STABILIZED: i32 = 4;

fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let (a, b) = text.split_once(':').ok_or("expected lo:hi")?;
    let lo: i64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let hi: i64 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "rcyclo", version, about = "Exact computations of real topological cyclic homology")]
pub struct Cli {
    /// Also write the output to this file
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient presentation: hf2, hfp, thr or gfp
    Coeff {
        #[arg(long, default_value = "hf2")]
        name: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Run a spectral sequence (hfpss, tss, hfpss-e, tss-e) to collapse and assemble its abutment
    Specseq {
        #[arg(long, default_value = "hfpss")]
        name: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value = "-12:12", value_parser = parse_range, allow_hyphen_values = true)]
        stems: (i64, i64),
        /// Derive d3 instead of stating it
        #[arg(long)]
        derived: bool,
        /// Include the collapse page
        #[arg(long)]
        page: bool,
    },
    /// mu_2 cohomology and Tate cohomology of F2[w1, w2]_t with the swap
    Groupcoh {
        #[arg(long, default_value_t = 16)]
        t_max: i64,
        #[arg(long, default_value_t = 4)]
        s_max: i64,
    },
    /// Kernel and cokernel of 1 - F on W_m(F_q)
    Witt {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, env = "RCYCLO_PRECISION", default_value_t = 5)]
        prec: u32,
    },
    /// Fiber of can - phi for HF_p
    Tcr {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value = "-12:12", value_parser = parse_range, allow_hyphen_values = true)]
        window: (i64, i64),
        #[arg(long, env = "RCYCLO_PRECISION", default_value_t = 5)]
        prec: u32,
        #[arg(long)]
        derived: bool,
    },
    /// TCR of the field with p^n elements through Witt vectors
    TcrPerfect {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, env = "RCYCLO_PRECISION", default_value_t = 5)]
        prec: u32,
    },
    /// Geometric fixed points of TCR(HF_2) from psi - can
    Gfp {
        #[arg(long, default_value = "-10:10", value_parser = parse_range, allow_hyphen_values = true)]
        window: (i64, i64),
    },
    /// Exactness of the truncated D8 bicomplex with coefficients trivial, regular or cosets
    D8Check {
        #[arg(long, default_value = "trivial")]
        module: String,
        #[arg(long, default_value_t = 12)]
        width: usize,
        #[arg(long, default_value_t = 12)]
        height: usize,
    },
    /// Chart of one page of a spectral sequence
    Chart {
        #[arg(long, default_value = "hfpss")]
        name: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value = "-6:6", value_parser = parse_range, allow_hyphen_values = true)]
        stems: (i64, i64),
        #[arg(long, default_value_t = 4)]
        page: u32,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        derived: bool,
    },
    /// Compare a result file with a golden file
    Compare {
        #[arg(long)]
        golden: PathBuf,
        actual: PathBuf,
    },
}

/// Text to print and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn json(v: &Value) -> Self {
        Output { text: render(v), code: EXIT_OK }
    }
}

fn route(derived: bool) -> D3Route {
    if derived {
        D3Route::Derived
    } else {
        D3Route::Asserted
    }
}

/// Exit code for an engine error anywhere in the chain.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    use rcyclo_core::Error;
    match e.downcast_ref::<Error>() {
        Some(Error::UndeterminedDifferential(_) | Error::ExtensionAmbiguity(_)) => EXIT_UNDETERMINED,
        Some(Error::NotStabilized(_)) => EXIT_NOT_STABILIZED,
        _ => EXIT_FAILURE,
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Coeff { name, p } => {
            let c = CoefficientPresentation::by_name(name, *p)?;
            Ok(Output::json(&envelope("coefficients", to_value(&c)?)))
        }
        Command::Specseq { name, p, stems, derived, page } => {
            let run = run_named(name, *p, *stems, route(*derived))?;
            let table_name = if name.starts_with("tss") { "TPR" } else { "TCR^-" };
            let mut table = PiTable::from_groups(table_name, run.presentation(), &run.groups, *stems);
            table.detectors.push(run.rule.label.clone());
            table.provenance.extend(run.page.provenance.iter().cloned());
            let mut v = json!({ "table": to_value(&table)?, "certificate": run.certificate.to_json() });
            if *page {
                v["page"] = run.page.to_json();
            }
            Ok(Output::json(&envelope("spectral-run", v)))
        }
        Command::Groupcoh { t_max, s_max } => {
            let mut pieces = Vec::new();
            for t in 0..=*t_max {
                let m = symmetric_piece(t)?;
                let fixed: Vec<usize> = c2_cohomology(&m, (0, *s_max))?.iter().map(|g| g.dim()).collect();
                let tate: Vec<usize> = c2_tate(&m, (-s_max, *s_max)).iter().map(|g| g.dim()).collect();
                pieces.push(json!({ "t": t, "fixed": fixed, "tate": tate, "tate_from": -s_max }));
            }
            let x1 = to_value(&x1_adic_d2(1)?)?;
            Ok(Output::json(&envelope("group-cohomology", json!({ "pieces": pieces, "x1_adic": x1 }))))
        }
        Command::Witt { p, n, prec } => {
            let (k, c) = kernel_cokernel_at(*p, *n, *prec)?;
            let v = json!({ "p": p, "n": n, "precision": prec, "kernel": to_value(&k)?, "cokernel": to_value(&c)?,
                "display": { "kernel": k.to_string(), "cokernel": c.to_string() } });
            Ok(Output::json(&envelope("witt", v)))
        }
        Command::Tcr { p, window, prec, derived } => {
            // the fiber needs one stem of margin on each side
            let opts = TcrOptions { stems: (window.0 - 1, window.1 + 1), precision: *prec, route: route(*derived) };
            let report = if *p == 2 { tcr_f2(&opts)? } else { tcr_odd(*p, &opts)? };
            Ok(Output::json(&to_value(&report)?))
        }
        Command::TcrPerfect { p, n, prec } => {
            let r = tcr_perfect(*p, *n, *prec)?;
            let mut out = Output::json(&envelope("tcr-perfect", to_value(&r)?));
            if !r.stabilized {
                out.code = EXIT_NOT_STABILIZED;
            }
            Ok(out)
        }
        Command::Gfp { window } => Ok(Output::json(&to_value(&gfp_tcr_f2(*window)?)?)),
        Command::D8Check { module, width, height } => {
            let r = d8_resolution_check(&D8Module::by_name(module)?, *width, *height)?;
            Ok(Output::json(&envelope("d8-check", to_value(&r)?)))
        }
        Command::Chart { name, p, stems, page, format, derived } => {
            let pres = by_name(name, *p).ok_or_else(|| anyhow!("unknown spectral sequence {name}"))?;
            let (rules, _) = rules_and_generators(&pres, route(*derived))?;
            let (last, history) = run_pages(&pres, &rules, stem_region(*stems))?;
            if *page < 2 {
                bail!("pages start at E2");
            }
            let chosen = history.get((*page - 2) as usize).unwrap_or(&last);
            let spec = ChartSpec::from_page(chosen, 0);
            let text = match format {
                Format::Ascii => spec.ascii(),
                Format::Svg => spec.svg(),
            };
            Ok(Output { text, code: EXIT_OK })
        }
        Command::Compare { golden, actual } => {
            let read = |p: &PathBuf| -> anyhow::Result<Value> {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))
            };
            let (g, a) = (read(golden)?, read(actual)?);
            match compare_golden(&a, &g) {
                Err(e) => Ok(Output { text: format!("{e}\n"), code: EXIT_GOLDEN_MISMATCH }),
                Ok(lines) if lines.is_empty() => Ok(Output { text: "match\n".into(), code: EXIT_OK }),
                Ok(lines) => Ok(Output { text: lines.join("\n") + "\n", code: EXIT_GOLDEN_MISMATCH }),
            }
        }
    }
}
