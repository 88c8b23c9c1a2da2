//! Command-line interface: classification of parameter points, closed-form
//! coefficients, the diagonal linear system, the dimension table, and the
//! verification suites. Thin adapter over the library — no mathematics
//! lives here.

mod formats;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use formats::{coeff_to_json, parse_crat, parse_index_triple, parse_triple, SCHEMA_VERSION};
use trilin_core::coefficients::{
    bernstein_b, ktilde_alpha, ktilde_lambda, q_coeff, r_coeff, s_coeff, ttilde_coeff,
    CoeffError, CoeffValue, MixedPoint, MultiIndex,
};
use trilin_core::diag_system::{
    build_system, dim_tri, dim_tri_diag, nullspace_dim, sol_table, SystemVariant,
};
use trilin_core::numerics::rational::CRat;
use trilin_core::parameter_space::{
    classify_stratum, pole_profile, to_geometric, to_spectral, Ambient, GeometricParam,
    SpectralParam,
};
use trilin_core::suites::{
    all_suites, suite_bernstein, suite_deriv, suite_diag_consistency, suite_geometry, suite_kt,
    suite_ks, suite_qjet, suite_ranks, suite_rk, suite_symmetry, suite_table, suite_zeroset,
    SuiteConfig,
};

const EXIT_VERIFY_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BAD_DIMENSION: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser)]
#[command(
    name = "trilin",
    about = "Exact computation around conformally invariant trilinear forms on spheres",
    long_about = "Classifies parameter points against the singular set, evaluates the \
closed-form coefficient families exactly, solves the diagonal linear system, reproduces \
the dimension table, and runs the verification suites.\n\nValue syntax (whitespace-free): \
rationals as p/q, complex values as p/q+r/s i (see FORMATS.md)."
)]
struct Cli {
    /// Ambient dimension (sphere dimension n-1); must be at least 4.
    #[arg(long, global = true, default_value_t = 5)]
    n: i64,
    /// Working precision in bits for numeric fallback (also via
    /// TRILIN_PRECISION_BITS).
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for all randomized sweeps.
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Worker threads for sweep subcommands.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a parameter point: stratum, lines, witness data, pole
    /// profile, multiplicities.
    Classify {
        /// Spectral coordinates "λ1,λ2,λ3".
        #[arg(long, conflicts_with = "alpha", allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Geometric coordinates "α1,α2,α3".
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Evaluate one coefficient family at a multi-index.
    Coeff {
        /// K (kernel), T (type-I), S (diagonal), R (intertwiner),
        /// Q (mixed second derivative), B (Bernstein-Sato polynomial).
        #[arg(long)]
        family: String,
        /// Multi-index "a1,a2,a3".
        #[arg(long, default_value = "0,0,0")]
        a: String,
        /// Spectral point for K/S.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Geometric point for K/B.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Distinguished slot for T/R.
        #[arg(long)]
        slot: Option<usize>,
        /// Plane index k for T/S.
        #[arg(long)]
        k: Option<i64>,
        /// Plane index l for R.
        #[arg(long)]
        l: Option<i64>,
        /// Free parameter pair "x,y" for T/R (increasing slot order).
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
        /// Normal-form data for Q.
        #[arg(long, allow_hyphen_values = true)]
        l1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        m2: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        m3: Option<i64>,
    },
    /// Solve the diagonal system at (λ1, λ2; k) and report the dimension.
    Solve {
        #[arg(long)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda1: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda2: String,
        #[arg(long, value_enum, default_value_t = Variant::Displayed)]
        variant: Variant,
    },
    /// Reproduce the solution-dimension table for all orders up to kmax.
    Table {
        #[arg(long, default_value_t = 6)]
        kmax: i64,
        /// Also include generic (untabulated) parameter samples.
        #[arg(long, default_value_t = true)]
        generic: bool,
    },
    /// Run verification suites; exits 1 if any case fails.
    Verify {
        /// kt|ks|rk|deriv|bernstein|zeroset|ranks|qjet|geometry|table|symmetry|diag|all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        samples: Option<usize>,
        /// Multi-index grid bound for identity checks.
        #[arg(long)]
        grid: Option<u64>,
        /// Line-parameter bound for geometry sweeps.
        #[arg(long)]
        lmax: Option<i64>,
        #[arg(long)]
        kmax: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Displayed,
    Proof,
}

fn main() {
    let cli = Cli::parse();
    let precision = cli
        .precision_bits
        .or_else(|| {
            std::env::var("TRILIN_PRECISION_BITS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(trilin_core::DEFAULT_PRECISION)
        .max(64);
    let ambient = match Ambient::new(cli.n) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_BAD_DIMENSION);
        }
    };
    let code = run(&cli, &ambient, precision).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    });
    std::process::exit(code);
}

fn run(cli: &Cli, ambient: &Ambient, precision: u32) -> Result<i32, String> {
    match &cli.command {
        Command::Classify { lambda, alpha } => {
            let lam = spectral_from_args(ambient, lambda.as_deref(), alpha.as_deref())?;
            let stratum = classify_stratum(&lam);
            let profile = pole_profile(&to_geometric(&lam));
            let record = json!({
                "schema_version": SCHEMA_VERSION,
                "n": ambient.n(),
                "lambda": lam.lambda.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
                "alpha": to_geometric(&lam).alpha.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
                "stratum": stratum.tag,
                "lines": stratum.lines,
                "witness": stratum.witness,
                "pole_profile": profile,
                "dim_tri": dim_tri(&lam),
                "dim_tri_diag": dim_tri_diag(&lam),
            });
            emit(cli.format, &record, || classify_text(&record));
            Ok(0)
        }
        Command::Coeff {
            family,
            a,
            lambda,
            alpha,
            slot,
            k,
            l,
            pair,
            l1,
            m2,
            m3,
        } => {
            let a = MultiIndex {
                a: parse_index_triple(a)?,
            };
            let value = eval_family(
                ambient, precision, family, &a, lambda, alpha, slot, k, l, pair, l1, m2, m3,
            )
            .map_err(|e| e.to_string())?;
            let record = json!({
                "schema_version": SCHEMA_VERSION,
                "n": ambient.n(),
                "family": family,
                "a": a.a,
                "value": coeff_to_json(&value, precision),
            });
            emit(cli.format, &record, || {
                format!("{} = {}", family, record["value"])
            });
            Ok(0)
        }
        Command::Solve {
            k,
            lambda1,
            lambda2,
            variant,
        } => {
            if *k < 0 {
                return Err("order k must be nonnegative".into());
            }
            let l1 = parse_crat(lambda1)?;
            let l2 = parse_crat(lambda2)?;
            let v = match variant {
                Variant::Displayed => SystemVariant::Displayed,
                Variant::Proof => SystemVariant::ProofVariant,
            };
            let sys = build_system(&l1, &l2, *k, &ambient.rho(), v);
            let dim = nullspace_dim(&sys);
            let record = json!({
                "schema_version": SCHEMA_VERSION,
                "n": ambient.n(),
                "k": k,
                "lambda1": l1.to_string(),
                "lambda2": l2.to_string(),
                "variant": v,
                "dim": dim.dim,
                "rank": dim.rank,
                "unknowns": dim.unknown_count,
                "equations": dim.equation_count,
                "principal_unknowns": dim.principal_unknowns,
            });
            emit(cli.format, &record, || format!("dim = {}", dim.dim));
            Ok(0)
        }
        Command::Table { kmax, generic } => {
            match sol_table(ambient, *kmax, *generic, SystemVariant::Displayed) {
                Ok(cells) => {
                    match cli.format {
                        Format::Csv => {
                            println!("k,lambda1,lambda2,class1,class2,predicted,computed");
                            for c in &cells {
                                println!(
                                    "{},{},{},{:?},{:?},{},{}",
                                    c.k,
                                    c.lambda1,
                                    c.lambda2,
                                    c.class1,
                                    c.class2,
                                    c.predicted,
                                    c.computed
                                );
                            }
                        }
                        _ => {
                            let record = json!({
                                "schema_version": SCHEMA_VERSION,
                                "n": ambient.n(),
                                "kmax": kmax,
                                "cells": cells,
                                "all_match": true,
                            });
                            emit(cli.format, &record, || {
                                format!("{} cells, all matching the printed table", cells.len())
                            });
                        }
                    }
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(EXIT_VERIFY_FAILED)
                }
            }
        }
        Command::Verify {
            suite,
            samples,
            grid,
            lmax,
            kmax,
        } => {
            let mut cfg = SuiteConfig {
                seed: cli.seed,
                precision,
                ..SuiteConfig::default()
            };
            if let Some(s) = samples {
                cfg.samples = *s;
            }
            if let Some(g) = grid {
                cfg.grid = *g;
            }
            if let Some(l) = lmax {
                cfg.lmax = *l;
            }
            if let Some(k) = kmax {
                cfg.kmax = *k;
            }
            let reports = run_suites(suite, &cfg, cli.jobs)?;
            let all_pass = reports.iter().all(|r| r.passed());
            let record = json!({
                "schema_version": SCHEMA_VERSION,
                "seed": cfg.seed,
                "precision": cfg.precision,
                "suites": reports,
                "passed": all_pass,
            });
            emit(cli.format, &record, || {
                reports
                    .iter()
                    .map(|r| {
                        format!(
                            "{}: {} ({} cases)",
                            r.suite,
                            if r.passed() { "PASS" } else { "FAIL" },
                            r.cases
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(if all_pass { 0 } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn run_suites(
    name: &str,
    cfg: &SuiteConfig,
    jobs: usize,
) -> Result<Vec<trilin_core::probes::SuiteReport>, String> {
    type SuiteFn = fn(&SuiteConfig) -> trilin_core::probes::SuiteReport;
    let catalog: Vec<(&str, SuiteFn)> = vec![
        ("kt", suite_kt),
        ("ks", suite_ks),
        ("rk", suite_rk),
        ("deriv", suite_deriv),
        ("bernstein", suite_bernstein),
        ("zeroset", suite_zeroset),
        ("ranks", suite_ranks),
        ("qjet", suite_qjet),
        ("geometry", suite_geometry),
        ("table", suite_table),
        ("symmetry", suite_symmetry),
        ("diag", suite_diag_consistency),
    ];
    if name == "all" {
        if jobs > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| e.to_string())?;
            use rayon::prelude::*;
            let mut indexed: Vec<(usize, trilin_core::probes::SuiteReport)> = pool.install(|| {
                catalog
                    .par_iter()
                    .enumerate()
                    .map(|(i, (_, f))| (i, f(cfg)))
                    .collect()
            });
            indexed.sort_by_key(|(i, _)| *i);
            return Ok(indexed.into_iter().map(|(_, r)| r).collect());
        }
        return Ok(all_suites(cfg));
    }
    match catalog.iter().find(|(n, _)| *n == name) {
        Some((_, f)) => Ok(vec![f(cfg)]),
        None => Err(format!(
            "unknown suite {name:?}; expected one of kt, ks, rk, deriv, bernstein, zeroset, \
             ranks, qjet, geometry, table, symmetry, diag, all"
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn eval_family(
    ambient: &Ambient,
    precision: u32,
    family: &str,
    a: &MultiIndex,
    lambda: &Option<String>,
    alpha: &Option<String>,
    slot: &Option<usize>,
    k: &Option<i64>,
    l: &Option<i64>,
    pair: &Option<String>,
    l1: &Option<i64>,
    m2: &Option<i64>,
    m3: &Option<i64>,
) -> Result<CoeffValue, CoeffError> {
    let usage = |msg: &str| CoeffError::Domain(msg.to_string());
    match family {
        "K" | "k" => {
            if let Some(s) = alpha {
                let g = GeometricParam::new(
                    ambient.clone(),
                    parse_triple(s).map_err(|e| usage(&e))?,
                );
                Ok(ktilde_alpha(&g, a, precision))
            } else if let Some(s) = lambda {
                let lam = SpectralParam::new(
                    ambient.clone(),
                    parse_triple(s).map_err(|e| usage(&e))?,
                );
                Ok(ktilde_lambda(&lam, a, precision))
            } else {
                Err(usage("family K needs --lambda or --alpha"))
            }
        }
        "T" | "t" => {
            let slot = slot.ok_or_else(|| usage("family T needs --slot"))?;
            let k = k.ok_or_else(|| usage("family T needs --k"))?;
            let pair = pair
                .as_deref()
                .ok_or_else(|| usage("family T needs --pair"))?;
            let p = parse_pair(pair).map_err(|e| usage(&e))?;
            ttilde_coeff(slot, k, (&p[0], &p[1]), ambient, a, precision)
        }
        "S" | "s" => {
            let k = k.ok_or_else(|| usage("family S needs --k"))?;
            let s = lambda
                .as_deref()
                .ok_or_else(|| usage("family S needs --lambda"))?;
            let lam = SpectralParam::new(
                ambient.clone(),
                parse_triple(s).map_err(|e| usage(&e))?,
            );
            s_coeff(k, &lam, a, precision)
        }
        "R" | "r" => {
            let slot = slot.ok_or_else(|| usage("family R needs --slot"))?;
            let l = l.ok_or_else(|| usage("family R needs --l"))?;
            let pair = pair
                .as_deref()
                .ok_or_else(|| usage("family R needs --pair"))?;
            let p = parse_pair(pair).map_err(|e| usage(&e))?;
            r_coeff(slot, l, (&p[0], &p[1]), ambient, a, precision)
        }
        "Q" | "q" => {
            let l1 = l1.ok_or_else(|| usage("family Q needs --l1"))?;
            let m2 = m2.ok_or_else(|| usage("family Q needs --m2"))?;
            let m3 = m3.ok_or_else(|| usage("family Q needs --m3"))?;
            q_coeff(&MixedPoint { l1, m2, m3 }, ambient, a, precision)
        }
        "B" | "b" => {
            let s = alpha
                .as_deref()
                .ok_or_else(|| usage("family B needs --alpha"))?;
            let g = GeometricParam::new(
                ambient.clone(),
                parse_triple(s).map_err(|e| usage(&e))?,
            );
            Ok(bernstein_b(&g, precision))
        }
        other => Err(usage(&format!(
            "unknown family {other:?}; expected K, T, S, R, Q or B"
        ))),
    }
}

fn parse_pair(s: &str) -> Result<[CRat; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected two comma-separated values, got {s:?}"));
    }
    Ok([parse_crat(parts[0])?, parse_crat(parts[1])?])
}

fn spectral_from_args(
    ambient: &Ambient,
    lambda: Option<&str>,
    alpha: Option<&str>,
) -> Result<SpectralParam, String> {
    match (lambda, alpha) {
        (Some(s), None) => Ok(SpectralParam::new(ambient.clone(), parse_triple(s)?)),
        (None, Some(s)) => Ok(to_spectral(&GeometricParam::new(
            ambient.clone(),
            parse_triple(s)?,
        ))),
        _ => Err("exactly one of --lambda / --alpha is required".into()),
    }
}

fn classify_text(record: &Value) -> String {
    format!(
        "stratum {} | dim_tri {} | dim_tri_diag {} | lines {}",
        record["stratum"], record["dim_tri"], record["dim_tri_diag"], record["lines"]
    )
}

fn emit<F: FnOnce() -> String>(format: Format, record: &Value, text: F) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(record).unwrap()),
        Format::Csv | Format::Text => println!("{}", text()),
    }
}
