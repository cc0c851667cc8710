use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::{CheckKind, GeometryTolerances, Plan};
use super::report::{Artifact, CheckOutcome, RunReport};
use crate::bergman::BergmanSpace;
use crate::error::Result;
use crate::geometry::{survey, GeometrySummary};
use crate::multiindex::block_degrees;
use crate::oracle::{assemble_direct, compare, OracleMethod};
use crate::symbols::{QuasiHomogeneousSymbol, QuasiRadialSymbol};
use crate::toeplitz::{assemble_quasi_homogeneous, commutator_norm, predict_commutes_on, OperatorMatrix};

type Sym = QuasiHomogeneousSymbol<f64>;

/// Runs every selected check. Checks run concurrently; the outcomes keep the
/// configured order and every reduction inside a check has a fixed order, so the
/// report is a function of the config alone.
pub fn run(plan: &Plan) -> RunReport {
    let outcomes = plan.config.checks.par_iter().map(|&c| run_check(plan, c)).collect();
    RunReport { config: plan.config.clone(), outcomes }
}

pub fn run_check(plan: &Plan, check: CheckKind) -> CheckOutcome {
    let result = match check {
        CheckKind::Spectrum => run_spectrum(plan),
        CheckKind::Assemble => run_assemble(plan),
        CheckKind::Commute => run_commute(plan),
        CheckKind::Oracle => run_verify(plan),
        CheckKind::Geometry => run_geometry(plan),
        CheckKind::RkhAlgebra => run_rkh_algebra(plan),
    };
    match result {
        Ok((passed, results, tables)) => CheckOutcome { check, passed, results, tables },
        Err(e) => CheckOutcome { check, passed: false, results: json!({ "error": e.to_string() }), tables: Vec::new() },
    }
}

type Outcome = Result<(bool, Value, Vec<Artifact>)>;

fn space(plan: &Plan, m: u32) -> Result<Arc<BergmanSpace<f64>>> {
    BergmanSpace::shared(plan.config.n, m)
}

fn assemble(plan: &Plan, sym: &Sym, space: &Arc<BergmanSpace<f64>>) -> Result<OperatorMatrix<f64>> {
    assemble_quasi_homogeneous(sym, &plan.partition, space, &plan.spectral_options())
}

fn csv_bytes(header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner().map_err(|e| std::io::Error::other(e.to_string()).into())
}

/// `γ(α)` (quasi-radial) or `γ̃(α)` for every basis element, as CSV tables
/// `alpha, s1..sl, value_re, value_im, method`.
pub fn run_spectrum(plan: &Plan) -> Outcome {
    let l = plan.partition.len();
    let mut header = vec!["alpha".to_string()];
    header.extend((1..=l).map(|j| format!("s{j}")));
    header.extend(["value_re", "value_im", "method"].map(String::from));
    let mut tables = Vec::new();
    let mut index = Vec::new();
    for &m in &plan.degrees {
        let space = space(plan, m)?;
        let ops: Vec<OperatorMatrix<f64>> =
            plan.symbols.par_iter().map(|s| assemble(plan, s, &space)).collect::<Result<_>>()?;
        for (i, (sym, op)) in plan.symbols.iter().zip(&ops).enumerate() {
            let method = op.path().map_or("none", |p| p.as_str());
            let mut rows = Vec::new();
            for (ci, alpha) in space.basis().iter().enumerate() {
                let Some(beta) = alpha.shift(sym.p(), sym.q())? else { continue };
                let Some(ri) = space.index_of(&beta) else { continue };
                // undo the orthonormal scaling √(N_β/N_α)
                let v = op.matrix().get(ri, ci) * (space.norm_sq(ci) / space.norm_sq(ri)).sqrt();
                let mut row = vec![alpha.to_string()];
                row.extend(block_degrees(alpha, &plan.partition)?.iter().map(|s| s.to_string()));
                row.extend([v.re.to_string(), v.im.to_string(), method.to_string()]);
                rows.push(row);
            }
            let name = format!("spectrum_m{m}_sym{i}.csv");
            index.push(json!({ "m": m, "symbol": i, "label": sym.label(), "table": name, "rows": rows.len() }));
            tables.push(Artifact { name, bytes: csv_bytes(&header, &rows)? });
        }
    }
    Ok((true, Value::Array(index), tables))
}

/// Full matrices of every symbol, as `row,col,re,im` CSV and as JSON.
pub fn run_assemble(plan: &Plan) -> Outcome {
    let mut tables = Vec::new();
    let mut index = Vec::new();
    for &m in &plan.degrees {
        let space = space(plan, m)?;
        let ops: Vec<OperatorMatrix<f64>> =
            plan.symbols.par_iter().map(|s| assemble(plan, s, &space)).collect::<Result<_>>()?;
        for (i, (sym, op)) in plan.symbols.iter().zip(&ops).enumerate() {
            let stem = format!("assemble_m{m}_sym{i}");
            let mut csv = Vec::new();
            op.write_csv(&mut csv)?;
            let mut doc = op.to_json();
            doc["label"] = json!(sym.label());
            doc["method"] = json!(op.path().map(|p| p.as_str()));
            tables.push(Artifact { name: format!("{stem}.csv"), bytes: csv });
            tables.push(Artifact::json(format!("{stem}.json"), &doc)?);
            index.push(json!({ "m": m, "symbol": i, "label": sym.label(), "dim": op.dim(), "tables": [format!("{stem}.csv"), format!("{stem}.json")] }));
        }
    }
    Ok((true, Value::Array(index), tables))
}

/// Pairwise commutator norms against the predicted commutation.
pub fn run_commute(plan: &Plan) -> Outcome {
    let tol = &plan.config.tolerances;
    let mut entries = Vec::new();
    let mut passed = true;
    for &m in &plan.degrees {
        let space = space(plan, m)?;
        let ops: Vec<OperatorMatrix<f64>> =
            plan.symbols.par_iter().map(|s| assemble(plan, s, &space)).collect::<Result<_>>()?;
        let pairs: Vec<(usize, usize)> =
            (0..ops.len()).flat_map(|i| ((i + 1)..ops.len()).map(move |j| (i, j))).collect();
        let measured: Vec<f64> =
            pairs.par_iter().map(|&(i, j)| commutator_norm(&ops[i], &ops[j])).collect::<Result<_>>()?;
        for (&(i, j), &norm) in pairs.iter().zip(&measured) {
            let (a, b) = (&plan.symbols[i], &plan.symbols[j]);
            let predicted = predict_commutes_on(a, b, &plan.partition, m)?;
            let pass = predicted.map(|p| if p { norm <= tol.commute } else { norm >= tol.separation_floor });
            passed &= pass != Some(false);
            entries.push(json!({
                "m": m,
                "i": i,
                "j": j,
                "sym1": a.label(),
                "sym2": b.label(),
                "predicted": predicted,
                "measured_norm": norm,
                "pass": pass,
            }));
        }
    }
    Ok((passed, Value::Array(entries), Vec::new()))
}

/// Spectral assembly against direct inner products (separated or Monte-Carlo).
pub fn run_verify(plan: &Plan) -> Outcome {
    let cfg = &plan.config;
    let mc = &cfg.monte_carlo;
    let mut entries = Vec::new();
    let mut passed = true;
    for &m in &plan.degrees {
        let space = space(plan, m)?;
        for (i, sym) in plan.symbols.iter().enumerate() {
            let spectral = assemble(plan, sym, &space)?;
            let (direct, stderr) = assemble_direct(sym, &plan.partition, &space, mc)?;
            let cmp = compare(&spectral, &direct, stderr, mc)?;
            let threshold = match mc.method {
                OracleMethod::Separated => cfg.tolerances.oracle_separated,
                OracleMethod::Montecarlo => (cfg.tolerances.oracle_sigmas * stderr).max(cfg.tolerances.oracle_separated),
            };
            let pass = cmp.max_abs_diff <= threshold;
            passed &= pass;
            entries.push(json!({
                "space": { "n": cfg.n, "m": m, "partition": cfg.partition, "dim": space.dim() },
                "symbol": sym.label(),
                "index": i,
                "max_abs_diff": cmp.max_abs_diff,
                "mean_abs_diff": cmp.mean_abs_diff,
                "stderr": cmp.stderr,
                "threshold": threshold,
                "method": cmp.method.as_str(),
                "seed": cmp.seed,
                "samples": cmp.samples,
                "rng": cmp.rng,
                "pass": pass,
            }));
        }
    }
    Ok((passed, Value::Array(entries), Vec::new()))
}

fn geometry_verdicts(s: &GeometrySummary, t: &GeometryTolerances) -> (bool, Value) {
    let bracket = s.bracket_torus.max(s.bracket_scaling).max(s.bracket_mixed);
    let metric = s.metric_symmetry.max(s.metric_j_invariance);
    let upper = [
        ("lagrangian", s.lagrangian, t.lagrangian),
        ("frame_orthogonality", s.frame_orthogonality, t.frame_orthogonality),
        ("bracket", bracket, t.bracket),
        ("ak_invariance", s.ak_invariance, t.ak_invariance),
        ("bk_equivariance", s.bk_equivariance, t.bk_equivariance),
        ("isometry", s.isometry, t.isometry),
        ("recomposition", s.recomposition, t.recomposition),
        ("bk_constraint", s.bk_constraint, t.bk_constraint),
        ("tangency", s.tangency, t.tangency),
        ("metric", metric, t.metric),
    ];
    let mut all = true;
    let mut out = serde_json::Map::new();
    for (name, value, tolerance) in upper {
        let pass = value <= tolerance;
        all &= pass;
        out.insert(name.into(), json!({ "value": value, "tolerance": tolerance, "pass": pass }));
    }
    for (name, value) in [("metric_positive", s.metric_min_ratio), ("free_action", s.min_displacement)] {
        let pass = value > 0.0;
        all &= pass;
        out.insert(name.into(), json!({ "value": value, "pass": pass }));
    }
    (all, Value::Object(out))
}

/// Per-check maxima of the geometry survey in each configured ambient.
pub fn run_geometry(plan: &Plan) -> Outcome {
    let cfg = &plan.config;
    let g = &cfg.geometry;
    let summaries: Vec<GeometrySummary> = g
        .ambients
        .iter()
        .map(|&a| survey(&plan.partition, a, g.samples, cfg.monte_carlo.seed, g.fd_step))
        .collect::<Result<_>>()?;
    let mut passed = true;
    let entries = summaries
        .iter()
        .map(|s| {
            let (pass, verdicts) = geometry_verdicts(s, &cfg.tolerances.geometry);
            passed &= pass;
            json!({ "ambient": s.ambient, "summary": s, "verdicts": verdicts, "pass": pass })
        })
        .collect();
    Ok((passed, Value::Array(entries), Vec::new()))
}

/// Pairwise commutators among generators of `R_k(h)`: the monomials `ξᵖξ̄^q` of the
/// class up to the configured block degree, plus every configured symbol in the class.
pub fn run_rkh_algebra(plan: &Plan) -> Outcome {
    let class = plan.class.as_ref().expect("validated plan carries the class");
    let cfg = &plan.config;
    let mut generators: Vec<Sym> = class
        .index_pairs(cfg.rkh.max_block_degree)
        .into_iter()
        .filter(|(p, q)| !(p.is_zero() && q.is_zero()))
        .map(|(p, q)| Sym::new(QuasiRadialSymbol::one(), p, q))
        .collect::<Result<_>>()?;
    let mut excluded = Vec::new();
    for (i, s) in plan.symbols.iter().enumerate() {
        if class.contains(s)? {
            generators.push(s.clone());
        } else {
            excluded.push(i);
        }
    }
    let labels: Vec<String> = generators.iter().map(|s| s.label()).collect();
    let mut entries = Vec::new();
    let mut passed = true;
    for &m in &plan.degrees {
        let space = space(plan, m)?;
        let ops: Vec<OperatorMatrix<f64>> =
            generators.par_iter().map(|s| assemble(plan, s, &space)).collect::<Result<_>>()?;
        let pairs: Vec<(usize, usize)> =
            (0..ops.len()).flat_map(|i| ((i + 1)..ops.len()).map(move |j| (i, j))).collect();
        let norms: Vec<f64> =
            pairs.par_iter().map(|&(i, j)| commutator_norm(&ops[i], &ops[j])).collect::<Result<_>>()?;
        let (worst, max_norm) = norms
            .iter()
            .enumerate()
            .fold((None, 0.0f64), |(w, mx), (idx, &v)| if v > mx { (Some(pairs[idx]), v) } else { (w, mx) });
        let pass = max_norm <= cfg.tolerances.commute;
        passed &= pass;
        entries.push(json!({
            "m": m,
            "pairs": pairs.len(),
            "max_norm": max_norm,
            "worst_pair": worst.map(|(i, j)| [labels[i].clone(), labels[j].clone()]),
            "pass": pass,
        }));
    }
    let results = json!({ "generators": labels, "excluded_symbols": excluded, "by_m": entries });
    Ok((passed, results, Vec::new()))
}
