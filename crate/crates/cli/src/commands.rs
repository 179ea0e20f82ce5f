use std::path::Path;

use anyhow::{bail, Result};
use num_traits::Zero;
use pcube::cube::{CubePoint, MeasureTable};
use pcube::explore::{
    collect_families, monte_carlo_measure, random_weights, search_min_ratio, with_jobs,
    FamilyFilter, PointSampler, SearchConfig, WeightRange,
};
use pcube::hitting::{
    build_certificate, enumerate_minimal_hitting_sets, knill_size_margin, weighted_size_margin,
};
use pcube::rational::to_f64;
use pcube::spectral::{
    degree_one_identities, influence_level_identity_defect, influences, transform, BooleanFunction,
};
use pcube::verify::{
    sweep, verify_hitting_size, verify_hitting_size_weighted, verify_karpas_uniform,
    verify_knill_uniform, verify_simply_rooted, verify_weighted_karpas, verify_weighted_knill,
    SweepSummary, TheoremId, VerificationReport, WitnessDump,
};
use pcube::{SetFamily, WeightVector};
use serde_json::json;

use crate::output::{table, Output};
use crate::TheoremArg;

const OK: u8 = 0;
const ASSERTED_FAILURE: u8 = 1;

fn set_name(x: CubePoint) -> String {
    x.to_string()
}

pub fn check(f: &SetFamily, out: &mut Output) -> Result<u8> {
    let union_closed = f.is_union_closed();
    let simply_rooted = f.is_simply_rooted();
    out.line(format!("union-closed: {union_closed}"));
    out.line(format!("simply-rooted: {simply_rooted}"));
    out.line(format!("contains-empty: {}", f.contains_empty_set()));
    out.line(format!("size: {}", f.len()));
    out.record(
        "check",
        json!({
            "dim": f.dim(),
            "size": f.len(),
            "union_closed": union_closed,
            "simply_rooted": simply_rooted,
            "contains_empty": f.contains_empty_set(),
        }),
    );
    Ok(OK)
}

pub fn measure(f: &SetFamily, w: &WeightVector, out: &mut Output) -> Result<u8> {
    let table_ = MeasureTable::new(w);
    let total = table_.family(f)?;
    let subs = table_.subfamilies(f)?;
    out.line(format!("mu(F) = {}", out.rational(&total)));
    let ratios: Vec<Option<String>> = subs
        .iter()
        .map(|s| (!total.is_zero()).then(|| out.rational(&(s / &total))))
        .collect();
    let rows: Vec<Vec<String>> = subs
        .iter()
        .zip(&ratios)
        .enumerate()
        .map(|(i, (s, r))| {
            vec![
                (i + 1).to_string(),
                out.rational(s),
                r.clone().unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    out.line(table(&["i", "mu(F_i)", "mu(F_i)/mu(F)"], &rows));
    out.record(
        "measure",
        json!({
            "measure": out.rational(&total),
            "subfamilies": subs.iter().map(|s| out.rational(s)).collect::<Vec<_>>(),
            "ratios": ratios,
        }),
    );
    Ok(OK)
}

pub fn spectrum(f: &SetFamily, w: &WeightVector, out: &mut Output) -> Result<u8> {
    let spectrum = transform(&BooleanFunction::indicator(f), w)?;
    let mut rows = Vec::new();
    for m in 0..1u32 << f.dim() {
        let s = CubePoint::from_mask(m);
        let kernel = spectrum.kernel(s);
        let coeff_sq = spectrum.coeff_sq(s);
        rows.push(vec![set_name(s), out.rational(kernel), out.rational(&coeff_sq)]);
        out.record(
            "coefficient",
            json!({
                "set": s,
                "kernel": out.rational(kernel),
                "coeff_sq": out.rational(&coeff_sq),
            }),
        );
    }
    out.line(table(&["S", "kernel", "coeff^2"], &rows));
    let levels = spectrum.level_weights();
    let level_rows: Vec<Vec<String>> = levels
        .iter()
        .enumerate()
        .map(|(k, v)| vec![k.to_string(), out.rational(v)])
        .collect();
    out.line("");
    out.line(table(&["k", "W^k"], &level_rows));
    out.record(
        "levels",
        json!({ "weights": levels.iter().map(|v| out.rational(v)).collect::<Vec<_>>() }),
    );
    Ok(OK)
}

pub fn influence(f: &SetFamily, w: &WeightVector, out: &mut Output) -> Result<u8> {
    let indicator = BooleanFunction::indicator(f);
    let profile = influences(&indicator, w)?;
    let degree_one = degree_one_identities(&indicator, w)?;
    let defect = influence_level_identity_defect(&indicator, w)?;
    let rows: Vec<Vec<String>> = (0..f.dim())
        .map(|i| {
            vec![
                (i + 1).to_string(),
                out.rational(&profile.plus[i]),
                out.rational(&profile.minus[i]),
                out.rational(&(&profile.plus[i] + &profile.minus[i])),
            ]
        })
        .collect();
    out.line(table(&["i", "I+_i", "I-_i", "I_i"], &rows));
    out.line(format!("weighted I+ = {}", out.rational(&profile.total_plus)));
    out.line(format!("weighted I- = {}", out.rational(&profile.total_minus)));
    out.line(format!("weighted I  = {}", out.rational(&profile.total)));
    out.line(format!(
        "degree-one identities: {}",
        if degree_one.holds() { "hold" } else { "FAIL" }
    ));
    out.line(format!(
        "I - sum_k k W^k = {}",
        out.rational(&defect.total)
    ));
    out.line(format!(
        "per-coordinate residuals: {}",
        defect
            .per_coordinate
            .iter()
            .map(|r| out.rational(r))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    out.record("influence", &profile);
    out.record("degree_one", json!({ "holds": degree_one.holds(), "report": degree_one }));
    out.record("influence_levels", json!({ "zero": defect.is_zero(), "defect": defect }));
    Ok(OK)
}

pub fn hitting(f: &SetFamily, w: Option<&WeightVector>, out: &mut Output) -> Result<u8> {
    let sets = enumerate_minimal_hitting_sets(f);
    out.line(format!("{} minimal hitting set(s)", sets.len()));
    for hs in sets {
        let s = hs.set();
        out.line(format!("S = {s}"));
        let mut record = json!({ "set": s });
        match build_certificate(f, s) {
            Ok(cert) => {
                let check = cert.check(f);
                for (e, a) in cert.representatives() {
                    out.line(format!("  A_{e} = {a}"));
                }
                out.line(format!(
                    "  certificate: {} (private {}, traces {}, distinct {}, members {})",
                    if check.ok() { "ok" } else { "FAIL" },
                    check.private,
                    check.traces,
                    check.distinct,
                    check.members
                ));
                record["certificate"] = json!({ "certificate": cert, "check": check, "ok": check.ok() });
            }
            Err(e) => {
                out.line(format!("  certificate: {e}"));
                record["certificate"] = json!({ "error": e.to_string() });
            }
        }
        match knill_size_margin(f, s) {
            Ok(m) => {
                out.line(format!(
                    "  2^|S| = {} <= |F| = {}: {}",
                    m.subsets, m.family_size, m.holds
                ));
                record["size"] = json!(m);
            }
            Err(e) => {
                out.line(format!("  size bound: {e}"));
                record["size"] = json!({ "error": e.to_string() });
            }
        }
        if let Some(w) = w {
            match weighted_size_margin(f, s, w) {
                Ok(m) => {
                    out.line(format!(
                        "  mu(F) = {} >= prod_(i not in S) q_i = {}: {}",
                        out.rational(&m.measure),
                        out.rational(&m.outside_product),
                        m.holds
                    ));
                    record["weighted_size"] = json!(m);
                }
                Err(e) => {
                    out.line(format!("  weighted size bound skipped: {e}"));
                    record["weighted_size"] = json!({ "skipped": e.to_string() });
                }
            }
        }
        out.record("hitting_set", record);
    }
    Ok(OK)
}

fn render_report(out: &mut Output, report: &VerificationReport) {
    out.record("verification", report);
    if !out.is_human() {
        return;
    }
    let label = if report.theorem.is_asserted() { "" } else { " (reported only, not asserted)" };
    out.line(format!("theorem: {}{label}", report.theorem));
    out.line(format!("  hypothesis: {}", report.hypothesis.as_str()));
    for reason in &report.reasons {
        out.line(format!("    {reason}"));
    }
    out.line(format!("  conclusion: {}", report.conclusion.as_str()));
    if let Some(why) = &report.degenerate {
        out.line(format!("  degenerate: {why}"));
    }
    for (name, q) in &report.quantities {
        out.line(format!("  {name} = {q}"));
    }
    if !report.rows.is_empty() {
        let rows: Vec<Vec<String>> = report
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.coord.to_string(),
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.margin.to_string(),
                    r.satisfied.to_string(),
                ]
            })
            .collect();
        for line in table(&["i", "lhs", "rhs", "margin", "ok"], &rows).lines() {
            out.line(format!("  {line}"));
        }
    }
    for hs in &report.hitting_sets {
        out.line(format!(
            "  S = {}: {} (best i = {}, margin {})",
            CubePoint::from_elements(&hs.set),
            hs.status.as_str(),
            hs.best_coord.map_or_else(|| "-".into(), |c| c.to_string()),
            hs.best_margin.as_ref().map_or_else(|| "-".into(), |m| m.to_string())
        ));
    }
    let witnesses: Vec<String> = report.witness_coords().iter().map(usize::to_string).collect();
    out.line(format!(
        "  witnesses: {}",
        if witnesses.is_empty() { "none".into() } else { witnesses.join(", ") }
    ));
    for note in &report.notes {
        out.line(format!("  note: {note}"));
    }
}

fn selected(theorem: TheoremArg) -> Vec<TheoremArg> {
    match theorem {
        TheoremArg::All => vec![
            TheoremArg::KarpasUniform,
            TheoremArg::KarpasWeighted,
            TheoremArg::SimplyRooted,
            TheoremArg::HittingSize,
            TheoremArg::HittingSizeWeighted,
            TheoremArg::KnillUniform,
            TheoremArg::KnillWeighted,
        ],
        t => vec![t],
    }
}

fn theorem_ids(theorem: TheoremArg) -> Vec<TheoremId> {
    match theorem {
        TheoremArg::KarpasUniform => vec![TheoremId::KarpasUniform],
        TheoremArg::KarpasWeighted => {
            vec![TheoremId::KarpasWeightedDerived, TheoremId::KarpasWeightedPrinted]
        }
        TheoremArg::SimplyRooted => vec![TheoremId::SimplyRooted],
        TheoremArg::KnillUniform => vec![TheoremId::KnillUniform],
        TheoremArg::KnillWeighted => vec![TheoremId::KnillWeighted],
        TheoremArg::HittingSize => vec![TheoremId::HittingSize],
        TheoremArg::HittingSizeWeighted => vec![TheoremId::HittingSizeWeighted],
        TheoremArg::All => unreachable!("expanded by `selected`"),
    }
}

fn name(theorem: TheoremArg) -> &'static str {
    match theorem {
        TheoremArg::KarpasUniform => "karpas-uniform",
        TheoremArg::KarpasWeighted => "karpas-weighted",
        TheoremArg::SimplyRooted => "simply-rooted",
        TheoremArg::KnillUniform => "knill-uniform",
        TheoremArg::KnillWeighted => "knill-weighted",
        TheoremArg::HittingSize => "hitting-size",
        TheoremArg::HittingSizeWeighted => "hitting-size-weighted",
        TheoremArg::All => "all",
    }
}

fn skip(out: &mut Output, theorem: TheoremArg, reason: &str) {
    out.line(format!("theorem: {}: skipped ({reason})", name(theorem)));
    out.record("skipped", json!({ "theorem": name(theorem), "reason": reason }));
}

fn run_theorem(
    f: &SetFamily,
    w: Option<&WeightVector>,
    theorem: TheoremArg,
) -> Result<Vec<VerificationReport>, String> {
    let weights = || w.ok_or_else(|| "needs --weights".to_string());
    let reports = match theorem {
        TheoremArg::KarpasUniform => verify_karpas_uniform(f).map(|r| vec![r]),
        TheoremArg::KarpasWeighted => {
            verify_weighted_karpas(f, weights()?).map(|r| vec![r.derived, r.printed])
        }
        TheoremArg::SimplyRooted => verify_simply_rooted(f, weights()?).map(|r| vec![r]),
        TheoremArg::KnillUniform => verify_knill_uniform(f).map(|r| vec![r]),
        TheoremArg::KnillWeighted => verify_weighted_knill(f, weights()?).map(|r| vec![r]),
        TheoremArg::HittingSize => verify_hitting_size(f).map(|r| vec![r]),
        TheoremArg::HittingSizeWeighted => {
            verify_hitting_size_weighted(f, weights()?).map(|r| vec![r])
        }
        TheoremArg::All => unreachable!("expanded by `selected`"),
    };
    reports.map_err(|e| e.to_string())
}

pub fn verify_family(
    f: &SetFamily,
    w: Option<&WeightVector>,
    theorem: TheoremArg,
    dump_dir: &Path,
    out: &mut Output,
) -> Result<u8> {
    let all = theorem == TheoremArg::All;
    let mut reports = Vec::new();
    for t in selected(theorem) {
        match run_theorem(f, w, t) {
            Ok(rs) => reports.extend(rs),
            Err(reason) if all => skip(out, t, &reason),
            Err(reason) => bail!("{}: {reason}", name(t)),
        }
    }
    let mut code = OK;
    for report in &reports {
        render_report(out, report);
        if report.is_asserted_failure() {
            let path = WitnessDump::new(f, w, report).write_into(dump_dir)?;
            out.line(format!("  witness written to {}", path.display()));
            out.record(
                "witness",
                json!({ "theorem": report.theorem, "path": path.display().to_string() }),
            );
            code = ASSERTED_FAILURE;
        }
    }
    Ok(code)
}

fn render_summary(out: &mut Output, s: &SweepSummary) {
    out.record("sweep", s);
    let label = if s.theorem.is_asserted() { "" } else { " (reported only, not asserted)" };
    out.line(format!("theorem: {}{label}, d={}", s.theorem, s.dim));
    out.line(format!(
        "  families {}, checks {}, hypothesis met {}, holds {}, indeterminate {}, degenerate {}",
        s.families, s.checks, s.hypothesis_met, s.holds, s.indeterminate, s.degenerate
    ));
    if s.theorem.is_asserted() {
        out.line(format!("  violations: {}", s.violations));
    } else {
        out.line(format!("  failures of this form: {}", s.unasserted_failures));
    }
}

#[allow(clippy::too_many_arguments)]
pub fn verify_exhaustive(
    dim: usize,
    theorem: TheoremArg,
    given: Vec<WeightVector>,
    random: usize,
    seed: u64,
    jobs: usize,
    dump_dir: &Path,
    out: &mut Output,
) -> Result<u8> {
    if let Some(w) = given.iter().find(|w| w.dim() != dim) {
        bail!("weight vector {w} has {} coordinates, expected {dim}", w.dim());
    }
    let all = theorem == TheoremArg::All;
    let mut summaries = Vec::new();
    for t in selected(theorem) {
        let range = match t {
            TheoremArg::KnillWeighted | TheoremArg::HittingSizeWeighted => WeightRange::UpperHalf,
            _ => WeightRange::Interior,
        };
        let mut weights = given.clone();
        weights.extend(random_weights(dim, random, range, 12, seed)?);
        for id in theorem_ids(t) {
            match sweep(dim, id, &weights, jobs) {
                Ok(s) => summaries.push((s, weights.clone())),
                Err(e) if all => skip(out, t, &e.to_string()),
                Err(e) => bail!("{}: {e}", name(t)),
            }
        }
    }
    let mut code = OK;
    for (summary, weights) in &summaries {
        render_summary(out, summary);
        if out.is_human() && summary.theorem.needs_weights() {
            let lines: Vec<String> = weights.iter().map(WeightVector::to_line).collect();
            out.line(format!("  weights: {}", lines.join(" | ")));
        }
        if summary.violations > 0 {
            code = ASSERTED_FAILURE;
            for dump in summary.witnesses.iter().filter(|d| d.theorem.is_asserted()) {
                let path = dump.write_into(dump_dir)?;
                out.line(format!("  witness written to {}", path.display()));
                out.record(
                    "witness",
                    json!({ "theorem": dump.theorem, "path": path.display().to_string() }),
                );
            }
        }
    }
    Ok(code)
}

pub fn enumerate(dim: usize, filter: FamilyFilter, emit: bool, jobs: usize, out: &mut Output) -> Result<u8> {
    let families = with_jobs(jobs, || collect_families(dim, filter))??;
    let includes_empty = families.first().is_some_and(SetFamily::is_empty);
    if emit {
        for f in &families {
            out.line(f.to_file_string());
            out.record(
                "family",
                json!({ "dim": dim, "table": f.table(), "members": f }),
            );
        }
    } else {
        out.line(format!("d={dim} filter={filter}: {} families", families.len()));
        if includes_empty {
            out.line("includes the empty family (counted as vacuously union-closed)");
        }
    }
    out.record(
        "enumeration",
        json!({
            "dim": dim,
            "filter": filter.to_string(),
            "count": families.len(),
            "includes_empty_family": includes_empty,
        }),
    );
    if emit && out.is_human() {
        eprintln!("d={dim} filter={filter}: {} families", families.len());
    }
    Ok(OK)
}

pub fn search(
    dim: usize,
    w: &WeightVector,
    config: &SearchConfig,
    seed: u64,
    jobs: usize,
    out: &mut Output,
) -> Result<u8> {
    let result = with_jobs(jobs, || search_min_ratio(dim, w, config, seed))??;
    out.line(format!("objective max_i mu(F_i)/mu(F) = {}", out.rational(&result.objective)));
    out.line(format!("feasible: {}", result.feasible));
    out.line(format!(
        "seed {} restart {}: {} accepted moves, {} evaluations",
        result.seed, result.restart, result.moves, result.evaluations
    ));
    let generators: Vec<String> = result.generators.iter().map(|g| g.to_string()).collect();
    out.line(format!("generators: {}", generators.join(" ")));
    out.line(result.family.to_file_string().trim_end());
    out.record(
        "search",
        json!({
            "objective": out.rational(&result.objective),
            "result": result,
        }),
    );
    Ok(OK)
}

pub fn sample(
    w: &WeightVector,
    family: Option<&SetFamily>,
    draws: u64,
    seed: u64,
    out: &mut Output,
) -> Result<u8> {
    match family {
        None => {
            for x in PointSampler::new(w, seed).take(draws as usize) {
                out.line(x.to_bits(w.dim()));
                out.record("point", json!({ "bits": x.to_bits(w.dim()), "set": x }));
            }
        }
        Some(f) => {
            let estimate = monte_carlo_measure(f, w, draws, seed)?;
            let exact = MeasureTable::new(w).family(f)?;
            let deviation = (estimate.estimate - to_f64(&exact)).abs();
            out.line(format!(
                "estimate {:.6} +- {:.6} ({} of {} draws)",
                estimate.estimate, estimate.stderr, estimate.hits, estimate.draws
            ));
            out.line(format!("exact mu(F) = {}", out.rational(&exact)));
            out.line(format!("|estimate - exact| = {deviation:.6}"));
            out.record(
                "monte_carlo",
                json!({ "estimate": estimate, "exact": out.rational(&exact), "seed": seed }),
            );
        }
    }
    Ok(OK)
}
