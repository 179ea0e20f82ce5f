//! Exhaustive runs of one verifier over every qualifying family at a small
//! dimension.

use rayon::prelude::*;
use serde::Serialize;

use crate::cube::{MeasureTable, SetFamily};
use crate::error::{Error, Result};
use crate::explore::{collect_families, with_jobs, FamilyFilter};
use crate::weights::WeightVector;

use super::{
    hitting_size_weighted_with, simply_rooted_with, verify_hitting_size, verify_karpas_uniform,
    verify_knill_uniform, weighted_karpas_with, weighted_knill_with, ConclusionStatus,
    HypothesisStatus, TheoremId, VerificationReport, WitnessDump,
};

/// Tallies of one sweep. Every (family, weight vector) pair is one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub theorem: TheoremId,
    pub dim: usize,
    pub families: usize,
    pub checks: usize,
    pub hypothesis_met: usize,
    pub holds: usize,
    pub indeterminate: usize,
    pub degenerate: usize,
    /// Failures that are neither degenerate nor of an unasserted form.
    pub violations: usize,
    /// Failures of the unasserted printed form, kept for reporting.
    pub unasserted_failures: usize,
    #[serde(skip)]
    pub witnesses: Vec<WitnessDump>,
}

/// Families a theorem is checked on.
pub fn sweep_filter(theorem: TheoremId) -> FamilyFilter {
    let closed = FamilyFilter::union_closed();
    match theorem {
        TheoremId::KarpasUniform => closed,
        TheoremId::KarpasWeightedDerived | TheoremId::KarpasWeightedPrinted => {
            closed.with_nonempty_member()
        }
        TheoremId::SimplyRooted => FamilyFilter::simply_rooted(),
        TheoremId::HittingSize
        | TheoremId::HittingSizeWeighted
        | TheoremId::KnillUniform | TheoremId::KnillWeighted => {
            closed.with_empty()
        }
    }
}

fn check_weights(theorem: TheoremId, dim: usize, weights: &[WeightVector]) -> Result<()> {
    if theorem.needs_weights() && weights.is_empty() {
        return Err(Error::InvalidArgument(format!("{theorem} needs at least one weight vector")));
    }
    for w in weights {
        if w.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: w.dim(),
            });
        }
        match theorem {
            TheoremId::KarpasWeightedDerived
            | TheoremId::KarpasWeightedPrinted
            | TheoremId::SimplyRooted => w.require_interior()?,
            TheoremId::HittingSizeWeighted => w.require_at_least_half()?,
            TheoremId::KnillWeighted => {
                w.require_at_least_half()?;
                w.require_interior()?;
            }
            _ => {}
        }
    }
    Ok(())
}

fn run_one<'a>(
    theorem: TheoremId,
    family: &SetFamily,
    tables: &'a [(WeightVector, MeasureTable)],
) -> Vec<(Option<&'a WeightVector>, VerificationReport)> {
    let unweighted = |report: Result<VerificationReport>| {
        vec![(None, report.expect("family passed the sweep filter"))]
    };
    match theorem {
        TheoremId::KarpasUniform => unweighted(verify_karpas_uniform(family)),
        TheoremId::HittingSize => unweighted(verify_hitting_size(family)),
        TheoremId::KnillUniform => {
            if family.len() < 2 {
                return Vec::new();
            }
            unweighted(verify_knill_uniform(family))
        }
        _ => tables
            .iter()
            .map(|(w, table)| {
                let report = match theorem {
                    TheoremId::KarpasWeightedDerived => weighted_karpas_with(family, w, table).derived,
                    TheoremId::KarpasWeightedPrinted => weighted_karpas_with(family, w, table).printed,
                    TheoremId::SimplyRooted => simply_rooted_with(family, w, table),
                    TheoremId::HittingSizeWeighted => hitting_size_weighted_with(family, w, table),
                    TheoremId::KnillWeighted => weighted_knill_with(family, w, table),
                    _ => unreachable!("unweighted theorems handled above"),
                };
                (Some(w), report)
            })
            .collect(),
    }
}

type Checked = (VerificationReport, Option<WitnessDump>);

/// Runs `theorem` on every family [`sweep_filter`] admits at `dim ≤ 4`,
/// once per weight vector for weighted statements, on `jobs` threads.
/// Results do not depend on `jobs`.
pub fn sweep(
    dim: usize,
    theorem: TheoremId,
    weights: &[WeightVector],
    jobs: usize,
) -> Result<SweepSummary> {
    check_weights(theorem, dim, weights)?;
    let tables: Vec<(WeightVector, MeasureTable)> = weights
        .iter()
        .map(|w| (w.clone(), MeasureTable::new(w)))
        .collect();
    let filter = sweep_filter(theorem);
    let per_family = with_jobs(jobs, || -> Result<Vec<Vec<Checked>>> {
        let families = collect_families(dim, filter)?;
        Ok(families
            .par_iter()
            .map(|family| {
                run_one(theorem, family, &tables)
                    .into_iter()
                    .map(|(w, report)| {
                        let dump = (report.conclusion == ConclusionStatus::Fails
                            && report.degenerate.is_none())
                        .then(|| WitnessDump::new(family, w, &report));
                        (report, dump)
                    })
                    .collect()
            })
            .collect())
    })??;

    let mut summary = SweepSummary {
        theorem,
        dim,
        families: per_family.len(),
        checks: 0,
        hypothesis_met: 0,
        holds: 0,
        indeterminate: 0,
        degenerate: 0,
        violations: 0,
        unasserted_failures: 0,
        witnesses: Vec::new(),
    };
    for (report, dump) in per_family.into_iter().flatten() {
        summary.checks += 1;
        summary.hypothesis_met += usize::from(report.hypothesis == HypothesisStatus::Met);
        summary.degenerate += usize::from(
            report.degenerate.is_some() || report.hypothesis == HypothesisStatus::Degenerate,
        );
        match report.conclusion {
            ConclusionStatus::Holds => summary.holds += 1,
            ConclusionStatus::Indeterminate => summary.indeterminate += 1,
            ConclusionStatus::Fails => {}
        }
        if let Some(dump) = dump {
            if report.theorem.is_asserted() {
                summary.violations += 1;
            } else {
                summary.unasserted_failures += 1;
            }
            summary.witnesses.push(dump);
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_sweeps_at_dimension_two() {
        let s = sweep(2, TheoremId::KarpasUniform, &[], 1).unwrap();
        assert_eq!(s.families, 14);
        assert_eq!(s.violations, 0);
        let s = sweep(2, TheoremId::KnillUniform, &[], 2).unwrap();
        assert_eq!(s.violations, 0);
        assert_eq!(s.holds, s.checks);
    }

    #[test]
    fn printed_form_failures_are_not_violations() {
        let w = WeightVector::parse("1/4,1/3").unwrap();
        let s = sweep(2, TheoremId::KarpasWeightedPrinted, std::slice::from_ref(&w), 1).unwrap();
        assert_eq!(s.violations, 0);
        assert!(s.unasserted_failures > 0);
        let s = sweep(2, TheoremId::KarpasWeightedDerived, &[w], 1).unwrap();
        assert_eq!(s.violations, 0);
    }

    #[test]
    fn jobs_do_not_change_results() {
        let ws = [
            WeightVector::parse("1/3,1/2,5/7").unwrap(),
            WeightVector::parse("2/3,1/5,1/2").unwrap(),
        ];
        let a = sweep(3, TheoremId::SimplyRooted, &ws, 1).unwrap();
        let b = sweep(3, TheoremId::SimplyRooted, &ws, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn weight_requirements() {
        let w = WeightVector::parse("1/3,1/2").unwrap();
        assert!(matches!(
            sweep(2, TheoremId::KnillWeighted, std::slice::from_ref(&w), 1),
            Err(Error::WeightBelowHalf { .. })
        ));
        assert!(sweep(3, TheoremId::SimplyRooted, &[w], 1).is_err());
        assert!(sweep(2, TheoremId::SimplyRooted, &[], 1).is_err());
    }
}
