//! Theorem verifiers.
//!
//! Every check is exact except the weighted logarithmic ratio bound, which
//! compares logarithms of different bases and is evaluated with
//! [`KNILL_PRECISION_BITS`]-bit binary floats against [`KNILL_TOLERANCE`].
//! Coordinates in reports are 1-based and witnesses are listed smallest
//! first.

mod report;
mod sweep;

pub use report::{
    ConclusionStatus, CoordinateRow, HittingSetOutcome, HypothesisStatus, Quantity, TheoremId,
    VerificationReport, Witness, WitnessDump,
};
pub use sweep::{sweep, sweep_filter, SweepSummary};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cube::{CubePoint, MeasureTable, SetFamily};
use crate::error::{Error, Result};
use crate::hitting::{build_certificate, enumerate_minimal_hitting_sets, weighted_size_margin_unchecked};
use crate::rational::{int, ratio, serde_fraction, to_high_float, HighFloat, Rational};
use crate::spectral::{influences, transform, BooleanFunction};
use crate::weights::WeightVector;

/// Working precision for the weighted logarithmic bound.
pub const KNILL_PRECISION_BITS: usize = 192;

/// Margins of the weighted logarithmic bound within this distance of zero
/// are reported as indeterminate.
pub const KNILL_TOLERANCE: f64 = 1e-20;

fn check_dims(family: &SetFamily, w: &WeightVector) -> Result<()> {
    if family.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: family.dim(),
            found: w.dim(),
        });
    }
    Ok(())
}

/// `max_i |F_i| / |F|` and the coordinates attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FranklReport {
    #[serde(with = "serde_fraction")]
    pub ratio: Rational,
    pub witnesses: Vec<usize>,
    pub counts: Vec<usize>,
    /// No coordinate occurs in any member (`F = {∅}`).
    pub degenerate: bool,
}

/// Reports the largest element frequency. Nothing is asserted.
pub fn verify_frankl_ratio(family: &SetFamily) -> Result<FranklReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let counts: Vec<usize> = (1..=family.dim())
        .map(|c| family.count_containing(c))
        .collect::<Result<_>>()?;
    let best = counts.iter().copied().max().unwrap_or(0);
    let witnesses = if best == 0 {
        Vec::new()
    } else {
        (1..=family.dim()).filter(|c| counts[c - 1] == best).collect()
    };
    Ok(FranklReport {
        ratio: ratio(best as i64, family.len() as i64),
        witnesses,
        counts,
        degenerate: best == 0,
    })
}

/// `max_i μ(F_i) / μ(F)`; `None` when `μ(F) = 0`.
pub fn weighted_frankl_ratio(family: &SetFamily, table: &MeasureTable) -> Result<Option<Rational>> {
    let total = table.family(family)?;
    if total.is_zero() {
        return Ok(None);
    }
    Ok(table
        .subfamilies(family)?
        .into_iter()
        .max()
        .map(|best| best / total))
}

fn degenerate_no_nonempty(family: &SetFamily) -> Option<String> {
    (!family.has_nonempty_member()).then(|| {
        "family has no non-empty member, so no coordinate can occur in it".to_string()
    })
}

/// Uniform Karpas: a union-closed family with `|F| ≥ 2^{d−1}` has a
/// coordinate with `|F_i| ≥ |F|/2`.
pub fn verify_karpas_uniform(family: &SetFamily) -> Result<VerificationReport> {
    if !family.is_union_closed() {
        return Err(Error::NotUnionClosed);
    }
    let mut report = VerificationReport::new(TheoremId::KarpasUniform);
    let size = int(family.len() as i64);
    let threshold = int(1 << (family.dim() - 1));
    report.quantity("size", size.clone());
    report.quantity("threshold", threshold.clone());
    if size < threshold {
        report.hypothesis = HypothesisStatus::NotMet;
        report.reasons.push(format!(
            "|F| = {} < 2^(d-1) = {}",
            family.len(),
            threshold
        ));
    }
    let half = &size / int(2);
    for c in 1..=family.dim() {
        let count = int(family.count_containing(c)? as i64);
        let margin = &count - &half;
        report.rows.push(CoordinateRow {
            coord: c,
            satisfied: margin >= Rational::zero(),
            lhs: count.into(),
            rhs: half.clone().into(),
            margin: margin.into(),
        });
    }
    report.conclude_from_rows();
    report.degenerate = degenerate_no_nonempty(family);
    Ok(report)
}

/// Both readings of the weighted Karpas conclusion under one hypothesis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedKarpasReport {
    /// `μ(F_i) ≥ p_i μ(F)`, asserted.
    pub derived: VerificationReport,
    /// `μ(F_i) ≥ q_i μ(F)`, reported only.
    pub printed: VerificationReport,
}

/// Weighted Karpas: a union-closed family with `μ(F) ≥ q` (where
/// `q = 1 − min_i p_i`) has a coordinate with large `μ(F_i)`.
pub fn verify_weighted_karpas(family: &SetFamily, w: &WeightVector) -> Result<WeightedKarpasReport> {
    check_dims(family, w)?;
    if !family.is_union_closed() {
        return Err(Error::NotUnionClosed);
    }
    w.require_interior()?;
    Ok(weighted_karpas_with(family, w, &MeasureTable::new(w)))
}

pub(crate) fn weighted_karpas_with(
    family: &SetFamily,
    w: &WeightVector,
    table: &MeasureTable,
) -> WeightedKarpasReport {
    let measure = table.family(family).expect("dimensions checked");
    let subs = table.subfamilies(family).expect("dimensions checked");
    let q_max = w.q_max();
    let met = measure >= q_max;
    let build = |theorem: TheoremId, coefficients: &[Rational]| {
        let mut report = VerificationReport::new(theorem);
        report.quantity("measure", measure.clone());
        report.quantity("q_max", q_max.clone());
        if !met {
            report.hypothesis = HypothesisStatus::NotMet;
            report.reasons.push("mu(F) < q_max".to_string());
        }
        for (i, (sub, coef)) in subs.iter().zip(coefficients).enumerate() {
            let bound = coef * &measure;
            let margin = sub - &bound;
            report.rows.push(CoordinateRow {
                coord: i + 1,
                satisfied: margin >= Rational::zero(),
                lhs: sub.clone().into(),
                rhs: bound.into(),
                margin: margin.into(),
            });
        }
        report.conclude_from_rows();
        report.degenerate = degenerate_no_nonempty(family);
        report
    };
    let derived = build(TheoremId::KarpasWeightedDerived, w.ps());
    let mut printed = build(TheoremId::KarpasWeightedPrinted, w.qs());
    printed.notes.push(
        "printed form mu(F_i) >= q_i mu(F); complementing the simply rooted statement gives \
         p_i in place of q_i, so this form is reported but not asserted"
            .to_string(),
    );
    WeightedKarpasReport { derived, printed }
}

/// Simply rooted form: `μ(F) ≤ p = min_i p_i` gives a coordinate with
/// `μ(F_i) ≤ p_i μ(F)`.
pub fn verify_simply_rooted(family: &SetFamily, w: &WeightVector) -> Result<VerificationReport> {
    check_dims(family, w)?;
    if !family.is_simply_rooted() {
        return Err(Error::NotSimplyRooted);
    }
    w.require_interior()?;
    Ok(simply_rooted_with(family, w, &MeasureTable::new(w)))
}

pub(crate) fn simply_rooted_with(
    family: &SetFamily,
    w: &WeightVector,
    table: &MeasureTable,
) -> VerificationReport {
    let measure = table.family(family).expect("dimensions checked");
    let subs = table.subfamilies(family).expect("dimensions checked");
    let p_min = w.p_min().clone();
    let mut report = VerificationReport::new(TheoremId::SimplyRooted);
    report.quantity("measure", measure.clone());
    report.quantity("p_min", p_min.clone());
    if measure > p_min {
        report.hypothesis = HypothesisStatus::NotMet;
        report.reasons.push("mu(F) > p_min".to_string());
    }
    for (i, (sub, p)) in subs.iter().zip(w.ps()).enumerate() {
        let bound = p * &measure;
        let margin = &bound - sub;
        report.rows.push(CoordinateRow {
            coord: i + 1,
            satisfied: margin >= Rational::zero(),
            lhs: sub.clone().into(),
            rhs: bound.into(),
            margin: margin.into(),
        });
    }
    report.conclude_from_rows();
    if let Some(c) = family.dictator_coordinate() {
        report
            .notes
            .push(format!("dictator family {{x : x_{c} = 1}}: the strict chain is tight here"));
        if report.conclusion == ConclusionStatus::Fails {
            report.degenerate = Some(format!(
                "dictator family {{x : x_{c} = 1}} in dimension {}: mu(F_{c}) = p_{c} exceeds p_{c} mu(F)",
                family.dim()
            ));
        }
    }
    report
}

/// Every quantity in the influence argument for the simply rooted form,
/// with the status of each inequality in the chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KarpasDiagnostic {
    #[serde(with = "serde_fraction")]
    pub measure: Rational,
    /// `δ = p − μ(F)`; negative when the hypothesis fails.
    #[serde(with = "serde_fraction")]
    pub delta: Rational,
    #[serde(with = "serde_fraction")]
    pub p_min: Rational,
    #[serde(with = "serde_fraction")]
    pub q_max: Rational,
    /// Weighted `I⁺(f)`.
    #[serde(with = "serde_fraction")]
    pub influence_plus: Rational,
    #[serde(with = "serde_fraction")]
    pub influence_minus: Rational,
    #[serde(with = "serde_fraction")]
    pub influence_total: Rational,
    /// `4 q μ(F)`.
    #[serde(with = "serde_fraction")]
    pub upper_bound: Rational,
    /// `4 (p − δ)(q + δ)`.
    #[serde(with = "serde_fraction")]
    pub lower_bound: Rational,
    /// `W¹(f)`.
    #[serde(with = "serde_fraction")]
    pub level_one: Rational,
    /// `m_∅ = f̂(∅)`.
    #[serde(with = "serde_fraction")]
    pub empty_kernel: Rational,
    /// `2 − 2 f̂(∅)² − W¹(f)`, the `k = 2` low-degree bound on `I(f)`.
    #[serde(with = "serde_fraction")]
    pub low_degree_bound: Rational,
    /// `I⁺ ≤ 4 q μ(F)`; always true for simply rooted families.
    pub upper_holds: bool,
    /// `W¹ < I⁺ − I⁻`.
    pub level_one_holds: bool,
    /// `I⁺ > 4 (p − δ)(q + δ)`.
    pub lower_holds: bool,
    /// `I ≥ 2 − 2 f̂(∅)² − W¹`.
    pub low_degree_holds: bool,
    /// Every `f̂({i}) > 0`, i.e. no coordinate satisfies the conclusion.
    pub all_singletons_positive: bool,
}

pub fn karpas_diagnostics(family: &SetFamily, w: &WeightVector) -> Result<KarpasDiagnostic> {
    check_dims(family, w)?;
    if !family.is_simply_rooted() {
        return Err(Error::NotSimplyRooted);
    }
    w.require_interior()?;
    let table = MeasureTable::new(w);
    let f = BooleanFunction::indicator(family);
    let spectrum = transform(&f, w)?;
    let profile = influences(&f, w)?;
    let measure = table.family(family)?;
    let p_min = w.p_min().clone();
    let q_max = w.q_max();
    let delta = &p_min - &measure;
    let upper_bound = int(4) * &q_max * &measure;
    let lower_bound = int(4) * (&p_min - &delta) * (&q_max + &delta);
    let level_one = spectrum.level_weight(1)?;
    let empty_kernel = spectrum.kernel(CubePoint::EMPTY).clone();
    let low_degree_bound = int(2) - int(2) * &empty_kernel * &empty_kernel - &level_one;
    let all_singletons_positive = (0..family.dim())
        .all(|i| *spectrum.kernel(CubePoint::from_mask(1 << i)) > Rational::zero());
    Ok(KarpasDiagnostic {
        upper_holds: profile.total_plus <= upper_bound,
        level_one_holds: level_one < &profile.total_plus - &profile.total_minus,
        lower_holds: profile.total_plus > lower_bound,
        low_degree_holds: profile.total >= low_degree_bound,
        all_singletons_positive,
        measure,
        delta,
        p_min,
        q_max,
        influence_plus: profile.total_plus,
        influence_minus: profile.total_minus,
        influence_total: profile.total,
        upper_bound,
        lower_bound,
        level_one,
        empty_kernel,
        low_degree_bound,
    })
}

/// Uniform ratio bound: some `|F_i| ≥ (|F| − 1)/log2 |F|`.
///
/// Decided exactly as `|F|^{|F_i|} ≥ 2^{|F| − 1}`; the float margin is for
/// display.
pub fn verify_knill_uniform(family: &SetFamily) -> Result<VerificationReport> {
    if !family.is_union_closed() {
        return Err(Error::NotUnionClosed);
    }
    if !family.contains_empty_set() {
        return Err(Error::MissingEmptySet);
    }
    if family.len() < 2 {
        return Err(Error::FamilyTooSmall(2));
    }
    let size = family.len();
    let bound = (size as f64 - 1.0) / (size as f64).log2();
    let mut report = VerificationReport::new(TheoremId::KnillUniform);
    report.quantity("size", int(size as i64));
    let power_of_two = BigUint::one() << (size - 1);
    for c in 1..=family.dim() {
        let count = family.count_containing(c)?;
        let satisfied = count > 0 && BigUint::from(size).pow(count as u32) >= power_of_two;
        report.rows.push(CoordinateRow {
            coord: c,
            lhs: int(count as i64).into(),
            rhs: Quantity::Approx {
                value: bound,
                digits: format!("{bound:e}"),
            },
            margin: Quantity::Approx {
                value: count as f64 - bound,
                digits: format!("{:e}", count as f64 - bound),
            },
            satisfied,
        });
    }
    report.conclude_from_rows();
    if let Some(hs) = enumerate_minimal_hitting_sets(family).first() {
        let inside: Vec<usize> = report
            .witness_coords()
            .into_iter()
            .filter(|&c| hs.set().contains(c))
            .collect();
        report.notes.push(format!(
            "minimal hitting set {} contains witnesses {:?}",
            hs.set(),
            inside
        ));
    }
    Ok(report)
}

/// Both sides of the weighted logarithmic bound at working precision.
#[derive(Debug, Clone)]
pub struct KnillTerms {
    /// `(μ(F) − 1/Q) / ln(Q μ(F))`.
    pub lhs: HighFloat,
    /// `μ(F_i) / ln Q_i` for each coordinate.
    pub rhs: Vec<HighFloat>,
}

fn ln_rational(value: &Rational) -> HighFloat {
    to_high_float(value, KNILL_PRECISION_BITS).ln()
}

/// Computes the two sides for `F ≠ {∅}` with `∅ ∈ F` and `1/2 ≤ p_i < 1`.
pub fn weighted_knill_terms(family: &SetFamily, w: &WeightVector) -> Result<KnillTerms> {
    check_knill_preconditions(family, w)?;
    if family.is_only_empty_set() {
        return Err(Error::InvalidArgument(
            "the bound is 0/0 for the family {∅}".to_string(),
        ));
    }
    Ok(knill_terms_with(family, w, &MeasureTable::new(w)))
}

fn knill_terms_with(family: &SetFamily, w: &WeightVector, table: &MeasureTable) -> KnillTerms {
    let measure = table.family(family).expect("dimensions checked");
    let inverse_q = w.q_product();
    let numerator = to_high_float(&(&measure - &inverse_q), KNILL_PRECISION_BITS);
    let lhs = numerator / ln_rational(&(&measure / &inverse_q));
    let rhs = table
        .subfamilies(family)
        .expect("dimensions checked")
        .iter()
        .zip(w.qs())
        .map(|(sub, q)| to_high_float(sub, KNILL_PRECISION_BITS) / ln_rational(&q.recip()))
        .collect();
    KnillTerms { lhs, rhs }
}

fn check_knill_preconditions(family: &SetFamily, w: &WeightVector) -> Result<()> {
    check_dims(family, w)?;
    w.require_at_least_half()?;
    if let Some(i) = w.ps().iter().position(One::is_one) {
        return Err(Error::BoundaryWeight {
            coord: i + 1,
            value: "1/1".to_string(),
        });
    }
    if !family.is_union_closed() {
        return Err(Error::NotUnionClosed);
    }
    if !family.contains_empty_set() {
        return Err(Error::MissingEmptySet);
    }
    Ok(())
}

/// Weighted ratio bound, checked for every minimal hitting set `S` in the
/// stronger form with the coordinate taken from `S`.
pub fn verify_weighted_knill(family: &SetFamily, w: &WeightVector) -> Result<VerificationReport> {
    check_knill_preconditions(family, w)?;
    Ok(weighted_knill_with(family, w, &MeasureTable::new(w)))
}

pub(crate) fn weighted_knill_with(
    family: &SetFamily,
    w: &WeightVector,
    table: &MeasureTable,
) -> VerificationReport {
    let mut report = VerificationReport::new(TheoremId::KnillWeighted);
    let measure = table.family(family).expect("dimensions checked");
    report.quantity("measure", measure);
    report.quantity("inverse_q", w.q_product());
    if family.is_only_empty_set() {
        report.hypothesis = HypothesisStatus::Degenerate;
        report
            .reasons
            .push("F = {∅}: mu(F) - 1/Q = 0 and log(Q mu(F)) = 0".to_string());
        return report;
    }
    let terms = knill_terms_with(family, w, table);
    report.quantities.push(("lhs".to_string(), Quantity::approx(&terms.lhs)));
    let tolerance = HighFloat::try_from(KNILL_TOLERANCE)
        .expect("finite")
        .with_precision(KNILL_PRECISION_BITS)
        .value();
    let margins: Vec<HighFloat> = terms.rhs.iter().map(|r| r - &terms.lhs).collect();
    for (i, (rhs, margin)) in terms.rhs.iter().zip(&margins).enumerate() {
        report.rows.push(CoordinateRow {
            coord: i + 1,
            lhs: Quantity::approx(&terms.lhs),
            rhs: Quantity::approx(rhs),
            margin: Quantity::approx(margin),
            satisfied: *margin > -tolerance.clone(),
        });
    }
    let mut witnesses = Vec::new();
    for hs in enumerate_minimal_hitting_sets(family) {
        let best = hs
            .set()
            .elements()
            .max_by(|&a, &b| margins[a - 1].cmp(&margins[b - 1]).then(b.cmp(&a)));
        let status = match best {
            None => ConclusionStatus::Fails,
            Some(c) if margins[c - 1] >= tolerance => ConclusionStatus::Holds,
            Some(c) if margins[c - 1] > -tolerance.clone() => ConclusionStatus::Indeterminate,
            Some(_) => ConclusionStatus::Fails,
        };
        if status != ConclusionStatus::Fails {
            witnesses.extend(best);
        }
        report.hitting_sets.push(HittingSetOutcome {
            set: hs.set().elements().collect(),
            best_coord: best,
            best_margin: best.map(|c| Quantity::approx(&margins[c - 1])),
            status,
        });
    }
    witnesses.sort_unstable();
    witnesses.dedup();
    report.witnesses = witnesses
        .into_iter()
        .map(|c| Witness {
            coord: c,
            margin: Quantity::approx(&margins[c - 1]),
        })
        .collect();
    let statuses: Vec<ConclusionStatus> = report.hitting_sets.iter().map(|h| h.status).collect();
    report.conclusion = if statuses.contains(&ConclusionStatus::Fails) {
        report.witnesses.clear();
        ConclusionStatus::Fails
    } else if statuses.contains(&ConclusionStatus::Indeterminate) {
        ConclusionStatus::Indeterminate
    } else {
        ConclusionStatus::Holds
    };
    report
}

/// Minimal hitting set size bound with its certificate: for every minimal
/// `S`, the private representatives exist, the unions `A_T` are distinct
/// members with `A_T ∩ S = T`, and `2^|S| ≤ |F|`. Needs `∅ ∈ F`; without it
/// the unions only account for `2^|S| − 1` members.
pub fn verify_hitting_size(family: &SetFamily) -> Result<VerificationReport> {
    if !family.is_union_closed() {
        return Err(Error::NotUnionClosed);
    }
    if !family.contains_empty_set() {
        return Err(Error::MissingEmptySet);
    }
    let mut report = VerificationReport::new(TheoremId::HittingSize);
    report.quantity("size", int(family.len() as i64));
    for hs in enumerate_minimal_hitting_sets(family) {
        let certified = build_certificate(family, hs.set())
            .map(|cert| cert.check(family).ok())
            .unwrap_or(false);
        let subsets = 1u64 << hs.set().len();
        let holds = certified && subsets <= family.len() as u64;
        report.hitting_sets.push(HittingSetOutcome {
            set: hs.set().elements().collect(),
            best_coord: None,
            best_margin: Some(int(family.len() as i64 - subsets as i64).into()),
            status: if holds {
                ConclusionStatus::Holds
            } else {
                ConclusionStatus::Fails
            },
        });
    }
    report.conclusion = if report
        .hitting_sets
        .iter()
        .all(|h| h.status == ConclusionStatus::Holds)
    {
        ConclusionStatus::Holds
    } else {
        ConclusionStatus::Fails
    };
    Ok(report)
}

/// Weighted size bound `μ(F) ≥ prod_{i∉S} q_i` for every minimal `S`.
pub fn verify_hitting_size_weighted(
    family: &SetFamily,
    w: &WeightVector,
) -> Result<VerificationReport> {
    check_dims(family, w)?;
    w.require_at_least_half()?;
    if !family.contains_empty_set() {
        return Err(Error::MissingEmptySet);
    }
    if !family.is_union_closed() {
        return Err(Error::NotUnionClosed);
    }
    Ok(hitting_size_weighted_with(family, w, &MeasureTable::new(w)))
}

pub(crate) fn hitting_size_weighted_with(
    family: &SetFamily,
    w: &WeightVector,
    table: &MeasureTable,
) -> VerificationReport {
    let mut report = VerificationReport::new(TheoremId::HittingSizeWeighted);
    report.quantity("measure", table.family(family).expect("dimensions checked"));
    for hs in enumerate_minimal_hitting_sets(family) {
        let margin = weighted_size_margin_unchecked(family, hs.set(), w, table);
        report.hitting_sets.push(HittingSetOutcome {
            set: hs.set().elements().collect(),
            best_coord: None,
            best_margin: Some((&margin.measure - &margin.outside_product).into()),
            status: if margin.holds {
                ConclusionStatus::Holds
            } else {
                ConclusionStatus::Fails
            },
        });
    }
    report.conclusion = if report
        .hitting_sets
        .iter()
        .all(|h| h.status == ConclusionStatus::Holds)
    {
        ConclusionStatus::Holds
    } else {
        ConclusionStatus::Fails
    };
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(dim: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_points(dim, sets.iter().map(|s| CubePoint::from_elements(s))).unwrap()
    }

    fn w(text: &str) -> WeightVector {
        WeightVector::parse(text).unwrap()
    }

    #[test]
    fn frankl_examples() {
        let r = verify_frankl_ratio(&SetFamily::full(2).unwrap()).unwrap();
        assert_eq!((r.ratio, r.witnesses), (ratio(1, 2), vec![1, 2]));
        let r = verify_frankl_ratio(&fam(2, &[&[], &[1], &[1, 2]])).unwrap();
        assert_eq!((r.ratio, r.witnesses), (ratio(2, 3), vec![1]));
        let r = verify_frankl_ratio(&fam(1, &[&[]])).unwrap();
        assert_eq!(r.ratio, int(0));
        assert!(r.degenerate && r.witnesses.is_empty());
        assert!(matches!(
            verify_frankl_ratio(&SetFamily::empty(2).unwrap()),
            Err(Error::EmptyFamily)
        ));
    }

    #[test]
    fn karpas_uniform_examples() {
        let r = verify_karpas_uniform(&SetFamily::full(2).unwrap()).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::Met);
        assert_eq!(r.conclusion, ConclusionStatus::Holds);
        assert_eq!(r.witness_coords(), vec![1, 2]);

        let r = verify_karpas_uniform(&fam(1, &[&[]])).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::Met);
        assert_eq!(r.conclusion, ConclusionStatus::Fails);
        assert!(r.degenerate.is_some());
        assert!(!r.is_asserted_failure());

        let r = verify_karpas_uniform(&fam(3, &[&[], &[1]])).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::NotMet);
        assert_eq!(r.conclusion, ConclusionStatus::Indeterminate);

        assert!(matches!(
            verify_karpas_uniform(&fam(2, &[&[1], &[2]])),
            Err(Error::NotUnionClosed)
        ));
    }

    #[test]
    fn weighted_karpas_printed_form_counterexample() {
        let r = verify_weighted_karpas(&SetFamily::full(1).unwrap(), &w("1/4")).unwrap();
        assert_eq!(r.printed.hypothesis, HypothesisStatus::Met);
        assert_eq!(r.printed.conclusion, ConclusionStatus::Fails);
        assert_eq!(r.printed.rows[0].lhs, Quantity::Exact(ratio(1, 4)));
        assert_eq!(r.printed.rows[0].rhs, Quantity::Exact(ratio(3, 4)));
        assert!(!r.printed.is_asserted_failure());
        assert_eq!(r.derived.conclusion, ConclusionStatus::Holds);
        assert_eq!(r.derived.witnesses[0].margin, Quantity::Exact(int(0)));
    }

    #[test]
    fn weighted_karpas_uniform_example() {
        let r = verify_weighted_karpas(&fam(2, &[&[], &[1], &[1, 2]]), &w("1/2,1/2")).unwrap();
        assert_eq!(r.derived.quantity_named("measure"), Some(&Quantity::Exact(ratio(3, 4))));
        assert_eq!(r.derived.witness_coords(), vec![1]);
        assert_eq!(r.printed.witness_coords(), vec![1]);
        assert_eq!(r.derived.rows[0].lhs, Quantity::Exact(ratio(1, 2)));
        assert_eq!(r.derived.rows[0].rhs, Quantity::Exact(ratio(3, 8)));
    }

    #[test]
    fn weighted_karpas_hypothesis_unmet() {
        let r = verify_weighted_karpas(&fam(2, &[&[], &[1, 2]]), &w("1/2,1/3")).unwrap();
        assert_eq!(r.derived.hypothesis, HypothesisStatus::NotMet);
        assert_eq!(r.derived.conclusion, ConclusionStatus::Indeterminate);
        assert!(verify_weighted_karpas(&fam(2, &[&[]]), &w("1,1/2")).is_err());
    }

    #[test]
    fn simply_rooted_examples() {
        let r = verify_simply_rooted(&fam(2, &[&[2]]), &w("1/2,1/2")).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::Met);
        assert_eq!(r.witness_coords(), vec![1]);
        assert_eq!(r.witnesses[0].margin, Quantity::Exact(ratio(1, 8)));

        let r = verify_simply_rooted(&SetFamily::empty(3).unwrap(), &w("1/3,1/2,2/3")).unwrap();
        assert_eq!(r.witness_coords(), vec![1, 2, 3]);

        let r = verify_simply_rooted(&fam(1, &[&[1]]), &w("1/4")).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::Met);
        assert_eq!(r.conclusion, ConclusionStatus::Fails);
        assert_eq!(r.rows[0].lhs, Quantity::Exact(ratio(1, 4)));
        assert_eq!(r.rows[0].rhs, Quantity::Exact(ratio(1, 16)));
        assert!(r.degenerate.is_some());
        assert!(!r.is_asserted_failure());

        assert!(matches!(
            verify_simply_rooted(&fam(2, &[&[], &[1, 2]]), &w("1/2,1/2")),
            Err(Error::NotSimplyRooted)
        ));
    }

    #[test]
    fn diagnostics_examples() {
        let d = karpas_diagnostics(&SetFamily::empty(2).unwrap(), &w("1/3,1/2")).unwrap();
        assert!(d.influence_total.is_zero());
        assert!(d.upper_bound.is_zero() && d.upper_holds);

        let d = karpas_diagnostics(&fam(1, &[&[1]]), &w("1/4")).unwrap();
        assert_eq!(d.influence_plus, ratio(3, 4));
        assert_eq!(d.upper_bound, ratio(3, 4));
        assert!(d.upper_holds);
        assert_eq!(d.delta, int(0));

        let d = karpas_diagnostics(&fam(2, &[&[2]]), &w("1/2,1/2")).unwrap();
        assert_eq!(d.upper_bound, ratio(1, 2));
        assert_eq!(d.influence_plus, ratio(1, 2));
        assert!(d.upper_holds);
        assert!(d.low_degree_holds);
    }

    #[test]
    fn knill_uniform_examples() {
        let r = verify_knill_uniform(&fam(2, &[&[], &[1], &[1, 2]])).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::Holds);
        assert_eq!(r.witness_coords(), vec![1]);
        for d in 1..=4 {
            let r = verify_knill_uniform(&SetFamily::full(d).unwrap()).unwrap();
            assert_eq!(r.witness_coords(), (1..=d).collect::<Vec<_>>());
        }
        let r = verify_knill_uniform(&fam(3, &[&[], &[1, 2, 3]])).unwrap();
        assert_eq!(r.witness_coords(), vec![1, 2, 3]);
        assert!(matches!(verify_knill_uniform(&fam(2, &[&[]])), Err(Error::FamilyTooSmall(2))));
        assert!(matches!(verify_knill_uniform(&fam(2, &[&[1]])), Err(Error::MissingEmptySet)));
    }

    #[test]
    fn weighted_knill_worked_example() {
        let f = fam(2, &[&[], &[1], &[1, 2]]);
        let r = verify_weighted_knill(&f, &w("2/3,3/4")).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::Holds);
        assert_eq!(r.witness_coords(), vec![1]);
        let lhs = r.rows[0].lhs.to_f64();
        assert!((lhs - (2.0 / 3.0) / 9f64.ln()).abs() < 1e-15);
        assert!((r.rows[0].rhs.to_f64() - (2.0 / 3.0) / 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn weighted_knill_degenerate_and_errors() {
        let r = verify_weighted_knill(&fam(2, &[&[]]), &w("1/2,2/3")).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::Degenerate);
        assert_eq!(r.conclusion, ConclusionStatus::Indeterminate);
        let f = fam(2, &[&[], &[1]]);
        assert!(matches!(
            verify_weighted_knill(&f, &w("1/3,2/3")),
            Err(Error::WeightBelowHalf { .. })
        ));
        assert!(matches!(
            verify_weighted_knill(&f, &w("1,2/3")),
            Err(Error::BoundaryWeight { .. })
        ));
        assert!(matches!(
            verify_weighted_knill(&fam(2, &[&[1]]), &w("1/2,1/2")),
            Err(Error::MissingEmptySet)
        ));
    }

    #[test]
    fn weighted_knill_tight_case_is_indeterminate() {
        // d = 1, uniform: both sides equal (1/2)/ln 2.
        let r = verify_weighted_knill(&SetFamily::full(1).unwrap(), &w("1/2")).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::Indeterminate);
        assert_eq!(r.witness_coords(), vec![1]);
        assert!(!r.is_asserted_failure());
    }

    #[test]
    fn hitting_size_reports() {
        let f = fam(3, &[&[], &[1], &[2], &[1, 2], &[1, 2, 3]]);
        let r = verify_hitting_size(&f).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::Holds);
        let r = verify_hitting_size_weighted(&f, &w("3/5,1/2,9/10")).unwrap();
        assert_eq!(r.conclusion, ConclusionStatus::Holds);
        assert!(matches!(verify_hitting_size(&fam(1, &[&[1]])), Err(Error::MissingEmptySet)));
    }

    #[test]
    fn witness_dump_round_trip() {
        let f = fam(1, &[&[1]]);
        let weights = w("1/4");
        let r = verify_simply_rooted(&f, &weights).unwrap();
        let dump = WitnessDump::new(&f, Some(&weights), &r);
        let text = dump.render();
        assert!(text.starts_with("theorem=simply-rooted\nweights=1/4\n"));
        assert!(text.contains("coord=1 lhs=1/4 rhs=1/16 margin=-3/16 satisfied=false"));
        assert_eq!(WitnessDump::parse_family(&text).unwrap(), f);
        assert!(dump.file_name().starts_with("witness-simply-rooted-d1-"));
    }
}
