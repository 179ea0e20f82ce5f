//! Hitting sets of a family, inclusion-minimal enumeration, the private
//! representative certificate and the size bounds it implies.

use num_traits::Zero;
use serde::Serialize;

use crate::cube::{CubePoint, MeasureTable, SetFamily};
use crate::error::{Error, Result};
use crate::rational::{serde_fraction, to_f64, Rational};
use crate::weights::WeightVector;

/// `S` meets every non-empty member of `family`.
pub fn is_hitting(family: &SetFamily, set: CubePoint) -> bool {
    family
        .members()
        .all(|a| a.is_empty() || !a.intersection(set).is_empty())
}

/// Hitting, and no single element can be dropped.
pub fn is_minimal_hitting(family: &SetFamily, set: CubePoint) -> bool {
    is_hitting(family, set)
        && set
            .elements()
            .all(|s| !is_hitting(family, CubePoint::from_mask(set.mask() & !(1 << (s - 1)))))
}

/// A subset of `[d]` known to hit its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HittingSet {
    set: CubePoint,
}

impl HittingSet {
    pub fn new(family: &SetFamily, set: CubePoint) -> Result<Self> {
        set.check(family.dim())?;
        if !is_hitting(family, set) {
            return Err(Error::NotHitting(set.to_string()));
        }
        Ok(Self { set })
    }

    pub fn set(&self) -> CubePoint {
        self.set
    }
}

impl std::fmt::Display for HittingSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.set.fmt(f)
    }
}

/// For every `T ⊆ [d]`: does some non-empty member lie inside `T`?
/// `S` hits the family iff the answer for `[d] \ S` is no.
fn blocked_table(family: &SetFamily) -> Vec<bool> {
    let n = 1usize << family.dim();
    let mut blocked = vec![false; n];
    for a in family.members().filter(|a| !a.is_empty()) {
        blocked[a.mask() as usize] = true;
    }
    for i in 0..family.dim() {
        let bit = 1 << i;
        for t in 0..n {
            if t & bit != 0 && blocked[t ^ bit] {
                blocked[t] = true;
            }
        }
    }
    blocked
}

/// All inclusion-minimal hitting sets, ascending by mask, found by scanning
/// every subset of `[d]`.
pub fn enumerate_minimal_hitting_sets(family: &SetFamily) -> Vec<HittingSet> {
    let full = CubePoint::full(family.dim()).mask() as usize;
    let blocked = blocked_table(family);
    (0..=full)
        .filter(|&s| {
            let outside = full & !s;
            !blocked[outside]
                && (0..family.dim())
                    .filter(|i| s >> i & 1 == 1)
                    .all(|i| blocked[outside | 1 << i])
        })
        .map(|s| HittingSet {
            set: CubePoint::from_mask(s as u32),
        })
        .collect()
}

/// Private representatives `A_s` (`A_s ∩ S = {s}`) of a minimal hitting set
/// and the unions `A_T = ∪_{s∈T} A_s` built from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HittingCertificate {
    set: CubePoint,
    representatives: Vec<(usize, CubePoint)>,
}

/// Outcome of checking a certificate against its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    /// `A_s ∩ S = {s}` for every `s`.
    pub private: bool,
    /// `A_T ∩ S = T` for every non-empty `T ⊆ S`.
    pub traces: bool,
    /// The `A_T` are pairwise distinct.
    pub distinct: bool,
    /// Every `A_T` is a member of the family.
    pub members: bool,
}

impl CertificateCheck {
    pub fn ok(&self) -> bool {
        self.private && self.traces && self.distinct && self.members
    }
}

/// Non-empty subsets of `set`, ascending by mask.
fn nonempty_subsets(set: CubePoint) -> impl Iterator<Item = CubePoint> {
    let s = set.mask();
    let mut subsets: Vec<u32> = Vec::with_capacity(1 << set.len());
    let mut t = s;
    while t != 0 {
        subsets.push(t);
        t = (t - 1) & s;
    }
    subsets.into_iter().rev().map(CubePoint::from_mask)
}

impl HittingCertificate {
    pub fn set(&self) -> CubePoint {
        self.set
    }

    /// `(s, A_s)` pairs, ascending in `s`.
    pub fn representatives(&self) -> &[(usize, CubePoint)] {
        &self.representatives
    }

    /// `A_T` for a non-empty `T ⊆ S`.
    pub fn union_for(&self, subset: CubePoint) -> Result<CubePoint> {
        if subset.is_empty() || !subset.is_subset_of(self.set) {
            return Err(Error::InvalidArgument(format!(
                "{subset} is not a non-empty subset of {}",
                self.set
            )));
        }
        Ok(self
            .representatives
            .iter()
            .filter(|(s, _)| subset.contains(*s))
            .fold(CubePoint::EMPTY, |acc, (_, a)| acc.union(*a)))
    }

    /// `(T, A_T)` for every non-empty `T ⊆ S`, ascending in `T`.
    pub fn unions(&self) -> Vec<(CubePoint, CubePoint)> {
        nonempty_subsets(self.set)
            .map(|t| (t, self.union_for(t).expect("t is a non-empty subset")))
            .collect()
    }

    pub fn check(&self, family: &SetFamily) -> CertificateCheck {
        let private = self
            .representatives
            .iter()
            .all(|(s, a)| a.intersection(self.set) == CubePoint::from_elements(&[*s]));
        let unions = self.unions();
        let traces = unions.iter().all(|(t, a)| a.intersection(self.set) == *t);
        let mut images: Vec<u32> = unions.iter().map(|(_, a)| a.mask()).collect();
        images.sort_unstable();
        images.dedup();
        let distinct = images.len() == unions.len();
        let members = unions.iter().all(|(_, a)| family.contains(*a));
        CertificateCheck {
            private,
            traces,
            distinct,
            members,
        }
    }
}

/// Picks, for each `s ∈ S`, the smallest-mask member `A_s` with
/// `A_s ∩ S = {s}`. Such members exist exactly when `S` is minimal.
pub fn build_certificate(family: &SetFamily, set: CubePoint) -> Result<HittingCertificate> {
    set.check(family.dim())?;
    if !is_hitting(family, set) {
        return Err(Error::NotHitting(set.to_string()));
    }
    let representatives = set
        .elements()
        .map(|s| {
            let target = CubePoint::from_elements(&[s]);
            family
                .members()
                .find(|a| a.intersection(set) == target)
                .map(|a| (s, a))
                .ok_or(Error::NotMinimal {
                    set: set.to_string(),
                    element: s,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HittingCertificate {
        set,
        representatives,
    })
}

fn require_minimal(family: &SetFamily, set: CubePoint) -> Result<()> {
    set.check(family.dim())?;
    if !is_hitting(family, set) {
        return Err(Error::NotHitting(set.to_string()));
    }
    if let Some(s) = set
        .elements()
        .find(|&s| is_hitting(family, CubePoint::from_mask(set.mask() & !(1 << (s - 1)))))
    {
        return Err(Error::NotMinimal {
            set: set.to_string(),
            element: s,
        });
    }
    Ok(())
}

/// `2^|S| ≤ |F|`, the exponentiated form of `|S| ≤ log2 |F|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnillSizeMargin {
    pub subsets: u64,
    pub family_size: usize,
    pub holds: bool,
}

pub fn knill_size_margin(family: &SetFamily, set: CubePoint) -> Result<KnillSizeMargin> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    require_minimal(family, set)?;
    let subsets = 1u64 << set.len();
    Ok(KnillSizeMargin {
        subsets,
        family_size: family.len(),
        holds: subsets <= family.len() as u64,
    })
}

/// `μ(F) ≥ prod_{i∉S} q_i`, which is `sum_{i∈S} log Q_i ≤ log(Q μ(F))` after
/// multiplying through by `Q`. The log form is carried as floats for display.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedSizeMargin {
    #[serde(with = "serde_fraction")]
    pub measure: Rational,
    #[serde(with = "serde_fraction")]
    pub outside_product: Rational,
    pub holds: bool,
    /// `sum_{i∈S} ln Q_i`.
    pub log_lhs: f64,
    /// `ln(Q μ(F))`.
    pub log_rhs: f64,
}

/// Checks the weighted size bound. Requires `p_i ≥ 1/2`, `∅ ∈ F`, `F`
/// union-closed and `S` a minimal hitting set; each violation is its own
/// error.
pub fn weighted_size_margin(
    family: &SetFamily,
    set: CubePoint,
    w: &WeightVector,
) -> Result<WeightedSizeMargin> {
    if w.dim() != family.dim() {
        return Err(Error::DimensionMismatch {
            expected: family.dim(),
            found: w.dim(),
        });
    }
    w.require_at_least_half()?;
    if !family.contains_empty_set() {
        return Err(Error::MissingEmptySet);
    }
    if !family.is_union_closed() {
        return Err(Error::NotUnionClosed);
    }
    require_minimal(family, set)?;
    Ok(weighted_size_margin_unchecked(
        family,
        set,
        w,
        &MeasureTable::new(w),
    ))
}

pub(crate) fn weighted_size_margin_unchecked(
    family: &SetFamily,
    set: CubePoint,
    w: &WeightVector,
    table: &MeasureTable,
) -> WeightedSizeMargin {
    let measure = table.family(family).expect("dimensions checked");
    let outside = CubePoint::full(family.dim()).mask() & !set.mask();
    let outside_product = w.q_product_over(outside);
    let ln_q: Vec<f64> = w.qs().iter().map(|q| -to_f64(q).ln()).collect();
    let log_lhs = set.elements().map(|e| ln_q[e - 1]).sum();
    let log_rhs = ln_q.iter().sum::<f64>() + to_f64(&measure).ln();
    WeightedSizeMargin {
        holds: measure >= outside_product,
        measure,
        outside_product,
        log_lhs,
        log_rhs,
    }
}

/// `sum_{s∈S} |F_s| ≥ |F| − 1` when `S` hits `F` and `∅ ∈ F`: the covering
/// step behind the uniform ratio bound. Returns both sides.
pub fn cover_counts(family: &SetFamily, set: CubePoint) -> (usize, usize) {
    let covered = set
        .elements()
        .map(|s| family.count_containing(s).unwrap_or(0))
        .sum();
    (covered, family.len().saturating_sub(1))
}

/// `μ(F) − μ({∅}) ≤ sum_{s∈S} μ(F_s)`, the weighted covering step.
pub fn weighted_cover(family: &SetFamily, set: CubePoint, table: &MeasureTable) -> (Rational, Rational) {
    let covered = set.elements().fold(Rational::zero(), |acc, s| {
        acc + table.subfamily(family, s).expect("dimensions checked")
    });
    let nonempty = table.family(family).expect("dimensions checked")
        - if family.contains_empty_set() {
            table.point(CubePoint::EMPTY).clone()
        } else {
            Rational::zero()
        };
    (covered, nonempty)
}
