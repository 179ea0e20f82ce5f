//! Report types shared by the theorem verifiers, and the witness dump
//! format written for every violation.

use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Serialize, Serializer};

use crate::cube::{CubePoint, SetFamily};
use crate::error::{Error, Result};
use crate::rational::{to_f64, to_fraction, HighFloat, Rational};
use crate::weights::WeightVector;

/// Which statement a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Uniform Karpas: `|F| ≥ 2^{d−1}` gives `|F_i| ≥ |F|/2`.
    KarpasUniform,
    /// Weighted Karpas in the form obtained by complementing the simply
    /// rooted statement: `μ(F_i) ≥ p_i μ(F)`.
    KarpasWeightedDerived,
    /// Weighted Karpas exactly as printed: `μ(F_i) ≥ q_i μ(F)`.
    KarpasWeightedPrinted,
    /// Simply rooted: `μ(F) ≤ p` gives `μ(F_i) ≤ p_i μ(F)`.
    SimplyRooted,
    /// Minimal hitting sets satisfy `2^|S| ≤ |F|`, via the certificate.
    HittingSize,
    /// Minimal hitting sets satisfy `μ(F) ≥ prod_{i∉S} q_i`.
    HittingSizeWeighted,
    /// Uniform ratio bound `|F_i| ≥ (|F|−1)/log2 |F|`.
    KnillUniform,
    /// Weighted ratio bound `(μ(F) − 1/Q)/log(Q μ(F)) ≤ μ(F_i)/log Q_i`.
    KnillWeighted,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::KarpasUniform,
        TheoremId::KarpasWeightedDerived,
        TheoremId::KarpasWeightedPrinted,
        TheoremId::SimplyRooted,
        TheoremId::HittingSize,
        TheoremId::HittingSizeWeighted,
        TheoremId::KnillUniform,
        TheoremId::KnillWeighted,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::KarpasUniform => "karpas-uniform",
            TheoremId::KarpasWeightedDerived => "karpas-weighted-derived",
            TheoremId::KarpasWeightedPrinted => "karpas-weighted-printed",
            TheoremId::SimplyRooted => "simply-rooted",
            TheoremId::HittingSize => "hitting-size",
            TheoremId::HittingSizeWeighted => "hitting-size-weighted",
            TheoremId::KnillUniform => "knill-uniform",
            TheoremId::KnillWeighted => "knill-weighted",
        }
    }

    /// Whether a failure of this statement counts against the run. The
    /// printed weighted Karpas form is reported but never asserted.
    pub fn is_asserted(self) -> bool {
        self != TheoremId::KarpasWeightedPrinted
    }

    pub fn needs_weights(self) -> bool {
        !matches!(
            self,
            TheoremId::KarpasUniform | TheoremId::HittingSize | TheoremId::KnillUniform
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisStatus {
    Met,
    NotMet,
    /// The hypothesis cannot be evaluated meaningfully (e.g. a `0/0`).
    Degenerate,
}

impl HypothesisStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            HypothesisStatus::Met => "met",
            HypothesisStatus::NotMet => "not-met",
            HypothesisStatus::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConclusionStatus {
    Holds,
    Fails,
    Indeterminate,
}

impl ConclusionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ConclusionStatus::Holds => "holds",
            ConclusionStatus::Fails => "fails",
            ConclusionStatus::Indeterminate => "indeterminate",
        }
    }
}

/// A reported value: exact, or a high-precision float for the one
/// logarithmic bound.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Exact(Rational),
    Approx { value: f64, digits: String },
}

impl Quantity {
    pub fn approx(value: &HighFloat) -> Self {
        let decimal = value.clone().with_base_and_precision::<10>(30).value();
        Quantity::Approx {
            value: value.to_f64().value(),
            digits: format!("{decimal:e}"),
        }
    }

    /// `a/b` for exact values, scientific digits otherwise.
    pub fn machine(&self) -> String {
        match self {
            Quantity::Exact(r) => to_fraction(r),
            Quantity::Approx { digits, .. } => digits.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Quantity::Exact(r) => to_f64(r),
            Quantity::Approx { value, .. } => *value,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Quantity::Exact(r) => Some(r),
            Quantity::Approx { .. } => None,
        }
    }
}

impl From<Rational> for Quantity {
    fn from(value: Rational) -> Self {
        Quantity::Exact(value)
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.machine())
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(r) => f.write_str(&crate::rational::to_display(r)),
            Quantity::Approx { digits, .. } => f.write_str(digits),
        }
    }
}

/// One coordinate's side of a per-coordinate inequality; `margin ≥ 0`
/// exactly when `satisfied`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoordinateRow {
    pub coord: usize,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub margin: Quantity,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub coord: usize,
    pub margin: Quantity,
}

/// Outcome for one minimal hitting set, for the bounds that quantify over
/// them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HittingSetOutcome {
    pub set: Vec<usize>,
    pub best_coord: Option<usize>,
    pub best_margin: Option<Quantity>,
    pub status: ConclusionStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub hypothesis: HypothesisStatus,
    pub reasons: Vec<String>,
    pub conclusion: ConclusionStatus,
    /// Coordinates satisfying the claimed inequality, smallest first.
    pub witnesses: Vec<Witness>,
    pub rows: Vec<CoordinateRow>,
    pub quantities: Vec<(String, Quantity)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hitting_sets: Vec<HittingSetOutcome>,
    /// Set for documented degenerate instances, whose failures are
    /// reported but not counted.
    pub degenerate: Option<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub(crate) fn new(theorem: TheoremId) -> Self {
        Self {
            theorem,
            hypothesis: HypothesisStatus::Met,
            reasons: Vec::new(),
            conclusion: ConclusionStatus::Indeterminate,
            witnesses: Vec::new(),
            rows: Vec::new(),
            quantities: Vec::new(),
            hitting_sets: Vec::new(),
            degenerate: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn quantity(&mut self, name: &str, value: impl Into<Quantity>) {
        self.quantities.push((name.to_string(), value.into()));
    }

    /// Fills witnesses from the rows and settles the conclusion: holds iff
    /// a witness exists, indeterminate when the hypothesis is not met.
    pub(crate) fn conclude_from_rows(&mut self) {
        self.witnesses = self
            .rows
            .iter()
            .filter(|r| r.satisfied)
            .map(|r| Witness {
                coord: r.coord,
                margin: r.margin.clone(),
            })
            .collect();
        self.conclusion = match self.hypothesis {
            HypothesisStatus::Met if self.witnesses.is_empty() => ConclusionStatus::Fails,
            HypothesisStatus::Met => ConclusionStatus::Holds,
            _ => ConclusionStatus::Indeterminate,
        };
    }

    pub fn witness_coords(&self) -> Vec<usize> {
        self.witnesses.iter().map(|w| w.coord).collect()
    }

    pub fn quantity_named(&self, name: &str) -> Option<&Quantity> {
        self.quantities
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, q)| q)
    }

    /// A failure of an asserted statement on a non-degenerate instance.
    pub fn is_asserted_failure(&self) -> bool {
        self.theorem.is_asserted()
            && self.conclusion == ConclusionStatus::Fails
            && self.degenerate.is_none()
    }
}

/// A self-contained record of one violation: theorem, weights, the family
/// in file format, and every per-coordinate value.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessDump {
    pub theorem: TheoremId,
    pub family: SetFamily,
    pub weights: Option<WeightVector>,
    pub report: VerificationReport,
}

impl WitnessDump {
    pub fn new(family: &SetFamily, weights: Option<&WeightVector>, report: &VerificationReport) -> Self {
        Self {
            theorem: report.theorem,
            family: family.clone(),
            weights: weights.cloned(),
            report: report.clone(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("theorem={}\n", self.theorem));
        out.push_str(&format!(
            "weights={}\n",
            self.weights
                .as_ref()
                .map_or_else(|| "none".to_string(), WeightVector::to_line)
        ));
        out.push_str(&format!("hypothesis={}\n", self.report.hypothesis.as_str()));
        out.push_str(&format!("conclusion={}\n", self.report.conclusion.as_str()));
        out.push_str("[family]\n");
        out.push_str(&self.family.to_file_string());
        out.push_str("[values]\n");
        for (name, q) in &self.report.quantities {
            out.push_str(&format!("{name}={}\n", q.machine()));
        }
        for row in &self.report.rows {
            out.push_str(&format!(
                "coord={} lhs={} rhs={} margin={} satisfied={}\n",
                row.coord,
                row.lhs.machine(),
                row.rhs.machine(),
                row.margin.machine(),
                row.satisfied
            ));
        }
        for hs in &self.report.hitting_sets {
            out.push_str(&format!(
                "hitting_set={} best_coord={} best_margin={} status={}\n",
                CubePoint::from_elements(&hs.set),
                hs.best_coord.map_or_else(|| "none".into(), |c| c.to_string()),
                hs.best_margin
                    .as_ref()
                    .map_or_else(|| "none".into(), Quantity::machine),
                hs.status.as_str()
            ));
        }
        out
    }

    /// Recovers the family from a rendered dump.
    pub fn parse_family(text: &str) -> Result<SetFamily> {
        let body: String = text
            .lines()
            .skip_while(|l| l.trim() != "[family]")
            .skip(1)
            .take_while(|l| l.trim() != "[values]")
            .map(|l| format!("{l}\n"))
            .collect();
        SetFamily::parse(&body)
    }

    /// Deterministic file name derived from the dump contents.
    pub fn file_name(&self) -> String {
        let text = self.render();
        let hash = text
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        format!("witness-{}-d{}-{hash:016x}.txt", self.theorem, self.family.dim())
    }

    pub fn write_into(&self, dir: &Path) -> io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(self.file_name());
        std::fs::write(&path, self.render())?;
        Ok(path)
    }
}
