//! Biased Fourier analysis on the weighted cube.
//!
//! The orthonormal character for coordinate `i` is `α_i (x_i − p_i)` with
//! `α_i = 1/sqrt(p_i q_i)`. Because `α_i` is irrational for most rational
//! biases, a [`Spectrum`] stores the rational kernel
//! `m_S = E[f · prod_{i∈S} (x_i − p_i)]`, so that `f̂(S) = m_S · prod_{i∈S} α_i`
//! and `f̂(S)² = m_S² · prod_{i∈S} α_i²` stays exact.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cube::{check_dim, coord_index, CubePoint, MeasureTable, SetFamily};
use crate::error::{Error, Result};
use crate::rational::{int, serde_fraction, serde_fraction_vec, to_f64, Rational};
use crate::weights::WeightVector;

/// A `±1`-valued function on the cube, indexed by point mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    dim: usize,
    values: Vec<i8>,
}

impl BooleanFunction {
    pub fn new(dim: usize, values: Vec<i8>) -> Result<Self> {
        check_dim(dim)?;
        if values.len() != 1 << dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} values for dimension {dim}, found {}",
                1usize << dim,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidArgument(format!(
                "value at point {pos} is {}, expected ±1",
                values[pos]
            )));
        }
        Ok(Self { dim, values })
    }

    pub fn constant(dim: usize, value: i8) -> Result<Self> {
        Self::new(dim, vec![value; 1 << dim])
    }

    /// `+1` on the members of `family`, `−1` elsewhere.
    pub fn indicator(family: &SetFamily) -> Self {
        let values = (0..1u32 << family.dim())
            .map(|m| if family.contains(CubePoint::from_mask(m)) { 1 } else { -1 })
            .collect();
        Self {
            dim: family.dim(),
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value(&self, x: CubePoint) -> i8 {
        self.values[x.mask() as usize]
    }

    /// `f^{-1}(1)` as a family.
    pub fn positive_set(&self) -> SetFamily {
        SetFamily::from_points(
            self.dim,
            (0..1u32 << self.dim)
                .filter(|&m| self.values[m as usize] == 1)
                .map(CubePoint::from_mask),
        )
        .expect("dimension already validated")
    }

    fn check_weights(&self, w: &WeightVector) -> Result<()> {
        if w.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: w.dim(),
            });
        }
        Ok(())
    }
}

/// Rational Fourier kernels `m_S` for every `S ⊆ [d]`, indexed by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    dim: usize,
    kernels: Vec<Rational>,
    alpha_sq: Vec<Rational>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kernels(&self) -> &[Rational] {
        &self.kernels
    }

    pub fn kernel(&self, set: CubePoint) -> &Rational {
        &self.kernels[set.mask() as usize]
    }

    /// `f̂(S)²`, exact.
    pub fn coeff_sq(&self, set: CubePoint) -> Rational {
        let m = self.kernel(set);
        set.elements()
            .fold(m * m, |acc, e| acc * &self.alpha_sq[e - 1])
    }

    /// Signed `f̂(S)` as a binary float, display only.
    pub fn coeff_float(&self, set: CubePoint) -> f64 {
        let magnitude = to_f64(&self.coeff_sq(set)).sqrt();
        if self.kernel(set).is_negative() {
            -magnitude
        } else {
            magnitude
        }
    }

    /// `W^k = sum_{|S| = k} f̂(S)²`.
    pub fn level_weight(&self, level: usize) -> Result<Rational> {
        if level > self.dim {
            return Err(Error::LevelOutOfRange {
                level,
                dim: self.dim,
            });
        }
        Ok((0..1u32 << self.dim)
            .map(CubePoint::from_mask)
            .filter(|s| s.len() == level)
            .fold(Rational::zero(), |acc, s| acc + self.coeff_sq(s)))
    }

    /// `(W^0, ..., W^d)`.
    pub fn level_weights(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim + 1];
        for m in 0..1u32 << self.dim {
            let s = CubePoint::from_mask(m);
            out[s.len()] += self.coeff_sq(s);
        }
        out
    }
}

/// Transforms `f` into its kernels with the in-place biased butterfly: for
/// each coordinate the pair `(a, b)` of the `x_i = 0` / `x_i = 1` slices
/// becomes `(q_i a + p_i b, p_i q_i (b − a))`.
pub fn transform(f: &BooleanFunction, w: &WeightVector) -> Result<Spectrum> {
    f.check_weights(w)?;
    w.require_interior()?;
    let mut cells: Vec<Rational> = f.values.iter().map(|&v| int(v as i64)).collect();
    for (i, (p, q)) in w.ps().iter().zip(w.qs()).enumerate() {
        let pq = p * q;
        let step = 1usize << i;
        for base in (0..cells.len()).step_by(2 * step) {
            for lo in base..base + step {
                let hi = lo + step;
                let mixed = q * &cells[lo] + p * &cells[hi];
                let slope = &pq * (&cells[hi] - &cells[lo]);
                cells[lo] = mixed;
                cells[hi] = slope;
            }
        }
    }
    let alpha_sq = w
        .ps()
        .iter()
        .zip(w.qs())
        .map(|(p, q)| (p * q).recip())
        .collect();
    Ok(Spectrum {
        dim: f.dim,
        kernels: cells,
        alpha_sq,
    })
}

/// `sum_k W^k − μ(f²)`; zero for every `±1`-valued `f`.
pub fn parseval_defect(f: &BooleanFunction, w: &WeightVector) -> Result<Rational> {
    let spectrum = transform(f, w)?;
    let table = MeasureTable::new(w);
    let energy = f
        .values
        .iter()
        .zip(table.points())
        .fold(Rational::zero(), |acc, (&v, mu)| acc + mu * int((v * v) as i64));
    let total = spectrum
        .level_weights()
        .into_iter()
        .fold(Rational::zero(), |acc, v| acc + v);
    Ok(total - energy)
}

/// `D_i f(x) = (f(x_{i→1}) − f(x_{i→0})) / 2`, values in `{−1, 0, 1}`.
pub fn derivative(f: &BooleanFunction, coord: usize) -> Result<Vec<i8>> {
    let i = coord_index(coord, f.dim)?;
    Ok((0..1usize << f.dim)
        .map(|m| (f.values[m | 1 << i] - f.values[m & !(1 << i)]) / 2)
        .collect())
}

/// `μ((D_i f)²)`.
pub fn derivative_energy(f: &BooleanFunction, coord: usize, w: &WeightVector) -> Result<Rational> {
    f.check_weights(w)?;
    let d = derivative(f, coord)?;
    let table = MeasureTable::new(w);
    Ok(d
        .iter()
        .zip(table.points())
        .filter(|(v, _)| **v != 0)
        .fold(Rational::zero(), |acc, (_, mu)| acc + mu))
}

/// Positive, negative and total influences of every coordinate, with the
/// weighted totals `I(f) = sum_i 4 p_i q_i I_i(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfluenceProfile {
    #[serde(with = "serde_fraction_vec")]
    pub plus: Vec<Rational>,
    #[serde(with = "serde_fraction_vec")]
    pub minus: Vec<Rational>,
    #[serde(with = "serde_fraction")]
    pub total: Rational,
    #[serde(with = "serde_fraction")]
    pub total_plus: Rational,
    #[serde(with = "serde_fraction")]
    pub total_minus: Rational,
}

impl InfluenceProfile {
    /// `I_i = I_i^+ + I_i^-` for a 1-based coordinate.
    pub fn influence(&self, coord: usize) -> Result<Rational> {
        let i = coord_index(coord, self.plus.len())?;
        Ok(&self.plus[i] + &self.minus[i])
    }
}

/// Influences under `μ_p`. Boundary biases are allowed since only measures
/// are involved.
pub fn influences(f: &BooleanFunction, w: &WeightVector) -> Result<InfluenceProfile> {
    f.check_weights(w)?;
    let table = MeasureTable::new(w);
    let mu = table.points();
    let mut plus = Vec::with_capacity(f.dim);
    let mut minus = Vec::with_capacity(f.dim);
    for i in 0..f.dim {
        let bit = 1usize << i;
        let mut up = Rational::zero();
        let mut down = Rational::zero();
        for low in (0..1usize << f.dim).filter(|m| m & bit == 0) {
            let mass = &mu[low] + &mu[low | bit];
            match (f.values[low], f.values[low | bit]) {
                (-1, 1) => up += mass,
                (1, -1) => down += mass,
                _ => {}
            }
        }
        plus.push(up);
        minus.push(down);
    }
    let scale: Vec<Rational> = w
        .ps()
        .iter()
        .zip(w.qs())
        .map(|(p, q)| int(4) * p * q)
        .collect();
    let weigh = |values: &[Rational]| {
        values
            .iter()
            .zip(&scale)
            .fold(Rational::zero(), |acc, (v, s)| acc + v * s)
    };
    let total_plus = weigh(&plus);
    let total_minus = weigh(&minus);
    Ok(InfluenceProfile {
        total: &total_plus + &total_minus,
        plus,
        minus,
        total_plus,
        total_minus,
    })
}

/// Both sides of the degree-zero and degree-one identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeOneReport {
    /// `m_∅ = f̂(∅)`.
    #[serde(with = "serde_fraction")]
    pub empty_kernel: Rational,
    /// `2 μ(f^{-1}(1)) − 1`.
    #[serde(with = "serde_fraction")]
    pub empty_expected: Rational,
    /// Per coordinate: `α_i f̂({i}) = α_i² m_{i}`.
    #[serde(with = "serde_fraction_vec")]
    pub scaled_singletons: Vec<Rational>,
    /// Per coordinate: `2 (I_i^+ − I_i^-)`.
    #[serde(with = "serde_fraction_vec")]
    pub influence_gaps: Vec<Rational>,
}

impl DegreeOneReport {
    pub fn holds(&self) -> bool {
        self.empty_kernel == self.empty_expected && self.scaled_singletons == self.influence_gaps
    }
}

pub fn degree_one_identities(f: &BooleanFunction, w: &WeightVector) -> Result<DegreeOneReport> {
    let spectrum = transform(f, w)?;
    let profile = influences(f, w)?;
    let table = MeasureTable::new(w);
    let positive = table.family(&f.positive_set())?;
    let scaled_singletons = (0..f.dim)
        .map(|i| {
            let s = CubePoint::from_mask(1 << i);
            &spectrum.alpha_sq[i] * spectrum.kernel(s)
        })
        .collect();
    let influence_gaps = profile
        .plus
        .iter()
        .zip(&profile.minus)
        .map(|(a, b)| int(2) * (a - b))
        .collect();
    Ok(DegreeOneReport {
        empty_kernel: spectrum.kernel(CubePoint::EMPTY).clone(),
        empty_expected: int(2) * positive - int(1),
        scaled_singletons,
        influence_gaps,
    })
}

/// Residuals of `I(f) = sum_k k W^k` and of the per-coordinate form
/// `I_i = (α_i²/4) sum_{S∋i} f̂(S)²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfluenceLevelDefect {
    #[serde(with = "serde_fraction")]
    pub total: Rational,
    #[serde(with = "serde_fraction_vec")]
    pub per_coordinate: Vec<Rational>,
}

impl InfluenceLevelDefect {
    pub fn is_zero(&self) -> bool {
        self.total.is_zero() && self.per_coordinate.iter().all(Zero::is_zero)
    }
}

pub fn influence_level_identity_defect(
    f: &BooleanFunction,
    w: &WeightVector,
) -> Result<InfluenceLevelDefect> {
    let spectrum = transform(f, w)?;
    let profile = influences(f, w)?;
    let weighted_levels = spectrum
        .level_weights()
        .into_iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (k, wk)| acc + int(k as i64) * wk);
    let per_coordinate = (0..f.dim)
        .map(|i| {
            let mass = (0..1u32 << f.dim)
                .filter(|m| m >> i & 1 == 1)
                .fold(Rational::zero(), |acc, m| {
                    acc + spectrum.coeff_sq(CubePoint::from_mask(m))
                });
            &profile.plus[i] + &profile.minus[i] - &spectrum.alpha_sq[i] / int(4) * mass
        })
        .collect();
    Ok(InfluenceLevelDefect {
        total: profile.total - weighted_levels,
        per_coordinate,
    })
}

/// `I(f) − (k − sum_{j<k} (k − j) W^j)`; non-negative for `±1`-valued `f`.
pub fn low_degree_bound_margin(f: &BooleanFunction, w: &WeightVector, k: usize) -> Result<Rational> {
    if k == 0 || k > f.dim {
        return Err(Error::LevelOutOfRange { level: k, dim: f.dim });
    }
    let spectrum = transform(f, w)?;
    let profile = influences(f, w)?;
    let levels = spectrum.level_weights();
    let bound = (0..k).fold(int(k as i64), |acc, j| {
        acc - int((k - j) as i64) * &levels[j]
    });
    Ok(profile.total - bound)
}

/// `E[χ_S χ_T]` in squared form:
/// `E[prod_{S Δ T}(x_i − p_i) · prod_{S ∩ T} α_i² (x_i − p_i)²]`.
/// Equals `[S = T]`.
pub fn character_inner_product(
    w: &WeightVector,
    s: CubePoint,
    t: CubePoint,
) -> Result<Rational> {
    w.require_interior()?;
    s.check(w.dim())?;
    t.check(w.dim())?;
    let table = MeasureTable::new(w);
    let sym = s.mask() ^ t.mask();
    let both = s.mask() & t.mask();
    let mut acc = Rational::zero();
    for (m, mu) in table.points().iter().enumerate() {
        let mut term = mu.clone();
        for (i, p) in w.ps().iter().enumerate() {
            let centred = if m >> i & 1 == 1 { Rational::one() - p } else { -p };
            if sym >> i & 1 == 1 {
                term *= &centred;
            } else if both >> i & 1 == 1 {
                term *= &centred * &centred / (p * (Rational::one() - p));
            }
        }
        acc += term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn w(text: &str) -> WeightVector {
        WeightVector::parse(text).unwrap()
    }

    fn fam(dim: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_points(dim, sets.iter().map(|s| CubePoint::from_elements(s))).unwrap()
    }

    fn and2() -> BooleanFunction {
        BooleanFunction::indicator(&fam(2, &[&[1, 2]]))
    }

    fn dictator1() -> BooleanFunction {
        BooleanFunction::indicator(&fam(1, &[&[1]]))
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(
            BooleanFunction::indicator(&SetFamily::empty(2).unwrap()),
            BooleanFunction::constant(2, -1).unwrap()
        );
        assert_eq!(
            BooleanFunction::indicator(&SetFamily::full(2).unwrap()),
            BooleanFunction::constant(2, 1).unwrap()
        );
        assert_eq!(dictator1().values(), &[-1, 1]);
        assert!(BooleanFunction::new(1, vec![1, 0]).is_err());
        assert!(BooleanFunction::new(2, vec![1, 1]).is_err());
    }

    #[test]
    fn transform_examples() {
        let one = BooleanFunction::constant(3, 1).unwrap();
        let s = transform(&one, &w("1/3,1/2,5/7")).unwrap();
        assert_eq!(*s.kernel(CubePoint::EMPTY), int(1));
        assert!(s.kernels()[1..].iter().all(Zero::is_zero));

        let s = transform(&dictator1(), &w("2/3")).unwrap();
        assert_eq!(*s.kernel(CubePoint::EMPTY), ratio(1, 3));
        assert_eq!(*s.kernel(CubePoint::from_mask(1)), ratio(4, 9));
        assert_eq!(s.coeff_sq(CubePoint::from_mask(1)), ratio(8, 9));

        let s = transform(&and2(), &w("1/2,1/2")).unwrap();
        for m in 0..4 {
            assert_eq!(s.coeff_sq(CubePoint::from_mask(m)), ratio(1, 4));
        }
        assert!(s.coeff_float(CubePoint::EMPTY) < 0.0);
        assert!((s.coeff_float(CubePoint::from_mask(3)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn transform_rejects_boundary_and_mismatch() {
        assert!(matches!(
            transform(&dictator1(), &w("1")),
            Err(Error::BoundaryWeight { coord: 1, .. })
        ));
        assert!(matches!(
            transform(&dictator1(), &w("1/2,1/2")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn level_weight_examples() {
        let s = transform(&BooleanFunction::constant(2, 1).unwrap(), &w("1/3,1/4")).unwrap();
        assert_eq!(s.level_weight(0).unwrap(), int(1));
        assert_eq!(s.level_weight(1).unwrap(), int(0));
        assert_eq!(s.level_weight(2).unwrap(), int(0));
        let s = transform(&and2(), &w("1/2,1/2")).unwrap();
        assert_eq!(s.level_weights(), vec![ratio(1, 4), ratio(1, 2), ratio(1, 4)]);
        let s = transform(&dictator1(), &w("2/3")).unwrap();
        assert_eq!(s.level_weight(0).unwrap(), ratio(1, 9));
        assert_eq!(s.level_weight(1).unwrap(), ratio(8, 9));
        assert!(matches!(s.level_weight(2), Err(Error::LevelOutOfRange { .. })));
    }

    #[test]
    fn parseval_examples() {
        let minus = BooleanFunction::constant(2, -1).unwrap();
        assert!(parseval_defect(&minus, &w("1/3,1/4")).unwrap().is_zero());
        let f = BooleanFunction::indicator(&fam(3, &[&[], &[2], &[1, 3], &[1, 2, 3]]));
        assert!(parseval_defect(&f, &w("1/3,1/2,5/7")).unwrap().is_zero());
    }

    #[test]
    fn derivative_examples() {
        let one = BooleanFunction::constant(2, 1).unwrap();
        assert!(derivative(&one, 1).unwrap().iter().all(|&v| v == 0));
        assert_eq!(derivative(&dictator1(), 1).unwrap(), vec![1, 1]);
        // masks 00,10,01,11 in bit order: x2 is bit 1.
        assert_eq!(derivative(&and2(), 1).unwrap(), vec![0, 0, 1, 1]);
        assert!(derivative(&and2(), 3).is_err());
    }

    #[test]
    fn influence_examples() {
        let one = BooleanFunction::constant(2, 1).unwrap();
        let prof = influences(&one, &w("1/3,1/4")).unwrap();
        assert!(prof.total.is_zero() && prof.plus.iter().all(Zero::is_zero));

        let prof = influences(&dictator1(), &w("2/3")).unwrap();
        assert_eq!(prof.plus, vec![int(1)]);
        assert_eq!(prof.minus, vec![int(0)]);
        assert_eq!(prof.total, ratio(8, 9));

        let prof = influences(&and2(), &w("1/2,1/2")).unwrap();
        assert_eq!(prof.influence(1).unwrap(), ratio(1, 2));
        assert_eq!(prof.influence(2).unwrap(), ratio(1, 2));
        assert_eq!(prof.total, int(1));
        assert_eq!(prof.total, &prof.total_plus + &prof.total_minus);

        // boundary weights are fine for influences
        let prof = influences(&and2(), &w("1,0")).unwrap();
        assert_eq!(prof.influence(1).unwrap(), int(0));
        assert_eq!(prof.influence(2).unwrap(), int(1));
    }

    #[test]
    fn derivative_energy_matches_influence() {
        let f = BooleanFunction::indicator(&fam(3, &[&[1], &[2, 3], &[1, 2, 3]]));
        let weights = w("1/3,1/2,5/7");
        let prof = influences(&f, &weights).unwrap();
        for c in 1..=3 {
            assert_eq!(derivative_energy(&f, c, &weights).unwrap(), prof.influence(c).unwrap());
        }
    }

    #[test]
    fn degree_one_examples() {
        let rep = degree_one_identities(&BooleanFunction::constant(2, 1).unwrap(), &w("1/3,1/4"))
            .unwrap();
        assert_eq!(rep.empty_kernel, int(1));
        assert!(rep.holds());

        let rep = degree_one_identities(&dictator1(), &w("2/3")).unwrap();
        assert_eq!(rep.scaled_singletons, vec![int(2)]);
        assert_eq!(rep.influence_gaps, vec![int(2)]);

        let rep = degree_one_identities(&and2(), &w("1/2,1/2")).unwrap();
        assert_eq!(rep.empty_kernel, ratio(-1, 2));
        assert_eq!(rep.scaled_singletons[0], int(1));
        assert!(rep.holds());
    }

    #[test]
    fn influence_level_examples() {
        let weights = w("1/3,1/2,5/7");
        for sign in [1, -1] {
            let f = BooleanFunction::constant(3, sign).unwrap();
            assert!(influence_level_identity_defect(&f, &weights).unwrap().is_zero());
        }
        assert!(influence_level_identity_defect(&and2(), &w("1/2,1/2"))
            .unwrap()
            .is_zero());
        let f = BooleanFunction::indicator(&fam(3, &[&[], &[3], &[1, 2], &[2, 3]]));
        assert!(influence_level_identity_defect(&f, &weights).unwrap().is_zero());
    }

    #[test]
    fn low_degree_examples() {
        let one = BooleanFunction::constant(2, 1).unwrap();
        assert_eq!(low_degree_bound_margin(&one, &w("1/2,1/2"), 1).unwrap(), int(0));
        assert_eq!(low_degree_bound_margin(&and2(), &w("1/2,1/2"), 2).unwrap(), int(0));
        assert!(low_degree_bound_margin(&and2(), &w("1/2,1/2"), 0).is_err());
        assert!(low_degree_bound_margin(&and2(), &w("1/2,1/2"), 3).is_err());
    }

    #[test]
    fn characters_are_orthonormal() {
        let weights = w("1/3,3/5,5/7");
        for s in 0..8 {
            for t in 0..8 {
                let v = character_inner_product(
                    &weights,
                    CubePoint::from_mask(s),
                    CubePoint::from_mask(t),
                )
                .unwrap();
                assert_eq!(v, int((s == t) as i64), "S={s} T={t}");
            }
        }
    }
}
