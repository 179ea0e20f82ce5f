//! The bias sequence `(p_1, ..., p_d)` of a product measure on the cube.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, ratio, to_fraction, Rational};
use crate::MAX_DIM;

/// Per-coordinate biases `p_i = P[x_i = 1]` with their exact derived
/// quantities.
///
/// Coordinates are 1-based in every accessor, matching family files.
/// `alpha_sq(i) = 1/(p_i q_i)` is the square of the normalising constant of
/// the biased character; the constant itself is irrational in general and is
/// never materialised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    p: Vec<Rational>,
    q: Vec<Rational>,
}

impl WeightVector {
    pub fn new(p: Vec<Rational>) -> Result<Self> {
        if p.is_empty() || p.len() > MAX_DIM {
            return Err(Error::DimensionOutOfRange(p.len()));
        }
        for (idx, value) in p.iter().enumerate() {
            if *value < Rational::zero() || *value > Rational::one() {
                return Err(Error::WeightOutOfRange {
                    coord: idx + 1,
                    value: to_fraction(value),
                });
            }
        }
        let q = p.iter().map(|v| Rational::one() - v).collect();
        Ok(Self { p, q })
    }

    /// All coordinates set to the same bias.
    pub fn uniform(dim: usize, value: Rational) -> Result<Self> {
        Self::new(vec![value; dim])
    }

    pub fn half(dim: usize) -> Result<Self> {
        Self::uniform(dim, ratio(1, 2))
    }

    /// Parses the comma-separated weight line, e.g. `2/3,0.75`.
    pub fn parse(text: &str) -> Result<Self> {
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: "empty weight list".into(),
            })?;
        let p = line
            .split(',')
            .map(|field| {
                parse_rational(field).map_err(|message| Error::Parse { line: 1, message })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p)
    }

    /// The canonical `a/b,...` line.
    pub fn to_line(&self) -> String {
        self.p.iter().map(to_fraction).collect::<Vec<_>>().join(",")
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    pub fn ps(&self) -> &[Rational] {
        &self.p
    }

    pub fn qs(&self) -> &[Rational] {
        &self.q
    }

    fn index(&self, coord: usize) -> Result<usize> {
        crate::cube::coord_index(coord, self.dim())
    }

    pub fn p(&self, coord: usize) -> Result<&Rational> {
        Ok(&self.p[self.index(coord)?])
    }

    pub fn q(&self, coord: usize) -> Result<&Rational> {
        Ok(&self.q[self.index(coord)?])
    }

    /// `1/(p_i q_i)`; `None` on the boundary.
    pub fn alpha_sq(&self, coord: usize) -> Result<Option<Rational>> {
        let i = self.index(coord)?;
        let pq = &self.p[i] * &self.q[i];
        Ok((!pq.is_zero()).then(|| pq.recip()))
    }

    /// `Q_i = 1/q_i`; `None` when `p_i = 1`.
    pub fn big_q_coord(&self, coord: usize) -> Result<Option<Rational>> {
        let i = self.index(coord)?;
        Ok((!self.q[i].is_zero()).then(|| self.q[i].recip()))
    }

    /// `Q = prod_i Q_i`; `None` when some `p_i = 1`.
    pub fn big_q(&self) -> Option<Rational> {
        let prod = self.q_product();
        (!prod.is_zero()).then(|| prod.recip())
    }

    /// `prod_i q_i`, which is also the measure of the empty set.
    pub fn q_product(&self) -> Rational {
        self.q.iter().fold(Rational::one(), |acc, v| acc * v)
    }

    /// `prod_{i in mask} q_i` over 0-based bit positions.
    pub fn q_product_over(&self, mask: u32) -> Rational {
        self.q
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(Rational::one(), |acc, (_, v)| acc * v)
    }

    pub fn p_min(&self) -> &Rational {
        self.p.iter().min().expect("dimension is at least 1")
    }

    pub fn q_max(&self) -> Rational {
        Rational::one() - self.p_min()
    }

    /// True when every bias lies strictly inside (0, 1).
    pub fn is_interior(&self) -> bool {
        self.p
            .iter()
            .all(|v| *v > Rational::zero() && *v < Rational::one())
    }

    /// Fails with the first coordinate sitting on {0, 1}.
    pub fn require_interior(&self) -> Result<()> {
        match self
            .p
            .iter()
            .position(|v| v.is_zero() || v.is_one())
        {
            Some(i) => Err(Error::BoundaryWeight {
                coord: i + 1,
                value: to_fraction(&self.p[i]),
            }),
            None => Ok(()),
        }
    }

    /// Fails with the first coordinate whose bias is below 1/2.
    pub fn require_at_least_half(&self) -> Result<()> {
        let half = ratio(1, 2);
        match self.p.iter().position(|v| *v < half) {
            Some(i) => Err(Error::WeightBelowHalf {
                coord: i + 1,
                value: to_fraction(&self.p[i]),
            }),
            None => Ok(()),
        }
    }

    pub fn is_uniform_half(&self) -> bool {
        let half = ratio(1, 2);
        self.p.iter().all(|v| *v == half)
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_line())
    }
}
