//! Points of the Boolean cube, dense set families, the product measure and
//! the structural predicates (union-closed, simply rooted).

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weights::WeightVector;
use crate::MAX_DIM;

/// Validates a 1-based coordinate and returns its bit position.
pub fn coord_index(coord: usize, dim: usize) -> Result<usize> {
    if coord == 0 || coord > dim {
        Err(Error::CoordinateOutOfRange { coord, dim })
    } else {
        Ok(coord - 1)
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::DimensionOutOfRange(dim))
    } else {
        Ok(())
    }
}

/// A vertex of the cube, i.e. a subset of `[d]`: bit `i - 1` is set iff
/// element `i` belongs to the support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CubePoint(u32);

impl CubePoint {
    pub const EMPTY: CubePoint = CubePoint(0);

    pub const fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    /// Builds the point from 1-based elements; `from_elements(&[1, 3])` is `{1,3}`.
    pub fn from_elements(elements: &[usize]) -> Self {
        Self(
            elements
                .iter()
                .filter(|&&e| (1..=32).contains(&e))
                .fold(0, |acc, &e| acc | 1 << (e - 1)),
        )
    }

    /// The full set `[d]`.
    pub fn full(dim: usize) -> Self {
        Self(((1u64 << dim) - 1) as u32)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, coord: usize) -> bool {
        (1..=32).contains(&coord) && self.0 >> (coord - 1) & 1 == 1
    }

    pub fn is_valid_for(self, dim: usize) -> bool {
        dim >= 32 || self.0 >> dim == 0
    }

    pub fn check(self, dim: usize) -> Result<Self> {
        if self.is_valid_for(dim) {
            Ok(self)
        } else {
            Err(Error::PointOutOfRange { mask: self.0, dim })
        }
    }

    /// `x_{i -> bit}`.
    pub fn set_coordinate(self, dim: usize, coord: usize, bit: bool) -> Result<Self> {
        let i = coord_index(coord, dim)?;
        Ok(if bit {
            Self(self.0 | 1 << i)
        } else {
            Self(self.0 & !(1 << i))
        })
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32usize).filter(move |i| mask >> i & 1 == 1).map(|i| i + 1)
    }

    /// Length-`dim` bit string; character `k` is coordinate `k`.
    pub fn to_bits(self, dim: usize) -> String {
        (0..dim)
            .map(|i| if self.0 >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn parse_bits(text: &str) -> Option<Self> {
        if text.len() > 32 {
            return None;
        }
        text.chars().enumerate().try_fold(Self(0), |acc, (i, c)| match c {
            '0' => Some(acc),
            '1' => Some(Self(acc.0 | 1 << i)),
            _ => None,
        })
    }
}

impl fmt::Display for CubePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", elems.join(","))
    }
}

/// A family `F` of subsets of `[d]`, stored as a dense membership table over
/// the `2^d` cube points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    dim: usize,
    words: Vec<u64>,
    size: usize,
}

fn word_count(dim: usize) -> usize {
    ((1usize << dim) / 64).max(1)
}

fn last_word_mask(dim: usize) -> u64 {
    if dim >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << dim)) - 1
    }
}

impl SetFamily {
    pub fn empty(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            words: vec![0; word_count(dim)],
            size: 0,
        })
    }

    /// The whole power set `P([d])`.
    pub fn full(dim: usize) -> Result<Self> {
        let mut family = Self::empty(dim)?;
        family.words.iter_mut().for_each(|w| *w = u64::MAX);
        *family.words.last_mut().expect("non-empty") &= last_word_mask(dim);
        family.size = 1 << dim;
        Ok(family)
    }

    pub fn from_points<I>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = CubePoint>,
    {
        let mut family = Self::empty(dim)?;
        for point in points {
            family.insert(point)?;
        }
        Ok(family)
    }

    pub fn from_masks(dim: usize, masks: &[u32]) -> Result<Self> {
        Self::from_points(dim, masks.iter().map(|&m| CubePoint(m)))
    }

    /// Builds a family for `dim <= 6` from its membership table read as an
    /// integer: bit `x` of `table` is the membership of point `x`.
    pub fn from_table(dim: usize, table: u64) -> Result<Self> {
        check_dim(dim)?;
        if dim > 6 {
            return Err(Error::InvalidArgument(format!(
                "a single-word membership table needs dimension <= 6, got {dim}"
            )));
        }
        let table = table & last_word_mask(dim);
        Ok(Self {
            dim,
            words: vec![table],
            size: table.count_ones() as usize,
        })
    }

    /// The membership table as an integer; only meaningful for `dim <= 6`.
    pub fn table(&self) -> u64 {
        self.words[0]
    }

    /// Adds a point; returns whether it was new.
    pub fn insert(&mut self, point: CubePoint) -> Result<bool> {
        point.check(self.dim)?;
        let m = point.mask() as usize;
        let bit = 1u64 << (m % 64);
        let word = &mut self.words[m / 64];
        let fresh = *word & bit == 0;
        *word |= bit;
        if fresh {
            self.size += 1;
        }
        Ok(fresh)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, point: CubePoint) -> bool {
        let m = point.mask() as usize;
        point.is_valid_for(self.dim) && self.words[m / 64] >> (m % 64) & 1 == 1
    }

    fn contains_mask(&self, m: u32) -> bool {
        let m = m as usize;
        self.words[m / 64] >> (m % 64) & 1 == 1
    }

    /// Members in ascending mask order.
    pub fn members(&self) -> impl Iterator<Item = CubePoint> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(CubePoint((wi * 64) as u32 + bit))
            })
        })
    }

    pub fn contains_empty_set(&self) -> bool {
        self.contains_mask(0)
    }

    /// Some member other than the empty set exists.
    pub fn has_nonempty_member(&self) -> bool {
        self.size > usize::from(self.contains_empty_set())
    }

    /// True for `{∅}` exactly.
    pub fn is_only_empty_set(&self) -> bool {
        self.size == 1 && self.contains_empty_set()
    }

    /// `F_i`: the members containing element `coord`.
    pub fn subfamily_containing(&self, coord: usize) -> Result<Self> {
        let i = coord_index(coord, self.dim)?;
        Ok(self.filter(|x| x.mask() >> i & 1 == 1))
    }

    /// `|F_i|` without materialising the subfamily.
    pub fn count_containing(&self, coord: usize) -> Result<usize> {
        let i = coord_index(coord, self.dim)?;
        Ok(self.members().filter(|x| x.mask() >> i & 1 == 1).count())
    }

    pub fn filter(&self, mut keep: impl FnMut(CubePoint) -> bool) -> Self {
        let mut out = Self {
            dim: self.dim,
            words: vec![0; self.words.len()],
            size: 0,
        };
        for x in self.members().filter(|&x| keep(x)) {
            let m = x.mask() as usize;
            out.words[m / 64] |= 1 << (m % 64);
            out.size += 1;
        }
        out
    }

    /// `P([d]) \ F`.
    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        *words.last_mut().expect("non-empty") &= last_word_mask(self.dim);
        Self {
            dim: self.dim,
            words,
            size: (1 << self.dim) - self.size,
        }
    }

    /// `A ∪ B ∈ F` for all `A, B ∈ F`. Vacuously true for the empty family.
    pub fn is_union_closed(&self) -> bool {
        let members: Vec<u32> = self.members().map(CubePoint::mask).collect();
        members.iter().enumerate().all(|(k, &a)| {
            members[k + 1..]
                .iter()
                .all(|&b| a | b == b || a | b == a || self.contains_mask(a | b))
        })
    }

    /// The complement is union-closed.
    pub fn is_simply_rooted(&self) -> bool {
        self.complement().is_union_closed()
    }

    /// Coordinates `i ∈ supp(x)` with `x_{i -> 0} ∉ F`, ascending.
    pub fn missing_lower_neighbors(&self, x: CubePoint) -> Result<Vec<usize>> {
        x.check(self.dim)?;
        if !self.contains(x) {
            return Err(Error::PointNotInFamily(x.to_string()));
        }
        Ok(x
            .elements()
            .filter(|&e| !self.contains_mask(x.mask() & !(1 << (e - 1))))
            .collect())
    }

    /// The family `{x : x_i = 1}`.
    pub fn dictator(dim: usize, coord: usize) -> Result<Self> {
        let i = coord_index(coord, dim)?;
        let mut family = Self::empty(dim)?;
        for m in 0..1u32 << dim {
            if m >> i & 1 == 1 {
                family.insert(CubePoint(m))?;
            }
        }
        Ok(family)
    }

    /// The coordinate `i` for which this family is `{x : x_i = 1}`, if any.
    pub fn dictator_coordinate(&self) -> Option<usize> {
        if self.size != 1 << (self.dim - 1) {
            return None;
        }
        (1..=self.dim).find(|&c| self.count_containing(c).ok() == Some(self.size))
    }

    /// Parses the canonical family file: `d=<n>` followed by one bit string
    /// per member.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `d=<n>` header".into(),
        })?;
        let dim: usize = header
            .strip_prefix("d=")
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                line: header_line,
                message: format!("expected `d=<n>`, found `{header}`"),
            })?;
        check_dim(dim)?;
        let mut family = Self::empty(dim)?;
        for (line, body) in lines {
            if body.len() != dim {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {dim} bits, found `{body}`"),
                });
            }
            let point = CubePoint::parse_bits(body).ok_or_else(|| Error::Parse {
                line,
                message: format!("`{body}` is not a string over {{0,1}}"),
            })?;
            if !family.insert(point)? {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate member `{body}`"),
                });
            }
        }
        Ok(family)
    }

    /// Canonical file text, members in ascending mask order.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("d={}\n", self.dim);
        for x in self.members() {
            out.push_str(&x.to_bits(self.dim));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(d={}, {self})", self.dim)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", members.join(","))
    }
}

/// Dimension first, then the membership table read as an unsigned integer.
impl Ord for SetFamily {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for SetFamily {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `μ({x}) = prod_{i ∈ x} p_i prod_{i ∉ x} q_i`.
pub fn point_measure(x: CubePoint, w: &WeightVector) -> Result<Rational> {
    let x = x.check(w.dim())?;
    Ok(w
        .ps()
        .iter()
        .zip(w.qs())
        .enumerate()
        .fold(Rational::one(), |acc, (i, (p, q))| {
            if x.mask() >> i & 1 == 1 {
                acc * p
            } else {
                acc * q
            }
        }))
}

pub fn family_measure(family: &SetFamily, w: &WeightVector) -> Result<Rational> {
    MeasureTable::new(w).family(family)
}

/// `μ(F_i)`.
pub fn subfamily_measure(family: &SetFamily, coord: usize, w: &WeightVector) -> Result<Rational> {
    MeasureTable::new(w).subfamily(family, coord)
}

/// All `2^d` point measures of one weight vector, built by successive
/// doubling. Worth constructing once when many families share a weight.
#[derive(Debug, Clone)]
pub struct MeasureTable {
    dim: usize,
    points: Vec<Rational>,
}

impl MeasureTable {
    pub fn new(w: &WeightVector) -> Self {
        let mut points = vec![Rational::one()];
        for (p, q) in w.ps().iter().zip(w.qs()) {
            let low: Vec<Rational> = points.iter().map(|v| v * q).collect();
            let high: Vec<Rational> = points.iter().map(|v| v * p).collect();
            points = low;
            points.extend(high);
        }
        Self {
            dim: w.dim(),
            points,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, x: CubePoint) -> &Rational {
        &self.points[x.mask() as usize]
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    fn check(&self, family: &SetFamily) -> Result<()> {
        if family.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: family.dim(),
            });
        }
        Ok(())
    }

    pub fn family(&self, family: &SetFamily) -> Result<Rational> {
        self.check(family)?;
        Ok(family
            .members()
            .fold(Rational::zero(), |acc, x| acc + self.point(x)))
    }

    pub fn subfamily(&self, family: &SetFamily, coord: usize) -> Result<Rational> {
        self.check(family)?;
        let i = coord_index(coord, self.dim)?;
        Ok(family
            .members()
            .filter(|x| x.mask() >> i & 1 == 1)
            .fold(Rational::zero(), |acc, x| acc + self.point(x)))
    }

    /// `(μ(F_1), ..., μ(F_d))` in one pass.
    pub fn subfamilies(&self, family: &SetFamily) -> Result<Vec<Rational>> {
        self.check(family)?;
        let mut out = vec![Rational::zero(); self.dim];
        for x in family.members() {
            for (i, slot) in out.iter_mut().enumerate() {
                if x.mask() >> i & 1 == 1 {
                    *slot += self.point(x);
                }
            }
        }
        Ok(out)
    }
}

impl serde::Serialize for CubePoint {
    /// The 1-based elements, ascending.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl serde::Serialize for SetFamily {
    /// Member bit strings in file order.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members().map(|x| x.to_bits(self.dim)))
    }
}
