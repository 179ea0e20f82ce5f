//! Exhaustive family enumeration, union closure, sampling and extremal
//! search.

mod sample;
mod search;

pub use sample::{
    monte_carlo_measure, random_weights, sample_point, McEstimate, PointSampler, WeightRange,
};
pub use search::{search_min_ratio, EmptySetPolicy, SearchConfig, SearchResult};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::cube::{CubePoint, SetFamily};
use crate::error::{Error, Result};

/// Largest dimension whose `2^(2^d)` membership tables are scanned.
pub const MAX_ENUMERATION_DIM: usize = 4;

/// Conjunction of family predicates applied during enumeration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FamilyFilter {
    pub union_closed: bool,
    pub simply_rooted: bool,
    pub contains_empty: bool,
    pub has_nonempty_member: bool,
}

impl FamilyFilter {
    pub const NONE: FamilyFilter = FamilyFilter {
        union_closed: false,
        simply_rooted: false,
        contains_empty: false,
        has_nonempty_member: false,
    };

    pub fn union_closed() -> Self {
        FamilyFilter {
            union_closed: true,
            ..Self::NONE
        }
    }

    pub fn simply_rooted() -> Self {
        FamilyFilter {
            simply_rooted: true,
            ..Self::NONE
        }
    }

    pub fn with_empty(mut self) -> Self {
        self.contains_empty = true;
        self
    }

    pub fn with_nonempty_member(mut self) -> Self {
        self.has_nonempty_member = true;
        self
    }

    pub fn accepts(&self, family: &SetFamily) -> bool {
        // Cheap membership tests first.
        (!self.contains_empty || family.contains_empty_set())
            && (!self.has_nonempty_member || family.has_nonempty_member())
            && (!self.union_closed || family.is_union_closed())
            && (!self.simply_rooted || family.is_simply_rooted())
    }
}

impl FromStr for FamilyFilter {
    type Err = Error;

    /// Comma-separated names: `union-closed`, `simply-rooted`,
    /// `contains-empty`, `has-nonempty-member`, or `all` for no filter.
    fn from_str(s: &str) -> Result<Self> {
        let mut filter = Self::NONE;
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            match name {
                "union-closed" => filter.union_closed = true,
                "simply-rooted" => filter.simply_rooted = true,
                "contains-empty" => filter.contains_empty = true,
                "has-nonempty-member" => filter.has_nonempty_member = true,
                "all" => {}
                other => {
                    return Err(Error::InvalidArgument(format!("unknown filter `{other}`")));
                }
            }
        }
        Ok(filter)
    }
}

impl fmt::Display for FamilyFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [
            (self.union_closed, "union-closed"),
            (self.simply_rooted, "simply-rooted"),
            (self.contains_empty, "contains-empty"),
            (self.has_nonempty_member, "has-nonempty-member"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect();
        if names.is_empty() {
            f.write_str("all")
        } else {
            f.write_str(&names.join(","))
        }
    }
}

fn table_count(dim: usize) -> Result<u64> {
    if dim == 0 || dim > MAX_ENUMERATION_DIM {
        return Err(Error::DimensionOutOfRange(dim));
    }
    Ok(1u64 << (1usize << dim))
}

/// Families passing a filter, in ascending membership-table order.
#[derive(Debug, Clone)]
pub struct EnumerationStream {
    dim: usize,
    next: u64,
    end: u64,
    filter: FamilyFilter,
}

impl EnumerationStream {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn filter(&self) -> FamilyFilter {
        self.filter
    }
}

impl Iterator for EnumerationStream {
    type Item = SetFamily;

    fn next(&mut self) -> Option<SetFamily> {
        while self.next < self.end {
            let family = SetFamily::from_table(self.dim, self.next).expect("dimension checked");
            self.next += 1;
            if self.filter.accepts(&family) {
                return Some(family);
            }
        }
        None
    }
}

/// Scans every membership table on `dim ≤ 4` coordinates.
pub fn enumerate_families(dim: usize, filter: FamilyFilter) -> Result<EnumerationStream> {
    Ok(EnumerationStream {
        dim,
        next: 0,
        end: table_count(dim)?,
        filter,
    })
}

/// Same families as [`enumerate_families`], scanned on the current rayon
/// pool and collected in table order.
pub fn collect_families(dim: usize, filter: FamilyFilter) -> Result<Vec<SetFamily>> {
    let end = table_count(dim)?;
    Ok((0..end)
        .into_par_iter()
        .filter_map(|t| {
            let family = SetFamily::from_table(dim, t).expect("dimension checked");
            filter.accepts(&family).then_some(family)
        })
        .collect())
}

/// Runs `work` on a pool of `jobs` threads (`0` means the rayon default).
pub fn with_jobs<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(work))
}

/// Smallest union-closed family containing the generators.
pub fn union_closure(dim: usize, generators: &[CubePoint]) -> Result<SetFamily> {
    let mut family = SetFamily::empty(dim)?;
    let mut members: Vec<CubePoint> = Vec::new();
    let mut pending: Vec<CubePoint> = Vec::new();
    for &g in generators {
        g.check(dim)?;
        if family.insert(g)? {
            pending.push(g);
        }
    }
    while let Some(x) = pending.pop() {
        for &y in &members {
            let u = x.union(y);
            if family.insert(u)? {
                pending.push(u);
            }
        }
        members.push(x);
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_closed_counts() {
        let count = |d| enumerate_families(d, FamilyFilter::union_closed()).unwrap().count();
        assert_eq!(count(1), 4);
        assert_eq!(count(2), 14);
        // The d = 2 exclusions are exactly the tables with {1}, {2} but not {1,2}.
        let excluded: Vec<u64> = (0..16)
            .filter(|&t| {
                !SetFamily::from_table(2, t).unwrap().is_union_closed()
            })
            .collect();
        assert_eq!(excluded, vec![0b0110, 0b0111]);
    }

    #[test]
    fn stream_is_ascending_and_matches_parallel_collect() {
        let filter = FamilyFilter::simply_rooted();
        let serial: Vec<SetFamily> = enumerate_families(3, filter).unwrap().collect();
        assert!(serial.windows(2).all(|w| w[0].table() < w[1].table()));
        assert_eq!(serial, collect_families(3, filter).unwrap());
    }

    #[test]
    fn dimension_bound() {
        assert!(enumerate_families(5, FamilyFilter::NONE).is_err());
        assert!(enumerate_families(0, FamilyFilter::NONE).is_err());
    }

    #[test]
    fn filter_parsing() {
        let f: FamilyFilter = "union-closed, contains-empty".parse().unwrap();
        assert_eq!(f, FamilyFilter::union_closed().with_empty());
        assert_eq!(f.to_string(), "union-closed,contains-empty");
        assert_eq!("all".parse::<FamilyFilter>().unwrap(), FamilyFilter::NONE);
        assert!("closed".parse::<FamilyFilter>().is_err());
    }

    #[test]
    fn closure_examples() {
        let p = |s: &[usize]| CubePoint::from_elements(s);
        let f = union_closure(2, &[p(&[1]), p(&[2])]).unwrap();
        assert_eq!(f.members().collect::<Vec<_>>(), vec![p(&[1]), p(&[2]), p(&[1, 2])]);
        assert!(union_closure(2, &[]).unwrap().is_empty());
        let f = union_closure(3, &[p(&[1]), p(&[2]), p(&[3])]).unwrap();
        assert_eq!(f.len(), 7);
        assert!(!f.contains_empty_set());
        assert!(union_closure(2, &[p(&[3])]).is_err());
    }

    #[test]
    fn closure_is_idempotent_on_union_closed_families() {
        for f in enumerate_families(3, FamilyFilter::union_closed()).unwrap() {
            let members: Vec<CubePoint> = f.members().collect();
            assert_eq!(union_closure(3, &members).unwrap(), f);
        }
    }
}
