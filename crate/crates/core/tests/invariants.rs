//! Structural invariants of families, hitting sets and enumeration.

use num_traits::One;
use proptest::prelude::*;

use pcube::cube::{CubePoint, MeasureTable, SetFamily};
use pcube::explore::{enumerate_families, union_closure, FamilyFilter};
use pcube::hitting::{enumerate_minimal_hitting_sets, is_hitting, is_minimal_hitting};
use pcube::rational::{ratio, Rational};
use pcube::WeightVector;

fn weights(dim: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec((2i64..=12).prop_flat_map(|b| (0..=b, Just(b))), dim)
        .prop_map(|parts| WeightVector::new(parts.into_iter().map(|(a, b)| ratio(a, b)).collect()).unwrap())
}

fn family(max_dim: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_dim).prop_flat_map(|d| {
        prop::collection::vec(any::<bool>(), 1 << d).prop_map(move |bits| {
            SetFamily::from_points(
                d,
                bits.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(m, _)| CubePoint::from_mask(m as u32)),
            )
            .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn point_measures_sum_to_one(w in (1usize..=8).prop_flat_map(weights)) {
        let total: Rational = MeasureTable::new(&w).points().iter().sum();
        prop_assert!(total.is_one());
    }

    #[test]
    fn closure_is_smallest_union_closed_superset(f in family(5)) {
        let members: Vec<CubePoint> = f.members().collect();
        let closed = union_closure(f.dim(), &members).unwrap();
        prop_assert!(closed.is_union_closed());
        prop_assert!(members.iter().all(|&x| closed.contains(x)));
        // Every member of the closure is a union of generators below it.
        for x in closed.members() {
            let below = members
                .iter()
                .filter(|g| g.is_subset_of(x))
                .fold(CubePoint::EMPTY, |acc, &g| acc.union(g));
            prop_assert_eq!(below, x);
        }
        let again: Vec<CubePoint> = closed.members().collect();
        prop_assert_eq!(union_closure(f.dim(), &again).unwrap(), closed);
    }

    #[test]
    fn hitting_is_upward_closed(f in family(6), mask in any::<u32>(), extra in 1usize..=6) {
        let set = CubePoint::from_mask(mask & CubePoint::full(f.dim()).mask());
        let coord = (extra - 1) % f.dim() + 1;
        if is_hitting(&f, set) {
            prop_assert!(is_hitting(&f, set.union(CubePoint::from_elements(&[coord]))));
        }
    }

    #[test]
    fn minimal_hitting_sets_form_an_antichain(f in family(6)) {
        let sets = enumerate_minimal_hitting_sets(&f);
        for (i, a) in sets.iter().enumerate() {
            prop_assert!(is_minimal_hitting(&f, a.set()));
            for b in &sets[i + 1..] {
                prop_assert!(!a.set().is_subset_of(b.set()) && !b.set().is_subset_of(a.set()));
            }
        }
    }
}

#[test]
fn simply_rooted_is_complement_union_closed() {
    for d in 1..=3 {
        for f in enumerate_families(d, FamilyFilter::NONE).unwrap() {
            assert_eq!(f.is_simply_rooted(), f.complement().is_union_closed(), "{f}");
        }
    }
}

#[test]
fn simply_rooted_enumeration_is_complement_of_union_closed() {
    for d in 1..=3 {
        let mut complements: Vec<SetFamily> = enumerate_families(d, FamilyFilter::union_closed())
            .unwrap()
            .map(|f| f.complement())
            .collect();
        complements.sort();
        let rooted: Vec<SetFamily> = enumerate_families(d, FamilyFilter::simply_rooted()).unwrap().collect();
        assert_eq!(rooted, complements);
    }
}

#[test]
fn simply_rooted_members_miss_at_most_one_lower_neighbour() {
    for d in 1..=4 {
        for f in enumerate_families(d, FamilyFilter::simply_rooted()).unwrap() {
            for x in f.members() {
                assert!(f.missing_lower_neighbors(x).unwrap().len() <= 1, "{f} at {x}");
            }
        }
    }
}

#[test]
fn family_files_round_trip() {
    for f in enumerate_families(3, FamilyFilter::union_closed()).unwrap() {
        assert_eq!(SetFamily::parse(&f.to_file_string()).unwrap(), f);
    }
}
