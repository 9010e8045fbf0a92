//! Bipartite, partition and split-origin constructions against direct oracles.

mod common;

use common::*;
use gsvkit::constructions::{self as cons, BipartiteValuation, Partition};
use gsvkit::gscheck;
use gsvkit::matroid::{self, Matroid, WeightVector};
use gsvkit::ops::{self, endow, Status};
use gsvkit::rational::int;
use gsvkit::verify::monotone_grid3;
use gsvkit::{io, Error, ItemSet, Rational, Valuation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn edges_of(b: &BipartiteValuation) -> Vec<Vec<(usize, Rational)>> {
    b.agents.iter().map(|a| a.edges.iter().map(|(i, w)| (*i, *w)).collect()).collect()
}

#[test]
fn assignment_valuation_matches_matching_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let agents = rng.gen_range(1..=4);
        let edges: Vec<BTreeMap<usize, Rational>> = (0..agents)
            .map(|_| (1..=n).filter(|_| rng.gen_bool(0.6)).collect::<Vec<_>>().into_iter().map(|i| (i, int(rng.gen_range(0..7)))).collect())
            .collect();
        let b = BipartiteValuation::from_edges(ItemSet::full(n), edges).unwrap();
        let v = cons::assignment_valuation(&b);
        for s in v.ground().subsets() {
            assert_eq!(*v.at(s), matching_oracle(&edges_of(&b), s));
        }
        assert!(gs_oracle(&v));
    }
}

#[test]
fn bipartite_rejects_foreign_items_and_negative_weights() {
    let e = |i: usize, w: i64| vec![BTreeMap::from([(i, int(w))])];
    assert!(matches!(BipartiteValuation::from_edges(ItemSet::full(2), e(3, 1)), Err(Error::ElementOutOfGround { .. })));
    assert!(BipartiteValuation::from_edges(ItemSet::full(2), e(1, -1)).is_err());
}

#[test]
fn unit_demand_is_max_weight() {
    let v = cons::unit_demand(&WeightVector::from_ints(&[4, 7, 1]).unwrap());
    assert_eq!(*v.at(set("1,3")), int(4));
    assert_eq!(*v.at(set("1,2,3")), int(7));
}

#[test]
fn partition_valuation_table() {
    let pi = Partition::parse(4, "1,2|3,4").unwrap();
    let v = cons::partition_valuation(&pi, int(2), int(3)).unwrap();
    assert_eq!(*v.at(set("1")), int(2));
    assert_eq!(*v.at(set("1,2")), int(2));
    assert_eq!(*v.at(set("1,3")), int(3));
    assert_eq!(*v.at(set("1,2,3,4")), int(3));
    let r = v.restrict(set("1,2")).unwrap();
    assert_eq!(r.values(), &[int(0), int(2), int(2), int(2)]);
    for (a, b) in [(1, 2), (2, 2), (3, 2), (0, 1)] {
        assert!(matches!(cons::partition_valuation(&pi, int(a), int(b)), Err(Error::ParameterConstraintViolated(_))));
    }
    assert!(Partition::parse(4, "1,2|2,3,4").is_err());
    assert!(Partition::parse(4, "1,2|3").is_err());
}

#[test]
fn partitions_are_enumerated_and_gross_substitutes() {
    let bell = [1, 1, 2, 5, 15, 52];
    for (n, expected) in bell.iter().enumerate().skip(1) {
        let all = cons::all_partitions(n);
        assert_eq!(all.len(), *expected);
        for pi in &all {
            for (a, b) in [(2, 3), (3, 5), (5, 9)] {
                let v = cons::partition_valuation(pi, int(a), int(b)).unwrap();
                assert!(gs_oracle(&v), "{pi:?}");
            }
        }
    }
}

#[test]
fn gadget_endowment_gives_partition_valuation() {
    for n in [3, 4] {
        for pi in cons::all_partitions(n) {
            let (a, b) = (int(3), int(4));
            let gadget = cons::partition_gadget(&pi, a, b).unwrap();
            let part_items = cons::gadget_part_items(&pi);
            // Value of the whole gadget computed by the matching oracle, then endowed by hand.
            let edges = edges_of(&gadget);
            let base = matching_oracle(&edges, part_items);
            assert_eq!(base, a * int(pi.parts().len() as i64));
            let target = cons::partition_valuation(&pi, a, b).unwrap();
            for s in ItemSet::full(n).subsets() {
                assert_eq!(matching_oracle(&edges, s | part_items) - base, *target.at(s));
            }
            let endowed = endow(&cons::assignment_valuation(&gadget), part_items).unwrap();
            assert_eq!(endowed.values(), target.values());
        }
    }
}

#[test]
fn gadget_with_single_part() {
    let pi = Partition::parse(3, "1,2,3").unwrap();
    let gadget = cons::partition_gadget(&pi, int(2), int(3)).unwrap();
    let v = cons::assignment_valuation(&gadget);
    let part = cons::gadget_part_items(&pi);
    // One part: the part node alone is worth a, and adding any items gives 2a.
    assert_eq!(*v.at(part), int(2));
    for s in ItemSet::full(3).subsets().filter(|s| !s.is_empty()) {
        assert_eq!(*v.at(s | part), int(4));
    }
}

#[test]
fn oxs_fit_round_trips_on_grid() {
    let gs: Vec<Valuation> = monotone_grid3(2).into_iter().filter(gs_oracle).collect();
    assert!(!gs.is_empty());
    for v in &gs {
        let b = cons::oxs_fit(v).unwrap();
        for s in v.ground().subsets() {
            assert_eq!(matching_oracle(&edges_of(&b), s), *v.at(s), "{v:?}");
        }
    }
    let not_gs = Valuation::from_ints(ItemSet::full(2), &[0, 1, 1, 3]).unwrap();
    assert!(matches!(cons::oxs_fit(&not_gs), Err(Error::NotGrossSubstitutes)));
    assert!(matches!(cons::oxs_fit(&Valuation::zero(ItemSet::full(4))), Err(Error::GroundTooLarge { .. })));
}

#[test]
fn oxs_fit_needs_role_permutation() {
    let v = Valuation::from_ints(ItemSet::full(3), &[0, 3, 2, 5, 1, 4, 2, 5]).unwrap();
    assert!(gs_oracle(&v));
    let b = cons::oxs_fit(&v).unwrap();
    assert_eq!(cons::assignment_valuation(&b), v);
}

#[test]
fn split_origin_construction() {
    let k4 = Matroid::graphic_k4();
    let w = WeightVector::from_ints(&[1, 2, 3, 4, 5, 6]).unwrap();
    let v = cons::split_origin_valuation(&k4, &w, int(1)).unwrap();
    let rho = matroid::weighted_rank(&k4, &w).unwrap();
    for s in v.ground().subsets() {
        let expected = if s.is_empty() { int(0) } else { *rho.at(s) + int(1) };
        assert_eq!(*v.at(s), expected);
    }
    assert!(gscheck::is_gross_substitutes(&v).0);
    assert!(v.distinct_nonzero_values().len() >= 3);
    let verdict = ops::certify_irreducible(&v).unwrap();
    assert_eq!(verdict.status(), Status::CertifiedIrreducible);
    assert!(verdict.reverify(&v));

    let u3 = Matroid::uniform(2, ItemSet::full(3));
    let small = cons::split_origin_valuation(&u3, &WeightVector::from_ints(&[1, 2, 3]).unwrap(), int(1)).unwrap();
    for m in matroid::enumerate_matroids_on_subsets(ItemSet::full(3)).unwrap() {
        assert!(matroid::fit_weights(&m, &small).is_none());
    }
}

#[test]
fn split_origin_preconditions() {
    let u = |r, n| Matroid::uniform(r, ItemSet::full(n));
    let w = WeightVector::from_ints(&[1, 2, 3]).unwrap();
    assert!(matches!(cons::split_origin_valuation(&u(2, 3), &WeightVector::ones(3), int(1)), Err(Error::ConstantWeight)));
    assert!(matches!(cons::split_origin_valuation(&u(1, 3), &w, int(1)), Err(Error::RankTooLow(1))));
    let looped = u(2, 2).with_loops(ItemSet::full(3)).unwrap();
    assert!(matches!(cons::split_origin_valuation(&looped, &w, int(1)), Err(Error::HasLoop(3))));
    assert!(cons::split_origin_valuation(&u(2, 3), &w, int(0)).is_err());
}

#[test]
fn random_valuations_are_gross_substitutes() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for n in 1..=4 {
        for _ in 0..20 {
            assert!(gs_oracle(&cons::random_gs_valuation(n, &mut rng, 6)));
        }
    }
}

#[test]
fn json_round_trips() {
    let pi = Partition::parse(4, "1,2|3,4").unwrap();
    let v = cons::partition_valuation(&pi, Rational::new(5, 2), int(3)).unwrap();
    let text = io::valuation_to_json(&v).to_string();
    assert_eq!(io::valuation_from_json(&text).unwrap(), v);

    let m = Matroid::graphic_k4();
    let text = io::matroid_to_json(&m).to_string();
    assert_eq!(io::matroid_from_json(&text).unwrap(), m);

    let by_rank = r#"{"ground":[1,2],"rank":{"":0,"1":1,"2":1,"1,2":1}}"#;
    assert_eq!(io::matroid_from_json(by_rank).unwrap(), Matroid::uniform(1, ItemSet::full(2)));
    assert!(io::valuation_from_json(r#"{"n":1,"values":{"":"0","1":"-1"}}"#).is_err());
    assert!(io::valuation_from_json("not json").is_err());
}
