//! Group machinery on the catalog, including the hand-built quaternion
//! table and the direct bijection double-check for factorizations.

mod common;

use common::{group_catalog, quaternion_q8};
use tenfact::groups::{self, enumerate_exact_factorizations, subgroups, Subgroup};

#[test]
fn q8_has_six_subgroups_and_no_nontrivial_factorization() {
    let q8 = quaternion_q8();
    let subs = subgroups(&q8).unwrap();
    assert_eq!(subs.len(), 6);
    // Unique subgroup of order 2 (the center), contained in every
    // nontrivial subgroup, so only trivial factorizations exist.
    let order2: Vec<_> = subs.iter().filter(|s| s.order() == 2).collect();
    assert_eq!(order2.len(), 1);
    let out = enumerate_exact_factorizations(&q8).unwrap();
    assert!(out.pairs.iter().all(|p| p.trivial));
    assert_eq!(out.nontrivial_classes, 0);
}

#[test]
fn factorization_pairs_verify_the_product_bijection() {
    for (name, g) in group_catalog() {
        if g.order() > 12 {
            continue;
        }
        let out = enumerate_exact_factorizations(&g).unwrap();
        for pair in &out.pairs {
            // Unique expression g = g1·g2: all |H1|·|H2| products distinct.
            let mut seen = vec![false; g.order()];
            for &a in &pair.h1.elements {
                for &b in &pair.h2.elements {
                    let p = g.mul(a, b);
                    assert!(!seen[p], "{name}: product {p} repeats");
                    seen[p] = true;
                }
            }
            assert!(seen.iter().all(|&s| s), "{name}: products cover the group");
        }
        // Swap symmetry of the enumeration.
        for pair in &out.pairs {
            assert!(
                out.pairs.iter().any(|q| q.h1 == pair.h2 && q.h2 == pair.h1),
                "{name}: enumeration not swap symmetric"
            );
        }
    }
}

#[test]
fn lagrange_holds_across_catalog() {
    for (name, g) in group_catalog() {
        for s in subgroups(&g).unwrap() {
            assert_eq!(g.order() % s.order(), 0, "{name}");
        }
    }
}

#[test]
fn conjugacy_classes_partition_subgroups() {
    let g = groups::symmetric(4).unwrap();
    let subs = subgroups(&g).unwrap();
    assert_eq!(subs.len(), 30);
    let classes = groups::conjugacy_classes(&g, &subs);
    let total: usize = classes.iter().map(|c| c.len()).sum();
    assert_eq!(total, subs.len());
    assert_eq!(classes.len(), 11, "S4 has 11 conjugacy classes of subgroups");
}

#[test]
fn subgroup_rejects_non_closed_sets() {
    let g = groups::cyclic(6).unwrap();
    assert!(Subgroup::new(&g, vec![0, 2]).is_err());
    assert!(Subgroup::new(&g, vec![0, 2, 4]).is_ok());
    assert!(Subgroup::new(&g, vec![1, 2]).is_err(), "missing identity");
}

#[test]
fn invalid_tables_are_rejected() {
    // Not a Latin square.
    let r = groups::FiniteGroup::new(
        vec!["a".into(), "b".into()],
        vec![vec![0, 0], vec![1, 1]],
    );
    assert!(r.is_err());
    // Subtraction table of Z/3: a Latin square with no two-sided identity.
    let r = groups::FiniteGroup::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]],
    );
    assert!(r.is_err());
}
