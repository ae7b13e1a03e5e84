//! Cohomology pipeline checks against independent oracles: the closed-form
//! cyclic 3-cocycle, the unnormalized bar complex, and hand expectations.

mod common;

use common::cyclic_closed_form_omega;
use num_bigint::BigInt;
use tenfact::cohomology::{
    self, bar_differential, h4_integral, oracle, CohOptions, IntCochain,
};
use tenfact::groups::{self, Subgroup};

fn opts() -> CohOptions {
    CohOptions::default()
}

#[test]
fn cyclic_groups_have_single_invariant_factor_n() {
    for n in 2..=6u64 {
        let g = groups::cyclic(n as usize).unwrap();
        let h = h4_integral(&g, &opts()).unwrap();
        assert_eq!(h.invariant_factors, vec![n], "H4(Z/{n})");
    }
}

#[test]
fn closed_form_cyclic_cocycle_is_an_order_n_class() {
    for n in 2..=6u64 {
        let g = groups::cyclic(n as usize).unwrap();
        let h = h4_integral(&g, &opts()).unwrap();
        let omega = cyclic_closed_form_omega(&g, n);
        assert!(cohomology::is_qz_cocycle(&g, &omega), "closed form is a cocycle, n={n}");
        let z = cohomology::connecting_image(&g, &omega).unwrap();
        // Non-coboundary…
        assert!(h.is_trivial_class(&z).unwrap().is_none(), "nontrivial class, n={n}");
        // …while n times the class bounds, with an explicit witness.
        let nz = z.scaled(&BigInt::from(n));
        let w = h.is_trivial_class(&nz).unwrap().expect("n·class is a coboundary");
        assert_eq!(bar_differential(&g, &w).unwrap(), nz);
        // Exact order n: no proper divisor of n kills the class.
        for k in 1..n {
            if n % k == 0 {
                let kz = z.scaled(&BigInt::from(k));
                assert!(h.is_trivial_class(&kz).unwrap().is_none(), "order divides {k} < {n}");
            }
        }
    }
}

#[test]
fn normalized_and_unnormalized_pipelines_agree_up_to_order_six() {
    let c2 = groups::cyclic(2).unwrap();
    let mut cases = vec![
        ("Z2".to_string(), c2.clone()),
        ("Z3".into(), groups::cyclic(3).unwrap()),
        ("Z4".into(), groups::cyclic(4).unwrap()),
        ("Z5".into(), groups::cyclic(5).unwrap()),
        ("Z6".into(), groups::cyclic(6).unwrap()),
        ("S3".into(), groups::symmetric(3).unwrap()),
        ("D3".into(), groups::dihedral(3).unwrap()),
    ];
    cases.push(("Z2xZ2".into(), groups::direct_product(&c2, &c2).unwrap()));
    for (name, g) in cases {
        let normalized = h4_integral(&g, &opts()).unwrap().invariant_factors;
        let full = oracle::h4_invariant_factors_unnormalized(&g, &opts()).unwrap();
        assert_eq!(normalized, full, "pipeline mismatch for {name}");
    }
}

#[test]
fn klein_four_group_has_factors_2_2_2() {
    let c2 = groups::cyclic(2).unwrap();
    let v4 = groups::direct_product(&c2, &c2).unwrap();
    let h = h4_integral(&v4, &opts()).unwrap();
    assert_eq!(h.invariant_factors, vec![2, 2, 2]);
    let full = oracle::h4_invariant_factors_unnormalized(&v4, &opts()).unwrap();
    assert_eq!(full, vec![2, 2, 2]);
}

#[test]
fn s3_h4_is_z6() {
    let g = groups::symmetric(3).unwrap();
    let h = h4_integral(&g, &opts()).unwrap();
    assert_eq!(h.invariant_factors, vec![6]);
}

#[test]
fn generator_certificates_hold_on_catalog_groups() {
    for (name, g) in [
        ("Z4", groups::cyclic(4).unwrap()),
        ("Z6", groups::cyclic(6).unwrap()),
        ("S3", groups::symmetric(3).unwrap()),
    ] {
        let h = h4_integral(&g, &opts()).unwrap();
        let order = g.order() as u64;
        for (i, z) in h.generators.iter().enumerate() {
            let d = h.invariant_factors[i];
            assert_eq!(order % d, 0, "{name}: invariant factor divides the group order");
            assert!(bar_differential(&g, z).unwrap().is_zero(), "{name}: generator cocycle");
            let dw = bar_differential(&g, &h.torsion_witnesses[i]).unwrap();
            assert_eq!(dw, z.scaled(&BigInt::from(d)), "{name}: torsion witness");
        }
        // |H⁴| divides a power of |G|.
        let mut h_order = h.order();
        for _ in 0..8 {
            let g5 = num_integer::gcd(h_order, g.order() as u128);
            h_order /= g5;
        }
        assert_eq!(h_order, 1, "{name}: exponent annihilation");
    }
}

#[test]
fn omega_representatives_are_exact_qz_cocycles() {
    for g in [groups::cyclic(4).unwrap(), groups::symmetric(3).unwrap()] {
        let h = h4_integral(&g, &opts()).unwrap();
        for z in &h.generators {
            let omega = h.omega_from_z(z).unwrap();
            assert!(cohomology::is_qz_cocycle(&g, &omega));
            // Round trip: the connecting image of omega is in the class of z.
            let back = cohomology::connecting_image(&g, &omega).unwrap();
            let diff = back.sub(z);
            assert!(h.is_trivial_class(&diff).unwrap().is_some());
        }
    }
}

#[test]
fn omega_from_zero_is_zero_class() {
    let g = groups::cyclic(3).unwrap();
    let h = h4_integral(&g, &opts()).unwrap();
    let zero = IntCochain::zero(&g, 4);
    let omega = h.omega_from_z(&zero).unwrap();
    // A rational solution of dc = 0 reduced mod 1 is a Q/Z cocycle in the
    // trivial class; here the solver returns the zero cochain.
    assert!(omega.is_zero());
}

#[test]
fn z3_generator_matches_closed_form_up_to_class_and_unit() {
    let g = groups::cyclic(3).unwrap();
    let h = h4_integral(&g, &opts()).unwrap();
    let omega = h.omega_from_z(&h.generators[0]).unwrap();
    let closed = cyclic_closed_form_omega(&g, 3);
    // Both generate H³(Z/3, Q/Z) = Z/3, so omega ~ k·closed for k coprime
    // to 3; compare as classes, not cochains.
    let matches: Vec<u64> = (1..3)
        .filter(|&k| {
            let zk = cohomology::connecting_image(&g, &closed).unwrap().scaled(&BigInt::from(k));
            let diff = cohomology::connecting_image(&g, &omega).unwrap().sub(&zk);
            h.is_trivial_class(&diff).unwrap().is_some()
        })
        .collect();
    assert_eq!(matches.len(), 1, "exactly one unit multiple matches");
}

#[test]
fn restriction_z4_to_z2_has_order_two_class() {
    let g = groups::cyclic(4).unwrap();
    let h4 = h4_integral(&g, &opts()).unwrap();
    let sub = Subgroup::new(&g, vec![0, 2]).unwrap();
    let (hgroup, res) = cohomology::restrict_cocycle(&g, &h4.generators[0], &sub).unwrap();
    let hh = h4_integral(&hgroup, &opts()).unwrap();
    assert_eq!(hh.invariant_factors, vec![2]);
    // The restricted class is nontrivial but its double bounds.
    assert!(hh.is_trivial_class(&res).unwrap().is_none());
    assert!(hh.is_trivial_class(&res.scaled(&BigInt::from(2))).unwrap().is_some());
}

#[test]
fn dd_zero_exhaustive_small_orders() {
    let c2 = groups::cyclic(2).unwrap();
    let mut cases = vec![
        groups::cyclic(2).unwrap(),
        groups::cyclic(3).unwrap(),
        groups::cyclic(4).unwrap(),
        groups::cyclic(5).unwrap(),
        groups::cyclic(6).unwrap(),
        groups::symmetric(3).unwrap(),
    ];
    cases.push(groups::direct_product(&c2, &c2).unwrap());
    for g in cases {
        for degree in 0..=4usize {
            // d∘d = 0 on every basis cochain of the given degree.
            let cells = if g.order() == 1 {
                usize::from(degree == 0)
            } else {
                (g.order() - 1).pow(degree as u32)
            };
            for cell in 0..cells {
                let mut c = IntCochain::zero(&g, degree);
                c.values[cell] = BigInt::from(1);
                let dd = bar_differential(&g, &bar_differential(&g, &c).unwrap()).unwrap();
                assert!(dd.is_zero(), "d∘d != 0 at degree {degree}");
            }
        }
    }
}

#[test]
fn classify_pointed_s3_and_z6_are_trivial() {
    // S3 = A3 · <transposition>
    let s3 = groups::symmetric(3).unwrap();
    let subs = groups::subgroups(&s3).unwrap();
    let a3 = subs.iter().find(|s| s.order() == 3).unwrap();
    let t = subs.iter().find(|s| s.order() == 2).unwrap();
    let h4 = h4_integral(&s3, &opts()).unwrap();
    let cls = h4.classify_pointed(a3, t, &opts()).unwrap();
    assert_eq!(cls.ambient_factors, vec![6]);
    assert!(cls.kernel_factors.is_empty());
    assert_eq!(cls.kernel_order, 1);

    // Oracle: exhaustive per-class coboundary testing of all classes.
    let (g1, _) = a3.to_group(&s3);
    let (g2, _) = t.to_group(&s3);
    let h1 = h4_integral(&g1, &opts()).unwrap();
    let h2 = h4_integral(&g2, &opts()).unwrap();
    let mut surviving = 0;
    for k in 0..6u64 {
        let z = h4.element_cocycle(&[k]);
        let (_, r1) = cohomology::restrict_cocycle(&s3, &z, a3).unwrap();
        let (_, r2) = cohomology::restrict_cocycle(&s3, &z, t).unwrap();
        if h1.is_trivial_class(&r1).unwrap().is_some() && h2.is_trivial_class(&r2).unwrap().is_some()
        {
            surviving += 1;
        }
    }
    assert_eq!(surviving, 1, "only the trivial class dies on both factors");

    // Z6 = Z2 · Z3
    let z6 = groups::cyclic(6).unwrap();
    let subs = groups::subgroups(&z6).unwrap();
    let z2 = subs.iter().find(|s| s.order() == 2).unwrap();
    let z3 = subs.iter().find(|s| s.order() == 3).unwrap();
    let cls = cohomology::classify_pointed(&z6, z2, z3, &opts()).unwrap();
    assert_eq!(cls.ambient_factors, vec![6]);
    assert_eq!(cls.kernel_order, 1);
}

#[test]
fn classify_pointed_rejects_non_factorizations() {
    let z4 = groups::cyclic(4).unwrap();
    let sub = Subgroup::new(&z4, vec![0, 2]).unwrap();
    match cohomology::classify_pointed(&z4, &sub, &sub, &opts()) {
        Err(cohomology::CohError::NotExactFactorization) => {}
        other => panic!("expected rejection, got {:?}", other.map(|c| c.kernel_order)),
    }
}

#[test]
fn classify_whole_group_times_trivial_is_trivial_kernel() {
    for g in [groups::cyclic(4).unwrap(), groups::symmetric(3).unwrap()] {
        let subs = groups::subgroups(&g).unwrap();
        let trivial = subs.first().unwrap();
        let whole = subs.last().unwrap();
        let cls = cohomology::classify_pointed(&g, whole, trivial, &opts()).unwrap();
        assert_eq!(cls.kernel_order, 1, "restriction to G is the identity");
    }
}
