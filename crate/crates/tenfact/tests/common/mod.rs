//! Shared fixtures and independent oracles for the integration suites.
//!
//! Everything here is deliberately written against the public API only and
//! avoids the code paths it is used to check.

use num_bigint::BigInt;
use num_rational::BigRational;
use tenfact::category::{CategoryData, GrVector};
use tenfact::cohomology::QZCochain;
use tenfact::groups::{self, FiniteGroup};

/// The Fibonacci fusion ring: simples `{1, τ}` with `τ·τ = 1 + τ`.
pub fn fibonacci() -> CategoryData {
    CategoryData {
        simples: vec!["1".into(), "tau".into()],
        unit: 0,
        dual: vec![0, 1],
        fusion: [((0, 0, 0), 1), ((1, 0, 1), 1), ((1, 1, 0), 1), ((0, 1, 1), 1), ((1, 1, 1), 1)]
            .into_iter()
            .collect(),
        cartan: vec![vec![1, 0], vec![0, 1]],
        dual_d: None,
        omega_class: None,
    }
}

/// Quaternion group as a hand-written Cayley table over
/// `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion_q8() -> FiniteGroup {
    let labels: Vec<String> =
        ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    // Encode x as (sign, axis) with axes 1, i, j, k.
    let dec = |x: usize| (x % 2, x / 2);
    let enc = |sign: usize, axis: usize| axis * 2 + sign;
    let mul = |a: usize, b: usize| -> usize {
        let (sa, xa) = dec(a);
        let (sb, xb) = dec(b);
        // quaternion unit table: axis x axis -> (sign, axis)
        let table = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let (s, axis) = table[xa][xb];
        enc((s + sa + sb) % 2, axis)
    };
    let table: Vec<Vec<usize>> = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::new(labels, table).expect("Q8 table is a group")
}

/// Closed-form generator of `H³(Z/n, Q/Z)`:
/// `ω(a,b,c) = a·⌊(b+c)/n⌋/n mod 1`.
pub fn cyclic_closed_form_omega(g: &FiniteGroup, n: u64) -> QZCochain {
    assert_eq!(g.order() as u64, n);
    let mut values = Vec::new();
    let letters: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    for &a in &letters {
        for &b in &letters {
            for &c in &letters {
                let carry = ((b + c) / n as usize) as u64;
                values.push(BigRational::new(
                    BigInt::from(a as u64 * carry),
                    BigInt::from(n),
                ));
            }
        }
    }
    QZCochain::from_values(values)
}

/// Brute-force exact factorization search for semisimple data, written
/// independently of the library's closure-of-generators search: supports
/// come from a powerset scan with a direct closedness test, and every pair
/// is checked by factoring each simple of the target and comparing
/// projective-cover classes directly.
pub fn brute_force_fusion_factorizations(b: &CategoryData) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = b.n();
    assert!(n <= 16, "powerset oracle is for small data");
    let unit = b.unit;
    let product = |x: usize, y: usize| -> GrVector {
        b.gr_product(&GrVector::basis(n, x), &GrVector::basis(n, y)).unwrap()
    };
    let mut closed: Vec<Vec<usize>> = Vec::new();
    'subset: for mask in 0u32..(1 << n) {
        if mask & (1 << unit) == 0 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        for &x in &members {
            if mask & (1 << b.dual[x]) == 0 {
                continue 'subset;
            }
            for &y in &members {
                for t in product(x, y).support() {
                    if mask & (1 << t) == 0 {
                        continue 'subset;
                    }
                }
            }
        }
        closed.push(members);
    }
    let mut hits = Vec::new();
    for a in &closed {
        for c in &closed {
            if a.iter().filter(|x| c.contains(x)).count() != 1 {
                continue;
            }
            if a.len() * c.len() != n {
                continue;
            }
            // Every simple factors uniquely, and projective covers agree:
            // in semisimple data P(Z) = Z, so the direct check is that the
            // product class of the (unique) pair is the basis vector of Z.
            let mut image_count = vec![0usize; n];
            let mut all_simple = true;
            for &x in a {
                for &y in c {
                    match product(x, y).as_basis_index() {
                        Some(z) => image_count[z] += 1,
                        None => all_simple = false,
                    }
                }
            }
            if all_simple && image_count.iter().all(|&k| k == 1) {
                hits.push((a.clone(), c.clone()));
            }
        }
    }
    hits
}

/// Group catalog used across the acceptance suites: every builder output
/// of order ≤ 24 that the test corpus relies on.
pub fn group_catalog() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in 1..=8 {
        out.push((format!("Z{n}"), groups::cyclic(n).unwrap()));
    }
    for n in 3..=6 {
        out.push((format!("D{n}"), groups::dihedral(n).unwrap()));
    }
    out.push(("S3".into(), groups::symmetric(3).unwrap()));
    out.push(("S4".into(), groups::symmetric(4).unwrap()));
    let c2 = groups::cyclic(2).unwrap();
    let c3 = groups::cyclic(3).unwrap();
    let c4 = groups::cyclic(4).unwrap();
    let c6 = groups::cyclic(6).unwrap();
    out.push(("Z2xZ2".into(), groups::direct_product(&c2, &c2).unwrap()));
    out.push(("Z2xZ4".into(), groups::direct_product(&c2, &c4).unwrap()));
    out.push(("Z3xZ3".into(), groups::direct_product(&c3, &c3).unwrap()));
    out.push(("Z2xZ6".into(), groups::direct_product(&c2, &c6).unwrap()));
    out.push(("Q8".into(), quaternion_q8()));
    out
}
