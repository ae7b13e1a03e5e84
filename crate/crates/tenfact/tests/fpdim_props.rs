//! Frobenius–Perron property tests: product multiplicativity, duality
//! invariance, predicate closure under exact factorizations, and bulk
//! rejection of corrupted fusion tensors.

mod common;

use common::fibonacci;
use proptest::prelude::*;
use tenfact::builders;
use tenfact::category::{CategoryData, GrVector};
use tenfact::fpdim::{self, eigen_equation_check, fp_character, predicates, DEFAULT_TOL};
use tenfact::groups;

fn small_corpus() -> Vec<(String, CategoryData)> {
    let mut out: Vec<(String, CategoryData)> = Vec::new();
    for n in [1usize, 2, 3, 4, 6] {
        out.push((format!("Vec(Z{n})"), builders::vec_of_group(&groups::cyclic(n).unwrap())));
    }
    out.push(("Vec(S3)".into(), builders::vec_of_group(&groups::symmetric(3).unwrap())));
    for p in [2u64, 3, 5] {
        out.push((format!("Rep(Z{p})"), builders::rep_zp_char_p(p).unwrap()));
    }
    for n in [2usize, 3, 4] {
        out.push((format!("Taft{n}"), builders::taft_like(n).unwrap()));
    }
    out.push(("Fib".into(), fibonacci()));
    out
}

#[test]
fn deligne_products_multiply_dimensions() {
    let corpus = small_corpus();
    for (na, a) in &corpus {
        for (nc, c) in &corpus {
            if a.n() * c.n() > 60 {
                continue;
            }
            let (prod, _, _) = builders::deligne_product(a, c);
            let pa = fp_character(a, DEFAULT_TOL).unwrap();
            let pc = fp_character(c, DEFAULT_TOL).unwrap();
            let pp = fp_character(&prod, DEFAULT_TOL).unwrap();
            assert!(
                (pp.cat_dim - pa.cat_dim * pc.cat_dim).abs() <= 1e-9 * pp.cat_dim.max(1.0),
                "{na} ⊠ {nc}: {} vs {}",
                pp.cat_dim,
                pa.cat_dim * pc.cat_dim
            );
            for (x, &da) in pa.dims.iter().enumerate() {
                for (y, &dc) in pc.dims.iter().enumerate() {
                    let got = pp.dims[x * c.n() + y];
                    assert!((got - da * dc).abs() <= 1e-9 * got.max(1.0));
                }
            }
        }
    }
}

#[test]
fn dims_are_dual_invariant_and_unit_normalized() {
    for (name, data) in small_corpus() {
        let p = fp_character(&data, DEFAULT_TOL).unwrap();
        assert!((p.dims[data.unit] - 1.0).abs() < 1e-12, "{name}");
        for x in 0..data.n() {
            assert!((p.dims[x] - p.dims[data.dual[x]]).abs() < 1e-9, "{name} at {x}");
        }
        // When Y^D is defined, dimensions are D-invariant too.
        for y in 0..data.n() {
            if let Ok(d) = data.dual_d_of(y) {
                assert!((p.dims[y] - p.dims[d]).abs() < 1e-9, "{name}: FPdim(Y^D)");
            }
        }
        let eigen = eigen_equation_check(&data, &p).unwrap();
        assert!(eigen.max_deviation <= 1e-9 * p.cat_dim.max(1.0), "{name}: eigen residual");
    }
}

#[test]
fn gr_product_is_associative_on_basis_triples() {
    for (name, data) in small_corpus() {
        let n = data.n();
        if n > 6 {
            continue;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let xy = data
                        .gr_product(&GrVector::basis(n, x), &GrVector::basis(n, y))
                        .unwrap();
                    let left = data.gr_product(&xy, &GrVector::basis(n, z)).unwrap();
                    let yz = data
                        .gr_product(&GrVector::basis(n, y), &GrVector::basis(n, z))
                        .unwrap();
                    let right = data.gr_product(&GrVector::basis(n, x), &yz).unwrap();
                    assert_eq!(left, right, "{name} at ({x},{y},{z})");
                }
            }
        }
    }
}

#[test]
fn projdec_two_route_agreement() {
    // [Y ⊗ P(X)] computed through the ring versus through the fusion rule
    // on the left-dual side.
    for (name, data) in small_corpus() {
        let n = data.n();
        for x in 0..n {
            let px = data.projective_class(x);
            for y in 0..n {
                let route_a = data.gr_product(&GrVector::basis(n, y), &px).unwrap();
                let mut route_b = vec![0u64; n];
                let left_dual = data.left_dual(y);
                for z in 0..n {
                    let c = data.fusion_mult(x, left_dual, z);
                    if c > 0 {
                        for (slot, r) in route_b.iter_mut().enumerate() {
                            *r += c * data.cartan[z][slot];
                        }
                    }
                }
                assert_eq!(route_a.coeffs, route_b, "{name} at ({x},{y})");
            }
        }
    }
}

#[test]
fn predicates_close_under_deligne_factorization() {
    // Pointed/integral/weakly-integral/fusion each hold for a product
    // exactly when they hold for both factors.
    let corpus = small_corpus();
    for (na, a) in &corpus {
        for (nc, c) in &corpus {
            if a.n() * c.n() > 60 {
                continue;
            }
            let (prod, _, _) = builders::deligne_product(a, c);
            let pa = predicates(a, &fp_character(a, DEFAULT_TOL).unwrap()).unwrap();
            let pc = predicates(c, &fp_character(c, DEFAULT_TOL).unwrap()).unwrap();
            let pp = predicates(&prod, &fp_character(&prod, DEFAULT_TOL).unwrap()).unwrap();
            let ctx = format!("{na} ⊠ {nc}");
            assert_eq!(pp.pointed, pa.pointed && pc.pointed, "{ctx}: pointed");
            assert_eq!(pp.integral, pa.integral && pc.integral, "{ctx}: integral");
            assert_eq!(pp.fusion, pa.fusion && pc.fusion, "{ctx}: fusion");
            if pa.weakly_integral && pc.weakly_integral {
                assert!(pp.weakly_integral, "{ctx}: weakly integral product");
            }
        }
    }
}

#[test]
fn integer_confirmation_is_exact_for_group_data() {
    for n in 1..=12usize {
        let data = builders::vec_of_group(&groups::cyclic(n).unwrap());
        let p = fp_character(&data, DEFAULT_TOL).unwrap();
        assert_eq!(p.exact_cat_dim, Some(n as u128));
        assert_eq!(p.exact_dims.as_deref(), Some(vec![1u64; n].as_slice()));
    }
}

/// Direct re-evaluation of every axiom from the defining formulas, written
/// without the fusion-matrix machinery the validator uses.
fn axioms_hold_direct(data: &CategoryData) -> bool {
    let n = data.n();
    let unit = data.unit;
    let nm = |x: usize, y: usize, z: usize| data.fusion_mult(x, y, z);
    for x in 0..n {
        for y in 0..n {
            if nm(x, unit, y) != u64::from(x == y) || nm(x, y, unit) != u64::from(x == y) {
                return false;
            }
            if nm(unit, x, y) != u64::from(y == data.dual[x]) {
                return false;
            }
            for z in 0..n {
                if nm(z, x, y) != nm(data.dual[z], data.dual[y], data.dual[x]) {
                    return false;
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for v in 0..n {
                for z in 0..n {
                    let lhs: u64 = (0..n).map(|w| nm(w, x, y) * nm(z, w, v)).sum();
                    let rhs: u64 = (0..n).map(|w| nm(w, y, v) * nm(z, x, w)).sum();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    for x in 0..n {
        if data.cartan[x][x] < 1 {
            return false;
        }
        for y in 0..n {
            let star_y = data.left_dual(y);
            for z in 0..n {
                let lhs: u64 = (0..n).map(|w| data.cartan[x][w] * nm(z, y, w)).sum();
                let rhs: u64 = (0..n).map(|w| nm(x, star_y, w) * data.cartan[w][z]).sum();
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    if let Some(dd) = &data.dual_d {
        for y in 0..n {
            for v in 0..n {
                if data.cartan[dd[y]][v] != data.cartan[y][data.left_dual(v)] {
                    return false;
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    // The validator agrees with a direct formula-by-formula axiom checker
    // on single-entry fusion corruptions. (A corruption can land on other
    // valid data: one bump turns Vec(Z/2) into the Fibonacci ring, so
    // "always rejected" would be wrong; agreement is the real invariant.)
    #[test]
    fn validator_agrees_with_direct_axiom_checker_under_mutation(
        which in 0usize..6,
        x in 0usize..6,
        y in 0usize..6,
        z in 0usize..6,
        bump in 1u64..3,
        subtract in proptest::bool::ANY,
    ) {
        let corpus = small_corpus();
        let (_, base) = &corpus[which % corpus.len()];
        let n = base.n();
        let key = (x % n, y % n, z % n);
        let mut data = base.clone();
        let cur = data.fusion_mult(key.0, key.1, key.2);
        let next = if subtract { cur.saturating_sub(bump) } else { cur + bump };
        if next == cur {
            return Ok(());
        }
        if next == 0 {
            data.fusion.remove(&key);
        } else {
            data.fusion.insert(key, next);
        }
        prop_assert_eq!(
            data.quick_valid(),
            axioms_hold_direct(&data),
            "validator disagrees with the direct checker at {:?} -> {}", key, next
        );
    }

    // fpdim of a random nonnegative class is monotone and linear.
    #[test]
    fn fpdim_object_is_linear(coeffs in proptest::collection::vec(0u64..20, 2)) {
        let fib = fibonacci();
        let p = fp_character(&fib, DEFAULT_TOL).unwrap();
        let v = GrVector { coeffs: coeffs.clone() };
        let direct = fpdim::fpdim_object(&p, &v).unwrap();
        let by_parts = coeffs[0] as f64 * p.dims[0] + coeffs[1] as f64 * p.dims[1];
        prop_assert!((direct - by_parts).abs() < 1e-9);
    }
}
