//! Canonical category-data constructors used as test substrate and user
//! starting points: pointed data from groups, the one-simple local family,
//! the Taft-family Grothendieck shadow, Deligne products and opposites.

use std::collections::BTreeMap;

use crate::category::CategoryData;
use crate::factor::Embedding;
use crate::groups::FiniteGroup;

/// Pointed fusion data `Vec(G)`: simples are group elements, fusion is the
/// group law, duals are inverses, Cartan is the identity. An associator
/// class is Grothendieck-invisible, so it is only carried as an opaque tag.
pub fn vec_of_group(g: &FiniteGroup) -> CategoryData {
    vec_of_group_with_omega(g, None)
}

pub fn vec_of_group_with_omega(g: &FiniteGroup, omega_class: Option<String>) -> CategoryData {
    let n = g.order();
    let mut fusion = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            fusion.insert((g.mul(a, b), a, b), 1);
        }
    }
    let mut cartan = vec![vec![0u64; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 1;
    }
    CategoryData {
        simples: g.labels().to_vec(),
        unit: g.identity(),
        dual: (0..n).map(|x| g.inverse(x)).collect(),
        fusion,
        cartan,
        dual_d: None,
        omega_class,
    }
}

/// `Rep(Z/p)` in characteristic `p`: one simple, trivial fusion, Cartan
/// `[p]` (the projective cover of the unit is the regular representation).
pub fn rep_zp_char_p(p: u64) -> Result<CategoryData, String> {
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    let mut fusion = BTreeMap::new();
    fusion.insert((0, 0, 0), 1);
    Ok(CategoryData {
        simples: vec!["1".to_string()],
        unit: 0,
        dual: vec![0],
        fusion,
        cartan: vec![vec![p]],
        dual_d: Some(vec![0]),
        omega_class: None,
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The smallest pointed nonsemisimple family at the Grothendieck level:
/// `Z/n` group fusion with the all-ones Cartan matrix. The all-ones Cartan
/// leaves `Y^D` underdetermined, so the builder supplies the Taft-family
/// shift `Y^D = χ^{1-i}` explicitly.
pub fn taft_like(n: usize) -> Result<CategoryData, String> {
    if n < 2 {
        return Err("taft_like requires n >= 2".to_string());
    }
    let mut fusion = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            fusion.insert(((a + b) % n, a, b), 1);
        }
    }
    Ok(CategoryData {
        simples: (0..n).map(|i| format!("chi^{i}")).collect(),
        unit: 0,
        dual: (0..n).map(|i| (n - i) % n).collect(),
        fusion,
        cartan: vec![vec![1u64; n]; n],
        dual_d: Some((0..n).map(|i| (n + 1 - i) % n).collect()),
        omega_class: None,
    })
}

/// Deligne product: simples are pairs `(X, Y)` indexed `X·|C| + Y`, fusion
/// and duality act componentwise, the Cartan matrix is the Kronecker
/// product. Also returns the two canonical embeddings `X ↦ (X, 1)` and
/// `Y ↦ (1, Y)`.
pub fn deligne_product(a: &CategoryData, c: &CategoryData) -> (CategoryData, Embedding, Embedding) {
    let (na, nc) = (a.n(), c.n());
    let n = na * nc;
    let idx = |x: usize, y: usize| x * nc + y;
    let mut fusion = BTreeMap::new();
    for (&(xa, ya, za), &ma) in &a.fusion {
        for (&(xc, yc, zc), &mc) in &c.fusion {
            fusion.insert((idx(xa, xc), idx(ya, yc), idx(za, zc)), ma * mc);
        }
    }
    let mut cartan = vec![vec![0u64; n]; n];
    for xa in 0..na {
        for xc in 0..nc {
            for ya in 0..na {
                for yc in 0..nc {
                    cartan[idx(xa, xc)][idx(ya, yc)] = a.cartan[xa][ya] * c.cartan[xc][yc];
                }
            }
        }
    }
    let dual_d = match (&a.dual_d, &c.dual_d) {
        (Some(da), Some(dc)) => {
            let mut dd = vec![0usize; n];
            for xa in 0..na {
                for xc in 0..nc {
                    dd[idx(xa, xc)] = idx(da[xa], dc[xc]);
                }
            }
            Some(dd)
        }
        _ => None,
    };
    let mut simples = Vec::with_capacity(n);
    let mut dual = vec![0usize; n];
    for xa in 0..na {
        for xc in 0..nc {
            simples.push(format!("({},{})", a.simples[xa], c.simples[xc]));
            dual[idx(xa, xc)] = idx(a.dual[xa], c.dual[xc]);
        }
    }
    let product = CategoryData {
        simples,
        unit: idx(a.unit, c.unit),
        dual,
        fusion,
        cartan,
        dual_d,
        omega_class: None,
    };
    let emb_a = Embedding {
        source: a.clone(),
        target: product.clone(),
        map: (0..na).map(|x| idx(x, c.unit)).collect(),
    };
    let emb_c = Embedding {
        source: c.clone(),
        target: product.clone(),
        map: (0..nc).map(|y| idx(a.unit, y)).collect(),
    };
    (product, emb_a, emb_c)
}

/// Opposite (reversed tensor product): fusion arguments swap, the duality
/// permutation inverts, abelian data (Cartan matrix) is unchanged, and the
/// dual-of-projectives permutation inverts with it.
pub fn opposite(a: &CategoryData) -> CategoryData {
    let n = a.n();
    let mut fusion = BTreeMap::new();
    for (&(x, y, z), &m) in &a.fusion {
        fusion.insert((x, z, y), m);
    }
    let mut dual = vec![0usize; n];
    for (i, &d) in a.dual.iter().enumerate() {
        dual[d] = i;
    }
    let dual_d = a.dual_d.as_ref().map(|dd| {
        let mut inv = vec![0usize; n];
        for (i, &d) in dd.iter().enumerate() {
            inv[d] = i;
        }
        inv
    });
    CategoryData {
        simples: a.simples.clone(),
        unit: a.unit,
        dual,
        fusion,
        cartan: a.cartan.clone(),
        dual_d,
        omega_class: a.omega_class.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    #[test]
    fn builder_outputs_validate() {
        let s3 = groups::symmetric(3).unwrap();
        assert!(vec_of_group(&s3).validate().is_ok());
        for p in [2, 3, 5] {
            assert!(rep_zp_char_p(p).unwrap().validate().is_ok());
        }
        for n in 2..=6 {
            assert!(taft_like(n).unwrap().validate().is_ok());
        }
    }

    #[test]
    fn rep_zp_rejects_composite() {
        assert!(rep_zp_char_p(4).is_err());
        assert!(rep_zp_char_p(1).is_err());
    }

    #[test]
    fn deligne_with_trivial_factor_has_same_shape() {
        let triv = vec_of_group(&groups::cyclic(1).unwrap());
        let fib = crate::category::CategoryData {
            simples: vec!["1".into(), "tau".into()],
            unit: 0,
            dual: vec![0, 1],
            fusion: [((0, 0, 0), 1), ((1, 0, 1), 1), ((1, 1, 0), 1), ((0, 1, 1), 1), ((1, 1, 1), 1)]
                .into_iter()
                .collect(),
            cartan: vec![vec![1, 0], vec![0, 1]],
            dual_d: None,
            omega_class: None,
        };
        let (prod, _, _) = deligne_product(&fib, &triv);
        assert_eq!(prod.n(), fib.n());
        assert_eq!(prod.fusion.len(), fib.fusion.len());
        assert!(prod.validate().is_ok());
    }

    #[test]
    fn opposite_is_an_involution_and_validates() {
        let s3 = groups::symmetric(3).unwrap();
        for data in [vec_of_group(&s3), taft_like(3).unwrap(), rep_zp_char_p(2).unwrap()] {
            let op = opposite(&data);
            assert!(op.validate().is_ok());
            assert_eq!(opposite(&op), data);
        }
    }

    #[test]
    fn abelian_vec_opposite_is_identity() {
        let z6 = groups::cyclic(6).unwrap();
        let data = vec_of_group(&z6);
        assert_eq!(opposite(&data), data);
    }
}
