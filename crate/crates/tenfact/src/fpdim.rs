//! Frobenius–Perron dimensions.
//!
//! The FP character is the unique positive character of the Grothendieck
//! ring. With the convention `N^Z_{X,Y} = [X ⊗ Y : Z]`, the character `d`
//! satisfies `dᵀ N_X = d(X) dᵀ` for every left-multiplication matrix
//! `N_X`, so it is the left Perron eigenvector of `M = Σ_X N_X`. Power
//! iteration on `Mᵀ` with the all-ones start converges because `M` has a
//! positive diagonal (the unit contributes the identity matrix).

use crate::category::{CategoryData, CategoryError, GrVector};
use thiserror::Error;

/// Tolerance used to decide integrality of dimensions numerically before
/// the exact integer confirmation.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// Default power-iteration tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Error, PartialEq)]
pub enum FpError {
    #[error("power iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("converged eigenvector has a nonpositive entry at {index}")]
    Nonpositive { index: usize },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// Frobenius–Perron data of one category.
#[derive(Clone, Debug)]
pub struct FpProfile {
    /// FP dimension of each simple, normalized so `dims[unit] = 1`.
    pub dims: Vec<f64>,
    /// FP dimension of the category: `Σ_X dims[X] · FPdim(P(X))`.
    pub cat_dim: f64,
    /// The regular element `R = Σ FPdim(X)·P(X)` as real multiplicities of
    /// the indecomposable projectives; entry `X` equals `dims[X]`.
    pub regular: Vec<f64>,
    /// Tolerance the profile was computed with.
    pub tolerance: f64,
    /// Power-iteration steps taken.
    pub iterations: usize,
    /// Largest character-equation residual `|d_X d_Y - Σ N^Z_{X,Y} d_Z|`.
    pub residual: f64,
    /// Integer character when the dimensions are integers (confirmed by an
    /// exact check over the integers, not just numerically).
    pub exact_dims: Option<Vec<u64>>,
    /// Exact category dimension when `exact_dims` is present.
    pub exact_cat_dim: Option<u128>,
}

impl FpProfile {
    /// Gr-image of the regular element: `regular · Cartan`.
    pub fn regular_gr_image(&self, data: &CategoryData) -> Vec<f64> {
        let n = data.n();
        let mut out = vec![0.0; n];
        for (x, r) in self.regular.iter().enumerate() {
            for y in 0..n {
                let c = data.cartan[x][y];
                if c != 0 {
                    out[y] += r * c as f64;
                }
            }
        }
        out
    }

    /// FP dimension of the projective cover `P(X)`.
    pub fn projective_dim(&self, data: &CategoryData, x: usize) -> f64 {
        data.cartan[x].iter().zip(&self.dims).map(|(&c, d)| c as f64 * d).sum()
    }
}

/// Computes the FP character by power iteration at tolerance `tol`.
pub fn fp_character(data: &CategoryData, tol: f64) -> Result<FpProfile, FpError> {
    if !(tol > 0.0) {
        return Err(FpError::BadTolerance(tol));
    }
    let n = data.n();
    // Transposed action rows: step[y] lists (z, Σ_x N^z_{x,y}).
    let mut step: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    {
        let mut acc: std::collections::BTreeMap<(usize, usize), u64> = Default::default();
        for (&(z, _x, y), &m) in &data.fusion {
            *acc.entry((y, z)).or_insert(0) += m;
        }
        for ((y, z), m) in acc {
            step[y].push((z, m as f64));
        }
    }
    let mut v = vec![1.0f64; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut next = vec![0.0f64; n];
        for (y, terms) in step.iter().enumerate() {
            let mut acc = 0.0;
            for &(z, m) in terms {
                acc += m * v[z];
            }
            next[y] = acc;
        }
        let scale = next[data.unit];
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(FpError::Nonpositive { index: data.unit });
        }
        for x in next.iter_mut() {
            *x /= scale;
        }
        let diff = v.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = next;
        if diff <= tol {
            // Require the character equation itself to be met before
            // declaring convergence.
            let (residual, scale) = character_residual(data, &v);
            if residual <= tol * scale.max(1.0) {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(FpError::NoConvergence { iterations });
    }
    for (i, &d) in v.iter().enumerate() {
        if d <= tol {
            return Err(FpError::Nonpositive { index: i });
        }
    }
    let (residual, _) = character_residual(data, &v);
    let cat_dim = (0..n)
        .map(|x| v[x] * data.cartan[x].iter().zip(&v).map(|(&c, d)| c as f64 * d).sum::<f64>())
        .sum();
    let (exact_dims, exact_cat_dim) = confirm_integer_character(data, &v);
    Ok(FpProfile {
        regular: v.clone(),
        dims: v,
        cat_dim,
        tolerance: tol,
        iterations,
        residual,
        exact_dims,
        exact_cat_dim,
    })
}

fn character_residual(data: &CategoryData, d: &[f64]) -> (f64, f64) {
    let n = data.n();
    let mut prod = vec![0.0f64; n * n];
    for (&(z, x, y), &m) in &data.fusion {
        prod[x * n + y] += m as f64 * d[z];
    }
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            let target = d[x] * d[y];
            scale = scale.max(target.abs());
            worst = worst.max((prod[x * n + y] - target).abs());
        }
    }
    (worst, scale)
}

/// Numerical integrality at `INTEGRALITY_TOL`, then exact confirmation
/// that the rounded vector is a character over the integers.
fn confirm_integer_character(data: &CategoryData, d: &[f64]) -> (Option<Vec<u64>>, Option<u128>) {
    let n = data.n();
    let mut r = Vec::with_capacity(n);
    for &x in d {
        let rounded = x.round();
        if (x - rounded).abs() > INTEGRALITY_TOL || rounded < 1.0 {
            return (None, None);
        }
        r.push(rounded as u64);
    }
    if r[data.unit] != 1 {
        return (None, None);
    }
    let mut prod = vec![0u128; n * n];
    for (&(z, x, y), &m) in &data.fusion {
        prod[x * n + y] += m as u128 * r[z] as u128;
    }
    for x in 0..n {
        for y in 0..n {
            if prod[x * n + y] != r[x] as u128 * r[y] as u128 {
                return (None, None);
            }
        }
    }
    let cat: u128 = (0..n)
        .map(|x| {
            r[x] as u128
                * data.cartan[x]
                    .iter()
                    .zip(&r)
                    .map(|(&c, &dy)| c as u128 * dy as u128)
                    .sum::<u128>()
        })
        .sum();
    (Some(r), Some(cat))
}

/// FP dimension of an object class: `Σ dims[X] · v[X]`.
pub fn fpdim_object(profile: &FpProfile, v: &GrVector) -> Result<f64, FpError> {
    if v.len() != profile.dims.len() {
        return Err(FpError::Category(CategoryError::DimensionMismatch {
            expected: profile.dims.len(),
            got: v.len(),
        }));
    }
    Ok(profile.dims.iter().zip(&v.coeffs).map(|(d, &c)| d * c as f64).sum())
}

/// Report of the eigenvector equation `X·R = R·X = FPdim(X)·R` checked on
/// Gr-images for every simple `X`.
#[derive(Clone, Copy, Debug)]
pub struct EigenReport {
    pub max_deviation: f64,
}

pub fn eigen_equation_check(
    data: &CategoryData,
    profile: &FpProfile,
) -> Result<EigenReport, FpError> {
    let n = data.n();
    if profile.dims.len() != n {
        return Err(FpError::Category(CategoryError::DimensionMismatch {
            expected: n,
            got: profile.dims.len(),
        }));
    }
    let r = profile.regular_gr_image(data);
    let mut worst = 0.0f64;
    for x in 0..n {
        let mut ex = vec![0.0; n];
        ex[x] = 1.0;
        let left = data.gr_product_f64(&ex, &r);
        let right = data.gr_product_f64(&r, &ex);
        for z in 0..n {
            let want = profile.dims[x] * r[z];
            worst = worst.max((left[z] - want).abs());
            worst = worst.max((right[z] - want).abs());
        }
    }
    Ok(EigenReport { max_deviation: worst })
}

/// The four standard predicates of a category profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Predicates {
    /// Every simple is invertible: `[X]·[X*] = [1]` exactly.
    pub pointed: bool,
    /// Every simple has integer FP dimension (exactly confirmed).
    pub integral: bool,
    /// The category FP dimension is an integer.
    pub weakly_integral: bool,
    /// Semisimple at the level of this data: Cartan matrix is the identity.
    pub fusion: bool,
}

pub fn predicates(data: &CategoryData, profile: &FpProfile) -> Result<Predicates, FpError> {
    let n = data.n();
    let mut pointed = true;
    for x in 0..n {
        let p = data.gr_product(&GrVector::basis(n, x), &GrVector::basis(n, data.dual[x]))?;
        if p.as_basis_index() != Some(data.unit) {
            pointed = false;
            break;
        }
    }
    let integral = profile.exact_dims.is_some();
    let weakly_integral = if integral {
        true
    } else {
        (profile.cat_dim - profile.cat_dim.round()).abs() <= INTEGRALITY_TOL
    };
    let fusion = (0..n).all(|x| {
        data.cartan[x]
            .iter()
            .enumerate()
            .all(|(y, &c)| c == u64::from(x == y))
    });
    Ok(Predicates { pointed, integral, weakly_integral, fusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::groups;

    fn fibonacci() -> CategoryData {
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

    #[test]
    fn vec_group_dims_are_all_one() {
        let g = groups::symmetric(3).unwrap();
        let c = builders::vec_of_group(&g);
        let p = fp_character(&c, DEFAULT_TOL).unwrap();
        assert!(p.dims.iter().all(|&d| (d - 1.0).abs() < 1e-12));
        assert_eq!(p.exact_cat_dim, Some(6));
    }

    #[test]
    fn fibonacci_dimension_is_golden_ratio() {
        let c = fibonacci();
        let p = fp_character(&c, DEFAULT_TOL).unwrap();
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((p.dims[1] - phi).abs() < 1e-9);
        assert!(p.exact_dims.is_none());
        // FPdim([1] + [tau]) = 1 + phi = phi^2.
        let v = GrVector { coeffs: vec![1, 1] };
        assert!((fpdim_object(&p, &v).unwrap() - phi * phi).abs() < 1e-9);
    }

    #[test]
    fn rep_z2_char2_category_dimension() {
        let c = builders::rep_zp_char_p(2).unwrap();
        let p = fp_character(&c, DEFAULT_TOL).unwrap();
        assert_eq!(p.dims, vec![1.0]);
        assert_eq!(p.exact_cat_dim, Some(2));
    }

    #[test]
    fn eigen_equation_small_deviation() {
        let s3 = builders::vec_of_group(&groups::symmetric(3).unwrap());
        let p = fp_character(&s3, DEFAULT_TOL).unwrap();
        assert_eq!(eigen_equation_check(&s3, &p).unwrap().max_deviation, 0.0);

        let fib = fibonacci();
        let p = fp_character(&fib, DEFAULT_TOL).unwrap();
        assert!(eigen_equation_check(&fib, &p).unwrap().max_deviation < 1e-9);
    }

    #[test]
    fn predicate_table_matches_known_examples() {
        let vec_g = builders::vec_of_group(&groups::cyclic(4).unwrap());
        let p = fp_character(&vec_g, DEFAULT_TOL).unwrap();
        assert_eq!(
            predicates(&vec_g, &p).unwrap(),
            Predicates { pointed: true, integral: true, weakly_integral: true, fusion: true }
        );

        let fib = fibonacci();
        let p = fp_character(&fib, DEFAULT_TOL).unwrap();
        assert_eq!(
            predicates(&fib, &p).unwrap(),
            Predicates { pointed: false, integral: false, weakly_integral: false, fusion: true }
        );

        let taft = builders::taft_like(4).unwrap();
        let p = fp_character(&taft, DEFAULT_TOL).unwrap();
        assert_eq!(
            predicates(&taft, &p).unwrap(),
            Predicates { pointed: true, integral: true, weakly_integral: true, fusion: false }
        );
        assert_eq!(p.exact_cat_dim, Some(16));
    }
}
