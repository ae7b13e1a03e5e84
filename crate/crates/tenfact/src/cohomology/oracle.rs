//! Independent cross-check pipeline on the full (unnormalized) bar
//! complex. Same linear algebra, different complex: cells here index all
//! tuples, identity included, so cell counts, matrices and eliminations
//! share nothing with the normalized run except the SNF code itself.

use crate::groups::FiniteGroup;
use crate::linalg::{mod_p_rank, smith_normal_form, RANK_PRIMES};
use num_traits::{One, ToPrimitive};

use super::complex::BarComplex;
use super::{CohError, CohOptions};

/// Invariant factors of `H⁴(G,Z)` computed on the full bar complex.
pub fn h4_invariant_factors_unnormalized(
    g: &FiniteGroup,
    opts: &CohOptions,
) -> Result<Vec<u64>, CohError> {
    let n = g.order();
    if n > opts.order_limit {
        return Err(CohError::SizeLimit { order: n, limit: opts.order_limit });
    }
    let cx = BarComplex::full(g);
    let m4 = cx.cells(4);
    let d3 = cx.differential_dense(3);
    let snf = smith_normal_form(d3, false, false);
    let needed = m4 - snf.rank;
    let d4cols = cx.differential_sparse_cols(4);
    let mut certified = false;
    for &p in &RANK_PRIMES {
        let r = mod_p_rank(&d4cols, p);
        if r > needed {
            return Err(CohError::Internal("full-complex differentials are inconsistent"));
        }
        if r == needed {
            certified = true;
            break;
        }
    }
    if !certified {
        return Err(CohError::Internal("full-complex rank certificate failed"));
    }
    let mut factors = Vec::new();
    for d in &snf.diag {
        if !d.is_one() {
            factors
                .push(d.to_u64().ok_or(CohError::Internal("invariant factor does not fit in u64"))?);
        }
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;

    #[test]
    fn z2_and_z3_match_known_factors() {
        let opts = CohOptions::default();
        assert_eq!(h4_invariant_factors_unnormalized(&cyclic(2).unwrap(), &opts).unwrap(), vec![2]);
        assert_eq!(h4_invariant_factors_unnormalized(&cyclic(3).unwrap(), &opts).unwrap(), vec![3]);
    }
}
