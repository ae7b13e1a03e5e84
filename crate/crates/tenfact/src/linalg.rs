//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers so that kernel,
//! image and cokernel questions are decided exactly, with certificates.
//! The two workhorses are [`column_echelon`] (integer column reduction,
//! enough to solve `A x = b` over the integers or the rationals) and
//! [`smith_normal_form`] (invariant factors plus the transform pieces the
//! caller asks for). Transform matrices are stored transposed so that the
//! mirrored operations stay row-local.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense matrix over `BigInt`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(*v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = IntMat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to_entry(&mut self, r: usize, c: usize, delta: i64) {
        let idx = r * self.cols + c;
        self.data[idx] += delta;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for r in 0..self.rows {
            let base = r * self.cols;
            let mut acc = BigInt::zero();
            for c in 0..self.cols {
                let a = &self.data[base + c];
                if !a.is_zero() && !v[c].is_zero() {
                    acc += a * &v[c];
                }
            }
            out[r] = acc;
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            if !self.data[idx].is_zero() {
                let v = std::mem::take(&mut self.data[idx]);
                self.data[idx] = -v;
            }
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let idx = r * self.cols + j;
            if !self.data[idx].is_zero() {
                let v = std::mem::take(&mut self.data[idx]);
                self.data[idx] = -v;
            }
        }
    }

    /// `row[dst] += q * row[src]`
    fn row_add_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        debug_assert_ne!(dst, src);
        let c = self.cols;
        let (lo, hi) = if dst < src { (dst, src) } else { (src, dst) };
        let (head, tail) = self.data.split_at_mut(hi * c);
        let (a, b) = (&mut head[lo * c..lo * c + c], &mut tail[..c]);
        let (dst_row, src_row): (&mut [BigInt], &[BigInt]) =
            if dst < src { (a, b) } else { (b, a) };
        for (d, s) in dst_row.iter_mut().zip(src_row.iter()) {
            if !s.is_zero() {
                *d += q * s;
            }
        }
    }

    /// `col[dst] += q * col[src]`
    fn col_add_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        debug_assert_ne!(dst, src);
        for r in 0..self.rows {
            let s = self.data[r * self.cols + src].clone();
            if !s.is_zero() {
                self.data[r * self.cols + dst] += q * s;
            }
        }
    }
}

/// Column echelon form `A · V = E` where `V` is unimodular and the nonzero
/// columns of `E` have strictly increasing pivot rows.
///
/// The transform is stored transposed (`v_t`), so column `j` of `V` is row
/// `j` of `v_t`. Columns of `E` past `pivots.len()` are zero; the rows of
/// `v_t` past that point form a lattice basis of `ker A`.
pub struct Echelon {
    pub mat: IntMat,
    pub v_t: Option<IntMat>,
    /// `(row, col)` per pivot, rows strictly increasing, cols = 0,1,2,…
    pub pivots: Vec<(usize, usize)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel lattice basis of the original matrix (requires `v_t`).
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let v_t = self.v_t.as_ref().expect("echelon computed without transform");
        (self.rank()..self.mat.cols()).map(|j| v_t.row(j).to_vec()).collect()
    }

    /// Solves `E t = b` by forward substitution over the pivot columns.
    /// Returns `None` when `b` is not in the integer column span.
    fn solve_echelon_integer(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.mat.rows());
        let mut t = vec![BigInt::zero(); self.mat.cols()];
        for &(r, c) in &self.pivots {
            let mut val = b[r].clone();
            for j in 0..c {
                if !self.mat.at(r, j).is_zero() && !t[j].is_zero() {
                    val -= self.mat.at(r, j) * &t[j];
                }
            }
            let piv = self.mat.at(r, c);
            let (q, rem) = val.div_rem(piv);
            if !rem.is_zero() {
                return None;
            }
            t[c] = q;
        }
        // Residual over every row certifies the solution.
        for r in 0..self.mat.rows() {
            let mut acc = BigInt::zero();
            for &(_, c) in &self.pivots {
                if !t[c].is_zero() {
                    acc += self.mat.at(r, c) * &t[c];
                }
            }
            if acc != b[r] {
                return None;
            }
        }
        Some(t)
    }

    fn solve_echelon_rational(&self, b: &[BigInt]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.mat.rows());
        let mut t = vec![BigRational::zero(); self.mat.cols()];
        for &(r, c) in &self.pivots {
            let mut val = BigRational::from(b[r].clone());
            for j in 0..c {
                if !self.mat.at(r, j).is_zero() && !t[j].is_zero() {
                    val -= BigRational::from(self.mat.at(r, j).clone()) * &t[j];
                }
            }
            t[c] = val / BigRational::from(self.mat.at(r, c).clone());
        }
        for r in 0..self.mat.rows() {
            let mut acc = BigRational::zero();
            for &(_, c) in &self.pivots {
                if !t[c].is_zero() {
                    acc += BigRational::from(self.mat.at(r, c).clone()) * &t[c];
                }
            }
            if acc != BigRational::from(b[r].clone()) {
                return None;
            }
        }
        Some(t)
    }

    /// Solves `A x = b` over the integers, where `A` is the matrix this
    /// echelon form was computed from. `None` means no integral solution.
    pub fn solve_integer(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let t = self.solve_echelon_integer(b)?;
        Some(self.back_transform_int(&t))
    }

    /// Solves `A x = b` over the rationals (free variables set to zero).
    /// `None` means `b` is not in the rational column span.
    pub fn solve_rational(&self, b: &[BigInt]) -> Option<Vec<BigRational>> {
        let t = self.solve_echelon_rational(b)?;
        let v_t = self.v_t.as_ref().expect("echelon computed without transform");
        let mut x = vec![BigRational::zero(); self.mat.cols()];
        for (j, tj) in t.iter().enumerate() {
            if tj.is_zero() {
                continue;
            }
            for (xi, vij) in x.iter_mut().zip(v_t.row(j).iter()) {
                if !vij.is_zero() {
                    *xi += tj * BigRational::from(vij.clone());
                }
            }
        }
        Some(x)
    }

    fn back_transform_int(&self, t: &[BigInt]) -> Vec<BigInt> {
        let v_t = self.v_t.as_ref().expect("echelon computed without transform");
        let mut x = vec![BigInt::zero(); self.mat.cols()];
        for (j, tj) in t.iter().enumerate() {
            if tj.is_zero() {
                continue;
            }
            for (xi, vij) in x.iter_mut().zip(v_t.row(j).iter()) {
                if !vij.is_zero() {
                    *xi += tj * vij;
                }
            }
        }
        x
    }
}

/// Integer column reduction by unimodular column operations.
pub fn column_echelon(mut a: IntMat, want_v: bool) -> Echelon {
    let (m, n) = (a.rows(), a.cols());
    let mut v_t = want_v.then(|| IntMat::identity(n));
    let mut c = 0usize;
    let mut pivots = Vec::new();
    for r in 0..m {
        if c == n {
            break;
        }
        // Reduce the entries of row r in columns >= c to a single gcd.
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for j in c..n {
                let v = a.at(r, j);
                if v.is_zero() {
                    continue;
                }
                match &best {
                    Some((_, bv)) if bv.abs() <= v.abs() => {}
                    _ => best = Some((j, v.clone())),
                }
            }
            let Some((jp, piv)) = best else { break };
            a.swap_cols(c, jp);
            if let Some(vt) = v_t.as_mut() {
                vt.swap_rows(c, jp);
            }
            if piv.is_negative() {
                a.negate_col(c);
                if let Some(vt) = v_t.as_mut() {
                    vt.negate_row(c);
                }
            }
            let mut clean = true;
            for j in c + 1..n {
                if a.at(r, j).is_zero() {
                    continue;
                }
                let q = -(a.at(r, j) / a.at(r, c));
                a.col_add_mul(j, c, &q);
                if let Some(vt) = v_t.as_mut() {
                    vt.row_add_mul(j, c, &q);
                }
                if !a.at(r, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                pivots.push((r, c));
                c += 1;
                break;
            }
        }
    }
    Echelon { mat: a, v_t, pivots }
}

/// Smith normal form `U · A · V = D` with `d_1 | d_2 | …` nonnegative.
///
/// Transforms are optional and stored transposed: row `i` of `u_inv_t` is
/// column `i` of `U⁻¹`, and row `j` of `v_t` is column `j` of `V`. For the
/// cokernel of `A` this means row `i` of `u_inv_t` generates the `Z/d_i`
/// summand, and `A · (row i of v_t) = d_i · (row i of u_inv_t)`.
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u_inv_t: Option<IntMat>,
    pub v_t: Option<IntMat>,
}

pub fn smith_normal_form(mut a: IntMat, want_u_inv: bool, want_v: bool) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut u_inv_t = want_u_inv.then(|| IntMat::identity(m));
    let mut v_t = want_v.then(|| IntMat::identity(n));

    // Row op `row[i] += q * row[k]` on A mirrors on U⁻¹ as
    // `col[k] -= q * col[i]`, i.e. `row[k] -= q * row[i]` of u_inv_t.
    // Swapping rows i,j of A swaps columns i,j of U⁻¹ (rows of u_inv_t);
    // negating a row of A negates the matching column of U⁻¹.
    // Column ops on A apply to V identically (rows of v_t).

    let lim = m.min(n);
    let mut k = 0usize;
    while k < lim {
        let Some((pi, pj)) = find_pivot(&a, k) else { break };
        a.swap_rows(k, pi);
        if let Some(ut) = u_inv_t.as_mut() {
            ut.swap_rows(k, pi);
        }
        a.swap_cols(k, pj);
        if let Some(vt) = v_t.as_mut() {
            vt.swap_rows(k, pj);
        }
        loop {
            // Clear column k with row operations.
            let mut dirty = true;
            while dirty {
                dirty = false;
                if a.at(k, k).is_negative() {
                    a.negate_row(k);
                    if let Some(ut) = u_inv_t.as_mut() {
                        ut.negate_row(k);
                    }
                }
                for i in k + 1..m {
                    if a.at(i, k).is_zero() {
                        continue;
                    }
                    let q = -(a.at(i, k) / a.at(k, k));
                    a.row_add_mul(i, k, &q);
                    if let Some(ut) = u_inv_t.as_mut() {
                        let nq = -q;
                        ut.row_add_mul(k, i, &nq);
                    }
                    if !a.at(i, k).is_zero() {
                        // Remainder is a smaller pivot candidate.
                        a.swap_rows(k, i);
                        if let Some(ut) = u_inv_t.as_mut() {
                            ut.swap_rows(k, i);
                        }
                        dirty = true;
                    }
                }
            }
            // Clear row k with column operations (may reintroduce entries
            // in column k; loop until both are clean).
            let mut touched = false;
            for j in k + 1..n {
                if a.at(k, j).is_zero() {
                    continue;
                }
                let q = -(a.at(k, j) / a.at(k, k));
                a.col_add_mul(j, k, &q);
                if let Some(vt) = v_t.as_mut() {
                    vt.row_add_mul(j, k, &q);
                }
                if !a.at(k, j).is_zero() {
                    a.swap_cols(k, j);
                    if let Some(vt) = v_t.as_mut() {
                        vt.swap_rows(k, j);
                    }
                    touched = true;
                }
            }
            if touched || (k + 1..m).any(|i| !a.at(i, k).is_zero()) {
                continue;
            }
            // Divisibility pass: the pivot must divide the rest.
            match find_nondivisible(&a, k) {
                Some(i) => {
                    // Fold row i into row k and re-reduce.
                    a.row_add_mul(k, i, &BigInt::one());
                    if let Some(ut) = u_inv_t.as_mut() {
                        let neg = -BigInt::one();
                        ut.row_add_mul(i, k, &neg);
                    }
                }
                None => break,
            }
        }
        k += 1;
    }

    let mut diag = Vec::with_capacity(lim);
    let mut rank = 0;
    for i in 0..lim {
        let d = a.at(i, i).clone();
        if !d.is_zero() {
            rank = i + 1;
        }
        diag.push(d.abs());
    }
    diag.truncate(rank);
    Snf { diag, rank, u_inv_t, v_t }
}

fn find_pivot(a: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.at(i, j);
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if av.is_one() {
                return Some((i, j));
            }
            match &best {
                Some((_, _, bv)) if *bv <= av => {}
                _ => best = Some((i, j, av)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Returns a row index `i > k` holding an entry not divisible by `a[k][k]`.
fn find_nondivisible(a: &IntMat, k: usize) -> Option<usize> {
    let d = a.at(k, k);
    if d.is_one() {
        return None;
    }
    for i in k + 1..a.rows() {
        for j in k + 1..a.cols() {
            if !(a.at(i, j) % d).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// Rank of a sparse integer matrix over the prime field `F_p`.
///
/// Columns are given as sorted `(row, value)` lists. Used as a fast,
/// certifiable lower bound on the rational rank: `rank_p <= rank_Q` always.
pub fn mod_p_rank(cols: &[Vec<(usize, i64)>], p: u64) -> usize {
    let reduce = |v: i64| -> u64 {
        let r = v.rem_euclid(p as i64) as u64;
        r % p
    };
    // pivot row -> normalized (leading coefficient 1) sparse column
    let mut pivots: std::collections::HashMap<usize, Vec<(usize, u64)>> =
        std::collections::HashMap::new();
    let mut rank = 0usize;
    for col in cols {
        let mut v: Vec<(usize, u64)> = col
            .iter()
            .map(|&(r, x)| (r, reduce(x)))
            .filter(|&(_, x)| x != 0)
            .collect();
        v.sort_unstable_by_key(|&(r, _)| r);
        loop {
            let Some(&(lead, coeff)) = v.first() else { break };
            let Some(pivcol) = pivots.get(&lead) else {
                // Normalize to leading 1 and record as a new pivot.
                let inv = mod_inverse(coeff, p);
                for e in v.iter_mut() {
                    e.1 = mulmod(e.1, inv, p);
                }
                pivots.insert(lead, v);
                rank += 1;
                break;
            };
            v = sparse_axpy(&v, pivcol, p.wrapping_sub(coeff) % p, p);
        }
    }
    rank
}

/// `a + scale * b` over `F_p` on sorted sparse vectors.
fn sparse_axpy(a: &[(usize, u64)], b: &[(usize, u64)], scale: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        let (r, val) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            let e = a[i];
            i += 1;
            e
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let e = (b[j].0, mulmod(b[j].1, scale, p));
            j += 1;
            e
        } else {
            let e = (a[i].0, (a[i].1 + mulmod(b[j].1, scale, p)) % p);
            i += 1;
            j += 1;
            e
        };
        if val != 0 {
            out.push((r, val));
        }
    }
    out
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p is prime.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Primes used for modular rank certificates.
pub const RANK_PRIMES: [u64; 4] = [2_147_483_629, 2_147_483_587, 2_147_483_563, 1_073_741_789];

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(rows)
    }

    #[test]
    fn snf_diagonalizes_known_matrix() {
        // SNF of [[2,4,4],[-6,6,12],[10,-4,-16]] is diag(2,6,12).
        let a = mat(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let snf = smith_normal_form(a, false, false);
        let d: Vec<i64> = snf.diag.iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn snf_transforms_certify_cokernel_generators() {
        let a = mat(&[vec![2, 0], vec![0, 3], vec![0, 0]]);
        let snf = smith_normal_form(a.clone(), true, true);
        let ut = snf.u_inv_t.as_ref().unwrap();
        let vt = snf.v_t.as_ref().unwrap();
        for (i, d) in snf.diag.iter().enumerate() {
            // A * (col i of V) = d_i * (col i of U⁻¹)
            let w = vt.row(i).to_vec();
            let lhs = a.mul_vec(&w);
            let rhs: Vec<BigInt> = ut.row(i).iter().map(|z| z * d).collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn echelon_solves_integer_systems() {
        let a = mat(&[vec![2, 1], vec![0, 3], vec![4, 1]]);
        let ech = column_echelon(a.clone(), true);
        assert_eq!(ech.rank(), 2);
        let b: Vec<BigInt> = [7i64, 9, 11].iter().map(|&v| BigInt::from(v)).collect();
        let x = ech.solve_integer(&b).expect("solvable");
        assert_eq!(a.mul_vec(&x), b);
        // 2x + y = 1, 3y = 1 has no integer solution.
        let b2: Vec<BigInt> = [1i64, 1, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert!(ech.solve_integer(&b2).is_none());
        let xr = ech.solve_rational(&b2);
        // Rationally solvable only if consistent with the third row.
        // x = 1/3, y = 1/3 gives row3 = 4/3 + 1/3 = 5/3 != 1: inconsistent.
        assert!(xr.is_none());
    }

    #[test]
    fn echelon_kernel_basis_annihilates() {
        let a = mat(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let ech = column_echelon(a.clone(), true);
        assert_eq!(ech.rank(), 1);
        let basis = ech.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in basis {
            assert!(a.mul_vec(&v).iter().all(|z| z.is_zero()));
        }
    }

    #[test]
    fn mod_p_rank_matches_small_cases() {
        let cols = vec![
            vec![(0usize, 1i64), (1, 2)],
            vec![(0, 2), (1, 4)],
            vec![(2, 5)],
        ];
        assert_eq!(mod_p_rank(&cols, RANK_PRIMES[0]), 2);
    }
}
