//! Bar-complex cell bookkeeping and differential matrices.
//!
//! Cochains in degree `n` live on tuples of group elements. The normalized
//! complex indexes only tuples of non-identity elements (`(|G|-1)^n` cells;
//! values on tuples containing the identity are implicitly zero), which is
//! what makes degree five tractable. The full complex (`|G|^n` cells) is
//! the independent cross-check pipeline.

use crate::groups::FiniteGroup;
use crate::linalg::IntMat;

pub struct BarComplex<'a> {
    group: &'a FiniteGroup,
    /// Element indices usable in tuple positions.
    letters: Vec<usize>,
    /// Element index -> position in `letters` (None for the identity in
    /// the normalized complex).
    letter_pos: Vec<Option<usize>>,
}

impl<'a> BarComplex<'a> {
    pub fn normalized(group: &'a FiniteGroup) -> Self {
        let letters: Vec<usize> = (0..group.order()).filter(|&x| x != group.identity()).collect();
        Self::with_letters(group, letters)
    }

    pub fn full(group: &'a FiniteGroup) -> Self {
        Self::with_letters(group, (0..group.order()).collect())
    }

    fn with_letters(group: &'a FiniteGroup, letters: Vec<usize>) -> Self {
        let mut letter_pos = vec![None; group.order()];
        for (i, &e) in letters.iter().enumerate() {
            letter_pos[e] = Some(i);
        }
        BarComplex { group, letters, letter_pos }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn cells(&self, degree: usize) -> usize {
        self.letter_count().pow(degree as u32)
    }

    /// Decodes a cell index into its tuple of group-element indices.
    pub fn tuple_of_cell(&self, degree: usize, mut idx: usize) -> Vec<usize> {
        let base = self.letter_count();
        let mut out = vec![0usize; degree];
        for slot in (0..degree).rev() {
            out[slot] = self.letters[idx % base];
            idx /= base;
        }
        out
    }

    /// Encodes a tuple; `None` when a coordinate is not a letter (that is,
    /// the tuple is degenerate in the normalized complex).
    pub fn cell_of_tuple(&self, tuple: &[usize]) -> Option<usize> {
        let base = self.letter_count();
        let mut idx = 0usize;
        for &e in tuple {
            idx = idx * base + self.letter_pos[e]?;
        }
        Some(idx)
    }

    /// Signed faces of a `(degree+1)`-tuple under the inhomogeneous bar
    /// differential with trivial coefficients.
    pub fn faces(&self, tuple: &[usize]) -> Vec<(i64, Vec<usize>)> {
        let n = tuple.len() - 1; // degree of the source cochain
        let mut out = Vec::with_capacity(n + 2);
        out.push((1, tuple[1..].to_vec()));
        for k in 0..n {
            let mut face = Vec::with_capacity(n);
            face.extend_from_slice(&tuple[..k]);
            face.push(self.group.mul(tuple[k], tuple[k + 1]));
            face.extend_from_slice(&tuple[k + 2..]);
            let sign = if (k + 1) % 2 == 1 { -1 } else { 1 };
            out.push((sign, face));
        }
        let sign_last = if (n + 1) % 2 == 1 { -1 } else { 1 };
        out.push((sign_last, tuple[..n].to_vec()));
        out
    }

    /// Matrix of `d : C^degree -> C^{degree+1}` (rows index the higher
    /// degree).
    pub fn differential_dense(&self, degree: usize) -> IntMat {
        let rows = self.cells(degree + 1);
        let cols = self.cells(degree);
        let mut m = IntMat::zeros(rows, cols);
        for row in 0..rows {
            let tuple = self.tuple_of_cell(degree + 1, row);
            for (sign, face) in self.faces(&tuple) {
                if let Some(col) = self.cell_of_tuple(&face) {
                    m.add_to_entry(row, col, sign);
                }
            }
        }
        m
    }

    /// Column-major sparse form of the same matrix, for modular rank
    /// certificates on the large degree.
    pub fn differential_sparse_cols(&self, degree: usize) -> Vec<Vec<(usize, i64)>> {
        let rows = self.cells(degree + 1);
        let cols = self.cells(degree);
        let mut out: Vec<Vec<(usize, i64)>> = vec![Vec::new(); cols];
        for row in 0..rows {
            let tuple = self.tuple_of_cell(degree + 1, row);
            for (sign, face) in self.faces(&tuple) {
                if let Some(col) = self.cell_of_tuple(&face) {
                    out[col].push((row, sign));
                }
            }
        }
        for col in out.iter_mut() {
            col.sort_unstable_by_key(|&(r, _)| r);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *col = merged;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    #[test]
    fn cell_roundtrip() {
        let g = groups::cyclic(4).unwrap();
        let cx = BarComplex::normalized(&g);
        assert_eq!(cx.letter_count(), 3);
        for degree in 1..=3 {
            for idx in 0..cx.cells(degree) {
                let t = cx.tuple_of_cell(degree, idx);
                assert_eq!(cx.cell_of_tuple(&t), Some(idx));
            }
        }
        assert_eq!(cx.cell_of_tuple(&[0, 1]), None, "identity is degenerate");
    }

    #[test]
    fn differential_squares_to_zero_dense() {
        for g in [groups::cyclic(3).unwrap(), groups::symmetric(3).unwrap()] {
            for normalized in [true, false] {
                let cx = if normalized {
                    BarComplex::normalized(&g)
                } else {
                    BarComplex::full(&g)
                };
                for degree in 1..=2 {
                    let d1 = cx.differential_dense(degree);
                    let d2 = cx.differential_dense(degree + 1);
                    // (d2 ∘ d1) x = 0 for all basis x
                    for col in 0..d1.cols() {
                        let v = d1.col_vec(col);
                        let w = d2.mul_vec(&v);
                        assert!(w.iter().all(num_traits::Zero::is_zero));
                    }
                }
            }
        }
    }
}
