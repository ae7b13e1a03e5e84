//! Grothendieck-level data of a finite tensor category and its arithmetic.
//!
//! A [`CategoryData`] records simples, the fusion tensor `N^X_{Y,Z}` (the
//! multiplicity of the simple `X` in `Y ⊗ Z`), the duality permutation and
//! the Cartan matrix `C[X][Y]` (multiplicity of `Y` in the projective cover
//! `P(X)`). All operations are pure functions of this data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Grothendieck-level description of a finite tensor category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryData {
    /// Ordered labels of the simple objects.
    pub simples: Vec<String>,
    /// Index of the unit object.
    pub unit: usize,
    /// Right-dual permutation `X ↦ X*`; the left dual is its inverse.
    pub dual: Vec<usize>,
    /// Sparse fusion tensor: `(X, Y, Z) ↦ N^X_{Y,Z}`, zero entries omitted.
    pub fusion: BTreeMap<(usize, usize, usize), u64>,
    /// Cartan matrix: `cartan[X][Y]` = multiplicity of `Y` in `P(X)`.
    pub cartan: Vec<Vec<u64>>,
    /// Optional permutation `Y ↦ Y^D` with `[P(Y)*] = [P(Y^D)]`, supplied
    /// when the Cartan data does not determine it.
    pub dual_d: Option<Vec<usize>>,
    /// Opaque associator-class tag carried along by builders and
    /// serialization; never interpreted by any operation here.
    pub omega_class: Option<String>,
}

/// Class of an object in the Grothendieck ring: multiplicities over simples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrVector {
    pub coeffs: Vec<u64>,
}

impl GrVector {
    pub fn zero(n: usize) -> Self {
        GrVector { coeffs: vec![0; n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = GrVector::zero(n);
        v.coeffs[i] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the single nonzero coefficient when the class is a simple.
    pub fn as_basis_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.coeffs.iter().enumerate() {
            match (c, found) {
                (0, _) => {}
                (1, None) => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Class of a (virtual) projective object: rational multiplicities of the
/// indecomposable projectives `P(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Vector {
    pub mults: Vec<BigRational>,
}

impl K0Vector {
    pub fn from_integers(v: &[u64]) -> Self {
        K0Vector { mults: v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect() }
    }

    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.mults.iter().all(|m| m.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.mults.iter().all(|m| !m.is_negative())
    }

    /// Image in the Grothendieck ring: `mults · Cartan` as a row vector.
    pub fn gr_image(&self, data: &CategoryData) -> Vec<BigRational> {
        let n = data.simples.len();
        let mut out = vec![BigRational::zero(); n];
        for (x, m) in self.mults.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for y in 0..n {
                let c = data.cartan[x][y];
                if c != 0 {
                    out[y] += m * BigRational::from(BigInt::from(c));
                }
            }
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simple index {index} out of range for {n} simples")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dual projective data is ambiguous for simple {y}: candidates {candidates:?}")]
    AmbiguousDualD { y: usize, candidates: Vec<usize> },
    #[error("supplied dualD is inconsistent at simple {y}")]
    InconsistentDualD { y: usize },
    #[error("no simple matches the dual of the projective class of {y}")]
    NoDualDMatch { y: usize },
    #[error("Cartan system has no unique rational solution for this class")]
    SingularCartan,
    #[error("K0 vector has a non-integral entry at {index}")]
    NonIntegralK0 { index: usize },
    #[error("arithmetic overflow in Grothendieck arithmetic")]
    Overflow,
}

/// Outcome of inverting the Cartan relation for a Grothendieck class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectiveDecomposition {
    /// Unique solution with nonnegative integer entries: the class of the
    /// projective object `⊕ m_X P(X)`.
    Projective(K0Vector),
    /// Unique rational solution that is negative or non-integral somewhere,
    /// so the input is not the class of a projective object.
    NotProjectiveClass(K0Vector),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Shape,
    UnitLaw,
    Associativity,
    DualitySymmetry,
    CartanDiagonal,
    ProjectiveDecomposition,
    DualDMismatch,
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ViolationKind::Shape => "shape",
            ViolationKind::UnitLaw => "unit-law",
            ViolationKind::Associativity => "associativity",
            ViolationKind::DualitySymmetry => "duality-symmetry",
            ViolationKind::CartanDiagonal => "cartan-diagonal",
            ViolationKind::ProjectiveDecomposition => "projective-decomposition",
            ViolationKind::DualDMismatch => "duald-mismatch",
        };
        f.write_str(s)
    }
}

/// One failed invariant with the simple indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            return write!(f, "OK");
        }
        for v in &self.violations {
            writeln!(f, "violation: {} at {:?}", v.kind, v.witness)?;
        }
        Ok(())
    }
}

impl CategoryData {
    pub fn n(&self) -> usize {
        self.simples.len()
    }

    /// Fusion multiplicity `N^X_{Y,Z}`.
    #[inline]
    pub fn fusion_mult(&self, x: usize, y: usize, z: usize) -> u64 {
        self.fusion.get(&(x, y, z)).copied().unwrap_or(0)
    }

    /// Left dual `*X`, the inverse of the dual permutation.
    pub fn left_dual(&self, x: usize) -> usize {
        self.dual.iter().position(|&d| d == x).expect("dual is a permutation")
    }

    fn left_dual_table(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n()];
        for (i, &d) in self.dual.iter().enumerate() {
            inv[d] = i;
        }
        inv
    }

    /// Left-multiplication matrix of `[X]`: entry `[Z][Y] = N^Z_{X,Y}`.
    pub fn fusion_matrix(&self, x: usize) -> Result<Vec<Vec<u64>>, CategoryError> {
        let n = self.n();
        if x >= n {
            return Err(CategoryError::IndexOutOfRange { index: x, n });
        }
        let mut m = vec![vec![0u64; n]; n];
        for (&(z, xx, y), &mult) in &self.fusion {
            if xx == x {
                m[z][y] = mult;
            }
        }
        Ok(m)
    }

    /// Sparse left-multiplication matrices for all simples:
    /// `mats[x]` holds rows `z ↦ [(y, N^z_{x,y})]`.
    fn sparse_fusion_matrices(&self) -> Vec<Vec<Vec<(usize, u64)>>> {
        let n = self.n();
        let mut mats = vec![vec![Vec::new(); n]; n];
        for (&(z, x, y), &m) in &self.fusion {
            mats[x][z].push((y, m));
        }
        mats
    }

    /// Product in the Grothendieck ring, bilinear over the fusion tensor.
    pub fn gr_product(&self, v: &GrVector, w: &GrVector) -> Result<GrVector, CategoryError> {
        let n = self.n();
        if v.len() != n {
            return Err(CategoryError::DimensionMismatch { expected: n, got: v.len() });
        }
        if w.len() != n {
            return Err(CategoryError::DimensionMismatch { expected: n, got: w.len() });
        }
        let mut out = vec![0u128; n];
        for (&(x, y, z), &m) in &self.fusion {
            let (vy, wz) = (v.coeffs[y], w.coeffs[z]);
            if vy == 0 || wz == 0 {
                continue;
            }
            let term = (vy as u128)
                .checked_mul(wz as u128)
                .and_then(|t| t.checked_mul(m as u128))
                .ok_or(CategoryError::Overflow)?;
            out[x] = out[x].checked_add(term).ok_or(CategoryError::Overflow)?;
        }
        let coeffs = out
            .into_iter()
            .map(|c| u64::try_from(c).map_err(|_| CategoryError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GrVector { coeffs })
    }

    /// Grothendieck product on real-weighted classes (same bilinear rule).
    pub fn gr_product_f64(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(v.len(), n);
        assert_eq!(w.len(), n);
        let mut out = vec![0.0; n];
        for (&(x, y, z), &m) in &self.fusion {
            if v[y] != 0.0 && w[z] != 0.0 {
                out[x] += v[y] * w[z] * m as f64;
            }
        }
        out
    }

    /// Grothendieck class of `P(X)` as a row of the Cartan matrix.
    pub fn projective_class(&self, x: usize) -> GrVector {
        GrVector { coeffs: self.cartan[x].clone() }
    }

    /// The simple `Y^D` with `[P(Y)*] = [P(Y^D)]`.
    ///
    /// Computed from the Cartan data when unique; a supplied `dual_d`
    /// permutation is consistency-checked and returned.
    pub fn dual_d_of(&self, y: usize) -> Result<usize, CategoryError> {
        let n = self.n();
        if y >= n {
            return Err(CategoryError::IndexOutOfRange { index: y, n });
        }
        let left = self.left_dual_table();
        // Dualized class of P(Y): entry at V is cartan[y][*V].
        let want: Vec<u64> = (0..n).map(|v| self.cartan[y][left[v]]).collect();
        if let Some(dd) = &self.dual_d {
            let z = dd[y];
            if self.cartan[z] == want {
                return Ok(z);
            }
            return Err(CategoryError::InconsistentDualD { y });
        }
        let candidates: Vec<usize> = (0..n).filter(|&z| self.cartan[z] == want).collect();
        match candidates.len() {
            0 => Err(CategoryError::NoDualDMatch { y }),
            1 => Ok(candidates[0]),
            _ => Err(CategoryError::AmbiguousDualD { y, candidates }),
        }
    }

    /// Inverts `m · Cartan = v` over the exact rationals.
    pub fn decompose_projective(
        &self,
        v: &GrVector,
    ) -> Result<ProjectiveDecomposition, CategoryError> {
        let n = self.n();
        if v.len() != n {
            return Err(CategoryError::DimensionMismatch { expected: n, got: v.len() });
        }
        // m · C = v  <=>  Cᵀ mᵀ = vᵀ.
        let mut ct = crate::linalg::IntMat::zeros(n, n);
        for x in 0..n {
            for y in 0..n {
                if self.cartan[x][y] != 0 {
                    ct.set(y, x, BigInt::from(self.cartan[x][y]));
                }
            }
        }
        let ech = crate::linalg::column_echelon(ct, true);
        if ech.rank() < n {
            return Err(CategoryError::SingularCartan);
        }
        let b: Vec<BigInt> = v.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let sol = ech.solve_rational(&b).ok_or(CategoryError::SingularCartan)?;
        let k0 = K0Vector { mults: sol };
        if k0.is_integral() && k0.is_nonnegative() {
            Ok(ProjectiveDecomposition::Projective(k0))
        } else {
            Ok(ProjectiveDecomposition::NotProjectiveClass(k0))
        }
    }

    /// `dim Hom(⊕ p_X P(X), M)` for `M` with class `m`: the pairing
    /// `Σ p[X] · m[X]`. Requires integral `p`.
    pub fn hom_from_projective(&self, p: &K0Vector, m: &GrVector) -> Result<u64, CategoryError> {
        let n = self.n();
        if p.len() != n {
            return Err(CategoryError::DimensionMismatch { expected: n, got: p.len() });
        }
        if m.len() != n {
            return Err(CategoryError::DimensionMismatch { expected: n, got: m.len() });
        }
        let mut acc = BigInt::zero();
        for (x, q) in p.mults.iter().enumerate() {
            if !q.is_integer() {
                return Err(CategoryError::NonIntegralK0 { index: x });
            }
            acc += q.to_integer() * BigInt::from(m.coeffs[x]);
        }
        acc.to_u64().ok_or(CategoryError::Overflow)
    }

    /// Structural sanity of index ranges and permutations; these are
    /// preconditions for the axiom checks below.
    pub fn shape_violations(&self) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        let bad = |witness: Vec<usize>| Violation { kind: ViolationKind::Shape, witness };
        if n == 0 || self.unit >= n {
            out.push(bad(vec![self.unit]));
        }
        if self.dual.len() != n || !is_permutation(&self.dual) {
            out.push(bad(vec![]));
        }
        if let Some(dd) = &self.dual_d {
            if dd.len() != n || !is_permutation(dd) {
                out.push(bad(vec![]));
            }
        }
        if self.cartan.len() != n || self.cartan.iter().any(|row| row.len() != n) {
            out.push(bad(vec![]));
        }
        for &(x, y, z) in self.fusion.keys() {
            if x >= n || y >= n || z >= n {
                out.push(bad(vec![x, y, z]));
                break;
            }
        }
        out
    }

    /// Checks all data axioms and returns every violated invariant.
    pub fn validate(&self) -> ValidationReport {
        self.validate_impl(false)
    }

    /// Early-exit variant of [`validate`](Self::validate) for bulk
    /// rejection tests.
    pub fn quick_valid(&self) -> bool {
        self.validate_impl(true).is_ok()
    }

    fn validate_impl(&self, stop_early: bool) -> ValidationReport {
        let mut report = ValidationReport { violations: self.shape_violations() };
        if !report.is_ok() {
            return report;
        }
        let n = self.n();
        let unit = self.unit;

        macro_rules! push {
            ($kind:expr, $wit:expr) => {
                report.violations.push(Violation { kind: $kind, witness: $wit });
                if stop_early {
                    return report;
                }
            };
        }

        // Unit laws: N^X_{1,Y} = δ_{X,Y} and N^X_{Y,1} = δ_{X,Y}.
        for x in 0..n {
            if self.fusion_mult(x, unit, x) != 1 {
                push!(ViolationKind::UnitLaw, vec![x, unit, x]);
            }
            if self.fusion_mult(x, x, unit) != 1 {
                push!(ViolationKind::UnitLaw, vec![x, x, unit]);
            }
        }
        for (&(x, y, z), &m) in &self.fusion {
            if m == 0 {
                continue;
            }
            if (y == unit && x != z) || (z == unit && x != y) {
                push!(ViolationKind::UnitLaw, vec![x, y, z]);
            }
        }

        // Duality: N^1_{X,Y} = δ_{Y,X*} and N^Z_{X,Y} = N^{Z*}_{Y*,X*}.
        for x in 0..n {
            if self.fusion_mult(unit, x, self.dual[x]) != 1 {
                push!(ViolationKind::DualitySymmetry, vec![unit, x, self.dual[x]]);
            }
        }
        for (&(z, x, y), &m) in &self.fusion {
            if z == unit && y != self.dual[x] && m != 0 {
                push!(ViolationKind::DualitySymmetry, vec![z, x, y]);
            }
            let mirrored = self.fusion_mult(self.dual[z], self.dual[y], self.dual[x]);
            if mirrored != m {
                push!(ViolationKind::DualitySymmetry, vec![z, x, y]);
            }
        }

        // Associativity via the left regular representation:
        // N_X · N_Y = Σ_W N^W_{X,Y} · N_W for all X, Y.
        let mats = self.sparse_fusion_matrices();
        'assoc: for x in 0..n {
            for y in 0..n {
                let lhs = sparse_matmul(&mats[x], &mats[y], n);
                let mut rhs = vec![vec![0u64; n]; n];
                for w in 0..n {
                    let c = self.fusion_mult(w, x, y);
                    if c == 0 {
                        continue;
                    }
                    for (z, row) in mats[w].iter().enumerate() {
                        for &(v, m) in row {
                            rhs[z][v] += c * m;
                        }
                    }
                }
                if lhs != rhs {
                    push!(ViolationKind::Associativity, vec![x, y]);
                    continue 'assoc;
                }
            }
        }

        // Cartan diagonal: P(X) covers X.
        for x in 0..n {
            if self.cartan[x][x] < 1 {
                push!(ViolationKind::CartanDiagonal, vec![x]);
            }
        }

        // Projective decomposition: [Y ⊗ P(X)] = Σ_Z N^X_{*Y,Z} [P(Z)].
        let left = self.left_dual_table();
        for x in 0..n {
            for y in 0..n {
                let mut lhs = vec![0u64; n];
                for (z, row) in mats[y].iter().enumerate() {
                    for &(w, m) in row {
                        lhs[z] += m * self.cartan[x][w];
                    }
                }
                let mut rhs = vec![0u64; n];
                for z in 0..n {
                    let c = self.fusion_mult(x, left[y], z);
                    if c == 0 {
                        continue;
                    }
                    for (zp, r) in rhs.iter_mut().enumerate() {
                        *r += c * self.cartan[z][zp];
                    }
                }
                if lhs != rhs {
                    push!(ViolationKind::ProjectiveDecomposition, vec![x, y]);
                }
            }
        }

        // Supplied dualD must match the dualized Cartan rows.
        if let Some(dd) = &self.dual_d {
            for y in 0..n {
                let want: Vec<u64> = (0..n).map(|v| self.cartan[y][left[v]]).collect();
                if self.cartan[dd[y]] != want {
                    push!(ViolationKind::DualDMismatch, vec![y, dd[y]]);
                }
            }
        }

        report
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let n = p.len();
    let mut seen = vec![false; n];
    for &v in p {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Dense product of two sparse row-major matrices.
fn sparse_matmul(
    a: &[Vec<(usize, u64)>],
    b: &[Vec<(usize, u64)>],
    n: usize,
) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; n]; n];
    for (z, arow) in a.iter().enumerate() {
        for &(w, am) in arow {
            for &(v, bm) in &b[w] {
                out[z][v] += am * bm;
            }
        }
    }
    out
}
