//! Integral group cohomology in degree four, `H⁴(G,Z) ≅ H³(G,Q/Z)`.
//!
//! The group is computed from the normalized bar complex as the torsion of
//! `coker(d³)` by an exact Smith-normal-form pass. That equals
//! `ker d⁴ / im d³` because the cohomology of a finite group is finite in
//! positive degrees (`ker d⁴` is the saturation of `im d³`); a modular
//! rank computation on `d⁴` certifies the rank bookkeeping on every run,
//! and every emitted generator and torsion witness is re-verified through
//! the differential formula, independently of the matrix pipeline.
//!
//! All answers are characteristic-zero objects: this is `H³(G, Q/Z)`, not
//! its characteristic-`p` variant.

pub mod complex;
pub mod oracle;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::groups::{self, FiniteGroup, Subgroup};
use crate::linalg::{column_echelon, mod_p_rank, smith_normal_form, Echelon, IntMat, RANK_PRIMES};
use complex::BarComplex;

/// Orders up to this bound are guaranteed; larger ones are best-effort
/// behind an explicit limit raise.
pub const DEFAULT_ORDER_LIMIT: usize = 8;

pub const DEFAULT_MEMORY_LIMIT_MB: usize = 4096;

#[derive(Clone, Copy, Debug)]
pub struct CohOptions {
    pub order_limit: usize,
    pub memory_limit_mb: usize,
}

impl Default for CohOptions {
    fn default() -> Self {
        CohOptions { order_limit: DEFAULT_ORDER_LIMIT, memory_limit_mb: DEFAULT_MEMORY_LIMIT_MB }
    }
}

#[derive(Debug, Error)]
pub enum CohError {
    #[error("group order {order} exceeds the configured limit {limit}")]
    SizeLimit { order: usize, limit: usize },
    #[error("estimated workspace {needed_mb} MiB exceeds the limit {limit_mb} MiB")]
    MemoryLimit { needed_mb: usize, limit_mb: usize },
    #[error("input cochain is not a cocycle")]
    NotCocycle,
    #[error("cochain has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("cochain has {got} cells, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the given subgroups are not an exact factorization")]
    NotExactFactorization,
    #[error(transparent)]
    Group(#[from] groups::GroupError),
    #[error("internal certificate failure: {0}")]
    Internal(&'static str),
}

/// Integer cochain on the normalized bar complex: values on tuples of
/// non-identity elements; tuples containing the identity are implicitly 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntCochain {
    pub degree: usize,
    pub values: Vec<BigInt>,
}

impl IntCochain {
    pub fn zero(g: &FiniteGroup, degree: usize) -> Self {
        let cells = BarComplex::normalized(g).cells(degree);
        IntCochain { degree, values: vec![BigInt::zero(); cells] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        IntCochain { degree: self.degree, values: self.values.iter().map(|v| v * k).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        IntCochain {
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }

    /// Value on a tuple of element indices (0 on degenerate tuples).
    pub fn get(&self, g: &FiniteGroup, tuple: &[usize]) -> BigInt {
        assert_eq!(tuple.len(), self.degree);
        match BarComplex::normalized(g).cell_of_tuple(tuple) {
            Some(idx) => self.values[idx].clone(),
            None => BigInt::zero(),
        }
    }

    pub fn set(&mut self, g: &FiniteGroup, tuple: &[usize], value: BigInt) {
        let idx = BarComplex::normalized(g)
            .cell_of_tuple(tuple)
            .expect("cannot set a value on a degenerate tuple");
        self.values[idx] = value;
    }

    /// Nonzero entries as `(tuple, decimal value)` pairs.
    pub fn support_entries(&self, g: &FiniteGroup) -> Vec<(Vec<usize>, String)> {
        let cx = BarComplex::normalized(g);
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, v)| (cx.tuple_of_cell(self.degree, idx), v.to_string()))
            .collect()
    }
}

/// Exact `Q/Z`-valued 3-cochain (values are rationals in `[0, 1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QZCochain {
    pub values: Vec<BigRational>,
    /// All denominators divide this bound.
    pub denominator_bound: BigInt,
}

impl QZCochain {
    pub fn from_values(values: Vec<BigRational>) -> Self {
        let values: Vec<BigRational> = values.into_iter().map(|v| frac_mod_one(&v)).collect();
        let mut bound = BigInt::one();
        for v in &values {
            bound = bound.lcm(v.denom());
        }
        QZCochain { values, denominator_bound: bound }
    }

    pub fn zero(g: &FiniteGroup) -> Self {
        let cells = BarComplex::normalized(g).cells(3);
        QZCochain { values: vec![BigRational::zero(); cells], denominator_bound: BigInt::one() }
    }

    pub fn get(&self, g: &FiniteGroup, tuple: &[usize]) -> BigRational {
        assert_eq!(tuple.len(), 3);
        match BarComplex::normalized(g).cell_of_tuple(tuple) {
            Some(idx) => self.values[idx].clone(),
            None => BigRational::zero(),
        }
    }

    pub fn sub_mod_one(&self, other: &Self) -> Self {
        QZCochain::from_values(
            self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Nonzero entries as `(tuple, "p/q")` pairs.
    pub fn support_entries(&self, g: &FiniteGroup) -> Vec<(Vec<usize>, String)> {
        let cx = BarComplex::normalized(g);
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, v)| (cx.tuple_of_cell(3, idx), v.to_string()))
            .collect()
    }
}

fn frac_mod_one(v: &BigRational) -> BigRational {
    v - v.floor()
}

/// Normalized inhomogeneous bar differential with trivial coefficients:
/// `(dc)(g₁,…,g_{n+1}) = c(g₂,…) + Σ (-1)^i c(…, g_i g_{i+1}, …) + (-1)^{n+1} c(…, g_n)`.
pub fn bar_differential(g: &FiniteGroup, c: &IntCochain) -> Result<IntCochain, CohError> {
    let cx = BarComplex::normalized(g);
    let expected = cx.cells(c.degree);
    if c.values.len() != expected {
        return Err(CohError::LengthMismatch { expected, got: c.values.len() });
    }
    let out_cells = cx.cells(c.degree + 1);
    let mut values = vec![BigInt::zero(); out_cells];
    for (row, value) in values.iter_mut().enumerate() {
        let tuple = cx.tuple_of_cell(c.degree + 1, row);
        for (sign, face) in cx.faces(&tuple) {
            if let Some(col) = cx.cell_of_tuple(&face) {
                if sign > 0 {
                    *value += &c.values[col];
                } else {
                    *value -= &c.values[col];
                }
            }
        }
    }
    Ok(IntCochain { degree: c.degree + 1, values })
}

/// Same differential on an exact rational cochain. Used to push `Q/Z`
/// cocycles through the connecting map: the differential of any rational
/// lift of a `Q/Z` cocycle is integral.
pub fn rational_bar_differential(g: &FiniteGroup, degree: usize, values: &[BigRational]) -> Vec<BigRational> {
    let cx = BarComplex::normalized(g);
    assert_eq!(values.len(), cx.cells(degree));
    let out_cells = cx.cells(degree + 1);
    let mut out = vec![BigRational::zero(); out_cells];
    for (row, value) in out.iter_mut().enumerate() {
        let tuple = cx.tuple_of_cell(degree + 1, row);
        for (sign, face) in cx.faces(&tuple) {
            if let Some(col) = cx.cell_of_tuple(&face) {
                if sign > 0 {
                    *value += &values[col];
                } else {
                    *value -= &values[col];
                }
            }
        }
    }
    out
}

/// `H⁴(G,Z)` with explicit generator cocycles and torsion certificates.
pub struct CohomologyGroup {
    pub group: FiniteGroup,
    /// Invariant factors `d₁ | d₂ | …`, all > 1.
    pub invariant_factors: Vec<u64>,
    /// Degree-4 integral cocycles generating the summands `Z/dᵢ`.
    pub generators: Vec<IntCochain>,
    /// Degree-3 integral cochains with `d(wᵢ) = dᵢ · zᵢ`.
    pub torsion_witnesses: Vec<IntCochain>,
    /// Echelon form of the `d³` matrix, for exact coboundary membership.
    echelon3: Echelon,
    /// Echelon of `[generators | d³]`, for class coordinates.
    coords: Option<Echelon>,
}

impl CohomologyGroup {
    /// Order of the cohomology group.
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    fn check_degree4(&self, z: &IntCochain) -> Result<(), CohError> {
        if z.degree != 4 {
            return Err(CohError::DegreeMismatch { expected: 4, got: z.degree });
        }
        let expected = BarComplex::normalized(&self.group).cells(4);
        if z.values.len() != expected {
            return Err(CohError::LengthMismatch { expected, got: z.values.len() });
        }
        if !bar_differential(&self.group, z)?.is_zero() {
            return Err(CohError::NotCocycle);
        }
        Ok(())
    }

    /// Exact coboundary test over the integers. `Some(w)` returns an
    /// integral degree-3 witness with `d w = z`.
    pub fn is_trivial_class(&self, z: &IntCochain) -> Result<Option<IntCochain>, CohError> {
        self.check_degree4(z)?;
        Ok(self
            .echelon3
            .solve_integer(&z.values)
            .map(|w| IntCochain { degree: 3, values: w }))
    }

    /// Coordinates of the class of `z` with respect to the generators,
    /// reduced modulo the invariant factors.
    pub fn class_coordinates(&self, z: &IntCochain) -> Result<Vec<u64>, CohError> {
        self.check_degree4(z)?;
        let s = self.invariant_factors.len();
        if s == 0 {
            return Ok(Vec::new());
        }
        let coords = self.coords.as_ref().expect("coords echelon exists when generators do");
        let sol = coords
            .solve_integer(&z.values)
            .ok_or(CohError::Internal("cocycle does not decompose over the generators"))?;
        let mut out = Vec::with_capacity(s);
        for (i, &d) in self.invariant_factors.iter().enumerate() {
            let m = sol[i].mod_floor(&BigInt::from(d));
            out.push(m.to_u64().expect("reduced coordinate fits"));
        }
        Ok(out)
    }

    /// The cocycle `Σ coords[i] · zᵢ`.
    pub fn element_cocycle(&self, coords: &[u64]) -> IntCochain {
        assert_eq!(coords.len(), self.generators.len());
        let mut acc = IntCochain::zero(&self.group, 4);
        for (c, z) in coords.iter().zip(&self.generators) {
            if *c != 0 {
                let scaled = z.scaled(&BigInt::from(*c));
                acc =
                    IntCochain { degree: 4, values: acc.values.iter().zip(&scaled.values).map(|(a, b)| a + b).collect() };
            }
        }
        acc
    }

    /// A normalized `Q/Z`-valued 3-cocycle representing the class of `z`
    /// under `H³(G,Q/Z) ≅ H⁴(G,Z)`: an exact rational solution of
    /// `dc = z`, reduced modulo 1.
    pub fn omega_from_z(&self, z: &IntCochain) -> Result<QZCochain, CohError> {
        self.check_degree4(z)?;
        let sol = self
            .echelon3
            .solve_rational(&z.values)
            .ok_or(CohError::Internal("integral cocycle is not rationally a coboundary"))?;
        Ok(QZCochain::from_values(sol))
    }

    /// Degree-4 integral image of a `Q/Z` 3-cocycle under the connecting
    /// map: the bar differential of the rational lift.
    pub fn connecting_image(&self, omega: &QZCochain) -> Result<IntCochain, CohError> {
        connecting_image(&self.group, omega)
    }

    /// Whether two `Q/Z` 3-cocycles represent the same class: their
    /// difference maps to a trivial integral class.
    pub fn qz_classes_equal(&self, w1: &QZCochain, w2: &QZCochain) -> Result<bool, CohError> {
        let diff = w1.sub_mod_one(w2);
        let z = self.connecting_image(&diff)?;
        Ok(self.is_trivial_class(&z)?.is_some())
    }

    /// Kernel of the joint restriction to an exact factorization pair.
    pub fn classify_pointed(
        &self,
        g1: &Subgroup,
        g2: &Subgroup,
        opts: &CohOptions,
    ) -> Result<PointedClassification, CohError> {
        classify_pointed_impl(self, g1, g2, opts)
    }
}

/// Computes `H⁴(G,Z)` on the normalized bar complex.
pub fn h4_integral(g: &FiniteGroup, opts: &CohOptions) -> Result<CohomologyGroup, CohError> {
    let n = g.order();
    if n > opts.order_limit {
        return Err(CohError::SizeLimit { order: n, limit: opts.order_limit });
    }
    let cx = BarComplex::normalized(g);
    let (m3, m4, m5) = (cx.cells(3), cx.cells(4), cx.cells(5));
    check_memory(m3, m4, m5, opts)?;

    let d3 = cx.differential_dense(3);
    let echelon3 = column_echelon(d3.clone(), true);
    let snf = smith_normal_form(d3.clone(), true, true);

    // Rank certificate: finite cohomology forces
    // rank(d⁴) = m4 - rank(d³); a prime reaching the bound proves it.
    let needed = m4 - snf.rank;
    let d4cols = cx.differential_sparse_cols(4);
    let mut certified = false;
    for &p in &RANK_PRIMES {
        let r = mod_p_rank(&d4cols, p);
        if r > needed {
            return Err(CohError::Internal("differential matrices are inconsistent"));
        }
        if r == needed {
            certified = true;
            break;
        }
    }
    if !certified {
        return Err(CohError::Internal("rank certificate did not reach the finiteness bound"));
    }

    let ut = snf.u_inv_t.expect("requested transform");
    let vt = snf.v_t.expect("requested transform");
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    let mut torsion_witnesses = Vec::new();
    for (i, d) in snf.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let factor = d.to_u64().ok_or(CohError::Internal("invariant factor does not fit in u64"))?;
        invariant_factors.push(factor);
        generators.push(IntCochain { degree: 4, values: ut.row(i).to_vec() });
        torsion_witnesses.push(IntCochain { degree: 3, values: vt.row(i).to_vec() });
    }

    // Re-verify through the differential formula, independently of the
    // matrix pipeline: generators are cocycles and witnesses certify the
    // torsion relations.
    for ((z, w), &d) in generators.iter().zip(&torsion_witnesses).zip(&invariant_factors) {
        if !bar_differential(g, z)?.is_zero() {
            return Err(CohError::Internal("generator is not a cocycle"));
        }
        if bar_differential(g, w)? != z.scaled(&BigInt::from(d)) {
            return Err(CohError::Internal("torsion witness does not certify its relation"));
        }
    }

    let coords = if generators.is_empty() {
        None
    } else {
        let mut stacked = IntMat::zeros(m4, generators.len() + m3);
        for (j, z) in generators.iter().enumerate() {
            for (i, v) in z.values.iter().enumerate() {
                if !v.is_zero() {
                    stacked.set(i, j, v.clone());
                }
            }
        }
        for j in 0..m3 {
            for i in 0..m4 {
                let v = d3.at(i, j);
                if !v.is_zero() {
                    stacked.set(i, generators.len() + j, v.clone());
                }
            }
        }
        Some(column_echelon(stacked, true))
    };

    Ok(CohomologyGroup {
        group: g.clone(),
        invariant_factors,
        generators,
        torsion_witnesses,
        echelon3,
        coords,
    })
}

fn check_memory(m3: usize, m4: usize, m5: usize, opts: &CohOptions) -> Result<(), CohError> {
    // Three transient copies of d³, the square transforms, and the sparse d⁴.
    let cells = 3 * m4 * m3 + m4 * m4 + 3 * m3 * m3 + m4 * (m3 + 8);
    let bytes = cells.saturating_mul(32) + m5.saturating_mul(6 * 16);
    let needed_mb = bytes / (1024 * 1024);
    if needed_mb > opts.memory_limit_mb {
        return Err(CohError::MemoryLimit { needed_mb, limit_mb: opts.memory_limit_mb });
    }
    Ok(())
}

/// Restriction of a normalized cochain on `G` to a subgroup, returned
/// together with the subgroup materialized as a group.
pub fn restrict_cocycle(
    g: &FiniteGroup,
    z: &IntCochain,
    h: &Subgroup,
) -> Result<(FiniteGroup, IntCochain), CohError> {
    let cx_g = BarComplex::normalized(g);
    let expected = cx_g.cells(z.degree);
    if z.values.len() != expected {
        return Err(CohError::LengthMismatch { expected, got: z.values.len() });
    }
    let (hg, incl) = h.to_group(g);
    let cx_h = BarComplex::normalized(&hg);
    let mut values = vec![BigInt::zero(); cx_h.cells(z.degree)];
    for (idx, value) in values.iter_mut().enumerate() {
        let local = cx_h.tuple_of_cell(z.degree, idx);
        let ambient: Vec<usize> = local.iter().map(|&e| incl[e]).collect();
        if let Some(cell) = cx_g.cell_of_tuple(&ambient) {
            *value = z.values[cell].clone();
        }
    }
    Ok((hg, IntCochain { degree: z.degree, values }))
}

/// Connecting map `H³(G,Q/Z) → H⁴(G,Z)` on cocycle representatives: the
/// bar differential of the rational lift, which must be integral.
pub fn connecting_image(g: &FiniteGroup, omega: &QZCochain) -> Result<IntCochain, CohError> {
    let d = rational_bar_differential(g, 3, &omega.values);
    let mut values = Vec::with_capacity(d.len());
    for v in d {
        if !v.is_integer() {
            return Err(CohError::NotCocycle);
        }
        values.push(v.to_integer());
    }
    Ok(IntCochain { degree: 4, values })
}

/// Whether the rational values satisfy the normalized 3-cocycle identity
/// modulo 1 (exact arithmetic).
pub fn is_qz_cocycle(g: &FiniteGroup, omega: &QZCochain) -> bool {
    connecting_image(g, omega).is_ok()
}

/// Classes of `H⁴(G,Z)` vanishing on both factors of an exact group
/// factorization; each one classifies a pointed exact factorization with
/// ambient data `(G, ω)`.
#[derive(Clone, Debug)]
pub struct PointedClassification {
    pub ambient_factors: Vec<u64>,
    /// Invariant factors of the kernel subgroup (all > 1).
    pub kernel_factors: Vec<u64>,
    pub kernel_order: u128,
    /// Kernel generators as coefficient vectors over the ambient
    /// generators, reduced modulo the ambient factors.
    pub kernel_generators: Vec<Vec<u64>>,
}

fn classify_pointed_impl(
    ambient: &CohomologyGroup,
    g1: &Subgroup,
    g2: &Subgroup,
    opts: &CohOptions,
) -> Result<PointedClassification, CohError> {
    let g = &ambient.group;
    if !groups::is_exact_factorization(g, g1, g2) {
        return Err(CohError::NotExactFactorization);
    }
    let s = ambient.invariant_factors.len();
    if s == 0 {
        return Ok(PointedClassification {
            ambient_factors: Vec::new(),
            kernel_factors: Vec::new(),
            kernel_order: 1,
            kernel_generators: Vec::new(),
        });
    }

    let (h1_group, _) = g1.to_group(g);
    let (h2_group, _) = g2.to_group(g);
    let h1 = h4_integral(&h1_group, opts)?;
    let h2 = h4_integral(&h2_group, opts)?;
    let (s1, s2) = (h1.invariant_factors.len(), h2.invariant_factors.len());
    let t = s1 + s2;

    // Joint restriction on generators, in target class coordinates.
    let mut phi = IntMat::zeros(t, s);
    for (i, z) in ambient.generators.iter().enumerate() {
        let (_, r1) = restrict_cocycle(g, z, g1)?;
        for (row, &c) in h1.class_coordinates(&r1)?.iter().enumerate() {
            phi.set(row, i, BigInt::from(c));
        }
        let (_, r2) = restrict_cocycle(g, z, g2)?;
        for (row, &c) in h2.class_coordinates(&r2)?.iter().enumerate() {
            phi.set(s1 + row, i, BigInt::from(c));
        }
    }

    // L = { a in Z^s : phi(a) = 0 in ⊕ Z/e_j } via the kernel of [phi | E].
    let mut stacked = IntMat::zeros(t, s + t);
    for r in 0..t {
        for c in 0..s {
            stacked.set(r, c, phi.at(r, c).clone());
        }
        let e = if r < s1 { h1.invariant_factors[r] } else { h2.invariant_factors[r - s1] };
        stacked.set(r, s + r, BigInt::from(e));
    }
    let ech = column_echelon(stacked, true);
    let mut lattice_gens: Vec<Vec<BigInt>> =
        ech.kernel_basis().into_iter().map(|v| v[..s].to_vec()).collect();
    for (i, &d) in ambient.invariant_factors.iter().enumerate() {
        let mut col = vec![BigInt::zero(); s];
        col[i] = BigInt::from(d);
        lattice_gens.push(col);
    }

    // Basis of L, then the kernel subgroup L / diag(d) Z^s as a cokernel.
    let lmat = IntMat::from_cols(&lattice_gens, s);
    let lech = column_echelon(lmat, true);
    if lech.rank() != s {
        return Err(CohError::Internal("kernel lattice lost full rank"));
    }
    let basis: Vec<Vec<BigInt>> = (0..s).map(|j| lech.mat.col_vec(j)).collect();
    let basis_mat = IntMat::from_cols(&basis, s);
    let basis_ech = column_echelon(basis_mat.clone(), true);
    let mut w = IntMat::zeros(s, s);
    for (i, &d) in ambient.invariant_factors.iter().enumerate() {
        let mut target = vec![BigInt::zero(); s];
        target[i] = BigInt::from(d);
        let col = basis_ech
            .solve_integer(&target)
            .ok_or(CohError::Internal("relation lattice escapes the kernel lattice"))?;
        for r in 0..s {
            w.set(r, i, col[r].clone());
        }
    }
    let wsnf = smith_normal_form(w, true, false);
    if wsnf.rank != s {
        return Err(CohError::Internal("kernel presentation is not full rank"));
    }
    let kernel_order: u128 = wsnf
        .diag
        .iter()
        .map(|d| d.to_u128().expect("kernel order fits"))
        .product();
    let ut = wsnf.u_inv_t.expect("requested transform");
    let mut kernel_factors = Vec::new();
    let mut kernel_generators = Vec::new();
    for (j, d) in wsnf.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        kernel_factors.push(d.to_u64().ok_or(CohError::Internal("kernel factor too large"))?);
        // Generator in ambient coordinates: basis · (column j of U⁻¹).
        let coeffs = ut.row(j);
        let mut combo = vec![BigInt::zero(); s];
        for (col, coeff) in coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for r in 0..s {
                combo[r] += coeff * basis_mat.at(r, col);
            }
        }
        let reduced: Vec<u64> = combo
            .iter()
            .zip(&ambient.invariant_factors)
            .map(|(v, &d)| v.mod_floor(&BigInt::from(d)).to_u64().expect("fits"))
            .collect();
        kernel_generators.push(reduced);
    }

    // Certify: every kernel generator really dies on both factors.
    for combo in &kernel_generators {
        let z = ambient.element_cocycle(combo);
        let (_, r1) = restrict_cocycle(g, &z, g1)?;
        let (_, r2) = restrict_cocycle(g, &z, g2)?;
        if h1.is_trivial_class(&r1)?.is_none() || h2.is_trivial_class(&r2)?.is_none() {
            return Err(CohError::Internal("kernel generator fails its own certificate"));
        }
    }

    Ok(PointedClassification {
        ambient_factors: ambient.invariant_factors.clone(),
        kernel_factors,
        kernel_order,
        kernel_generators,
    })
}

/// Convenience wrapper: computes `H⁴(G,Z)` and classifies in one call.
pub fn classify_pointed(
    g: &FiniteGroup,
    g1: &Subgroup,
    g2: &Subgroup,
    opts: &CohOptions,
) -> Result<PointedClassification, CohError> {
    if !groups::is_exact_factorization(g, g1, g2) {
        return Err(CohError::NotExactFactorization);
    }
    let ambient = h4_integral(g, opts)?;
    ambient.classify_pointed(g1, g2, opts)
}
