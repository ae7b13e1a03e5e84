//! Tensor-subcategory embeddings, intersections, product closures and the
//! exact-factorization decision procedure at the Grothendieck level.
//!
//! A verdict labels its positive outcome a *Grothendieck-level* exact
//! factorization: the criteria checked here (simple products, bijection,
//! projective covers, trivial intersection, dimension product) are the
//! Grothendieck shadow of the categorical statement; exactness of the
//! ambient category as a module category is not visible in this data.

use crate::category::{CategoryData, CategoryError, GrVector};
use crate::fpdim::{self, FpError, FpProfile};
use thiserror::Error;

/// Relative tolerance for FP-dimension product comparisons.
pub const FPDIM_REL_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum FactorError {
    #[error("embeddings have different targets")]
    TargetMismatch,
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("automatic search requires semisimple data (identity Cartan matrix)")]
    AutoUnsupported,
    #[error("unsupported ratio-check input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Fp(#[from] FpError),
}

/// A realization of one category's data as a tensor subcategory of
/// another's: an injective, unit-, dual- and fusion-preserving index map
/// whose image is closed under fusion constituents.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    pub source: CategoryData,
    pub target: CategoryData,
    pub map: Vec<usize>,
}

impl Embedding {
    /// Identity embedding of a category into itself.
    pub fn identity(data: &CategoryData) -> Self {
        Embedding { source: data.clone(), target: data.clone(), map: (0..data.n()).collect() }
    }

    /// Checks every embedding invariant; `Err` carries the first failure.
    pub fn check(&self) -> Result<(), FactorError> {
        let (ns, nt) = (self.source.n(), self.target.n());
        if self.map.len() != ns {
            return Err(FactorError::InvalidEmbedding(format!(
                "map has length {}, source has {} simples",
                self.map.len(),
                ns
            )));
        }
        let mut hit = vec![false; nt];
        for &t in &self.map {
            if t >= nt {
                return Err(FactorError::InvalidEmbedding(format!("index {t} out of range")));
            }
            if hit[t] {
                return Err(FactorError::InvalidEmbedding(format!("map repeats target {t}")));
            }
            hit[t] = true;
        }
        if self.map[self.source.unit] != self.target.unit {
            return Err(FactorError::InvalidEmbedding("unit is not preserved".into()));
        }
        for x in 0..ns {
            if self.map[self.source.dual[x]] != self.target.dual[self.map[x]] {
                return Err(FactorError::InvalidEmbedding(format!(
                    "duality is not preserved at simple {x}"
                )));
            }
        }
        // preimage of target indices
        let mut pre = vec![None; nt];
        for (s, &t) in self.map.iter().enumerate() {
            pre[t] = Some(s);
        }
        for x in 0..ns {
            for y in 0..ns {
                let p = self.target.gr_product(
                    &GrVector::basis(nt, self.map[x]),
                    &GrVector::basis(nt, self.map[y]),
                )?;
                for (t, &c) in p.coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let Some(s) = pre[t] else {
                        return Err(FactorError::InvalidEmbedding(format!(
                            "image is not closed: constituent {t} of {x}⊗{y} escapes"
                        )));
                    };
                    if self.source.fusion_mult(s, x, y) != c {
                        return Err(FactorError::InvalidEmbedding(format!(
                            "fusion is not preserved at ({x},{y},{s})"
                        )));
                    }
                }
                for z in 0..ns {
                    if self.source.fusion_mult(z, x, y) != p.coeffs[self.map[z]] {
                        return Err(FactorError::InvalidEmbedding(format!(
                            "fusion is not preserved at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img
    }

    /// Pushes a Grothendieck class of the source into the target.
    pub fn push_gr(&self, v: &GrVector) -> GrVector {
        let mut out = GrVector::zero(self.target.n());
        for (s, &c) in v.coeffs.iter().enumerate() {
            out.coeffs[self.map[s]] = c;
        }
        out
    }

    fn push_f64(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.target.n()];
        for (s, &c) in v.iter().enumerate() {
            out[self.map[s]] = c;
        }
        out
    }

    /// Gr-image of the source's regular element, pushed into the target.
    pub fn push_regular_image(&self, profile: &FpProfile) -> Vec<f64> {
        self.push_f64(&profile.regular_gr_image(&self.source))
    }
}

/// The four Grothendieck-level criteria of the factorization check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// (i) every product of simples from the two factors is simple
    SimpleProducts,
    /// (ii) the induced pair map is a bijection onto the target simples
    Bijection,
    /// (iii) projective covers multiply: `[P(X)]·[P(Y)] = [P(X⊗Y)]`
    ProjectiveCovers,
    /// (iv) the factors intersect trivially
    TrivialIntersection,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CriterionFailure {
    pub criterion: Criterion,
    pub witness: Vec<usize>,
}

/// The bijection `O(A) × O(C) → O(B)` realizing a factorization.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PairBijection {
    pub n_a: usize,
    pub n_c: usize,
    /// `to_target[x · n_c + y]` is the target simple of the pair `(x, y)`.
    pub to_target: Vec<usize>,
}

impl PairBijection {
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.to_target[x * self.n_c + y]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct FpdimProductCheck {
    pub factor_product: f64,
    pub target_dim: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct FactorizationVerdict {
    pub ok: bool,
    pub failures: Vec<CriterionFailure>,
    pub bijection: Option<PairBijection>,
    pub fpdim_check: FpdimProductCheck,
}

/// Intersection of two embedded subcategories as target simple indices.
pub fn intersect(a: &Embedding, c: &Embedding) -> Result<Vec<usize>, FactorError> {
    if a.target != c.target {
        return Err(FactorError::TargetMismatch);
    }
    let in_c: std::collections::BTreeSet<usize> = c.map.iter().copied().collect();
    let mut out: Vec<usize> = a.map.iter().copied().filter(|t| in_c.contains(t)).collect();
    out.sort_unstable();
    Ok(out)
}

/// Support of the module subcategory of the target generated by the unit
/// under left multiplication by `image(a)` and right multiplication by
/// `image(c)`: the least set containing the unit and closed under taking
/// constituents of `X ⊗ s ⊗ Y`.
pub fn product_support(a: &Embedding, c: &Embedding) -> Result<Vec<usize>, FactorError> {
    if a.target != c.target {
        return Err(FactorError::TargetMismatch);
    }
    let b = &a.target;
    let n = b.n();
    let mut inset = vec![false; n];
    inset[b.unit] = true;
    let mut queue = vec![b.unit];
    while let Some(s) = queue.pop() {
        for &x in &a.map {
            let left = b.gr_product(&GrVector::basis(n, x), &GrVector::basis(n, s))?;
            for &y in &c.map {
                let full = b.gr_product(&left, &GrVector::basis(n, y))?;
                for t in full.support() {
                    if !inset[t] {
                        inset[t] = true;
                        queue.push(t);
                    }
                }
            }
        }
    }
    Ok((0..n).filter(|&t| inset[t]).collect())
}

/// Decides whether the target factors exactly into the two embedded
/// subcategories, at the level of Grothendieck data.
pub fn check_exact_factorization(
    a: &Embedding,
    c: &Embedding,
) -> Result<FactorizationVerdict, FactorError> {
    if a.target != c.target {
        return Err(FactorError::TargetMismatch);
    }
    a.check()?;
    c.check()?;
    let b = &a.target;
    let (na, nc, nb) = (a.source.n(), c.source.n(), b.n());
    let mut failures = Vec::new();

    // (i) products of simples are simple
    let mut to_target = vec![usize::MAX; na * nc];
    let mut simple_products = true;
    for x in 0..na {
        for y in 0..nc {
            let p = b.gr_product(
                &GrVector::basis(nb, a.map[x]),
                &GrVector::basis(nb, c.map[y]),
            )?;
            match p.as_basis_index() {
                Some(z) => to_target[x * nc + y] = z,
                None => {
                    simple_products = false;
                    failures.push(CriterionFailure {
                        criterion: Criterion::SimpleProducts,
                        witness: vec![x, y],
                    });
                }
            }
        }
    }

    // (ii) the induced map is a bijection onto the target simples
    if simple_products && na * nc == nb {
        let mut seen = vec![usize::MAX; nb];
        'outer: for x in 0..na {
            for y in 0..nc {
                let z = to_target[x * nc + y];
                if seen[z] != usize::MAX {
                    failures.push(CriterionFailure {
                        criterion: Criterion::Bijection,
                        witness: vec![x, y, seen[z] / nc, seen[z] % nc, z],
                    });
                    break 'outer;
                }
                seen[z] = x * nc + y;
            }
        }
    } else {
        failures.push(CriterionFailure { criterion: Criterion::Bijection, witness: vec![] });
    }

    // (iii) projective covers multiply
    for x in 0..na {
        for y in 0..nc {
            let z = to_target[x * nc + y];
            if z == usize::MAX {
                continue;
            }
            let pa = a.push_gr(&a.source.projective_class(x));
            let pc = c.push_gr(&c.source.projective_class(y));
            let prod = b.gr_product(&pa, &pc)?;
            if prod != b.projective_class(z) {
                failures.push(CriterionFailure {
                    criterion: Criterion::ProjectiveCovers,
                    witness: vec![x, y, z],
                });
            }
        }
    }

    // (iv) trivial intersection
    let meet = intersect(a, c)?;
    if meet != vec![b.unit] {
        failures.push(CriterionFailure { criterion: Criterion::TrivialIntersection, witness: meet });
    }

    // Reported alongside: FPdim(B) = FPdim(A)·FPdim(C), relative 1e-6.
    let pa = fpdim::fp_character(&a.source, fpdim::DEFAULT_TOL)?;
    let pc = fpdim::fp_character(&c.source, fpdim::DEFAULT_TOL)?;
    let pb = fpdim::fp_character(b, fpdim::DEFAULT_TOL)?;
    let lhs = pa.cat_dim * pc.cat_dim;
    let fpdim_check = FpdimProductCheck {
        factor_product: lhs,
        target_dim: pb.cat_dim,
        ok: (lhs - pb.cat_dim).abs() <= FPDIM_REL_TOL * pb.cat_dim,
    };

    let ok = failures.is_empty();
    Ok(FactorizationVerdict {
        ok,
        failures,
        bijection: ok.then_some(PairBijection { n_a: na, n_c: nc, to_target }),
        fpdim_check,
    })
}

/// Report of the dimension identity
/// `FPdim(A)·FPdim(C) = FPdim(AC)·FPdim(D)` with `D` the intersection,
/// together with the bound `FPdim(B) ≥ FPdim(A)·FPdim(C)/FPdim(D)`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RatioReport {
    pub lhs: f64,
    pub rhs: f64,
    pub equal: bool,
    pub fpdim_a: f64,
    pub fpdim_c: f64,
    pub fpdim_d: f64,
    pub fpdim_ac: f64,
    pub fpdim_b: f64,
    pub support_is_full: bool,
    pub inequality_holds: bool,
}

pub fn fpdim_ratio_check(a: &Embedding, c: &Embedding) -> Result<RatioReport, FactorError> {
    if a.target != c.target {
        return Err(FactorError::TargetMismatch);
    }
    a.check()?;
    c.check()?;
    let b = &a.target;
    let meet = intersect(a, c)?;

    // The identity needs the intersection to be fusion; here that means
    // Cartan-identity rows on the matching simples of both factors.
    for emb in [a, c] {
        let mut pre = vec![None; b.n()];
        for (s, &t) in emb.map.iter().enumerate() {
            pre[t] = Some(s);
        }
        for &d in &meet {
            let s = pre[d].expect("intersection lies in both images");
            let row_ok = emb.source.cartan[s]
                .iter()
                .enumerate()
                .all(|(y, &v)| v == u64::from(y == s));
            if !row_ok {
                return Err(FactorError::Unsupported(
                    "intersection is not fusion: a Cartan row is not a unit row".into(),
                ));
            }
        }
    }

    let pa = fpdim::fp_character(&a.source, fpdim::DEFAULT_TOL)?;
    let pc = fpdim::fp_character(&c.source, fpdim::DEFAULT_TOL)?;
    let pb = fpdim::fp_character(b, fpdim::DEFAULT_TOL)?;

    let fpdim_d: f64 = meet.iter().map(|&t| pb.dims[t] * pb.dims[t]).sum();
    let support = product_support(a, c)?;
    let support_is_full = support.len() == b.n();
    let b_is_fusion =
        (0..b.n()).all(|x| b.cartan[x].iter().enumerate().all(|(y, &v)| v == u64::from(x == y)));
    let fpdim_ac = if support_is_full {
        pb.cat_dim
    } else if b_is_fusion {
        support.iter().map(|&t| pb.dims[t] * pb.dims[t]).sum()
    } else {
        return Err(FactorError::Unsupported(
            "proper closure support in nonsemisimple data: its projective covers are not \
             determined by this data"
                .into(),
        ));
    };

    let lhs = pa.cat_dim * pc.cat_dim;
    let rhs = fpdim_ac * fpdim_d;
    let scale = lhs.abs().max(rhs.abs()).max(1.0);
    Ok(RatioReport {
        lhs,
        rhs,
        equal: (lhs - rhs).abs() <= FPDIM_REL_TOL * scale,
        fpdim_a: pa.cat_dim,
        fpdim_c: pc.cat_dim,
        fpdim_d,
        fpdim_ac,
        fpdim_b: pb.cat_dim,
        support_is_full,
        inequality_holds: pb.cat_dim + FPDIM_REL_TOL * scale >= lhs / fpdim_d,
    })
}

/// Candidate source for the factorization search.
pub enum SearchCandidates<'a> {
    /// Enumerate all fusion-, dual- and unit-closed supports of the target
    /// (requires semisimple data) and test every unordered pair.
    Auto,
    /// Test the given embedding pairs as-is.
    Explicit(&'a [(Embedding, Embedding)]),
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SearchHit {
    pub a_support: Vec<usize>,
    pub c_support: Vec<usize>,
    pub ok: bool,
    /// One factor is the trivial subcategory.
    pub trivial: bool,
    /// Shared by hits equivalent under conjugation by invertible simples
    /// and swapping the factors.
    pub conjugacy_class: usize,
    #[serde(skip)]
    pub verdict: FactorizationVerdict,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    /// Count of nontrivial passing pairs up to conjugation and swap.
    pub nontrivial_classes: usize,
}

/// Extracts the subcategory data of a semisimple target on a closed
/// support set (identity Cartan, restricted fusion and duality).
pub fn fusion_subcategory(b: &CategoryData, support: &[usize]) -> CategoryData {
    let k = support.len();
    let pos: std::collections::HashMap<usize, usize> =
        support.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut fusion = std::collections::BTreeMap::new();
    for (&(x, y, z), &m) in &b.fusion {
        if let (Some(&lx), Some(&ly), Some(&lz)) = (pos.get(&x), pos.get(&y), pos.get(&z)) {
            fusion.insert((lx, ly, lz), m);
        }
    }
    let mut cartan = vec![vec![0u64; k]; k];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 1;
    }
    CategoryData {
        simples: support.iter().map(|&t| b.simples[t].clone()).collect(),
        unit: pos[&b.unit],
        dual: support.iter().map(|&t| pos[&b.dual[t]]).collect(),
        fusion,
        cartan,
        dual_d: None,
        omega_class: None,
    }
}

/// All fusion-closed, dual-closed, unit-containing supports, found by
/// closing each already-found support extended by one simple. Memoizing on
/// the closed sets keeps this near-linear in the size of the lattice.
pub fn enumerate_closed_supports(b: &CategoryData) -> Result<Vec<Vec<usize>>, FactorError> {
    let n = b.n();
    let mut seen = std::collections::BTreeSet::new();
    let base = support_closure(b, &[b.unit])?;
    seen.insert(base.clone());
    let mut queue = vec![base];
    while let Some(s) = queue.pop() {
        for g in 0..n {
            if s.binary_search(&g).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(g);
            let t = support_closure(b, &seed)?;
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    Ok(out)
}

fn support_closure(b: &CategoryData, seed: &[usize]) -> Result<Vec<usize>, FactorError> {
    let n = b.n();
    let mut inset = vec![false; n];
    inset[b.unit] = true;
    let mut members = vec![b.unit];
    for &s in seed {
        if !inset[s] {
            inset[s] = true;
            members.push(s);
        }
    }
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        head += 1;
        let d = b.dual[x];
        if !inset[d] {
            inset[d] = true;
            members.push(d);
        }
        for idx in 0..members.len() {
            let y = members[idx];
            for (lhs, rhs) in [(x, y), (y, x)] {
                let p = b.gr_product(
                    &GrVector::basis(n, lhs),
                    &GrVector::basis(n, rhs),
                )?;
                for t in p.support() {
                    if !inset[t] {
                        inset[t] = true;
                        members.push(t);
                    }
                }
            }
        }
    }
    members.sort_unstable();
    Ok(members)
}

pub fn search_exact_factorizations(
    b: &CategoryData,
    candidates: SearchCandidates<'_>,
    threads: usize,
) -> Result<SearchOutcome, FactorError> {
    match candidates {
        SearchCandidates::Explicit(pairs) => {
            let mut hits = Vec::new();
            for (a, c) in pairs {
                let verdict = check_exact_factorization(a, c)?;
                hits.push(SearchHit {
                    a_support: a.image(),
                    c_support: c.image(),
                    ok: verdict.ok,
                    trivial: a.source.n() == 1 || c.source.n() == 1,
                    conjugacy_class: 0,
                    verdict,
                });
            }
            let nontrivial = assign_conjugacy_classes(b, &mut hits);
            Ok(SearchOutcome { hits, nontrivial_classes: nontrivial })
        }
        SearchCandidates::Auto => {
            let is_fusion = (0..b.n())
                .all(|x| b.cartan[x].iter().enumerate().all(|(y, &v)| v == u64::from(x == y)));
            if !is_fusion {
                return Err(FactorError::AutoUnsupported);
            }
            let supports = enumerate_closed_supports(b)?;
            let mut pairs = Vec::new();
            for i in 0..supports.len() {
                for j in i..supports.len() {
                    pairs.push((i, j));
                }
            }
            let results = run_pairs(b, &supports, &pairs, threads.max(1))?;
            let mut hits: Vec<SearchHit> = results
                .into_iter()
                .flatten()
                .collect();
            hits.sort_by(|l, r| (&l.a_support, &l.c_support).cmp(&(&r.a_support, &r.c_support)));
            let nontrivial = assign_conjugacy_classes(b, &mut hits);
            Ok(SearchOutcome { hits, nontrivial_classes: nontrivial })
        }
    }
}

fn run_pairs(
    b: &CategoryData,
    supports: &[Vec<usize>],
    pairs: &[(usize, usize)],
    threads: usize,
) -> Result<Vec<Option<SearchHit>>, FactorError> {
    let test_one = |&(i, j): &(usize, usize)| -> Result<Option<SearchHit>, FactorError> {
        let sub_a = fusion_subcategory(b, &supports[i]);
        let sub_c = fusion_subcategory(b, &supports[j]);
        let emb_a = Embedding { source: sub_a, target: b.clone(), map: supports[i].clone() };
        let emb_c = Embedding { source: sub_c, target: b.clone(), map: supports[j].clone() };
        let verdict = check_exact_factorization(&emb_a, &emb_c)?;
        if !verdict.ok {
            return Ok(None);
        }
        Ok(Some(SearchHit {
            a_support: supports[i].clone(),
            c_support: supports[j].clone(),
            ok: true,
            trivial: supports[i].len() == 1 || supports[j].len() == 1,
            conjugacy_class: 0,
            verdict,
        }))
    };
    if threads <= 1 || pairs.len() < 2 {
        return pairs.iter().map(test_one).collect();
    }
    let chunk = pairs.len().div_ceil(threads);
    let mut out: Vec<Option<SearchHit>> = Vec::with_capacity(pairs.len());
    let chunks: Vec<&[(usize, usize)]> = pairs.chunks(chunk).collect();
    let test_ref = &test_one;
    let results: Vec<Result<Vec<Option<SearchHit>>, FactorError>> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|part| {
                    let part = *part;
                    scope.spawn(move || part.iter().map(test_ref).collect())
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        });
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Canonicalizes each hit under simultaneous conjugation by invertible
/// simples of the target and under swapping the two factors; returns the
/// number of distinct nontrivial classes.
fn assign_conjugacy_classes(b: &CategoryData, hits: &mut [SearchHit]) -> usize {
    let n = b.n();
    let mut conj_perms: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        let inv = b.dual[g];
        let gg = b
            .gr_product(&GrVector::basis(n, g), &GrVector::basis(n, inv))
            .ok()
            .and_then(|p| p.as_basis_index());
        if gg != Some(b.unit) {
            continue;
        }
        let mut perm = Vec::with_capacity(n);
        let mut total = true;
        for x in 0..n {
            let gx = b.gr_product(&GrVector::basis(n, inv), &GrVector::basis(n, x)).ok();
            let gxg = gx.and_then(|v| b.gr_product(&v, &GrVector::basis(n, g)).ok());
            match gxg.and_then(|v| v.as_basis_index()) {
                Some(t) => perm.push(t),
                None => {
                    total = false;
                    break;
                }
            }
        }
        if total {
            conj_perms.push(perm);
        }
    }
    let apply = |perm: &[usize], s: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().map(|&x| perm[x]).collect();
        out.sort_unstable();
        out
    };
    let mut ids: std::collections::HashMap<(Vec<usize>, Vec<usize>), usize> = Default::default();
    let mut nontrivial = std::collections::BTreeSet::new();
    for hit in hits.iter_mut() {
        let mut canon: Option<(Vec<usize>, Vec<usize>)> = None;
        for perm in &conj_perms {
            let sa = apply(perm, &hit.a_support);
            let sc = apply(perm, &hit.c_support);
            let cand = if sa <= sc { (sa, sc) } else { (sc, sa) };
            if canon.as_ref().map_or(true, |c| &cand < c) {
                canon = Some(cand);
            }
        }
        let canon = canon.unwrap_or_else(|| (hit.a_support.clone(), hit.c_support.clone()));
        let next = ids.len();
        let class = *ids.entry(canon).or_insert(next);
        hit.conjugacy_class = class;
        if hit.ok && !hit.trivial {
            nontrivial.insert(class);
        }
    }
    nontrivial.len()
}
