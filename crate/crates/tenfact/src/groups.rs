//! Finite groups as Cayley tables: builders, subgroup enumeration and
//! exact factorizations `G = G₁G₂` (trivial intersection, orders multiply).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default seed for the sampled associativity check on large tables.
pub const DEFAULT_SEED: u64 = 0x7e6f_ac7_0001;

/// Orders up to this bound get the exhaustive associativity check.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;

/// Upper bound on the order accepted by the subgroup scan.
pub const SUBGROUP_ORDER_LIMIT: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square or does not match the label count")]
    BadShape,
    #[error("row or column {0} of the table is not a permutation")]
    NotLatin(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("order {got} exceeds the limit {limit}")]
    OrderLimit { got: usize, limit: usize },
    #[error("element set is not a subgroup (witness element {0})")]
    NotSubgroup(usize),
    #[error("unsupported builder parameter: {0}")]
    BadParameter(String),
}

/// A finite group presented by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates the table (Latin square, identity, inverses,
    /// associativity) and locates the identity.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::new_with_seed(labels, table, DEFAULT_SEED)
    }

    /// Like [`new`](Self::new), with the seed for the sampled
    /// associativity check used above the exhaustive-order cutoff.
    pub fn new_with_seed(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        seed: u64,
    ) -> Result<Self, GroupError> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::BadShape);
        }
        for (i, row) in table.iter().enumerate() {
            if !is_permutation(row, n) {
                return Err(GroupError::NotLatin(i));
            }
        }
        for j in 0..n {
            let col: Vec<usize> = table.iter().map(|r| r[j]).collect();
            if !is_permutation(&col, n) {
                return Err(GroupError::NotLatin(j));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let g = FiniteGroup { labels, table, identity };
        g.check_associativity(seed)?;
        for x in 0..n {
            if !(0..n).any(|y| g.table[x][y] == identity && g.table[y][x] == identity) {
                return Err(GroupError::NoInverse(x));
            }
        }
        Ok(g)
    }

    fn check_associativity(&self, seed: u64) -> Result<(), GroupError> {
        let n = self.order();
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
            return Ok(());
        }
        // Light's test: associativity on all triples with a generator in
        // front propagates to the whole table, plus random spot checks.
        let gens = self.greedy_generators();
        for &t in &gens {
            for x in 0..n {
                for y in 0..n {
                    if self.table[self.table[t][x]][y] != self.table[t][self.table[x][y]] {
                        return Err(GroupError::NotAssociative(t, x, y));
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4096 {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                return Err(GroupError::NotAssociative(a, b, c));
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&[self.identity]);
        for g in 0..self.order() {
            if !span.contains(&g) {
                gens.push(g);
                let mut seed: Vec<usize> = span.clone();
                seed.push(g);
                span = self.closure(&seed);
                if span.len() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated group has inverses")
    }

    /// Multiplicative closure of a seed set (always a subgroup).
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut inset = vec![false; self.order()];
        inset[self.identity] = true;
        let mut members = vec![self.identity];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if !inset[s] {
                inset[s] = true;
                members.push(s);
                queue.push(s);
            }
        }
        let mut head = 0;
        // Products of known members, breadth-first until stable.
        while head < members.len() {
            let a = members[head];
            head += 1;
            for idx in 0..members.len() {
                let b = members[idx];
                for p in [self.table[a][b], self.table[b][a]] {
                    if !inset[p] {
                        inset[p] = true;
                        members.push(p);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }
}

fn is_permutation(values: &[usize], n: usize) -> bool {
    if values.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in values {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// A subgroup given by its sorted element set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    pub elements: Vec<usize>,
}

impl Subgroup {
    /// Checks closure, identity and inverses against the ambient group.
    pub fn new(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if !elements.contains(&g.identity()) {
            return Err(GroupError::NotSubgroup(g.identity()));
        }
        for &a in &elements {
            if a >= g.order() {
                return Err(GroupError::NotSubgroup(a));
            }
            for &b in &elements {
                if elements.binary_search(&g.mul(a, b)).is_err() {
                    return Err(GroupError::NotSubgroup(g.mul(a, b)));
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Materializes the subgroup as a standalone group together with the
    /// inclusion map (element index in H ↦ element index in G).
    pub fn to_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let incl = self.elements.clone();
        let pos: std::collections::HashMap<usize, usize> =
            incl.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table: Vec<Vec<usize>> = incl
            .iter()
            .map(|&a| incl.iter().map(|&b| pos[&g.mul(a, b)]).collect())
            .collect();
        let labels = incl.iter().map(|&e| g.label(e).to_string()).collect();
        let h = FiniteGroup::new(labels, table).expect("subgroup closure is a group");
        (h, incl)
    }
}

/// All subgroups, generated bottom-up by closing each known subgroup with
/// one extra element, deduplicated, sorted by (order, elements).
pub fn subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > SUBGROUP_ORDER_LIMIT {
        return Err(GroupError::OrderLimit { got: g.order(), limit: SUBGROUP_ORDER_LIMIT });
    }
    let trivial = vec![g.identity()];
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(trivial.clone());
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        for x in 0..g.order() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = h.clone();
            seed.push(x);
            let k = g.closure(&seed);
            if seen.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().map(|elements| Subgroup { elements }).collect();
    out.sort_by_key(|s| (s.order(), s.elements.clone()));
    Ok(out)
}

/// `g⁻¹ H g` as a subgroup.
pub fn conjugate_subgroup(g: &FiniteGroup, h: &Subgroup, by: usize) -> Subgroup {
    let inv = g.inverse(by);
    let mut elements: Vec<usize> =
        h.elements.iter().map(|&x| g.mul(g.mul(inv, x), by)).collect();
    elements.sort_unstable();
    Subgroup { elements }
}

/// Groups subgroup indices by conjugacy.
pub fn conjugacy_classes(g: &FiniteGroup, subs: &[Subgroup]) -> Vec<Vec<usize>> {
    let index_of: std::collections::HashMap<&[usize], usize> =
        subs.iter().enumerate().map(|(i, s)| (s.elements.as_slice(), i)).collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..subs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut members = Vec::new();
        for by in 0..g.order() {
            let conj = conjugate_subgroup(g, &subs[i], by);
            let j = index_of[conj.elements.as_slice()];
            if class_of[j] == usize::MAX {
                class_of[j] = cid;
                members.push(j);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// Exact factorization test: trivial intersection and `|H1|·|H2| = |G|`,
/// equivalently unique expression `g = g₁g₂`.
pub fn is_exact_factorization(g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup) -> bool {
    if h1.order() * h2.order() != g.order() {
        return false;
    }
    let common = h1.elements.iter().filter(|e| h2.contains(**e)).count();
    common == 1
}

/// One ordered pair of an exact factorization enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactFactorizationPair {
    pub h1: Subgroup,
    pub h2: Subgroup,
    /// One of the factors is the whole group or the trivial subgroup.
    pub trivial: bool,
    /// Identifier shared by pairs equivalent up to conjugation and swap.
    pub class_id: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ExactFactorizations {
    pub pairs: Vec<ExactFactorizationPair>,
    /// Number of distinct nontrivial pairs up to conjugation and swap.
    pub nontrivial_classes: usize,
}

/// All ordered subgroup pairs realizing `G = G₁G₂` exactly.
pub fn enumerate_exact_factorizations(
    g: &FiniteGroup,
) -> Result<ExactFactorizations, GroupError> {
    let subs = subgroups(g)?;
    let mut hits: Vec<(Subgroup, Subgroup)> = Vec::new();
    for h1 in &subs {
        for h2 in &subs {
            if is_exact_factorization(g, h1, h2) {
                hits.push((h1.clone(), h2.clone()));
            }
        }
    }
    // Canonical form under conjugation (same conjugator on both factors)
    // and swap.
    let mut canon_ids: std::collections::HashMap<(Vec<usize>, Vec<usize>), usize> =
        std::collections::HashMap::new();
    let mut pairs = Vec::with_capacity(hits.len());
    let mut nontrivial = std::collections::BTreeSet::new();
    for (h1, h2) in hits {
        let mut canon: Option<(Vec<usize>, Vec<usize>)> = None;
        for by in 0..g.order() {
            let a = conjugate_subgroup(g, &h1, by).elements;
            let b = conjugate_subgroup(g, &h2, by).elements;
            let cand = if a <= b { (a, b) } else { (b, a) };
            if canon.as_ref().map_or(true, |c| &cand < c) {
                canon = Some(cand);
            }
        }
        let canon = canon.expect("group is nonempty");
        let next = canon_ids.len();
        let class_id = *canon_ids.entry(canon).or_insert(next);
        let trivial = h1.is_trivial() || h2.is_trivial();
        if !trivial {
            nontrivial.insert(class_id);
        }
        pairs.push(ExactFactorizationPair { h1, h2, trivial, class_id });
    }
    Ok(ExactFactorizations { pairs, nontrivial_classes: nontrivial.len() })
}

/// Cyclic group `Z/n` with labels `0..n-1`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParameter("cyclic order must be positive".into()));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::new(labels, table)
}

/// Dihedral group of order `2n` (`n >= 1`): elements `s^a r^i` with
/// `r s = s r⁻¹`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParameter("dihedral parameter must be positive".into()));
    }
    let idx = |a: usize, i: usize| a * n + i;
    let mut labels = Vec::with_capacity(2 * n);
    for a in 0..2 {
        for i in 0..n {
            labels.push(if a == 0 { format!("r{i}") } else { format!("sr{i}") });
        }
    }
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for a in 0..2 {
        for i in 0..n {
            for b in 0..2 {
                for j in 0..n {
                    // (s^a r^i)(s^b r^j) = s^{a+b} r^{±i + j}
                    let i_signed = if b == 1 { (n - i) % n } else { i };
                    table[idx(a, i)][idx(b, j)] = idx((a + b) % 2, (i_signed + j) % n);
                }
            }
        }
    }
    FiniteGroup::new(labels, table)
}

/// Symmetric group on `n <= 4` letters, elements in lexicographic one-line
/// order, composition `(p·q)(x) = p(q(x))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 4 {
        return Err(GroupError::BadParameter("symmetric builder supports 1 <= n <= 4".into()));
    }
    let perms = permutations(n);
    let pos: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let comp: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                    pos[&comp]
                })
                .collect()
        })
        .collect();
    FiniteGroup::new(labels, table)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Direct product with pair labels `(a,b)` and index `a·|H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (n, m) = (g.order(), h.order());
    let labels = (0..n * m)
        .map(|k| format!("({},{})", g.label(k / m), h.label(k % m)))
        .collect();
    let table = (0..n * m)
        .map(|k| {
            let (a1, b1) = (k / m, k % m);
            (0..n * m)
                .map(|l| {
                    let (a2, b2) = (l / m, l % m);
                    g.mul(a1, a2) * m + h.mul(b1, b2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::new(labels, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_one_is_trivial() {
        let g = cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn symmetric_three_has_trivial_center() {
        let g = symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        let central: Vec<usize> = (0..6)
            .filter(|&z| (0..6).all(|x| g.mul(z, x) == g.mul(x, z)))
            .collect();
        assert_eq!(central, vec![g.identity()]);
    }

    #[test]
    fn z2_times_z3_has_cyclic_order_statistics() {
        let p = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        let c6 = cyclic(6).unwrap();
        let mut orders_p: Vec<usize> = (0..6).map(|x| p.element_order(x)).collect();
        let mut orders_c: Vec<usize> = (0..6).map(|x| c6.element_order(x)).collect();
        orders_p.sort_unstable();
        orders_c.sort_unstable();
        assert_eq!(orders_p, orders_c);
    }

    #[test]
    fn subgroup_counts_for_small_groups() {
        assert_eq!(subgroups(&cyclic(4).unwrap()).unwrap().len(), 3);
        assert_eq!(subgroups(&symmetric(3).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn subgroup_orders_divide_group_order() {
        for g in [cyclic(12).unwrap(), dihedral(4).unwrap(), symmetric(4).unwrap()] {
            for s in subgroups(&g).unwrap() {
                assert_eq!(g.order() % s.order(), 0);
            }
        }
    }

    #[test]
    fn s3_exact_factorizations() {
        let g = symmetric(3).unwrap();
        let out = enumerate_exact_factorizations(&g).unwrap();
        let nontrivial: Vec<_> = out.pairs.iter().filter(|p| !p.trivial).collect();
        // (A3, <t>) for three transpositions, both orders.
        assert_eq!(nontrivial.len(), 6);
        assert_eq!(out.nontrivial_classes, 1);
        // Swap symmetry.
        for p in &nontrivial {
            assert!(nontrivial
                .iter()
                .any(|q| q.h1 == p.h2 && q.h2 == p.h1));
        }
    }

    #[test]
    fn z4_has_only_trivial_factorizations() {
        let g = cyclic(4).unwrap();
        let out = enumerate_exact_factorizations(&g).unwrap();
        assert!(out.pairs.iter().all(|p| p.trivial));
        assert_eq!(out.nontrivial_classes, 0);
    }

    #[test]
    fn whole_group_times_trivial_is_exact() {
        let g = dihedral(4).unwrap();
        let subs = subgroups(&g).unwrap();
        let whole = subs.last().unwrap();
        let trivial = &subs[0];
        assert!(is_exact_factorization(&g, whole, trivial));
        assert!(!is_exact_factorization(
            &g,
            &Subgroup::new(&g, vec![0, 2]).unwrap_or(trivial.clone()),
            trivial
        ));
    }
}
