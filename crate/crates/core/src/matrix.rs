//! Exchange matrices: validation, mutation, ice quivers, acyclicity,
//! canonical forms and bounded mutation-class search.
//!
//! All indices are 0-based. Rows `0..n` form the principal part, rows
//! `n..n+m` belong to frozen vertices.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{ClusterError, Result};
use crate::ring::BaseRing;

/// Default bound on `n + m` for exhaustive canonicalization.
pub const DEFAULT_CANON_GUARD: usize = 10;

/// A validated `(n+m) x n` exchange matrix with skew-symmetrizable principal part.
#[derive(Clone, Debug)]
pub struct SeedMatrix {
    n: usize,
    m: usize,
    /// Row-major, `(n + m) * n` entries.
    entries: Vec<BigInt>,
    symmetrizer: Vec<BigInt>,
}

impl PartialEq for SeedMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.entries == other.entries
    }
}

impl Eq for SeedMatrix {}

impl std::hash::Hash for SeedMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.m.hash(state);
        self.entries.hash(state);
    }
}

impl SeedMatrix {
    /// Validate `rows` as an exchange matrix with `n` exchangeable and `m` frozen indices.
    pub fn new(n: usize, m: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.len() != n + m || rows.iter().any(|r| r.len() != n) {
            let found = match rows.iter().map(Vec::len).find(|&len| len != n) {
                Some(len) => format!("{} rows, a row of length {len}", rows.len()),
                None => format!("{} rows", rows.len()),
            };
            return Err(ClusterError::ShapeMismatch {
                rows: n + m,
                cols: n,
                found,
            });
        }
        let entries: Vec<BigInt> = rows.into_iter().flatten().collect();
        let symmetrizer = find_symmetrizer(n, &entries)?;
        Ok(SeedMatrix {
            n,
            m,
            entries,
            symmetrizer,
        })
    }

    pub fn from_i64(n: usize, m: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        SeedMatrix::new(n, m, rows)
    }

    /// Empty seed (`n = 0`) with `m` frozen rows of length zero.
    pub fn empty(m: usize) -> Self {
        SeedMatrix {
            n: 0,
            m,
            entries: Vec::new(),
            symmetrizer: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_rows(&self) -> usize {
        self.n + self.m
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn column(&self, col: usize) -> Vec<BigInt> {
        (0..self.num_rows())
            .map(|k| self.entry(k, col).clone())
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.num_rows()).map(|k| self.row(k).to_vec()).collect()
    }

    /// Positive integers `d` with `d_i b_ij = -d_j b_ji`, normalized per connected component.
    pub fn symmetrizer(&self) -> &[BigInt] {
        &self.symmetrizer
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| *self.entry(i, j) == -self.entry(j, i)))
    }

    pub fn check_exchangeable(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(ClusterError::IndexOutOfRange {
                index: i,
                n: self.n,
            })
        }
    }

    /// An exchangeable index is isolated iff its column vanishes.
    pub fn is_isolated(&self, i: usize) -> bool {
        (0..self.num_rows()).all(|k| self.entry(k, i).is_zero())
    }

    pub fn isolated_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_isolated(i)).collect()
    }

    /// Mutation in exchangeable direction `i`.
    pub fn mutate(&self, i: usize) -> Result<SeedMatrix> {
        self.check_exchangeable(i)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(self.entries.len());
        for k in 0..self.num_rows() {
            let b_ki = self.entry(k, i);
            for l in 0..n {
                let b_kl = self.entry(k, l);
                let value = if k == i || l == i {
                    -b_kl
                } else {
                    let b_il = self.entry(i, l);
                    if b_ki.is_zero() || b_il.is_zero() {
                        b_kl.clone()
                    } else {
                        let twice = b_ki.abs() * b_il + b_ki * b_il.abs();
                        b_kl + (twice >> 1)
                    }
                };
                entries.push(value);
            }
        }
        // Mutation keeps the symmetrizer.
        Ok(SeedMatrix {
            n,
            m: self.m,
            entries,
            symmetrizer: self.symmetrizer.clone(),
        })
    }

    /// Apply mutations left to right.
    pub fn mutate_sequence(&self, directions: &[usize]) -> Result<SeedMatrix> {
        directions
            .iter()
            .try_fold(self.clone(), |seed, &i| seed.mutate(i))
    }

    /// Relabel exchangeable indices by `perm` (new position -> old index)
    /// and frozen rows by `frozen_perm` (same convention, 0-based among frozen rows).
    pub fn relabel(&self, perm: &[usize], frozen_perm: &[usize]) -> SeedMatrix {
        assert_eq!(perm.len(), self.n);
        assert_eq!(frozen_perm.len(), self.m);
        let mut entries = Vec::with_capacity(self.entries.len());
        for k in 0..self.num_rows() {
            let src_row = if k < self.n {
                perm[k]
            } else {
                self.n + frozen_perm[k - self.n]
            };
            for &src_col in perm {
                entries.push(self.entry(src_row, src_col).clone());
            }
        }
        let symmetrizer = perm.iter().map(|&p| self.symmetrizer[p].clone()).collect();
        SeedMatrix {
            n: self.n,
            m: self.m,
            entries,
            symmetrizer,
        }
    }

    /// Same principal part with the frozen rows replaced by the `n x n` identity.
    pub fn with_principal_coefficients(&self) -> SeedMatrix {
        let n = self.n;
        let mut entries = self.entries[..n * n].to_vec();
        for k in 0..n {
            for l in 0..n {
                entries.push(if k == l { BigInt::one() } else { BigInt::zero() });
            }
        }
        SeedMatrix {
            n,
            m: n,
            entries,
            symmetrizer: self.symmetrizer.clone(),
        }
    }

    /// Append frozen rows, each of length `n`.
    pub fn with_frozen_rows(&self, extra: Vec<Vec<BigInt>>) -> Result<SeedMatrix> {
        let mut rows = self.rows();
        let m = self.m + extra.len();
        rows.extend(extra);
        SeedMatrix::new(self.n, m, rows)
    }

    pub fn quiver(&self) -> IceQuiver {
        build_quiver(self)
    }

    pub fn is_acyclic(&self) -> bool {
        is_acyclic(self)
    }
}

impl fmt::Display for SeedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.num_rows() {
            if k == self.n && self.m > 0 {
                writeln!(f, "--")?;
            }
            let row: Vec<String> = self.row(k).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Free-function form of [`SeedMatrix::new`] taking the matrix first.
pub fn validate(b: Vec<Vec<BigInt>>, n: usize, m: usize) -> Result<SeedMatrix> {
    SeedMatrix::new(n, m, b)
}

pub fn mutate(s: &SeedMatrix, i: usize) -> Result<SeedMatrix> {
    s.mutate(i)
}

fn find_symmetrizer(n: usize, entries: &[BigInt]) -> Result<Vec<BigInt>> {
    let at = |i: usize, j: usize| &entries[i * n + j];

    for i in 0..n {
        for j in i..n {
            let (a, b) = (at(i, j), at(j, i));
            let ok = if a.is_zero() || b.is_zero() {
                a.is_zero() && b.is_zero()
            } else {
                a.sign() != b.sign()
            };
            if !ok {
                return Err(ClusterError::NotSignSkewSymmetric { i, j });
            }
        }
    }

    let mut ratio: Vec<Option<BigRational>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut result = vec![BigInt::zero(); n];

    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some(BigRational::one());
        let mut component = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let d_i = ratio[i].clone().expect("visited");
            for j in 0..n {
                if j == i || at(i, j).is_zero() {
                    continue;
                }
                // d_i b_ij = -d_j b_ji
                let d_j = d_i.clone() * BigRational::new(at(i, j).clone(), -at(j, i));
                match &ratio[j] {
                    None => {
                        ratio[j] = Some(d_j);
                        parent[j] = Some(i);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != d_j => {
                        return Err(ClusterError::NotSkewSymmetrizable {
                            cycle: tree_cycle(&parent, i, j),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
        let denom_lcm = component.iter().fold(BigInt::one(), |acc, &v| {
            acc.lcm(ratio[v].as_ref().expect("visited").denom())
        });
        let scaled: Vec<BigInt> = component
            .iter()
            .map(|&v| {
                let r = ratio[v].as_ref().expect("visited");
                r.numer() * (&denom_lcm / r.denom())
            })
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&v, value) in component.iter().zip(scaled) {
            result[v] = value / &g;
        }
    }
    Ok(result)
}

/// Cycle closed by the non-tree edge `i - j` in a BFS forest.
fn tree_cycle(parent: &[Option<usize>], i: usize, j: usize) -> Vec<usize> {
    let path_to_root = |mut v: usize| {
        let mut path = vec![v];
        while let Some(p) = parent[v] {
            path.push(p);
            v = p;
        }
        path
    };
    let pi = path_to_root(i);
    let pj = path_to_root(j);
    let on_pj: HashSet<usize> = pj.iter().copied().collect();
    let lca_pos = pi.iter().position(|v| on_pj.contains(v)).unwrap_or(pi.len() - 1);
    let lca = pi[lca_pos];
    let mut cycle: Vec<usize> = pi[..=lca_pos].to_vec();
    cycle.reverse();
    let lca_in_j = pj.iter().position(|&v| v == lca).unwrap_or(pj.len());
    cycle.extend(pj[..lca_in_j].iter().copied());
    cycle
}

/// Ice quiver `Gamma(B)`: vertex `k < n` is exchangeable, `k >= n` frozen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IceQuiver {
    n: usize,
    m: usize,
    arcs: BTreeMap<(usize, usize), BigInt>,
}

impl IceQuiver {
    /// Build a quiver from arcs `(source, target, multiplicity)`.
    pub fn from_arcs(n: usize, m: usize, arcs: &[(usize, usize, u64)]) -> Result<Self> {
        let mut map: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for &(s, t, mult) in arcs {
            if s >= n + m || t >= n + m {
                return Err(ClusterError::IndexOutOfRange {
                    index: s.max(t),
                    n: n + m,
                });
            }
            if s == t || (s >= n && t >= n) {
                return Err(ClusterError::MalformedSeed(format!(
                    "arc {s} -> {t} is a loop or joins two frozen vertices"
                )));
            }
            if mult > 0 {
                *map.entry((s, t)).or_insert_with(BigInt::zero) += mult;
            }
        }
        Ok(IceQuiver { n, m, arcs: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.arcs.iter().map(|(&(s, t), mult)| (s, t, mult))
    }

    pub fn arrow_count(&self, source: usize, target: usize) -> BigInt {
        self.arcs
            .get(&(source, target))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// `N_-(i)`.
    pub fn predecessors(&self, i: usize) -> BTreeSet<usize> {
        self.arcs
            .keys()
            .filter(|&&(_, t)| t == i)
            .map(|&(s, _)| s)
            .collect()
    }

    /// `N_+(i)`.
    pub fn successors(&self, i: usize) -> BTreeSet<usize> {
        self.arcs
            .keys()
            .filter(|&&(s, _)| s == i)
            .map(|&(_, t)| t)
            .collect()
    }

    pub fn neighbors(&self, i: usize) -> BTreeSet<usize> {
        let mut all = self.predecessors(i);
        all.extend(self.successors(i));
        all
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.predecessors(i).is_empty()
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.successors(i).is_empty()
    }

    /// `B(Q)`, defined when the quiver has no 2-cycles.
    pub fn to_seed_matrix(&self) -> Result<SeedMatrix> {
        let mut rows = vec![vec![BigInt::zero(); self.n]; self.n + self.m];
        for (&(s, t), mult) in &self.arcs {
            if self.arcs.contains_key(&(t, s)) {
                return Err(ClusterError::MalformedSeed(format!(
                    "quiver has a 2-cycle between {s} and {t}"
                )));
            }
            if t < self.n {
                rows[s][t] += mult;
            }
            if s < self.n {
                rows[t][s] -= mult;
            }
        }
        SeedMatrix::new(self.n, self.m, rows)
    }
}

/// `Gamma(B)`: `b_ij` arrows `i -> j` when `b_ij > 0`, and `-b_ij` arrows
/// `j -> i` for frozen `i` with `b_ij < 0`.
pub fn build_quiver(s: &SeedMatrix) -> IceQuiver {
    let mut arcs = BTreeMap::new();
    for k in 0..s.num_rows() {
        for l in 0..s.n() {
            let b = s.entry(k, l);
            if b.is_positive() {
                arcs.insert((k, l), b.clone());
            } else if b.is_negative() && k >= s.n() {
                arcs.insert((l, k), -b);
            }
        }
    }
    IceQuiver {
        n: s.n(),
        m: s.m(),
        arcs,
    }
}

/// Whether the exchangeable part of `Gamma(B)` has no oriented cycle.
pub fn is_acyclic(s: &SeedMatrix) -> bool {
    let n = s.n();
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if s.entry(i, j).is_positive() {
                indegree[j] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut removed = 0;
    while let Some(i) = ready.pop() {
        removed += 1;
        for j in 0..n {
            if s.entry(i, j).is_positive() {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(j);
                }
            }
        }
    }
    removed == n
}

/// Representative of a seed's relabeling orbit.
///
/// The matrix is the minimum over all permutations of the exchangeable
/// indices (applied to rows and columns) and independent permutations of
/// the frozen rows. Principal entries are compared first, in the order in
/// which positions are filled: for position `k`, the pairs
/// `(b[p][k], b[k][p])` for `p < k`. Frozen rows follow, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSeed {
    n: usize,
    m: usize,
    principal_key: Vec<BigInt>,
    frozen_rows: Vec<Vec<BigInt>>,
    /// Row-major canonical matrix.
    entries: Vec<BigInt>,
}

impl CanonicalSeed {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        if self.n == 0 {
            return vec![Vec::new(); self.m];
        }
        self.entries.chunks(self.n).map(<[BigInt]>::to_vec).collect()
    }

    pub fn to_seed(&self) -> SeedMatrix {
        SeedMatrix::new(self.n, self.m, self.rows()).expect("canonical seeds stay valid")
    }
}

pub fn canonical_form(s: &SeedMatrix) -> Result<CanonicalSeed> {
    canonical_form_with_guard(s, DEFAULT_CANON_GUARD)
}

pub fn canonical_form_with_guard(s: &SeedMatrix, guard: usize) -> Result<CanonicalSeed> {
    let size = s.num_rows();
    if size > guard {
        return Err(ClusterError::TooLargeForCanonicalization { size, guard });
    }
    let mut search = CanonSearch {
        seed: s,
        best: None,
        perm: Vec::with_capacity(s.n()),
        used: vec![false; s.n()],
        prefix: Vec::new(),
        updates: 0,
    };
    search.descend(Ordering::Equal);
    let (perm, principal_key, frozen_rows) = search.best.expect("at least one permutation");
    let frozen_perm = sorted_frozen_order(s, &perm);
    let relabeled = s.relabel(&perm, &frozen_perm);
    Ok(CanonicalSeed {
        n: s.n(),
        m: s.m(),
        principal_key,
        frozen_rows,
        entries: relabeled.entries,
    })
}

type CanonCandidate = (Vec<usize>, Vec<BigInt>, Vec<Vec<BigInt>>);

struct CanonSearch<'a> {
    seed: &'a SeedMatrix,
    best: Option<CanonCandidate>,
    perm: Vec<usize>,
    used: Vec<bool>,
    prefix: Vec<BigInt>,
    updates: usize,
}

impl CanonSearch<'_> {
    /// `state` compares the current prefix with the same-length prefix of the best key.
    fn descend(&mut self, mut state: Ordering) {
        let n = self.seed.n();
        let k = self.perm.len();
        if k == n {
            let frozen = frozen_block(self.seed, &self.perm);
            let better = match &self.best {
                None => true,
                Some((_, _, best_frozen)) => {
                    state == Ordering::Less
                        || (state == Ordering::Equal && frozen < *best_frozen)
                }
            };
            if better {
                self.best = Some((self.perm.clone(), self.prefix.clone(), frozen));
                self.updates += 1;
            }
            return;
        }
        for c in 0..n {
            if self.used[c] {
                continue;
            }
            let start = self.prefix.len();
            for p in 0..k {
                let q = self.perm[p];
                self.prefix.push(self.seed.entry(q, c).clone());
                self.prefix.push(self.seed.entry(c, q).clone());
            }
            let next = match (&self.best, state) {
                (None, _) => Ordering::Less,
                (Some(_), Ordering::Less) => Ordering::Less,
                (Some((_, best_key, _)), _) => {
                    self.prefix[start..].cmp(&best_key[start..self.prefix.len()])
                }
            };
            if next != Ordering::Greater {
                self.used[c] = true;
                self.perm.push(c);
                let before = self.updates;
                self.descend(next);
                if self.updates != before {
                    // The new best extends the current prefix.
                    state = Ordering::Equal;
                }
                self.perm.pop();
                self.used[c] = false;
            }
            self.prefix.truncate(start);
        }
    }
}

fn frozen_block(s: &SeedMatrix, perm: &[usize]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = (s.n()..s.num_rows())
        .map(|k| perm.iter().map(|&l| s.entry(k, l).clone()).collect())
        .collect();
    rows.sort();
    rows
}

fn sorted_frozen_order(s: &SeedMatrix, perm: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..s.m()).collect();
    let key = |f: usize| -> Vec<BigInt> {
        perm.iter()
            .map(|&l| s.entry(s.n() + f, l).clone())
            .collect()
    };
    order.sort_by_key(|&f| key(f));
    order
}

/// Result of a bounded breadth-first search over mutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationClass {
    pub seeds: BTreeSet<CanonicalSeed>,
    /// True when the search closed before exceeding the cap.
    pub complete: bool,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    pub fn contains_acyclic(&self) -> bool {
        self.seeds.iter().any(|c| c.to_seed().is_acyclic())
    }
}

pub fn mutation_class(s: &SeedMatrix, cap: usize) -> Result<MutationClass> {
    mutation_class_with_guard(s, cap, DEFAULT_CANON_GUARD)
}

pub fn mutation_class_with_guard(s: &SeedMatrix, cap: usize, guard: usize) -> Result<MutationClass> {
    let mut seeds = BTreeSet::new();
    if cap == 0 {
        return Ok(MutationClass {
            seeds,
            complete: false,
        });
    }
    seeds.insert(canonical_form_with_guard(s, guard)?);
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(current) = queue.pop_front() {
        for i in 0..current.n() {
            let next = current.mutate(i)?;
            let canon = canonical_form_with_guard(&next, guard)?;
            if seeds.contains(&canon) {
                continue;
            }
            if seeds.len() == cap {
                return Ok(MutationClass {
                    seeds,
                    complete: false,
                });
            }
            seeds.insert(canon);
            queue.push_back(next);
        }
    }
    Ok(MutationClass {
        seeds,
        complete: true,
    })
}

/// Outcome of [`normalize_isolated`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedReport {
    /// Original indices of the removed exchangeable indices.
    pub removed: Vec<usize>,
    /// `kept[new] = old` for the surviving exchangeable indices.
    pub kept: Vec<usize>,
}

/// Over a field, drop every isolated exchangeable index (its variable is a
/// unit). Over `Z` the seed is returned unchanged.
pub fn normalize_isolated(s: &SeedMatrix, ring: &BaseRing) -> (SeedMatrix, IsolatedReport) {
    let removed = if ring.is_field() {
        s.isolated_indices()
    } else {
        Vec::new()
    };
    let kept: Vec<usize> = (0..s.n()).filter(|i| !removed.contains(i)).collect();
    if removed.is_empty() {
        return (s.clone(), IsolatedReport { removed, kept });
    }
    let n = kept.len();
    let mut entries = Vec::with_capacity((n + s.m()) * n);
    let row_sources = kept.iter().copied().chain(s.n()..s.num_rows());
    for k in row_sources {
        for &l in &kept {
            entries.push(s.entry(k, l).clone());
        }
    }
    let symmetrizer = kept.iter().map(|&i| s.symmetrizer[i].clone()).collect();
    let normalized = SeedMatrix {
        n,
        m: s.m(),
        entries,
        symmetrizer,
    };
    (normalized, IsolatedReport { removed, kept })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(n: usize, m: usize, rows: &[Vec<i64>]) -> SeedMatrix {
        SeedMatrix::from_i64(n, m, rows).unwrap()
    }

    fn b3() -> SeedMatrix {
        seed(3, 0, &[vec![0, 2, 0], vec![-1, 0, 1], vec![0, -1, 0]])
    }

    fn markov() -> SeedMatrix {
        seed(3, 0, &[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]])
    }

    #[test]
    fn b3_symmetrizer() {
        let s = b3();
        let d: Vec<i64> = s
            .symmetrizer()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 2]);
    }

    #[test]
    fn zero_matrix_is_valid() {
        let s = seed(2, 0, &[vec![0, 0], vec![0, 0]]);
        assert_eq!(s.isolated_indices(), vec![0, 1]);
    }

    #[test]
    fn sign_violation() {
        let err = SeedMatrix::from_i64(2, 0, &[vec![0, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(err, ClusterError::NotSignSkewSymmetric { i: 0, j: 1 });
        let err = SeedMatrix::from_i64(1, 0, &[vec![1]]).unwrap_err();
        assert_eq!(err, ClusterError::NotSignSkewSymmetric { i: 0, j: 0 });
    }

    #[test]
    fn inconsistent_symmetrizer() {
        // d1/d0 = 2, d2/d1 = 1, d2/d0 = 1 cannot hold together.
        let err = SeedMatrix::from_i64(
            3,
            0,
            &[vec![0, 2, 1], vec![-1, 0, 1], vec![-1, -1, 0]],
        )
        .unwrap_err();
        match err {
            ClusterError::NotSkewSymmetrizable { cycle } => {
                assert_eq!(cycle.len(), 3);
                let set: BTreeSet<usize> = cycle.into_iter().collect();
                assert_eq!(set, BTreeSet::from([0, 1, 2]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_mismatch() {
        let err = SeedMatrix::from_i64(2, 1, &[vec![0, 1], vec![-1, 0]]).unwrap_err();
        assert!(matches!(err, ClusterError::ShapeMismatch { rows: 3, cols: 2, .. }));
    }

    #[test]
    fn mutate_rank_two() {
        let s = seed(2, 0, &[vec![0, 1], vec![-1, 0]]);
        assert_eq!(s.mutate(0).unwrap(), seed(2, 0, &[vec![0, -1], vec![1, 0]]));
        assert_eq!(s.mutate(0).unwrap().mutate(0).unwrap(), s);
        assert!(matches!(
            s.mutate(2),
            Err(ClusterError::IndexOutOfRange { index: 2, n: 2 })
        ));
    }

    #[test]
    fn mutate_frozen_rows() {
        // 0 -> 1, frozen 2 -> 0: mutation at 0 adds the composite arrow 2 -> 1.
        let s = seed(2, 1, &[vec![0, 1], vec![-1, 0], vec![1, 0]]);
        let t = s.mutate(0).unwrap();
        assert_eq!(t, seed(2, 1, &[vec![0, -1], vec![1, 0], vec![-1, 1]]));
        assert_eq!(t.mutate(0).unwrap(), s);
    }

    #[test]
    fn markov_is_rigid() {
        let s = markov();
        let canon = canonical_form(&s).unwrap();
        for i in 0..3 {
            assert_eq!(canonical_form(&s.mutate(i).unwrap()).unwrap(), canon);
        }
        let class = mutation_class(&s, 10).unwrap();
        assert_eq!(class.len(), 1);
        assert!(class.complete);
        assert!(!class.contains_acyclic());
    }

    #[test]
    fn quiver_of_b3() {
        let q = b3().quiver();
        let arcs: Vec<(usize, usize, i64)> = q
            .arcs()
            .map(|(s, t, m)| (s, t, i64::try_from(m).unwrap()))
            .collect();
        assert_eq!(arcs, vec![(0, 1, 2), (1, 2, 1)]);
    }

    #[test]
    fn quiver_of_markov() {
        let q = markov().quiver();
        let arcs: Vec<(usize, usize, i64)> = q
            .arcs()
            .map(|(s, t, m)| (s, t, i64::try_from(m).unwrap()))
            .collect();
        assert_eq!(arcs, vec![(0, 1, 2), (1, 2, 2), (2, 0, 2)]);
        assert_eq!(q.to_seed_matrix().unwrap(), markov());
    }

    #[test]
    fn quiver_frozen_arcs_and_neighbors() {
        // 0 -> frozen 2 and frozen 3 -> 1.
        let s = seed(2, 2, &[vec![0, 0], vec![0, 0], vec![-1, 0], vec![0, 1]]);
        let q = s.quiver();
        assert_eq!(q.successors(0), BTreeSet::from([2]));
        assert_eq!(q.predecessors(1), BTreeSet::from([3]));
        assert!(q.is_source(0) && q.is_sink(1));
        assert_eq!(q.to_seed_matrix().unwrap(), s);
    }

    #[test]
    fn zero_quiver_has_no_arcs() {
        let q = seed(2, 0, &[vec![0, 0], vec![0, 0]]).quiver();
        assert_eq!(q.arcs().count(), 0);
        assert!(q.neighbors(0).is_empty());
    }

    #[test]
    fn from_arcs_rejects_frozen_pairs() {
        assert!(IceQuiver::from_arcs(1, 2, &[(1, 2, 1)]).is_err());
        let q = IceQuiver::from_arcs(2, 0, &[(0, 1, 1), (0, 1, 2)]).unwrap();
        assert_eq!(q.arrow_count(0, 1), BigInt::from(3));
    }

    #[test]
    fn acyclicity() {
        // A_3 path 1 -> 2 <- 3
        let a3 = seed(3, 0, &[vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]]);
        assert!(a3.is_acyclic());
        assert!(!markov().is_acyclic());
        let cyc = seed(3, 0, &[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]);
        assert!(!cyc.is_acyclic());
    }

    #[test]
    fn canonical_swaps_rank_two() {
        let a = seed(2, 0, &[vec![0, 1], vec![-1, 0]]);
        let b = seed(2, 0, &[vec![0, -1], vec![1, 0]]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn canonical_guard() {
        let s = SeedMatrix::from_i64(3, 0, &[vec![0; 3], vec![0; 3], vec![0; 3]]).unwrap();
        assert!(matches!(
            canonical_form_with_guard(&s, 2),
            Err(ClusterError::TooLargeForCanonicalization { size: 3, guard: 2 })
        ));
    }

    #[test]
    fn a2_class_is_finite() {
        let s = seed(2, 0, &[vec![0, 1], vec![-1, 0]]);
        let class = mutation_class(&s, 10).unwrap();
        assert!(class.complete);
        assert!(class.contains_acyclic());
    }

    #[test]
    fn cyclic_a3_reaches_acyclic() {
        let cyc = seed(3, 0, &[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]);
        let class = mutation_class(&cyc, 50).unwrap();
        assert!(class.complete);
        assert!(class.contains_acyclic());
    }

    #[test]
    fn cap_truncates() {
        let a3 = seed(3, 0, &[vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]]);
        let class = mutation_class(&a3, 1).unwrap();
        assert_eq!(class.len(), 1);
        assert!(!class.complete);
        assert!(mutation_class(&a3, 0).unwrap().is_empty());
    }

    #[test]
    fn normalize_over_field_and_integers() {
        // 2 -> 4, 2 -> 5, with 1 and 3 isolated (1-based).
        let s = isolated_example();
        let (same, report) = normalize_isolated(&s, &BaseRing::Integers);
        assert_eq!(same, s);
        assert!(report.removed.is_empty());

        let (reduced, report) = normalize_isolated(&s, &BaseRing::Rationals);
        assert_eq!(report.removed, vec![0, 2]);
        assert_eq!(report.kept, vec![1, 3, 4]);
        assert_eq!(reduced.n(), 3);
        assert_eq!(
            reduced,
            seed(3, 0, &[vec![0, 1, 1], vec![-1, 0, 0], vec![-1, 0, 0]])
        );

        let zero = seed(2, 0, &[vec![0, 0], vec![0, 0]]);
        let (empty, report) = normalize_isolated(&zero, &BaseRing::Rationals);
        assert_eq!(empty.n(), 0);
        assert_eq!(report.removed, vec![0, 1]);

        let (unchanged, report) = normalize_isolated(&b3(), &BaseRing::AlgebraicallyClosed);
        assert_eq!(unchanged, b3());
        assert!(report.removed.is_empty());
    }

    fn isolated_example() -> SeedMatrix {
        let mut rows = vec![vec![0i64; 5]; 5];
        rows[1][3] = 1;
        rows[3][1] = -1;
        rows[1][4] = 1;
        rows[4][1] = -1;
        seed(5, 0, &rows)
    }

    #[test]
    fn principal_extension() {
        let s = markov().with_principal_coefficients();
        assert_eq!(s.m(), 3);
        assert_eq!(s.row(3), &[BigInt::one(), BigInt::zero(), BigInt::zero()]);
    }
}
