//! Brute-force ground truth for the largest member of `M_n^d`.
//!
//! Members of `M_n^d` are exactly the cliques of the compatibility graph on
//! `S_n`, where two polynomials are adjacent when their GCD has degree at
//! most `d`. The search is an exact branch and bound with greedy colouring
//! bounds over bitsets. It knows nothing about polynomials beyond the graph.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::poly::{FieldChar, Poly};

/// Default cap on `|S_n|`, i.e. `n <= 10` over GF(2).
pub const DEFAULT_MAX_VERTICES: usize = 512;

/// Environment variable that overrides the vertex cap in the CLI.
pub const MAX_VERTICES_ENV: &str = "GCDFAM_MAX_VERTICES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_vertices: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl OracleConfig {
    /// Default config, with the cap taken from `GCDFAM_MAX_VERTICES` if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_VERTICES_ENV) {
            Ok(v) => {
                let max_vertices = v.trim().parse().map_err(|_| {
                    Error::OutOfRange(format!("{MAX_VERTICES_ENV} must be a positive integer, got `{v}`"))
                })?;
                Ok(OracleConfig { max_vertices })
            }
            Err(_) => Ok(OracleConfig::default()),
        }
    }
}

/// `|S_n| = (p-1) p^(n-1)`, or `None` on overflow.
pub fn sn_size(p: FieldChar, n: usize) -> Option<u128> {
    let p = u128::from(p.get());
    let e = u32::try_from(n.checked_sub(1)?).ok()?;
    p.checked_pow(e)?.checked_mul(p - 1)
}

/// All of `S_n` in canonical order.
pub fn enumerate_sn(p: FieldChar, n: usize, config: &OracleConfig) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let size = sn_size(p, n).unwrap_or(u128::MAX);
    if size > config.max_vertices as u128 {
        return Err(Error::OracleCapExceeded {
            vertices: size,
            cap: config.max_vertices,
        });
    }
    let pp = u64::from(p.get());
    let total = pp.pow(n as u32);
    Ok((0..total)
        .filter(|s| s % pp != 0)
        .map(|s| Poly::monic_from_index(p, n, s))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * 64 + w.trailing_zeros() as usize)
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn subtract_in_place(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Vertices are polynomials of `S_n`; an edge joins `f != g` when
/// `deg gcd(f, g) <= d`.
#[derive(Debug, Clone)]
pub struct CompatGraph {
    field: FieldChar,
    n: usize,
    d: usize,
    vertices: Vec<Poly>,
    adjacency: Vec<BitSet>,
}

impl CompatGraph {
    pub fn build(p: FieldChar, n: usize, d: usize, config: &OracleConfig) -> Result<Self> {
        let vertices = enumerate_sn(p, n, config)?;
        Self::from_vertices(p, n, d, vertices)
    }

    /// Builds the graph over the given vertex order. Every vertex must lie in
    /// `S_n`; the order only affects which optimum the search reports.
    pub fn from_vertices(p: FieldChar, n: usize, d: usize, vertices: Vec<Poly>) -> Result<Self> {
        let count = vertices.len();
        let mut adjacency = vec![BitSet::new(count); count];
        for i in 0..count {
            for j in i + 1..count {
                let g = vertices[i].gcd(&vertices[j])?;
                if g.degree().unwrap_or(0) <= d {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        Ok(CompatGraph {
            field: p,
            n,
            d,
            vertices,
            adjacency,
        })
    }

    /// The same graph with vertices reordered: new position `k` holds old
    /// vertex `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.vertices.len()];
        if order.len() != self.vertices.len()
            || order.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::OutOfRange("order must be a permutation of the vertices".into()));
        }
        let count = order.len();
        let vertices = order.iter().map(|&i| self.vertices[i].clone()).collect();
        let mut adjacency = vec![BitSet::new(count); count];
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                if self.adjacency[i].contains(j) {
                    adjacency[a].insert(b);
                }
            }
        }
        Ok(CompatGraph {
            field: self.field,
            n: self.n,
            d: self.d,
            vertices,
            adjacency,
        })
    }

    pub fn vertices(&self) -> &[Poly] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.adjacency[i].count()
    }

    /// Indices of one maximum clique, in increasing order.
    pub fn maximum_clique(&self) -> Vec<usize> {
        CliqueSearch::new(self).run()
    }

    /// One maximum clique as a family.
    pub fn maximum_family(&self) -> Result<Family> {
        let clique = self.maximum_clique();
        Family::from_polys(
            self.field,
            self.n,
            clique.into_iter().map(|i| self.vertices[i].clone()),
        )
    }
}

struct CliqueSearch<'a> {
    graph: &'a CompatGraph,
    /// Search order: position -> vertex.
    order: Vec<usize>,
    /// Adjacency re-indexed by search position.
    adj: Vec<BitSet>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl<'a> CliqueSearch<'a> {
    fn new(graph: &'a CompatGraph) -> Self {
        let order = degeneracy_order(graph);
        let count = order.len();
        let mut adj = vec![BitSet::new(count); count];
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                if graph.adjacent(i, j) {
                    adj[a].insert(b);
                }
            }
        }
        CliqueSearch {
            graph,
            order,
            adj,
            best: Vec::new(),
            current: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<usize> {
        let count = self.order.len();
        let mut candidates = BitSet::full(count);

        // vertices adjacent to everything belong to some maximum clique
        let universal: Vec<usize> = (0..count)
            .filter(|&v| self.adj[v].count() + 1 == count)
            .collect();
        for &v in &universal {
            candidates.remove(v);
            self.current.push(v);
        }

        self.best = self.current.clone();
        self.best.extend(self.greedy_clique(&candidates));

        self.expand(candidates);

        let mut clique: Vec<usize> = self.best.iter().map(|&pos| self.order[pos]).collect();
        clique.sort_unstable();
        debug_assert!(clique
            .iter()
            .enumerate()
            .all(|(k, &i)| clique[k + 1..].iter().all(|&j| self.graph.adjacent(i, j))));
        clique
    }

    /// Repeatedly takes the candidate with most neighbours among the rest.
    fn greedy_clique(&self, candidates: &BitSet) -> Vec<usize> {
        let mut pool = candidates.clone();
        let mut clique = Vec::new();
        while !pool.is_empty() {
            let v = pool
                .iter()
                .max_by_key(|&v| (self.adj[v].intersect(&pool).count(), std::cmp::Reverse(v)))
                .expect("pool is nonempty");
            clique.push(v);
            pool = pool.intersect(&self.adj[v]);
        }
        clique
    }

    /// Greedy sequential colouring of `candidates` in position order. Returns
    /// vertices sorted by colour class together with the class number
    /// (1-based) of each, so a suffix ending at colour `c` can contribute at
    /// most `c` vertices to a clique.
    fn colour_sort(&self, candidates: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = candidates.clone();
        let mut out = Vec::with_capacity(candidates.count());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut available = uncoloured.clone();
            while let Some(v) = available.first() {
                available.remove(v);
                available.subtract_in_place(&self.adj[v]);
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut candidates: BitSet) {
        let coloured = self.colour_sort(&candidates);
        for &(v, colour) in coloured.iter().rev() {
            if self.current.len() + colour <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = candidates.intersect(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }
}

/// Vertices ordered so that the search colours high-degree vertices first:
/// repeatedly peel a minimum-degree vertex and place it last.
fn degeneracy_order(graph: &CompatGraph) -> Vec<usize> {
    let count = graph.len();
    let mut remaining = BitSet::full(count);
    let mut degree: Vec<usize> = (0..count).map(|v| graph.degree_of(v)).collect();
    let mut peeled = Vec::with_capacity(count);
    for _ in 0..count {
        let v = remaining
            .iter()
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        remaining.remove(v);
        for u in graph.adjacency[v].intersect(&remaining).iter() {
            degree[u] -= 1;
        }
        peeled.push(v);
    }
    peeled.reverse();
    peeled
}

/// Result of a brute-force search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    pub witness: Family,
}

/// Exact size of the largest member of `M_n^d`, with one witness. The
/// witness is re-checked with [`Family::is_member`] before it is returned.
pub fn max_family_bruteforce(p: FieldChar, n: usize, d: usize, config: &OracleConfig) -> Result<OracleResult> {
    if d > n {
        return Err(Error::OutOfRange(format!("d must lie in 0..={n} (got {d})")));
    }
    let graph = CompatGraph::build(p, n, d, config)?;
    solve(&graph)
}

/// Runs the search on a prepared graph (e.g. a permuted one).
pub fn solve(graph: &CompatGraph) -> Result<OracleResult> {
    let witness = graph.maximum_family()?;
    if !witness.is_member(graph.d)? {
        return Err(Error::Invariant(
            "clique search returned a family outside M_n^d".into(),
        ));
    }
    Ok(OracleResult {
        size: witness.len(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(p: u64) -> FieldChar {
        FieldChar::new(p).unwrap()
    }

    fn f2(s: &str) -> Poly {
        Poly::parse(s, Some(FieldChar::TWO)).unwrap()
    }

    /// Exhaustive maximum clique over all vertex subsets.
    fn brute_clique(graph: &CompatGraph) -> usize {
        let n = graph.len();
        assert!(n <= 20);
        (0u32..1 << n)
            .filter(|mask| {
                (0..n).all(|i| {
                    mask >> i & 1 == 0
                        || (i + 1..n).all(|j| mask >> j & 1 == 0 || graph.adjacent(i, j))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn enumerate_sn_examples() {
        let cfg = OracleConfig::default();
        assert_eq!(
            enumerate_sn(FieldChar::TWO, 2, &cfg).unwrap(),
            vec![f2("x^2+1"), f2("x^2+x+1")]
        );
        assert_eq!(enumerate_sn(FieldChar::TWO, 3, &cfg).unwrap().len(), 4);
        assert_eq!(enumerate_sn(fc(3), 2, &cfg).unwrap().len(), 6);
        assert!(matches!(
            enumerate_sn(FieldChar::TWO, 11, &cfg),
            Err(Error::OracleCapExceeded { vertices: 1024, cap: 512 })
        ));
        assert_eq!(sn_size(fc(5), 3), Some(100));
    }

    #[test]
    fn graph_examples() {
        let cfg = OracleConfig::default();
        let g = CompatGraph::build(FieldChar::TWO, 3, 1, &cfg).unwrap();
        for i in 0..4 {
            assert!(!g.adjacent(i, i));
            assert_eq!(g.degree_of(i), 3);
        }
        let g0 = CompatGraph::build(FieldChar::TWO, 3, 0, &cfg).unwrap();
        let a = g0.vertices().iter().position(|v| *v == f2("x^3+1")).unwrap();
        let b = g0.vertices().iter().position(|v| *v == f2("x+1").pow(3)).unwrap();
        assert!(!g0.adjacent(a, b));
        let g2 = CompatGraph::build(FieldChar::TWO, 2, 0, &cfg).unwrap();
        assert!(g2.adjacent(0, 1));
    }

    #[test]
    fn small_maxima() {
        let cfg = OracleConfig::default();
        assert_eq!(max_family_bruteforce(FieldChar::TWO, 3, 1, &cfg).unwrap().size, 4);
        assert_eq!(max_family_bruteforce(FieldChar::TWO, 4, 1, &cfg).unwrap().size, 7);
        assert_eq!(max_family_bruteforce(FieldChar::TWO, 2, 1, &cfg).unwrap().size, 2);
        assert!(max_family_bruteforce(FieldChar::TWO, 3, 4, &cfg).is_err());
    }

    #[test]
    fn branch_and_bound_matches_subset_enumeration() {
        let cfg = OracleConfig::default();
        for (p, n) in [(2u64, 2usize), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)] {
            for d in 0..n {
                let g = CompatGraph::build(fc(p), n, d, &cfg).unwrap();
                assert_eq!(g.maximum_clique().len(), brute_clique(&g), "p={p} n={n} d={d}");
            }
        }
    }

    #[test]
    fn permutation_validation() {
        let g = CompatGraph::build(FieldChar::TWO, 3, 0, &OracleConfig::default()).unwrap();
        assert!(g.permuted(&[0, 1, 2]).is_err());
        assert!(g.permuted(&[0, 1, 1, 2]).is_err());
        let r = g.permuted(&[3, 2, 1, 0]).unwrap();
        assert_eq!(r.vertices()[0], g.vertices()[3]);
        assert_eq!(r.adjacent(0, 3), g.adjacent(3, 0));
    }
}
