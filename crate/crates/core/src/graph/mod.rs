//! Simple undirected graphs on at most 64 vertices, stored as one neighbor
//! bitmask per vertex.
//!
//! Every other module consumes [`Graph`]; it is immutable once built, so it can
//! be shared freely between rayon workers.

mod canon;
pub mod enumerate;
pub mod families;
pub mod io;

pub use canon::{canonical_code, rooted_tree_code, CanonicalCode};

use crate::error::{check_cap, Error, Result};
use serde::{Deserialize, Serialize};

pub const MAX_VERTICES: usize = 64;
/// Largest order for the exhaustive separator search.
pub const CONNECTIVITY_LIMIT: usize = 16;

/// Iterates the set bits of a mask from lowest to highest.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs collapse to one edge.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        check_cap("graph order", MAX_VERTICES, n)?;
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    /// Builds from neighbor masks. Callers inside the crate guarantee symmetry.
    pub(crate) fn from_rows(adj: Vec<u64>) -> Self {
        debug_assert!(!adj.is_empty() && adj.len() <= MAX_VERTICES);
        debug_assert!((0..adj.len()).all(|v| adj[v] >> v & 1 == 0));
        debug_assert!((0..adj.len()).all(|u| bits(adj[u]).all(|v| adj[v] >> u & 1 == 1)));
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    /// Vertices reachable from `start` without leaving `within`.
    pub fn reach_within(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Whether the subgraph induced by `within` is connected (an empty set counts as connected).
    pub fn is_connected_within(&self, within: u64) -> bool {
        if within == 0 {
            return true;
        }
        let start = within.trailing_zeros() as usize;
        self.reach_within(start, within) == within
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertex_mask())
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let c = self.reach_within(left.trailing_zeros() as usize, left);
            out.push(c);
            left &= !c;
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n && self.is_connected()
    }

    /// Subgraph induced by the vertices in `mask`, relabeled in increasing order.
    pub fn induced(&self, mask: u64) -> Option<Graph> {
        let keep: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        if keep.is_empty() {
            return None;
        }
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let rows = keep
            .iter()
            .map(|&v| bits(self.adj[v] & mask).fold(0u64, |acc, w| acc | 1 << index[w]))
            .collect();
        Some(Graph::from_rows(rows))
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in bits(self.adj[u]) {
                rows[perm[u]] |= 1 << perm[v];
            }
        }
        Graph::from_rows(rows)
    }

    /// Copy with one more vertex adjacent to `neighbors`.
    pub fn with_vertex(&self, neighbors: u64) -> Result<Graph> {
        check_cap("graph order", MAX_VERTICES, self.n + 1)?;
        let neighbors = neighbors & self.vertex_mask();
        let new = self.n;
        let mut rows = self.adj.clone();
        for v in bits(neighbors) {
            rows[v] |= 1 << new;
        }
        rows.push(neighbors);
        Ok(Graph::from_rows(rows))
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut rows = self.adj.clone();
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
        Graph::from_rows(rows)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut rows = self.adj.clone();
        rows[u] &= !(1 << v);
        rows[v] &= !(1 << u);
        Graph::from_rows(rows)
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::from_unsorted(self.degrees())
    }

    /// Two-coloring with side A for the smallest vertex of each component;
    /// `None` iff some component has an odd cycle.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut side_b = 0u64;
        let mut colored = 0u64;
        for start in 0..self.n {
            if colored >> start & 1 == 1 {
                continue;
            }
            colored |= 1 << start;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let v_is_b = side_b >> v & 1 == 1;
                for w in bits(self.adj[v]) {
                    if colored >> w & 1 == 1 {
                        if (side_b >> w & 1 == 1) == v_is_b {
                            return None;
                        }
                    } else {
                        colored |= 1 << w;
                        if !v_is_b {
                            side_b |= 1 << w;
                        }
                        stack.push(w);
                    }
                }
            }
        }
        Some(Bipartition::from_masks(self.n, self.vertex_mask() & !side_b, side_b))
    }

    /// Minimum number of vertices whose removal disconnects the graph, and
    /// `n - 1` for complete graphs.
    pub fn vertex_connectivity(&self) -> Result<usize> {
        check_cap("vertex connectivity order", CONNECTIVITY_LIMIT, self.n)?;
        Ok(self.connectivity_within(self.vertex_mask()))
    }

    /// Connectivity of the subgraph induced by `within` (0 if it is empty).
    pub(crate) fn connectivity_within(&self, within: u64) -> usize {
        let size = within.count_ones() as usize;
        if size == 0 {
            return 0;
        }
        let complete = bits(within).all(|v| (self.adj[v] & within).count_ones() as usize == size - 1);
        if complete {
            return size - 1;
        }
        let verts: Vec<usize> = bits(within).collect();
        // Any separator has at most min-degree vertices, so the search stops there.
        let min_deg = verts
            .iter()
            .map(|&v| (self.adj[v] & within).count_ones() as usize)
            .min()
            .unwrap_or(0);
        for s in 0..=min_deg.min(size - 2) {
            let mut found = false;
            for_each_subset_of_size(&verts, s, &mut |cut| {
                if !found && !self.is_connected_within(within & !cut) {
                    found = true;
                }
                found
            });
            if found {
                return s;
            }
        }
        min_deg.min(size - 1)
    }
}

/// Calls `f` on every `k`-subset of `items` (as a mask); stops early when `f` returns true.
pub(crate) fn for_each_subset_of_size(items: &[usize], k: usize, f: &mut dyn FnMut(u64) -> bool) {
    fn rec(items: &[usize], k: usize, start: usize, acc: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return f(acc);
        }
        if items.len() - start < k {
            return false;
        }
        for i in start..=items.len() - k {
            if rec(items, k - 1, i + 1, acc | 1 << items[i], f) {
                return true;
            }
        }
        false
    }
    rec(items, k, 0, 0, f);
}

/// Degree list stored largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    /// Accepts only non-increasing input.
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        if degrees.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSorted(degrees));
        }
        Ok(DegreeSequence { degrees })
    }

    pub fn from_unsorted(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence { degrees }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Erdős–Gallai test.
    pub fn is_graphical(&self) -> bool {
        let d = &self.degrees;
        let n = d.len();
        if self.sum() % 2 == 1 || d.first().is_some_and(|&x| x >= n.max(1)) && n > 0 {
            return self.sum() == 0 && n <= 1 && d.iter().all(|&x| x == 0);
        }
        let mut prefix = 0usize;
        for k in 1..=n {
            prefix += d[k - 1];
            let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
            if prefix > k * (k - 1) + tail {
                return false;
            }
        }
        true
    }

    /// True for the degree lists of trees: entries positive and sum `2(len - 1)`
    /// (the single vertex `(0)` included).
    pub fn is_tree_realizable(&self) -> bool {
        match self.degrees.as_slice() {
            [] => false,
            [0] => true,
            d => d.iter().all(|&x| x >= 1) && self.sum() == 2 * (d.len() - 1),
        }
    }

    /// Prefix sums of `self` dominate those of `other`.
    pub fn majorizes(&self, other: &DegreeSequence) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        let mut a = 0usize;
        let mut b = 0usize;
        for (x, y) in self.degrees.iter().zip(&other.degrees) {
            a += x;
            b += y;
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Side assignment of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    n: usize,
    a: u64,
    b: u64,
}

impl Bipartition {
    pub fn from_masks(n: usize, a: u64, b: u64) -> Self {
        debug_assert_eq!(a & b, 0);
        debug_assert_eq!(a | b, low_mask(n));
        Bipartition { n, a, b }
    }

    /// Checks that the masks partition `g` and no edge stays inside a part.
    pub fn for_graph(g: &Graph, a: u64, b: u64) -> Result<Self> {
        if a & b != 0 || a | b != g.vertex_mask() {
            return Err(Error::Precondition("parts must partition the vertex set".into()));
        }
        if bits(a).any(|v| g.neighbors(v) & a != 0) || bits(b).any(|v| g.neighbors(v) & b != 0) {
            return Err(Error::NotBipartite);
        }
        Ok(Bipartition { n: g.n(), a, b })
    }

    pub fn part_a(&self) -> u64 {
        self.a
    }

    pub fn part_b(&self) -> u64 {
        self.b
    }

    pub fn size_a(&self) -> usize {
        self.a.count_ones() as usize
    }

    pub fn size_b(&self) -> usize {
        self.b.count_ones() as usize
    }

    pub fn in_b(&self, v: usize) -> bool {
        self.b >> v & 1 == 1
    }

    pub fn swapped(&self) -> Self {
        Bipartition { n: self.n, a: self.b, b: self.a }
    }

    pub fn a_vertices(&self) -> Vec<usize> {
        bits(self.a).collect()
    }

    pub fn b_vertices(&self) -> Vec<usize> {
        bits(self.b).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn build_and_validate() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(k2.m(), 1);
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.degrees(), vec![1, 2, 2, 1]);
        let s = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(s.max_degree(), 3);
        let dup = Graph::new(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.m(), 1);

        assert_eq!(Graph::new(3, [(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(matches!(Graph::new(65, []), Err(Error::Capacity { .. })));
        assert_eq!(Graph::new(0, []), Err(Error::EmptyGraph));
        Graph::empty(64).unwrap();
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(path(4).degree_sequence().as_slice(), &[2, 2, 1, 1]);
        assert_eq!(star(4).degree_sequence().as_slice(), &[3, 1, 1, 1]);
        assert_eq!(cycle(6).degree_sequence().as_slice(), &[2; 6]);
        assert!(DegreeSequence::new(vec![1, 2]).is_err());
        let d = DegreeSequence::new(vec![3, 1, 1, 1]).unwrap();
        assert!(d.is_tree_realizable() && d.is_graphical());
        assert!(!DegreeSequence::new(vec![3, 3, 1, 1]).unwrap().is_graphical());
        assert!(DegreeSequence::new(vec![2, 2, 2]).unwrap().is_graphical());
        assert!(!DegreeSequence::new(vec![2, 2, 2]).unwrap().is_tree_realizable());
        assert!(DegreeSequence::new(vec![0]).unwrap().is_tree_realizable());
    }

    #[test]
    fn erdos_gallai_matches_realization_search() {
        // Every sequence on up to 6 vertices, against the degree lists of all graphs.
        use std::collections::HashSet;
        for n in 1..=6 {
            let mut realized = HashSet::new();
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << pairs.len() {
                let g = Graph::new(n, bits(mask as u64).map(|i| pairs[i])).unwrap();
                realized.insert(g.degree_sequence());
            }
            let mut seq = vec![0usize; n];
            loop {
                let d = DegreeSequence::from_unsorted(seq.clone());
                assert_eq!(d.is_graphical(), realized.contains(&d), "{d}");
                let mut i = 0;
                while i < n && seq[i] == n - 1 {
                    seq[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                seq[i] += 1;
            }
        }
    }

    #[test]
    fn trees_and_bipartitions() {
        assert!(path(4).is_tree());
        assert!(!cycle(6).is_tree());
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_tree());

        let b = cycle(6).bipartition().unwrap();
        assert_eq!((b.size_a(), b.size_b()), (3, 3));
        assert!(complete(3).bipartition().is_none());
        let b = path(4).bipartition().unwrap();
        assert_eq!(b.a_vertices(), vec![0, 2]);
        assert_eq!(b.b_vertices(), vec![1, 3]);
    }

    #[test]
    fn connectivity() {
        assert_eq!(cycle(6).vertex_connectivity().unwrap(), 2);
        assert_eq!(complete(4).vertex_connectivity().unwrap(), 3);
        assert_eq!(path(4).vertex_connectivity().unwrap(), 1);
        assert_eq!(Graph::new(4, [(0, 1), (2, 3)]).unwrap().vertex_connectivity().unwrap(), 0);
        assert_eq!(complete_bipartite(3, 3).vertex_connectivity().unwrap(), 3);
        assert_eq!(Graph::empty(1).unwrap().vertex_connectivity().unwrap(), 0);
        assert!(Graph::empty(17).unwrap().vertex_connectivity().is_err());
    }

    #[test]
    fn induced_and_relabel() {
        let c = cycle(6);
        let h = c.induced(0b000111).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
        let r = c.relabel(&[1, 2, 3, 4, 5, 0]);
        assert_eq!(r.m(), 6);
        assert_eq!(r.degree_sequence(), c.degree_sequence());
    }
}
