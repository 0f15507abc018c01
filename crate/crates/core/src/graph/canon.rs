//! Isomorphism-complete codes: rooted parenthesis codes for trees and a
//! minimized adjacency string for small general graphs.

use super::{bits, Graph};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const TREE_CODE_LIMIT: usize = 24;
pub const GRAPH_CODE_LIMIT: usize = 16;

/// Equal codes ⇔ isomorphic graphs. Trees start with `T`, other graphs with `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    let n = g.n();
    if g.is_tree() && n <= TREE_CODE_LIMIT {
        let mut s = String::with_capacity(2 * n + 1);
        s.push('T');
        s.push_str(std::str::from_utf8(&tree_code(g)).expect("ascii"));
        return Ok(CanonicalCode(s));
    }
    if n > GRAPH_CODE_LIMIT {
        let limit = if g.is_tree() { TREE_CODE_LIMIT } else { GRAPH_CODE_LIMIT };
        return Err(Error::Capacity { what: "canonical code order", limit, got: n });
    }
    let best = min_adjacency_string(g);
    let mut s = format!("G{n}:");
    for byte in best {
        s.push_str(&format!("{byte:02x}"));
    }
    Ok(CanonicalCode(s))
}

/// Parenthesis code of `g` rooted at `root`; children codes sorted ascending.
/// Only meaningful for trees.
pub fn rooted_tree_code(g: &Graph, root: usize) -> Vec<u8> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for w in bits(g.neighbors(v)) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut kids: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut ch = std::mem::take(&mut kids[v]);
        ch.sort_unstable();
        let mut code = Vec::with_capacity(2 + ch.iter().map(|c| c.len()).sum::<usize>());
        code.push(b'(');
        for c in ch {
            code.extend_from_slice(&c);
        }
        code.push(b')');
        if v == root {
            codes[v] = code;
        } else {
            kids[parent[v]].push(code);
        }
    }
    std::mem::take(&mut codes[root])
}

/// Vertices whose removal leaves components of size at most n/2.
pub fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(v) = stack.pop() {
        order.push(v);
        for w in bits(g.neighbors(v)) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    let mut heaviest = vec![0usize; n];
    for &v in order.iter().rev() {
        if v != 0 {
            let p = parent[v];
            size[p] += size[v];
            heaviest[p] = heaviest[p].max(size[v]);
        }
    }
    (0..n).filter(|&v| heaviest[v].max(n - size[v]) * 2 <= n).collect()
}

fn tree_code(g: &Graph) -> Vec<u8> {
    centroids(g).into_iter().map(|c| rooted_tree_code(g, c)).min().expect("a tree has a centroid")
}

/// Ordered partition as a list of cells.
type Partition = Vec<Vec<usize>>;

fn refine(g: &Graph, cells: &mut Partition) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter: u64 = cells[s].iter().fold(0, |acc, &v| acc | 1 << v);
            for x in 0..cells.len() {
                if cells[x].len() < 2 {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cells[x].iter().map(|&v| ((g.neighbors(v) & splitter).count_ones(), v)).collect();
                if keyed.iter().all(|&(k, _)| k == keyed[0].0) {
                    continue;
                }
                keyed.sort_unstable();
                let mut pieces: Vec<Vec<usize>> = Vec::new();
                let mut last = u32::MAX;
                for (k, v) in keyed {
                    if k != last {
                        pieces.push(Vec::new());
                        last = k;
                    }
                    pieces.last_mut().unwrap().push(v);
                }
                cells.splice(x..=x, pieces);
                continue 'outer;
            }
        }
        return;
    }
}

/// Lower-triangle adjacency bits, row by row, for the order given by singleton cells.
/// Only the first `upto` positions are encoded.
fn prefix_bits(g: &Graph, order: &[usize], upto: usize) -> Vec<u8> {
    let total = upto * upto.saturating_sub(1) / 2;
    let mut out = vec![0u8; total.div_ceil(8)];
    let mut k = 0;
    for i in 1..upto {
        for j in 0..i {
            if g.has_edge(order[i], order[j]) {
                out[k / 8] |= 0x80 >> (k % 8);
            }
            k += 1;
        }
    }
    out
}

/// Length of the leading run of singleton cells.
fn fixed_prefix(cells: &Partition) -> Vec<usize> {
    cells.iter().take_while(|c| c.len() == 1).map(|c| c[0]).collect()
}

/// Compares the bit prefix of a partial code with the same-length prefix of `best`.
fn prefix_cmp(partial: &[u8], partial_bits: usize, best: &[u8]) -> std::cmp::Ordering {
    let full = partial_bits / 8;
    match partial[..full].cmp(&best[..full]) {
        std::cmp::Ordering::Equal => {}
        other => return other,
    }
    let rem = partial_bits % 8;
    if rem == 0 {
        return std::cmp::Ordering::Equal;
    }
    let mask = !(0xffu8 >> rem);
    (partial[full] & mask).cmp(&(best[full] & mask))
}

fn search(g: &Graph, cells: Partition, best: &mut Option<Vec<u8>>) {
    let n = g.n();
    let fixed = fixed_prefix(&cells);
    if let Some(b) = best.as_ref() {
        let t = fixed.len();
        let nbits = t * t.saturating_sub(1) / 2;
        let partial = prefix_bits(g, &fixed, t);
        if prefix_cmp(&partial, nbits, b) == std::cmp::Ordering::Greater {
            return;
        }
    }
    if fixed.len() == n {
        let code = prefix_bits(g, &fixed, n);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let target = (0..cells.len())
        .filter(|&i| cells[i].len() > 1)
        .min_by_key(|&i| (cells[i].len(), i))
        .expect("non-discrete partition has a non-singleton cell");
    let cell = cells[target].clone();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        // Twins inside a cell are exchanged by an automorphism fixing everything else.
        if tried.iter().any(|&u| g.neighbors(u) & !(1 << v) == g.neighbors(v) & !(1 << u)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        refine(g, &mut next);
        search(g, next, best);
    }
}

fn min_adjacency_string(g: &Graph) -> Vec<u8> {
    let mut cells: Partition = vec![(0..g.n()).collect()];
    refine(g, &mut cells);
    let mut best = None;
    search(g, cells, &mut best);
    best.expect("search reaches a leaf")
}

#[cfg(test)]
mod tests {
    use super::super::families::*;
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn relabelings_share_codes() {
        let p = path(4);
        let q = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_code(&p).unwrap(), canonical_code(&q).unwrap());
        assert_ne!(canonical_code(&p).unwrap(), canonical_code(&star(4)).unwrap());
        assert_eq!(canonical_code(&complete(2)).unwrap().as_str(), "T(())");
        assert!(canonical_code(&cycle(5)).unwrap().as_str().starts_with("G5:"));
    }

    #[test]
    fn matches_permutation_isomorphism_n5() {
        // Every labeled graph on 5 vertices: the canonical code must agree with
        // the minimum over all 120 relabelings of the raw adjacency string.
        let n = 5;
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut by_code = std::collections::HashMap::new();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::new(n, bits(mask as u64).map(|i| pairs[i])).unwrap();
            let brute = perms
                .iter()
                .map(|p| {
                    let h = g.relabel(p);
                    let order: Vec<usize> = (0..n).collect();
                    prefix_bits(&h, &order, n)
                })
                .min()
                .unwrap();
            let code = canonical_code(&g).unwrap();
            if let Some(prev) = by_code.insert(code.clone(), brute.clone()) {
                assert_eq!(prev, brute, "{code}");
            }
        }
        // 34 isomorphism classes of graphs on 5 vertices.
        assert_eq!(by_code.len(), 34);
    }

    #[test]
    fn symmetric_graphs_terminate() {
        for g in [complete(16), Graph::empty(16).unwrap(), complete_bipartite(8, 8), cycle(16)] {
            let c = canonical_code(&g).unwrap();
            let shuffled = g.relabel(&[5, 3, 9, 0, 15, 1, 14, 2, 8, 4, 13, 6, 12, 7, 10, 11]);
            assert_eq!(c, canonical_code(&shuffled).unwrap());
        }
        assert!(canonical_code(&cycle(17)).is_err());
        assert!(canonical_code(&path(24)).is_ok());
        assert!(canonical_code(&path(25)).is_err());
    }

    #[test]
    fn centroid_counts() {
        assert_eq!(centroids(&path(4)), vec![1, 2]);
        assert_eq!(centroids(&path(5)), vec![2]);
        assert_eq!(centroids(&star(6)), vec![0]);
    }
}
