//! Standard graph families. Orders outside `1..=64` panic.

use super::Graph;

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path order in range")
}

/// Cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs three vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle order in range")
}

/// Star on `n` vertices with center 0.
pub fn star(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (0, i))).expect("star order in range")
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("order in range")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    complete_multipartite(&[a, b])
}

/// Complete multipartite graph; part `i` occupies a consecutive block of vertices.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let mut owner = Vec::new();
    for (i, &p) in parts.iter().enumerate() {
        owner.extend(std::iter::repeat_n(i, p));
    }
    let n = owner.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let owner_ref = &owner;
    Graph::new(n, edges.filter(|&(u, v)| owner_ref[u] != owner_ref[v])).expect("order in range")
}

/// Perfect matching `{i, k + i}` on `2k` vertices.
pub fn matching(k: usize) -> Graph {
    Graph::new(2 * k, (0..k).map(|i| (i, k + i))).expect("order in range")
}
