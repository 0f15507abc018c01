//! Competition numbers and edge clique covers of complete multipartite graphs.

use crate::error::{check_cap, Error, Result};
use crate::graph::families::complete_multipartite;
use crate::graph::{bits, Graph};
use crate::report::VerificationReport;
use serde::Serialize;
use serde_json::json;
use std::collections::HashMap;

pub const ORACLE_LIMIT: usize = 6;
pub const ORACLE_KMAX: usize = 4;
pub const ECC_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueCover {
    /// Each clique as a vertex mask.
    pub cliques: Vec<u64>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Every clique is complete in `g` and every edge lies in some clique.
    pub fn covers(&self, g: &Graph) -> bool {
        let complete = self.cliques.iter().all(|&c| bits(c).all(|v| g.neighbors(v) & c == c & !(1 << v)));
        complete && g.edges().iter().all(|&(u, v)| self.cliques.iter().any(|&c| c >> u & 1 == 1 && c >> v & 1 == 1))
    }
}

fn require_sorted(parts: &[usize]) -> Result<()> {
    if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
        return Err(Error::NotSorted(parts.to_vec()));
    }
    Ok(())
}

/// Three-case closed form for `κ(K_{n1,n2,n3})`.
pub fn tripartite_kappa(n1: usize, n2: usize, n3: usize) -> Result<usize> {
    require_sorted(&[n1, n2, n3])?;
    let n = (n1 + n2 + n3) as i64;
    let base = (n1 * n2) as i64 - n;
    let v = if n2 >= n3 + 2 {
        base + 2
    } else if n2 == n3 + 1 || (n2 == 1 && n3 == 1) {
        base + 3
    } else {
        base + 4
    };
    Ok(v.max(0) as usize)
}

/// Triangles `{a_i, b_j, c_{(i+j) mod n3}}` on the consecutive part labeling.
pub fn tripartite_clique_cover(n1: usize, n2: usize, n3: usize) -> Result<CliqueCover> {
    require_sorted(&[n1, n2, n3])?;
    let (a, b, c) = (0, n1, n1 + n2);
    let cliques = (0..n1)
        .flat_map(|i| (0..n2).map(move |j| 1u64 << (a + i) | 1 << (b + j) | 1 << (c + (i + j) % n3)))
        .collect();
    Ok(CliqueCover { cliques })
}

/// Maximal cliques of `g[within]` by Bron–Kerbosch with pivoting.
pub fn maximal_cliques(g: &Graph, within: u64) -> Vec<u64> {
    let mut out = Vec::new();
    bron_kerbosch(g, 0, within, 0, &mut out);
    out.sort_unstable();
    out
}

fn bron_kerbosch(g: &Graph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        if r != 0 {
            out.push(r);
        }
        return;
    }
    let pivot = bits(p | x).max_by_key(|&u| (g.neighbors(u) & p).count_ones()).unwrap();
    for v in bits(p & !g.neighbors(pivot)) {
        let nv = g.neighbors(v);
        bron_kerbosch(g, r | 1 << v, p & nv, x & nv, out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

fn edge_index(g: &Graph) -> (Vec<(usize, usize)>, HashMap<(usize, usize), usize>) {
    let edges = g.edges();
    let idx = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    (edges, idx)
}

fn clique_edges(c: u64, idx: &HashMap<(usize, usize), usize>) -> u128 {
    let vs: Vec<usize> = bits(c).collect();
    let mut m = 0u128;
    for (x, &u) in vs.iter().enumerate() {
        for &v in &vs[x + 1..] {
            m |= 1 << idx[&(u, v)];
        }
    }
    m
}

/// Fewest cliques from `pool` covering `need`, if at most `limit`.
fn min_set_cover(pool: &[u128], need: u128, edges: &[(usize, usize)], limit: usize) -> Option<Vec<usize>> {
    let max_gain = pool.iter().map(|m| m.count_ones()).max().unwrap_or(1).max(1);
    let mut best: Option<Vec<usize>> = None;
    let mut chosen = Vec::new();
    fn go(
        pool: &[u128],
        need: u128,
        edges: &[(usize, usize)],
        max_gain: u32,
        limit: usize,
        chosen: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
    ) {
        let cap = best.as_ref().map_or(limit + 1, |b| b.len());
        if need == 0 {
            if chosen.len() < cap {
                *best = Some(chosen.clone());
            }
            return;
        }
        let lower = need.count_ones().div_ceil(max_gain) as usize;
        if chosen.len() + lower >= cap {
            return;
        }
        let e = need.trailing_zeros();
        let _ = edges;
        for (i, &m) in pool.iter().enumerate() {
            if m >> e & 1 == 1 {
                chosen.push(i);
                go(pool, need & !m, edges, max_gain, limit, chosen, best);
                chosen.pop();
            }
        }
    }
    go(pool, need, edges, max_gain, limit, &mut chosen, &mut best);
    best
}

/// Minimum edge clique cover from maximal cliques (optimal: any cover can be
/// enlarged to maximal cliques without growing).
pub fn min_edge_clique_cover(g: &Graph) -> Result<CliqueCover> {
    check_cap("edge clique cover order", ECC_LIMIT, g.n())?;
    let (edges, idx) = edge_index(g);
    check_cap("edge clique cover edges", 128, edges.len())?;
    let cliques: Vec<u64> = maximal_cliques(g, g.vertex_mask()).into_iter().filter(|c| c.count_ones() >= 2).collect();
    let pool: Vec<u128> = cliques.iter().map(|&c| clique_edges(c, &idx)).collect();
    let need = if edges.is_empty() { 0 } else { u128::MAX >> (128 - edges.len()) };
    let pick = min_set_cover(&pool, need, &edges, edges.len()).expect("edges themselves form a cover");
    Ok(CliqueCover { cliques: pick.into_iter().map(|i| cliques[i]).collect() })
}

/// Least `k ≤ kmax` such that `g` plus `k` isolated vertices is the competition
/// graph of an acyclic digraph, if any.
///
/// Certificate: a vertex order and one clique per vertex drawn from the vertices
/// before it, plus `k` unconstrained cliques for the added vertices, together
/// covering every edge. Cliques of a prefix can be taken maximal there.
pub fn kappa_oracle(g: &Graph, kmax: usize) -> Result<Option<usize>> {
    check_cap("competition oracle order", ORACLE_LIMIT, g.n())?;
    check_cap("competition oracle kmax", ORACLE_KMAX, kmax)?;
    let (edges, idx) = edge_index(g);
    if edges.is_empty() {
        return Ok(Some(0));
    }
    let full_need = u128::MAX >> (128 - edges.len());
    let global: Vec<u128> = maximal_cliques(g, g.vertex_mask()).into_iter().map(|c| clique_edges(c, &idx)).collect();
    let mut prefix_cliques: HashMap<u64, Vec<u128>> = HashMap::new();
    let mut memo: HashMap<(u64, u128), usize> = HashMap::new();
    let best = search(g, 0, full_need, &edges, &idx, &global, &mut prefix_cliques, &mut memo, kmax);
    Ok((best <= kmax).then_some(best))
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    prefix: u64,
    need: u128,
    edges: &[(usize, usize)],
    idx: &HashMap<(usize, usize), usize>,
    global: &[u128],
    prefix_cliques: &mut HashMap<u64, Vec<u128>>,
    memo: &mut HashMap<(u64, u128), usize>,
    kmax: usize,
) -> usize {
    if let Some(&v) = memo.get(&(prefix, need)) {
        return v;
    }
    let result = if prefix == g.vertex_mask() {
        min_set_cover(global, need, edges, kmax).map_or(kmax + 1, |c| c.len())
    } else {
        let options: Vec<u128> = prefix_cliques
            .entry(prefix)
            .or_insert_with(|| maximal_cliques(g, prefix).into_iter().map(|c| clique_edges(c, idx)).collect())
            .clone();
        let mut best = kmax + 1;
        for v in bits(g.vertex_mask() & !prefix) {
            let next = prefix | 1 << v;
            if options.is_empty() {
                best = best.min(search(g, next, need, edges, idx, global, prefix_cliques, memo, kmax));
            }
            for &m in &options {
                best = best.min(search(g, next, need & !m, edges, idx, global, prefix_cliques, memo, kmax));
                if best == 0 {
                    break;
                }
            }
            if best == 0 {
                break;
            }
        }
        best
    };
    memo.insert((prefix, need), result);
    result
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipartiteBounds {
    pub lower: i64,
    /// Known only for balanced parts with admissible `r` and `n ≢ 2 (mod 4)`.
    pub upper: Option<i64>,
}

/// `κ ≥ min{2n₂ − 1, n₁ + n_r − 2}`, and `κ ≤ n² − 2n + 2` for balanced `K_{r(n)}`
/// when `r_admissible` and `n ≢ 2 (mod 4)`.
pub fn multipartite_bounds(parts: &[usize], r_admissible: bool) -> Result<MultipartiteBounds> {
    require_sorted(parts)?;
    if parts.len() < 2 {
        return Err(Error::Precondition("at least two parts are needed".into()));
    }
    let (n1, n2, nr) = (parts[0] as i64, parts[1] as i64, *parts.last().unwrap() as i64);
    let lower = (2 * n2 - 1).min(n1 + nr - 2);
    let balanced = parts.iter().all(|&x| x == parts[0]);
    let upper = (balanced && r_admissible && parts[0] % 4 != 2).then(|| n1 * n1 - 2 * n1 + 2);
    Ok(MultipartiteBounds { lower, upper })
}

/// Non-increasing part lists with `r ≥ min_parts` and total `n`.
pub fn partitions(n: usize, min_parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (1..=rest.min(max)).rev() {
            cur.push(x);
            go(rest - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.retain(|p| p.len() >= min_parts);
    out
}

pub fn thm_6_9() -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "thm-6.9",
        "κ(K_{n1,n2,n3}) = n1n2 − n + 2 if n2 ≥ n3 + 2; + 3 if n2 = n3 + 1 or n2 = n3 = 1; + 4 if n2 = n3 ≥ 2",
    );
    r.note("closed form against the certificate oracle for n ≤ 6; triangle cover against exact minimum clique covers for n ≤ 7");
    for n in 3..=7 {
        for p in partitions(n, 3).into_iter().filter(|p| p.len() == 3) {
            let (n1, n2, n3) = (p[0], p[1], p[2]);
            let g = complete_multipartite(&p);
            let cover = tripartite_clique_cover(n1, n2, n3)?;
            let theta = min_edge_clique_cover(&g)?.len();
            let ok = cover.covers(&g) && cover.len() == n1 * n2 && theta == n1 * n2;
            r.check(format!("cover{n1},{n2},{n3}"), (!ok).then(|| json!({"triangles": cover.len(), "theta_e": theta})));
            if n <= ORACLE_LIMIT {
                let formula = tripartite_kappa(n1, n2, n3)?;
                let oracle = kappa_oracle(&g, ORACLE_KMAX)?;
                if formula <= ORACLE_KMAX {
                    r.check(
                        format!("kappa{n1},{n2},{n3}"),
                        (oracle != Some(formula)).then(|| json!({"formula": formula, "oracle": oracle})),
                    );
                }
            }
        }
    }
    Ok(r.finish())
}

pub fn thm_6_10(max_vertices: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "thm-6.10",
        "2 ≤ r ≤ L(n) + 2: θₑ(K_{r(n)}) = n² iff n ≢ 2 (mod 4)",
    );
    r.note("L(n) is not defined; r = 2 and r = 3 are taken as admissible for every n (any L(n) ≥ 1 allows them)");
    let mut table = Vec::new();
    for n in 1..=4 {
        for rr in 2..=3 {
            if n * rr > max_vertices.min(ECC_LIMIT) {
                continue;
            }
            let theta = min_edge_clique_cover(&complete_multipartite(&vec![n; rr]))?.len();
            let predicted = n % 4 != 2;
            let holds = theta == n * n;
            table.push(json!({"n": n, "r": rr, "theta_e": theta}));
            r.check(format!("K{rr}({n})"), (holds != predicted).then(|| json!({"theta_e": theta, "n_squared": n * n})));
        }
    }
    // r = 4 needs two orthogonal Latin squares; recorded without a verdict.
    for n in 1..=3 {
        if 4 * n <= max_vertices.min(ECC_LIMIT) {
            let theta = min_edge_clique_cover(&complete_multipartite(&[n; 4]))?.len();
            table.push(json!({"n": n, "r": 4, "theta_e": theta}));
        }
    }
    r.detail("theta_values", table);
    Ok(r.finish())
}

pub fn thm_6_11() -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "thm-6.11",
        "κ(K_{n1,…,nr}) ≥ min{2n₂ − 1, n₁ + n_r − 2}; balanced: ≥ 3n − 5, ≥ n² − rn + 3r − 5 (n ≥ 3), ≤ n² − 2n + 2",
    );
    r.note("κ from the certificate oracle for every multipartite graph with n ≤ 6 and κ ≤ 4; r treated as admissible");
    for n in 2..=ORACLE_LIMIT {
        for p in partitions(n, 2) {
            let g = complete_multipartite(&p);
            let Some(kappa) = kappa_oracle(&g, ORACLE_KMAX)? else {
                r.detail(&format!("beyond_kmax:{p:?}"), true);
                continue;
            };
            let k = kappa as i64;
            let b = multipartite_bounds(&p, true)?;
            let mut bad = k < b.lower || b.upper.is_some_and(|u| k > u);
            let balanced = p.iter().all(|&x| x == p[0]);
            let (nn, rr) = (p[0] as i64, p.len() as i64);
            if balanced && nn >= 2 {
                bad |= k < 3 * nn - 5;
            }
            if balanced && nn >= 3 {
                bad |= k < nn * nn - rr * nn + 3 * rr - 5;
            }
            r.check(format!("{p:?}"), bad.then(|| json!({"kappa": kappa, "lower": b.lower, "upper": b.upper})));
        }
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn closed_forms() {
        assert_eq!(tripartite_kappa(2, 2, 2).unwrap(), 2);
        assert_eq!(tripartite_kappa(1, 1, 1).unwrap(), 1);
        assert_eq!(tripartite_kappa(3, 3, 1).unwrap(), 4);
        assert!(tripartite_kappa(1, 2, 1).is_err());
        let b = multipartite_bounds(&[2, 2, 2], true).unwrap();
        assert_eq!((b.lower, b.upper), (2, None));
        let b = multipartite_bounds(&[3, 3, 3], true).unwrap();
        assert_eq!((b.lower, b.upper), (4, Some(5)));
        assert_eq!(multipartite_bounds(&[5, 1], true).unwrap().lower, 1);
        assert!(multipartite_bounds(&[1, 5], true).is_err());
    }

    #[test]
    fn covers() {
        let c = tripartite_clique_cover(2, 2, 2).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.covers(&complete_multipartite(&[2, 2, 2])));
        assert_eq!(tripartite_clique_cover(1, 1, 1).unwrap().cliques, vec![0b111]);
        let c = tripartite_clique_cover(3, 2, 1).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.cliques.iter().all(|&m| m >> 5 & 1 == 1));
        assert_eq!(min_edge_clique_cover(&cycle(5)).unwrap().len(), 5);
        assert_eq!(min_edge_clique_cover(&complete(5)).unwrap().len(), 1);
    }

    #[test]
    fn oracle() {
        assert_eq!(kappa_oracle(&complete(3), 4).unwrap(), Some(1));
        assert_eq!(kappa_oracle(&cycle(4), 4).unwrap(), Some(2));
        assert_eq!(kappa_oracle(&complete_multipartite(&[2, 2, 2]), 4).unwrap(), Some(2));
        // Chordal graphs have κ ≤ 1; trees with an edge have κ = 1.
        assert_eq!(kappa_oracle(&path(5), 4).unwrap(), Some(1));
        assert_eq!(kappa_oracle(&Graph::empty(3).unwrap(), 4).unwrap(), Some(0));
        assert!(kappa_oracle(&complete(7), 4).is_err());
    }

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(4, 1).len(), 5);
        assert_eq!(partitions(6, 3).iter().filter(|p| p.len() == 3).count(), 3);
    }
}
