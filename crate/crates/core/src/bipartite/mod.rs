//! Equitable colorings, long cycles, bi-holes, unmixedness, spanning paths
//! through one side, and tree embeddings that keep the host connected.

pub mod claims;

use crate::error::{check_cap, Error, Result};
use crate::graph::{bits, low_mask, Bipartition, Graph};
use rand::Rng;
use serde::Serialize;

pub const COLORING_LIMIT: usize = 16;
pub const CHROMATIC_LIMIT: usize = 14;
pub const CYCLE_LIMIT: usize = 14;
pub const BIHOLE_SIDE_LIMIT: usize = 12;
pub const THRESHOLD_LIMIT: usize = 7;
pub const UNMIXED_SIDE_LIMIT: usize = 12;
pub const EMBED_LIMIT: usize = 10;
pub const BPATH_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquitableColoring {
    pub k: usize,
    /// Color classes; empty classes appear only when `k > n`.
    pub classes: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
}

impl EquitableColoring {
    /// Independent classes partitioning the vertices with sizes within one.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = 0u64;
        for class in &self.classes {
            let mask = class.iter().fold(0u64, |m, &v| m | 1 << v);
            if mask & seen != 0 || class.iter().any(|&v| g.neighbors(v) & mask != 0) {
                return false;
            }
            seen |= mask;
        }
        let (lo, hi) = (self.sizes.iter().min(), self.sizes.iter().max());
        seen == g.vertex_mask() && self.classes.len() == self.k && hi.zip(lo).is_some_and(|(h, l)| h - l <= 1)
    }
}

struct ColorSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    k: usize,
    q: usize,
    r: usize,
    class: Vec<u64>,
    size: Vec<usize>,
    big: usize,
    used: usize,
}

impl ColorSearch<'_> {
    fn cap(&self) -> usize {
        if self.r > 0 {
            self.q + 1
        } else {
            self.q
        }
    }

    fn deficit(&self) -> usize {
        self.size.iter().map(|&s| self.q.saturating_sub(s)).sum()
    }

    fn run(&mut self, idx: usize) -> bool {
        let n = self.order.len();
        if idx == n {
            return true;
        }
        let v = self.order[idx];
        let mut colors: Vec<usize> = (0..self.k.min(self.used + 1))
            .filter(|&c| {
                self.class[c] & self.g.neighbors(v) == 0
                    && self.size[c] < self.cap()
                    && (self.size[c] < self.q || self.big < self.r)
            })
            .collect();
        // Most residual room first.
        colors.sort_by_key(|&c| (self.size[c], c));
        for c in colors {
            let opened = c == self.used;
            self.class[c] |= 1 << v;
            self.size[c] += 1;
            if self.size[c] == self.q + 1 {
                self.big += 1;
            }
            if opened {
                self.used += 1;
            }
            if self.deficit() < n - idx && self.run(idx + 1) {
                return true;
            }
            if opened {
                self.used -= 1;
            }
            if self.size[c] == self.q + 1 {
                self.big -= 1;
            }
            self.size[c] -= 1;
            self.class[c] &= !(1 << v);
        }
        false
    }
}

/// Backtracking over vertices in non-increasing degree order. Colors are used in
/// first-appearance order, which removes the symmetry among unused colors.
pub fn equitable_color(g: &Graph, k: usize) -> Result<Option<EquitableColoring>> {
    check_cap("equitable coloring order", COLORING_LIMIT, g.n())?;
    if k == 0 {
        return Err(Error::Precondition("at least one color is needed".into()));
    }
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut s = ColorSearch {
        g,
        order,
        k,
        q: n / k,
        r: n % k,
        class: vec![0; k],
        size: vec![0; k],
        big: 0,
        used: 0,
    };
    if !s.run(0) {
        return Ok(None);
    }
    let classes: Vec<Vec<usize>> = s.class.iter().map(|&m| bits(m).collect()).collect();
    Ok(Some(EquitableColoring { k, sizes: s.size, classes }))
}

/// `⌈n/⌊k/2⌋⌉ − ⌊n/⌈k/2⌉⌋ ≤ 1`.
pub fn knn_condition(n: usize, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} must be at least 2")));
    }
    let lo = k / 2;
    let hi = k.div_ceil(2);
    Ok(n.div_ceil(lo) - n / hi <= 1)
}

pub fn equitable_chromatic_number(g: &Graph) -> Result<usize> {
    check_cap("equitable chromatic number order", CHROMATIC_LIMIT, g.n())?;
    for k in 1..=g.n() {
        if equitable_color(g, k)?.is_some() {
            return Ok(k);
        }
    }
    Ok(g.n())
}

/// `⌈(|X| + |Y| + 1) / (min(|X|, |Y|) + 1)⌉` for the bipartition of a tree.
pub fn tree_equitable_bound(x: usize, y: usize) -> usize {
    (x + y + 1).div_ceil(x.min(y) + 1)
}

/// Circumference by subset dynamic programming: for each lowest vertex `s`,
/// `reach[S]` holds the endpoints of paths from `s` through exactly `S`.
pub fn longest_cycle(g: &Graph) -> Result<usize> {
    let n = g.n();
    check_cap("longest cycle order", CYCLE_LIMIT, n)?;
    let mut best = 0;
    for s in 0..n {
        if n - s <= best {
            break;
        }
        let above = g.vertex_mask() & !low_mask(s + 1);
        let shift = s + 1;
        let width = n - shift;
        let mut reach = vec![0u64; 1 << width];
        for v in bits(g.neighbors(s) & above) {
            reach[1 << (v - shift)] |= 1 << v;
        }
        for sub in 1..reach.len() {
            let ends = reach[sub];
            if ends == 0 {
                continue;
            }
            let len = sub.count_ones() as usize + 1;
            if len >= 3 && ends & g.neighbors(s) != 0 {
                best = best.max(len);
            }
            let visited = (sub as u64) << shift;
            for v in bits(ends) {
                for w in bits(g.neighbors(v) & above & !visited) {
                    reach[sub | 1 << (w - shift)] |= 1 << w;
                }
            }
        }
    }
    Ok(best)
}

/// Every two-coloring of `g`: both orientations of each component.
pub fn all_bipartitions(g: &Graph) -> Result<Vec<Bipartition>> {
    let base = g.bipartition().ok_or(Error::NotBipartite)?;
    let comps = g.components();
    check_cap("component count for bipartition flips", 20, comps.len())?;
    Ok((0..1u64 << comps.len())
        .map(|flip| {
            let mut a = base.part_a();
            for (i, &c) in comps.iter().enumerate() {
                if flip >> i & 1 == 1 {
                    a ^= c;
                }
            }
            Bipartition::from_masks(g.n(), a, g.vertex_mask() & !a)
        })
        .collect())
}

fn min_degree_on(g: &Graph, side: u64) -> usize {
    bits(side).map(|v| g.degree(v)).min().unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleBound {
    /// 2-connected, degrees at least `k` on A and `l` on B: circumference ≥ 2·min(|B|, k+l−1, 2k−2).
    MinDegree,
    /// Edge counts above the two-case threshold force a cycle of length ≥ 2m.
    EdgeCount,
    /// Degrees at least `k` on A and `|B| ≤ ⌈|A|/(k−1)⌉(k−1)` force a cycle of length ≥ 2k.
    SideDegree,
}

/// Edge threshold for a cycle of length at least `2m`.
pub fn edge_threshold(a: usize, b: usize, m: usize) -> usize {
    if b <= 2 * m - 2 {
        b + (a - 1) * (m - 1)
    } else {
        (b + a + 3 - 2 * m) * (m - 1)
    }
}

/// Result of testing one graph: `(instance tag, failure witness)` per checked case.
pub type Checks = Vec<(String, Option<serde_json::Value>)>;

/// Compares the circumference of `g` against one of the cycle-length bounds.
/// Returns no cases when the hypotheses are unmet.
pub fn check_cycle_bounds(g: &Graph, which: CycleBound) -> Result<Checks> {
    let mut out = Checks::new();
    let parts = all_bipartitions(g)?;
    if which == CycleBound::MinDegree && (g.n() < 3 || g.vertex_connectivity()? < 2) {
        return Ok(out);
    }
    let c = longest_cycle(g)?;
    let m_edges = g.m();
    for (idx, p) in parts.iter().enumerate() {
        let (a, b) = (p.size_a(), p.size_b());
        let (ka, kb) = (min_degree_on(g, p.part_a()), min_degree_on(g, p.part_b()));
        match which {
            CycleBound::MinDegree => {
                if a < b {
                    continue;
                }
                let mut bound = 2 * b.min(ka + kb - 1).min(2 * ka - 2);
                if ka == kb && a == b {
                    bound = bound.max(2 * b.min(2 * ka - 1));
                }
                out.push((
                    format!("p{idx}"),
                    (c < bound).then(|| serde_json::json!({"circumference": c, "bound": bound, "k": ka, "l": kb})),
                ));
            }
            CycleBound::EdgeCount => {
                if a < b {
                    continue;
                }
                for m in 2..=b {
                    let t = edge_threshold(a, b, m);
                    if m_edges > t {
                        out.push((
                            format!("p{idx}m{m}"),
                            (c < 2 * m).then(|| serde_json::json!({"circumference": c, "edges": m_edges, "threshold": t})),
                        ));
                    }
                }
            }
            CycleBound::SideDegree => {
                for k in 2..=ka {
                    if b <= a.div_ceil(k - 1) * (k - 1) {
                        out.push((
                            format!("p{idx}k{k}"),
                            (c < 2 * k).then(|| serde_json::json!({"circumference": c, "k": k, "a": a, "b": b})),
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiHole {
    pub k: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Largest balanced `A' × B'` with no edges, by scanning subsets of A.
pub fn max_bihole(g: &Graph, bip: &Bipartition) -> Result<BiHole> {
    let (sa, sb) = (bip.size_a(), bip.size_b());
    if sa != sb {
        return Err(Error::Unbalanced(sa, sb));
    }
    check_cap("bi-hole side", BIHOLE_SIDE_LIMIT, sa)?;
    let a_side = bip.part_a();
    let mut best = (0usize, 0u64, 0u64);
    let mut sub = a_side;
    loop {
        let nb = bits(sub).fold(0u64, |m, v| m | g.neighbors(v));
        let free = bip.part_b() & !nb;
        let k = (sub.count_ones() as usize).min(free.count_ones() as usize);
        if k > best.0 || (k == best.0 && (sub, free) < (best.1, best.2)) {
            best = (k, sub, free);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & a_side;
    }
    let (k, sub, free) = best;
    Ok(BiHole { k, a: bits(sub).take(k).collect(), b: bits(free).take(k).collect() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMode {
    /// f(n, Δ): only degrees in A are bounded.
    OneSided,
    /// f*(n, Δ): every degree is bounded.
    BothSides,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub value: usize,
    /// Neighborhoods in B (as bit masks over `0..n`) of a graph attaining the value.
    pub witness: Vec<u64>,
}

struct ThresholdSearch {
    n: usize,
    delta: usize,
    mode: DegreeMode,
    choices: Vec<u64>,
    best: usize,
    witness: Vec<u64>,
}

impl ThresholdSearch {
    /// Bi-hole among the placed A vertices only; it persists in every completion.
    fn partial_hole(&self, rows: &[u64]) -> usize {
        let full = low_mask(self.n);
        let mut best = 0;
        for sub in 1u64..1 << rows.len() {
            let nb = bits(sub).fold(0u64, |m, i| m | rows[i]);
            best = best.max((sub.count_ones() as usize).min((full & !nb).count_ones() as usize));
        }
        best
    }

    fn run(&mut self, rows: &mut Vec<u64>, from: usize, bdeg: &mut [usize]) {
        if self.partial_hole(rows) >= self.best {
            return;
        }
        if rows.len() == self.n {
            self.best = self.partial_hole(rows);
            self.witness = rows.clone();
            return;
        }
        for ci in from..self.choices.len() {
            let nb = self.choices[ci];
            if self.mode == DegreeMode::BothSides && bits(nb).any(|j| bdeg[j] >= self.delta) {
                continue;
            }
            for j in bits(nb) {
                bdeg[j] += 1;
            }
            rows.push(nb);
            self.run(rows, ci, bdeg);
            rows.pop();
            for j in bits(nb) {
                bdeg[j] -= 1;
            }
        }
    }
}

/// Exact `f(n, Δ)` or `f*(n, Δ)`: the minimum of `max_bihole` over the class.
///
/// A vertices are interchangeable, so their neighborhoods are chosen in
/// non-decreasing order. Deleting edges never shrinks the largest bi-hole, so in
/// one-sided mode only A-degree exactly `min(Δ, n)` is explored.
pub fn bihole_threshold(n: usize, delta: usize, mode: DegreeMode) -> Result<Threshold> {
    check_cap("bi-hole threshold side", THRESHOLD_LIMIT, n)?;
    check_cap("bi-hole threshold degree", 3, delta.min(n))?;
    if n == 0 {
        return Ok(Threshold { value: 0, witness: vec![] });
    }
    let d = delta.min(n);
    let choices: Vec<u64> = (0..1u64 << n)
        .filter(|m| {
            let c = m.count_ones() as usize;
            match mode {
                DegreeMode::OneSided => c == d,
                DegreeMode::BothSides => c <= d,
            }
        })
        .collect();
    let mut s = ThresholdSearch { n, delta: d, mode, choices, best: n + 1, witness: vec![] };
    s.run(&mut Vec::new(), 0, &mut vec![0; n]);
    Ok(Threshold { value: s.best, witness: s.witness })
}

/// The bipartite graph on `A = 0..n`, `B = n..2n` with the given A-neighborhoods.
pub fn from_neighborhoods(n: usize, rows: &[u64]) -> Result<(Graph, Bipartition)> {
    let edges = rows.iter().enumerate().flat_map(|(i, &nb)| bits(nb).map(move |j| (i, n + j)));
    let g = Graph::new(2 * n, edges)?;
    let a = low_mask(n);
    Ok((g.clone(), Bipartition::for_graph(&g, a, g.vertex_mask() & !a)?))
}

fn require_balanced_cover_case(g: &Graph, bip: &Bipartition) -> Result<()> {
    Bipartition::for_graph(g, bip.part_a(), bip.part_b())?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::Precondition(format!("vertex {v} is isolated")));
    }
    if bip.size_a() != bip.size_b() {
        return Err(Error::Unbalanced(bip.size_a(), bip.size_b()));
    }
    Ok(())
}

/// Perfect matchings `x_i y_i` are searched for one whose index relation
/// `i → j ⇔ x_i ~ y_j` is transitive on distinct triples.
pub fn is_unmixed(g: &Graph, bip: &Bipartition) -> Result<bool> {
    require_balanced_cover_case(g, bip)?;
    check_cap("unmixed side", UNMIXED_SIDE_LIMIT, bip.size_a())?;
    let xs = bip.a_vertices();
    let mut ys: Vec<usize> = Vec::with_capacity(xs.len());
    Ok(pair_up(g, &xs, &mut ys, 0))
}

fn pair_up(g: &Graph, xs: &[usize], ys: &mut Vec<usize>, used: u64) -> bool {
    let t = ys.len();
    if t == xs.len() {
        return true;
    }
    for y in bits(g.neighbors(xs[t]) & !used) {
        ys.push(y);
        let e = |i: usize, j: usize| g.has_edge(xs[i], ys[j]);
        let ok = (0..=t).all(|i| {
            (0..=t).all(|j| {
                (0..=t).all(|k| {
                    (i == j || j == k || i == k) || !(i == t || j == t || k == t) || !(e(i, j) && e(j, k)) || e(i, k)
                })
            })
        });
        if ok && pair_up(g, xs, ys, used | 1 << y) {
            return true;
        }
        ys.pop();
    }
    false
}

/// Sizes of all minimal vertex covers, by subset enumeration.
pub fn minimal_cover_sizes(g: &Graph) -> Result<Vec<usize>> {
    check_cap("minimal vertex cover enumeration order", 16, g.n())?;
    let edges = g.edges();
    let mut sizes: Vec<usize> = (0..1u64 << g.n())
        .filter(|&c| {
            edges.iter().all(|&(u, v)| (c >> u | c >> v) & 1 == 1)
                && bits(c).all(|v| g.neighbors(v) & !c != 0)
        })
        .map(|c| c.count_ones() as usize)
        .collect();
    sizes.sort_unstable();
    sizes.dedup();
    Ok(sizes)
}

/// Unmixed by definition: every minimal vertex cover has the same size.
pub fn is_unmixed_oracle(g: &Graph) -> Result<bool> {
    Ok(minimal_cover_sizes(g)?.len() <= 1)
}

/// Injective homomorphism of tree `t` into `g` with `φ(Z_i) ⊆ U_i`, leaving
/// `g − φ(t)` `k`-connected. Uses the canonical two-colorings of both graphs.
pub fn find_embedding(t: &Graph, g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    let z = t.bipartition().ok_or(Error::NotBipartite)?;
    let u = g.bipartition().ok_or(Error::NotBipartite)?;
    find_embedding_with(t, &z, g, &u, k)
}

pub fn find_embedding_with(
    t: &Graph,
    z: &Bipartition,
    g: &Graph,
    u: &Bipartition,
    k: usize,
) -> Result<Option<Vec<usize>>> {
    check_cap("embedding host order", EMBED_LIMIT, g.n())?;
    check_cap("embedding connectivity k", 3, k)?;
    if !t.is_tree() {
        return Err(Error::Precondition("the pattern must be a tree".into()));
    }
    Bipartition::for_graph(g, u.part_a(), u.part_b())?;
    if t.n() > g.n() {
        return Ok(None);
    }
    // BFS order so every vertex after the root has its parent placed.
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; t.n()];
    let mut seen = 1u64;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for w in bits(t.neighbors(v) & !seen) {
            seen |= 1 << w;
            parent[w] = v;
            order.push(w);
        }
        i += 1;
    }
    let root_side = if z.in_b(0) { u.part_b() } else { u.part_a() };
    let mut phi = vec![usize::MAX; t.n()];
    for r in bits(root_side) {
        phi[0] = r;
        if place(g, k, &order, &parent, &mut phi, 1, 1 << r) {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn place(g: &Graph, k: usize, order: &[usize], parent: &[usize], phi: &mut [usize], idx: usize, used: u64) -> bool {
    if idx == order.len() {
        let rest = g.vertex_mask() & !used;
        return rest.count_ones() as usize > k && g.connectivity_within(rest) >= k;
    }
    let v = order[idx];
    for w in bits(g.neighbors(phi[parent[v]]) & !used) {
        phi[v] = w;
        if place(g, k, order, parent, phi, idx + 1, used | 1 << w) {
            return true;
        }
    }
    false
}

/// A `u`–`v` path containing every vertex of side B, if one exists.
pub fn path_through_all_b(g: &Graph, bip: &Bipartition, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    check_cap("spanning-B path order", BPATH_LIMIT, n)?;
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    let need = bip.part_b();
    if u == v {
        return Ok((need & !(1 << u) == 0).then(|| vec![u]));
    }
    let mut reach = vec![0u64; 1 << n];
    reach[1 << u] = 1 << u;
    for mask in 1..reach.len() {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        for e in bits(ends) {
            for w in bits(g.neighbors(e) & !(mask as u64)) {
                reach[mask | 1 << w] |= 1 << w;
            }
        }
    }
    let Some(mut mask) =
        (0..reach.len()).find(|&m| (m as u64) & need == need && reach[m] >> v & 1 == 1)
    else {
        return Ok(None);
    };
    let mut path = vec![v];
    let mut cur = v;
    while mask != 1 << u {
        let prev_mask = mask & !(1 << cur);
        let prev = bits(reach[prev_mask] & g.neighbors(cur)).next().expect("predecessor recorded");
        path.push(prev);
        mask = prev_mask;
        cur = prev;
    }
    path.reverse();
    Ok(Some(path))
}

/// `G(a, b, p)` with `A = 0..a` and `B = a..a+b`.
pub fn random_bipartite(rng: &mut impl Rng, a: usize, b: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).filter(|_| rng.random_bool(p)).collect();
    Graph::new(a + b, edges).expect("vertices in range")
}
