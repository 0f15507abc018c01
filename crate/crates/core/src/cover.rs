//! Exterior covers of relations `K ⊆ S × T`, matching duality, the lattice of
//! minimal exterior pairs, and the canonical block decomposition.

use crate::error::{check_cap, Error, Result};
use crate::graph::{bits, low_mask, Bipartition, Graph};
use crate::report::VerificationReport;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

pub const DIMENSION_LIMIT: usize = 40;
pub const MEP_SIDE_LIMIT: usize = 12;
pub const VERIFY_SIDE_LIMIT: usize = 8;

/// `K` as a `p × q` incidence matrix; row `i` holds the columns of `s_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelationGraph {
    p: usize,
    q: usize,
    rows: Vec<u64>,
}

impl RelationGraph {
    pub fn new(p: usize, q: usize, rows: Vec<u64>) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Precondition("both sides need at least one element".into()));
        }
        check_cap("relation side", 32, p.max(q))?;
        if rows.len() != p {
            return Err(Error::LengthMismatch(rows.len(), p));
        }
        if rows.iter().any(|&r| r & !low_mask(q) != 0) {
            return Err(Error::Precondition(format!("a row has a column outside 0..{q}")));
        }
        Ok(RelationGraph { p, q, rows })
    }

    pub fn from_cells(p: usize, q: usize, cells: &[(usize, usize)]) -> Result<Self> {
        let mut rows = vec![0u64; p];
        for &(i, j) in cells {
            if i >= p || j >= q {
                return Err(Error::VertexOutOfRange { vertex: i.max(j), n: p.max(q) });
            }
            rows[i] |= 1 << j;
        }
        RelationGraph::new(p, q, rows)
    }

    /// Rows of `0`/`1` characters; blank lines are skipped.
    pub fn parse_matrix(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let q = lines.first().map(|l| l.len()).ok_or_else(|| Error::Parse("empty matrix".into()))?;
        let mut rows = Vec::with_capacity(lines.len());
        for (i, l) in lines.iter().enumerate() {
            if l.len() != q {
                return Err(Error::Parse(format!("row {i} has {} columns, expected {q}", l.len())));
            }
            let mut r = 0u64;
            for (j, ch) in l.chars().enumerate() {
                match ch {
                    '1' => r |= 1 << j,
                    '0' => {}
                    other => return Err(Error::Parse(format!("unexpected character {other:?} in row {i}"))),
                }
            }
            rows.push(r);
        }
        RelationGraph::new(lines.len(), q, rows)
    }

    /// Side A of the bipartition indexes rows, side B columns.
    pub fn from_bipartite(g: &Graph, bip: &Bipartition) -> Result<Self> {
        Bipartition::for_graph(g, bip.part_a(), bip.part_b())?;
        let (a, b) = (bip.a_vertices(), bip.b_vertices());
        let rows = a
            .iter()
            .map(|&s| b.iter().enumerate().filter(|(_, &t)| g.has_edge(s, t)).fold(0u64, |m, (j, _)| m | 1 << j))
            .collect();
        RelationGraph::new(a.len(), b.len(), rows)
    }

    pub fn to_matrix(&self) -> String {
        self.rows
            .iter()
            .map(|&r| (0..self.q).map(|j| if r >> j & 1 == 1 { '1' } else { '0' }).collect::<String>() + "\n")
            .collect()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        let full = low_mask(self.q);
        RelationGraph { p: self.p, q: self.q, rows: self.rows.iter().map(|r| !r & full).collect() }
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.q).map(|j| (0..self.p).filter(|&i| self.has(i, j)).fold(0u64, |m, i| m | 1 << i)).collect();
        RelationGraph { p: self.q, q: self.p, rows }
    }

    /// Columns adjacent to some row of `a`.
    pub fn neighborhood(&self, a: u64) -> u64 {
        bits(a).fold(0u64, |m, i| m | self.rows[i])
    }

    /// `K ⊆ (A × T) ∪ (S × B)`.
    pub fn is_covered_by(&self, a: u64, b: u64) -> bool {
        (0..self.p).all(|i| a >> i & 1 == 1 || self.rows[i] & !b == 0)
    }

    /// `K ∩ (rows × cols)`, reindexed.
    pub fn restrict(&self, rows: u64, cols: u64) -> Option<Self> {
        let (ri, ci): (Vec<usize>, Vec<usize>) = (bits(rows).collect(), bits(cols).collect());
        if ri.is_empty() || ci.is_empty() {
            return None;
        }
        let out = ri
            .iter()
            .map(|&i| ci.iter().enumerate().filter(|(_, &j)| self.has(i, j)).fold(0u64, |m, (k, _)| m | 1 << k))
            .collect();
        Some(RelationGraph { p: ri.len(), q: ci.len(), rows: out })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExteriorPair {
    /// Rows in the cover, as a bit mask over `S`.
    pub a: u64,
    /// Columns in the cover, as a bit mask over `T`.
    pub b: u64,
}

impl ExteriorPair {
    pub fn weight(&self) -> usize {
        (self.a.count_ones() + self.b.count_ones()) as usize
    }
}

/// Maximum matching by augmenting paths; `mate[i]` is the column of row `i`.
pub fn max_disjoint_subgraph(k: &RelationGraph) -> Vec<(usize, usize)> {
    let mut col_mate = vec![usize::MAX; k.q];
    for i in 0..k.p {
        let mut seen = 0u64;
        augment(k, i, &mut seen, &mut col_mate);
    }
    let mut out: Vec<(usize, usize)> =
        col_mate.iter().enumerate().filter(|(_, &i)| i != usize::MAX).map(|(j, &i)| (i, j)).collect();
    out.sort_unstable();
    out
}

fn augment(k: &RelationGraph, i: usize, seen: &mut u64, col_mate: &mut [usize]) -> bool {
    for j in bits(k.rows[i] & !*seen) {
        *seen |= 1 << j;
        if col_mate[j] == usize::MAX || augment(k, col_mate[j], seen, col_mate) {
            col_mate[j] = i;
            return true;
        }
    }
    false
}

/// `E(K)` by König duality, with the cover read off alternating reachability.
pub fn exterior_dimension(k: &RelationGraph) -> Result<(usize, ExteriorPair)> {
    check_cap("exterior dimension p + q", DIMENSION_LIMIT, k.p + k.q)?;
    let m = max_disjoint_subgraph(k);
    let cover = alternating_cover(k, &m, false);
    debug_assert!(k.is_covered_by(cover.a, cover.b) && cover.weight() == m.len());
    Ok((m.len(), cover))
}

/// From unmatched rows (`from_columns = false`) this yields the minimal pair
/// with the largest row set; from unmatched columns, the one with the smallest.
fn alternating_cover(k: &RelationGraph, matching: &[(usize, usize)], from_columns: bool) -> ExteriorPair {
    let mut row_mate = vec![usize::MAX; k.p];
    let mut col_mate = vec![usize::MAX; k.q];
    for &(i, j) in matching {
        row_mate[i] = j;
        col_mate[j] = i;
    }
    let (mut zr, mut zc) = (0u64, 0u64);
    if !from_columns {
        let mut stack: Vec<usize> = (0..k.p).filter(|&i| row_mate[i] == usize::MAX).collect();
        for &i in &stack {
            zr |= 1 << i;
        }
        while let Some(i) = stack.pop() {
            for j in bits(k.rows[i] & !zc) {
                zc |= 1 << j;
                let i2 = col_mate[j];
                if i2 != usize::MAX && zr >> i2 & 1 == 0 {
                    zr |= 1 << i2;
                    stack.push(i2);
                }
            }
        }
        ExteriorPair { a: low_mask(k.p) & !zr, b: zc }
    } else {
        let t = k.transpose();
        let flipped: Vec<(usize, usize)> = matching.iter().map(|&(i, j)| (j, i)).collect();
        let c = alternating_cover(&t, &flipped, false);
        ExteriorPair { a: c.b, b: c.a }
    }
}

/// All minimal exterior pairs: for each row set `A` the only candidate is
/// `B = N(S \ A)`, kept when the weight equals `E(K)`.
pub fn enumerate_meps(k: &RelationGraph) -> Result<Vec<ExteriorPair>> {
    check_cap("minimal exterior pair side", MEP_SIDE_LIMIT, k.p.max(k.q))?;
    let full = low_mask(k.p);
    let pairs: Vec<ExteriorPair> = (0..=full).map(|a| ExteriorPair { a, b: k.neighborhood(full & !a) }).collect();
    let e = pairs.iter().map(ExteriorPair::weight).min().unwrap_or(0);
    let mut out: Vec<ExteriorPair> = pairs.into_iter().filter(|c| c.weight() == e).collect();
    out.sort();
    Ok(out)
}

/// Minimum cover weight by subset scan, independent of matching.
pub fn exterior_dimension_brute(k: &RelationGraph) -> usize {
    let full = low_mask(k.p);
    (0..=full).map(|a| (a.count_ones() + k.neighborhood(full & !a).count_ones()) as usize).min().unwrap_or(0)
}

/// Largest `ν(A) + ν(B)` with `A × B ⊆ K`, `A` and `B` nonempty; 0 if none.
pub fn interior_dimension(k: &RelationGraph) -> usize {
    let full_cols = low_mask(k.q);
    (1..=low_mask(k.p))
        .filter_map(|a| {
            let common = bits(a).fold(full_cols, |m, i| m & k.rows[i]);
            (common != 0).then(|| (a.count_ones() + common.count_ones()) as usize)
        })
        .max()
        .unwrap_or(0)
}

/// Cells of `K` inside `⋃ A × B` over the minimal exterior pairs of `K`.
pub fn inadmissible_cells(k: &RelationGraph) -> Result<Vec<(usize, usize)>> {
    let span = mep_span(k, &enumerate_meps(k)?);
    Ok((0..k.p).flat_map(|i| bits(k.rows[i] & span[i]).map(move |j| (i, j))).collect())
}

fn mep_span(k: &RelationGraph, meps: &[ExteriorPair]) -> Vec<u64> {
    (0..k.p).map(|i| meps.iter().filter(|c| c.a >> i & 1 == 1).fold(0u64, |m, c| m | c.b)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub rows: u64,
    pub cols: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    /// `[A_*, B^*]`: the minimal pair with the fewest rows.
    pub low: ExteriorPair,
    /// `[A^*, B_*]`: the minimal pair with the most rows.
    pub high: ExteriorPair,
    /// Fine blocks `S_i × T_i` in an order whose prefixes give minimal pairs.
    pub blocks: Vec<Block>,
    /// Per row, the columns of each region.
    pub r1: Vec<u64>,
    pub r2: Vec<u64>,
    pub r3: Vec<u64>,
    /// Cells of `K` in `R_2`.
    pub inadmissible: Vec<(usize, usize)>,
}

impl CanonicalDecomposition {
    pub fn a_low(&self) -> u64 {
        self.low.a
    }

    pub fn a_high(&self) -> u64 {
        self.high.a
    }

    pub fn b_low(&self) -> u64 {
        self.high.b
    }

    pub fn b_high(&self) -> u64 {
        self.low.b
    }

    /// The pairs `[A_* ∪ S_Λ, B_* ∪ T_Π]` for complementary `Λ, Π`.
    pub fn gamma(&self) -> Vec<ExteriorPair> {
        let k = self.blocks.len();
        let mut out: Vec<ExteriorPair> = (0..1u64 << k)
            .map(|lambda| {
                let (mut a, mut b) = (self.a_low(), self.b_low());
                for (i, blk) in self.blocks.iter().enumerate() {
                    if lambda >> i & 1 == 1 {
                        a |= blk.rows;
                    } else {
                        b |= blk.cols;
                    }
                }
                ExteriorPair { a, b }
            })
            .collect();
        out.sort();
        out
    }

    /// The chain `[A_*, B^*], [A_1, B_1], …, [A^*, B_*]` of prefix unions.
    pub fn alpha(&self) -> Vec<ExteriorPair> {
        let mut a = self.a_low();
        let all_cols: u64 = self.blocks.iter().fold(0, |m, b| m | b.cols);
        let mut b = self.b_low() | all_cols;
        let mut out = vec![ExteriorPair { a, b }];
        for blk in &self.blocks {
            a |= blk.rows;
            b &= !blk.cols;
            out.push(ExteriorPair { a, b });
        }
        out
    }
}

/// Extremal pairs from the m.e.p. lattice, fine blocks as strongly connected
/// components of the matched core, and the three regions.
pub fn canonical_decomposition(k: &RelationGraph) -> Result<CanonicalDecomposition> {
    let meps = enumerate_meps(k)?;
    let low = meps.iter().min_by_key(|c| (c.a.count_ones(), c.a)).cloned().expect("a minimal pair exists");
    let high = meps.iter().max_by_key(|c| (c.a.count_ones(), std::cmp::Reverse(c.a))).cloned().unwrap();
    let core_rows = high.a & !low.a;
    let core_cols = low.b & !high.b;
    // Pair core rows with core columns through a maximum matching of the core.
    let mut mate_of_row = vec![usize::MAX; k.p];
    if let Some(core) = k.restrict(core_rows, core_cols) {
        let (ri, ci): (Vec<usize>, Vec<usize>) = (bits(core_rows).collect(), bits(core_cols).collect());
        for (x, y) in max_disjoint_subgraph(&core) {
            mate_of_row[ri[x]] = ci[y];
        }
    }
    let core: Vec<usize> = bits(core_rows).collect();
    // Arc s → s' when s meets the column matched to s'. A block must follow
    // every block that has an edge into its columns.
    let succ = |s: usize| -> Vec<usize> {
        core.iter().copied().filter(|&s2| s2 != s && k.has(s, mate_of_row[s2])).collect()
    };
    let comps = tarjan(&core, &succ);
    // Tarjan emits sinks first; a sink here is a block whose rows reach no other block's columns.
    let blocks: Vec<Block> = comps
        .into_iter()
        .map(|c| Block { rows: c.iter().fold(0, |m, &s| m | 1 << s), cols: c.iter().fold(0, |m, &s| m | 1 << mate_of_row[s]) })
        .collect();
    let blocks = order_blocks(k, blocks);
    let span = mep_span(k, &meps);
    let full_cols = low_mask(k.q);
    let mut r1 = vec![0u64; k.p];
    for i in 0..k.p {
        if low.a >> i & 1 == 1 {
            r1[i] |= full_cols & !low.b;
        }
        if high.a >> i & 1 == 0 {
            r1[i] |= high.b;
        }
        for blk in &blocks {
            if blk.rows >> i & 1 == 1 {
                r1[i] |= blk.cols;
            }
        }
    }
    let r3: Vec<u64> = (0..k.p).map(|i| full_cols & !r1[i] & !span[i]).collect();
    let inadmissible = (0..k.p).flat_map(|i| bits(k.rows[i] & span[i]).map(move |j| (i, j))).collect();
    Ok(CanonicalDecomposition { low, high, blocks, r1, r2: span, r3, inadmissible })
}

/// Orders blocks so that an edge from `S_i` into `T_j` (`i ≠ j`) puts `i` first.
fn order_blocks(k: &RelationGraph, mut blocks: Vec<Block>) -> Vec<Block> {
    let mut ordered = Vec::with_capacity(blocks.len());
    while !blocks.is_empty() {
        let pos = (0..blocks.len())
            .filter(|&j| {
                (0..blocks.len()).all(|i| i == j || k.neighborhood(blocks[i].rows) & blocks[j].cols == 0)
            })
            .min_by_key(|&j| blocks[j].rows)
            .expect("the block graph is acyclic");
        ordered.push(blocks.remove(pos));
    }
    ordered
}

fn tarjan(nodes: &[usize], succ: &dyn Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    struct St<'a> {
        succ: &'a dyn Fn(usize) -> Vec<usize>,
        index: std::collections::HashMap<usize, usize>,
        low: std::collections::HashMap<usize, usize>,
        on: std::collections::HashSet<usize>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    fn visit(st: &mut St, v: usize) {
        st.index.insert(v, st.next);
        st.low.insert(v, st.next);
        st.next += 1;
        st.stack.push(v);
        st.on.insert(v);
        for w in (st.succ)(v) {
            if !st.index.contains_key(&w) {
                visit(st, w);
                let lw = st.low[&w];
                let lv = st.low.get_mut(&v).unwrap();
                *lv = (*lv).min(lw);
            } else if st.on.contains(&w) {
                let iw = st.index[&w];
                let lv = st.low.get_mut(&v).unwrap();
                *lv = (*lv).min(iw);
            }
        }
        if st.low[&v] == st.index[&v] {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().unwrap();
                st.on.remove(&w);
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.out.push(comp);
        }
    }
    let mut st = St {
        succ,
        index: Default::default(),
        low: Default::default(),
        on: Default::default(),
        stack: vec![],
        next: 0,
        out: vec![],
    };
    for &v in nodes {
        if !st.index.contains_key(&v) {
            visit(&mut st, v);
        }
    }
    st.out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoveringClaim {
    /// `E(K)` equals the largest disjoint subgraph and the brute-force minimum.
    Duality,
    /// `E(K) + I(K̄) = p + q` when `E(K) < p`, with the `E(K) = p` inequality branch.
    Identity,
    /// Irreducible tails and blocks of the canonical decomposition.
    Decomposition,
    /// Minimal pairs form a lattice with the two extremal pairs.
    Lattice,
    /// `α ⊆ β ⊆ γ`, and the minimal pairs of the admissible part are exactly `γ`.
    Chain,
}

fn pair_json(c: &ExteriorPair) -> serde_json::Value {
    json!({"a": bits(c.a).collect::<Vec<_>>(), "b": bits(c.b).collect::<Vec<_>>()})
}

/// Per-instance checks of one covering statement. Instances with `p > q` are transposed.
pub fn verify_covering(claim: CoveringClaim, k: &RelationGraph) -> Result<Vec<(String, Option<serde_json::Value>)>> {
    check_cap("covering verification side", VERIFY_SIDE_LIMIT, k.p.max(k.q))?;
    let k = if k.p > k.q { k.transpose() } else { k.clone() };
    let (p, q) = (k.p, k.q);
    let meps = enumerate_meps(&k)?;
    let (e, _) = exterior_dimension(&k)?;
    let mut out = Vec::new();
    match claim {
        CoveringClaim::Duality => {
            let (_, w) = exterior_dimension(&k)?;
            let matching = max_disjoint_subgraph(&k);
            let brute = exterior_dimension_brute(&k);
            let disjoint = matching.iter().all(|&(i, j)| k.has(i, j))
                && matching.iter().map(|x| x.0).collect::<std::collections::BTreeSet<_>>().len() == matching.len()
                && matching.iter().map(|x| x.1).collect::<std::collections::BTreeSet<_>>().len() == matching.len();
            let ok = disjoint && e == matching.len() && e == brute && k.is_covered_by(w.a, w.b) && w.weight() == e;
            out.push((
                "duality".into(),
                (!ok).then(|| json!({"e": e, "matching": matching.len(), "brute": brute})),
            ));
        }
        CoveringClaim::Identity => {
            let i = interior_dimension(&k.complement());
            if e < p {
                out.push(("identity".into(), (e + i != p + q).then(|| json!({"e": e, "i": i, "p": p, "q": q}))));
            } else {
                let proper = meps.iter().any(|c| c.a != low_mask(p) && c.b != low_mask(q));
                let ok = e + i <= p + q && ((e + i == p + q) == proper);
                out.push((
                    "boundary".into(),
                    (!ok).then(|| json!({"e": e, "i": i, "p": p, "q": q, "proper_pair": proper})),
                ));
            }
        }
        CoveringClaim::Decomposition => {
            let d = canonical_decomposition(&k)?;
            let full_rows = low_mask(p);
            let full_cols = low_mask(q);
            let mut parts = vec![
                ("tail-rows".to_string(), d.a_low(), full_cols & !d.b_high()),
                ("tail-cols".to_string(), full_rows & !d.a_high(), d.b_low()),
            ];
            parts.extend(d.blocks.iter().enumerate().map(|(bi, blk)| (format!("block{bi}"), blk.rows, blk.cols)));
            for (name, rows, cols) in parts {
                let mut want = match name.as_str() {
                    "tail-rows" => vec![ExteriorPair { a: rows, b: 0 }],
                    "tail-cols" => vec![ExteriorPair { a: 0, b: cols }],
                    _ => vec![ExteriorPair { a: rows, b: 0 }, ExteriorPair { a: 0, b: cols }],
                };
                want.sort();
                // An empty tail has the single pair (∅, ∅) under either description.
                let empty_tail = (name == "tail-rows" && rows == 0) || (name == "tail-cols" && cols == 0);
                let got: Vec<ExteriorPair> = match k.restrict(rows, cols) {
                    None => want.clone(),
                    Some(sub) => {
                        let (ri, ci): (Vec<usize>, Vec<usize>) = (bits(rows).collect(), bits(cols).collect());
                        let lift = |m: u64, idx: &[usize]| bits(m).fold(0u64, |acc, x| acc | 1 << idx[x]);
                        let mut v: Vec<ExteriorPair> = enumerate_meps(&sub)?
                            .into_iter()
                            .map(|c| ExteriorPair { a: lift(c.a, &ri), b: lift(c.b, &ci) })
                            .collect();
                        v.sort();
                        v
                    }
                };
                let ok = empty_tail || got == want;
                out.push((
                    name,
                    (!ok).then(|| json!({"expected": want.iter().map(pair_json).collect::<Vec<_>>(), "found": got.iter().map(pair_json).collect::<Vec<_>>()})),
                ));
            }
            let covered_rows = d.a_low() | d.blocks.iter().fold(0, |m, b| m | b.rows) | (full_rows & !d.a_high());
            let disjoint = (0..p).all(|i| d.r1[i] & d.r2[i] == 0);
            let empty_r3 = (0..p).all(|i| k.rows[i] & d.r3[i] == 0);
            let ok = covered_rows == full_rows && disjoint && empty_r3;
            out.push((
                "regions".into(),
                (!ok).then(|| json!({"rows_partitioned": covered_rows == full_rows, "r1_r2_disjoint": disjoint, "k_misses_r3": empty_r3})),
            ));
        }
        CoveringClaim::Lattice => {
            let set: std::collections::BTreeSet<&ExteriorPair> = meps.iter().collect();
            let closed = meps.iter().all(|x| {
                meps.iter().all(|y| {
                    set.contains(&ExteriorPair { a: x.a & y.a, b: x.b | y.b })
                        && set.contains(&ExteriorPair { a: x.a | y.a, b: x.b & y.b })
                })
            });
            let d = canonical_decomposition(&k)?;
            let bounded = meps.iter().all(|c| {
                c.a & d.a_low() == d.a_low() && c.a & !d.a_high() == 0 && c.b & d.b_low() == d.b_low() && c.b & !d.b_high() == 0
            });
            let m = max_disjoint_subgraph(&k);
            let classical_high = alternating_cover(&k, &m, false);
            let classical_low = alternating_cover(&k, &m, true);
            let agree = classical_high == d.high && classical_low == d.low;
            let ok = closed && bounded && agree;
            out.push((
                "lattice".into(),
                (!ok).then(|| json!({"closed": closed, "extremal_bounds": bounded, "alternating_paths_agree": agree})),
            ));
        }
        CoveringClaim::Chain => {
            let d = canonical_decomposition(&k)?;
            let beta: std::collections::BTreeSet<ExteriorPair> = meps.iter().cloned().collect();
            let gamma: std::collections::BTreeSet<ExteriorPair> = d.gamma().into_iter().collect();
            let alpha = d.alpha();
            let a_in_b = alpha.iter().all(|c| beta.contains(c));
            let b_in_g = beta.is_subset(&gamma);
            out.push((
                "alpha-beta-gamma".into(),
                (!(a_in_b && b_in_g && alpha.len() == d.blocks.len() + 1))
                    .then(|| json!({"alpha_in_beta": a_in_b, "beta_in_gamma": b_in_g, "blocks": d.blocks.len()})),
            ));
            let admissible = RelationGraph::new(p, q, (0..p).map(|i| k.rows[i] & d.r1[i]).collect())?;
            let core_meps: std::collections::BTreeSet<ExteriorPair> = enumerate_meps(&admissible)?.into_iter().collect();
            out.push((
                "admissible-part".into(),
                (core_meps != gamma).then(|| json!({"admissible_pairs": core_meps.len(), "gamma": gamma.len()})),
            ));
        }
    }
    Ok(out)
}

/// Seeded instances: exhaustive for small shapes, random for the rest, plus
/// matchings, full relations and staircases.
pub fn instance_stream(seed: u64, samples: usize, max_side: usize) -> Vec<RelationGraph> {
    let mut out = Vec::new();
    for p in 1..=max_side {
        for q in p..=max_side {
            if p * q <= 12 {
                for bitsv in 0..1u64 << (p * q) {
                    let rows = (0..p).map(|i| bitsv >> (i * q) & low_mask(q)).collect();
                    out.push(RelationGraph::new(p, q, rows).unwrap());
                }
            }
            let eye = (0..p).map(|i| 1u64 << i).collect();
            out.push(RelationGraph::new(p, q, eye).unwrap());
            out.push(RelationGraph::new(p, q, vec![low_mask(q); p]).unwrap());
            let stair = (0..p).map(|i| low_mask((i + 1).min(q))).collect();
            out.push(RelationGraph::new(p, q, stair).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = rng.random_range(1..=max_side);
        let q = rng.random_range(1..=max_side);
        let dens = rng.random_range(0.05..0.95);
        let rows = (0..p).map(|_| (0..q).filter(|_| rng.random_bool(dens)).fold(0u64, |m, j| m | 1 << j)).collect();
        out.push(RelationGraph::new(p, q, rows).unwrap());
    }
    out
}

/// Registry id and anchor text of a covering statement.
pub fn anchor(claim: CoveringClaim) -> (&'static str, &'static str) {
    match claim {
        CoveringClaim::Duality => ("thm-6.2", "E(K) equals the largest number of pairwise disjoint edges of K"),
        CoveringClaim::Identity => (
            "thm-6.4",
            "E(K) < p ⇒ E(K) + I(K̄) = p + q; E(K) = p ⇒ ≤, with equality iff some m.e.p. [A, B] has A ≠ S and B ≠ T",
        ),
        CoveringClaim::Decomposition => (
            "thm-6.5",
            "S = A_* ∪ S_1 ∪ … ∪ S_k ∪ Ā^*, T = B̄^* ∪ T_1 ∪ … ∪ T_k ∪ B_*; tails and blocks are irreducible",
        ),
        CoveringClaim::Lattice => (
            "thm-6.6",
            "the minimal exterior pairs form a lattice bounded by the extremal pairs [A_*, B^*] and [A^*, B_*]",
        ),
        CoveringClaim::Chain => ("thm-6.7", "α ⊆ β ⊆ γ for the chain α, all m.e.p.s β and the 2^k pairs γ"),
    }
}

pub fn verify_claim(claim: CoveringClaim, seed: u64, samples: usize, max_side: usize) -> Result<VerificationReport> {
    let (id, text) = anchor(claim);
    let mut r = VerificationReport::new(id, text);
    if claim == CoveringClaim::Identity {
        r.note("I(K̄) read as the interior dimension: the largest ν(A) + ν(B) over nonempty A × B ⊆ K̄");
        r.note("instances with p > q are transposed so that p ≤ q");
    }
    let instances = instance_stream(seed, samples, max_side.min(VERIFY_SIDE_LIMIT));
    let results: Vec<Result<(String, Vec<(String, Option<serde_json::Value>)>)>> = instances
        .par_iter()
        .map(|k| Ok((format!("{}x{}:{}", k.p, k.q, k.to_matrix().trim_end().replace('\n', "/")), verify_covering(claim, k)?)))
        .collect();
    let mut alt_ok = 0usize;
    let mut alt_total = 0usize;
    for res in results {
        let (key, checks) = res?;
        for (tag, fail) in checks {
            r.check(format!("{key}#{tag}"), fail);
        }
    }
    if claim == CoveringClaim::Identity {
        for k in instances.iter().filter(|k| k.p.max(k.q) <= VERIFY_SIDE_LIMIT) {
            let k = if k.p > k.q { k.transpose() } else { k.clone() };
            let (e, _) = exterior_dimension(&k)?;
            if e < k.p {
                alt_total += 1;
                if e + inadmissible_cells(&k.complement())?.len() == k.p + k.q {
                    alt_ok += 1;
                }
            }
        }
        r.detail("inadmissible_count_reading", json!({"instances": alt_total, "identity_holds": alt_ok}));
    }
    r.detail("instances", instances.len());
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(p: usize, q: usize, cells: &[(usize, usize)]) -> RelationGraph {
        RelationGraph::from_cells(p, q, cells).unwrap()
    }

    #[test]
    fn dimensions() {
        let m3 = rel(3, 3, &[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(exterior_dimension(&m3).unwrap().0, 3);
        assert_eq!(max_disjoint_subgraph(&m3).len(), 3);
        let full = RelationGraph::parse_matrix("11\n11\n").unwrap();
        let (e, w) = exterior_dimension(&full).unwrap();
        assert_eq!(e, 2);
        assert!(full.is_covered_by(w.a, w.b));
        let empty = rel(3, 3, &[]);
        assert_eq!(exterior_dimension(&empty).unwrap(), (0, ExteriorPair { a: 0, b: 0 }));
        assert_eq!(max_disjoint_subgraph(&rel(3, 3, &[(1, 2)])), vec![(1, 2)]);
        assert!(RelationGraph::parse_matrix("10\n1\n").is_err());
        assert!(RelationGraph::parse_matrix("1x\n").is_err());
    }

    #[test]
    fn meps() {
        assert_eq!(enumerate_meps(&rel(3, 3, &[(0, 0), (1, 1), (2, 2)])).unwrap().len(), 8);
        assert_eq!(
            enumerate_meps(&rel(3, 3, &[(0, 0)])).unwrap(),
            vec![ExteriorPair { a: 0, b: 1 }, ExteriorPair { a: 1, b: 0 }]
        );
        assert_eq!(enumerate_meps(&rel(3, 3, &[])).unwrap(), vec![ExteriorPair { a: 0, b: 0 }]);
    }

    #[test]
    fn koenig_duality_on_samples() {
        for k in instance_stream(11, 2000, 6) {
            let (e, w) = exterior_dimension(&k).unwrap();
            assert_eq!(e, exterior_dimension_brute(&k));
            assert_eq!(e, max_disjoint_subgraph(&k).len());
            assert!(k.is_covered_by(w.a, w.b));
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = canonical_decomposition(&rel(3, 3, &[(0, 0), (1, 1), (2, 2)])).unwrap();
        assert_eq!(d.low, ExteriorPair { a: 0, b: 0b111 });
        assert_eq!(d.high, ExteriorPair { a: 0b111, b: 0 });
        assert_eq!(d.blocks.len(), 3);
        let single = rel(3, 3, &[(0, 0)]);
        let d = canonical_decomposition(&single).unwrap();
        assert!(d.inadmissible.is_empty());
        assert_eq!(d.blocks, vec![Block { rows: 1, cols: 1 }]);
        let d = canonical_decomposition(&rel(3, 3, &[])).unwrap();
        assert!(d.r3.iter().all(|&r| r == 0b111));
        // An upper-triangular 2×2 has a single inadmissible-free chain of two blocks.
        let tri = rel(2, 2, &[(0, 0), (0, 1), (1, 1)]);
        let d = canonical_decomposition(&tri).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.inadmissible, vec![(0, 1)]);
    }

    #[test]
    fn identity_example() {
        let single = rel(3, 3, &[(0, 0)]);
        assert_eq!(interior_dimension(&single.complement()), 5);
        for claim in [CoveringClaim::Duality, CoveringClaim::Identity, CoveringClaim::Decomposition, CoveringClaim::Lattice, CoveringClaim::Chain] {
            for k in [single.clone(), rel(3, 3, &[]), rel(4, 4, &[(0, 0), (1, 1), (2, 2), (3, 3), (0, 1)])] {
                assert!(verify_covering(claim, &k).unwrap().iter().all(|c| c.1.is_none()), "{claim:?} {k:?}");
            }
        }
    }
}
