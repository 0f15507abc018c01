//! Tree constructions, majorization chains, and extremal searches over tree classes.

pub mod claims;

use crate::error::{Error, Result};
use crate::graph::enumerate::{enumerate_trees, TreeClass};
use crate::graph::{bits, canonical_code, CanonicalCode, DegreeSequence, Graph};
use crate::invariants::{forgotten, hyper_zagreb, kg_sombor, mkg_log, sombor};
use crate::spectral::s_order_key;
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::{HashMap, VecDeque};

/// Spider with center 0 and pendant paths of the given lengths.
pub fn spider(n: usize, delta: usize, legs: &[usize]) -> Result<Graph> {
    if legs.len() != delta {
        return Err(Error::Precondition(format!("{} legs given for a center of degree {delta}", legs.len())));
    }
    if legs.contains(&0) {
        return Err(Error::Precondition("legs must have length at least 1".into()));
    }
    let total: usize = legs.iter().sum();
    if total + 1 != n {
        return Err(Error::Precondition(format!("legs sum to {total}, but n - 1 = {}", n.saturating_sub(1))));
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(n, edges)
}

/// Leg lengths (sorted descending) if `t` is a spider: a tree with exactly one vertex of degree ≥ 3.
pub fn spider_legs(t: &Graph) -> Option<Vec<usize>> {
    if !t.is_tree() {
        return None;
    }
    let hubs: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) >= 3).collect();
    let [center] = hubs[..] else { return None };
    let mut legs: Vec<usize> = bits(t.neighbors(center))
        .map(|mut v| {
            let mut prev = center;
            let mut len = 1;
            while t.degree(v) == 2 {
                let next = bits(t.neighbors(v) & !(1 << prev)).next().unwrap();
                prev = v;
                v = next;
                len += 1;
            }
            len
        })
        .collect();
    legs.sort_unstable_by(|a, b| b.cmp(a));
    Some(legs)
}

/// Vertices adjacent to at least one leaf.
pub fn support_vertices(t: &Graph) -> Vec<usize> {
    let leaves: u64 = (0..t.n()).filter(|&v| t.degree(v) == 1).fold(0, |m, v| m | 1 << v);
    (0..t.n()).filter(|&v| t.degree(v) >= 2 && t.neighbors(v) & leaves != 0).collect()
}

/// Support vertices of degree at least 3 whose neighbors are all leaves except
/// at most one: the terminal branching points of the tree.
pub fn end_support_vertices(t: &Graph) -> Vec<usize> {
    support_vertices(t)
        .into_iter()
        .filter(|&v| {
            t.degree(v) >= 3 && bits(t.neighbors(v)).filter(|&w| t.degree(w) >= 2).count() <= 1
        })
        .collect()
}

struct Builder {
    edges: Vec<(usize, usize)>,
    next: usize,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    /// A vertex of degree `d` hanging below `parent`, with `d - 1` leaf slots.
    fn hub_with_slots(&mut self, parent: usize, d: usize) -> (usize, usize) {
        let v = self.vertex();
        self.edges.push((parent, v));
        (v, d - 1)
    }
}

/// A built subtree waiting to be attached through its root.
struct Pendant {
    root: usize,
}

/// Alternating greedy tree for the non-leaf degrees `internal` (each ≥ 2).
///
/// With `d_1 ≥ … ≥ d_m`: if `m - 1 ≤ d_m`, a root of degree `d_m` takes the
/// other internal vertices as children and the remaining slots as leaves.
/// Otherwise the smallest degree roots a pendant subtree over the `d_m - 1`
/// largest degrees, and the construction recurses on what is left, the
/// pendant taking the place of a leaf.
pub fn alternating_greedy(internal: &DegreeSequence) -> Result<Graph> {
    let d = internal.as_slice();
    if d.is_empty() {
        return Err(Error::EmptyClass);
    }
    if let Some(&bad) = d.iter().find(|&&x| x < 2) {
        return Err(Error::Precondition(format!("internal degrees must be at least 2, got {bad}")));
    }
    let n = d.iter().map(|x| x - 1).sum::<usize>() + 2;
    crate::error::check_cap("tree order", crate::graph::MAX_VERTICES, n)?;
    let mut b = Builder { edges: Vec::with_capacity(n - 1), next: 0 };
    let mut seq: Vec<usize> = d.to_vec();
    let mut pendants: Vec<Pendant> = Vec::new();
    loop {
        let m = seq.len();
        let dm = seq[m - 1];
        if m - 1 <= dm {
            let root = b.vertex();
            let mut slots: Vec<(usize, usize)> = Vec::new();
            slots.push((root, dm - (m - 1)));
            for &di in &seq[..m - 1] {
                slots.push(b.hub_with_slots(root, di));
            }
            fill_slots(&mut b, slots, pendants);
            break;
        }
        // Pendant subtree: root of degree d_m, one slot reserved for its parent.
        let root = b.vertex();
        let take = dm - 1;
        let mut slots = Vec::new();
        for &di in &seq[..take] {
            slots.push(b.hub_with_slots(root, di));
        }
        fill_slots(&mut b, slots, std::mem::take(&mut pendants));
        pendants.push(Pendant { root });
        seq = seq[take..m - 1].to_vec();
    }
    debug_assert_eq!(b.next, n);
    let g = Graph::new(n, b.edges)?;
    debug_assert!(g.is_tree());
    Ok(g)
}

/// Places pending subtrees into leaf slots (root slots first), then fills the rest with leaves.
fn fill_slots(b: &mut Builder, slots: Vec<(usize, usize)>, pendants: Vec<Pendant>) {
    let mut pending = pendants.into_iter();
    for (owner, count) in slots {
        for _ in 0..count {
            match pending.next() {
                Some(p) => b.edges.push((owner, p.root)),
                None => {
                    let leaf = b.vertex();
                    b.edges.push((owner, leaf));
                }
            }
        }
    }
    assert!(pending.next().is_none(), "every pendant subtree found a slot");
}

/// Shortest chain `d = D_0 ◁ D_1 ◁ … ◁ D_k = dp` of graphic sequences in which
/// consecutive members differ by a unit transfer to a larger entry.
/// `dp` must majorize `d` and differ from it.
pub fn majorization_chain(d: &DegreeSequence, dp: &DegreeSequence) -> Result<Vec<DegreeSequence>> {
    if d == dp {
        return Err(Error::Precondition("the two sequences are equal".into()));
    }
    if !dp.majorizes(d)? || d.sum() != dp.sum() {
        return Err(Error::NotComparable);
    }
    if !d.is_graphical() || !dp.is_graphical() {
        return Err(Error::Precondition("both sequences must be graphic".into()));
    }
    let n = d.len();
    let mut prev: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let start = d.as_slice().to_vec();
    let goal = dp.as_slice().to_vec();
    prev.insert(start.clone(), start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    let target = DegreeSequence::new(goal.clone())?;
    while let Some(cur) = queue.pop_front() {
        if cur == goal {
            let mut chain = vec![cur.clone()];
            let mut at = cur;
            while at != start {
                at = prev[&at].clone();
                chain.push(at.clone());
            }
            chain.reverse();
            return chain.into_iter().map(DegreeSequence::new).collect();
        }
        for i in 0..n {
            // Moving a unit onto the first copy of a value and off the last copy keeps the order.
            if i > 0 && cur[i - 1] == cur[i] {
                continue;
            }
            for j in (i + 1..n).rev() {
                if (j + 1 < n && cur[j + 1] == cur[j]) || cur[j] == 0 {
                    continue;
                }
                let mut next = cur.clone();
                next[i] += 1;
                next[j] -= 1;
                if next.windows(2).any(|w| w[0] < w[1]) || prev.contains_key(&next) {
                    continue;
                }
                let ds = DegreeSequence::new(next.clone())?;
                if !target.majorizes(&ds)? || !ds.is_graphical() {
                    continue;
                }
                prev.insert(next.clone(), cur.clone());
                queue.push_back(next);
            }
        }
    }
    Err(Error::Infeasible("no graphic unit-transfer chain exists".into()))
}

/// Indices available for extremal searches over tree classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeIndex {
    Hm1,
    Hm2,
    Forgotten,
    Sombor,
    KgSombor,
    Mkg,
    SOrder,
}

impl TreeIndex {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "hm1" => TreeIndex::Hm1,
            "hm2" => TreeIndex::Hm2,
            "f" => TreeIndex::Forgotten,
            "so" => TreeIndex::Sombor,
            "kg" => TreeIndex::KgSombor,
            "mkg" => TreeIndex::Mkg,
            "sorder" => TreeIndex::SOrder,
            other => return Err(Error::Parse(format!("unknown tree index `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, PartialOrd)]
enum Key {
    Int(u64),
    Real(f64),
    Moments(Vec<BigUint>),
}

impl Key {
    fn render(&self) -> serde_json::Value {
        match self {
            Key::Int(v) => serde_json::Value::String(v.to_string()),
            Key::Real(v) => serde_json::json!(v),
            Key::Moments(m) => serde_json::Value::Array(m.iter().map(|x| x.to_string().into()).collect()),
        }
    }
}

fn key_of(t: &Graph, index: TreeIndex) -> Key {
    match index {
        TreeIndex::Hm1 => Key::Int(hyper_zagreb(t).0),
        TreeIndex::Hm2 => Key::Int(hyper_zagreb(t).1),
        TreeIndex::Forgotten => Key::Int(forgotten(t)),
        TreeIndex::Sombor => Key::Real(sombor(t)),
        TreeIndex::KgSombor => Key::Real(kg_sombor(t, false)),
        TreeIndex::Mkg => Key::Real(mkg_log(t).unwrap_or(0.0)),
        TreeIndex::SOrder => Key::Moments(s_order_key(t)),
    }
}

fn same(a: &Key, b: &Key) -> bool {
    match (a, b) {
        (Key::Real(x), Key::Real(y)) => (x - y).abs() <= crate::invariants::REAL_TOLERANCE,
        _ => a == b,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Extremal {
    pub universe: usize,
    pub min: Vec<CanonicalCode>,
    pub max: Vec<CanonicalCode>,
    pub min_value: serde_json::Value,
    pub max_value: serde_json::Value,
}

/// All minimizers and maximizers of `index` over the class. Real values tie within
/// the real tolerance; S-order ties are exact `=_s` classes.
pub fn extremal_search(class: &TreeClass, index: TreeIndex) -> Result<Extremal> {
    let trees = enumerate_trees(class)?;
    if trees.is_empty() {
        return Err(Error::EmptyClass);
    }
    let keyed: Vec<(Key, CanonicalCode)> = trees
        .iter()
        .map(|t| (key_of(t, index), canonical_code(t).expect("enumerated trees have codes")))
        .collect();
    let lo = keyed.iter().map(|k| &k.0).fold(None, |acc: Option<&Key>, k| match acc {
        Some(a) if a <= k => Some(a),
        _ => Some(k),
    });
    let hi = keyed.iter().map(|k| &k.0).fold(None, |acc: Option<&Key>, k| match acc {
        Some(a) if a >= k => Some(a),
        _ => Some(k),
    });
    let (lo, hi) = (lo.unwrap().clone(), hi.unwrap().clone());
    let pick = |target: &Key| {
        let mut v: Vec<CanonicalCode> =
            keyed.iter().filter(|(k, _)| same(k, target)).map(|(_, c)| c.clone()).collect();
        v.sort();
        v
    };
    Ok(Extremal {
        universe: trees.len(),
        min: pick(&lo),
        max: pick(&hi),
        min_value: lo.render(),
        max_value: hi.render(),
    })
}

/// S-order-first tree of a list, ties broken by smallest canonical code.
pub fn s_order_first(trees: &[Graph]) -> Option<Graph> {
    trees
        .iter()
        .map(|t| ((s_order_key(t), canonical_code(t).ok()), t))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, t)| t.clone())
}

/// S-order-last tree of a list, ties broken by largest canonical code.
pub fn s_order_last(trees: &[Graph]) -> Option<Graph> {
    trees
        .iter()
        .map(|t| ((s_order_key(t), canonical_code(t).ok()), t))
        .max_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, t)| t.clone())
}

/// Degrees greater than one, sorted descending.
pub fn internal_degrees(t: &Graph) -> DegreeSequence {
    DegreeSequence::from_unsorted(t.degrees().into_iter().filter(|&d| d > 1).collect())
}

/// Full tree degree sequence for an internal-degree list.
pub fn with_leaves(internal: &DegreeSequence) -> DegreeSequence {
    let inner = internal.as_slice();
    let n = inner.iter().map(|x| x - 1).sum::<usize>() + 2;
    let mut all = inner.to_vec();
    all.resize(n.max(inner.len()), 1);
    DegreeSequence::from_unsorted(all)
}

/// Every tree degree sequence on `n` vertices, in descending lexicographic order.
pub fn tree_degree_sequences(n: usize) -> Vec<DegreeSequence> {
    if n == 1 {
        return vec![DegreeSequence::new(vec![0]).unwrap()];
    }
    if n == 2 {
        return vec![DegreeSequence::new(vec![1, 1]).unwrap()];
    }
    fn rec(rem: usize, maxd: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for d in (2..=maxd.min(rem + 1)).rev() {
            cur.push(d);
            rec(rem - (d - 1), d, cur, out);
            cur.pop();
        }
    }
    let mut internal = Vec::new();
    rec(n - 2, n - 1, &mut Vec::new(), &mut internal);
    internal
        .into_iter()
        .map(|inner| with_leaves(&DegreeSequence::new(inner).unwrap()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn ds(v: &[usize]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    fn code(g: &Graph) -> CanonicalCode {
        canonical_code(g).unwrap()
    }

    #[test]
    fn spiders() {
        let s = spider(5, 3, &[2, 1, 1]).unwrap();
        assert_eq!(hyper_zagreb(&s).0, 66);
        assert_eq!(code(&spider(4, 3, &[1, 1, 1]).unwrap()), code(&star(4)));
        let b = spider(7, 3, &[2, 2, 2]).unwrap();
        assert_eq!(spider_legs(&b), Some(vec![2, 2, 2]));
        assert!(spider(6, 3, &[2, 1, 1]).is_err());
        assert!(spider(4, 2, &[1, 1, 1]).is_err());
        assert_eq!(spider_legs(&path(5)), None);
    }

    #[test]
    fn support_structure() {
        // Two centers of degree 3 joined by an edge.
        let t = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(support_vertices(&t), vec![0, 1]);
        assert_eq!(end_support_vertices(&t), vec![0, 1]);
        let s = spider(7, 3, &[2, 2, 2]).unwrap();
        assert_eq!(support_vertices(&s), vec![1, 3, 5]);
        assert!(end_support_vertices(&s).is_empty());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(code(&alternating_greedy(&ds(&[2, 2])).unwrap()), code(&path(4)));
        assert_eq!(code(&alternating_greedy(&ds(&[3])).unwrap()), code(&star(4)));
        let double = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(code(&alternating_greedy(&ds(&[3, 3])).unwrap()), code(&double));
        let t = alternating_greedy(&ds(&[5, 4, 3, 2])).unwrap();
        assert_eq!(internal_degrees(&t), ds(&[5, 4, 3, 2]));
        assert!(alternating_greedy(&ds(&[])).is_err());
        assert!(alternating_greedy(&ds(&[3, 1])).is_err());
    }

    #[test]
    fn greedy_realizes_its_degrees() {
        for n in 3..=16 {
            for d in tree_degree_sequences(n) {
                let internal = DegreeSequence::new(d.as_slice().iter().copied().filter(|&x| x > 1).collect()).unwrap();
                let t = alternating_greedy(&internal).unwrap();
                assert!(t.is_tree());
                assert_eq!(t.degree_sequence(), d);
            }
        }
    }

    #[test]
    fn chains() {
        let c = majorization_chain(&ds(&[2, 2, 1, 1]), &ds(&[3, 1, 1, 1])).unwrap();
        assert_eq!(c, vec![ds(&[2, 2, 1, 1]), ds(&[3, 1, 1, 1])]);
        let c = majorization_chain(&ds(&[2, 2, 2, 1, 1]), &ds(&[4, 1, 1, 1, 1])).unwrap();
        assert_eq!(c, vec![ds(&[2, 2, 2, 1, 1]), ds(&[3, 2, 1, 1, 1]), ds(&[4, 1, 1, 1, 1])]);
        assert!(majorization_chain(&ds(&[2, 2, 1, 1]), &ds(&[2, 2, 1, 1])).is_err());
        assert_eq!(majorization_chain(&ds(&[3, 1, 1, 1]), &ds(&[2, 2, 1, 1])), Err(Error::NotComparable));
        assert!(DegreeSequence::new(vec![3, 1, 1, 1, 2]).is_err());
    }

    #[test]
    fn chain_steps_are_unit_transfers() {
        let seqs = tree_degree_sequences(8);
        for a in &seqs {
            for b in &seqs {
                if a != b && b.majorizes(a).unwrap() {
                    let chain = majorization_chain(a, b).unwrap();
                    for w in chain.windows(2) {
                        assert!(w[1].majorizes(&w[0]).unwrap());
                        let diff: Vec<i64> = w[0]
                            .as_slice()
                            .iter()
                            .zip(w[1].as_slice())
                            .map(|(x, y)| *y as i64 - *x as i64)
                            .filter(|&x| x != 0)
                            .collect();
                        assert_eq!(diff, vec![1, -1]);
                        assert!(w[1].is_graphical());
                    }
                }
            }
        }
    }

    #[test]
    fn extremal_values() {
        let e = extremal_search(&TreeClass::MaxDegree { n: 5, delta: 3 }, TreeIndex::Hm1).unwrap();
        assert_eq!(e.min, vec![code(&spider(5, 3, &[2, 1, 1]).unwrap())]);
        assert_eq!(e.min_value, serde_json::json!("66"));
        let e = extremal_search(&TreeClass::MaxDegree { n: 4, delta: 3 }, TreeIndex::Hm2).unwrap();
        assert_eq!(e.min_value, serde_json::json!("27"));
        assert_eq!(e.max_value, serde_json::json!("27"));
        let class = TreeClass::Degrees(ds(&[3, 2, 2, 1, 1, 1]));
        let e = extremal_search(&class, TreeIndex::SOrder).unwrap();
        let greedy = alternating_greedy(&ds(&[3, 2, 2])).unwrap();
        assert_eq!(e.min, vec![code(&greedy)]);
    }

    #[test]
    fn degree_sequence_lists() {
        assert_eq!(tree_degree_sequences(4), vec![ds(&[3, 1, 1, 1]), ds(&[2, 2, 1, 1])]);
        assert_eq!(tree_degree_sequences(6).len(), 5);
        assert!(tree_degree_sequences(9).iter().all(|d| d.is_tree_realizable()));
    }
}
