//! Isomorphism-free generation of trees, connected graphs and bipartite graphs.
//!
//! Trees grow one leaf at a time by canonical augmentation: a child is kept only
//! when the new leaf lies in the orbit of leaves with the smallest leaf-rooted
//! code, so every class is produced from exactly one parent. General and
//! bipartite graphs are small enough to dedupe by canonical code.

use super::canon::{canonical_code, rooted_tree_code, CanonicalCode};
use super::{DegreeSequence, Graph};
use crate::error::{check_cap, Error, Result};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

pub const TREE_ENUM_LIMIT: usize = 18;
pub const GRAPH_ENUM_LIMIT: usize = 8;
pub const BIPARTITE_ENUM_LIMIT: usize = 10;

/// Which trees to generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeClass {
    /// Trees on `n` vertices with maximum degree exactly `delta`.
    MaxDegree { n: usize, delta: usize },
    /// Trees on `n` vertices with any maximum degree.
    All { n: usize },
    /// Trees realizing a degree sequence.
    Degrees(DegreeSequence),
}

impl TreeClass {
    pub fn order(&self) -> usize {
        match self {
            TreeClass::MaxDegree { n, .. } | TreeClass::All { n } => *n,
            TreeClass::Degrees(d) => d.len(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            TreeClass::MaxDegree { n, delta } => {
                check_cap("tree enumeration order", 16, *n)?;
                if *n == 0 {
                    return Err(Error::EmptyGraph);
                }
                if *n > 1 && (*delta == 0 || *delta > n - 1) {
                    return Err(Error::Precondition(format!("need 1 <= delta <= n-1, got n={n}, delta={delta}")));
                }
                Ok(())
            }
            TreeClass::All { n } => {
                check_cap("tree enumeration order", 16, *n)?;
                if *n == 0 {
                    return Err(Error::EmptyGraph);
                }
                Ok(())
            }
            TreeClass::Degrees(d) => {
                check_cap("tree enumeration order", TREE_ENUM_LIMIT, d.len())?;
                if !d.is_tree_realizable() {
                    return Err(Error::Infeasible(format!("{d} is not a tree degree sequence")));
                }
                Ok(())
            }
        }
    }

    /// Whether a tree on fewer vertices can still grow into a member.
    fn may_grow(&self, t: &Graph) -> bool {
        match self {
            TreeClass::MaxDegree { delta, .. } => t.max_degree() <= *delta,
            TreeClass::All { .. } => true,
            TreeClass::Degrees(d) => {
                // Leaf additions only raise degrees, so the sorted degrees must
                // stay entrywise below the target.
                let have = t.degree_sequence();
                have.as_slice().iter().zip(d.as_slice()).all(|(a, b)| a <= b)
            }
        }
    }

    fn accepts(&self, t: &Graph) -> bool {
        match self {
            TreeClass::MaxDegree { n, delta } => t.n() == *n && (t.max_degree() == *delta || *n == 1),
            TreeClass::All { n } => t.n() == *n,
            TreeClass::Degrees(d) => t.degree_sequence() == *d,
        }
    }
}

/// Vertex orbits of a tree, one representative each (smallest label).
fn vertex_orbit_reps(t: &Graph) -> Vec<usize> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    (0..t.n()).filter(|&v| seen.insert(rooted_tree_code(t, v))).collect()
}

/// Canonical-augmentation test for a freshly added leaf.
fn is_canonical_child(child: &Graph, leaf: usize) -> bool {
    let mine = rooted_tree_code(child, leaf);
    (0..child.n())
        .filter(|&v| v != leaf && child.degree(v) == 1)
        .all(|v| rooted_tree_code(child, v) >= mine)
}

fn children(t: &Graph) -> Vec<Graph> {
    let mut out = Vec::new();
    for v in vertex_orbit_reps(t) {
        let child = t.with_vertex(1 << v).expect("trees stay below the vertex cap");
        if is_canonical_child(&child, t.n()) {
            out.push(child);
        }
    }
    out
}

/// One representative per isomorphism class of the requested trees, sorted by canonical code.
pub fn enumerate_trees(class: &TreeClass) -> Result<Vec<Graph>> {
    class.validate()?;
    let n = class.order();
    let mut level = vec![Graph::empty(1)?];
    for _ in 1..n {
        level = level
            .par_iter()
            .flat_map_iter(children)
            .filter(|c| class.may_grow(c))
            .collect();
    }
    let mut keyed: Vec<(CanonicalCode, Graph)> = level
        .into_par_iter()
        .filter(|t| class.accepts(t))
        .map(|t| (canonical_code(&t).expect("trees within code range"), t))
        .collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

type Shelf = Mutex<BTreeMap<usize, Arc<Vec<Graph>>>>;

fn grow_by_vertex(parents: &[Graph], keep: impl Fn(&Graph) -> bool + Sync) -> Vec<Graph> {
    let n = parents[0].n();
    let mut found: Vec<(CanonicalCode, Graph)> = parents
        .par_iter()
        .flat_map_iter(|p| {
            (0u64..1 << n).filter_map(|mask| {
                let g = p.with_vertex(mask).ok()?;
                keep(&g).then(|| (canonical_code(&g).expect("below code limit"), g))
            })
        })
        .collect();
    found.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    found.into_iter().map(|(_, g)| g).collect()
}

fn cached(shelf: &'static OnceLock<Shelf>, n: usize, build: impl Fn(&[Graph]) -> Vec<Graph>) -> Arc<Vec<Graph>> {
    let shelf = shelf.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = shelf.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut level: Arc<Vec<Graph>> = Arc::new(vec![Graph::empty(1).unwrap()]);
    for k in 2..=n {
        let hit = shelf.lock().unwrap().get(&k).cloned();
        level = match hit {
            Some(h) => h,
            None => {
                let next = Arc::new(build(&level));
                shelf.lock().unwrap().insert(k, next.clone());
                next
            }
        };
    }
    shelf.lock().unwrap().entry(1).or_insert_with(|| Arc::new(vec![Graph::empty(1).unwrap()]));
    level
}

/// All graphs on `n` vertices up to isomorphism, sorted by canonical code.
pub fn all_graphs(n: usize) -> Result<Arc<Vec<Graph>>> {
    check_cap("graph enumeration order", GRAPH_ENUM_LIMIT, n)?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    static SHELF: OnceLock<Shelf> = OnceLock::new();
    Ok(cached(&SHELF, n, |p| grow_by_vertex(p, |_| true)))
}

pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?.iter().filter(|g| g.is_connected()).cloned().collect())
}

/// All bipartite graphs on `n` vertices up to isomorphism.
pub fn bipartite_graphs(n: usize) -> Result<Arc<Vec<Graph>>> {
    check_cap("bipartite enumeration order", BIPARTITE_ENUM_LIMIT, n)?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    static SHELF: OnceLock<Shelf> = OnceLock::new();
    Ok(cached(&SHELF, n, |p| grow_by_vertex(p, |g| g.bipartition().is_some())))
}

pub fn connected_bipartite_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(bipartite_graphs(n)?.iter().filter(|g| g.is_connected()).cloned().collect())
}

/// Every labeled tree on `n` vertices via Prüfer sequences (oracle for small `n`).
pub fn labeled_trees(n: usize) -> Result<Vec<Graph>> {
    check_cap("labeled tree order", 9, n)?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n <= 2 {
        return Ok(vec![super::families::path(n)]);
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(Graph::new(n, edges)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlabeled_tree_counts() {
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            assert_eq!(enumerate_trees(&TreeClass::All { n }).unwrap().len(), want, "n={n}");
        }
    }

    #[test]
    fn canonical_augmentation_matches_labeled_dedup() {
        for n in 1..=8 {
            let mut codes: Vec<CanonicalCode> =
                labeled_trees(n).unwrap().iter().map(|t| canonical_code(t).unwrap()).collect();
            codes.sort();
            codes.dedup();
            let gen: Vec<CanonicalCode> = enumerate_trees(&TreeClass::All { n })
                .unwrap()
                .iter()
                .map(|t| canonical_code(t).unwrap())
                .collect();
            assert_eq!(codes, gen, "n={n}");
        }
    }

    #[test]
    fn class_selectors() {
        assert_eq!(enumerate_trees(&TreeClass::MaxDegree { n: 4, delta: 3 }).unwrap().len(), 1);
        assert_eq!(enumerate_trees(&TreeClass::MaxDegree { n: 5, delta: 3 }).unwrap().len(), 1);
        assert_eq!(enumerate_trees(&TreeClass::MaxDegree { n: 6, delta: 3 }).unwrap().len(), 3);
        let d = DegreeSequence::new(vec![2, 2, 1, 1]).unwrap();
        assert_eq!(enumerate_trees(&TreeClass::Degrees(d)).unwrap().len(), 1);
        let d = DegreeSequence::new(vec![3, 3, 2, 1, 1, 1, 1]).unwrap();
        // Degree-2 vertex between the centers, or hanging off one of them.
        assert_eq!(enumerate_trees(&TreeClass::Degrees(d)).unwrap().len(), 2);
        assert!(enumerate_trees(&TreeClass::MaxDegree { n: 17, delta: 3 }).is_err());
        assert!(enumerate_trees(&TreeClass::Degrees(DegreeSequence::new(vec![2, 2, 2]).unwrap())).is_err());
        let per_delta: usize = (1..10)
            .map(|delta| enumerate_trees(&TreeClass::MaxDegree { n: 10, delta }).unwrap().len())
            .sum();
        assert_eq!(per_delta, 106);
    }

    #[test]
    fn graph_counts() {
        let all = [1, 2, 4, 11, 34, 156, 1044];
        let conn = [1, 1, 2, 6, 21, 112, 853];
        for n in 1..=7 {
            assert_eq!(all_graphs(n).unwrap().len(), all[n - 1]);
            assert_eq!(connected_graphs(n).unwrap().len(), conn[n - 1]);
        }
        let bip = [1, 2, 3, 7, 13, 35, 88, 303];
        for n in 1..=8 {
            assert_eq!(bipartite_graphs(n).unwrap().len(), bip[n - 1], "n={n}");
        }
    }
}
