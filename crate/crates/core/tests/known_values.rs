//! Values computed with networkx and frozen here.

use hzlab::graph::enumerate::{connected_bipartite_graphs, connected_graphs, enumerate_trees, TreeClass};
use hzlab::graph::families::{complete, cycle, path, star};
use hzlab::invariants::{forgotten, hyper_zagreb, sombor};
use hzlab::spectral::{estrada, spectral_moments};
use hzlab::Graph;

fn sample_tree() -> Graph {
    Graph::new(8, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (4, 6), (6, 7)]).unwrap()
}

#[test]
fn tree_counts() {
    let counts: Vec<usize> = (13..=16).map(|n| enumerate_trees(&TreeClass::All { n }).unwrap().len()).collect();
    assert_eq!(counts, [1301, 3159, 7741, 19320]);
    let by_delta: Vec<usize> =
        (2..=9).map(|delta| enumerate_trees(&TreeClass::MaxDegree { n: 10, delta }).unwrap().len()).collect();
    assert_eq!(by_delta, [1, 36, 38, 19, 7, 3, 1, 1]);
}

#[test]
fn connected_bipartite_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| connected_bipartite_graphs(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 1, 3, 5, 17, 44]);
}

#[test]
fn index_values_of_one_tree() {
    let t = sample_tree();
    assert_eq!(hyper_zagreb(&t), (136, 179));
    assert_eq!(forgotten(&t), 74);
    assert!((sombor(&t) - 22.250434513384).abs() < 1e-9);
    let m = spectral_moments(&t, 8).unwrap();
    let m: Vec<String> = m.moments.iter().map(|x| x.to_string()).collect();
    assert_eq!(m, ["8", "0", "14", "0", "46", "0", "182", "0", "766"]);
}

#[test]
fn estrada_values() {
    for (g, want) in [
        (path(4), 7.635733837561),
        (star(5), 10.524391382167),
        (cycle(6), 13.696713921428),
        (complete(4), 21.189175246702),
    ] {
        assert!((estrada(&g).unwrap() - want).abs() < 1e-9);
    }
}

#[test]
fn largest_forgotten_index_of_connected_graphs() {
    let best = |n: usize, m: usize| connected_graphs(n).unwrap().iter().filter(|g| g.m() == m).map(forgotten).max().unwrap();
    assert_eq!(best(6, 11), 382);
    assert_eq!(best(7, 16), 842);
    assert_eq!(best(7, 17), 940);
}
