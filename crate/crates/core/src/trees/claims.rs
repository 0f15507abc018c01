//! Exhaustive checkers for the tree, spectral and F-index statements.

use super::{
    alternating_greedy, end_support_vertices, internal_degrees, s_order_last, spider_legs, support_vertices,
    tree_degree_sequences,
};
use crate::error::Result;
use crate::graph::enumerate::{connected_graphs, enumerate_trees, TreeClass};
use crate::graph::{bits, canonical_code, DegreeSequence, Graph};
use crate::invariants::{exp_index_compare, forgotten, hyper_zagreb, mkg_log, ExpBase, REAL_TOLERANCE};
use crate::report::VerificationReport;
use crate::spectral::{count_p4, s_order_compare, s_order_key, spectral_moments, SRelation};
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeMap;

fn code(g: &Graph) -> String {
    canonical_code(g).map(|c| c.to_string()).unwrap_or_else(|_| crate::graph::io::to_graph6(g))
}

fn class(n: usize, delta: usize) -> Vec<Graph> {
    enumerate_trees(&TreeClass::MaxDegree { n, delta }).expect("class within enumeration caps")
}

/// `(n, Δ)` pairs with `Δ ≥ 3`, in order.
fn classes(min_n: usize, max_n: usize) -> Vec<(usize, usize)> {
    (min_n..=max_n).flat_map(|n| (3..n).map(move |d| (n, d))).collect()
}

/// Runs `per_class` over every `(n, Δ)` in parallel and merges in order.
fn sweep(
    report: &mut VerificationReport,
    pairs: Vec<(usize, usize)>,
    per_class: impl Fn(usize, usize, &[Graph], &mut VerificationReport) + Sync,
) {
    let parts: Vec<VerificationReport> = pairs
        .into_par_iter()
        .map(|(n, d)| {
            let mut r = VerificationReport::new(&report.claim, &report.anchor);
            per_class(n, d, &class(n, d), &mut r);
            r
        })
        .collect();
    for p in parts {
        report.merge(p);
    }
}

fn has_other_max_vertex(t: &Graph, v: usize, delta: usize) -> bool {
    (0..t.n()).any(|r| r != v && t.degree(r) == delta)
}

/// Some tree of the class has both hyper-Zagreb indices strictly below `t`'s.
fn hm_witness(t: &Graph, class: &[Graph]) -> Option<Graph> {
    let (a, b) = hyper_zagreb(t);
    class
        .iter()
        .find(|s| {
            let (x, y) = hyper_zagreb(s);
            x < a && y < b
        })
        .cloned()
}

/// Moves one leaf of `v` to the end of another pendant path.
fn local_move_witness(t: &Graph, v: usize, delta: usize) -> Option<Graph> {
    let (a, b) = hyper_zagreb(t);
    let leaves: Vec<usize> = (0..t.n()).filter(|&w| t.degree(w) == 1).collect();
    for &leaf in leaves.iter().filter(|&&l| t.has_edge(v, l)) {
        for &w in leaves.iter().filter(|&&w| w != leaf) {
            let moved = t.without_edge(v, leaf).with_edge(w, leaf);
            if moved.is_tree() && moved.max_degree() == delta {
                let (x, y) = hyper_zagreb(&moved);
                if x < a && y < b {
                    return Some(moved);
                }
            }
        }
    }
    None
}

pub fn prop_2_1(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("prop-2.1", "spider with at least two legs of length ≥ 2 is beaten by another spider");
    r.note("witness: a spider in T(n,Δ) with both HM1 and HM2 strictly smaller");
    sweep(&mut r, classes(5, max_n), |_, delta, trees, rep| {
        let spiders: Vec<&Graph> =
            trees.iter().filter(|t| spider_legs(t).is_some_and(|l| l.len() == delta)).collect();
        for t in &spiders {
            let legs = spider_legs(t).unwrap();
            if legs.iter().filter(|&&l| l >= 2).count() < 2 {
                continue;
            }
            let (a, b) = hyper_zagreb(t);
            let found = spiders.iter().any(|s| {
                let (x, y) = hyper_zagreb(s);
                x < a && y < b
            });
            rep.check(code(t), (!found).then(|| json!({"legs": legs, "hm1": a, "hm2": b})));
        }
    });
    Ok(r.finish())
}

fn hm_lower_bound(which: usize, max_n: usize) -> Result<VerificationReport> {
    let (id, anchor) = if which == 1 {
        ("thm-2.2", "HM1(T) ≥ 16n + Δ³ + 2Δ² − 13Δ − 20, equality iff spider with exactly one leg ≥ 2; star: Δ(Δ+1)²")
    } else {
        ("thm-2.3", "HM2(T) ≥ 16n + Δ³ + 3Δ² − 16Δ − 28, equality iff spider with exactly one leg ≥ 2; star: Δ³")
    };
    let mut r = VerificationReport::new(id, anchor);
    r.note("Δ ranges over 3..n-1; Δ = n-1 checks the star closed form");
    let pairs: Vec<(usize, usize)> = (4..=max_n).flat_map(|n| (3..n).map(move |d| (n, d))).collect();
    let witnesses = std::sync::Mutex::new(Vec::new());
    sweep(&mut r, pairs, |n, delta, trees, rep| {
        let (ni, di) = (n as i64, delta as i64);
        for t in trees {
            let (h1, h2) = hyper_zagreb(t);
            let value = if which == 1 { h1 } else { h2 } as i64;
            if delta == n - 1 {
                let want = if which == 1 { di * (di + 1) * (di + 1) } else { di * di * di };
                rep.check(code(t), (value != want).then(|| json!({"value": value, "closed_form": want})));
                continue;
            }
            let bound = if which == 1 {
                16 * ni + di.pow(3) + 2 * di * di - 13 * di - 20
            } else {
                16 * ni + di.pow(3) + 3 * di * di - 16 * di - 28
            };
            let one_long_leg = spider_legs(t).is_some_and(|l| l.iter().filter(|&&x| x >= 2).count() == 1);
            let at_bound = value == bound;
            if at_bound {
                witnesses.lock().unwrap().push((n, delta, code(t), spider_legs(t)));
            }
            let bad = value < bound || at_bound != one_long_leg;
            rep.check(
                code(t),
                bad.then(|| json!({"n": n, "delta": delta, "value": value, "bound": bound, "one_long_leg_spider": one_long_leg})),
            );
        }
    });
    let mut witnesses = witnesses.into_inner().unwrap();
    witnesses.sort();
    r.detail("equality_cases", witnesses.len());
    r.detail(
        "equality_witnesses",
        witnesses.iter().map(|(n, d, t, legs)| json!({"n": n, "delta": d, "tree": t, "legs": legs})).collect::<Vec<_>>(),
    );
    Ok(r.finish())
}

pub fn thm_2_2(max_n: usize) -> Result<VerificationReport> {
    hm_lower_bound(1, max_n)
}

pub fn thm_2_3(max_n: usize) -> Result<VerificationReport> {
    hm_lower_bound(2, max_n)
}

#[derive(Clone, Copy)]
enum Hypothesis {
    EndSupport,
    Support,
    AnyHub,
}

fn hub_reduction(id: &str, anchor: &str, hyp: Hypothesis, max_n: usize, exponential: bool) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(id, anchor);
    r.note("witness search over all of T(n,Δ); for support-vertex hypotheses a leaf-relocation move is tried first");
    if exponential {
        r.note("exponential indices are ordered through their integer exponents");
    }
    let local = std::sync::atomic::AtomicUsize::new(0);
    sweep(&mut r, classes(4, max_n), |_, delta, trees, rep| {
        for t in trees {
            let candidates: Vec<usize> = match hyp {
                Hypothesis::EndSupport => end_support_vertices(t),
                Hypothesis::Support => support_vertices(t).into_iter().filter(|&v| t.degree(v) >= 3).collect(),
                Hypothesis::AnyHub => (0..t.n()).filter(|&v| t.degree(v) >= 3).collect(),
            };
            let hits: Vec<usize> = candidates.into_iter().filter(|&v| has_other_max_vertex(t, v, delta)).collect();
            if hits.is_empty() {
                continue;
            }
            if !matches!(hyp, Hypothesis::AnyHub) && hits.iter().any(|&v| local_move_witness(t, v, delta).is_some()) {
                local.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                rep.check(code(t), None);
                continue;
            }
            let w = if exponential {
                trees
                    .iter()
                    .find(|s| {
                        exp_index_compare(t, s, ExpBase::Hm1).is_gt() && exp_index_compare(t, s, ExpBase::Hm2).is_gt()
                    })
                    .cloned()
            } else {
                hm_witness(t, trees)
            };
            let (a, b) = hyper_zagreb(t);
            rep.check(code(t), w.is_none().then(|| json!({"hm1": a, "hm2": b, "vertices": hits})));
        }
    });
    r.detail("resolved_by_local_move", local.into_inner());
    Ok(r.finish())
}

pub fn prop_3_1(max_n: usize) -> Result<VerificationReport> {
    hub_reduction(
        "prop-3.1",
        "end-support vertex of degree ≥ 3 besides a maximum-degree vertex ⇒ smaller HM1 and HM2 in T(n,Δ)",
        Hypothesis::EndSupport,
        max_n,
        false,
    )
}

pub fn prop_3_2(max_n: usize) -> Result<VerificationReport> {
    hub_reduction(
        "prop-3.2",
        "support vertex of degree ≥ 3 besides a maximum-degree vertex ⇒ smaller HM1 and HM2 in T(n,Δ)",
        Hypothesis::Support,
        max_n,
        false,
    )
}

pub fn prop_3_4(max_n: usize) -> Result<VerificationReport> {
    hub_reduction(
        "prop-3.4",
        "second vertex of degree ≥ 3 ⇒ smaller e^HM1 and e^HM2 in T(n,Δ)",
        Hypothesis::AnyHub,
        max_n,
        true,
    )
}

/// Literal reading: both trees in one class `T(n,Δ)` yet of different orders, so no
/// pair qualifies. The cross-order reading is measured and reported alongside.
pub fn prop_3_3(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "prop-3.3",
        "T, T' in T(n,Δ), ℓ of degree Δ in T, ρ of degree n(T) − n(T') in T', n(T) > n(T') ⇒ HM1 and HM2 drop",
    );
    r.note("literal reading: T and T' share T(n,Δ), so n(T) > n(T') never holds and the universe is empty");
    let mut pairs = 0usize;
    let mut violations = Vec::new();
    for (n, delta) in classes(4, max_n) {
        for (m, delta2) in classes(4, n - 1) {
            if delta2 != delta || n - m < 3 {
                continue;
            }
            let small = class(m, delta);
            let big = class(n, delta);
            for t2 in small.iter().filter(|t| (0..t.n()).any(|v| t.degree(v) == n - m)) {
                let (x, y) = hyper_zagreb(t2);
                for t in &big {
                    pairs += 1;
                    let (a, b) = hyper_zagreb(t);
                    if !(a > x && b > y) && violations.len() < 20 {
                        violations.push(json!({"t": code(t), "t_prime": code(t2)}));
                    }
                }
            }
        }
    }
    r.detail("cross_order_reading", json!({"pairs": pairs, "violations_shown": violations}));
    Ok(r.finish())
}

fn mkg_reduction(id: &str, anchor: &str, max_n: usize, exponential: bool) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(id, anchor);
    r.note("MKG factor per edge uv: √(du² + d(e)²) + √(dv² + d(e)²) with d(e) = du + dv − 2");
    r.note("strict decrease required by more than the real tolerance on the log scale");
    if exponential {
        r.note("e^MKG is compared through MKG, which carries the order");
    }
    sweep(&mut r, classes(4, max_n), |_, delta, trees, rep| {
        let logs: Vec<f64> = trees.iter().map(|t| mkg_log(t).unwrap()).collect();
        let best = logs.iter().cloned().fold(f64::INFINITY, f64::min);
        for (t, &l) in trees.iter().zip(&logs) {
            let hyp = (0..t.n()).any(|v| t.degree(v) >= 3 && has_other_max_vertex(t, v, delta));
            if !hyp {
                continue;
            }
            let mkg = if exponential { l.exp() } else { l };
            let ok = best < l - REAL_TOLERANCE;
            rep.check(code(t), (!ok).then(|| json!({"log_mkg": l, "minimum_log_mkg": best, "compared": mkg})));
        }
    });
    Ok(r.finish())
}

pub fn lemma_2_4(max_n: usize) -> Result<VerificationReport> {
    mkg_reduction("lemma-2.4", "tree rooted at a degree-Δ vertex with another vertex of degree ≥ 3 has a smaller-MKG tree", max_n, false)
}

pub fn lemma_3_5(max_n: usize) -> Result<VerificationReport> {
    let mut r = mkg_reduction(
        "lemma-3.5",
        "another vertex of degree ≥ 3 ⇒ some T' with e^MKG(T') < e^MKG(T)",
        max_n,
        true,
    )?;
    r.note("the relation between the two exponential terms is missing as printed; the < direction is tested");
    Ok(r)
}

pub fn lemma_2_5(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "lemma-2.5",
        "starlike tree with a leg of length 1 and a leg of length ≥ 3 has a smaller-MKG starlike tree",
    );
    sweep(&mut r, classes(5, max_n), |_, delta, trees, rep| {
        let spiders: Vec<(&Graph, Vec<usize>, f64)> = trees
            .iter()
            .filter_map(|t| spider_legs(t).filter(|l| l.len() == delta).map(|l| (t, l, mkg_log(t).unwrap())))
            .collect();
        for (t, legs, l) in &spiders {
            if !(legs.contains(&1) && legs.iter().any(|&x| x >= 3)) {
                continue;
            }
            let ok = spiders.iter().any(|(_, _, m)| *m < l - REAL_TOLERANCE);
            rep.check(code(t), (!ok).then(|| json!({"legs": legs, "log_mkg": l})));
        }
    });
    Ok(r.finish())
}

/// Logarithm of the lower bound `(√(Δ²+4) + √2Δ)^Δ (√5+√2)^Δ (4√2)^(n−2Δ−1)`.
pub fn mkg_bound_log(n: usize, delta: usize) -> f64 {
    let d = delta as f64;
    d * ((d * d + 4.0).sqrt() + 2f64.sqrt() * d).ln()
        + d * (5f64.sqrt() + 2f64.sqrt()).ln()
        + (n as f64 - 2.0 * d - 1.0) * (4.0 * 2f64.sqrt()).ln()
}

pub fn eq_2_1(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "eq-2.1",
        "MKG(G) ≥ (√(Δ²+4)+√2Δ)^Δ (√5+√2)^Δ (4√2)^(n−2Δ−1) for connected G with Δ ≤ (n−1)/2",
    );
    r.note("only the Δ ≤ (n−1)/2 branch is checked; the other branch lacks its condition as printed");
    r.note("universe: all trees up to max_n and all connected graphs up to min(max_n, 8)");
    let mut equal = 0usize;
    let mut check = |g: &Graph, rep: &mut VerificationReport| {
        let (n, d) = (g.n(), g.max_degree());
        if g.m() == 0 || 2 * d > n - 1 {
            return;
        }
        let lhs = mkg_log(g).unwrap();
        let rhs = mkg_bound_log(n, d);
        if (lhs - rhs).abs() <= REAL_TOLERANCE * rhs.abs().max(1.0) {
            equal += 1;
        }
        rep.check(code(g), (lhs < rhs - REAL_TOLERANCE * rhs.abs().max(1.0)).then(|| json!({"log_mkg": lhs, "log_bound": rhs})));
    };
    for n in 3..=max_n {
        for t in enumerate_trees(&TreeClass::All { n })? {
            check(&t, &mut r);
        }
    }
    for n in 3..=max_n.min(8) {
        for g in connected_graphs(n)?.iter().filter(|g| !g.is_tree()) {
            check(g, &mut r);
        }
    }
    r.detail("equality_cases", equal);
    Ok(r.finish())
}

pub fn thm_2_7(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "thm-2.7",
        "D ◁ D' for tree degree sequences of one order ⇒ last trees satisfy T* ≺_s (T')*",
    );
    r.note("last tree: S-order maximum, canonical code breaks =_s ties");
    let parts: Vec<VerificationReport> = (4..=max_n)
        .into_par_iter()
        .map(|n| {
            let mut rep = VerificationReport::new(&r.claim, &r.anchor);
            let seqs = tree_degree_sequences(n);
            let lasts: Vec<Graph> = seqs
                .iter()
                .map(|d| s_order_last(&enumerate_trees(&TreeClass::Degrees(d.clone())).unwrap()).unwrap())
                .collect();
            for (i, d) in seqs.iter().enumerate() {
                for (j, dp) in seqs.iter().enumerate() {
                    if i == j || !dp.majorizes(d).unwrap() {
                        continue;
                    }
                    let c = s_order_compare(&lasts[i], &lasts[j]).unwrap();
                    rep.check(
                        format!("{d}|{dp}"),
                        (c.relation != SRelation::Precedes)
                            .then(|| json!({"relation": c.relation, "first_divergence": c.first_divergence})),
                    );
                }
            }
            rep
        })
        .collect();
    for p in parts {
        r.merge(p);
    }
    Ok(r.finish())
}

/// Parent pointers of a tree rooted at `root`; the root points at itself.
fn parents(t: &Graph, root: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; t.n()];
    parent[root] = root;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for w in bits(t.neighbors(v)) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    parent
}

pub fn lemma_4_3(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "lemma-4.3",
        "equal-degree u, v with larger neighbor-degree sum at u: swapping ux0, vx1 with d(x0) < d(x1) gives T ≺_s T'",
    );
    r.note("every maximum-degree root and every ordered pair u ≠ v is tried; swaps that leave a non-tree are skipped");
    let skipped = std::sync::atomic::AtomicUsize::new(0);
    let parts: Vec<VerificationReport> = (4..=max_n)
        .into_par_iter()
        .flat_map_iter(|n| enumerate_trees(&TreeClass::All { n }).unwrap())
        .map(|t| {
            let mut rep = VerificationReport::new(&r.claim, &r.anchor);
            let delta = t.max_degree();
            let key = s_order_key(&t);
            for root in (0..t.n()).filter(|&v| t.degree(v) == delta) {
                let parent = parents(&t, root);
                let children: Vec<Vec<usize>> =
                    (0..t.n()).map(|x| bits(t.neighbors(x)).filter(|&w| parent[w] == x).collect()).collect();
                let nsum = |x: usize| bits(t.neighbors(x)).map(|w| t.degree(w)).sum::<usize>();
                for u in 0..t.n() {
                    for v in 0..t.n() {
                        if u == v || t.degree(u) != t.degree(v) || nsum(u) < nsum(v) {
                            continue;
                        }
                        for &x0 in &children[u] {
                            for &x1 in children[v].iter().filter(|&&x1| t.degree(x0) < t.degree(x1)) {
                                if x0 == v || x1 == u {
                                    continue;
                                }
                                let swapped =
                                    t.without_edge(u, x0).without_edge(v, x1).with_edge(u, x1).with_edge(v, x0);
                                if !swapped.is_tree() {
                                    skipped.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                                    continue;
                                }
                                rep.check(
                                    format!("{}#root{root}u{u}v{v}x{x0}y{x1}", code(&t)),
                                    (key >= s_order_key(&swapped)).then(|| json!({"swapped": code(&swapped)})),
                                );
                            }
                        }
                    }
                }
            }
            rep
        })
        .collect();
    for p in parts {
        r.merge(p);
    }
    r.detail("non_tree_swaps_skipped", skipped.into_inner());
    Ok(r.finish())
}

pub fn lemma_4_6(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "lemma-4.6",
        "trees with one degree sequence share S_0..S_5 and S_6(T1) − S_6(T2) = 6(φ_T1(P4) − φ_T2(P4))",
    );
    r.note("checked per degree-sequence class against its first member, which covers every pair");
    for n in 2..=max_n {
        let mut groups: BTreeMap<DegreeSequence, Vec<Graph>> = BTreeMap::new();
        for t in enumerate_trees(&TreeClass::All { n })? {
            groups.entry(t.degree_sequence()).or_default().push(t);
        }
        for (d, trees) in groups {
            if trees.len() < 2 {
                continue;
            }
            let kmax = 6.min(2 * n);
            let base = spectral_moments(&trees[0], kmax)?;
            let base_p4 = count_p4(&trees[0]) as i128;
            let s6 = |m: &crate::spectral::MomentVector| -> i128 {
                m.moments.get(6).map(|x| x.to_string().parse().unwrap()).unwrap_or(0)
            };
            for t in &trees[1..] {
                let m = spectral_moments(t, kmax)?;
                let low_equal = m.moments[..6.min(kmax + 1)] == base.moments[..6.min(kmax + 1)];
                let lhs = s6(&m) - s6(&base);
                let rhs = 6 * (count_p4(t) as i128 - base_p4);
                rep_pair(&mut r, &d, t, &trees[0], low_equal && lhs == rhs, lhs, rhs);
            }
        }
    }
    Ok(r.finish())
}

fn rep_pair(r: &mut VerificationReport, d: &DegreeSequence, t: &Graph, base: &Graph, ok: bool, lhs: i128, rhs: i128) {
    r.check(
        format!("{d}:{}|{}", code(t), code(base)),
        (!ok).then(|| json!({"s6_difference": lhs.to_string(), "six_times_p4_difference": rhs.to_string()})),
    );
}

/// Degree sequences whose internal degrees are pairwise distinct.
pub fn distinct_internal_sequences(n: usize) -> Vec<DegreeSequence> {
    tree_degree_sequences(n)
        .into_iter()
        .filter(|d| {
            let inner: Vec<usize> = d.as_slice().iter().copied().filter(|&x| x > 1).collect();
            !inner.is_empty() && inner.windows(2).all(|w| w[0] != w[1])
        })
        .collect()
}

pub fn thm_4_7(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "thm-4.7",
        "for pairwise distinct degrees the S-order-first tree is the alternating greedy tree",
    );
    r.note("distinct: the non-leaf degrees are pairwise distinct (leaves necessarily repeat)");
    let parts: Vec<VerificationReport> = (3..=max_n)
        .into_par_iter()
        .flat_map_iter(distinct_internal_sequences)
        .map(|d| {
            let mut rep = VerificationReport::new(&r.claim, &r.anchor);
            let trees = enumerate_trees(&TreeClass::Degrees(d.clone())).unwrap();
            let greedy = alternating_greedy(&internal_degrees(&trees[0])).unwrap();
            let gcode = code(&greedy);
            let keys: Vec<_> = trees.iter().map(s_order_key).collect();
            let min = keys.iter().min().unwrap();
            let firsts: Vec<String> =
                trees.iter().zip(&keys).filter(|(_, k)| *k == min).map(|(t, _)| code(t)).collect();
            let ok = firsts.len() == 1 && firsts[0] == gcode;
            rep.check(d.to_string(), (!ok).then(|| json!({"first_trees": firsts, "alternating_greedy": gcode})));
            rep
        })
        .collect();
    for p in parts {
        r.merge(p);
    }
    Ok(r.finish())
}

/// `(k, a)` with `m = nk − C(k+1, 2) + a`, `1 ≤ k ≤ n−1`, `0 ≤ a < n − k − 1`.
pub fn f_bound_parameters(n: usize, m: usize) -> Vec<(usize, usize)> {
    (1..n)
        .filter_map(|k| {
            let base = n * k - k * (k + 1) / 2;
            (m >= base && m - base + k + 1 < n).then(|| (k, m - base))
        })
        .collect()
}

pub fn f_bound(n: usize, k: usize, a: usize) -> u64 {
    let (n, k, a) = (n as u64, k as u64, a as u64);
    k * (n - 1).pow(3) + a * (k + 1).pow(3) + (n - k - a - 1) * k.pow(3) + (k + a).pow(3)
}

pub fn conj_1(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "conj-1",
        "connected G with m = nk − C(k+1,2) + a: F(G) ≤ k(n−1)³ + a(k+1)³ + (n−k−a−1)k³ + (k+a)³",
    );
    r.note("universe: connected graphs with 6 ≤ n ≤ min(max_n, 8) and n−1 ≤ m < C(n,2)");
    let mut tight = 0usize;
    let mut ambiguous = Vec::new();
    for n in 6..=max_n.min(8) {
        for g in connected_graphs(n)? {
            let params = f_bound_parameters(n, g.m());
            if params.len() > 1 {
                ambiguous.push(json!({"n": n, "m": g.m()}));
            }
            let Some(&(k, a)) = params.first() else { continue };
            let b = f_bound(n, k, a);
            let f = forgotten(&g);
            if f == b {
                tight += 1;
            }
            r.check(code(&g), (f > b).then(|| json!({"n": n, "m": g.m(), "k": k, "a": a, "f": f, "bound": b})));
        }
    }
    r.detail("tight_instances", tight);
    r.detail("ambiguous_parameters", ambiguous);
    Ok(r.finish())
}

/// Maximum-F graphs of every edge count for connected graphs of order `n`.
fn f_maximizers(n: usize) -> Result<BTreeMap<usize, (u64, Vec<Graph>)>> {
    let mut best: BTreeMap<usize, (u64, Vec<Graph>)> = BTreeMap::new();
    for g in connected_graphs(n)? {
        let f = forgotten(&g);
        let e = best.entry(g.m()).or_insert((0, Vec::new()));
        if f > e.0 {
            *e = (f, vec![g]);
        } else if f == e.0 {
            e.1.push(g);
        }
    }
    Ok(best)
}

fn fmax_uniqueness(
    id: &str,
    anchor: &str,
    in_range: impl Fn(usize, usize) -> bool,
    exceptions: &[(usize, usize)],
    max_n: usize,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(id, anchor);
    r.note("S_{n,m} comes without a construction; the check is that the maximum-F graph is unique outside the listed exceptions");
    let mut observed = Vec::new();
    for n in 6..=max_n.min(8) {
        for (m, (f, gs)) in f_maximizers(n)? {
            if !in_range(n, m) {
                continue;
            }
            let seqs: Vec<String> = gs.iter().map(|g| g.degree_sequence().to_string()).collect();
            observed.push(json!({"n": n, "m": m, "f": f, "maximizers": gs.len(), "degree_sequences": seqs}));
            if exceptions.contains(&(n, m)) {
                continue;
            }
            r.check(format!("n{n}m{m}"), (gs.len() != 1).then(|| json!({"f": f, "degree_sequences": seqs})));
        }
    }
    r.detail("maximizers", observed);
    Ok(r.finish())
}

pub fn thm_2_8(max_n: usize) -> Result<VerificationReport> {
    fmax_uniqueness(
        "thm-2.8",
        "2n−3 < m ≤ 3n−6: maximum-F graph is the special graph S_{n,m} except (6,11)",
        |n, m| 2 * n - 3 < m && m <= 3 * n - 6,
        &[(6, 11)],
        max_n,
    )
}

pub fn thm_2_9(max_n: usize) -> Result<VerificationReport> {
    fmax_uniqueness(
        "thm-2.9",
        "3n−6 < m ≤ 4n−10: maximum-F graph is S_{n,m} except (7,16), (7,17), (8,22)",
        |n, m| 3 * n - 6 < m && m <= 4 * n - 10,
        &[(7, 16), (7, 17), (8, 22)],
        max_n,
    )
}

/// The explicit shape `(n−1, d, …, d, 1, 1)` for `n − 1 < m ≤ 2n − 3`.
pub fn fmax_shape(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "fmax-shape",
        "n−1 < m ≤ 2n−3: maximum-F graph has degree sequence (n−1, d₂, …, d₂, 1, 1)",
    );
    r.note("shape read literally: first entry n−1, last two entries 1, all middle entries equal");
    for n in 6..=max_n.min(8) {
        for (m, (f, gs)) in f_maximizers(n)? {
            if !(n - 1 < m && m <= 2 * n - 3) {
                continue;
            }
            for g in gs {
                let d = g.degree_sequence();
                let s = d.as_slice();
                let ok = s[0] == n - 1
                    && s[n - 2] == 1
                    && s[n - 1] == 1
                    && s[1..n - 2].windows(2).all(|w| w[0] == w[1]);
                r.check(format!("n{n}m{m}:{}", code(&g)), (!ok).then(|| json!({"f": f, "degree_sequence": d.to_string()})));
            }
        }
    }
    Ok(r.finish())
}

/// Non-increasing graphic sequences of length `n` with entries in `1..n`.
fn graphic_sequences(n: usize) -> Vec<DegreeSequence> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeSequence>) {
        if cur.len() == n {
            let d = DegreeSequence::new(cur.clone()).expect("built non-increasing");
            if d.sum().is_multiple_of(2) && d.is_graphical() {
                out.push(d);
            }
            return;
        }
        for x in 1..=max {
            cur.push(x);
            go(n, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        go(n, n - 1, &mut Vec::new(), &mut out);
    }
    out
}

pub fn prop_2_6(max_n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "prop-2.6",
        "D ◁ D' graphic ⇒ a chain D = D_1 ◁ … ◁ D_k = D' of graphic sequences, consecutive ones differing in two entries by 1",
    );
    r.note("all comparable pairs of positive graphic sequences of equal length and sum");
    for n in 2..=max_n.min(8) {
        let seqs = graphic_sequences(n);
        for d in &seqs {
            for dp in seqs.iter().filter(|dp| *dp != d && dp.sum() == d.sum()) {
                if !dp.majorizes(d)? {
                    continue;
                }
                let key = format!("{:?}->{:?}", d.as_slice(), dp.as_slice());
                let fail = match super::majorization_chain(d, dp) {
                    Err(e) => Some(json!({"error": e.to_string()})),
                    Ok(chain) => {
                        let bad_step = chain.windows(2).position(|w| {
                            let (a, b) = (w[0].as_slice(), w[1].as_slice());
                            let diff: Vec<i64> =
                                a.iter().zip(b).map(|(&x, &y)| y as i64 - x as i64).filter(|&z| z != 0).collect();
                            let sorted = diff.len() == 2 && diff.contains(&1) && diff.contains(&-1);
                            !(sorted && w[1].majorizes(&w[0]).unwrap_or(false) && w[1].is_graphical())
                        });
                        let ends = chain.first() == Some(d) && chain.last() == Some(dp);
                        (!ends || bad_step.is_some()).then(|| json!({"chain": chain.iter().map(|c| c.as_slice().to_vec()).collect::<Vec<_>>()}))
                    }
                };
                r.check(key, fail);
            }
        }
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn f_bound_parameters_tile_edge_counts() {
        for n in 6..=10 {
            for m in n - 1..n * (n - 1) / 2 {
                assert_eq!(f_bound_parameters(n, m).len(), 1, "n={n} m={m}");
            }
            assert!(f_bound_parameters(n, n * (n - 1) / 2).is_empty());
        }
        // Star: k = 1, a = 0 and the bound is attained.
        assert_eq!(f_bound_parameters(6, 5), vec![(1, 0)]);
        assert_eq!(f_bound(6, 1, 0), 125 + 4 + 1);
    }

    #[test]
    fn mkg_bound_is_tight_on_paths() {
        for n in 5..=12 {
            let p = crate::graph::families::path(n);
            assert!((mkg_log(&p).unwrap() - mkg_bound_log(n, 2)).abs() < 1e-9);
        }
    }

    #[test]
    fn small_sweeps() {
        assert_eq!(thm_2_2(8).unwrap().status, Status::Verified);
        assert_eq!(thm_2_3(8).unwrap().status, Status::Verified);
        assert_eq!(prop_2_1(8).unwrap().status, Status::Verified);
        assert_eq!(prop_3_1(8).unwrap().status, Status::Verified);
        assert_eq!(prop_3_2(8).unwrap().status, Status::Verified);
        assert_eq!(prop_3_4(8).unwrap().status, Status::Verified);
        assert_eq!(prop_3_3(8).unwrap().status, Status::Vacuous);
        assert_eq!(lemma_4_6(8).unwrap().status, Status::Verified);
        assert_eq!(thm_4_7(9).unwrap().status, Status::Verified);
    }
}
