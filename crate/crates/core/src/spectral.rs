//! Spectral moments as exact closed-walk counts, the Estrada index, the S-order,
//! and path-on-four-vertices counts.

use crate::error::{check_cap, Error, Result};
use crate::graph::{bits, Graph};
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// Exact moments `S_0..=S_kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentVector {
    pub n: usize,
    pub moments: Vec<BigUint>,
}

impl MomentVector {
    pub fn get(&self, k: usize) -> &BigUint {
        &self.moments[k]
    }

    pub fn kmax(&self) -> usize {
        self.moments.len() - 1
    }
}

/// Trace of successive adjacency powers, in `u128` until a product would overflow.
pub fn spectral_moments(g: &Graph, kmax: usize) -> Result<MomentVector> {
    let n = g.n();
    check_cap("moment order kmax (2n)", 2 * n, kmax)?;
    let mut moments = Vec::with_capacity(kmax + 1);
    moments.push(BigUint::from(n));
    let mut power: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u128).collect()).collect();
    let mut k = 1;
    while k <= kmax {
        match step_u128(g, &power) {
            Some(next) => {
                power = next;
                moments.push(BigUint::from((0..n).map(|i| power[i][i]).sum::<u128>()));
                k += 1;
            }
            None => break,
        }
    }
    if k <= kmax {
        let mut big: Vec<Vec<BigUint>> = power.iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect();
        while k <= kmax {
            big = step_big(g, &big);
            moments.push((0..n).map(|i| big[i][i].clone()).sum());
            k += 1;
        }
    }
    Ok(MomentVector { n, moments })
}

fn step_u128(g: &Graph, p: &[Vec<u128>]) -> Option<Vec<Vec<u128>>> {
    let n = g.n();
    let mut out = vec![vec![0u128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0u128;
            for l in bits(g.neighbors(j)) {
                s = s.checked_add(p[i][l])?;
            }
            out[i][j] = s;
        }
    }
    // Traces sum n diagonal entries; keep headroom for that as well.
    let max_diag = (0..n).map(|i| out[i][i]).max().unwrap_or(0);
    max_diag.checked_mul(n as u128)?;
    Some(out)
}

fn step_big(g: &Graph, p: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = g.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| bits(g.neighbors(j)).fold(BigUint::zero(), |acc, l| acc + &p[i][l]))
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SRelation {
    EqualS,
    Precedes,
    Succeeds,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SComparison {
    pub relation: SRelation,
    /// First `k` with `S_k(g1) ≠ S_k(g2)`.
    pub first_divergence: Option<usize>,
}

/// Lexicographic comparison of `(S_0, …, S_n)`. The first `n` power sums fix the
/// spectrum, so ties are exactly cospectral pairs.
pub fn s_order_compare(g1: &Graph, g2: &Graph) -> Result<SComparison> {
    if g1.n() != g2.n() {
        return Err(Error::OrderMismatch(g1.n(), g2.n()));
    }
    let a = spectral_moments(g1, g1.n())?;
    let b = spectral_moments(g2, g2.n())?;
    Ok(compare_moments(&a, &b))
}

pub fn compare_moments(a: &MomentVector, b: &MomentVector) -> SComparison {
    for (k, (x, y)) in a.moments.iter().zip(&b.moments).enumerate() {
        match x.cmp(y) {
            Ordering::Less => return SComparison { relation: SRelation::Precedes, first_divergence: Some(k) },
            Ordering::Greater => return SComparison { relation: SRelation::Succeeds, first_divergence: Some(k) },
            Ordering::Equal => {}
        }
    }
    SComparison { relation: SRelation::EqualS, first_divergence: None }
}

/// Sort key realizing the S-order: moments `S_0..=S_n`.
pub fn s_order_key(g: &Graph) -> Vec<BigUint> {
    spectral_moments(g, g.n()).expect("kmax = n is within range").moments
}

fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

pub fn eigenvalues(g: &Graph) -> Result<Vec<f64>> {
    let eig = SymmetricEigen::try_new(adjacency(g), 1e-14, 10_000)
        .ok_or_else(|| Error::Numeric("symmetric eigensolver did not converge".into()))?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(vals)
}

/// Smallest `K` with `n·Δ^K / K! < 1e-9`.
pub fn series_truncation(n: usize, max_degree: usize) -> usize {
    let mut term = n as f64;
    let mut k = 0usize;
    while term >= 1e-9 {
        k += 1;
        term *= max_degree as f64 / k as f64;
    }
    k
}

/// Truncated series `Σ_{k ≤ K} S_k / k!` accumulated as traces of `A^k / k!`.
pub fn estrada_series(g: &Graph) -> f64 {
    let n = g.n();
    let a = adjacency(g);
    let kmax = series_truncation(n, g.max_degree());
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut total = n as f64;
    for k in 1..=kmax {
        term = (&term * &a) / k as f64;
        total += term.trace();
    }
    total
}

/// Estrada index from eigenvalues, cross-checked against the walk series.
pub fn estrada(g: &Graph) -> Result<f64> {
    let ee: f64 = crate::invariants::pairwise_sum(&eigenvalues(g)?.into_iter().map(f64::exp).collect::<Vec<_>>());
    let series = estrada_series(g);
    if (ee - series).abs() > 1e-6 * ee.max(1.0) {
        return Err(Error::Numeric(format!("eigenvalue sum {ee} disagrees with walk series {series}")));
    }
    Ok(ee)
}

/// Paths on four distinct vertices, each counted once:
/// `Σ_{uv ∈ E} (du - 1)(dv - 1) - 3·#triangles`.
pub fn count_p4(g: &Graph) -> u64 {
    let mut total: i64 = 0;
    let mut triangles: i64 = 0;
    for (u, v) in g.edges() {
        total += (g.degree(u) as i64 - 1) * (g.degree(v) as i64 - 1);
        triangles += (g.neighbors(u) & g.neighbors(v)).count_ones() as i64;
    }
    // Each triangle was seen once per edge.
    (total - triangles) as u64
}

/// Direct enumeration of vertex sequences `a-b-c-d`, halved for reversal.
pub fn count_p4_brute(g: &Graph) -> u64 {
    let n = g.n();
    let mut ordered = 0u64;
    for b in 0..n {
        for c in bits(g.neighbors(b)) {
            for a in bits(g.neighbors(b) & !(1 << c)) {
                ordered += (g.neighbors(c) & !(1 << b) & !(1 << a)).count_ones() as u64;
            }
        }
    }
    ordered / 2
}

/// Exact moments as `u64` for callers that know the values are small.
pub fn moments_u64(m: &MomentVector) -> Option<Vec<u64>> {
    m.moments.iter().map(|x| x.to_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn small(g: &Graph, k: usize) -> Vec<u64> {
        moments_u64(&spectral_moments(g, k).unwrap()).unwrap()
    }

    #[test]
    fn moment_values() {
        assert_eq!(small(&complete(2), 4), vec![2, 0, 2, 0, 2]);
        assert_eq!(small(&complete(3), 3)[3], 6);
        assert_eq!(small(&path(4), 2)[2], 6);
        assert_eq!(small(&path(4), 4)[4], 14);
        assert_eq!(small(&star(4), 4)[4], 18);
        assert!(spectral_moments(&path(3), 7).is_err());
    }

    #[test]
    fn big_fallback_agrees() {
        // K_64 walks overflow u128 well before k = 128.
        let k = complete(64);
        let m = spectral_moments(&k, 40).unwrap();
        // Closed walks in K_n: ((n-1)^k + (n-1)(-1)^k).
        let want = BigUint::from(63u32).pow(40) + BigUint::from(63u32);
        assert_eq!(m.get(40), &want);
    }

    #[test]
    fn s_order() {
        let p = path(4);
        assert_eq!(s_order_compare(&p, &p).unwrap().relation, SRelation::EqualS);
        let c = s_order_compare(&p, &star(4)).unwrap();
        assert_eq!(c, SComparison { relation: SRelation::Precedes, first_divergence: Some(4) });
        assert_eq!(s_order_compare(&p, &path(5)), Err(Error::OrderMismatch(4, 5)));
        // Degree sequences (2,2,2,2,1,1) and (3,2,1,1,1,... ) at n = 6.
        let p6 = path(6);
        let spider = Graph::new(6, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)]).unwrap();
        let c = s_order_compare(&p6, &spider).unwrap();
        assert_eq!(c.relation, SRelation::Precedes);
        assert!(c.first_divergence.unwrap() <= 6);
    }

    #[test]
    fn estrada_values() {
        let e = std::f64::consts::E;
        assert!((estrada(&complete(2)).unwrap() - (e + 1.0 / e)).abs() < 1e-8);
        assert!((estrada(&Graph::empty(3).unwrap()).unwrap() - 3.0).abs() < 1e-12);
        assert!((estrada(&complete(3)).unwrap() - (e * e + 2.0 / e)).abs() < 1e-8);
        assert!((estrada(&complete(2)).unwrap() - 3.086161).abs() < 1e-6);
        assert!((estrada(&complete(3)).unwrap() - 8.124815).abs() < 1e-6);
        estrada(&complete(64)).unwrap();
    }

    #[test]
    fn p4_counts() {
        assert_eq!(count_p4(&path(4)), 1);
        assert_eq!(count_p4(&star(4)), 0);
        assert_eq!(count_p4(&cycle(6)), 6);
        assert_eq!(count_p4(&complete(4)), 12);
        for g in crate::graph::enumerate::all_graphs(6).unwrap().iter() {
            assert_eq!(count_p4(g), count_p4_brute(g));
        }
    }

    #[test]
    fn eigenvalue_power_sums_match_walks() {
        for g in crate::graph::enumerate::all_graphs(6).unwrap().iter() {
            let ev = eigenvalues(g).unwrap();
            let m = small(g, 8);
            for (k, &s) in m.iter().enumerate() {
                let f: f64 = ev.iter().map(|l| l.powi(k as i32)).sum();
                assert!((f - s as f64).abs() <= 1e-6 * (s as f64).max(1.0), "k={k}");
            }
        }
    }
}
