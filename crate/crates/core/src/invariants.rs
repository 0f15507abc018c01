//! Degree-based topological indices.
//!
//! Integer-valued indices are exact. The KG-Sombor family uses the edge degree
//! `d(e) = deg u + deg v - 2`; products and exponentials are carried as logs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

/// Absolute error bound reported for real-valued indices.
pub const REAL_TOLERANCE: f64 = 1e-9;

fn big_as_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IndexValue {
    ExactInteger {
        #[serde(serialize_with = "big_as_string")]
        value: BigUint,
    },
    Real { value: f64, tolerance: f64 },
    /// Natural log of the index.
    LogReal { log_value: f64, tolerance: f64 },
}

impl IndexValue {
    pub fn exact(v: impl Into<BigUint>) -> Self {
        IndexValue::ExactInteger { value: v.into() }
    }

    pub fn real(value: f64) -> Self {
        IndexValue::Real { value, tolerance: REAL_TOLERANCE }
    }

    pub fn log_real(log_value: f64) -> Self {
        IndexValue::LogReal { log_value, tolerance: REAL_TOLERANCE }
    }

    /// Floating view: the value itself, or the logarithm for log-real values.
    pub fn as_f64(&self) -> f64 {
        match self {
            IndexValue::ExactInteger { value } => biguint_to_f64(value),
            IndexValue::Real { value, .. } => *value,
            IndexValue::LogReal { log_value, .. } => *log_value,
        }
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            IndexValue::ExactInteger { value } => Some(value),
            _ => None,
        }
    }
}

fn biguint_to_f64(v: &BigUint) -> f64 {
    v.to_string().parse().unwrap_or(f64::INFINITY)
}

/// Sum by recursive halving; error grows with log of the length.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// `Σ_v deg(v)^α`. Non-negative integer exponents are evaluated exactly, with `0^0 = 1`.
pub fn general_zagreb(g: &Graph, alpha: f64) -> Result<IndexValue> {
    if alpha.is_nan() {
        return Err(Error::Precondition("alpha must be a number".into()));
    }
    if alpha >= 0.0 && alpha.fract() == 0.0 && alpha <= u32::MAX as f64 {
        let e = alpha as u32;
        let mut total = BigUint::zero();
        for v in 0..g.n() {
            total += if e == 0 { BigUint::one() } else { BigUint::from(g.degree(v)).pow(e) };
        }
        return Ok(IndexValue::exact(total));
    }
    let mut terms = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let d = g.degree(v);
        if d == 0 && alpha < 0.0 {
            return Err(Error::Domain { vertex: v, alpha });
        }
        terms.push((d as f64).powf(alpha));
    }
    Ok(IndexValue::real(pairwise_sum(&terms)))
}

/// Forgotten index `Σ deg³`.
pub fn forgotten(g: &Graph) -> u64 {
    (0..g.n()).map(|v| (g.degree(v) as u64).pow(3)).sum()
}

/// `(HM₁, HM₂)` = `(Σ_{uv} (du+dv)², Σ_{uv} (du·dv)²)`.
pub fn hyper_zagreb(g: &Graph) -> (u64, u64) {
    let mut hm1 = 0u64;
    let mut hm2 = 0u64;
    for (u, v) in g.edges() {
        let (a, b) = (g.degree(u) as u64, g.degree(v) as u64);
        hm1 += (a + b).pow(2);
        hm2 += (a * b).pow(2);
    }
    (hm1, hm2)
}

fn edge_terms(g: &Graph, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    g.edges().into_iter().map(|(u, v)| f(g.degree(u) as f64, g.degree(v) as f64)).collect()
}

/// Sombor index `Σ_{uv} √(du² + dv²)`.
pub fn sombor(g: &Graph) -> f64 {
    pairwise_sum(&edge_terms(g, |a, b| a.hypot(b)))
}

/// Sombor index summed over the edges in reverse order, for stability checks.
pub fn sombor_reversed(g: &Graph) -> f64 {
    let mut t = edge_terms(g, |a, b| a.hypot(b));
    t.reverse();
    pairwise_sum(&t)
}

fn kg_factor(a: f64, b: f64) -> f64 {
    let de = a + b - 2.0;
    a.hypot(de) + b.hypot(de)
}

/// KG-Sombor index over vertex–edge incidences: `Σ_{e=uv} √(du²+d(e)²) + √(dv²+d(e)²)`.
/// The literal variant coincides with the Sombor index.
pub fn kg_sombor(g: &Graph, literal: bool) -> f64 {
    if literal {
        return sombor(g);
    }
    pairwise_sum(&edge_terms(g, kg_factor))
}

/// Natural log of the multiplicative KG-Sombor index `Π_{e=uv} (√(du²+d(e)²) + √(dv²+d(e)²))`.
pub fn mkg_log(g: &Graph) -> Result<f64> {
    if g.m() == 0 {
        return Err(Error::UndefinedProduct);
    }
    Ok(pairwise_sum(&edge_terms(g, |a, b| kg_factor(a, b).ln())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpBase {
    Hm1,
    Hm2,
}

/// Orders `e^{HM(g1)}` against `e^{HM(g2)}` through the integer exponents.
pub fn exp_index_compare(g1: &Graph, g2: &Graph, base: ExpBase) -> Ordering {
    let pick = |g: &Graph| {
        let (a, b) = hyper_zagreb(g);
        match base {
            ExpBase::Hm1 => a,
            ExpBase::Hm2 => b,
        }
    };
    pick(g1).cmp(&pick(g2))
}

/// Named indices for reports and the command line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IndexName {
    GeneralZagreb(f64),
    Hm1,
    Hm2,
    Forgotten,
    Sombor,
    KgSombor,
    Mkg,
    Estrada,
    ExpHm1,
    ExpHm2,
    ExpMkg,
}

impl IndexName {
    pub const STANDARD: [IndexName; 10] = [
        IndexName::Hm1,
        IndexName::Hm2,
        IndexName::Forgotten,
        IndexName::Sombor,
        IndexName::KgSombor,
        IndexName::Mkg,
        IndexName::Estrada,
        IndexName::ExpHm1,
        IndexName::ExpHm2,
        IndexName::ExpMkg,
    ];

    pub fn key(&self) -> String {
        match self {
            IndexName::GeneralZagreb(a) => format!("m{a}"),
            IndexName::Hm1 => "hm1".into(),
            IndexName::Hm2 => "hm2".into(),
            IndexName::Forgotten => "f".into(),
            IndexName::Sombor => "so".into(),
            IndexName::KgSombor => "kg".into(),
            IndexName::Mkg => "mkg".into(),
            IndexName::Estrada => "ee".into(),
            IndexName::ExpHm1 => "exp-hm1".into(),
            IndexName::ExpHm2 => "exp-hm2".into(),
            IndexName::ExpMkg => "exp-mkg".into(),
        }
    }

    /// Accepts the keys produced by [`IndexName::key`], plus `m:<alpha>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(a) = s.strip_prefix("m:").or_else(|| s.strip_prefix('m').filter(|r| r.parse::<f64>().is_ok())) {
            return a
                .parse()
                .map(IndexName::GeneralZagreb)
                .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")));
        }
        Ok(match s.as_str() {
            "hm1" => IndexName::Hm1,
            "hm2" => IndexName::Hm2,
            "f" | "forgotten" => IndexName::Forgotten,
            "so" | "sombor" => IndexName::Sombor,
            "kg" => IndexName::KgSombor,
            "mkg" => IndexName::Mkg,
            "ee" | "estrada" => IndexName::Estrada,
            "exp-hm1" => IndexName::ExpHm1,
            "exp-hm2" => IndexName::ExpHm2,
            "exp-mkg" => IndexName::ExpMkg,
            _ => return Err(Error::Parse(format!("unknown index `{s}`"))),
        })
    }
}

pub fn compute_index(g: &Graph, name: IndexName, kg_literal: bool) -> Result<IndexValue> {
    Ok(match name {
        IndexName::GeneralZagreb(a) => general_zagreb(g, a)?,
        IndexName::Hm1 => IndexValue::exact(hyper_zagreb(g).0),
        IndexName::Hm2 => IndexValue::exact(hyper_zagreb(g).1),
        IndexName::Forgotten => IndexValue::exact(forgotten(g)),
        IndexName::Sombor => IndexValue::real(sombor(g)),
        IndexName::KgSombor => IndexValue::real(kg_sombor(g, kg_literal)),
        IndexName::Mkg => IndexValue::log_real(mkg_log(g)?),
        IndexName::Estrada => IndexValue::real(crate::spectral::estrada(g)?),
        IndexName::ExpHm1 => IndexValue::log_real(hyper_zagreb(g).0 as f64),
        IndexName::ExpHm2 => IndexValue::log_real(hyper_zagreb(g).1 as f64),
        // e^{MKG}: the log of this index is MKG itself.
        IndexName::ExpMkg => IndexValue::log_real(mkg_log(g)?.exp()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use proptest::prelude::*;

    fn exact(v: IndexValue) -> u64 {
        v.as_exact().unwrap().to_string().parse().unwrap()
    }

    #[test]
    fn zagreb_values() {
        assert_eq!(exact(general_zagreb(&path(4), 1.0).unwrap()), 6);
        assert_eq!(exact(general_zagreb(&star(4), 3.0).unwrap()), 30);
        assert_eq!(exact(general_zagreb(&complete(2), 0.0).unwrap()), 2);
        assert_eq!(exact(general_zagreb(&Graph::empty(3).unwrap(), 0.0).unwrap()), 3);
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(general_zagreb(&g, -1.0), Err(Error::Domain { vertex: 2, alpha: -1.0 }));
        let r = general_zagreb(&path(3), 0.5).unwrap().as_f64();
        assert!((r - (2.0 + 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(forgotten(&star(4)), 30);
        // 63^10 overflows u64; the exact path copes.
        let big = general_zagreb(&star(64), 10.0).unwrap();
        assert_eq!(big.as_exact().unwrap(), &(BigUint::from(63u32).pow(10) + BigUint::from(63u32)));
    }

    #[test]
    fn hyper_zagreb_values() {
        assert_eq!(hyper_zagreb(&star(4)), (48, 27));
        assert_eq!(hyper_zagreb(&path(4)), (34, 24));
        // Spider with legs 2,1,1.
        let s = Graph::new(5, [(0, 1), (1, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(hyper_zagreb(&s), (66, 58));
    }

    #[test]
    fn sombor_family_values() {
        assert!((sombor(&complete(2)) - 2f64.sqrt()).abs() < 1e-12);
        assert!((sombor(&path(3)) - 2.0 * 5f64.sqrt()).abs() < 1e-12);
        assert!((mkg_log(&complete(2)).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert_eq!(mkg_log(&Graph::empty(2).unwrap()), Err(Error::UndefinedProduct));
        // P3: each edge has degrees (1,2) and d(e) = 1, factor √2 + √5.
        let f = 2f64.sqrt() + 5f64.sqrt();
        assert!((kg_sombor(&path(3), false) - 2.0 * f).abs() < 1e-12);
        assert!((mkg_log(&path(3)).unwrap() - 2.0 * f.ln()).abs() < 1e-12);
        assert_eq!(kg_sombor(&path(3), true), sombor(&path(3)));
    }

    #[test]
    fn exp_ordering() {
        assert_eq!(exp_index_compare(&path(4), &star(4), ExpBase::Hm1), Ordering::Less);
        assert_eq!(exp_index_compare(&path(4), &path(4), ExpBase::Hm2), Ordering::Equal);
        let s = Graph::new(5, [(0, 1), (1, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(exp_index_compare(&s, &star(4), ExpBase::Hm1), Ordering::Greater);
    }

    #[test]
    fn index_names_round_trip() {
        for name in IndexName::STANDARD {
            assert_eq!(IndexName::parse(&name.key()).unwrap(), name);
        }
        assert_eq!(IndexName::parse("m:2.5").unwrap(), IndexName::GeneralZagreb(2.5));
        assert_eq!(IndexName::parse("m3").unwrap(), IndexName::GeneralZagreb(3.0));
        assert!(IndexName::parse("nope").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=12, proptest::collection::vec(any::<bool>(), 66)).prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    }

    proptest! {
        #[test]
        fn handshake(g in arb_graph()) {
            prop_assert_eq!(exact(general_zagreb(&g, 1.0).unwrap()), 2 * g.m() as u64);
        }

        #[test]
        fn relabeling_invariance(g in arb_graph(), seed in any::<u64>()) {
            let n = g.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut x = seed | 1;
            for i in (1..n).rev() {
                x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                perm.swap(i, (x % (i as u64 + 1)) as usize);
            }
            let h = g.relabel(&perm);
            prop_assert_eq!(hyper_zagreb(&g), hyper_zagreb(&h));
            prop_assert_eq!(forgotten(&g), forgotten(&h));
        }

        #[test]
        fn sombor_order_stable(g in arb_graph()) {
            prop_assert!((sombor(&g) - sombor_reversed(&g)).abs() <= REAL_TOLERANCE);
        }
    }
}
