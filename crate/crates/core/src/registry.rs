//! Claim registry: every checkable statement with its id, anchor, owning
//! module, size cap and checker.

use crate::bipartite::claims as bip;
use crate::chain;
use crate::competition;
use crate::cover::{self, CoveringClaim};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::trees::claims as trees;
use rayon::prelude::*;

/// Shared knobs for a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Overrides each claim's default size; rejected above the claim's limit.
    pub max_n: Option<usize>,
    pub seed: u64,
    /// Random instances per randomized claim; `None` keeps each claim's default.
    pub samples: Option<usize>,
    /// Chain steps per state space.
    pub steps: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_n: None, seed: 1, samples: None, steps: 1_000_000 }
    }
}

type Checker = fn(usize, &RunConfig) -> Result<VerificationReport>;

#[derive(Clone, Copy)]
pub struct ClaimEntry {
    pub id: &'static str,
    pub anchor: &'static str,
    pub module: &'static str,
    /// What the size cap bounds for this claim.
    pub size_meaning: &'static str,
    pub default_size: usize,
    pub size_limit: usize,
    pub default_samples: usize,
    run: Checker,
}

impl std::fmt::Debug for ClaimEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClaimEntry").field("id", &self.id).field("module", &self.module).finish()
    }
}

impl ClaimEntry {
    pub fn size(&self, cfg: &RunConfig) -> Result<usize> {
        let n = cfg.max_n.unwrap_or(self.default_size);
        if n > self.size_limit {
            return Err(Error::Capacity { what: self.module, limit: self.size_limit, got: n });
        }
        Ok(n)
    }

    pub fn samples(&self, cfg: &RunConfig) -> usize {
        cfg.samples.unwrap_or(self.default_samples)
    }

    pub fn run(&self, cfg: &RunConfig) -> Result<VerificationReport> {
        let n = self.size(cfg)?;
        let mut r = (self.run)(n, cfg)?;
        r.detail("size", n);
        r.detail("size_meaning", self.size_meaning);
        Ok(r)
    }
}

const TREE: &str = "tree-lab";
const SPECTRAL: &str = "spectral-order";
const BIP: &str = "bipartite-lab";
const COVER: &str = "cover-lab";
const COMP: &str = "competition-lab";
const CHAIN: &str = "chain-lab";

const TREE_ORDER: &str = "largest tree order";
const GRAPH_ORDER: &str = "largest graph order";

macro_rules! entry {
    ($id:expr, $module:expr, $meaning:expr, $default:expr, $limit:expr, $samples:expr, $anchor:expr, $run:expr) => {
        ClaimEntry {
            id: $id,
            anchor: $anchor,
            module: $module,
            size_meaning: $meaning,
            default_size: $default,
            size_limit: $limit,
            default_samples: $samples,
            run: $run,
        }
    };
}

fn covering(claim: CoveringClaim, n: usize, cfg: &RunConfig, samples: usize) -> Result<VerificationReport> {
    cover::verify_claim(claim, cfg.seed, cfg.samples.unwrap_or(samples), n)
}

/// Every registered claim, in report order.
pub fn claims() -> Vec<ClaimEntry> {
    vec![
        entry!("prop-2.1", TREE, TREE_ORDER, 12, 18, 0,
            "spider with at least two legs of length ≥ 2 is beaten by another spider",
            |n, _| trees::prop_2_1(n)),
        entry!("thm-2.2", TREE, TREE_ORDER, 12, 18, 0,
            "HM1(T) ≥ 16n + Δ³ + 2Δ² − 13Δ − 20, equality iff spider with exactly one leg ≥ 2; star: Δ(Δ+1)²",
            |n, _| trees::thm_2_2(n)),
        entry!("thm-2.3", TREE, TREE_ORDER, 12, 18, 0,
            "HM2(T) ≥ 16n + Δ³ + 3Δ² − 16Δ − 28, equality iff spider with exactly one leg ≥ 2; star: Δ³",
            |n, _| trees::thm_2_3(n)),
        entry!("prop-3.1", TREE, TREE_ORDER, 10, 18, 0,
            "end-support vertex of degree ≥ 3 besides a maximum-degree vertex ⇒ smaller HM1 and HM2 in T(n,Δ)",
            |n, _| trees::prop_3_1(n)),
        entry!("prop-3.2", TREE, TREE_ORDER, 10, 18, 0,
            "support vertex of degree ≥ 3 besides a maximum-degree vertex ⇒ smaller HM1 and HM2 in T(n,Δ)",
            |n, _| trees::prop_3_2(n)),
        entry!("prop-3.3", TREE, TREE_ORDER, 10, 18, 0,
            "T, T' in T(n,Δ), ℓ of degree Δ in T, ρ of degree n(T) − n(T') in T', n(T) > n(T') ⇒ HM1 and HM2 drop",
            |n, _| trees::prop_3_3(n)),
        entry!("prop-3.4", TREE, TREE_ORDER, 10, 18, 0,
            "second vertex of degree ≥ 3 ⇒ smaller e^HM1 and e^HM2 in T(n,Δ)",
            |n, _| trees::prop_3_4(n)),
        entry!("lemma-2.4", TREE, TREE_ORDER, 12, 18, 0,
            "tree rooted at a degree-Δ vertex with another vertex of degree ≥ 3 has a smaller-MKG tree",
            |n, _| trees::lemma_2_4(n)),
        entry!("lemma-3.5", TREE, TREE_ORDER, 12, 18, 0,
            "another vertex of degree ≥ 3 ⇒ some T' with e^MKG(T') < e^MKG(T)",
            |n, _| trees::lemma_3_5(n)),
        entry!("lemma-2.5", TREE, TREE_ORDER, 12, 18, 0,
            "starlike tree with a leg of length 1 and a leg of length ≥ 3 has a smaller-MKG starlike tree",
            |n, _| trees::lemma_2_5(n)),
        entry!("eq-2.1", TREE, TREE_ORDER, 12, 18, 0,
            "MKG(G) ≥ (√(Δ²+4)+√2Δ)^Δ (√5+√2)^Δ (4√2)^(n−2Δ−1) for connected G with Δ ≤ (n−1)/2",
            |n, _| trees::eq_2_1(n)),
        entry!("prop-2.6", TREE, "largest sequence length", 8, 8, 0,
            "D ◁ D' graphic ⇒ a chain D = D_1 ◁ … ◁ D_k = D' of graphic sequences, consecutive ones differing in two entries by 1",
            |n, _| trees::prop_2_6(n)),
        entry!("conj-1", TREE, GRAPH_ORDER, 8, 8, 0,
            "connected G with m = nk − C(k+1,2) + a: F(G) ≤ k(n−1)³ + a(k+1)³ + (n−k−a−1)k³ + (k+a)³",
            |n, _| trees::conj_1(n)),
        entry!("thm-2.8", TREE, GRAPH_ORDER, 8, 8, 0,
            "2n−3 < m ≤ 3n−6: maximum-F graph is the special graph S_{n,m} except (6,11)",
            |n, _| trees::thm_2_8(n)),
        entry!("thm-2.9", TREE, GRAPH_ORDER, 8, 8, 0,
            "3n−6 < m ≤ 4n−10: maximum-F graph is S_{n,m} except (7,16), (7,17), (8,22)",
            |n, _| trees::thm_2_9(n)),
        entry!("fmax-shape", TREE, GRAPH_ORDER, 8, 8, 0,
            "n−1 < m ≤ 2n−3: maximum-F graph has degree sequence (n−1, d₂, …, d₂, 1, 1)",
            |n, _| trees::fmax_shape(n)),
        entry!("thm-2.7", SPECTRAL, TREE_ORDER, 9, 14, 0,
            "D ◁ D' for tree degree sequences of one order ⇒ last trees satisfy T* ≺_s (T')*",
            |n, _| trees::thm_2_7(n)),
        entry!("lemma-4.3", SPECTRAL, TREE_ORDER, 10, 14, 0,
            "equal-degree u, v with larger neighbor-degree sum at u: swapping ux0, vx1 with d(x0) < d(x1) gives T ≺_s T'",
            |n, _| trees::lemma_4_3(n)),
        entry!("lemma-4.6", SPECTRAL, TREE_ORDER, 10, 16, 0,
            "trees with one degree sequence share S_0..S_5 and S_6(T1) − S_6(T2) = 6(φ_T1(P4) − φ_T2(P4))",
            |n, _| trees::lemma_4_6(n)),
        entry!("thm-4.7", SPECTRAL, TREE_ORDER, 12, 16, 0,
            "for pairwise distinct degrees the S-order-first tree is the alternating greedy tree",
            |n, _| trees::thm_4_7(n)),
        entry!("thm-4.8", BIP, "largest side", 5, 5, 0,
            "bipartite G without isolated vertices is unmixed iff some pairing x_i y_i of edges makes x_i y_j, x_j y_k ∈ E force x_i y_k ∈ E",
            |n, _| bip::thm_4_8(n)),
        entry!("thm-5.1", BIP, GRAPH_ORDER, 10, 10, 0,
            "connected bipartite G ≇ K_{n,n} is equitably Δ(G)-colorable; K_{n,n} is equitably k-colorable iff ⌈n/⌊k/2⌋⌉ − ⌊n/⌈k/2⌉⌋ ≤ 1",
            |n, _| bip::thm_5_1(n)),
        entry!("cor-5.2", BIP, TREE_ORDER, 10, 16, 0,
            "tree T(X, Y): χₑ(T) ≤ ⌈(|X| + |Y| + 1) / (min{|X|, |Y|} + 1)⌉",
            |n, _| bip::cor_5_2(n)),
        entry!("thm-5.3", BIP, GRAPH_ORDER, 10, 10, 500,
            "2-connected bipartite, |A| ≥ |B|, degrees ≥ k on A and ≥ l on B: cycle of length ≥ 2 min(|B|, k+l−1, 2k−2); if k = l and |A| = |B| then ≥ 2 min(|B|, 2k−1)",
            |n, c| bip::thm_5_3(n, c.seed, c.samples.unwrap_or(500))),
        entry!("thm-5.5", BIP, GRAPH_ORDER, 10, 10, 0,
            "2 ≤ m ≤ b ≤ a: |E(G)| > b + (a−1)(m−1) if b ≤ 2m−2, > (b + a − 2m + 3)(m−1) if b ≥ 2m−2",
            |n, _| bip::thm_5_5(n)),
        entry!("thm-5.6", BIP, GRAPH_ORDER, 10, 10, 0,
            "degrees ≥ k ≥ 2 on A and |B| ≤ ⌈|A|/(k−1)⌉(k−1): cycle of length ≥ 2k",
            |n, _| bip::thm_5_6(n)),
        entry!("lemma-5.7", BIP, GRAPH_ORDER, 10, 10, 500,
            "minimum degree k ≥ 2 and |B| < min(|A|, 2k−2): any two vertices are joined by a path through all of B",
            |n, c| bip::lemma_5_7(n, c.seed, c.samples.unwrap_or(500))),
        entry!("thm-5.9", BIP, GRAPH_ORDER, 10, 10, 500,
            "k ≤ 3, G k-connected bipartite with δ_G(U_i) ≥ |Z_{3−i}| + k: T embeds with φ(Z_i) ⊆ U_i and G − φ(T) k-connected",
            |n, c| bip::thm_5_9(n, c.seed, c.samples.unwrap_or(500))),
        entry!("thm-6.1", BIP, "largest side", 7, 7, 0,
            "f(n, Δ) ≥ (1/2)(log Δ / Δ) n for Δ ≥ Δ₀ and n > N₀(Δ); always f(n, Δ) ≤ f*(n, Δ)",
            |n, _| bip::thm_6_1(n)),
        entry!("thm-6.2", COVER, "largest side", 6, 8, 10_000,
            "E(K) equals the largest number of pairwise disjoint edges of K",
            |n, c| covering(CoveringClaim::Duality, n, c, 10_000)),
        entry!("thm-6.4", COVER, "largest side", 6, 8, 10_000,
            "E(K) < p ⇒ E(K) + I(K̄) = p + q; E(K) = p ⇒ ≤, with equality iff some m.e.p. [A, B] has A ≠ S and B ≠ T",
            |n, c| covering(CoveringClaim::Identity, n, c, 10_000)),
        entry!("thm-6.5", COVER, "largest side", 6, 8, 10_000,
            "S = A_* ∪ S_1 ∪ … ∪ S_k ∪ Ā^*, T = B̄^* ∪ T_1 ∪ … ∪ T_k ∪ B_*; tails and blocks are irreducible",
            |n, c| covering(CoveringClaim::Decomposition, n, c, 10_000)),
        entry!("thm-6.6", COVER, "largest side", 6, 8, 10_000,
            "the minimal exterior pairs form a lattice bounded by the extremal pairs [A_*, B^*] and [A^*, B_*]",
            |n, c| covering(CoveringClaim::Lattice, n, c, 10_000)),
        entry!("thm-6.7", COVER, "largest side", 6, 8, 10_000,
            "α ⊆ β ⊆ γ for the chain α, all m.e.p.s β and the 2^k pairs γ",
            |n, c| covering(CoveringClaim::Chain, n, c, 10_000)),
        entry!("thm-6.9", COMP, "fixed: n ≤ 7", 7, 7, 0,
            "κ(K_{n1,n2,n3}) = n1n2 − n + 2 if n2 ≥ n3 + 2; + 3 if n2 = n3 + 1 or n2 = n3 = 1; + 4 if n2 = n3 ≥ 2",
            |_, _| competition::thm_6_9()),
        entry!("thm-6.10", COMP, "largest vertex count", 16, 16, 0,
            "2 ≤ r ≤ L(n) + 2: θₑ(K_{r(n)}) = n² iff n ≢ 2 (mod 4)",
            |n, _| competition::thm_6_10(n)),
        entry!("thm-6.11", COMP, "fixed: n ≤ 6", 6, 6, 0,
            "κ(K_{n1,…,nr}) ≥ min{2n₂ − 1, n₁ + n_r − 2}; balanced: ≥ 3n − 5, ≥ n² − rn + 3r − 5 (n ≥ 3), ≤ n² − 2n + 2",
            |_, _| competition::thm_6_11()),
        entry!("chain-margins", CHAIN, "largest cell count m·n (≥ 20 adds the 500–2000 state shapes)", 20, 24, 0,
            "switch chain on 0-1 matrices with fixed margins: symmetric P, uniform stationary law, irreducible",
            |n, c| chain::chain_margins(n, n >= 20, c.steps, c.seed)),
        entry!("chain-scores", CHAIN, "largest player count", 6, 7, 0,
            "triangle-reversal chain on tournaments with a fixed score sequence: symmetric P, uniform stationary law, irreducible",
            |n, c| chain::chain_scores(n, c.steps, c.seed)),
    ]
}

pub fn lookup(id: &str) -> Result<ClaimEntry> {
    claims().into_iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

/// Runs one claim.
pub fn verify(id: &str, cfg: &RunConfig) -> Result<VerificationReport> {
    lookup(id)?.run(cfg)
}

/// Runs every claim whose id is in `filter` (all when `None`), in registry
/// order. Cap violations surface before any checker starts.
pub fn verify_all(cfg: &RunConfig, filter: Option<&[String]>) -> Result<Vec<VerificationReport>> {
    if let Some(ids) = filter {
        for id in ids {
            lookup(id)?;
        }
    }
    let selected: Vec<ClaimEntry> =
        claims().into_iter().filter(|c| filter.is_none_or(|ids| ids.iter().any(|i| i == c.id))).collect();
    for c in &selected {
        c.size(cfg)?;
    }
    selected.par_iter().map(|c| c.run(cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{aggregate_status, Status};

    #[test]
    fn ids_are_unique() {
        let all = claims();
        let mut ids: Vec<&str> = all.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
        assert!(all.iter().all(|c| c.default_size <= c.size_limit && !c.anchor.is_empty()));
    }

    #[test]
    fn unknown_and_oversized() {
        assert!(matches!(verify("thm-9.9", &RunConfig::default()), Err(Error::UnknownClaim(_))));
        let big = RunConfig { max_n: Some(40), ..RunConfig::default() };
        assert!(matches!(verify("thm-2.2", &big), Err(Error::Capacity { what: "tree-lab", .. })));
        assert!(matches!(verify_all(&big, None), Err(Error::Capacity { .. })));
    }

    #[test]
    fn empty_filter_is_vacuous() {
        let reports = verify_all(&RunConfig::default(), Some(&[])).unwrap();
        assert!(reports.is_empty());
        assert_eq!(aggregate_status(&reports), Status::Vacuous);
    }

    #[test]
    fn report_anchors_match_registry() {
        let cfg = RunConfig { max_n: Some(6), samples: Some(20), steps: 2_000, seed: 3 };
        for c in claims() {
            let cfg = RunConfig { max_n: Some(c.size_limit.min(6)), ..cfg.clone() };
            let r = c.run(&cfg).unwrap();
            assert_eq!((r.claim.as_str(), r.anchor.as_str()), (c.id, c.anchor), "{}", c.id);
        }
    }
}
