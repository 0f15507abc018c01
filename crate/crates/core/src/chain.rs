//! Switch chain on 0-1 matrices with fixed margins, triangle-reversal chain on
//! tournaments with a fixed score sequence, and exact mixing diagnostics on
//! enumerated state spaces.

use crate::error::{check_cap, Error, Result};
use crate::graph::bits;
use crate::report::VerificationReport;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};
use std::collections::{HashMap, VecDeque};

pub const SIDE_LIMIT: usize = 64;
pub const STATE_LIMIT: usize = 1_000_000;
pub const CURVE_LIMIT: usize = 2_000;
pub const RATIONAL_LIMIT: usize = 200;
pub const CONDUCTANCE_LIMIT: usize = 22;
/// Longest mixing curve computed before giving up on `ε`.
pub const MAX_TIME: usize = 100_000;

/// What the chain walks on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainSpec {
    /// 0-1 matrices with row sums `rows` and column sums `cols`.
    Margins { rows: Vec<usize>, cols: Vec<usize> },
    /// Labeled tournaments in which player `i` beats exactly `s[i]` others.
    Scores(Vec<usize>),
}

/// A matrix by its rows, or a tournament by its out-neighborhoods.
pub type State = Vec<u64>;

/// Gale–Ryser: the conjugate of `r` dominates `c` sorted non-increasingly.
pub fn feasible_margins(r: &[usize], c: &[usize]) -> bool {
    if r.iter().sum::<usize>() != c.iter().sum::<usize>() || r.iter().any(|&x| x > c.len()) {
        return false;
    }
    let mut c = c.to_vec();
    c.sort_unstable_by(|a, b| b.cmp(a));
    let (mut lhs, mut rhs) = (0, 0);
    for (k, &ck) in c.iter().enumerate() {
        lhs += ck;
        rhs += r.iter().filter(|&&x| x > k).count();
        if lhs > rhs {
            return false;
        }
    }
    true
}

/// Landau: sorted scores have prefix sums at least `C(k, 2)` and total `C(n, 2)`.
pub fn is_score_sequence(s: &[usize]) -> bool {
    let mut s = s.to_vec();
    s.sort_unstable();
    let mut acc = 0;
    for (i, &x) in s.iter().enumerate() {
        acc += x;
        if acc < (i + 1) * i / 2 {
            return false;
        }
    }
    acc == s.len() * s.len().saturating_sub(1) / 2
}

/// `max_i |s_i − (n−1)/2| ≤ constant · n^{3/4+ε}`; advisory only.
pub fn near_regular(s: &[usize], epsilon: f64, constant: f64) -> bool {
    let n = s.len() as f64;
    let dev = s.iter().map(|&x| (x as f64 - (n - 1.0) / 2.0).abs()).fold(0.0, f64::max);
    s.is_empty() || dev <= constant * n.powf(0.75 + epsilon)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// A chain on the states of one margin pair or score sequence, with its move set.
#[derive(Clone, Debug)]
pub struct Chain {
    spec: ChainSpec,
    moves: Vec<[usize; 4]>,
}

impl Chain {
    pub fn new(spec: ChainSpec) -> Result<Self> {
        let moves = match &spec {
            ChainSpec::Margins { rows, cols } => {
                check_cap("matrix rows", SIDE_LIMIT, rows.len())?;
                check_cap("matrix columns", SIDE_LIMIT, cols.len())?;
                if !feasible_margins(rows, cols) {
                    return Err(Error::Infeasible(format!("no 0-1 matrix has rows {rows:?} and columns {cols:?}")));
                }
                pairs(rows.len()).flat_map(|(i, j)| pairs(cols.len()).map(move |(a, b)| [i, j, a, b])).collect()
            }
            ChainSpec::Scores(s) => {
                check_cap("tournament players", SIDE_LIMIT, s.len())?;
                if !is_score_sequence(s) {
                    return Err(Error::Infeasible(format!("{s:?} is not a score sequence")));
                }
                let n = s.len();
                pairs(n).flat_map(|(i, j)| (j + 1..n).map(move |k| [i, j, k, 0])).collect()
            }
        };
        Ok(Chain { spec, moves })
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    /// Number of equally likely moves behind the lazy coin.
    pub fn move_count(&self) -> usize {
        self.moves.len()
    }

    pub fn description(&self) -> &'static str {
        match self.spec {
            ChainSpec::Margins { .. } => "lazy heat-bath switch chain: hold with probability 1/2, else pick 2 rows and 2 columns uniformly and redraw a checkerboard minor as either checkerboard with probability 1/2",
            ChainSpec::Scores(_) => "lazy heat-bath triangle chain: hold with probability 1/2, else pick 3 players uniformly and redraw a directed 3-cycle as either orientation with probability 1/2",
        }
    }

    pub fn is_valid(&self, x: &State) -> bool {
        match &self.spec {
            ChainSpec::Margins { rows, cols } => {
                let width = cols.len();
                x.len() == rows.len()
                    && x.iter().zip(rows).all(|(&row, &r)| row >> width == 0 && row.count_ones() as usize == r)
                    && cols.iter().enumerate().all(|(j, &c)| x.iter().filter(|&&row| row >> j & 1 == 1).count() == c)
            }
            ChainSpec::Scores(s) => {
                x.len() == s.len()
                    && x.iter().zip(s).enumerate().all(|(i, (&row, &si))| {
                        row >> i & 1 == 0 && row >> s.len() == 0 && row.count_ones() as usize == si
                    })
                    && pairs(s.len()).all(|(i, j)| (x[i] >> j & 1) != (x[j] >> i & 1))
            }
        }
    }

    /// Applies move `k` in place; false when it is not a checkerboard or 3-cycle.
    fn apply(&self, x: &mut State, k: usize) -> bool {
        let [i, j, a, b] = self.moves[k];
        match self.spec {
            ChainSpec::Margins { .. } => {
                let pat = (x[i] >> a & 1, x[i] >> b & 1, x[j] >> a & 1, x[j] >> b & 1);
                if pat == (1, 0, 0, 1) || pat == (0, 1, 1, 0) {
                    let flip = 1 << a | 1 << b;
                    x[i] ^= flip;
                    x[j] ^= flip;
                    true
                } else {
                    false
                }
            }
            ChainSpec::Scores(_) => {
                let k3 = a;
                let forward = x[i] >> j & 1 == 1 && x[j] >> k3 & 1 == 1 && x[k3] >> i & 1 == 1;
                let backward = x[j] >> i & 1 == 1 && x[k3] >> j & 1 == 1 && x[i] >> k3 & 1 == 1;
                if forward || backward {
                    for (u, v) in [(i, j), (j, k3), (i, k3)] {
                        x[u] ^= 1 << v;
                        x[v] ^= 1 << u;
                    }
                    true
                } else {
                    false
                }
            }
        }
    }

    pub fn step<R: Rng>(&self, x: &mut State, rng: &mut R) {
        if rng.random_bool(0.5) || self.moves.is_empty() {
            return;
        }
        let k = rng.random_range(0..self.moves.len());
        // Heat bath on the chosen minor or triple: each orientation with probability 1/2.
        if rng.random_bool(0.5) {
            self.apply(x, k);
        }
    }

    /// One step from `x` driven by a fresh generator seeded with `seed`.
    pub fn step_seeded(&self, x: &State, seed: u64) -> State {
        let mut y = x.clone();
        self.step(&mut y, &mut ChaCha8Rng::seed_from_u64(seed));
        y
    }

    /// A first valid state: rows fill the columns with most demand left; a
    /// tournament is repaired from the transitive one.
    pub fn initial_state(&self) -> State {
        match &self.spec {
            ChainSpec::Margins { rows, cols } => {
                let mut left = cols.clone();
                rows.iter()
                    .map(|&r| {
                        let mut order: Vec<usize> = (0..cols.len()).collect();
                        order.sort_by_key(|&j| (std::cmp::Reverse(left[j]), j));
                        order[..r].iter().fold(0u64, |m, &j| {
                            left[j] -= 1;
                            m | 1 << j
                        })
                    })
                    .collect()
            }
            ChainSpec::Scores(s) => {
                // Start transitive, then reverse directed paths from a player with
                // too many wins to one with too few; Landau guarantees such a path.
                let n = s.len();
                let mut x: State = (0..n).map(|i| crate::graph::low_mask(n) & !crate::graph::low_mask(i + 1)).collect();
                loop {
                    let Some(u) = (0..n).find(|&i| x[i].count_ones() as usize > s[i]) else { break };
                    let mut prev = vec![usize::MAX; n];
                    prev[u] = u;
                    let mut queue = VecDeque::from([u]);
                    let mut end = None;
                    while let Some(a) = queue.pop_front() {
                        if (x[a].count_ones() as usize) < s[a] {
                            end = Some(a);
                            break;
                        }
                        for b in bits(x[a]) {
                            if prev[b] == usize::MAX {
                                prev[b] = a;
                                queue.push_back(b);
                            }
                        }
                    }
                    let mut at = end.expect("Landau sequences admit a tournament");
                    while at != u {
                        let a = prev[at];
                        x[a] ^= 1 << at;
                        x[at] ^= 1 << a;
                        at = a;
                    }
                }
                x
            }
        }
    }

    /// Every state, sorted, by backtracking with margin or score pruning.
    pub fn enumerate_states(&self) -> Result<Vec<State>> {
        let mut out = Vec::new();
        match &self.spec {
            ChainSpec::Margins { rows, cols } => {
                let mut left = cols.clone();
                let mut cur = Vec::new();
                matrices(rows, &mut left, &mut cur, &mut out)?;
            }
            ChainSpec::Scores(s) => {
                let n = s.len();
                let games: Vec<(usize, usize)> = pairs(n).collect();
                let mut remaining = vec![n.saturating_sub(1); n];
                let mut wins = vec![0usize; n];
                let mut x = vec![0u64; n];
                tournaments(s, &games, 0, &mut remaining, &mut wins, &mut x, &mut out)?;
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn render(&self, x: &State) -> Value {
        match &self.spec {
            ChainSpec::Margins { cols, .. } => {
                json!(x.iter().map(|&row| (0..cols.len()).map(|j| if row >> j & 1 == 1 { '1' } else { '0' }).collect::<String>()).collect::<Vec<_>>())
            }
            ChainSpec::Scores(_) => {
                json!(x.iter().enumerate().flat_map(|(u, &row)| bits(row).map(move |v| [u, v])).collect::<Vec<_>>())
            }
        }
    }

    /// `steps` states after `start`, keeping every `every`-th.
    pub fn sample(&self, start: &State, steps: usize, every: usize, seed: u64) -> Vec<State> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = start.clone();
        let mut out = Vec::new();
        for t in 1..=steps {
            self.step(&mut x, &mut rng);
            if t % every.max(1) == 0 {
                out.push(x.clone());
            }
        }
        out
    }
}

fn matrices(rows: &[usize], left: &mut [usize], cur: &mut Vec<u64>, out: &mut Vec<State>) -> Result<()> {
    let i = cur.len();
    if i == rows.len() {
        if left.iter().all(|&c| c == 0) {
            check_cap("state space", STATE_LIMIT, out.len() + 1)?;
            out.push(cur.clone());
        }
        return Ok(());
    }
    let later = rows.len() - i - 1;
    let must: u64 = (0..left.len()).filter(|&j| left[j] > later).fold(0, |m, j| m | 1 << j);
    let open: u64 = (0..left.len()).filter(|&j| left[j] > 0).fold(0, |m, j| m | 1 << j);
    if must.count_ones() as usize > rows[i] || (open.count_ones() as usize) < rows[i] {
        return Ok(());
    }
    let free: Vec<usize> = bits(open & !must).collect();
    let need = rows[i] - must.count_ones() as usize;
    let mut choice = Vec::new();
    subsets(&free, need, 0, &mut choice, &mut |extra| {
        let row = must | extra;
        for j in bits(row) {
            left[j] -= 1;
        }
        cur.push(row);
        let res = matrices(rows, left, cur, out);
        cur.pop();
        for j in bits(row) {
            left[j] += 1;
        }
        res
    })
}

fn subsets(items: &[usize], k: usize, from: usize, choice: &mut Vec<usize>, f: &mut dyn FnMut(u64) -> Result<()>) -> Result<()> {
    if choice.len() == k {
        return f(choice.iter().fold(0, |m, &j| m | 1 << j));
    }
    for idx in from..items.len() {
        if items.len() - idx < k - choice.len() {
            break;
        }
        choice.push(items[idx]);
        subsets(items, k, idx + 1, choice, f)?;
        choice.pop();
    }
    Ok(())
}

fn tournaments(
    s: &[usize],
    games: &[(usize, usize)],
    g: usize,
    remaining: &mut [usize],
    wins: &mut [usize],
    x: &mut State,
    out: &mut Vec<State>,
) -> Result<()> {
    if g == games.len() {
        check_cap("state space", STATE_LIMIT, out.len() + 1)?;
        out.push(x.clone());
        return Ok(());
    }
    let (u, v) = games[g];
    remaining[u] -= 1;
    remaining[v] -= 1;
    for (w, l) in [(u, v), (v, u)] {
        wins[w] += 1;
        let feasible = [u, v].iter().all(|&p| wins[p] <= s[p] && wins[p] + remaining[p] >= s[p]);
        if feasible {
            x[w] |= 1 << l;
            tournaments(s, games, g + 1, remaining, wins, x, out)?;
            x[w] &= !(1 << l);
        }
        wins[w] -= 1;
    }
    remaining[u] += 1;
    remaining[v] += 1;
    Ok(())
}

/// Transition matrix as integer numerators over a common denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct Transitions {
    /// Sparse rows `(column, numerator)`, diagonal included, columns increasing.
    pub rows: Vec<Vec<(usize, u64)>>,
    pub denominator: u64,
}

impl Transitions {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn entry(&self, x: usize, y: usize) -> u64 {
        self.rows[x].binary_search_by_key(&y, |e| e.0).map_or(0, |k| self.rows[x][k].1)
    }

    pub fn is_row_stochastic(&self) -> bool {
        self.rows.iter().all(|r| r.iter().map(|e| e.1).sum::<u64>() == self.denominator)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows.iter().enumerate().all(|(x, r)| r.iter().all(|&(y, w)| self.entry(y, x) == w))
    }

    /// The uniform distribution is stationary: every column sums to the denominator.
    pub fn uniform_stationary(&self) -> bool {
        let mut col = vec![0u64; self.len()];
        for r in &self.rows {
            for &(y, w) in r {
                col[y] += w;
            }
        }
        col.iter().all(|&c| c == self.denominator)
    }

    /// The move graph (off-diagonal support) is connected.
    pub fn is_connected(&self) -> bool {
        if self.rows.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.rows[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn rational(&self, x: usize, y: usize) -> BigRational {
        BigRational::new(BigInt::from(self.entry(x, y)), BigInt::from(self.denominator))
    }
}

/// Exact `P` from the move census: each productive move contributes `1` out of `4·moves`.
pub fn transitions(chain: &Chain, states: &[State]) -> Result<Transitions> {
    let index: HashMap<&State, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let moves = chain.move_count() as u64;
    let denominator = 4 * moves.max(1);
    let mut rows = Vec::with_capacity(states.len());
    for (x, s) in states.iter().enumerate() {
        let mut row: HashMap<usize, u64> = HashMap::new();
        for k in 0..chain.move_count() {
            let mut y = s.clone();
            if chain.apply(&mut y, k) {
                let target = *index
                    .get(&y)
                    .ok_or_else(|| Error::Precondition("a move left the enumerated state space".into()))?;
                *row.entry(target).or_default() += 1;
            }
        }
        let out: u64 = row.values().sum();
        *row.entry(x).or_default() += denominator - out;
        let mut row: Vec<(usize, u64)> = row.into_iter().collect();
        row.sort_unstable();
        rows.push(row);
    }
    Ok(Transitions { rows, denominator })
}

/// Distance to uniform after `t` steps, exact or in floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum TvValue {
    Exact(BigRational),
    Approx(f64),
}

impl TvValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            TvValue::Exact(q) => rational_to_f64(q),
            TvValue::Approx(v) => *v,
        }
    }

    pub fn render(&self) -> String {
        match self {
            TvValue::Exact(q) => q.to_string(),
            TvValue::Approx(v) => format!("{v:.15e}"),
        }
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `Δ_tv(t)` for `t = 0, 1, …` until it drops to `ε` (inclusive) or `max_time` is reached.
pub fn tv_curve(p: &Transitions, epsilon: f64, max_time: usize) -> Result<Vec<TvValue>> {
    let k = p.len();
    check_cap("mixing curve states", CURVE_LIMIT, k)?;
    if k <= RATIONAL_LIMIT {
        tv_exact(p, epsilon, max_time)
    } else {
        Ok(tv_float(p, epsilon, max_time))
    }
}

fn tv_exact(p: &Transitions, epsilon: f64, max_time: usize) -> Result<Vec<TvValue>> {
    let k = p.len();
    let eps = BigRational::from_float(epsilon).ok_or_else(|| Error::Numeric(format!("ε = {epsilon} is not finite")))?;
    let kk = BigInt::from(k);
    // M^t as integers; P^t = M^t / D^t.
    let mut cur: Vec<Vec<BigInt>> = (0..k).map(|x| (0..k).map(|y| BigInt::from((x == y) as u8)).collect()).collect();
    let mut scale = BigInt::one();
    let d = BigInt::from(p.denominator);
    let mut out = Vec::new();
    for t in 0..=max_time {
        let worst = cur
            .iter()
            .map(|row| row.iter().map(|v| (&kk * v - &scale).abs()).sum::<BigInt>())
            .max()
            .unwrap_or_else(BigInt::zero);
        let tv = BigRational::new(worst, BigInt::from(2) * &kk * &scale);
        let done = tv <= eps;
        out.push(TvValue::Exact(tv));
        if done || t == max_time {
            break;
        }
        let mut next = vec![vec![BigInt::zero(); k]; k];
        for (x, row) in cur.iter().enumerate() {
            for (y, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for &(z, w) in &p.rows[y] {
                    next[x][z] += v * BigInt::from(w);
                }
            }
        }
        cur = next;
        scale *= &d;
    }
    Ok(out)
}

fn tv_float(p: &Transitions, epsilon: f64, max_time: usize) -> Vec<TvValue> {
    let k = p.len();
    let d = p.denominator as f64;
    let mut cur: Vec<Vec<f64>> = (0..k).map(|x| (0..k).map(|y| (x == y) as u8 as f64).collect()).collect();
    let mut out = Vec::new();
    for t in 0..=max_time {
        let worst = cur
            .iter()
            .map(|row| 0.5 * row.iter().map(|v| (v - 1.0 / k as f64).abs()).sum::<f64>())
            .fold(0.0, f64::max);
        out.push(TvValue::Approx(worst));
        if worst <= epsilon || t == max_time {
            break;
        }
        cur = cur
            .par_iter()
            .map(|row| {
                let mut next = vec![0.0; k];
                for (y, &v) in row.iter().enumerate() {
                    if v != 0.0 {
                        for &(z, w) in &p.rows[y] {
                            next[z] += v * w as f64 / d;
                        }
                    }
                }
                next
            })
            .collect();
    }
    out
}

/// First `t` whose distance is at most `ε`; the curve is non-increasing, so
/// this is also the first `t` after which it stays there.
pub fn mixing_time(curve: &[TvValue], epsilon: f64) -> Option<usize> {
    let eps = BigRational::from_float(epsilon)?;
    curve.iter().position(|v| match v {
        TvValue::Exact(q) => *q <= eps,
        TvValue::Approx(x) => *x <= epsilon,
    })
}

/// `Φ = min C[T, T̄] / π(T)` over nonempty `T` with `π(T) ≤ 1/2`, for uniform
/// `π`; `None` on a single state.
pub fn conductance(p: &Transitions) -> Result<Option<BigRational>> {
    let k = p.len();
    check_cap("conductance states", CONDUCTANCE_LIMIT, k)?;
    if k < 2 {
        return Ok(None);
    }
    // With uniform π the ratio is cut(T) / (D · |T|).
    let mut best: Option<(u64, u64)> = None;
    let mut set = 0u64;
    let mut cut: i64 = 0;
    for g in 1u64..1 << k {
        let v = g.trailing_zeros() as usize;
        let joining = set >> v & 1 == 0;
        let mut inside = 0i64;
        let mut outside = 0i64;
        for &(y, w) in &p.rows[v] {
            if y != v {
                if set >> y & 1 == 1 {
                    inside += w as i64;
                } else {
                    outside += w as i64;
                }
            }
        }
        cut += if joining { outside - inside } else { inside - outside };
        set ^= 1 << v;
        let size = set.count_ones() as u64;
        if size >= 1 && 2 * size <= k as u64 {
            let (num, den) = (cut as u64, p.denominator * size);
            if best.is_none_or(|(bn, bd)| (num as u128) * (bd as u128) < (bn as u128) * (den as u128)) {
                best = Some((num, den));
            }
        }
    }
    Ok(best.map(|(n, d)| BigRational::new(n.into(), d.into())))
}

/// Largest non-unit eigenvalue of the lazy chain by power iteration on the
/// complement of the constant vector; the lazy chain has a nonnegative spectrum.
pub fn second_eigenvalue(p: &Transitions, iterations: usize, seed: u64) -> f64 {
    let k = p.len();
    if k < 2 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = |v: &mut Vec<f64>| {
        let mean = v.iter().sum::<f64>() / k as f64;
        v.iter_mut().for_each(|x| *x -= mean);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|x| *x /= norm);
        }
    };
    let mut v: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
    center(&mut v);
    let d = p.denominator as f64;
    let mut lambda = 0.0;
    for _ in 0..iterations {
        let w: Vec<f64> = p.rows.iter().map(|r| r.iter().map(|&(y, c)| c as f64 / d * v[y]).sum()).collect();
        lambda = w.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>();
        v = w;
        center(&mut v);
    }
    lambda.clamp(0.0, 1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainDiagnostics {
    pub description: String,
    pub states: Vec<State>,
    pub transitions: Transitions,
    pub symmetric: bool,
    pub row_stochastic: bool,
    pub uniform_stationary: bool,
    pub connected: bool,
    pub epsilon: f64,
    pub tv: Vec<TvValue>,
    pub tau: Option<usize>,
    /// `None` on a single state or above the subset-enumeration limit.
    pub conductance: Option<BigRational>,
}

impl ChainDiagnostics {
    pub fn to_json(&self, chain: &Chain) -> Value {
        let k = self.states.len();
        let matrix: Option<Vec<Vec<String>>> = (k <= 16)
            .then(|| (0..k).map(|x| (0..k).map(|y| self.transitions.rational(x, y).to_string()).collect()).collect());
        let conductance = match (&self.conductance, k) {
            (_, 0 | 1) => json!("degenerate"),
            (Some(q), _) => json!(q.to_string()),
            (None, _) => Value::Null,
        };
        json!({
            "moves": self.description,
            "states": k,
            "state_list": (k <= 64).then(|| self.states.iter().map(|s| chain.render(s)).collect::<Vec<_>>()),
            "denominator": self.transitions.denominator,
            "transition_matrix": matrix,
            "stationary": "uniform",
            "symmetric": self.symmetric,
            "row_stochastic": self.row_stochastic,
            "uniform_stationary": self.uniform_stationary,
            "connected": self.connected,
            "epsilon": self.epsilon,
            "tv": self.tv.iter().map(TvValue::render).collect::<Vec<_>>(),
            "exact": matches!(self.tv.first(), Some(TvValue::Exact(_))),
            "tau": self.tau,
            "conductance": conductance,
        })
    }
}

pub fn diagnostics(chain: &Chain, epsilon: f64) -> Result<ChainDiagnostics> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Precondition(format!("ε = {epsilon} must lie in (0, 1)")));
    }
    let states = chain.enumerate_states()?;
    check_cap("mixing curve states", CURVE_LIMIT, states.len())?;
    let p = transitions(chain, &states)?;
    let connected = p.is_connected();
    let horizon = if connected { MAX_TIME } else { 32 };
    let tv = tv_curve(&p, epsilon, horizon)?;
    let tau = if connected { mixing_time(&tv, epsilon) } else { None };
    let conductance = if states.len() <= CONDUCTANCE_LIMIT { conductance(&p)? } else { None };
    Ok(ChainDiagnostics {
        description: chain.description().to_string(),
        symmetric: p.is_symmetric(),
        row_stochastic: p.is_row_stochastic(),
        uniform_stationary: p.uniform_stationary(),
        connected,
        epsilon,
        tv,
        tau,
        conductance,
        states,
        transitions: p,
    })
}

/// One-sided normal tail beyond three standard deviations.
pub fn three_sigma_tail() -> f64 {
    1.0 - Normal::standard().cdf(3.0)
}

/// Chi-square test of thinned samples against the uniform distribution.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct UniformityTest {
    pub steps: usize,
    pub thinning: usize,
    pub samples: usize,
    pub chi_square: f64,
    pub df: usize,
    /// Upper-tail probability of the statistic.
    pub p_value: f64,
    /// Normal score with the same upper tail.
    pub z: f64,
    /// Every visited state satisfied the margins or scores.
    pub constraints_kept: bool,
}

fn upper_tail(chi_square: f64, df: usize) -> f64 {
    if df == 0 {
        return 1.0;
    }
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    dist.sf(chi_square)
}

fn normal_score(p_value: f64) -> f64 {
    Normal::standard().inverse_cdf((1.0 - p_value).clamp(1e-300, 1.0 - 1e-16))
}

/// Runs `steps` steps from the first state, records every `thinning`-th one
/// after a burn-in of the same length, and compares the counts with uniform.
/// The thinning spans several relaxation times so the recorded states are
/// close to independent.
pub fn uniformity_test(chain: &Chain, states: &[State], p: &Transitions, steps: usize, seed: u64) -> UniformityTest {
    let k = states.len();
    let lambda = second_eigenvalue(p, 3000, seed ^ 0x5eed);
    let relax = 1.0 / (1.0 - lambda).max(1e-9);
    let thinning = ((relax * (4.0 * k as f64).ln()).ceil() as usize).max(1);
    let index: HashMap<&State, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut counts = vec![0usize; k];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = states[0].clone();
    let mut kept = true;
    for t in 1..=steps {
        chain.step(&mut x, &mut rng);
        kept &= chain.is_valid(&x);
        if t > thinning && t % thinning == 0 {
            match index.get(&x) {
                Some(&i) => counts[i] += 1,
                None => kept = false,
            }
        }
    }
    let n: usize = counts.iter().sum();
    let expect = n as f64 / k as f64;
    let chi_square = if n == 0 { 0.0 } else { counts.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum() };
    let df = if n == 0 { 0 } else { k - 1 };
    let p_value = upper_tail(chi_square, df);
    UniformityTest { steps, thinning, samples: n, chi_square, df, p_value, z: normal_score(p_value), constraints_kept: kept }
}

fn vectors(len: usize, max: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    (0..=max)
        .flat_map(|x| {
            vectors(len - 1, x).into_iter().map(move |mut v| {
                v.insert(0, x);
                v
            })
        })
        .collect()
}

/// Feasible non-increasing margins of an `m × n` shape whose state count lies in `states`.
pub fn margins_of_shape(m: usize, n: usize, states: std::ops::RangeInclusive<usize>) -> Vec<ChainSpec> {
    let cs = vectors(n, m);
    let mut out = Vec::new();
    for r in vectors(m, n) {
        for c in cs.iter().filter(|c| c.iter().sum::<usize>() == r.iter().sum::<usize>()) {
            if !feasible_margins(&r, c) {
                continue;
            }
            let spec = ChainSpec::Margins { rows: r.clone(), cols: c.clone() };
            let chain = Chain::new(spec.clone()).expect("feasible");
            let count = chain.enumerate_states().map_or(usize::MAX, |s| s.len());
            if states.contains(&count) {
                out.push(spec);
            }
        }
    }
    out
}

/// Every shape `m × n` with `2 ≤ m ≤ n` and `m·n ≤ max_cells`, with 2 to `max_states` states.
pub fn margin_universe(max_cells: usize, max_states: usize) -> Vec<ChainSpec> {
    let mut out = Vec::new();
    for m in 2..=max_cells / 2 {
        for n in m..=max_cells / m {
            out.extend(margins_of_shape(m, n, 2..=max_states));
        }
    }
    out
}

/// Larger spaces, 500 to 2000 states, from the 3 × 8, 4 × 6 and 5 × 5 shapes.
pub fn large_margin_specs() -> Vec<ChainSpec> {
    [(3, 8), (4, 6), (5, 5)].into_iter().flat_map(|(m, n)| margins_of_shape(m, n, 501..=CURVE_LIMIT)).collect()
}

/// Non-decreasing score sequences on `1..=max_n` players.
pub fn score_universe(max_n: usize) -> Vec<ChainSpec> {
    fn go(n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if is_score_sequence(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for x in min..n {
            cur.push(x);
            go(n, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        go(n, 0, &mut Vec::new(), &mut out);
    }
    out.into_iter().map(ChainSpec::Scores).collect()
}

fn spec_key(spec: &ChainSpec) -> String {
    match spec {
        ChainSpec::Margins { rows, cols } => format!("r{rows:?}c{cols:?}"),
        ChainSpec::Scores(s) => format!("s{s:?}"),
    }
}

/// Per-input structural and sampling checks, run in parallel with seeds
/// derived from the input position.
///
/// The sampling verdict is three-sigma for the whole family: the pooled
/// chi-square over every input must sit within 3σ, and no single input may fall
/// beyond the Bonferroni share of that tail.
fn chain_sweep(r: &mut VerificationReport, specs: Vec<ChainSpec>, steps: usize, seed: u64) -> Result<()> {
    type Row = (String, bool, usize, Option<UniformityTest>, Value);
    let results: Vec<Result<Row>> = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let chain = Chain::new(spec.clone())?;
            let states = chain.enumerate_states()?;
            let p = transitions(&chain, &states)?;
            let structural = p.is_symmetric() && p.is_row_stochastic() && p.uniform_stationary() && p.is_connected();
            let start_ok = chain.is_valid(&chain.initial_state());
            let test = (states.len() >= 2).then(|| uniformity_test(&chain, &states, &p, steps, seed.wrapping_add(i as u64)));
            let ok = structural && start_ok && test.as_ref().is_none_or(|t| t.constraints_kept);
            let info = json!({
                "states": states.len(),
                "symmetric": p.is_symmetric(),
                "connected": p.is_connected(),
                "initial_state_valid": start_ok,
            });
            Ok((spec_key(spec), ok, states.len(), test, info))
        })
        .collect();
    let rows: Vec<Row> = results.into_iter().collect::<Result<_>>()?;
    let tested = rows.iter().filter(|row| row.3.is_some()).count().max(1);
    let family_tail = three_sigma_tail() / tested as f64;
    let (mut pooled, mut pooled_df, mut beyond, mut largest) = (0.0, 0usize, 0usize, 0usize);
    for (key, ok, states, test, mut info) in rows {
        largest = largest.max(states);
        let mut sampled = true;
        if let Some(t) = &test {
            pooled += t.chi_square;
            pooled_df += t.df;
            beyond += (t.z > 3.0) as usize;
            sampled = t.p_value >= family_tail;
            info["uniformity"] = json!(t);
        }
        r.check(key, (!(ok && sampled)).then_some(info));
    }
    let pooled_p = upper_tail(pooled, pooled_df);
    r.check("pooled", (pooled_p < three_sigma_tail()).then(|| json!({"chi_square": pooled, "df": pooled_df, "p_value": pooled_p})));
    r.detail("largest_state_space", largest);
    r.detail("specs_sampled", tested);
    r.detail("pooled_z", (normal_score(pooled_p) * 1000.0).round() / 1000.0);
    r.detail("specs_beyond_3_sigma_individually", beyond);
    r.detail("expected_beyond_3_sigma_if_uniform", (tested as f64 * three_sigma_tail() * 100.0).round() / 100.0);
    Ok(())
}

pub fn chain_margins(max_cells: usize, large: bool, steps: usize, seed: u64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "chain-margins",
        "switch chain on 0-1 matrices with fixed margins: symmetric P, uniform stationary law, irreducible",
    );
    r.note("lazy heat-bath checkerboard moves");
    r.note("every m × n shape with 2 ≤ m ≤ n and m·n within the cap, plus the 3 × 8, 4 × 6 and 5 × 5 margins with 500 < |Ω| ≤ 2000 when `large` is set; margins sorted non-increasingly; 2 ≤ |Ω| ≤ 2000");
    r.note("empirical check: thinned samples, chi-square against uniform; pooled and per-input (Bonferroni) three-sigma tails");
    let mut specs = margin_universe(max_cells, CURVE_LIMIT);
    if large {
        let extra: Vec<ChainSpec> = large_margin_specs().into_iter().filter(|s| !specs.contains(s)).collect();
        specs.extend(extra);
    }
    chain_sweep(&mut r, specs, steps, seed)?;
    Ok(r.finish())
}

pub fn chain_scores(max_n: usize, steps: usize, seed: u64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(
        "chain-scores",
        "triangle-reversal chain on tournaments with a fixed score sequence: symmetric P, uniform stationary law, irreducible",
    );
    r.note("lazy heat-bath 3-cycle moves; score sequences sorted non-decreasingly");
    r.note("empirical check: thinned samples, chi-square against uniform; pooled and per-input (Bonferroni) three-sigma tails");
    chain_sweep(&mut r, score_universe(max_n), steps, seed)?;
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn margins(r: &[usize], c: &[usize]) -> Chain {
        Chain::new(ChainSpec::Margins { rows: r.to_vec(), cols: c.to_vec() }).unwrap()
    }

    fn scores(s: &[usize]) -> Chain {
        Chain::new(ChainSpec::Scores(s.to_vec())).unwrap()
    }

    #[test]
    fn feasibility() {
        assert!(feasible_margins(&[1, 1], &[1, 1]));
        assert!(!feasible_margins(&[2], &[1]));
        assert!(feasible_margins(&[2, 2], &[2, 1, 1]));
        assert!(!feasible_margins(&[3, 0], &[1, 1]));
        assert!(is_score_sequence(&[1, 1, 1]));
        assert!(!is_score_sequence(&[0, 0, 3]));
        assert!(Chain::new(ChainSpec::Scores(vec![2, 2, 2])).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(margins(&[1, 1], &[1, 1]).enumerate_states().unwrap(), vec![vec![0b01, 0b10], vec![0b10, 0b01]]);
        assert_eq!(scores(&[1, 1, 1]).enumerate_states().unwrap().len(), 2);
        assert_eq!(scores(&[0, 1, 2]).enumerate_states().unwrap().len(), 1);
        // Permutation matrices and all 2^10 tournaments on 5 labeled players.
        assert_eq!(margins(&[1; 4], &[1; 4]).enumerate_states().unwrap().len(), 24);
        let total: usize = score_universe(5)
            .iter()
            .filter(|s| matches!(s, ChainSpec::Scores(v) if v.len() == 5))
            .map(|s| {
                let ChainSpec::Scores(v) = s else { unreachable!() };
                // Labeled classes: count every distinct arrangement of the sorted sequence.
                let mut perms = std::collections::BTreeSet::new();
                permute(v.clone(), 0, &mut perms);
                perms.iter().map(|p| Chain::new(ChainSpec::Scores(p.clone())).unwrap().enumerate_states().unwrap().len()).sum::<usize>()

            })
            .sum();
        assert_eq!(total, 1 << 10);
    }

    fn permute(mut v: Vec<usize>, k: usize, out: &mut std::collections::BTreeSet<Vec<usize>>) {
        if k == v.len() {
            out.insert(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v.clone(), k + 1, out);
            v.swap(k, i);
        }
    }

    #[test]
    fn steps_and_initial_states() {
        let c = margins(&[1, 1], &[1, 1]);
        let id = vec![0b01, 0b10];
        let reached: std::collections::BTreeSet<State> = (0..64).map(|s| c.step_seeded(&id, s)).collect();
        assert!(reached.contains(&vec![0b10, 0b01]) && reached.contains(&id));
        let t = scores(&[0, 1, 2]);
        let only = t.initial_state();
        assert!((0..32).all(|s| t.step_seeded(&only, s) == only));
        let cyc = scores(&[1, 1, 1]);
        let x = cyc.initial_state();
        let flipped: Vec<State> = (0..64).map(|s| cyc.step_seeded(&x, s)).filter(|y| *y != x).collect();
        let reversed: State = (0..3).map(|u| !x[u] & 0b111 & !(1 << u)).collect();
        assert!(!flipped.is_empty() && flipped.iter().all(|y| *y == reversed));
        for s in [vec![1, 2, 2, 3, 3, 4], vec![2, 2, 2, 2, 2], vec![0, 1, 2, 3, 4, 5, 6]] {
            let c = scores(&s);
            assert!(c.is_valid(&c.initial_state()), "{s:?}");
        }
        let c = margins(&[3, 2, 2, 1], &[2, 2, 2, 1, 1]);
        assert!(c.is_valid(&c.initial_state()));
    }

    #[test]
    fn two_state_chain() {
        let c = margins(&[1, 1], &[1, 1]);
        let d = diagnostics(&c, 0.01).unwrap();
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(d.transitions.rational(0, 0), q(3, 4));
        assert_eq!(d.transitions.rational(0, 1), q(1, 4));
        for (t, v) in d.tv.iter().enumerate() {
            assert_eq!(*v, TvValue::Exact(q(1, 1 << (t + 1))));
        }
        assert_eq!(d.tau, Some(6));
        assert_eq!(d.conductance, Some(q(1, 4)));
        let single = diagnostics(&scores(&[0, 1, 2]), 0.01).unwrap();
        assert_eq!((single.states.len(), single.tau, single.conductance.clone()), (1, Some(0), None));
        assert_eq!(single.tv, vec![TvValue::Exact(BigRational::zero())]);
        let tri = diagnostics(&scores(&[1, 1, 1]), 0.01).unwrap();
        assert!(tri.symmetric && tri.states.len() == 2);
    }

    #[test]
    fn curves_are_monotone_and_agree() {
        let c = margins(&[2, 1, 1], &[2, 1, 1]);
        let states = c.enumerate_states().unwrap();
        let p = transitions(&c, &states).unwrap();
        let exact = tv_exact(&p, 1e-4, 1000).unwrap();
        let float = tv_float(&p, 1e-4, 1000);
        assert_eq!(exact.len(), float.len());
        for w in exact.windows(2) {
            assert!(w[1].as_f64() <= w[0].as_f64());
        }
        for (a, b) in exact.iter().zip(&float) {
            assert!((a.as_f64() - b.as_f64()).abs() < 1e-12);
        }
        let lambda = second_eigenvalue(&p, 3000, 1);
        let t = exact.len() as f64;
        assert!(lambda > 0.0 && lambda < 1.0 && t > 1.0);
    }

    #[test]
    fn near_regularity() {
        assert!(near_regular(&[1, 1, 1], 0.01, 1.0));
        assert!(near_regular(&(0..16).collect::<Vec<_>>(), 0.01, 1.0));
        assert!(!near_regular(&(0..64).collect::<Vec<_>>(), 0.01, 1.0));
        assert!(near_regular(&[], 0.01, 1.0));
    }

    #[test]
    fn small_sweeps() {
        let r = chain_margins(6, false, 20_000, 3).unwrap();
        assert_eq!(r.status, crate::Status::Verified, "{:?}", r.counterexamples);
        let r = chain_scores(5, 20_000, 3).unwrap();
        assert_eq!(r.status, crate::Status::Verified, "{:?}", r.counterexamples);
    }
}
