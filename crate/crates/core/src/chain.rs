use std::collections::{BTreeMap, BTreeSet};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::PerfectMatching;

/// Seeded ChaCha8 stream; replica `i` of a run uses stream id `i` under the same key.
#[derive(Debug, Clone)]
pub struct ChainRng(ChaCha8Rng);

impl ChainRng {
    pub fn from_seed(seed: u64) -> Self {
        ChainRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn replica(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        ChainRng(rng)
    }

    /// Uniform vertex in `0..n` from a single 64-bit draw.
    #[inline]
    pub fn vertex(&mut self, n: usize) -> usize {
        ((self.0.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform float in `[0, 1)`.
    pub fn unit_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Applies the switch move for the ordered draw `(v, w)` to a partner array.
///
/// With `u = mate[v]` and `x = mate[w]` the edges `uv, xw` are replaced by `xv, uw`
/// when both exist. The move is taken only when `v < u`, so every neighbouring
/// matching is hit by exactly two of the `n^2` ordered draws.
#[inline]
pub(crate) fn step_mates(g: &Graph, mate: &mut [usize], v: usize, w: usize) -> bool {
    if v >= mate.len() {
        return false;
    }
    let u = mate[v];
    let x = mate[w];
    if v == w || w == u || v > u || !g.has_edge(x, v) || !g.has_edge(u, w) {
        return false;
    }
    mate[v] = x;
    mate[x] = v;
    mate[u] = w;
    mate[w] = u;
    true
}

/// Result of the switch move for a fixed draw; the identity when the move is rejected.
pub fn apply_draw(g: &Graph, m: &PerfectMatching, v: usize, w: usize) -> Result<PerfectMatching> {
    m.validate(g)?;
    if v >= g.n() || w >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v.max(w), n: g.n() });
    }
    let mut mate = m.mates();
    step_mates(g, &mut mate, v, w);
    Ok(PerfectMatching::from_mates(&mate))
}

/// One step of the switch chain.
pub fn switch_step(g: &Graph, m: &PerfectMatching, rng: &mut ChainRng) -> Result<PerfectMatching> {
    m.validate(g)?;
    let mut mate = m.mates();
    let v = rng.vertex(g.n());
    let w = rng.vertex(g.n());
    step_mates(g, &mut mate, v, w);
    Ok(PerfectMatching::from_mates(&mate))
}

/// Perfect matchings reachable from `m` by one switch.
pub fn switch_neighbors(g: &Graph, m: &PerfectMatching) -> Result<BTreeSet<PerfectMatching>> {
    m.validate(g)?;
    Ok(neighbor_mates(g, &m.mates()))
}

pub(crate) fn neighbor_mates(g: &Graph, mate: &[usize]) -> BTreeSet<PerfectMatching> {
    let mut out = BTreeSet::new();
    let pairs: Vec<(usize, usize)> = (0..mate.len()).filter(|&v| v < mate[v]).map(|v| (v, mate[v])).collect();
    let mut work = mate.to_vec();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[i + 1..] {
            for (p, q, r, s) in [(a, c, b, d), (a, d, b, c)] {
                if g.has_edge(p, q) && g.has_edge(r, s) {
                    work[p] = q;
                    work[q] = p;
                    work[r] = s;
                    work[s] = r;
                    out.insert(PerfectMatching::from_mates(&work));
                    for (y, z) in [(a, b), (c, d)] {
                        work[y] = z;
                        work[z] = y;
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainConfig {
    pub steps: u64,
    pub seed: u64,
    pub record_trajectory: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRun {
    pub final_state: PerfectMatching,
    /// States `M_0..=M_T` when recorded.
    pub trajectory: Option<Vec<PerfectMatching>>,
    pub moves: u64,
}

pub fn run_chain(g: &Graph, m0: &PerfectMatching, cfg: &ChainConfig) -> Result<ChainRun> {
    run_with_rng(g, m0, cfg.steps, cfg.record_trajectory, &mut ChainRng::from_seed(cfg.seed))
}

fn run_with_rng(g: &Graph, m0: &PerfectMatching, steps: u64, record: bool, rng: &mut ChainRng) -> Result<ChainRun> {
    m0.validate(g)?;
    let n = g.n();
    let mut mate = m0.mates();
    let mut trajectory = record.then(|| vec![m0.clone()]);
    let mut moves = 0;
    for _ in 0..steps {
        let v = rng.vertex(n);
        let w = rng.vertex(n);
        if step_mates(g, &mut mate, v, w) {
            moves += 1;
        }
        debug_assert!((0..n).all(|x| mate[mate[x]] == x && g.has_edge(x, mate[x])));
        if let Some(t) = trajectory.as_mut() {
            t.push(PerfectMatching::from_mates(&mate));
        }
    }
    Ok(ChainRun { final_state: PerfectMatching::from_mates(&mate), trajectory, moves })
}

/// Counts of final states over independent replicas.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram {
    pub counts: BTreeMap<PerfectMatching, u64>,
    pub total: u64,
}

impl Histogram {
    pub fn add(&mut self, m: PerfectMatching) {
        *self.counts.entry(m).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn merge(mut self, other: Histogram) -> Histogram {
        for (m, c) in other.counts {
            *self.counts.entry(m).or_insert(0) += c;
        }
        self.total += other.total;
        self
    }

    pub fn count(&self, m: &PerfectMatching) -> u64 {
        self.counts.get(m).copied().unwrap_or(0)
    }

    pub fn frequency(&self, m: &PerfectMatching) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count(m) as f64 / self.total as f64
        }
    }
}

/// Runs `replicas` independent chains of `steps` steps from `m0` and tallies the final states.
///
/// Replica `i` draws from stream `i` of `seed`, so the result does not depend on thread count.
pub fn sample_distribution(g: &Graph, m0: &PerfectMatching, steps: u64, replicas: u64, seed: u64) -> Result<Histogram> {
    m0.validate(g)?;
    let finals = replica_states(g, m0, &[steps], replicas, seed)?;
    let mut hist = Histogram::default();
    for states in finals {
        hist.add(states.into_iter().next().unwrap());
    }
    Ok(hist)
}

/// For each replica, its states at the (sorted, deduplicated) times in `grid`.
pub(crate) fn replica_states(
    g: &Graph,
    m0: &PerfectMatching,
    grid: &[u64],
    replicas: u64,
    seed: u64,
) -> Result<Vec<Vec<PerfectMatching>>> {
    m0.validate(g)?;
    let n = g.n();
    let start = m0.mates();
    Ok((0..replicas)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChainRng::replica(seed, i);
            let mut mate = start.clone();
            let mut t = 0;
            let mut out = Vec::with_capacity(grid.len());
            for &target in grid {
                while t < target {
                    let v = rng.vertex(n);
                    let w = rng.vertex(n);
                    step_mates(g, &mut mate, v, w);
                    t += 1;
                }
                out.push(PerfectMatching::from_mates(&mate));
            }
            out
        })
        .collect())
}
