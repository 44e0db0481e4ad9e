//! Exact conductance, spectral gap and empirical total-variation decay of the switch chain.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::chain::{replica_states, Histogram};
use crate::error::{Error, Result};
use crate::gadgets::{gk_base_matching, slow_gk, GkLayout};
use crate::graph::{Budget, Graph};
use crate::matching::{enumerate_perfect_matchings, PerfectMatching};
use crate::transition::{build_transition_graph, TransitionGraph};

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// The switch chain's kernel on a transition graph: `2/n^2` per edge, the rest on the diagonal.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    adjacency: Vec<Vec<usize>>,
    step: BigRational,
    host_n: usize,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.adjacency.len()
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    /// Probability of each single switch move.
    pub fn step_probability(&self) -> &BigRational {
        &self.step
    }

    pub fn diagonal(&self, i: usize) -> BigRational {
        BigRational::one() - &self.step * BigInt::from(self.adjacency[i].len())
    }

    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        if i == j {
            self.diagonal(i)
        } else if self.adjacency[i].binary_search(&j).is_ok() {
            self.step.clone()
        } else {
            BigRational::zero()
        }
    }

    pub fn row_sum(&self, i: usize) -> BigRational {
        self.adjacency[i].iter().map(|&j| self.entry(i, j)).fold(self.diagonal(i), |a, b| a + b)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size()).all(|i| self.adjacency[i].iter().all(|&j| self.adjacency[j].binary_search(&i).is_ok()))
    }

    /// Checks `πP = π` exactly for the uniform `π`.
    pub fn uniform_is_stationary(&self) -> bool {
        let pi = ratio(1, self.size() as i64);
        (0..self.size()).all(|j| {
            let col = self.adjacency[j].iter().map(|&i| self.entry(i, j)).fold(self.diagonal(j), |a, b| a + b);
            &pi * col == pi
        })
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.size();
        let p = to_f64(&self.step);
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0 - p * self.adjacency[i].len() as f64;
            for &j in &self.adjacency[i] {
                m[(i, j)] = p;
            }
        }
        m
    }
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn transition_matrix(tg: &TransitionGraph) -> Result<TransitionMatrix> {
    if tg.is_empty() {
        return Err(Error::NoPerfectMatching);
    }
    let n = tg.host_n() as i64;
    let adjacency = (0..tg.len()).map(|i| tg.neighbors(i).to_vec()).collect();
    Ok(TransitionMatrix { adjacency, step: ratio(2, n * n), host_n: tg.host_n() })
}

/// Ergodic flow across a cut, with the smaller-mass side as `set`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutReport {
    pub set: Vec<usize>,
    pub flow: BigRational,
    pub pi_set: BigRational,
    pub conductance: BigRational,
    pub crossing_edges: usize,
}

pub fn cut_flow(tg: &TransitionGraph, s: &[usize]) -> Result<CutReport> {
    let total = tg.len();
    let mut inside = vec![false; total];
    for &v in s {
        if v >= total {
            return Err(Error::InvalidArgument(format!("node {v} out of range")));
        }
        inside[v] = true;
    }
    let size = inside.iter().filter(|&&b| b).count();
    if size == 0 || size == total {
        return Err(Error::InvalidArgument("cut must be a nonempty proper subset".into()));
    }
    if 2 * size > total || (2 * size == total && !inside[0]) {
        inside.iter_mut().for_each(|b| *b = !*b);
    }
    let set: Vec<usize> = (0..total).filter(|&v| inside[v]).collect();
    let crossing: usize = set.iter().map(|&v| tg.neighbors(v).iter().filter(|&&w| !inside[w]).count()).sum();
    let n = tg.host_n() as i64;
    let flow = ratio(1, total as i64) * ratio(2, n * n) * BigInt::from(crossing);
    let pi_set = ratio(set.len() as i64, total as i64);
    let conductance = &flow / &pi_set;
    Ok(CutReport { set, flow, pi_set, conductance, crossing_edges: crossing })
}

/// Largest transition graph the exhaustive cut scan accepts.
pub const MAX_EXACT_CUT_NODES: usize = 24;

/// Minimum conductance over every cut with `π(S) ≤ 1/2`.
pub fn conductance_exact(tg: &TransitionGraph) -> Result<BigRational> {
    let total = tg.len();
    if total > MAX_EXACT_CUT_NODES {
        return Err(Error::TooLarge { what: "transition graph", actual: total, limit: MAX_EXACT_CUT_NODES });
    }
    if total < 2 {
        return Err(Error::InvalidArgument("conductance needs at least two states".into()));
    }
    let adj: Vec<u32> = (0..total).map(|i| tg.neighbors(i).iter().fold(0u32, |m, &j| m | 1 << j)).collect();
    let (mut best_b, mut best_s) = (u64::MAX, 1u64);
    for s in 1u32..(1u32 << total) - 1 {
        let size = s.count_ones() as usize;
        if 2 * size > total {
            continue;
        }
        let mut boundary = 0u64;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            boundary += (adj[v] & !s).count_ones() as u64;
        }
        if boundary * best_s < best_b.saturating_mul(size as u64) {
            best_b = boundary;
            best_s = size as u64;
        }
    }
    let n = tg.host_n() as i64;
    Ok(ratio(2, n * n) * BigRational::new(BigInt::from(best_b), BigInt::from(best_s)))
}

/// Minimum conductance over the supplied cuts.
pub fn conductance_over_cuts(tg: &TransitionGraph, cuts: &[Vec<usize>]) -> Result<BigRational> {
    let mut best: Option<BigRational> = None;
    for c in cuts {
        let r = cut_flow(tg, c)?.conductance;
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("no cuts supplied".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkBounds {
    pub phi_upper: BigRational,
    pub tmix_lower: BigRational,
}

/// Closed-form conductance bound `1/(4k(2·3^k−1))` for `G_k` and the mixing-time bound `1/(4Φ)`.
pub fn gk_bounds(k: u32) -> GkBounds {
    let states = BigInt::from(2) * BigInt::from(3).pow(k) - 1;
    let denom = BigInt::from(4 * k) * &states;
    GkBounds {
        phi_upper: BigRational::new(BigInt::one(), denom),
        tmix_lower: BigRational::from_integer(BigInt::from(k) * states),
    }
}

/// Exact conductance of the `ℳ1∖M0 : ℳ2` cut in `G_k`: `2k` crossing switches out of `3^k − 1` states, `4k/(n²(3^k−1))`.
pub fn gk_cut_conductance(k: u32) -> BigRational {
    let n = BigInt::from(4 * k + 2);
    let side = BigInt::from(3).pow(k) - 1;
    BigRational::new(BigInt::from(4 * k), &n * &n * side)
}

/// Transition graph of `G_k` and the cut of matchings pairing `x_1` into `U ∪ W`.
pub fn gk_cut(k: usize, budget: Budget) -> Result<(TransitionGraph, Vec<usize>)> {
    let g = slow_gk(k)?;
    let l = GkLayout { k };
    let tg = build_transition_graph(&g, budget)?;
    let m0 = gk_base_matching(k)?;
    let x1 = l.x1();
    let s = (0..tg.len())
        .filter(|&i| {
            let m = tg.node(i);
            m != &m0 && m.mates()[x1] < 2 * k
        })
        .collect();
    Ok((tg, s))
}

/// Largest chain the dense eigensolver accepts.
pub const MAX_SPECTRAL_NODES: usize = 2000;

/// `1 − λ_2` of the (symmetric) kernel.
pub fn spectral_gap(tm: &TransitionMatrix) -> Result<f64> {
    if tm.size() > MAX_SPECTRAL_NODES {
        return Err(Error::TooLarge { what: "transition matrix", actual: tm.size(), limit: MAX_SPECTRAL_NODES });
    }
    if tm.size() < 2 {
        return Err(Error::InvalidArgument("spectral gap needs at least two states".into()));
    }
    let mut eig: Vec<f64> = SymmetricEigen::new(tm.to_dense()).eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok((1.0 - eig[1]).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvPoint {
    pub t: u64,
    pub tv: f64,
    /// Delta-method standard error of `tv`.
    pub std_err: f64,
}

/// Total-variation distance of a histogram from uniform on `support`, with its standard error.
pub fn tv_from_uniform(hist: &Histogram, support: &[PerfectMatching]) -> (f64, f64) {
    let u = 1.0 / support.len() as f64;
    let n = hist.total as f64;
    let (mut tv, mut m1, mut m2) = (0.0, 0.0, 0.0);
    let mut mass = 0.0;
    for m in support {
        let p = hist.frequency(m);
        mass += p;
        tv += (p - u).abs();
        let sign = if p > u { 1.0 } else { -1.0 };
        m1 += sign * p;
        m2 += p;
    }
    // Samples outside the support count fully towards the distance.
    tv += 1.0 - mass;
    let var = (m2 - m1 * m1).max(0.0);
    (0.5 * tv, 0.5 * (var / n).sqrt())
}

/// Empirical TV distance from uniform at each time of `grid`, over `replicas` chains started at `m0`.
pub fn tv_curve(
    g: &Graph,
    m0: &PerfectMatching,
    grid: &[u64],
    replicas: u64,
    seed: u64,
    budget: Budget,
) -> Result<Vec<TvPoint>> {
    if replicas == 0 {
        return Err(Error::InvalidArgument("tv_curve needs at least one replica".into()));
    }
    let support = enumerate_perfect_matchings(g, budget)?;
    let mut times = grid.to_vec();
    times.sort_unstable();
    times.dedup();
    let states = replica_states(g, m0, &times, replicas, seed)?;
    Ok(times
        .iter()
        .enumerate()
        .map(|(idx, &t)| {
            let mut hist = Histogram::default();
            for run in &states {
                hist.add(run[idx].clone());
            }
            let (tv, std_err) = tv_from_uniform(&hist, &support);
            TvPoint { t, tv, std_err }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson goodness-of-fit of a histogram against uniform on `support`.
pub fn chi_square_uniform(hist: &Histogram, support: &[PerfectMatching]) -> Result<ChiSquare> {
    if support.len() < 2 {
        return Err(Error::InvalidArgument("chi-square needs at least two categories".into()));
    }
    let expected = hist.total as f64 / support.len() as f64;
    let inside: u64 = support.iter().map(|m| hist.count(m)).sum();
    if inside != hist.total {
        return Err(Error::InvalidArgument("histogram has samples outside the support".into()));
    }
    let statistic = support
        .iter()
        .map(|m| {
            let d = hist.count(m) as f64 - expected;
            d * d / expected
        })
        .sum();
    let dof = support.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(ChiSquare { statistic, dof, p_value: dist.sf(statistic) })
}
