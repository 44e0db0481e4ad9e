use std::collections::{HashMap, VecDeque};

use crate::chain::neighbor_mates;
use crate::error::{Error, Result};
use crate::graph::{Budget, Graph};
use crate::matching::{enumerate_perfect_matchings, for_each_perfect_matching, PerfectMatching};

/// Graph on the perfect matchings of a host graph, adjacent when one switch apart.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    nodes: Vec<PerfectMatching>,
    index: HashMap<PerfectMatching, usize>,
    adjacency: Vec<Vec<usize>>,
    host_n: usize,
}

impl TransitionGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of vertices of the host graph.
    pub fn host_n(&self) -> usize {
        self.host_n
    }

    /// Nodes in lexicographic order.
    pub fn nodes(&self) -> &[PerfectMatching] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &PerfectMatching {
        &self.nodes[i]
    }

    pub fn index_of(&self, m: &PerfectMatching) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Sorted neighbour ids of node `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn bfs(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Components as sorted node-id lists, ordered by least id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp_of = vec![usize::MAX; self.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.len() {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp_of[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &self.adjacency[v] {
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.bfs(0).iter().all(|&d| d != usize::MAX)
    }
}

/// Builds the transition graph of `g`.
pub fn build_transition_graph(g: &Graph, budget: Budget) -> Result<TransitionGraph> {
    let nodes = enumerate_perfect_matchings(g, budget)?;
    let index: HashMap<PerfectMatching, usize> = nodes.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let adjacency = nodes
        .iter()
        .map(|m| {
            let mut ids: Vec<usize> = neighbor_mates(g, &m.mates()).iter().map(|x| index[x]).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    Ok(TransitionGraph { nodes, index, adjacency, host_n: g.n() })
}

/// Switch distance between two perfect matchings, `None` if they lie in different components.
pub fn distance(tg: &TransitionGraph, x: &PerfectMatching, y: &PerfectMatching) -> Result<Option<usize>> {
    let missing = || Error::InvalidMatching("not a node of the transition graph".into());
    let i = tg.index_of(x).ok_or_else(missing)?;
    let j = tg.index_of(y).ok_or_else(missing)?;
    let d = tg.bfs(i)[j];
    Ok((d != usize::MAX).then_some(d))
}

/// Largest switch distance, `None` when disconnected.
pub fn diameter(tg: &TransitionGraph) -> Result<Option<usize>> {
    if tg.is_empty() {
        return Err(Error::NoPerfectMatching);
    }
    let mut best = 0;
    for s in 0..tg.len() {
        for d in tg.bfs(s) {
            if d == usize::MAX {
                return Ok(None);
            }
            best = best.max(d);
        }
    }
    Ok(Some(best))
}

/// Whether the transition graph of `g` is connected (vacuously true with at most one matching).
pub fn is_ergodic(g: &Graph, budget: Budget) -> Result<bool> {
    Ok(build_transition_graph(g, budget)?.is_connected())
}

/// Whether every induced subgraph of `g` has a connected transition graph, by checking all even subsets.
pub fn is_hereditarily_ergodic_bruteforce(g: &Graph, budget: Budget) -> Result<bool> {
    if g.n() > 24 {
        return Err(Error::TooLarge { what: "vertex count", actual: g.n(), limit: 24 });
    }
    let mut spent = 0u64;
    for mask in 0u64..1 << g.n() {
        if mask.count_ones() % 2 == 1 || mask.count_ones() < 4 {
            continue;
        }
        let (sub, _) = g.induced_by_mask(mask);
        let remaining = Budget(budget.0.saturating_sub(spent));
        let mut count = 0u64;
        for_each_perfect_matching(&sub, remaining, |_| {
            count += 1;
            count < 2
        })?;
        spent += 1 + count;
        if count < 2 {
            continue;
        }
        if !build_transition_graph(&sub, remaining)?.is_connected() {
            return Ok(false);
        }
        spent += sub.n() as u64;
    }
    Ok(true)
}
