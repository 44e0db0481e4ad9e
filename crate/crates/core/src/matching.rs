use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{edge, Budget, CycleSeq, Edge, Graph, Meter};

/// Set of pairwise disjoint edges, stored sorted and normalised.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    /// Validates disjointness and membership in `g`.
    pub fn new(g: &Graph, edges: &[Edge]) -> Result<Self> {
        let mut used = vec![false; g.n()];
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= g.n() || v >= g.n() {
                return Err(Error::InvalidMatching(format!("edge {u}-{v} out of range")));
            }
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!("{u}-{v} is not an edge")));
            }
            if used[u] || used[v] {
                return Err(Error::InvalidMatching(format!("edge {u}-{v} shares an endpoint")));
            }
            used[u] = true;
            used[v] = true;
            out.push(edge(u, v));
        }
        out.sort_unstable();
        Ok(Matching { edges: out })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&edge(e.0, e.1)).is_ok()
    }
}

/// Matching covering every vertex of its graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching(Matching);

impl PerfectMatching {
    pub fn new(g: &Graph, edges: &[Edge]) -> Result<Self> {
        let m = Matching::new(g, edges)?;
        if 2 * m.len() != g.n() {
            return Err(Error::InvalidMatching(format!("{} edges cannot cover {} vertices", m.len(), g.n())));
        }
        Ok(PerfectMatching(m))
    }

    /// Builds from a partner array without checking edges of any graph.
    pub(crate) fn from_mates(mate: &[usize]) -> Self {
        let edges = (0..mate.len()).filter(|&v| v < mate[v]).map(|v| (v, mate[v])).collect();
        PerfectMatching(Matching { edges })
    }

    /// Partner array: `mates()[v]` is the vertex matched to `v`.
    pub fn mates(&self) -> Vec<usize> {
        let mut mate = vec![0; 2 * self.0.len()];
        for &(u, v) in &self.0.edges {
            mate[u] = v;
            mate[v] = u;
        }
        mate
    }

    pub fn as_matching(&self) -> &Matching {
        &self.0
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.contains(e)
    }

    /// Checks that this is a perfect matching of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        PerfectMatching::new(g, &self.0.edges).map(|_| ())
    }

    /// Symmetric difference, sorted.
    pub fn symmetric_difference(&self, other: &PerfectMatching) -> Vec<Edge> {
        let a: BTreeSet<Edge> = self.edges().iter().copied().collect();
        let b: BTreeSet<Edge> = other.edges().iter().copied().collect();
        a.symmetric_difference(&b).copied().collect()
    }
}

impl fmt::Debug for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.edges()).finish()
    }
}

/// All perfect matchings of `g`, in lexicographic order of their sorted edge lists.
pub fn enumerate_perfect_matchings(g: &Graph, budget: Budget) -> Result<Vec<PerfectMatching>> {
    let mut out = Vec::new();
    for_each_perfect_matching(g, budget, |m| {
        out.push(PerfectMatching::from_mates(m));
        true
    })?;
    Ok(out)
}

/// Number of perfect matchings by plain backtracking.
pub fn count_perfect_matchings_bruteforce(g: &Graph, budget: Budget) -> Result<u64> {
    let mut count = 0u64;
    for_each_perfect_matching(g, budget, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// Some perfect matching of `g`, or `None` if there is none.
pub fn find_perfect_matching(g: &Graph, budget: Budget) -> Result<Option<PerfectMatching>> {
    if g.n() % 2 == 1 || g.components().iter().any(|c| c.len() % 2 == 1) {
        return Ok(None);
    }
    let mut found = None;
    for_each_perfect_matching(g, budget, |m| {
        found = Some(PerfectMatching::from_mates(m));
        false
    })?;
    Ok(found)
}

/// Calls `visit` with the partner array of each perfect matching; returning `false` stops.
pub(crate) fn for_each_perfect_matching(
    g: &Graph,
    budget: Budget,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    if g.n() % 2 == 1 {
        return Ok(());
    }
    let mut meter = budget.meter();
    let mut mate = vec![usize::MAX; g.n()];
    backtrack(g, &mut mate, 0, &mut meter, &mut visit)?;
    Ok(())
}

fn backtrack(
    g: &Graph,
    mate: &mut [usize],
    from: usize,
    meter: &mut Meter,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> Result<bool> {
    meter.tick()?;
    let Some(v) = (from..g.n()).find(|&v| mate[v] == usize::MAX) else {
        return Ok(visit(mate));
    };
    for &u in g.neighbors(v) {
        if mate[u] != usize::MAX {
            continue;
        }
        mate[v] = u;
        mate[u] = v;
        let go_on = backtrack(g, mate, v + 1, meter, visit)?;
        mate[v] = usize::MAX;
        mate[u] = usize::MAX;
        if !go_on {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cycles of `M ⊕ M'`, each alternating between the two matchings.
pub fn alternating_cycles(m: &PerfectMatching, other: &PerfectMatching) -> Result<Vec<CycleSeq>> {
    if m.edges().len() != other.edges().len() {
        return Err(Error::InvalidArgument("matchings cover different vertex counts".into()));
    }
    let a = m.mates();
    let b = other.mates();
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for s in 0..a.len() {
        if seen[s] || a[s] == b[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut v = s;
        let mut use_a = true;
        while !seen[v] {
            seen[v] = true;
            cyc.push(v);
            v = if use_a { a[v] } else { b[v] };
            use_a = !use_a;
        }
        out.push(CycleSeq::new(cyc));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_has_three() {
        let pms = enumerate_perfect_matchings(&Graph::complete(4), Budget::DEFAULT).unwrap();
        assert_eq!(pms.len(), 3);
        assert!(pms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn c6_has_two_and_one_alternating_cycle() {
        let g = Graph::cycle(6);
        let pms = enumerate_perfect_matchings(&g, Budget::DEFAULT).unwrap();
        assert_eq!(pms.len(), 2);
        let cycles = alternating_cycles(&pms[0], &pms[1]).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn budget_is_enforced() {
        let r = enumerate_perfect_matchings(&Graph::complete(12), Budget(50));
        assert!(matches!(r, Err(Error::BudgetExceeded { limit: 50 })));
    }

    #[test]
    fn rejects_non_perfect() {
        let g = Graph::path(4);
        assert!(PerfectMatching::new(&g, &[(0, 1)]).is_err());
        assert!(PerfectMatching::new(&g, &[(0, 1), (1, 2)]).is_err());
        assert!(PerfectMatching::new(&g, &[(0, 2), (1, 3)]).is_err());
        assert!(PerfectMatching::new(&g, &[(1, 0), (3, 2)]).is_ok());
    }

    #[test]
    fn odd_component_has_none() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(find_perfect_matching(&g, Budget::DEFAULT).unwrap().is_none());
        assert!(find_perfect_matching(&Graph::cycle(8), Budget::DEFAULT).unwrap().is_some());
    }
}
