use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Edge = (usize, usize);

/// Normalises an edge so the smaller endpoint comes first.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Upper bound on the number of search nodes an exponential routine may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    pub(crate) fn meter(self) -> Meter {
        Meter { used: 0, limit: self.0 }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Debug)]
pub(crate) struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n], matrix: vec![false; n * n] }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                let (a, b) = edge(u, v);
                return Err(Error::DuplicateEdge(a, b));
            }
            g.insert(u, v);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Builds a graph from an adjacency predicate over unordered pairs.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if f(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1 && n > 2))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_fn(n, |u, v| v == u + 1)
    }

    fn insert(&mut self, u: usize, v: usize) {
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |i, j| self.has_edge(vertices[i], vertices[j]))
    }

    /// Induced subgraph on the vertices set in `mask` (bit `v` selects vertex `v`).
    pub fn induced_by_mask(&self, mask: u64) -> (Graph, Vec<usize>) {
        let vs: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        (self.induced_subgraph(&vs), vs)
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// A proper 2-colouring (`true` = colour 1) if one exists; each component's least vertex gets `false`.
    pub fn two_colouring(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                for &w in &self.adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    /// An odd cycle from a BFS layering conflict, if the graph is not bipartite.
    pub fn odd_cycle(&self) -> Option<CycleSeq> {
        let mut depth = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if depth[s] != usize::MAX {
                continue;
            }
            depth[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if depth[w] == depth[v] && v < w {
                        let (mut a, mut b) = (v, w);
                        let (mut left, mut right) = (vec![a], vec![b]);
                        while a != b {
                            a = parent[a];
                            b = parent[b];
                            left.push(a);
                            right.push(b);
                        }
                        right.pop();
                        right.reverse();
                        left.extend(right);
                        return Some(CycleSeq::new(left));
                    }
                }
            }
        }
        None
    }

    /// Vertex relabelling: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        g
    }
}

/// Two-sided vertex partition; `side[v] == false` puts `v` in L.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    side: Vec<bool>,
}

impl Bipartition {
    pub fn new(side: Vec<bool>) -> Self {
        Bipartition { side }
    }

    /// Bit `v` of `mask` set means `v` is in R.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Bipartition { side: (0..n).map(|v| mask >> v & 1 == 1).collect() }
    }

    #[inline]
    pub fn in_right(&self, v: usize) -> bool {
        self.side[v]
    }

    pub fn left(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| !self.side[v]).collect()
    }

    pub fn right(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side.is_empty()
    }
}

/// The cut graph of `g`: only edges between L and R survive.
pub fn cut_bigraph(g: &Graph, part: &Bipartition) -> Result<Graph> {
    if part.len() != g.n() {
        return Err(Error::InvalidArgument(format!("bipartition covers {} vertices, graph has {}", part.len(), g.n())));
    }
    Ok(Graph::from_fn(g.n(), |u, v| g.has_edge(u, v) && part.in_right(u) != part.in_right(v)))
}

/// Cycle as a vertex sequence in canonical rotation and direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSeq(Vec<usize>);

impl CycleSeq {
    /// Canonicalises: start at the least vertex, then step towards the smaller neighbour.
    pub fn new(mut vs: Vec<usize>) -> Self {
        if vs.len() < 3 {
            return CycleSeq(vs);
        }
        let k = vs.len();
        let (pos, _) = vs.iter().enumerate().min_by_key(|&(_, v)| *v).unwrap();
        vs.rotate_left(pos);
        if vs[k - 1] < vs[1] {
            vs[1..].reverse();
        }
        CycleSeq(vs)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Vertex at position `i` modulo the length.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.0[i % self.0.len()]
    }

    /// Cycle edges `(v_i, v_{i+1})`, normalised.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.0.len()).map(move |i| edge(self.at(i), self.at(i + 1)))
    }

    pub fn is_cycle_of(&self, g: &Graph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.0.len() >= 3
            && self.0.iter().all(|&v| v < g.n() && seen.insert(v))
            && self.edges().all(|(u, v)| g.has_edge(u, v))
    }
}

/// Parses the 1-based edge-list format: header `n m`, then `m` lines `u v`; `#` or `c` lines are comments.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('c') {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: line_no, msg: format!("{e}: {line:?}") })?;
        if nums.len() != 2 {
            return Err(Error::Parse { line: line_no, msg: format!("expected two integers, got {line:?}") });
        }
        match header {
            None => header = Some((nums[0], nums[1])),
            Some((n, _)) => {
                for &x in &nums {
                    if x == 0 || x > n {
                        return Err(Error::VertexOutOfRange { vertex: x, n });
                    }
                }
                edges.push((nums[0] - 1, nums[1] - 1));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse { line: 0, msg: "missing `n m` header".into() })?;
    if edges.len() != m {
        return Err(Error::Parse { line: 0, msg: format!("header declares {m} edges, found {}", edges.len()) });
    }
    Graph::new(n, &edges).map_err(|e| match e {
        Error::SelfLoop(v) => Error::SelfLoop(v + 1),
        Error::DuplicateEdge(u, v) => Error::DuplicateEdge(u + 1, v + 1),
        other => other,
    })
}

/// Writes the 1-based edge-list format with edges in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.num_edges()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}
