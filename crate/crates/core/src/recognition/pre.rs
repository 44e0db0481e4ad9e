use crate::error::Result;
use crate::gadgets::{fixture, PRE_P5_NAMES};
use crate::graph::{Budget, Graph};
use crate::recognition::cycles::find_hole;
use crate::recognition::{ClassVerdict, Witness};

const MAX_PATTERN: usize = 8;

/// Pattern graph on at most eight vertices as adjacency bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Small {
    k: usize,
    rows: [u8; MAX_PATTERN],
}

impl Small {
    fn from_graph(g: &Graph) -> Self {
        assert!(g.n() <= MAX_PATTERN, "patterns are limited to {MAX_PATTERN} vertices");
        let mut rows = [0u8; MAX_PATTERN];
        for (u, v) in g.edges() {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Small { k: g.n(), rows }
    }

    fn edge_count(&self) -> u32 {
        self.rows[..self.k].iter().map(|r| r.count_ones()).sum::<u32>() / 2
    }

    fn degree_profile(&self) -> [u8; MAX_PATTERN + 1] {
        let mut hist = [0u8; MAX_PATTERN + 1];
        for r in &self.rows[..self.k] {
            hist[r.count_ones() as usize] += 1;
        }
        hist
    }
}

/// Brute-force isomorphism with degree pruning.
fn isomorphic(a: &Small, b: &Small) -> bool {
    if a.k != b.k || a.edge_count() != b.edge_count() || a.degree_profile() != b.degree_profile() {
        return false;
    }
    let mut map = [usize::MAX; MAX_PATTERN];
    extend_iso(a, b, 0, 0, &mut map)
}

fn extend_iso(a: &Small, b: &Small, i: usize, used: u8, map: &mut [usize; MAX_PATTERN]) -> bool {
    if i == a.k {
        return true;
    }
    let deg = a.rows[i].count_ones();
    for t in 0..b.k {
        if used >> t & 1 == 1 || b.rows[t].count_ones() != deg {
            continue;
        }
        let consistent = (0..i).all(|p| (a.rows[i] >> p & 1) == (b.rows[t] >> map[p] & 1));
        if consistent {
            map[i] = t;
            if extend_iso(a, b, i + 1, used | 1 << t, map) {
                return true;
            }
        }
    }
    false
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() <= MAX_PATTERN && b.n() <= MAX_PATTERN && isomorphic(&Small::from_graph(a), &Small::from_graph(b))
}

/// Vertex set of `G` with a bipartition whose cut graph is isomorphic to the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreMatch {
    pub vertices: Vec<usize>,
    /// Members of `vertices` placed on the right side.
    pub right: Vec<usize>,
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until it returns `true`.
fn find_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    if k > n {
        return None;
    }
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        if visit(&s) {
            return Some(s);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if s[i] < n - k + i {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        s[i] += 1;
        for j in i + 1..k {
            s[j] = s[j - 1] + 1;
        }
    }
}

fn small_induced(g: &Graph, s: &[usize]) -> Small {
    let mut rows = [0u8; MAX_PATTERN];
    for (i, &u) in s.iter().enumerate() {
        for (j, &v) in s.iter().enumerate() {
            if g.has_edge(u, v) {
                rows[i] |= 1 << j;
            }
        }
    }
    Small { k: s.len(), rows }
}

/// First subset (lexicographic) that is pre-`h`: some bipartition of it has cut graph isomorphic to `h`.
pub fn find_induced_pre(h: &Graph, g: &Graph) -> Option<PreMatch> {
    let pat = Small::from_graph(h);
    let k = pat.k;
    if k == 0 {
        return Some(PreMatch { vertices: vec![], right: vec![] });
    }
    let target_edges = pat.edge_count();
    let mut right_mask = 0u8;
    let found = find_subset(g.n(), k, |s| {
        let sub = small_induced(g, s);
        if sub.edge_count() < target_edges {
            return false;
        }
        for mask in 0u8..(1u16 << (k - 1)) as u8 {
            let side = mask << 1;
            let mut cut = sub;
            for i in 0..k {
                let flip = if side >> i & 1 == 1 { !side } else { side };
                cut.rows[i] &= flip;
            }
            if isomorphic(&cut, &pat) {
                right_mask = side;
                return true;
            }
        }
        false
    })?;
    let right = (0..k).filter(|&i| right_mask >> i & 1 == 1).map(|i| found[i]).collect();
    Some(PreMatch { vertices: found, right })
}

/// First subset (lexicographic) inducing a graph isomorphic to `h`.
pub fn find_induced(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    let pat = Small::from_graph(h);
    find_subset(g.n(), pat.k, |s| isomorphic(&small_induced(g, s), &pat))
}

fn pattern(name: &'static str) -> Graph {
    fixture(name).expect("built-in pattern")
}

const FLAWS: [&str; 3] = ["tripod", "armchair", "stirrer"];

/// No pretripod, prearmchair or prestirrer.
pub fn is_flawless(g: &Graph) -> ClassVerdict {
    for name in FLAWS {
        if let Some(m) = find_induced_pre(&pattern(name), g) {
            return ClassVerdict::non_member(Witness::Pre { pattern: name, vertices: m.vertices, right: m.right });
        }
    }
    ClassVerdict::member()
}

pub fn is_quasimonotone(g: &Graph, budget: Budget) -> Result<ClassVerdict> {
    let flaw = is_flawless(g);
    if !flaw.member {
        return Ok(flaw);
    }
    crate::recognition::is_odd_chordal(g, budget)
}

/// Bipartite, no hole of length six or more, and no induced tripod, armchair or stirrer.
pub fn is_monotone(g: &Graph, budget: Budget) -> Result<ClassVerdict> {
    if let Some(c) = g.odd_cycle() {
        return Ok(ClassVerdict::non_member(Witness::Cycle(c)));
    }
    if let Some(c) = find_hole(g, 6, budget)? {
        return Ok(ClassVerdict::non_member(Witness::Cycle(c)));
    }
    for name in FLAWS {
        if let Some(vs) = find_induced(&pattern(name), g) {
            return Ok(ClassVerdict::non_member(Witness::Induced { pattern: name, vertices: vs }));
        }
    }
    Ok(ClassVerdict::member())
}

/// No induced triangle, C5 or P5.
pub fn is_chains(g: &Graph) -> ClassVerdict {
    for (name, h) in [("triangle", Graph::complete(3)), ("C5", Graph::cycle(5)), ("P5", Graph::path(5))] {
        if let Some(vs) = find_induced(&h, g) {
            return ClassVerdict::non_member(Witness::Induced { pattern: name, vertices: vs });
        }
    }
    ClassVerdict::member()
}

/// No pre-P5.
pub fn is_qua_chains(g: &Graph) -> ClassVerdict {
    match find_induced_pre(&Graph::path(5), g) {
        Some(m) => ClassVerdict::non_member(Witness::Pre { pattern: "P5", vertices: m.vertices, right: m.right }),
        None => ClassVerdict::member(),
    }
}

/// Same question as [`is_qua_chains`], answered by scanning for the ten pre-P5 graphs directly.
pub fn find_pre_p5_fixture(g: &Graph) -> Option<(&'static str, Vec<usize>)> {
    let pats: Vec<(&'static str, Small)> = PRE_P5_NAMES.iter().map(|&n| (n, Small::from_graph(&pattern(n)))).collect();
    let mut hit = "";
    let vs = find_subset(g.n(), 5, |s| {
        let sub = small_induced(g, s);
        match pats.iter().find(|(_, p)| isomorphic(&sub, p)) {
            Some((name, _)) => {
                hit = name;
                true
            }
            None => false,
        }
    })?;
    Some((hit, vs))
}
