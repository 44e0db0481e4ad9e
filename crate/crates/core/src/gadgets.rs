//! Deterministic graph families and named fixtures.

use crate::chain::ChainRng;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::PerfectMatching;

fn graph_1based(n: usize, edges: &[(usize, usize)]) -> Graph {
    let e: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Graph::new(n, &e).expect("fixture edges are well formed")
}

/// Cycle `0..r` plus the long diagonals `{i, i + r/2}`.
pub fn mobius_ladder(r: usize) -> Result<Graph> {
    if r < 4 || r % 2 == 1 {
        return Err(Error::InvalidArgument(format!("mobius ladder needs even r >= 4, got {r}")));
    }
    Ok(Graph::from_fn(r, |u, v| v == u + 1 || (u == 0 && v == r - 1) || v == u + r / 2))
}

/// Hamilton cycle `1..4k` with zig-zag even chords between its two halves,
/// returned with the matchings `X = {2i-1, 2i}` and `Y = {2i, 2i+1} ∪ {4k, 1}` (0-based in the result).
pub fn cross_ladder(k: usize) -> Result<(Graph, PerfectMatching, PerfectMatching)> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("cross ladder needs k >= 2, got {k}")));
    }
    let n = 4 * k;
    let mut edges: Vec<(usize, usize)> = (1..=n).map(|v| (v, v % n + 1)).collect();
    let top = |p: usize| p;
    let bottom = |p: usize| n + 1 - p;
    for p in 1..2 * k {
        edges.push((top(p), bottom(p + 1)));
        edges.push((bottom(p), top(p + 1)));
    }
    let g = graph_1based(n, &edges);
    let x: Vec<_> = (0..2 * k).map(|i| (2 * i, 2 * i + 1)).collect();
    let y: Vec<_> = (0..2 * k).map(|i| (2 * i + 1, (2 * i + 2) % n)).collect();
    let x = PerfectMatching::new(&g, &x)?;
    let y = PerfectMatching::new(&g, &y)?;
    Ok((g, x, y))
}

/// Index helpers for [`slow_gk`]: vertex ids of `u_i, w_i, x_1, x_2, y_i, z_i` (1-based `i`).
#[derive(Debug, Clone, Copy)]
pub struct GkLayout {
    pub k: usize,
}

impl GkLayout {
    pub fn u(&self, i: usize) -> usize {
        i - 1
    }
    pub fn w(&self, i: usize) -> usize {
        self.k + i - 1
    }
    pub fn x1(&self) -> usize {
        2 * self.k
    }
    pub fn x2(&self) -> usize {
        2 * self.k + 1
    }
    pub fn y(&self, i: usize) -> usize {
        2 * self.k + 1 + i
    }
    pub fn z(&self, i: usize) -> usize {
        3 * self.k + 1 + i
    }
    pub fn n(&self) -> usize {
        4 * self.k + 2
    }
}

/// The slow-mixing graph `G_k` on `4k + 2` vertices.
pub fn slow_gk(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidArgument("G_k needs k >= 1".into()));
    }
    let l = GkLayout { k };
    let mut edges = Vec::new();
    for i in 1..=k {
        for j in i..=k {
            edges.push((l.u(i), l.w(j)));
            edges.push((l.z(i), l.y(j)));
            if i < j {
                edges.push((l.w(i), l.w(j)));
                edges.push((l.y(i), l.y(j)));
            }
        }
    }
    edges.push((l.x1(), l.x2()));
    for x in [l.x1(), l.x2()] {
        for i in 1..=k {
            for v in [l.u(i), l.w(i), l.y(i), l.z(i)] {
                edges.push((x, v));
            }
        }
    }
    Graph::new(l.n(), &edges)
}

/// The matching `{u_i w_i} ∪ {y_i z_i} ∪ {x_1 x_2}` of `G_k`.
pub fn gk_base_matching(k: usize) -> Result<PerfectMatching> {
    let g = slow_gk(k)?;
    let l = GkLayout { k };
    let mut edges = vec![(l.x1(), l.x2())];
    for i in 1..=k {
        edges.push((l.u(i), l.w(i)));
        edges.push((l.y(i), l.z(i)));
    }
    PerfectMatching::new(&g, &edges)
}

/// Vertex id of `u_{ij}` in the spider's web (rings `i = 1..=k`, positions `j = 1..=6`).
pub fn web_vertex(i: usize, j: usize) -> usize {
    (i - 1) * 6 + (j - 1)
}

fn web_edges(k: usize, spoke: bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 1..=k {
        for j in 1..=6 {
            edges.push((web_vertex(i, j), web_vertex(i, j % 6 + 1)));
            if i > 1 {
                edges.push((web_vertex(i - 1, j), web_vertex(i, j)));
            }
        }
    }
    if spoke {
        edges.push((web_vertex(1, 1), web_vertex(1, 4)));
    }
    edges
}

/// Spider's web `W_k`: `k` concentric hexagons joined radially, with the spoke `u11 u14`.
pub fn spiders_web(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidArgument("spider's web needs k >= 1".into()));
    }
    Graph::new(6 * k, &web_edges(k, true))
}

/// The two all-ring matchings `M_1, M_2` of `W_k`.
pub fn web_special_matchings(k: usize) -> Result<(PerfectMatching, PerfectMatching)> {
    let g = spiders_web(k)?;
    let special = |p: usize| {
        let mut edges = Vec::new();
        for i in 1..=k {
            for j in 1..=6 {
                if (i + j) % 2 == (p + 1) % 2 {
                    edges.push((web_vertex(i, j), web_vertex(i, j % 6 + 1)));
                }
            }
        }
        PerfectMatching::new(&g, &edges)
    };
    Ok((special(1)?, special(2)?))
}

/// Two concentric hexagons joined by six radial edges.
pub fn web_annulus() -> Graph {
    Graph::new(12, &web_edges(2, false)).expect("annulus edges are well formed")
}

/// The all-radial matching `{u_{1j} u_{2j}}` of the annulus.
pub fn annulus_radial_matching() -> PerfectMatching {
    let edges: Vec<_> = (1..=6).map(|j| (web_vertex(1, j), web_vertex(2, j))).collect();
    PerfectMatching::new(&web_annulus(), &edges).expect("radial edges form a perfect matching")
}

/// Rungs `a_i b_i`, rails `a_i a_{i+1}` and `b_i b_{i+1}`, and apexes on both ends (`2k + 2` vertices).
pub fn permutation_ladder(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("permutation ladder needs k >= 2, got {k}")));
    }
    let a = |i: usize| 2 * i - 1;
    let b = |i: usize| 2 * i;
    let (s, t) = (2 * k + 1, 2 * k + 2);
    let mut edges = vec![(s, a(1)), (s, b(1)), (t, a(k)), (t, b(k))];
    for i in 1..=k {
        edges.push((a(i), b(i)));
        if i < k {
            edges.push((a(i), a(i + 1)));
            edges.push((b(i), b(i + 1)));
        }
    }
    Ok(graph_1based(2 * k + 2, &edges))
}

/// The grid `P_len × P_2`.
pub fn ladder(len: usize) -> Graph {
    Graph::from_fn(2 * len, |u, v| (v == u + 2) || (u % 2 == 0 && v == u + 1))
}

/// Unit interval graph on `n` random left endpoints drawn uniformly from `[0, n/2]`.
pub fn random_unit_interval(n: usize, seed: u64) -> Graph {
    let mut rng = ChainRng::from_seed(seed);
    let xs: Vec<f64> = (0..n).map(|_| rng.unit_f64() * n as f64 / 2.0).collect();
    Graph::from_fn(n, |u, v| (xs[u] - xs[v]).abs() <= 1.0)
}

/// Names of the ten 5-vertex pre-P5 fixtures.
pub const PRE_P5_NAMES: [&str; 10] =
    ["p5", "c5", "bull", "cobanner", "dart", "butterfly", "house", "3fan", "sailboat", "w4"];

pub const FIXTURE_NAMES: [&str; 24] = [
    "fig7_cograph",
    "fig8_permutation",
    "fig4a",
    "fig4b",
    "fig4c",
    "fig4d",
    "fig13b",
    "tripod",
    "armchair",
    "stirrer",
    "claw",
    "net",
    "3sun",
    "ml8",
    "p5",
    "c5",
    "bull",
    "cobanner",
    "dart",
    "butterfly",
    "house",
    "3fan",
    "sailboat",
    "w4",
];

fn graph_0based(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("fixture edges are well formed")
}

fn fig13b() -> Graph {
    let m = |i: usize| (i - 1) / 2;
    let t = |j: usize| 7 + j / 2 - 1;
    let b = |j: usize| 13 + j / 2 - 1;
    let mut edges = Vec::new();
    for j in (2..=12).step_by(2) {
        for side in [t(j), b(j)] {
            edges.push((side, m(j - 1)));
            edges.push((side, m(j + 1)));
        }
    }
    for j in [2, 8, 10] {
        edges.push((t(j), b(j)));
    }
    edges.extend([(m(3), m(5)), (m(5), m(7)), (m(11), m(13))]);
    graph_0based(19, &edges)
}

/// Named graph from the built-in list [`FIXTURE_NAMES`].
pub fn fixture(name: &str) -> Result<Graph> {
    let g = match name {
        "fig7_cograph" => {
            graph_1based(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (3, 1), (5, 3), (6, 2), (4, 6)])
        }
        "fig8_permutation" => graph_1based(6, &[(1, 2), (2, 4), (4, 3), (3, 5), (5, 6), (6, 1), (1, 4), (3, 6)]),
        "fig4a" => graph_1based(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 5), (1, 4)]),
        "fig4b" => graph_1based(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 5)]),
        "fig4c" => graph_1based(8, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (3, 6), (6, 7), (7, 8), (8, 3)]),
        "fig4d" | "3sun" => graph_1based(6, &[(1, 6), (6, 5), (5, 4), (4, 3), (3, 2), (2, 1), (2, 6), (6, 4), (4, 2)]),
        "fig13b" => fig13b(),
        "tripod" => graph_0based(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]),
        "armchair" => graph_0based(7, &[(6, 5), (5, 4), (4, 2), (2, 3), (3, 1), (0, 2), (3, 5)]),
        "stirrer" => graph_0based(7, &[(0, 1), (1, 2), (2, 5), (5, 4), (4, 3), (3, 0), (1, 4), (4, 6)]),
        "claw" => graph_0based(4, &[(0, 1), (0, 2), (0, 3)]),
        "net" => graph_0based(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]),
        "ml8" => mobius_ladder(8)?,
        "p5" => graph_0based(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
        "c5" => graph_0based(5, &[(2, 0), (0, 1), (3, 4), (4, 2), (1, 3)]),
        "bull" => graph_0based(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 2)]),
        "cobanner" => graph_0based(5, &[(2, 0), (0, 1), (1, 2), (2, 3), (3, 4)]),
        "dart" => graph_0based(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 2), (0, 4)]),
        "butterfly" => graph_0based(5, &[(2, 0), (0, 1), (1, 2), (2, 3), (3, 4), (4, 2)]),
        "house" => graph_0based(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 2)]),
        "3fan" => graph_0based(5, &[(2, 0), (0, 1), (1, 2), (2, 3), (3, 4), (4, 2), (1, 3)]),
        "sailboat" => graph_0based(5, &[(0, 1), (1, 2), (2, 4), (4, 3), (0, 4), (0, 3), (3, 2)]),
        "w4" => graph_0based(5, &[(2, 0), (0, 1), (1, 2), (2, 3), (3, 4), (4, 2), (1, 3), (0, 4)]),
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Ok(g)
}

/// A family name plus its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetSpec {
    Mobius { r: usize },
    CrossLadder { k: usize },
    Gk { k: usize },
    Web { k: usize },
    Annulus,
    UnitInterval { n: usize, seed: u64 },
    PermutationLadder { k: usize },
    Ladder { len: usize },
    Fixture(String),
}

impl GadgetSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GadgetSpec::Mobius { r } => mobius_ladder(*r),
            GadgetSpec::CrossLadder { k } => cross_ladder(*k).map(|(g, _, _)| g),
            GadgetSpec::Gk { k } => slow_gk(*k),
            GadgetSpec::Web { k } => spiders_web(*k),
            GadgetSpec::Annulus => Ok(web_annulus()),
            GadgetSpec::UnitInterval { n, seed } => {
                if *n < 1 {
                    return Err(Error::InvalidArgument("unit interval graph needs n >= 1".into()));
                }
                Ok(random_unit_interval(*n, *seed))
            }
            GadgetSpec::PermutationLadder { k } => permutation_ladder(*k),
            GadgetSpec::Ladder { len } => Ok(ladder(*len)),
            GadgetSpec::Fixture(name) => fixture(name),
        }
    }
}
