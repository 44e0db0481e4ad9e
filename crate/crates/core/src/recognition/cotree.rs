use crate::graph::Graph;
use crate::recognition::{ClassVerdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CotreeNode {
    Leaf(usize),
    /// Disjoint union of the two child subtrees.
    Union(usize, usize),
    /// Join: union plus every edge between the two sides.
    Join(usize, usize),
}

/// Binary cotree; node ids index `nodes`, children precede parents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cotree {
    nodes: Vec<CotreeNode>,
    root: Option<usize>,
    n: usize,
}

impl Cotree {
    pub fn nodes(&self) -> &[CotreeNode] {
        &self.nodes
    }

    /// `None` for the empty graph.
    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Leaves below `id`.
    pub fn leaves(&self, id: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            match self.nodes[x] {
                CotreeNode::Leaf(v) => out.push(v),
                CotreeNode::Union(a, b) | CotreeNode::Join(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The graph this cotree denotes: `u ~ v` iff their lowest common ancestor is a join.
    pub fn to_graph(&self) -> Graph {
        let mut g_edges = Vec::new();
        for node in &self.nodes {
            if let CotreeNode::Join(a, b) = *node {
                for u in self.leaves(a) {
                    for v in self.leaves(b) {
                        g_edges.push((u, v));
                    }
                }
            }
        }
        Graph::new(self.n, &g_edges).expect("cotree leaves are distinct")
    }
}

/// Induced path `a - b - c - d` certifying that a graph is not a cograph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InducedP4(pub [usize; 4]);

pub fn build_cotree(g: &Graph) -> Result<Cotree, InducedP4> {
    let mut tree = Cotree { nodes: Vec::new(), root: None, n: g.n() };
    if g.n() > 0 {
        let all: Vec<usize> = (0..g.n()).collect();
        match decompose(g, &all, &mut tree.nodes) {
            Some(r) => tree.root = Some(r),
            None => return Err(find_p4(g).expect("prime module contains an induced P4")),
        }
    }
    Ok(tree)
}

fn components_within(g: &Graph, vs: &[usize], complement: bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; vs.len()];
    let mut out = Vec::new();
    for s in 0..vs.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            i += 1;
            for b in 0..vs.len() {
                if !seen[b] && g.has_edge(vs[a], vs[b]) != complement {
                    seen[b] = true;
                    comp.push(b);
                }
            }
        }
        let mut c: Vec<usize> = comp.into_iter().map(|i| vs[i]).collect();
        c.sort_unstable();
        out.push(c);
    }
    out
}

fn decompose(g: &Graph, vs: &[usize], nodes: &mut Vec<CotreeNode>) -> Option<usize> {
    if vs.len() == 1 {
        nodes.push(CotreeNode::Leaf(vs[0]));
        return Some(nodes.len() - 1);
    }
    for complement in [false, true] {
        let comps = components_within(g, vs, complement);
        if comps.len() > 1 {
            let first = &comps[0];
            let rest: Vec<usize> = vs.iter().copied().filter(|v| first.binary_search(v).is_err()).collect();
            let a = decompose(g, first, nodes)?;
            let b = decompose(g, &rest, nodes)?;
            nodes.push(if complement { CotreeNode::Join(a, b) } else { CotreeNode::Union(a, b) });
            return Some(nodes.len() - 1);
        }
    }
    None
}

/// Cograph membership; non-members carry an induced P4.
pub fn is_cograph(g: &Graph) -> ClassVerdict {
    match build_cotree(g) {
        Ok(_) => ClassVerdict::member(),
        Err(InducedP4(vs)) => ClassVerdict::non_member(Witness::Induced { pattern: "P4", vertices: vs.to_vec() }),
    }
}

/// First induced P4 in lexicographic order of vertex sets, as a path.
pub fn find_p4(g: &Graph) -> Option<InducedP4> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let s = [a, b, c, d];
                    let deg = |x: usize| s.iter().filter(|&&y| g.has_edge(x, y)).count();
                    let edges = s.iter().map(|&x| deg(x)).sum::<usize>() / 2;
                    let mut ends: Vec<usize> = s.iter().copied().filter(|&x| deg(x) == 1).collect();
                    if edges != 3 || ends.len() != 2 {
                        continue;
                    }
                    ends.sort_unstable();
                    let start = ends[0];
                    let mut path = vec![start];
                    while path.len() < 4 {
                        let last = *path.last().unwrap();
                        let next = s.iter().copied().find(|&y| g.has_edge(last, y) && !path.contains(&y))?;
                        path.push(next);
                    }
                    return Some(InducedP4([path[0], path[1], path[2], path[3]]));
                }
            }
        }
    }
    None
}
