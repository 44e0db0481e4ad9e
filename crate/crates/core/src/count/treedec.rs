use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Tree of bags over node ids `0..bags.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; zero when every bag is empty.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    fn normalised(&self) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges: self.edges.clone() }
    }

    fn tree_adjacency(&self) -> Option<Vec<Vec<usize>>> {
        let k = self.bags.len();
        if k == 0 || self.edges.len() != k - 1 {
            return None;
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &self.edges {
            if a >= k || b >= k || a == b {
                return None;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s).then_some(adj)
    }
}

/// First failed condition of a tree decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    NotATree,
    VertexOutOfRange { bag: usize, vertex: usize },
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    Disconnected(usize),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NotATree => write!(f, "bags do not form a tree"),
            TdViolation::VertexOutOfRange { bag, vertex } => write!(f, "bag {bag} contains unknown vertex {vertex}"),
            TdViolation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            TdViolation::EdgeUncovered(u, v) => write!(f, "edge {u}-{v} is in no bag"),
            TdViolation::Disconnected(v) => write!(f, "bags containing vertex {v} are not connected"),
        }
    }
}

fn check_connected_occurrences(
    adj: &[Vec<usize>],
    bags: &[Vec<usize>],
    n: usize,
) -> std::result::Result<(), TdViolation> {
    for v in 0..n {
        let holds: Vec<bool> = bags.iter().map(|b| b.binary_search(&v).is_ok()).collect();
        let Some(start) = holds.iter().position(|&h| h) else { continue };
        let mut seen = vec![false; bags.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if holds[y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if (0..bags.len()).any(|i| holds[i] && !seen[i]) {
            return Err(TdViolation::Disconnected(v));
        }
    }
    Ok(())
}

/// Checks vertex cover, edge cover and connectivity of each vertex's bags, reporting the first failure.
pub fn validate_td(g: &Graph, d: &TreeDecomposition) -> std::result::Result<(), TdViolation> {
    let d = d.normalised();
    let adj = d.tree_adjacency().ok_or(TdViolation::NotATree)?;
    for (i, b) in d.bags.iter().enumerate() {
        if let Some(&v) = b.iter().find(|&&v| v >= g.n()) {
            return Err(TdViolation::VertexOutOfRange { bag: i, vertex: v });
        }
    }
    for v in 0..g.n() {
        if !d.bags.iter().any(|b| b.binary_search(&v).is_ok()) {
            return Err(TdViolation::VertexUncovered(v));
        }
    }
    for (u, v) in g.edges() {
        if !d.bags.iter().any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok()) {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
    }
    check_connected_occurrences(&adj, &d.bags, g.n())
}

/// Tree decomposition from the min-fill elimination ordering, ties broken by least vertex.
pub fn minfill_td(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { bags: vec![Vec::new()], edges: Vec::new() };
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut step_of = vec![usize::MAX; n];
    let mut bags = Vec::with_capacity(n);
    let mut later: Vec<Vec<usize>> = Vec::with_capacity(n);
    for step in 0..n {
        let fill = |v: usize| {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut missing = 0;
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if !adj[a].contains(&b) {
                        missing += 1;
                    }
                }
            }
            missing
        };
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (fill(v), v)).unwrap();
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            adj[a].remove(&v);
        }
        alive[v] = false;
        step_of[v] = step;
        let mut bag = nb.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        later.push(nb);
    }
    let mut edges = Vec::with_capacity(n - 1);
    for (i, nb) in later.iter().enumerate() {
        if let Some(p) = nb.iter().map(|&u| step_of[u]).min() {
            edges.push((i, p));
        } else if i + 1 < n {
            edges.push((i, i + 1));
        }
    }
    TreeDecomposition { bags, edges }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Start,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted bag.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted decomposition built from start, introduce, forget and join nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// The plain decomposition on the same nodes.
    pub fn underlying(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let edges = self.nodes.iter().enumerate().flat_map(|(i, x)| x.children.iter().map(move |&c| (i, c))).collect();
        TreeDecomposition { bags, edges }
    }

    /// Checks node kinds against bags and children.
    pub fn check_shape(&self) -> Result<()> {
        let bad = |i: usize, why: &str| Err(Error::InvalidDecomposition(format!("nice node {i}: {why}")));
        if self.root >= self.nodes.len() || !self.nodes[self.root].bag.is_empty() {
            return bad(self.root, "root bag must be empty");
        }
        for (i, x) in self.nodes.iter().enumerate() {
            if x.bag.windows(2).any(|w| w[0] >= w[1]) {
                return bad(i, "bag not sorted");
            }
            let child_bag = |k: usize| &self.nodes[x.children[k]].bag;
            if x.children.iter().any(|&c| c >= self.nodes.len()) {
                return bad(i, "child out of range");
            }
            let ok = match x.kind {
                NiceKind::Start => x.children.is_empty() && x.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    x.children.len() == 1 && {
                        let mut b = child_bag(0).clone();
                        !b.contains(&v) && {
                            b.push(v);
                            b.sort_unstable();
                            b == x.bag
                        }
                    }
                }
                NiceKind::Forget(v) => {
                    x.children.len() == 1 && {
                        let mut b = x.bag.clone();
                        !b.contains(&v) && {
                            b.push(v);
                            b.sort_unstable();
                            &b == child_bag(0)
                        }
                    }
                }
                NiceKind::Join => x.children.len() == 2 && child_bag(0) == &x.bag && child_bag(1) == &x.bag,
            };
            if !ok {
                return bad(i, "kind does not match bags");
            }
        }
        Ok(())
    }
}

/// Converts a valid tree decomposition into a nice one of the same width, rooted at node 0.
pub fn make_nice(d: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    let d = d.normalised();
    let adj = d.tree_adjacency().ok_or_else(|| Error::InvalidDecomposition(TdViolation::NotATree.to_string()))?;
    let n = d.bags.iter().flatten().max().map_or(0, |&m| m + 1);
    check_connected_occurrences(&adj, &d.bags, n).map_err(|v| Error::InvalidDecomposition(v.to_string()))?;

    let mut parent = vec![usize::MAX; d.bags.len()];
    let mut order = vec![0];
    let mut seen = vec![false; d.bags.len()];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }

    let mut nodes: Vec<NiceNode> = Vec::new();
    let push = |nodes: &mut Vec<NiceNode>, kind, bag: Vec<usize>, children: Vec<usize>| {
        nodes.push(NiceNode { kind, bag, children });
        nodes.len() - 1
    };
    let mut top = vec![usize::MAX; d.bags.len()];
    for &b in order.iter().rev() {
        let target = &d.bags[b];
        let kids: Vec<usize> = adj[b].iter().copied().filter(|&c| parent[c] == b).collect();
        let mut chains = Vec::new();
        if kids.is_empty() {
            let mut cur = push(&mut nodes, NiceKind::Start, Vec::new(), Vec::new());
            let mut bag = Vec::new();
            for &v in target {
                bag.push(v);
                cur = push(&mut nodes, NiceKind::Introduce(v), bag.clone(), vec![cur]);
            }
            chains.push(cur);
        }
        for c in kids {
            let mut cur = top[c];
            let mut bag = d.bags[c].clone();
            for &v in &d.bags[c] {
                if target.binary_search(&v).is_err() {
                    bag.retain(|&x| x != v);
                    cur = push(&mut nodes, NiceKind::Forget(v), bag.clone(), vec![cur]);
                }
            }
            for &v in target {
                if bag.binary_search(&v).is_err() {
                    bag.push(v);
                    bag.sort_unstable();
                    cur = push(&mut nodes, NiceKind::Introduce(v), bag.clone(), vec![cur]);
                }
            }
            chains.push(cur);
        }
        let mut acc = chains[0];
        for &c in &chains[1..] {
            acc = push(&mut nodes, NiceKind::Join, target.clone(), vec![acc, c]);
        }
        top[b] = acc;
    }
    let mut cur = top[0];
    let mut bag = d.bags[0].clone();
    for &v in &d.bags[0].clone() {
        bag.retain(|&x| x != v);
        cur = push(&mut nodes, NiceKind::Forget(v), bag.clone(), vec![cur]);
    }
    Ok(NiceTreeDecomposition { nodes, root: cur })
}

fn local_bit(bag: &[usize], v: usize) -> usize {
    1 << bag.binary_search(&v).expect("vertex in bag")
}

/// Perfect matchings by dynamic programming over a nice tree decomposition.
///
/// `p(i, U)` counts matchings of the vertices below node `i` that leave exactly
/// the bag vertices `U` uncovered; the answer is `p(root, ∅)`.
pub fn count_pm_td(g: &Graph, nice: &NiceTreeDecomposition) -> Result<BigUint> {
    nice.check_shape()?;
    validate_td(g, &nice.underlying()).map_err(|v| Error::InvalidDecomposition(v.to_string()))?;
    if nice.width() >= 24 {
        return Err(Error::TooLarge { what: "decomposition width", actual: nice.width(), limit: 23 });
    }

    let mut order = Vec::with_capacity(nice.nodes.len());
    let mut stack = vec![(nice.root, false)];
    while let Some((x, expanded)) = stack.pop() {
        if expanded {
            order.push(x);
        } else {
            stack.push((x, true));
            for &c in &nice.nodes[x].children {
                stack.push((c, false));
            }
        }
    }

    let mut tables: Vec<Option<Vec<BigUint>>> = vec![None; nice.nodes.len()];
    for x in order {
        let node = &nice.nodes[x];
        let bag = &node.bag;
        let size = 1usize << bag.len();
        let mut take = |c: usize| tables[c].take().expect("child table computed");
        let table = match node.kind {
            NiceKind::Start => vec![BigUint::one()],
            NiceKind::Introduce(v) => {
                let child_bag = &nice.nodes[node.children[0]].bag;
                let child = take(node.children[0]);
                let remap: Vec<usize> = child_bag.iter().map(|&u| local_bit(bag, u)).collect();
                let vbit = local_bit(bag, v);
                let mut t = vec![BigUint::zero(); size];
                for (cm, val) in child.into_iter().enumerate() {
                    let pm = remap.iter().enumerate().filter(|&(i, _)| cm >> i & 1 == 1).fold(vbit, |m, (_, &b)| m | b);
                    t[pm] = val;
                }
                t
            }
            NiceKind::Forget(v) => {
                let child_bag = &nice.nodes[node.children[0]].bag;
                let child = take(node.children[0]);
                let remap: Vec<usize> = bag.iter().map(|&u| local_bit(child_bag, u)).collect();
                let vbit = local_bit(child_bag, v);
                let partners: Vec<usize> = (0..bag.len()).filter(|&i| g.has_edge(bag[i], v)).collect();
                let mut t = vec![BigUint::zero(); size];
                for (u, slot) in t.iter_mut().enumerate() {
                    let cm = (0..bag.len()).filter(|&i| u >> i & 1 == 1).fold(0, |m, i| m | remap[i]);
                    let mut acc = child[cm].clone();
                    for &i in &partners {
                        if u >> i & 1 == 0 {
                            acc += &child[cm | remap[i] | vbit];
                        }
                    }
                    *slot = acc;
                }
                t
            }
            NiceKind::Join => {
                let left = take(node.children[0]);
                let right = take(node.children[1]);
                let full = size - 1;
                let mut t = vec![BigUint::zero(); size];
                for (u, slot) in t.iter_mut().enumerate() {
                    let rest = full ^ u;
                    let mut j = rest;
                    loop {
                        let l = &left[u | j];
                        if !l.is_zero() {
                            let r = &right[u | (rest ^ j)];
                            if !r.is_zero() {
                                *slot += l * r;
                            }
                        }
                        if j == 0 {
                            break;
                        }
                        j = (j - 1) & rest;
                    }
                }
                t
            }
        };
        tables[x] = Some(table);
    }
    Ok(tables[nice.root].take().expect("root table")[0].clone())
}

/// Parses a PACE `.td` file; returns the decomposition (0-based) and the declared vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let perr = |msg: String| Error::Parse { line: line_no, msg };
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let nums = |ts: &[&str]| -> Result<Vec<usize>> {
            ts.iter().map(|t| t.parse::<usize>().map_err(|e| perr(format!("{e}: {t:?}")))).collect()
        };
        match toks[0] {
            "s" => {
                if toks.len() != 5 || toks[1] != "td" || header.is_some() {
                    return Err(perr("expected `s td <bags> <width+1> <n>`".into()));
                }
                let v = nums(&toks[2..])?;
                header = Some((v[0], v[1], v[2]));
                bags = vec![None; v[0]];
            }
            "b" => {
                let (nb, _, n) = header.ok_or_else(|| perr("bag before header".into()))?;
                let v = nums(&toks[1..])?;
                let id = *v.first().ok_or_else(|| perr("bag line without id".into()))?;
                if id == 0 || id > nb {
                    return Err(perr(format!("bag id {id} out of range")));
                }
                if v[1..].iter().any(|&x| x == 0 || x > n) {
                    return Err(perr("bag vertex out of range".into()));
                }
                if bags[id - 1].is_some() {
                    return Err(perr(format!("bag {id} given twice")));
                }
                bags[id - 1] = Some(v[1..].iter().map(|&x| x - 1).collect());
            }
            _ => {
                let (nb, _, _) = header.ok_or_else(|| perr("edge before header".into()))?;
                let v = nums(&toks)?;
                if v.len() != 2 || v.iter().any(|&x| x == 0 || x > nb) {
                    return Err(perr("expected tree edge `i j`".into()));
                }
                edges.push((v[0] - 1, v[1] - 1));
            }
        }
    }
    let (_, declared_width, n) = header.ok_or(Error::Parse { line: 0, msg: "missing `s td` header".into() })?;
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(Error::Parse { line: 0, msg: format!("bag {} missing", i + 1) }))
        .collect::<Result<_>>()?;
    let d = TreeDecomposition { bags, edges };
    let actual = d.bags.iter().map(Vec::len).max().unwrap_or(0);
    if actual != declared_width {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares bag size {declared_width}, largest is {actual}"),
        });
    }
    Ok((d, n))
}

/// Writes a decomposition in PACE `.td` form.
pub fn write_td(d: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let max_bag = d.bags.iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "s td {} {} {}", d.bags.len(), max_bag, n).unwrap();
    for (i, b) in d.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in b {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &d.edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4_path_td() -> TreeDecomposition {
        TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2], vec![2, 3]], edges: vec![(0, 1), (1, 2)] }
    }

    #[test]
    fn validation_reports() {
        let g = Graph::path(4);
        assert_eq!(validate_td(&g, &p4_path_td()), Ok(()));
        assert_eq!(p4_path_td().width(), 1);
        let g2 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(validate_td(&g2, &p4_path_td()), Err(TdViolation::EdgeUncovered(0, 3)));
        let broken = TreeDecomposition { bags: vec![vec![0, 1], vec![2, 3], vec![1, 2]], edges: vec![(0, 1), (1, 2)] };
        assert_eq!(validate_td(&g, &broken), Err(TdViolation::Disconnected(1)));
    }

    #[test]
    fn nice_k4_single_bag() {
        let d = TreeDecomposition { bags: vec![vec![0, 1, 2, 3]], edges: vec![] };
        let nice = make_nice(&d).unwrap();
        nice.check_shape().unwrap();
        assert_eq!(nice.nodes.len(), 9);
        assert_eq!(nice.width(), 3);
        assert_eq!(count_pm_td(&Graph::complete(4), &nice).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn p4_counts_one() {
        let nice = make_nice(&p4_path_td()).unwrap();
        assert!(nice.nodes.iter().all(|x| x.kind != NiceKind::Join));
        assert_eq!(count_pm_td(&Graph::path(4), &nice).unwrap(), BigUint::one());
    }

    #[test]
    fn k2_needs_the_unmatched_term() {
        let d = TreeDecomposition { bags: vec![vec![0, 1]], edges: vec![] };
        assert_eq!(count_pm_td(&Graph::complete(2), &make_nice(&d).unwrap()).unwrap(), BigUint::one());
    }

    #[test]
    fn minfill_widths() {
        assert_eq!(minfill_td(&Graph::path(7)).width(), 1);
        assert_eq!(minfill_td(&Graph::cycle(6)).width(), 2);
        assert_eq!(minfill_td(&Graph::complete(5)).width(), 4);
        assert_eq!(minfill_td(&Graph::empty(0)).width(), 0);
    }

    #[test]
    fn pace_round_trip() {
        let d = minfill_td(&Graph::cycle(6));
        let text = write_td(&d, 6);
        let (back, n) = parse_td(&text).unwrap();
        assert_eq!(n, 6);
        assert_eq!(back, d);
        assert!(parse_td("s td 1 2 2\nb 1 1 3\n").is_err());
    }
}
