use crate::count::chain::{ChainModel, CochainModel};
use crate::graph::Graph;
use crate::recognition::{find_induced, ClassVerdict, Witness};

const MAX_COMPONENTS: usize = 20;

/// Splits `g` into cliques X, Y with nested cross edges, if possible.
///
/// Works on the complement, which must be bipartite; vertices isolated in the
/// complement go to X, and the sides of the other components are tried in every orientation.
pub fn recognize_cochain(g: &Graph) -> Option<CochainModel> {
    let comp = g.complement();
    let colouring = comp.two_colouring()?;
    let mut isolated = Vec::new();
    let mut parts: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for c in comp.components() {
        if c.len() == 1 {
            isolated.push(c[0]);
            continue;
        }
        let (a, b): (Vec<usize>, Vec<usize>) = c.iter().copied().partition(|&v| !colouring[v]);
        parts.push((a, b));
    }
    if parts.len() > MAX_COMPONENTS {
        return None;
    }
    for orient in 0u32..1 << parts.len() {
        let mut x = isolated.clone();
        let mut y = Vec::new();
        for (k, (a, b)) in parts.iter().enumerate() {
            let (to_x, to_y) = if orient >> k & 1 == 0 { (a, b) } else { (b, a) };
            x.extend_from_slice(to_x);
            y.extend_from_slice(to_y);
        }
        x.sort_unstable();
        y.sort_unstable();
        if let Some(cross) = ChainModel::from_parts(g, &x, &y) {
            return Some(CochainModel { x, y, cross });
        }
    }
    None
}

/// Cochain membership; non-members carry an induced 3K1, C4 or C5.
pub fn is_cochain(g: &Graph) -> ClassVerdict {
    if recognize_cochain(g).is_some() {
        return ClassVerdict::member();
    }
    for (name, h) in [("3K1", Graph::empty(3)), ("C4", Graph::cycle(4)), ("C5", Graph::cycle(5))] {
        if let Some(vs) = find_induced(&h, g) {
            return ClassVerdict::non_member(Witness::Induced { pattern: name, vertices: vs });
        }
    }
    unreachable!("graphs free of 3K1, C4 and C5 are cochain graphs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_has_empty_y() {
        let m = recognize_cochain(&Graph::complete(4)).unwrap();
        assert_eq!(m.x, vec![0, 1, 2, 3]);
        assert!(m.y.is_empty());
    }

    #[test]
    fn c4_is_not_cochain() {
        assert!(recognize_cochain(&Graph::cycle(4)).is_none());
    }

    #[test]
    fn parts_are_cliques() {
        // Complement of the path 0-1-2-3 (a chain graph) is again P4 = 1-3-0-2.
        let g = Graph::path(4).complement();
        let m = recognize_cochain(&g).unwrap();
        for part in [&m.x, &m.y] {
            for &u in part.iter() {
                for &v in part.iter() {
                    assert!(u == v || g.has_edge(u, v));
                }
            }
        }
    }
}
