use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::graph::Graph;

/// Bipartite graph on parts X, Y with nested neighbourhoods.
///
/// `x` is ordered so that `Adj(x_1) ⊆ … ⊆ Adj(x_n)`, and `y` so that each
/// `Adj(x_i)` is the prefix `y[..degrees[i]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainModel {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub degrees: Vec<usize>,
}

impl ChainModel {
    /// Orders the parts of a bipartite `g` and checks nestedness; edges inside a part are ignored.
    pub fn from_parts(g: &Graph, x: &[usize], y: &[usize]) -> Option<ChainModel> {
        let mut xs = x.to_vec();
        let cross = |a: usize, side: &[usize]| side.iter().filter(|&&b| g.has_edge(a, b)).count();
        xs.sort_by_key(|&v| (cross(v, y), v));
        let mut ys = y.to_vec();
        ys.sort_by_key(|&w| (std::cmp::Reverse(cross(w, x)), w));
        let degrees: Vec<usize> = xs.iter().map(|&v| cross(v, y)).collect();
        for (i, &v) in xs.iter().enumerate() {
            for (j, &w) in ys.iter().enumerate() {
                if g.has_edge(v, w) != (j < degrees[i]) {
                    return None;
                }
            }
        }
        Some(ChainModel { x: xs, y: ys, degrees })
    }

    /// Model with `X = 0..degrees.len()` and `Y` following, `x_i` adjacent to the first `degrees[i]` of `Y`.
    pub fn from_degrees(mut degrees: Vec<usize>, m: usize) -> ChainModel {
        degrees.sort_unstable();
        assert!(degrees.iter().all(|&d| d <= m), "degree exceeds |Y|");
        let n = degrees.len();
        ChainModel { x: (0..n).collect(), y: (n..n + m).collect(), degrees }
    }

    /// The bipartite graph itself on `x ∪ y`.
    pub fn to_graph(&self, n: usize) -> Graph {
        let mut edges = Vec::new();
        for (i, &v) in self.x.iter().enumerate() {
            for &w in &self.y[..self.degrees[i]] {
                edges.push((v, w));
            }
        }
        Graph::new(n, &edges).expect("model vertices are distinct")
    }
}

/// Cochain graph: cliques X and Y whose cross edges form a chain graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainModel {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Chain model of the cross edges of G between X and Y.
    pub cross: ChainModel,
}

/// Matching profile `M(n, s)` for `s = 0..=|X|`: number of `s`-edge matchings of the chain graph.
pub fn chain_profile(c: &ChainModel) -> Vec<BigUint> {
    let n = c.degrees.len();
    let mut row = vec![BigUint::zero(); n + 1];
    row[0] = BigUint::one();
    for (i, &d) in c.degrees.iter().enumerate() {
        for s in (1..=i + 1).rev() {
            let free = (d + 1).saturating_sub(s);
            if free > 0 {
                let add = &row[s - 1] * free;
                row[s] += add;
            }
        }
    }
    row
}

/// Perfect matchings of `K_q`: `(q-1)!!` for even `q`, zero for odd `q`.
pub fn pm_complete(q: usize) -> BigUint {
    if q % 2 == 1 {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    let mut f = 1usize;
    while f < q {
        acc *= f;
        f += 2;
    }
    acc
}

/// Perfect matchings of a cochain graph: `Σ_s M(n,s)·pm(n−s)·pm(m−s)`.
pub fn count_pm_cochain(model: &CochainModel) -> BigUint {
    let n = model.x.len();
    let m = model.y.len();
    chain_profile(&model.cross)
        .iter()
        .enumerate()
        .filter(|&(s, _)| s <= m)
        .map(|(s, ms)| ms * pm_complete(n - s) * pm_complete(m - s))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_counts() {
        let got: Vec<u64> = (0..9).map(|q| pm_complete(q).try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 0, 1, 0, 3, 0, 15, 0, 105]);
    }

    #[test]
    fn profile_of_complete_bipartite() {
        // K_{2,2}: 1 empty, 4 single edges, 2 perfect.
        let c = ChainModel::from_degrees(vec![2, 2], 2);
        let p: Vec<u64> = chain_profile(&c).into_iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(p, vec![1, 4, 2]);
    }

    #[test]
    fn staircase_profile() {
        // x1-y1, x2-{y1,y2}: matchings of size 2 = 1.
        let c = ChainModel::from_degrees(vec![1, 2], 2);
        let p: Vec<u64> = chain_profile(&c).into_iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(p, vec![1, 3, 1]);
    }

    #[test]
    fn nestedness_is_checked() {
        let g = Graph::new(4, &[(0, 2), (1, 3)]).unwrap();
        assert!(ChainModel::from_parts(&g, &[0, 1], &[2, 3]).is_none());
        let h = Graph::new(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let m = ChainModel::from_parts(&h, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(m.degrees, vec![1, 2]);
        assert_eq!(m.y, vec![2, 3]);
    }
}
