use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::recognition::cotree::{build_cotree, Cotree, CotreeNode};

/// Numbers of matchings by size: `counts[s]` matchings with `s` edges, `s = 0..=n/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingProfile {
    pub counts: Vec<BigUint>,
    pub n: usize,
}

impl MatchingProfile {
    fn single_vertex() -> Self {
        MatchingProfile { counts: vec![BigUint::one()], n: 1 }
    }

    /// Perfect matchings (zero for odd `n`).
    pub fn perfect(&self) -> BigUint {
        if self.n % 2 == 1 {
            BigUint::zero()
        } else {
            self.counts[self.n / 2].clone()
        }
    }
}

fn binomials(max: usize) -> Vec<Vec<BigUint>> {
    let mut c = vec![vec![BigUint::zero(); max + 1]; max + 1];
    for a in 0..=max {
        c[a][0] = BigUint::one();
        for b in 1..=a {
            c[a][b] = &c[a - 1][b - 1] + &c[a - 1][b];
        }
    }
    c
}

fn union(a: &MatchingProfile, b: &MatchingProfile) -> MatchingProfile {
    let n = a.n + b.n;
    let mut counts = vec![BigUint::zero(); n / 2 + 1];
    for (i, x) in a.counts.iter().enumerate() {
        for (j, y) in b.counts.iter().enumerate() {
            counts[i + j] += x * y;
        }
    }
    MatchingProfile { counts, n }
}

fn join(a: &MatchingProfile, b: &MatchingProfile, binom: &[Vec<BigUint>], fact: &[BigUint]) -> MatchingProfile {
    let (g, h) = (a.n, b.n);
    let n = g + h;
    let mut counts = vec![BigUint::zero(); n / 2 + 1];
    for (i, x) in a.counts.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.counts.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x * y;
            let (fg, fh) = (g - 2 * i, h - 2 * j);
            for k in 0..=fg.min(fh) {
                counts[i + j + k] += &xy * &binom[fg][k] * &binom[fh][k] * &fact[k];
            }
        }
    }
    MatchingProfile { counts, n }
}

/// Matching profile of the cograph denoted by `t`.
pub fn cograph_profile(t: &Cotree) -> Result<MatchingProfile> {
    let Some(root) = t.root() else {
        return Ok(MatchingProfile { counts: vec![BigUint::one()], n: 0 });
    };
    let n = t.num_vertices();
    let binom = binomials(n);
    let mut fact = vec![BigUint::one(); n + 1];
    for k in 1..=n {
        fact[k] = &fact[k - 1] * k;
    }
    let mut done: Vec<Option<MatchingProfile>> = vec![None; t.nodes().len()];
    for (id, node) in t.nodes().iter().enumerate() {
        let take = |c: usize, done: &[Option<MatchingProfile>]| {
            done.get(c)
                .and_then(Option::as_ref)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument(format!("cotree node {id} refers to later node {c}")))
        };
        let p = match *node {
            CotreeNode::Leaf(_) => MatchingProfile::single_vertex(),
            CotreeNode::Union(a, b) => union(&take(a, &done)?, &take(b, &done)?),
            CotreeNode::Join(a, b) => join(&take(a, &done)?, &take(b, &done)?, &binom, &fact),
        };
        done[id] = Some(p);
    }
    done[root].take().ok_or_else(|| Error::InvalidArgument("cotree root missing".into()))
}

/// Perfect matchings of a cograph.
pub fn count_pm_cograph(g: &Graph) -> Result<BigUint> {
    let t = build_cotree(g).map_err(|_| Error::NotInClass("cograph"))?;
    Ok(cograph_profile(&t)?.perfect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(g: &Graph) -> Vec<u64> {
        cograph_profile(&build_cotree(g).unwrap()).unwrap().counts.into_iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn k2_and_k22() {
        assert_eq!(profile(&Graph::complete(2)), vec![1, 1]);
        assert_eq!(profile(&Graph::cycle(4)), vec![1, 4, 2]);
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(count_pm_cograph(&Graph::complete(6)).unwrap(), BigUint::from(15u32));
        assert_eq!(count_pm_cograph(&Graph::complete(1)).unwrap(), BigUint::zero());
        assert!(count_pm_cograph(&Graph::path(4)).is_err());
    }
}
