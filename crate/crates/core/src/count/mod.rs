//! Exact perfect-matching counts.

pub mod chain;
pub mod cograph;
pub mod treedec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Result;
use crate::graph::{Budget, Graph};
use crate::matching::count_perfect_matchings_bruteforce;
use crate::recognition::{build_cotree, recognize_cochain};

pub use chain::{chain_profile, count_pm_cochain, pm_complete, ChainModel, CochainModel};
pub use cograph::{cograph_profile, count_pm_cograph, MatchingProfile};
pub use treedec::{
    count_pm_td, make_nice, minfill_td, parse_td, validate_td, write_td, NiceKind, NiceNode, NiceTreeDecomposition,
    TdViolation, TreeDecomposition,
};

/// Largest min-fill width the dispatcher hands to the tree-decomposition counter.
pub const DEFAULT_WIDTH_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Cograph,
    Cochain,
    Treewidth,
    Brute,
}

impl CountMethod {
    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Cograph => "cograph",
            CountMethod::Cochain => "cochain",
            CountMethod::Treewidth => "treewidth",
            CountMethod::Brute => "brute",
        }
    }
}

/// Perfect matchings of `g` with the first applicable method: cograph, cochain, bounded min-fill width, brute force.
pub fn count_pm_auto(g: &Graph, width_cap: usize, budget: Budget) -> Result<(BigUint, CountMethod)> {
    if g.n() % 2 == 1 {
        return Ok((BigUint::zero(), CountMethod::Brute));
    }
    if let Ok(t) = build_cotree(g) {
        return Ok((cograph_profile(&t)?.perfect(), CountMethod::Cograph));
    }
    if let Some(m) = recognize_cochain(g) {
        return Ok((count_pm_cochain(&m), CountMethod::Cochain));
    }
    let td = minfill_td(g);
    if td.width() <= width_cap {
        return Ok((count_pm_td(g, &make_nice(&td)?)?, CountMethod::Treewidth));
    }
    Ok((BigUint::from(count_perfect_matchings_bruteforce(g, budget)?), CountMethod::Brute))
}
