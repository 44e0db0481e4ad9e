//! Perfect matchings and the switch Markov chain.
//!
//! The crate covers the switch chain itself, its transition graph, recognizers for
//! the graph classes on which the chain is known to be ergodic, exact counters for
//! perfect matchings on cographs, cochain graphs and bounded-treewidth graphs, and
//! tools to measure how fast the chain mixes.

pub mod chain;
pub mod count;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod matching;
pub mod mixing;
pub mod recognition;
pub mod transition;

pub use chain::{
    apply_draw, run_chain, sample_distribution, switch_neighbors, switch_step, ChainConfig, ChainRng, ChainRun,
    Histogram,
};
pub use count::{count_pm_auto, CountMethod};
pub use error::{Error, Result};
pub use graph::{cut_bigraph, edge, parse_edge_list, write_edge_list, Bipartition, Budget, CycleSeq, Edge, Graph};
pub use matching::{
    alternating_cycles, count_perfect_matchings_bruteforce, enumerate_perfect_matchings, find_perfect_matching,
    Matching, PerfectMatching,
};
pub use recognition::{ClassVerdict, Witness};
pub use transition::{
    build_transition_graph, diameter, distance, is_ergodic, is_hereditarily_ergodic_bruteforce, TransitionGraph,
};
