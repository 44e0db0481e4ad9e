//! Membership tests for hereditary graph classes, with witnesses.

pub mod cochain;
pub mod cotree;
pub mod cycles;
pub mod pre;
pub mod switchable;

use crate::graph::CycleSeq;

pub use cochain::{is_cochain, recognize_cochain};
pub use cotree::{build_cotree, find_p4, is_cograph, Cotree, CotreeNode, InducedP4};
pub use cycles::{chordless_cycles, chords, even_cycles, find_hole, has_odd_chord, Chord};
pub use pre::{
    are_isomorphic, find_induced, find_induced_pre, find_pre_p5_fixture, is_chains, is_flawless, is_monotone,
    is_qua_chains, is_quasimonotone, PreMatch,
};
pub use switchable::{find_switch_witness, is_odd_chordal, is_switchable, SwitchWitness};

/// Why a graph is outside a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A cycle violating the class condition (for bipartite classes, possibly an odd cycle).
    Cycle(CycleSeq),
    /// Vertices inducing a copy of the named pattern.
    Induced { pattern: &'static str, vertices: Vec<usize> },
    /// Vertices with a bipartition whose cut graph is the named pattern.
    Pre { pattern: &'static str, vertices: Vec<usize>, right: Vec<usize> },
}

impl Witness {
    pub fn vertices(&self) -> &[usize] {
        match self {
            Witness::Cycle(c) => c.vertices(),
            Witness::Induced { vertices, .. } | Witness::Pre { vertices, .. } => vertices,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVerdict {
    pub member: bool,
    pub witness: Option<Witness>,
}

impl ClassVerdict {
    pub fn member() -> Self {
        ClassVerdict { member: true, witness: None }
    }

    pub fn non_member(w: Witness) -> Self {
        ClassVerdict { member: false, witness: Some(w) }
    }

    pub(crate) fn from_witness(w: Option<Witness>) -> Self {
        match w {
            Some(w) => ClassVerdict::non_member(w),
            None => ClassVerdict::member(),
        }
    }
}
