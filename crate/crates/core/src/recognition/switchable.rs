use std::ops::ControlFlow;

use crate::error::Result;
use crate::graph::{edge, Budget, CycleSeq, Edge, Graph};
use crate::recognition::cycles::{chords, for_each_cycle};
use crate::recognition::{ClassVerdict, Witness};

/// Certificate that an even cycle passes the switchability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwitchWitness {
    OddChord {
        cycle: CycleSeq,
        chord: Edge,
    },
    /// `switch` are the two even chords of the switch; `crossing` joins its two segments.
    EvenSwitch {
        cycle: CycleSeq,
        switch: [Edge; 2],
        crossing: Edge,
    },
}

impl SwitchWitness {
    pub fn cycle(&self) -> &CycleSeq {
        match self {
            SwitchWitness::OddChord { cycle, .. } | SwitchWitness::EvenSwitch { cycle, .. } => cycle,
        }
    }
}

/// Looks for an odd chord of `c`, then for an even switch with a crossing chord in either phase.
pub fn find_switch_witness(g: &Graph, c: &CycleSeq) -> Option<SwitchWitness> {
    let all = chords(g, c);
    if let Some(ch) = all.iter().find(|ch| ch.is_odd()) {
        return Some(SwitchWitness::OddChord { cycle: c.clone(), chord: ch.endpoints(c) });
    }
    let len = c.len();
    let half = len / 2;
    for phase in 0..2 {
        for i in 0..half {
            for j in i + 1..half {
                let (a, b) = (2 * i + phase, 2 * i + 1 + phase);
                let (x, y) = (2 * j + phase, 2 * j + 1 + phase);
                let (va, vb, vx, vy) = (c.at(a), c.at(b), c.at(x), c.at(y));
                if !g.has_edge(va, vx) || !g.has_edge(vb, vy) {
                    continue;
                }
                // P1 runs from position b to x, P2 from y round to a, endpoints included.
                let mut in_p1 = vec![false; g.n()];
                for p in b..=x {
                    in_p1[c.at(p)] = true;
                }
                let switch = [edge(va, vx), edge(vb, vy)];
                let crossing = all.iter().map(|ch| ch.endpoints(c)).find(|&(p, q)| {
                    let e = edge(p, q);
                    in_p1[p] != in_p1[q] && e != switch[0] && e != switch[1]
                });
                if let Some(crossing) = crossing {
                    return Some(SwitchWitness::EvenSwitch { cycle: c.clone(), switch, crossing });
                }
            }
        }
    }
    None
}

/// Every even cycle of length six or more has an odd chord.
pub fn is_odd_chordal(g: &Graph, budget: Budget) -> Result<ClassVerdict> {
    let mut bad = None;
    for_each_cycle(g, 6, true, budget, |c| {
        if chords(g, c).iter().any(|ch| ch.is_odd()) {
            ControlFlow::Continue(())
        } else {
            bad = Some(c.clone());
            ControlFlow::Break(())
        }
    })?;
    Ok(ClassVerdict::from_witness(bad.map(Witness::Cycle)))
}

/// Every even cycle of length six or more has an odd chord or an even switch with a crossing chord.
pub fn is_switchable(g: &Graph, budget: Budget) -> Result<ClassVerdict> {
    let mut bad = None;
    for_each_cycle(g, 6, true, budget, |c| {
        if find_switch_witness(g, c).is_some() {
            ControlFlow::Continue(())
        } else {
            bad = Some(c.clone());
            ControlFlow::Break(())
        }
    })?;
    Ok(ClassVerdict::from_witness(bad.map(Witness::Cycle)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ml8() -> Graph {
        Graph::from_fn(8, |u, v| v == u + 1 || (u == 0 && v == 7) || v == u + 4)
    }

    #[test]
    fn mobius_ladder_even_switch() {
        let g = ml8();
        let c = CycleSeq::new((0..8).collect());
        match find_switch_witness(&g, &c).unwrap() {
            SwitchWitness::EvenSwitch { switch, crossing, .. } => {
                assert!(g.has_edge(switch[0].0, switch[0].1));
                assert!(g.has_edge(crossing.0, crossing.1));
            }
            other => panic!("expected even switch, got {other:?}"),
        }
        assert!(is_switchable(&g, Budget::DEFAULT).unwrap().member);
        assert!(!is_odd_chordal(&g, Budget::DEFAULT).unwrap().member);
    }

    #[test]
    fn hexagon_fails_both() {
        let v = is_switchable(&Graph::cycle(6), Budget::DEFAULT).unwrap();
        assert!(!v.member);
        assert_eq!(v.witness, Some(Witness::Cycle(CycleSeq::new((0..6).collect()))));
    }
}
