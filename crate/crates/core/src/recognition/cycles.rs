use std::ops::ControlFlow;

use crate::error::Result;
use crate::graph::{Budget, CycleSeq, Edge, Graph, Meter};

/// A chord of a cycle, by the positions of its endpoints (`i < j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chord {
    pub i: usize,
    pub j: usize,
}

impl Chord {
    /// Odd chords split the cycle into two even-order cycles.
    pub fn is_odd(&self) -> bool {
        (self.j - self.i) % 2 == 1
    }

    pub fn endpoints(&self, c: &CycleSeq) -> Edge {
        crate::graph::edge(c.at(self.i), c.at(self.j))
    }
}

/// All chords of `c` in `g`, by position.
pub fn chords(g: &Graph, c: &CycleSeq) -> Vec<Chord> {
    let k = c.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            if g.has_edge(c.at(i), c.at(j)) {
                out.push(Chord { i, j });
            }
        }
    }
    out
}

pub fn has_odd_chord(g: &Graph, c: &CycleSeq) -> bool {
    chords(g, c).iter().any(Chord::is_odd)
}

/// Visits every cycle of length at least `min_len` (and even when `even_only`) once, in canonical form.
pub fn for_each_cycle(
    g: &Graph,
    min_len: usize,
    even_only: bool,
    budget: Budget,
    mut visit: impl FnMut(&CycleSeq) -> ControlFlow<()>,
) -> Result<()> {
    let mut meter = budget.meter();
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        let mut path = vec![s];
        on_path[s] = true;
        let flow =
            extend_cycle(g, s, &mut path, &mut on_path, min_len.max(3), even_only, false, &mut meter, &mut visit)?;
        on_path[s] = false;
        if flow.is_break() {
            break;
        }
    }
    Ok(())
}

/// Visits every chordless cycle of length at least `min_len` once.
pub fn for_each_chordless_cycle(
    g: &Graph,
    min_len: usize,
    budget: Budget,
    mut visit: impl FnMut(&CycleSeq) -> ControlFlow<()>,
) -> Result<()> {
    let mut meter = budget.meter();
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        let mut path = vec![s];
        on_path[s] = true;
        let flow = extend_cycle(g, s, &mut path, &mut on_path, min_len.max(3), false, true, &mut meter, &mut visit)?;
        on_path[s] = false;
        if flow.is_break() {
            break;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn extend_cycle(
    g: &Graph,
    s: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    min_len: usize,
    even_only: bool,
    induced: bool,
    meter: &mut Meter,
    visit: &mut impl FnMut(&CycleSeq) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    meter.tick()?;
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if w <= s || on_path[w] {
            continue;
        }
        if induced && path.len() >= 2 && path[1..path.len() - 1].iter().any(|&p| g.has_edge(p, w)) {
            continue;
        }
        let closes = path.len() >= 2 && g.has_edge(w, s);
        let len = path.len() + 1;
        if closes && path[1] < w && len >= min_len && (!even_only || len.is_multiple_of(2)) {
            path.push(w);
            let flow = visit(&CycleSeq::new(path.clone()));
            path.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        if induced && closes {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        let flow = extend_cycle(g, s, path, on_path, min_len, even_only, induced, meter, visit)?;
        on_path[w] = false;
        path.pop();
        if flow.is_break() {
            return Ok(flow);
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// All even cycles of length at least `min_len`.
pub fn even_cycles(g: &Graph, min_len: usize, budget: Budget) -> Result<Vec<CycleSeq>> {
    let mut out = Vec::new();
    for_each_cycle(g, min_len, true, budget, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

/// All chordless cycles of length at least `min_len`.
pub fn chordless_cycles(g: &Graph, min_len: usize, budget: Budget) -> Result<Vec<CycleSeq>> {
    let mut out = Vec::new();
    for_each_chordless_cycle(g, min_len, budget, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

/// Some chordless cycle of length at least `min_len`.
pub fn find_hole(g: &Graph, min_len: usize, budget: Budget) -> Result<Option<CycleSeq>> {
    let mut found = None;
    for_each_chordless_cycle(g, min_len, budget, |c| {
        found = Some(c.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_cycles() {
        let g = Graph::complete(4);
        assert_eq!(even_cycles(&g, 4, Budget::DEFAULT).unwrap().len(), 3);
        assert_eq!(chordless_cycles(&g, 3, Budget::DEFAULT).unwrap().len(), 4);
        assert!(chordless_cycles(&g, 4, Budget::DEFAULT).unwrap().is_empty());
    }

    #[test]
    fn k33_has_nine_four_cycles_and_six_hamiltonian() {
        let g = Graph::from_fn(6, |u, v| (u < 3) != (v < 3));
        let cs = even_cycles(&g, 4, Budget::DEFAULT).unwrap();
        assert_eq!(cs.iter().filter(|c| c.len() == 4).count(), 9);
        assert_eq!(cs.iter().filter(|c| c.len() == 6).count(), 6);
    }

    #[test]
    fn chord_parity() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let c = CycleSeq::new((0..6).collect());
        let ch = chords(&g, &c);
        assert_eq!(ch, vec![Chord { i: 0, j: 3 }]);
        assert!(ch[0].is_odd());
        let g2 = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2)]).unwrap();
        assert!(!has_odd_chord(&g2, &c));
    }
}
