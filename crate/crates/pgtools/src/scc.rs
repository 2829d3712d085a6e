//! Strongly connected components and the quotient DAG.

use serde::Serialize;

use crate::game::{ParityGame, VertexId};

/// SCC decomposition of a game graph.
///
/// Components are numbered in reverse topological order: every quotient
/// edge runs from a higher component id to a lower one. Member lists are
/// sorted ascending.
#[derive(Clone, Debug)]
pub struct SccDecomposition {
    component_of: Vec<u32>,
    components: Vec<Vec<VertexId>>,
    quotient_succ: Vec<Vec<u32>>,
    trivial: Vec<bool>,
    terminal: Vec<bool>,
}

impl SccDecomposition {
    /// Number of components.
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Component id containing `v`.
    #[inline]
    pub fn component_of(&self, v: VertexId) -> u32 {
        self.component_of[v as usize]
    }

    /// Members of component `c`, ascending.
    pub fn members(&self, c: u32) -> &[VertexId] {
        &self.components[c as usize]
    }

    /// Successor components of `c` in the quotient DAG (deduplicated,
    /// self-edges excluded).
    pub fn quotient_successors(&self, c: u32) -> &[u32] {
        &self.quotient_succ[c as usize]
    }

    /// Whether `c` is a single vertex without a self-edge.
    pub fn is_trivial(&self, c: u32) -> bool {
        self.trivial[c as usize]
    }

    /// Whether `c` has no outgoing quotient edges.
    pub fn is_terminal(&self, c: u32) -> bool {
        self.terminal[c as usize]
    }

    /// Longest path in the quotient DAG, counted in edges. Zero when every
    /// component is terminal.
    pub fn quotient_height(&self) -> u64 {
        // Components are in reverse topological order, so successors of c
        // have smaller ids and their heights are already known.
        let mut height = vec![0u64; self.num_components()];
        let mut best = 0;
        for c in 0..self.num_components() {
            for &d in &self.quotient_succ[c] {
                height[c] = height[c].max(1 + height[d as usize]);
            }
            best = best.max(height[c]);
        }
        best
    }
}

/// Tarjan's algorithm with an explicit stack, so deep games cannot
/// overflow the call stack. Roots are tried in ascending id order, which
/// fixes the component numbering for a given game.
pub fn scc_decompose(game: &ParityGame) -> SccDecomposition {
    const UNVISITED: u32 = u32::MAX;
    let n = game.num_vertices();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut next_index = 0u32;
    let mut component_of = vec![0u32; n];
    let mut components: Vec<Vec<VertexId>> = Vec::new();
    // Depth-first call frames: vertex plus how many successors were tried.
    let mut call: Vec<(VertexId, usize)> = Vec::new();

    for root in game.vertices() {
        if index[root as usize] != UNVISITED {
            continue;
        }
        index[root as usize] = next_index;
        lowlink[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        call.push((root, 0));

        while let Some(top) = call.last_mut() {
            let v = top.0;
            let succ = game.successors(v);
            if top.1 < succ.len() {
                let w = succ[top.1];
                top.1 += 1;
                if index[w as usize] == UNVISITED {
                    index[w as usize] = next_index;
                    lowlink[w as usize] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, 0));
                } else if on_stack[w as usize] {
                    lowlink[v as usize] = lowlink[v as usize].min(index[w as usize]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    lowlink[parent.0 as usize] =
                        lowlink[parent.0 as usize].min(lowlink[v as usize]);
                }
                if lowlink[v as usize] == index[v as usize] {
                    let id = components.len() as u32;
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().expect("component root is on the stack");
                        on_stack[w as usize] = false;
                        component_of[w as usize] = id;
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    members.sort_unstable();
                    components.push(members);
                }
            }
        }
    }

    let mut quotient_succ: Vec<Vec<u32>> = vec![Vec::new(); components.len()];
    for v in game.vertices() {
        let c = component_of[v as usize];
        for &w in game.successors(v) {
            let d = component_of[w as usize];
            if c != d {
                quotient_succ[c as usize].push(d);
            }
        }
    }
    for list in &mut quotient_succ {
        list.sort_unstable();
        list.dedup();
    }

    let trivial = components
        .iter()
        .map(|m| m.len() == 1 && !game.has_edge(m[0], m[0]))
        .collect();
    let terminal = quotient_succ.iter().map(|s| s.is_empty()).collect();

    SccDecomposition { component_of, components, quotient_succ, trivial, terminal }
}

/// Aggregated component counts for a stats report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SccMetrics {
    pub num_sccs: u64,
    pub num_trivial: u64,
    pub num_terminal: u64,
    pub quotient_height: u64,
}

pub fn scc_metrics(game: &ParityGame) -> SccMetrics {
    let scc = scc_decompose(game);
    SccMetrics {
        num_sccs: scc.num_components() as u64,
        num_trivial: (0..scc.num_components() as u32).filter(|&c| scc.is_trivial(c)).count()
            as u64,
        num_terminal: (0..scc.num_components() as u32).filter(|&c| scc.is_terminal(c)).count()
            as u64,
        quotient_height: scc.quotient_height(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameBuilder, Player};

    fn game_from(edges: &[&[VertexId]]) -> ParityGame {
        let mut b = GameBuilder::new();
        for (v, succ) in edges.iter().enumerate() {
            b.add_vertex(v as VertexId, Player::Even, v as u32, None, succ.to_vec()).unwrap();
        }
        b.finish().unwrap().game
    }

    #[test]
    fn self_loop_is_one_nontrivial_terminal_component() {
        let m = scc_metrics(&game_from(&[&[0]]));
        assert_eq!(
            m,
            SccMetrics { num_sccs: 1, num_trivial: 0, num_terminal: 1, quotient_height: 0 }
        );
    }

    #[test]
    fn cycle_is_a_single_component() {
        let g = game_from(&[&[1], &[2], &[3], &[4], &[0]]);
        let scc = scc_decompose(&g);
        assert_eq!(scc.num_components(), 1);
        assert!(!scc.is_trivial(0));
        assert!(scc.is_terminal(0));
        assert_eq!(scc.members(0), &[0, 1, 2, 3, 4]);
        assert_eq!(scc.quotient_height(), 0);
    }

    #[test]
    fn chain_of_components_has_matching_height() {
        // v0 -> v1 -> v2, v2 has a self-loop: three components in a path.
        let g = game_from(&[&[1], &[2], &[2]]);
        let scc = scc_decompose(&g);
        assert_eq!(scc.num_components(), 3);
        assert_eq!(scc.quotient_height(), 2);
        let m = scc_metrics(&g);
        assert_eq!(m.num_trivial, 2);
        assert_eq!(m.num_terminal, 1);
        // Quotient edges run from higher ids to lower ids.
        for c in 0..scc.num_components() as u32 {
            for &d in scc.quotient_successors(c) {
                assert!(d < c);
            }
        }
    }

    #[test]
    fn two_cycles_bridged() {
        // Cycle {0,1} feeds cycle {2,3}.
        let g = game_from(&[&[1], &[0, 2], &[3], &[2]]);
        let scc = scc_decompose(&g);
        assert_eq!(scc.num_components(), 2);
        assert_eq!(scc.component_of(0), scc.component_of(1));
        assert_eq!(scc.component_of(2), scc.component_of(3));
        assert_ne!(scc.component_of(0), scc.component_of(2));
        assert_eq!(scc.quotient_height(), 1);
        assert!(scc.is_terminal(scc.component_of(2)));
        assert!(!scc.is_terminal(scc.component_of(0)));
    }
}
