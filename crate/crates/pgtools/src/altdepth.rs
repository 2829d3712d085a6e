//! Alternation depth of a parity game.
//!
//! The nesting depth of a vertex `v` inside an SCC `C` is defined through
//! priority-bounded reachability: writing `u ->*_{C,k} v` for "some path
//! from `u` to `v` stays inside `C` and visits only priorities <= k
//! (endpoints included)", it is the least solution of
//!
//! ```text
//! nd(v) = max { 1 }
//!             { nd(u)     | u ->*_{C,p(v)} v, u != v, p(u) = p(v)  (mod 2) }
//!             { nd(u) + 1 | u ->*_{C,p(v)} v,         p(u) != p(v) (mod 2) }
//! ```
//!
//! The alternation depth of a game is the largest nesting depth across
//! all SCCs. Intuitively it counts how often priority parity alternates
//! along chains of increasingly permissive cycles, which is the natural
//! index for the fixpoint nesting a model checker would need.
//!
//! Evaluation works level by level in ascending priority order: once the
//! levels below `p` are settled, every vertex of priority `p` only reads
//! values from the subgraph bounded by `p`. Within one level, vertices of
//! equal priority that are mutually reachable under the bound must agree,
//! so the bounded subgraph is collapsed into strongly connected groups
//! first and values propagate over the resulting DAG. Opposite-parity
//! constraints cannot form cycles: mutual bounded reachability forces
//! equal priorities.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::deadline::{Deadline, TimedOut};
use crate::game::{ParityGame, VertexId};
use crate::scc::{scc_decompose, SccDecomposition};

/// Nesting depth of every vertex of one SCC.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingDepthTable {
    values: BTreeMap<VertexId, u32>,
}

impl NestingDepthTable {
    /// Depth of `v`, if it belongs to the component.
    pub fn get(&self, v: VertexId) -> Option<u32> {
        self.values.get(&v).copied()
    }

    /// Largest depth in the component; at least 1.
    pub fn max(&self) -> u32 {
        self.values.values().copied().max().unwrap_or(1)
    }

    /// Iterate over `(vertex, depth)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.values.iter().map(|(&v, &d)| (v, d))
    }
}

/// The vertex set handed to [`nesting_depths`] is not one of the game's
/// strongly connected components.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("vertex set is not a strongly connected component of the game")]
pub struct NotAnScc;

/// Nesting depths of the vertices of one SCC, given as a sorted or
/// unsorted member list. Fails if the set is not exactly one SCC.
pub fn nesting_depths(
    game: &ParityGame,
    component: &[VertexId],
) -> Result<NestingDepthTable, NotAnScc> {
    let mut members: Vec<VertexId> = component.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.len() != component.len() || members.is_empty() {
        return Err(NotAnScc);
    }
    if members.last().map_or(true, |&v| v as usize >= game.num_vertices()) {
        return Err(NotAnScc);
    }
    let scc = scc_decompose(game);
    if scc.members(scc.component_of(members[0])) != members.as_slice() {
        return Err(NotAnScc);
    }
    let depths = component_depths(game, &members, &Deadline::none())
        .expect("no deadline in effect");
    Ok(NestingDepthTable {
        values: members.iter().copied().zip(depths).collect(),
    })
}

/// Alternation depth of the whole game: the maximum nesting depth over
/// all SCCs. At least 1, and never more than the number of distinct
/// priorities.
pub fn alternation_depth(game: &ParityGame) -> u32 {
    alternation_depth_with(game, &Deadline::none()).expect("no deadline in effect")
}

/// [`alternation_depth`] under a time budget.
pub fn alternation_depth_with(game: &ParityGame, deadline: &Deadline) -> Result<u32, TimedOut> {
    Ok(per_component_depths(game, &scc_decompose(game), deadline)?
        .into_iter()
        .max()
        .unwrap_or(1))
}

/// Maximum nesting depth of each SCC, indexed like the decomposition's
/// component ids.
pub fn scc_nesting_depths(
    game: &ParityGame,
    scc: &SccDecomposition,
    deadline: &Deadline,
) -> Result<Vec<u32>, TimedOut> {
    per_component_depths(game, scc, deadline)
}

fn per_component_depths(
    game: &ParityGame,
    scc: &SccDecomposition,
    deadline: &Deadline,
) -> Result<Vec<u32>, TimedOut> {
    let mut out = Vec::with_capacity(scc.num_components());
    for c in 0..scc.num_components() as u32 {
        deadline.check()?;
        let depths = component_depths(game, scc.members(c), deadline)?;
        out.push(depths.into_iter().max().unwrap_or(1));
    }
    Ok(out)
}

/// Nesting depth of each member of one SCC (`members` sorted ascending).
fn component_depths(
    game: &ParityGame,
    members: &[VertexId],
    deadline: &Deadline,
) -> Result<Vec<u32>, TimedOut> {
    let local = |v: VertexId| members.binary_search(&v).ok();

    let mut levels: Vec<u32> = members.iter().map(|&v| game.priority(v)).collect();
    levels.sort_unstable();
    levels.dedup();

    let mut nd = vec![0u32; members.len()];
    for &p in &levels {
        deadline.check()?;

        // Subgraph bounded by p: active member vertices and the edges of
        // the component between them.
        let active: Vec<usize> =
            (0..members.len()).filter(|&i| game.priority(members[i]) <= p).collect();
        let mut active_pos = vec![usize::MAX; members.len()];
        for (pos, &i) in active.iter().enumerate() {
            active_pos[i] = pos;
        }
        let adj: Vec<Vec<u32>> = active
            .iter()
            .map(|&i| {
                game.successors(members[i])
                    .iter()
                    .filter_map(|&w| local(w))
                    .filter(|&j| active_pos[j] != usize::MAX)
                    .map(|j| active_pos[j] as u32)
                    .collect()
            })
            .collect();

        // Equal values are forced within strongly connected groups of the
        // bounded subgraph; propagation then runs over the group DAG.
        let (group_of, num_groups) = tarjan_groups(&adj);
        let mut group_members: Vec<Vec<usize>> = vec![Vec::new(); num_groups];
        for (pos, &g) in group_of.iter().enumerate() {
            group_members[g as usize].push(pos);
        }

        // Group emission order is reverse topological: quotient edges run
        // from higher group ids to lower ones. `best_in` accumulates the
        // strongest contribution reaching each group from its (already
        // processed) predecessors.
        let mut best_in = vec![0u32; num_groups];
        for g in (0..num_groups).rev() {
            let mut inner = 0u32; // contributions from settled lower levels
            let mut has_level_vertices = false;
            for &pos in &group_members[g] {
                let i = active[pos];
                let q = game.priority(members[i]);
                if q == p {
                    has_level_vertices = true;
                } else {
                    let alternates = q % 2 != p % 2;
                    inner = inner.max(nd[i] + u32::from(alternates));
                }
            }
            let mut reach = best_in[g].max(inner);
            if has_level_vertices {
                let value = reach.max(1);
                for &pos in &group_members[g] {
                    let i = active[pos];
                    if game.priority(members[i]) == p {
                        nd[i] = value;
                    }
                }
                reach = value;
            }
            for &pos in &group_members[g] {
                for &q in &adj[pos] {
                    let h = group_of[q as usize] as usize;
                    if h != g {
                        best_in[h] = best_in[h].max(reach);
                    }
                }
            }
        }
    }
    Ok(nd)
}

/// Tarjan's algorithm over a local adjacency list; returns the group id of
/// each vertex and the number of groups, ids in reverse topological order.
fn tarjan_groups(adj: &[Vec<u32>]) -> (Vec<u32>, usize) {
    const UNVISITED: u32 = u32::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut group_of = vec![0u32; n];
    let mut next_index = 0u32;
    let mut num_groups = 0usize;

    for root in 0..n as u32 {
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
            if top.1 < adj[v as usize].len() {
                let w = adj[v as usize][top.1];
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
                    loop {
                        let w = stack.pop().expect("group root is on the stack");
                        on_stack[w as usize] = false;
                        group_of[w as usize] = num_groups as u32;
                        if w == v {
                            break;
                        }
                    }
                    num_groups += 1;
                }
            }
        }
    }
    (group_of, num_groups)
}
