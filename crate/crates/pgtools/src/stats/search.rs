//! Breadth-first and depth-first search metrics.

use std::collections::VecDeque;

use serde::Serialize;

use crate::game::{ParityGame, VertexId};

/// Profile of a breadth-first search from a root vertex.
///
/// Levels are BFS distances from the root. A back-level edge runs from a
/// strictly higher level to a lower one (its length is the level
/// difference, at least 1); edges within one level — self-loops included —
/// count as cross-level. The queue size is sampled after each vertex is
/// dequeued and its successors enqueued.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BfsMetrics {
    pub root: VertexId,
    /// Index of the last non-empty level.
    pub height: u64,
    pub vertices_per_level: Vec<u64>,
    pub max_queue_size: u64,
    pub back_level_edges: u64,
    pub max_back_level_edge_length: u64,
    pub cross_level_edges: u64,
    pub unreachable: u64,
}

pub fn bfs_metrics(game: &ParityGame, root: VertexId) -> BfsMetrics {
    const UNSEEN: u64 = u64::MAX;
    let mut level = vec![UNSEEN; game.num_vertices()];
    let mut queue = VecDeque::new();
    level[root as usize] = 0;
    queue.push_back(root);

    let mut vertices_per_level = vec![0u64; 1];
    vertices_per_level[0] = 1;
    let mut max_queue_size = 0u64;
    let mut back_level_edges = 0u64;
    let mut max_back_length = 0u64;
    let mut cross_level_edges = 0u64;

    while let Some(v) = queue.pop_front() {
        let lv = level[v as usize];
        for &w in game.successors(v) {
            if level[w as usize] == UNSEEN {
                level[w as usize] = lv + 1;
                if vertices_per_level.len() as u64 == lv + 1 {
                    vertices_per_level.push(0);
                }
                vertices_per_level[lv as usize + 1] += 1;
                queue.push_back(w);
            } else if level[w as usize] == lv {
                cross_level_edges += 1;
            } else if level[w as usize] < lv {
                back_level_edges += 1;
                max_back_length = max_back_length.max(lv - level[w as usize]);
            }
        }
        max_queue_size = max_queue_size.max(queue.len() as u64);
    }

    BfsMetrics {
        root,
        height: vertices_per_level.len() as u64 - 1,
        unreachable: level.iter().filter(|&&l| l == UNSEEN).count() as u64,
        vertices_per_level,
        max_queue_size,
        back_level_edges,
        max_back_level_edge_length: max_back_length,
        cross_level_edges,
    }
}

/// Profile of a depth-first search from a root vertex.
///
/// Successors are visited in ascending id order. Edges reachable from the
/// root are classified the usual way: tree edges discover a vertex, back
/// edges close a cycle to a vertex on the current search path, and the
/// rest are forward or cross edges. The stack size is sampled after each
/// push.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DfsMetrics {
    pub root: VertexId,
    pub max_stack_size: u64,
    pub tree_edges: u64,
    pub back_edges: u64,
    pub forward_or_cross_edges: u64,
}

pub fn dfs_metrics(game: &ParityGame, root: VertexId) -> DfsMetrics {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color = vec![Color::White; game.num_vertices()];
    // Explicit recursion frames: vertex plus how many successors were tried.
    let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
    color[root as usize] = Color::Gray;

    let mut metrics = DfsMetrics {
        root,
        max_stack_size: 1,
        tree_edges: 0,
        back_edges: 0,
        forward_or_cross_edges: 0,
    };

    while let Some(top) = stack.last_mut() {
        let v = top.0;
        let succ = game.successors(v);
        if top.1 < succ.len() {
            let w = succ[top.1];
            top.1 += 1;
            match color[w as usize] {
                Color::White => {
                    metrics.tree_edges += 1;
                    color[w as usize] = Color::Gray;
                    stack.push((w, 0));
                    metrics.max_stack_size = metrics.max_stack_size.max(stack.len() as u64);
                }
                Color::Gray => metrics.back_edges += 1,
                Color::Black => metrics.forward_or_cross_edges += 1,
            }
        } else {
            color[v as usize] = Color::Black;
            stack.pop();
        }
    }
    metrics
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameBuilder, Player};

    fn game_from(edges: &[&[VertexId]]) -> ParityGame {
        let mut b = GameBuilder::new();
        for (v, succ) in edges.iter().enumerate() {
            b.add_vertex(v as VertexId, Player::Even, 0, None, succ.to_vec()).unwrap();
        }
        b.finish().unwrap().game
    }

    #[test]
    fn bfs_on_cycle_of_five() {
        let g = game_from(&[&[1], &[2], &[3], &[4], &[0]]);
        let m = bfs_metrics(&g, 0);
        assert_eq!(m.height, 4);
        assert_eq!(m.vertices_per_level, vec![1, 1, 1, 1, 1]);
        assert_eq!(m.back_level_edges, 1);
        assert_eq!(m.max_back_level_edge_length, 4);
        assert_eq!(m.cross_level_edges, 0);
        assert_eq!(m.unreachable, 0);
        assert_eq!(m.max_queue_size, 1);
    }

    #[test]
    fn bfs_self_loop_is_cross_level() {
        // Path v0 -> v1 -> v2 with a terminal self-loop.
        let g = game_from(&[&[1], &[2], &[2]]);
        let m = bfs_metrics(&g, 0);
        assert_eq!(m.height, 2);
        assert_eq!(m.back_level_edges, 0);
        assert_eq!(m.cross_level_edges, 1);
    }

    #[test]
    fn bfs_counts_unreachable() {
        // v2 and v3 cannot be reached from v0.
        let g = game_from(&[&[1], &[0], &[3], &[2]]);
        let m = bfs_metrics(&g, 0);
        assert_eq!(m.unreachable, 2);
        assert_eq!(m.height, 1);
    }

    #[test]
    fn bfs_queue_peaks_on_star() {
        let g = game_from(&[&[1, 2, 3], &[1], &[2], &[3]]);
        let m = bfs_metrics(&g, 0);
        assert_eq!(m.max_queue_size, 3);
        assert_eq!(m.vertices_per_level, vec![1, 3]);
    }

    #[test]
    fn dfs_self_loop_is_one_back_edge() {
        let g = game_from(&[&[0]]);
        let m = dfs_metrics(&g, 0);
        assert_eq!(m.max_stack_size, 1);
        assert_eq!(m.tree_edges, 0);
        assert_eq!(m.back_edges, 1);
        assert_eq!(m.forward_or_cross_edges, 0);
    }

    #[test]
    fn dfs_on_cycle_of_five() {
        let g = game_from(&[&[1], &[2], &[3], &[4], &[0]]);
        let m = dfs_metrics(&g, 0);
        assert_eq!(m.max_stack_size, 5);
        assert_eq!(m.tree_edges, 4);
        assert_eq!(m.back_edges, 1);
        assert_eq!(m.forward_or_cross_edges, 0);
    }

    #[test]
    fn dfs_classifies_cross_edges() {
        // Two paths from v0 rejoin at v3: one edge must be forward-or-cross.
        let g = game_from(&[&[1, 2], &[3], &[3], &[3]]);
        let m = dfs_metrics(&g, 0);
        assert_eq!(m.tree_edges, 3);
        assert_eq!(m.back_edges, 1); // v3's self-loop
        assert_eq!(m.forward_or_cross_edges, 1);
        assert_eq!(m.max_stack_size, 3);
    }
}
