//! Structural measures of a game graph: size and degree summaries, search
//! metrics, distances, diamond counts and local neighbourhoods.

mod distance;
mod local;
mod search;

pub use distance::{diameter, girth};
pub use local::{count_diamonds, neighbourhood_summary, DiamondCounts, NeighbourhoodSummary};
pub use search::{bfs_metrics, dfs_metrics, BfsMetrics, DfsMetrics};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::game::{ParityGame, Player, Predecessors};

/// Minimum, maximum and mean of an integer per-vertex quantity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SummaryStats {
    pub min: u64,
    pub max: u64,
    pub avg: f64,
}

impl SummaryStats {
    fn over(values: impl Iterator<Item = u64>) -> SummaryStats {
        let mut min = u64::MAX;
        let mut max = 0;
        let mut sum = 0u64;
        let mut count = 0u64;
        for v in values {
            min = min.min(v);
            max = max.max(v);
            sum += v;
            count += 1;
        }
        assert!(count > 0, "summary of an empty sequence");
        SummaryStats { min, max, avg: sum as f64 / count as f64 }
    }
}

/// Vertex, edge and priority counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeSummary {
    pub num_vertices: u64,
    pub num_even_vertices: u64,
    pub num_odd_vertices: u64,
    pub num_edges: u64,
    /// Number of distinct priorities.
    pub num_priorities: u64,
    pub count_per_priority: BTreeMap<u32, u64>,
    /// Whether all vertices belong to one player.
    pub is_solitaire: bool,
}

pub fn size_summary(game: &ParityGame) -> SizeSummary {
    let mut count_per_priority = BTreeMap::new();
    let mut even = 0u64;
    for v in game.vertices() {
        *count_per_priority.entry(game.priority(v)).or_insert(0u64) += 1;
        if game.owner(v) == Player::Even {
            even += 1;
        }
    }
    let n = game.num_vertices() as u64;
    SizeSummary {
        num_vertices: n,
        num_even_vertices: even,
        num_odd_vertices: n - even,
        num_edges: game.num_edges(),
        num_priorities: count_per_priority.len() as u64,
        count_per_priority,
        is_solitaire: even == 0 || even == n,
    }
}

/// In-degree, out-degree and distinct-neighbour degree summaries.
///
/// The plain degree of `v` counts distinct vertices adjacent to `v` in
/// either direction; a vertex whose only edge is a self-loop has degree 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeSummary {
    #[serde(rename = "in")]
    pub in_degree: SummaryStats,
    #[serde(rename = "out")]
    pub out_degree: SummaryStats,
    pub degree: SummaryStats,
}

pub fn degree_summary(game: &ParityGame) -> DegreeSummary {
    let preds = Predecessors::new(game);
    let out_degree =
        SummaryStats::over(game.vertices().map(|v| game.successors(v).len() as u64));
    let in_degree = SummaryStats::over(game.vertices().map(|v| preds.of(v).len() as u64));
    // Successor and predecessor lists are both sorted, so the distinct
    // union is a linear merge.
    let degree = SummaryStats::over(game.vertices().map(|v| {
        let (a, b) = (game.successors(v), preds.of(v));
        let (mut i, mut j, mut distinct) = (0, 0, 0u64);
        while i < a.len() || j < b.len() {
            distinct += 1;
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        distinct
    }));
    DegreeSummary { in_degree, out_degree, degree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameBuilder, VertexId};

    fn game(vertices: &[(Player, u32, &[VertexId])]) -> ParityGame {
        let mut b = GameBuilder::new();
        for (v, (owner, priority, succ)) in vertices.iter().enumerate() {
            b.add_vertex(v as VertexId, *owner, *priority, None, succ.to_vec()).unwrap();
        }
        b.finish().unwrap().game
    }

    #[test]
    fn size_summary_counts_priorities_and_owners() {
        use Player::*;
        // Complete game on 4 vertices, priorities 0..3, alternating owners.
        let g = game(&[
            (Even, 0, &[1, 2, 3]),
            (Odd, 1, &[0, 2, 3]),
            (Even, 2, &[0, 1, 3]),
            (Odd, 3, &[0, 1, 2]),
        ]);
        let s = size_summary(&g);
        assert_eq!(s.num_vertices, 4);
        assert_eq!(s.num_even_vertices, 2);
        assert_eq!(s.num_odd_vertices, 2);
        assert_eq!(s.num_edges, 12);
        assert_eq!(s.num_priorities, 4);
        assert_eq!(s.count_per_priority.len(), 4);
        assert!(s.count_per_priority.values().all(|&c| c == 1));
        assert!(!s.is_solitaire);
    }

    #[test]
    fn solitaire_means_single_owner() {
        use Player::*;
        let g = game(&[(Odd, 0, &[1]), (Odd, 1, &[0])]);
        assert!(size_summary(&g).is_solitaire);
    }

    #[test]
    fn degree_summary_star() {
        use Player::*;
        // v0 -> v1,v2,v3; each leaf loops on itself.
        let g = game(&[
            (Even, 0, &[1, 2, 3]),
            (Even, 0, &[1]),
            (Even, 0, &[2]),
            (Even, 0, &[3]),
        ]);
        let d = degree_summary(&g);
        assert_eq!(d.out_degree.max, 3);
        assert_eq!(d.out_degree.min, 1);
        assert!((d.out_degree.avg - 1.5).abs() < 1e-12);
        assert_eq!(d.in_degree.min, 0); // v0 has no predecessors
        assert_eq!(d.in_degree.max, 2); // each leaf: from v0 and itself
        // Distinct-neighbour degree: v0 has 3, each leaf v0 plus itself = 2.
        assert_eq!(d.degree.max, 3);
        assert_eq!(d.degree.min, 2);
    }

    #[test]
    fn self_loop_counts_once_in_degree() {
        use Player::*;
        let g = game(&[(Even, 0, &[0])]);
        let d = degree_summary(&g);
        assert_eq!(d.degree.min, 1);
        assert_eq!(d.degree.max, 1);
        assert_eq!(d.in_degree.min, 1);
        assert_eq!(d.out_degree.min, 1);
    }
}
