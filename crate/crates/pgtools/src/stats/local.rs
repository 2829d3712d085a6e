//! Local structure: diamond counts and k-neighbourhood summaries.

use std::collections::VecDeque;

use serde::Serialize;

use crate::deadline::{Deadline, TimedOut};
use crate::game::{ParityGame, Player, VertexId};
use crate::stats::SummaryStats;

/// Number of diamonds: paths `u -> v -> w` and `u -> v' -> w` with
/// `v != v'`, counted once per unordered pair `{v, v'}`. A diamond is even
/// (odd) when `u`, `v` and `v'` are all owned by Even (Odd); the owner of
/// `w` does not matter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiamondCounts {
    pub total: u64,
    pub even: u64,
    pub odd: u64,
}

pub fn count_diamonds(game: &ParityGame, deadline: &Deadline) -> Result<DiamondCounts, TimedOut> {
    let mut counts = DiamondCounts::default();
    let mut steps = 0u64;
    for u in game.vertices() {
        deadline.check()?;
        let succ = game.successors(u);
        for i in 0..succ.len() {
            for j in i + 1..succ.len() {
                steps += 1;
                deadline.check_every(steps)?;
                let (v, v2) = (succ[i], succ[j]);
                // Successor lists are sorted: count common targets by merge.
                let (a, b) = (game.successors(v), game.successors(v2));
                let (mut x, mut y, mut common) = (0, 0, 0u64);
                while x < a.len() && y < b.len() {
                    if a[x] < b[y] {
                        x += 1;
                    } else if b[y] < a[x] {
                        y += 1;
                    } else {
                        common += 1;
                        x += 1;
                        y += 1;
                    }
                }
                counts.total += common;
                let owners = [game.owner(u), game.owner(v), game.owner(v2)];
                if owners == [Player::Even; 3] {
                    counts.even += common;
                } else if owners == [Player::Odd; 3] {
                    counts.odd += common;
                }
            }
        }
    }
    Ok(counts)
}

/// Sizes and clustering coefficients of the k-neighbourhoods.
///
/// `N_k(v)` contains every vertex other than `v` reachable from `v` in at
/// most `k` steps. The clustering coefficient of `v` is the number of
/// edges of the subgraph induced by `N_k(v)` divided by `|N_k(v)|`, and 0
/// when the neighbourhood is empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NeighbourhoodSummary {
    pub k: u32,
    pub size: SummaryStats,
    pub clustering_min: f64,
    pub clustering_max: f64,
    pub clustering_avg: f64,
}

pub fn neighbourhood_summary(
    game: &ParityGame,
    k: u32,
    deadline: &Deadline,
) -> Result<NeighbourhoodSummary, TimedOut> {
    let n = game.num_vertices();
    let mut stamp = vec![0u32; n];
    let mut epoch = 0u32;
    let mut members: Vec<VertexId> = Vec::new();
    let mut queue: VecDeque<(VertexId, u32)> = VecDeque::new();

    let mut sizes: Vec<u64> = Vec::with_capacity(n);
    let mut cl_min = f64::INFINITY;
    let mut cl_max = f64::NEG_INFINITY;
    let mut cl_sum = 0.0;

    for v in game.vertices() {
        deadline.check()?;
        epoch += 1;
        members.clear();
        queue.clear();
        stamp[v as usize] = epoch;
        queue.push_back((v, 0));
        while let Some((u, d)) = queue.pop_front() {
            if d == k {
                continue;
            }
            for &w in game.successors(u) {
                if stamp[w as usize] != epoch {
                    stamp[w as usize] = epoch;
                    members.push(w);
                    queue.push_back((w, d + 1));
                }
            }
        }
        // The source itself never belongs to its own neighbourhood, even
        // when a cycle returns to it; it was stamped before the search.
        sizes.push(members.len() as u64);
        let coefficient = if members.is_empty() {
            0.0
        } else {
            let mut edges = 0u64;
            for &u in &members {
                for &w in game.successors(u) {
                    if w != v && stamp[w as usize] == epoch {
                        edges += 1;
                    }
                }
            }
            edges as f64 / members.len() as f64
        };
        cl_min = cl_min.min(coefficient);
        cl_max = cl_max.max(coefficient);
        cl_sum += coefficient;
    }

    Ok(NeighbourhoodSummary {
        k,
        size: SummaryStats::over(sizes.iter().copied()),
        clustering_min: cl_min,
        clustering_max: cl_max,
        clustering_avg: cl_sum / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;

    fn game(vertices: &[(Player, &[VertexId])]) -> ParityGame {
        let mut b = GameBuilder::new();
        for (v, (owner, succ)) in vertices.iter().enumerate() {
            b.add_vertex(v as VertexId, *owner, 0, None, succ.to_vec()).unwrap();
        }
        b.finish().unwrap().game
    }

    #[test]
    fn single_diamond_all_even() {
        use Player::*;
        let g = game(&[
            (Even, &[1, 2]), // u
            (Even, &[3]),    // v
            (Even, &[3]),    // v'
            (Even, &[3]),    // w
        ]);
        let c = count_diamonds(&g, &Deadline::none()).unwrap();
        assert_eq!(c, DiamondCounts { total: 1, even: 1, odd: 0 });
    }

    #[test]
    fn mixed_owners_count_in_total_only() {
        use Player::*;
        let g = game(&[(Even, &[1, 2]), (Odd, &[3]), (Even, &[3]), (Even, &[3])]);
        let c = count_diamonds(&g, &Deadline::none()).unwrap();
        assert_eq!(c, DiamondCounts { total: 1, even: 0, odd: 0 });
    }

    #[test]
    fn two_cycle_has_no_diamond() {
        use Player::*;
        let g = game(&[(Even, &[1]), (Even, &[0])]);
        let c = count_diamonds(&g, &Deadline::none()).unwrap();
        assert_eq!(c.total, 0);
    }

    #[test]
    fn triangle_diamonds() {
        use Player::*;
        // Complete directed graph on 3 vertices: each u sees the pair of
        // others, which share exactly one common successor (u itself).
        let g = game(&[(Odd, &[1, 2]), (Odd, &[0, 2]), (Odd, &[0, 1])]);
        let c = count_diamonds(&g, &Deadline::none()).unwrap();
        assert_eq!(c, DiamondCounts { total: 3, even: 0, odd: 3 });
    }

    #[test]
    fn neighbourhood_of_triangle_is_fully_clustered() {
        use Player::*;
        let g = game(&[(Even, &[1, 2]), (Even, &[0, 2]), (Even, &[0, 1])]);
        let s = neighbourhood_summary(&g, 1, &Deadline::none()).unwrap();
        assert_eq!(s.size.min, 2);
        assert_eq!(s.size.max, 2);
        // N_1(v) holds the two other vertices and both edges between them.
        assert!((s.clustering_min - 1.0).abs() < 1e-12);
        assert!((s.clustering_max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn neighbourhood_excludes_the_source() {
        use Player::*;
        let g = game(&[(Even, &[0])]);
        let s = neighbourhood_summary(&g, 3, &Deadline::none()).unwrap();
        assert_eq!(s.size.max, 0);
        assert_eq!(s.clustering_max, 0.0);

        let two = game(&[(Even, &[1]), (Even, &[0])]);
        let s = neighbourhood_summary(&two, 1, &Deadline::none()).unwrap();
        assert_eq!(s.size.min, 1);
        assert_eq!(s.clustering_max, 0.0); // the lone neighbour has no internal edges
    }

    #[test]
    fn neighbourhood_radius_grows() {
        use Player::*;
        // Directed 4-cycle: N_1 = next vertex, N_2 adds one more, N_3 all.
        let g = game(&[(Even, &[1]), (Even, &[2]), (Even, &[3]), (Even, &[0])]);
        for (k, expect) in [(1, 1), (2, 2), (3, 3)] {
            let s = neighbourhood_summary(&g, k, &Deadline::none()).unwrap();
            assert_eq!(s.size.min, expect);
            assert_eq!(s.size.max, expect);
        }
    }

    #[test]
    fn local_measures_respect_deadlines() {
        use Player::*;
        let g = game(&[(Even, &[1]), (Even, &[0])]);
        let expired = Deadline::after(std::time::Duration::ZERO);
        assert_eq!(count_diamonds(&g, &expired), Err(TimedOut));
        assert!(neighbourhood_summary(&g, 2, &expired).is_err());
    }
}
