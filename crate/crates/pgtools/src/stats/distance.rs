//! Distance measures: diameter and girth via per-source BFS.

use std::collections::VecDeque;

use crate::deadline::{Deadline, TimedOut};
use crate::game::{ParityGame, Predecessors, VertexId};

/// Scratch space shared by the per-source searches: distances are valid
/// only where `stamp` matches the current epoch, so resets are O(1).
struct Bfs {
    dist: Vec<u64>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: VecDeque<VertexId>,
}

impl Bfs {
    fn new(n: usize) -> Bfs {
        Bfs { dist: vec![0; n], stamp: vec![0; n], epoch: 0, queue: VecDeque::new() }
    }

    fn start(&mut self, source: VertexId) {
        self.epoch += 1;
        self.queue.clear();
        self.dist[source as usize] = 0;
        self.stamp[source as usize] = self.epoch;
        self.queue.push_back(source);
    }

    fn seen(&self, v: VertexId) -> bool {
        self.stamp[v as usize] == self.epoch
    }
}

/// Longest shortest path over all ordered pairs `(u, w)` where `w` is
/// reachable from `u`. Zero for a single vertex.
pub fn diameter(game: &ParityGame, deadline: &Deadline) -> Result<u64, TimedOut> {
    let mut bfs = Bfs::new(game.num_vertices());
    let mut best = 0u64;
    let mut steps = 0u64;
    for source in game.vertices() {
        deadline.check()?;
        bfs.start(source);
        while let Some(v) = bfs.queue.pop_front() {
            steps += 1;
            deadline.check_every(steps)?;
            let d = bfs.dist[v as usize];
            best = best.max(d);
            for &w in game.successors(v) {
                if !bfs.seen(w) {
                    bfs.stamp[w as usize] = bfs.epoch;
                    bfs.dist[w as usize] = d + 1;
                    bfs.queue.push_back(w);
                }
            }
        }
    }
    Ok(best)
}

/// Length of a shortest directed cycle: 1 exactly when a self-loop exists,
/// `None` only when the graph is acyclic (impossible for total games).
pub fn girth(game: &ParityGame, deadline: &Deadline) -> Result<Option<u64>, TimedOut> {
    for v in game.vertices() {
        if game.has_edge(v, v) {
            return Ok(Some(1));
        }
    }

    // A shortest cycle through v has length dist(v, u) + 1 for some
    // predecessor u of v, so one BFS per source suffices. Vertices at
    // distance best-1 or more cannot improve on `best` and are not
    // expanded further.
    let preds = Predecessors::new(game);
    let mut bfs = Bfs::new(game.num_vertices());
    let mut best = u64::MAX;
    let mut steps = 0u64;
    for source in game.vertices() {
        deadline.check()?;
        bfs.start(source);
        while let Some(v) = bfs.queue.pop_front() {
            steps += 1;
            deadline.check_every(steps)?;
            let d = bfs.dist[v as usize];
            if d + 2 > best {
                continue;
            }
            for &w in game.successors(v) {
                if !bfs.seen(w) {
                    bfs.stamp[w as usize] = bfs.epoch;
                    bfs.dist[w as usize] = d + 1;
                    bfs.queue.push_back(w);
                }
            }
        }
        for &u in preds.of(source) {
            if u != source && bfs.seen(u) {
                best = best.min(bfs.dist[u as usize] + 1);
            }
        }
        if best == 2 {
            break; // nothing shorter exists once self-loops are ruled out
        }
    }
    Ok((best != u64::MAX).then_some(best))
}
