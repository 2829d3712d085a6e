//! Core parity game representation: vertices with an owner and a priority,
//! a total successor relation, and validation diagnostics.

use std::fmt;

use thiserror::Error;

/// Index of a vertex. Games are stored densely, so ids of a valid game
/// always lie in `0..num_vertices()`.
pub type VertexId = u32;

/// The two players of a parity game.
///
/// `Even` wins plays whose highest infinitely recurring priority is even,
/// `Odd` those where it is odd. The PGSolver file format encodes `Even`
/// as owner `0` and `Odd` as owner `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    /// The adversary of this player.
    #[inline]
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// The player that wins a play dominated by `priority`.
    #[inline]
    pub fn from_priority(priority: u32) -> Player {
        if priority % 2 == 0 {
            Player::Even
        } else {
            Player::Odd
        }
    }

    /// Encoding used by the PGSolver format: `0` for Even, `1` for Odd.
    #[inline]
    pub fn as_bit(self) -> u32 {
        match self {
            Player::Even => 0,
            Player::Odd => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Even => write!(f, "even"),
            Player::Odd => write!(f, "odd"),
        }
    }
}

/// Owner, priority and optional textual label of a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexInfo {
    pub owner: Player,
    pub priority: u32,
    pub label: Option<String>,
}

/// An immutable parity game.
///
/// Vertices are identified by dense ids `0..n`. Successor lists are stored
/// in compressed sparse row form, sorted ascending and free of duplicates;
/// [`GameBuilder`] and the PGSolver parser establish these invariants
/// together with totality (every vertex has at least one successor).
/// [`ParityGame::from_parts_unchecked`] bypasses them, which is useful for
/// exercising [`ParityGame::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    info: Vec<VertexInfo>,
    succ_offsets: Vec<usize>,
    succ: Vec<VertexId>,
    initial: Option<VertexId>,
}

impl ParityGame {
    /// Builds a game from raw parts without any validation or
    /// canonicalization. Callers are responsible for dense ids; successor
    /// lists are stored exactly as given.
    pub fn from_parts_unchecked(
        info: Vec<VertexInfo>,
        successors: Vec<Vec<VertexId>>,
        initial: Option<VertexId>,
    ) -> ParityGame {
        assert_eq!(info.len(), successors.len());
        let mut succ_offsets = Vec::with_capacity(info.len() + 1);
        let mut succ = Vec::new();
        succ_offsets.push(0);
        for list in &successors {
            succ.extend_from_slice(list);
            succ_offsets.push(succ.len());
        }
        ParityGame { info, succ_offsets, succ, initial }
    }

    /// Number of vertices.
    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.info.len()
    }

    /// Number of edges, counting duplicates if the game was built unchecked.
    #[inline]
    pub fn num_edges(&self) -> u64 {
        self.succ.len() as u64
    }

    /// Iterator over all vertex ids in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.num_vertices() as VertexId).into_iter()
    }

    /// Owner, priority and label of `v`.
    #[inline]
    pub fn info(&self, v: VertexId) -> &VertexInfo {
        &self.info[v as usize]
    }

    #[inline]
    pub fn owner(&self, v: VertexId) -> Player {
        self.info[v as usize].owner
    }

    #[inline]
    pub fn priority(&self, v: VertexId) -> u32 {
        self.info[v as usize].priority
    }

    #[inline]
    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.info[v as usize].label.as_deref()
    }

    /// Successors of `v`, ascending and duplicate-free for valid games.
    #[inline]
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.succ[self.succ_offsets[v as usize]..self.succ_offsets[v as usize + 1]]
    }

    /// Whether the edge `u -> w` exists. Assumes sorted successor lists.
    #[inline]
    pub fn has_edge(&self, u: VertexId, w: VertexId) -> bool {
        self.successors(u).binary_search(&w).is_ok()
    }

    /// The designated start vertex, if any. Files and generators use
    /// vertex `0` by convention.
    #[inline]
    pub fn initial_vertex(&self) -> Option<VertexId> {
        self.initial
    }

    /// Highest priority in the game. Panics on empty games, which no
    /// validating constructor produces.
    pub fn max_priority(&self) -> u32 {
        self.info.iter().map(|i| i.priority).max().expect("game has no vertices")
    }

    /// In-degree of every vertex (counting duplicate edges once each).
    pub fn in_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.num_vertices()];
        for &w in &self.succ {
            if (w as usize) < deg.len() {
                deg[w as usize] += 1;
            }
        }
        deg
    }

    /// Checks the representation invariants and returns one diagnostic per
    /// violation: dangling edges, missing successors, duplicate successor
    /// entries, malformed labels, or an empty vertex set. An empty result
    /// means the game is valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.info.is_empty() {
            out.push(Diagnostic {
                kind: DiagnosticKind::EmptyGame,
                vertex: None,
                message: "game has no vertices".to_string(),
            });
            return out;
        }
        let n = self.num_vertices() as VertexId;
        for v in self.vertices() {
            let succ = self.successors(v);
            if succ.is_empty() {
                out.push(Diagnostic {
                    kind: DiagnosticKind::NonTotal,
                    vertex: Some(v),
                    message: format!("vertex {v} has no successors"),
                });
            }
            for window in succ.windows(2) {
                if window[0] == window[1] {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::DuplicateSuccessor,
                        vertex: Some(v),
                        message: format!("vertex {v} lists successor {} twice", window[0]),
                    });
                }
            }
            for &w in succ {
                if w >= n {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::DanglingEdge,
                        vertex: Some(v),
                        message: format!("vertex {v} has successor {w} outside 0..{n}"),
                    });
                }
            }
            if let Some(label) = self.label(v) {
                if label.contains('"') || label.contains('\n') {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::InvalidLabel,
                        vertex: Some(v),
                        message: format!("label of vertex {v} contains a quote or newline"),
                    });
                }
            }
        }
        out
    }
}

/// Predecessor lists of a game in compressed sparse row form.
///
/// Built once and shared by algorithms that walk edges backwards, such as
/// attractor computation.
pub struct Predecessors {
    offsets: Vec<usize>,
    pred: Vec<VertexId>,
}

impl Predecessors {
    pub fn new(game: &ParityGame) -> Predecessors {
        let n = game.num_vertices();
        let mut counts = vec![0usize; n + 1];
        for v in game.vertices() {
            for &w in game.successors(v) {
                counts[w as usize + 1] += 1;
            }
        }
        for i in 1..=n {
            counts[i] += counts[i - 1];
        }
        let offsets = counts.clone();
        let mut next = counts;
        let mut pred = vec![0 as VertexId; game.num_edges() as usize];
        for v in game.vertices() {
            for &w in game.successors(v) {
                pred[next[w as usize]] = v;
                next[w as usize] += 1;
            }
        }
        Predecessors { offsets, pred }
    }

    /// Vertices with an edge into `v`.
    #[inline]
    pub fn of(&self, v: VertexId) -> &[VertexId] {
        &self.pred[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }
}

/// Category of a validation or parse diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// A vertex has an empty successor list.
    NonTotal,
    /// An edge points outside the vertex range.
    DanglingEdge,
    /// A successor list mentions the same vertex twice.
    DuplicateSuccessor,
    /// A vertex id was defined twice.
    DuplicateVertex,
    /// An id below the declared bound has no definition.
    MissingVertex,
    /// A label contains characters the file format cannot carry.
    InvalidLabel,
    /// The game has no vertices at all.
    EmptyGame,
}

/// A single validation finding, tied to a vertex where applicable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub vertex: Option<VertexId>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

/// Error raised when a builder cannot produce a valid game.
#[derive(Debug, Error)]
#[error("invalid parity game: {}{}", diagnostics[0], if diagnostics.len() > 1 {
    format!(" (and {} further problems)", diagnostics.len() - 1)
} else {
    String::new()
})]
pub struct GameError {
    pub diagnostics: Vec<Diagnostic>,
}

/// Outcome of [`GameBuilder::finish`]: the game plus non-fatal findings
/// (currently only collapsed duplicate successors).
#[derive(Debug)]
pub struct BuildOutcome {
    pub game: ParityGame,
    pub warnings: Vec<Diagnostic>,
}

/// Incremental constructor for [`ParityGame`].
///
/// Vertices may be added in any order and with gaps; `finish` requires the
/// ids to be dense, while `finish_lenient` renumbers the defined ids
/// densely, preserving their relative order. Both canonicalize successor
/// lists (sort, deduplicate with a warning) and check totality, edge
/// targets and labels.
pub struct GameBuilder {
    slots: Vec<Option<VertexInfo>>,
    successors: Vec<Vec<VertexId>>,
    declared_max: Option<VertexId>,
}

impl GameBuilder {
    pub fn new() -> GameBuilder {
        GameBuilder { slots: Vec::new(), successors: Vec::new(), declared_max: None }
    }

    /// Declares the highest vertex id, as the `parity n;` header does.
    /// Ids up to `max_id` must then all be defined for a strict finish.
    pub fn declare_max_id(&mut self, max_id: VertexId) {
        self.declared_max = Some(self.declared_max.map_or(max_id, |m| m.max(max_id)));
        self.reserve(max_id);
    }

    fn reserve(&mut self, id: VertexId) {
        if self.slots.len() <= id as usize {
            self.slots.resize(id as usize + 1, None);
            self.successors.resize(id as usize + 1, Vec::new());
        }
    }

    /// Defines vertex `id`. Fails if the id was already defined.
    pub fn add_vertex(
        &mut self,
        id: VertexId,
        owner: Player,
        priority: u32,
        label: Option<String>,
        successors: Vec<VertexId>,
    ) -> Result<(), Diagnostic> {
        self.reserve(id);
        if self.slots[id as usize].is_some() {
            return Err(Diagnostic {
                kind: DiagnosticKind::DuplicateVertex,
                vertex: Some(id),
                message: format!("vertex {id} is defined twice"),
            });
        }
        self.slots[id as usize] = Some(VertexInfo { owner, priority, label });
        self.successors[id as usize] = successors;
        Ok(())
    }

    /// Finishes construction, requiring every id in `0..=max` to be defined
    /// where `max` is the larger of the declared bound and the highest id
    /// actually used.
    pub fn finish(self) -> Result<BuildOutcome, GameError> {
        self.finish_impl(false)
    }

    /// Like [`GameBuilder::finish`], but renumbers sparse ids densely
    /// instead of rejecting the gaps.
    pub fn finish_lenient(self) -> Result<BuildOutcome, GameError> {
        self.finish_impl(true)
    }

    fn finish_impl(self, lenient: bool) -> Result<BuildOutcome, GameError> {
        let GameBuilder { slots, successors, declared_max } = self;
        let mut errors = Vec::new();
        let mut warnings = Vec::new();

        if slots.iter().all(|s| s.is_none()) {
            errors.push(Diagnostic {
                kind: DiagnosticKind::EmptyGame,
                vertex: None,
                message: "game has no vertices".to_string(),
            });
            return Err(GameError { diagnostics: errors });
        }
        // declare_max_id already grew the slot table, so missing ids below
        // the declared bound show up as empty slots here.
        let _ = declared_max;

        // Old id -> dense id. In strict mode gaps are errors instead.
        let mut remap = vec![VertexId::MAX; slots.len()];
        let mut next = 0 as VertexId;
        for (id, slot) in slots.iter().enumerate() {
            match slot {
                Some(_) => {
                    remap[id] = next;
                    next += 1;
                }
                None if !lenient => errors.push(Diagnostic {
                    kind: DiagnosticKind::MissingVertex,
                    vertex: Some(id as VertexId),
                    message: format!("vertex {id} is never defined"),
                }),
                None => {}
            }
        }
        if !errors.is_empty() {
            return Err(GameError { diagnostics: errors });
        }

        let mut info = Vec::with_capacity(next as usize);
        let mut lists = Vec::with_capacity(next as usize);
        for (id, slot) in slots.into_iter().enumerate() {
            let Some(vertex) = slot else { continue };
            if let Some(label) = vertex.label.as_deref() {
                if label.contains('"') || label.contains('\n') {
                    errors.push(Diagnostic {
                        kind: DiagnosticKind::InvalidLabel,
                        vertex: Some(remap[id]),
                        message: format!("label of vertex {id} contains a quote or newline"),
                    });
                }
            }
            let mut list = Vec::with_capacity(successors[id].len());
            for &w in &successors[id] {
                match remap.get(w as usize).copied() {
                    Some(mapped) if mapped != VertexId::MAX => list.push(mapped),
                    _ => errors.push(Diagnostic {
                        kind: DiagnosticKind::DanglingEdge,
                        vertex: Some(remap[id]),
                        message: format!("vertex {id} has successor {w}, which is not defined"),
                    }),
                }
            }
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() < before {
                warnings.push(Diagnostic {
                    kind: DiagnosticKind::DuplicateSuccessor,
                    vertex: Some(remap[id]),
                    message: format!(
                        "vertex {id} lists {} duplicate successor(s), collapsed",
                        before - list.len()
                    ),
                });
            }
            if list.is_empty() {
                errors.push(Diagnostic {
                    kind: DiagnosticKind::NonTotal,
                    vertex: Some(remap[id]),
                    message: format!("vertex {id} has no successors"),
                });
            }
            info.push(vertex);
            lists.push(list);
        }
        if !errors.is_empty() {
            return Err(GameError { diagnostics: errors });
        }

        let game = ParityGame::from_parts_unchecked(info, lists, Some(0));
        debug_assert!(game.validate().is_empty());
        Ok(BuildOutcome { game, warnings })
    }
}

impl Default for GameBuilder {
    fn default() -> Self {
        GameBuilder::new()
    }
}

/// The positional winning sets of the two players. For a valid result the
/// two sets are disjoint, sorted, and together cover every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningPartition {
    won_even: Vec<VertexId>,
    won_odd: Vec<VertexId>,
}

impl WinningPartition {
    /// Builds a partition from a per-vertex winner table.
    pub fn from_winners(winners: &[Player]) -> WinningPartition {
        let mut won_even = Vec::new();
        let mut won_odd = Vec::new();
        for (v, &p) in winners.iter().enumerate() {
            match p {
                Player::Even => won_even.push(v as VertexId),
                Player::Odd => won_odd.push(v as VertexId),
            }
        }
        WinningPartition { won_even, won_odd }
    }

    /// Vertices won by `player`, ascending.
    pub fn won(&self, player: Player) -> &[VertexId] {
        match player {
            Player::Even => &self.won_even,
            Player::Odd => &self.won_odd,
        }
    }

    /// The player winning from `v`. Panics if `v` is in neither set.
    pub fn winner(&self, v: VertexId) -> Player {
        if self.won_even.binary_search(&v).is_ok() {
            Player::Even
        } else if self.won_odd.binary_search(&v).is_ok() {
            Player::Odd
        } else {
            panic!("vertex {v} is in neither winning set")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(owner: Player, priority: u32) -> VertexInfo {
        VertexInfo { owner, priority, label: None }
    }

    #[test]
    fn player_parity_and_opponent() {
        assert_eq!(Player::from_priority(0), Player::Even);
        assert_eq!(Player::from_priority(7), Player::Odd);
        assert_eq!(Player::Even.opponent(), Player::Odd);
        assert_eq!(Player::Odd.opponent(), Player::Even);
        assert_eq!(Player::Even.as_bit(), 0);
        assert_eq!(Player::Odd.as_bit(), 1);
    }

    #[test]
    fn builder_produces_canonical_lists() {
        let mut b = GameBuilder::new();
        b.add_vertex(0, Player::Even, 3, None, vec![1, 0, 1]).unwrap();
        b.add_vertex(1, Player::Odd, 2, None, vec![0]).unwrap();
        let out = b.finish().unwrap();
        assert_eq!(out.game.successors(0), &[0, 1]);
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(out.warnings[0].kind, DiagnosticKind::DuplicateSuccessor);
        assert_eq!(out.game.initial_vertex(), Some(0));
    }

    #[test]
    fn builder_rejects_duplicate_vertex() {
        let mut b = GameBuilder::new();
        b.add_vertex(0, Player::Even, 0, None, vec![0]).unwrap();
        let err = b.add_vertex(0, Player::Odd, 1, None, vec![0]).unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::DuplicateVertex);
    }

    #[test]
    fn builder_rejects_gaps_strictly_and_renumbers_leniently() {
        let mut b = GameBuilder::new();
        b.add_vertex(0, Player::Even, 0, None, vec![2]).unwrap();
        b.add_vertex(2, Player::Odd, 1, None, vec![0]).unwrap();
        let err = b.finish().unwrap_err();
        assert!(err
            .diagnostics
            .iter()
            .any(|d| d.kind == DiagnosticKind::MissingVertex && d.vertex == Some(1)));

        let mut b = GameBuilder::new();
        b.add_vertex(0, Player::Even, 0, None, vec![2]).unwrap();
        b.add_vertex(2, Player::Odd, 1, None, vec![0]).unwrap();
        let out = b.finish_lenient().unwrap();
        assert_eq!(out.game.num_vertices(), 2);
        assert_eq!(out.game.successors(0), &[1]);
        assert_eq!(out.game.successors(1), &[0]);
        assert_eq!(out.game.owner(1), Player::Odd);
    }

    #[test]
    fn builder_rejects_empty_successor_lists() {
        let mut b = GameBuilder::new();
        b.add_vertex(0, Player::Even, 0, None, vec![]).unwrap();
        let err = b.finish().unwrap_err();
        assert_eq!(err.diagnostics[0].kind, DiagnosticKind::NonTotal);
    }

    #[test]
    fn builder_respects_declared_bound() {
        let mut b = GameBuilder::new();
        b.declare_max_id(1);
        b.add_vertex(0, Player::Even, 0, None, vec![0]).unwrap();
        let err = b.finish().unwrap_err();
        assert!(err
            .diagnostics
            .iter()
            .any(|d| d.kind == DiagnosticKind::MissingVertex && d.vertex == Some(1)));
    }

    #[test]
    fn validate_reports_dangling_and_nontotal() {
        let game = ParityGame::from_parts_unchecked(
            vec![v(Player::Even, 0), v(Player::Odd, 1)],
            vec![vec![99], vec![]],
            None,
        );
        let diags = game.validate();
        assert!(diags
            .iter()
            .any(|d| d.kind == DiagnosticKind::DanglingEdge && d.vertex == Some(0)));
        assert!(diags
            .iter()
            .any(|d| d.kind == DiagnosticKind::NonTotal && d.vertex == Some(1)));
    }

    #[test]
    fn validate_accepts_valid_game() {
        let mut b = GameBuilder::new();
        b.add_vertex(0, Player::Even, 3, Some("a".to_string()), vec![1]).unwrap();
        b.add_vertex(1, Player::Odd, 2, None, vec![0]).unwrap();
        let game = b.finish().unwrap().game;
        assert!(game.validate().is_empty());
        assert_eq!(game.num_edges(), 2);
        assert_eq!(game.max_priority(), 3);
        assert_eq!(game.label(0), Some("a"));
    }

    #[test]
    fn predecessors_mirror_successors() {
        let mut b = GameBuilder::new();
        b.add_vertex(0, Player::Even, 0, None, vec![1, 2]).unwrap();
        b.add_vertex(1, Player::Odd, 1, None, vec![2]).unwrap();
        b.add_vertex(2, Player::Even, 2, None, vec![2]).unwrap();
        let game = b.finish().unwrap().game;
        let preds = Predecessors::new(&game);
        assert_eq!(preds.of(0), &[] as &[VertexId]);
        assert_eq!(preds.of(1), &[0]);
        assert_eq!(preds.of(2), &[0, 1, 2]);
    }

    #[test]
    fn winning_partition_lookup() {
        let p = WinningPartition::from_winners(&[Player::Even, Player::Odd, Player::Even]);
        assert_eq!(p.won(Player::Even), &[0, 2]);
        assert_eq!(p.won(Player::Odd), &[1]);
        assert_eq!(p.winner(1), Player::Odd);
    }
}
