//! Toolkit for parity game benchmarks: the PGSolver file format,
//! structural measures (sizes, degrees, SCC structure, search metrics,
//! distances, diamonds, neighbourhoods, alternation depth, width bounds),
//! deterministic generators for well-known hard game families, and a
//! Zielonka solver for ground truth.

pub mod altdepth;
pub mod deadline;
pub mod game;
pub mod pgsolver;
pub mod scc;
pub mod stats;

pub use altdepth::{
    alternation_depth, alternation_depth_with, nesting_depths, scc_nesting_depths,
    NestingDepthTable, NotAnScc,
};
pub use deadline::{Deadline, TimedOut};
pub use game::{
    Diagnostic, DiagnosticKind, GameBuilder, GameError, ParityGame, Player, Predecessors,
    VertexId, VertexInfo, WinningPartition,
};
pub use pgsolver::{
    parse_pgsolver, parse_pgsolver_bytes, parse_pgsolver_with, read_game_file, write_game_file,
    write_pgsolver, write_pgsolver_to, FileError, ParseError, ParseErrorKind, ParseOptions,
    ParseOutcome,
};
pub use scc::{scc_decompose, scc_metrics, SccDecomposition, SccMetrics};
pub use stats::{
    bfs_metrics, count_diamonds, degree_summary, dfs_metrics, diameter, girth,
    neighbourhood_summary, size_summary, BfsMetrics, DegreeSummary, DfsMetrics, DiamondCounts,
    NeighbourhoodSummary, SizeSummary, SummaryStats,
};
