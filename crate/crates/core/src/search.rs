//! Exact backtracking search for ESD labelings.
//!
//! The solver assigns labels vertex by vertex on a [`Board`], so every
//! partial assignment it visits is already a legal partial ESD labeling and
//! every free vertex carries its exact set of remaining legal labels. A
//! branch dies as soon as some free vertex has no label left.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::board::{Board, PoolTooLarge};
use crate::graph::{Graph, Vertex};
use crate::iso::{labelings_isomorphic, IsoError};
use crate::labeling::{Label, Labeling};
use crate::verify::{canonical_feasible, edge_weights};

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Stop at the first labeling.
    First,
    /// Visit and collect every labeling.
    Count,
    /// Collect one labeling per isomorphism class.
    EnumerateUpToIso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexOrdering {
    /// Fixed order: higher degree first, then lower index.
    StaticDegree,
    /// Fewest remaining candidate labels, then higher degree, then lower index.
    MostConstrained,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub pool: Label,
    pub mode: SearchMode,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub ordering: VertexOrdering,
    /// Worker threads; values above 1 split the search over the first
    /// vertex's labels. Node counts are only reproducible with 1.
    pub jobs: usize,
}

impl SearchConfig {
    pub fn new(pool: Label) -> Self {
        SearchConfig {
            pool,
            mode: SearchMode::First,
            node_limit: Some(DEFAULT_NODE_LIMIT),
            time_limit: None,
            ordering: VertexOrdering::MostConstrained,
            jobs: 1,
        }
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn node_limit(mut self, limit: Option<u64>) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }

    pub fn ordering(mut self, ordering: VertexOrdering) -> Self {
        self.ordering = ordering;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SearchStatus {
    Found,
    ExhaustedNoneExists,
    Aborted,
}

impl SearchStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::ExhaustedNoneExists => "exhaustedNoneExists",
            SearchStatus::Aborted => "aborted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// First mode: at most one; Count: all; EnumerateUpToIso: one per class.
    pub labelings: Vec<Labeling>,
    /// Labelings visited (before any isomorphism quotient).
    pub count: u64,
    pub nodes: u64,
    pub note: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Pool(#[from] PoolTooLarge),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error("search aborted at pool size {pool} after {nodes} nodes")]
    Aborted { pool: Label, nodes: u64 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

struct Shared<'a> {
    g: &'a Graph,
    cfg: &'a SearchConfig,
    static_order: Vec<Vertex>,
    nodes: AtomicU64,
    stop: AtomicBool,
    aborted: AtomicBool,
    deadline: Option<Instant>,
}

#[derive(Default)]
struct Found {
    labelings: Vec<Labeling>,
    count: u64,
}

impl Shared<'_> {
    fn pick_vertex(&self, board: &Board) -> Option<Vertex> {
        match self.cfg.ordering {
            VertexOrdering::StaticDegree => self.static_order.iter().copied().find(|&v| board.is_free(v)),
            VertexOrdering::MostConstrained => board
                .free_vertices()
                .min_by_key(|&v| (board.candidates(v).len(), std::cmp::Reverse(self.g.degree(v)), v)),
        }
    }

    /// Counts a node; returns false once a limit has been hit.
    fn tick(&self) -> bool {
        let visited = self.nodes.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        let over_nodes = self.cfg.node_limit.is_some_and(|lim| visited > lim);
        let over_time = visited.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.aborted.store(true, AtomicOrdering::Relaxed);
            self.stop.store(true, AtomicOrdering::Relaxed);
            return false;
        }
        true
    }

    fn dfs(&self, board: &Board, found: &mut Found) {
        if self.stop.load(AtomicOrdering::Relaxed) || !self.tick() {
            return;
        }
        if board.is_complete() {
            found.count += 1;
            found.labelings.push(board.to_labeling());
            if self.cfg.mode == SearchMode::First {
                self.stop.store(true, AtomicOrdering::Relaxed);
            }
            return;
        }
        if board.has_dead_vertex() {
            return;
        }
        let v = self.pick_vertex(board).expect("incomplete board has a free vertex");
        for a in board.candidates(v).iter() {
            let mut child = board.clone();
            child.place_unchecked(self.g, v, a);
            self.dfs(&child, found);
            if self.stop.load(AtomicOrdering::Relaxed) {
                return;
            }
        }
    }
}

/// Searches for ESD labelings of `g` with labels from `1..=cfg.pool`.
///
/// With `pool == n` graphs having more than `2n - 3` edges are rejected
/// without search.
pub fn solve(g: &Graph, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    if cfg.node_limit == Some(0) {
        return Err(SearchError::InvalidConfig("node limit must be positive".into()));
    }
    if cfg.time_limit == Some(Duration::ZERO) {
        return Err(SearchError::InvalidConfig("time limit must be positive".into()));
    }
    let n = g.n();
    let none = |note: &str| SearchOutcome {
        status: SearchStatus::ExhaustedNoneExists,
        labelings: Vec::new(),
        count: 0,
        nodes: 0,
        note: note.to_string(),
    };
    if (cfg.pool as u128) < n as u128 {
        return Ok(none("pool smaller than vertex count; no injective labeling"));
    }
    if cfg.pool == n as Label && !canonical_feasible(g) {
        return Ok(none("rejected by |E| <= 2n - 3"));
    }
    let root = Board::new(g, cfg.pool)?;

    let mut static_order: Vec<Vertex> = g.vertices().collect();
    static_order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let shared = Shared {
        g,
        cfg,
        static_order,
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        aborted: AtomicBool::new(false),
        deadline: cfg.time_limit.map(|t| Instant::now() + t),
    };

    let mut found = Found::default();
    if cfg.jobs <= 1 || root.is_complete() {
        shared.dfs(&root, &mut found);
    } else {
        run_parallel(&shared, &root, &mut found)?;
    }

    let aborted = shared.aborted.load(AtomicOrdering::Relaxed);
    let nodes = shared.nodes.load(AtomicOrdering::Relaxed);
    let complete_first = cfg.mode == SearchMode::First && found.count > 0;
    let status = if complete_first {
        SearchStatus::Found
    } else if aborted {
        SearchStatus::Aborted
    } else if found.count > 0 {
        SearchStatus::Found
    } else {
        SearchStatus::ExhaustedNoneExists
    };
    if cfg.mode == SearchMode::First {
        found.labelings.truncate(1);
    }
    let mut labelings = found.labelings;
    if cfg.mode == SearchMode::EnumerateUpToIso {
        labelings = quotient_by_isomorphism(g, labelings)?;
    }
    let note = match status {
        SearchStatus::Found => format!("{} labeling(s) visited", found.count),
        SearchStatus::ExhaustedNoneExists => "search space exhausted".to_string(),
        SearchStatus::Aborted => "node or time limit reached".to_string(),
    };
    Ok(SearchOutcome {
        status,
        labelings,
        count: found.count,
        nodes,
        note,
    })
}

fn run_parallel(shared: &Shared<'_>, root: &Board, found: &mut Found) -> Result<(), SearchError> {
    if !shared.tick() {
        return Ok(());
    }
    if root.has_dead_vertex() {
        return Ok(());
    }
    let v = shared.pick_vertex(root).expect("root has a free vertex");
    let labels: Vec<Label> = root.candidates(v).iter().collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(shared.cfg.jobs)
        .build()
        .map_err(|e| SearchError::InvalidConfig(e.to_string()))?;
    let results = Mutex::new(Vec::new());
    pool.install(|| {
        labels.par_iter().for_each(|&a| {
            let mut child = root.clone();
            child.place_unchecked(shared.g, v, a);
            let mut local = Found::default();
            shared.dfs(&child, &mut local);
            results.lock().unwrap().push((a, local));
        })
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(a, _)| *a);
    for (_, local) in results {
        found.count += local.count;
        found.labelings.extend(local.labelings);
    }
    Ok(())
}

/// Keeps one representative per isomorphism class, in first-seen order.
///
/// The sorted weight list is invariant under automorphisms, so candidates
/// are only compared within equal-weight buckets.
pub fn quotient_by_isomorphism(g: &Graph, labelings: Vec<Labeling>) -> Result<Vec<Labeling>, IsoError> {
    let mut buckets: HashMap<Vec<Label>, Vec<usize>> = HashMap::new();
    let mut reps: Vec<Labeling> = Vec::new();
    for phi in labelings {
        let mut key: Vec<Label> = edge_weights(g, &phi).into_iter().map(|(_, w)| w).collect();
        key.sort_unstable();
        let bucket = buckets.entry(key).or_default();
        let mut new_class = true;
        for &i in bucket.iter() {
            if labelings_isomorphic(g, &reps[i], &phi)? {
                new_class = false;
                break;
            }
        }
        if new_class {
            bucket.push(reps.len());
            reps.push(phi);
        }
    }
    Ok(reps)
}

/// One representative per isomorphism class of ESD labelings with pool `1..=pool`.
pub fn enumerate_up_to_iso(g: &Graph, pool: Label) -> Result<Vec<Labeling>, SearchError> {
    let outcome = solve(g, &SearchConfig::new(pool).mode(SearchMode::EnumerateUpToIso))?;
    if outcome.status == SearchStatus::Aborted {
        return Err(SearchError::Aborted {
            pool,
            nodes: outcome.nodes,
        });
    }
    Ok(outcome.labelings)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinPool {
    Found { pool: Label, labeling: Labeling },
    NotFoundWithin(Label),
}

/// Smallest `l <= max_pool` admitting an ESD labeling, trying `l = n, n+1, ...`.
///
/// `base` supplies limits, ordering and jobs; its pool and mode are ignored.
pub fn min_pool_size(g: &Graph, max_pool: Label, base: &SearchConfig) -> Result<MinPool, SearchError> {
    let start = g.n().max(1) as Label;
    for pool in start..=max_pool {
        let mut cfg = base.clone();
        cfg.pool = pool;
        cfg.mode = SearchMode::First;
        let outcome = solve(g, &cfg)?;
        match outcome.status {
            SearchStatus::Found => {
                return Ok(MinPool::Found {
                    pool,
                    labeling: outcome.labelings.into_iter().next().unwrap(),
                })
            }
            SearchStatus::ExhaustedNoneExists => {}
            SearchStatus::Aborted => {
                return Err(SearchError::Aborted {
                    pool,
                    nodes: outcome.nodes,
                })
            }
        }
    }
    Ok(MinPool::NotFoundWithin(max_pool))
}
