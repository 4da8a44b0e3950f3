//! Incremental partial labelings with per-vertex candidate label sets.
//!
//! This is the propagation kernel shared by the exact solver and the game
//! engine. A [`Board`] holds a legal partial ESD labeling together with the
//! set `S_v` of labels still available to every free vertex. After each
//! placement `v <- a` the sets are pruned in three steps:
//!
//! 1. `a` is removed from every set;
//! 2. every free neighbour `y` of `v` loses each label `b` with `b + a`
//!    equal to a weight in use (this includes the weights just created);
//! 3. for every weight `w` just created on an edge at `v`, every free `z`
//!    loses `w - phi(z')` for each labeled neighbour `z'`.
//!
//! Legality of `z <- b` only depends on `b` being unused and on the sums
//! `b + phi(z')` over labeled neighbours avoiding the weights in use, so
//! these deletions keep `S_z` equal to the set of legal labels for `z`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::labeling::{Label, Labeling};
use crate::weights::WeightSet;

/// Largest pool the kernel accepts; candidate sets are bitmaps over it.
pub const MAX_BOARD_POOL: Label = 1 << 16;

/// Bitmap of labels in `1..=pool`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabelSet {
    words: Vec<u64>,
}

impl LabelSet {
    pub fn empty(pool: Label) -> Self {
        LabelSet {
            words: vec![0; (pool as usize + 1).div_ceil(64)],
        }
    }

    pub fn full(pool: Label) -> Self {
        let mut s = Self::empty(pool);
        for a in 1..=pool {
            s.insert(a);
        }
        s
    }

    pub fn contains(&self, a: Label) -> bool {
        let i = a as usize;
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn insert(&mut self, a: Label) {
        let i = a as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, a: Label) {
        let i = a as usize;
        if let Some(w) = self.words.get_mut(i / 64) {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min(&self) -> Option<Label> {
        self.iter().next()
    }

    /// Labels in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some((wi * 64 + b) as Label)
            })
        })
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Why a placement is illegal.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum MoveError {
    #[error("vertex v{vertex} is out of range")]
    NoSuchVertex { vertex: Vertex },
    #[error("label {label} is outside the pool")]
    LabelOutsidePool { label: Label },
    #[error("vertex v{vertex} is already labeled")]
    VertexOccupied { vertex: Vertex },
    #[error("label used: {label}")]
    LabelUsed { label: Label },
    #[error("weight {weight} on {new_edge} clashes with {existing_edge}")]
    WeightClash {
        #[serde(rename = "newEdge")]
        new_edge: Edge,
        #[serde(rename = "existingEdge")]
        existing_edge: Edge,
        weight: Label,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("pool of {0} labels exceeds the supported maximum {MAX_BOARD_POOL}")]
pub struct PoolTooLarge(pub Label);

/// Legal partial ESD labeling plus candidate sets for the free vertices.
#[derive(Clone, Debug)]
pub struct Board {
    pool: Label,
    // labels[v], 0 when free; index 0 unused
    labels: Vec<Label>,
    used: LabelSet,
    weights: WeightSet,
    // weight with the edge carrying it, in placement order
    weight_edges: Vec<(Label, Edge)>,
    candidates: Vec<LabelSet>,
    free: usize,
}

impl Board {
    pub fn new(g: &Graph, pool: Label) -> Result<Self, PoolTooLarge> {
        if pool > MAX_BOARD_POOL {
            return Err(PoolTooLarge(pool));
        }
        let n = g.n();
        let mut candidates = vec![LabelSet::full(pool); n + 1];
        candidates[0].clear();
        Ok(Board {
            pool,
            labels: vec![0; n + 1],
            used: LabelSet::empty(pool),
            weights: WeightSet::for_pool(pool),
            weight_edges: Vec::new(),
            candidates,
            free: n,
        })
    }

    pub fn pool(&self) -> Label {
        self.pool
    }

    pub fn n(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn label(&self, v: Vertex) -> Option<Label> {
        self.labels.get(v).copied().filter(|&a| a != 0)
    }

    pub fn is_free(&self, v: Vertex) -> bool {
        self.labels.get(v) == Some(&0)
    }

    pub fn free_count(&self) -> usize {
        self.free
    }

    pub fn is_complete(&self) -> bool {
        self.free == 0
    }

    pub fn free_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..self.labels.len()).filter(|&v| self.labels[v] == 0)
    }

    pub fn is_label_used(&self, a: Label) -> bool {
        self.used.contains(a)
    }

    pub fn weights(&self) -> &WeightSet {
        &self.weights
    }

    /// `(weight, edge)` pairs in the order they were created.
    pub fn weight_edges(&self) -> &[(Label, Edge)] {
        &self.weight_edges
    }

    /// Candidate set `S_v`; empty for labeled vertices.
    pub fn candidates(&self, v: Vertex) -> &LabelSet {
        &self.candidates[v]
    }

    /// Total size of the candidate sets of all free vertices.
    pub fn candidate_mass(&self) -> usize {
        self.free_vertices().map(|v| self.candidates[v].len()).sum()
    }

    /// Some free vertex has no candidate left.
    pub fn has_dead_vertex(&self) -> bool {
        self.free_vertices().any(|v| self.candidates[v].is_empty())
    }

    pub fn to_labeling(&self) -> Labeling {
        let mut phi = Labeling::empty(self.n(), self.pool);
        for v in 1..self.labels.len() {
            if self.labels[v] != 0 {
                phi.set(v, self.labels[v]).expect("board labels lie in the pool");
            }
        }
        phi
    }

    /// Direct legality test for `v <- a`, independent of the candidate sets.
    pub fn check_move(&self, g: &Graph, v: Vertex, a: Label) -> Result<(), MoveError> {
        if v == 0 || v > self.n() {
            return Err(MoveError::NoSuchVertex { vertex: v });
        }
        if a == 0 || a > self.pool {
            return Err(MoveError::LabelOutsidePool { label: a });
        }
        if self.labels[v] != 0 {
            return Err(MoveError::VertexOccupied { vertex: v });
        }
        if self.used.contains(a) {
            return Err(MoveError::LabelUsed { label: a });
        }
        for &u in g.neighbors(v) {
            let b = self.labels[u];
            if b != 0 && self.weights.contains(a + b) {
                let existing_edge = self
                    .weight_edges
                    .iter()
                    .find(|(w, _)| *w == a + b)
                    .map(|&(_, e)| e)
                    .expect("every recorded weight has an edge");
                return Err(MoveError::WeightClash {
                    new_edge: Edge::new(u, v),
                    existing_edge,
                    weight: a + b,
                });
            }
        }
        Ok(())
    }

    /// Places `v <- a` after checking legality.
    pub fn place(&mut self, g: &Graph, v: Vertex, a: Label) -> Result<(), MoveError> {
        self.check_move(g, v, a)?;
        self.place_unchecked(g, v, a);
        Ok(())
    }

    /// Places a move already known to be legal (e.g. drawn from `S_v`).
    pub fn place_unchecked(&mut self, g: &Graph, v: Vertex, a: Label) {
        debug_assert!(self.check_move(g, v, a).is_ok());
        self.labels[v] = a;
        self.used.insert(a);
        self.free -= 1;
        self.candidates[v].clear();

        let mut created: Vec<Label> = Vec::new();
        for &u in g.neighbors(v) {
            let b = self.labels[u];
            if b != 0 {
                let w = a + b;
                self.weights.insert(w);
                self.weight_edges.push((w, Edge::new(u, v)));
                created.push(w);
            }
        }

        // step 1
        for z in 1..self.labels.len() {
            if self.labels[z] == 0 {
                self.candidates[z].remove(a);
            }
        }
        // step 2
        for &y in g.neighbors(v) {
            if self.labels[y] != 0 {
                continue;
            }
            for &(w, _) in &self.weight_edges {
                if w > a {
                    self.candidates[y].remove(w - a);
                }
            }
        }
        // step 3
        if created.is_empty() {
            return;
        }
        for z in 1..self.labels.len() {
            if self.labels[z] != 0 {
                continue;
            }
            for &zn in g.neighbors(z) {
                let b = self.labels[zn];
                if b == 0 {
                    continue;
                }
                for &w in &created {
                    if w > b {
                        self.candidates[z].remove(w - b);
                    }
                }
            }
        }
    }

    /// Replays an existing partial labeling onto a fresh board, vertex by vertex.
    pub fn from_labeling(g: &Graph, phi: &Labeling) -> Result<Self, BoardSetupError> {
        let mut board = Board::new(g, phi.pool())?;
        for (v, a) in phi.assigned() {
            board.place(g, v, a)?;
        }
        Ok(board)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardSetupError {
    #[error(transparent)]
    Pool(#[from] PoolTooLarge),
    #[error("labeling is not a legal partial ESD labeling: {0}")]
    Illegal(#[from] MoveError),
}
