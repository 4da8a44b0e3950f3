//! Edge-sum distinguishing (ESD) vertex labelings.
//!
//! A labeling of an `n`-vertex graph with labels from `{1, ..., l}` is ESD
//! when it is injective and every edge `uv` gets a different weight
//! `phi(u) + phi(v)`. It is canonical when `l = n`.
//!
//! The crate covers verification ([`verify`]), closed-form labelers for
//! several graph families ([`constructions`]), an exact solver
//! ([`search`]) and the Maker-Breaker labeling game ([`game`]).

pub mod board;
pub mod catalog;
pub mod constructions;
pub mod families;
pub mod formats;
pub mod game;
pub mod graph;
pub mod iso;
pub mod labeling;
pub mod search;
pub mod verify;
pub mod weights;

pub use graph::{Edge, Graph, GraphError, Vertex};
pub use labeling::{Label, Labeling};
pub use verify::{canonical_feasible, edge_weights, verify_esd, Conflict, Verdict};
