//! Simple undirected graphs with 1-indexed vertices.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Vertex identifier. Vertices of an `n`-vertex graph are `1..=n`.
pub type Vertex = usize;

/// An undirected edge stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    /// Builds the normalized edge `{a, b}`.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(serializer)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}v{}", self.u, self.v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("edge endpoint {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("invalid graph parameters: {0}")]
    InvalidParameters(String),
}

/// Simple undirected graph. Edges are kept sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // adjacency[v] for v in 1..=n; index 0 unused.
    adjacency: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from endpoint pairs, rejecting loops, duplicates and
    /// out-of-range endpoints. Pair order is irrelevant.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push(Edge::new(a, b));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        for e in &list {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        for nbrs in adjacency.iter_mut() {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + Clone {
        1..=self.n
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        if a == 0 || b == 0 || a > self.n || b > self.n {
            return false;
        }
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// True for the graph with no vertices, too.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.bfs_order(1).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Connected, acyclic, and no vertex of degree above two.
    pub fn is_path(&self) -> bool {
        self.is_tree() && self.max_degree() <= 2
    }

    /// Vertices reachable from `root` in breadth-first order, visiting
    /// neighbors by increasing index.
    pub fn bfs_order(&self, root: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.n + 1];
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::new();
        seen[root] = true;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        order
    }

    /// Two-colouring of the vertices, if one exists. `side[v]` is `false`
    /// for the class containing the lowest vertex of each component.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n + 1];
        for start in self.vertices() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                for &y in &self.adjacency[x] {
                    match side[y] {
                        None => {
                            side[y] = Some(!sx);
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    /// If the graph is complete bipartite `K_{p,q}` with `p, q >= 1`,
    /// returns its two parts, smaller part first.
    pub fn complete_bipartite_parts(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        if self.n < 2 {
            return None;
        }
        let side = self.bipartition()?;
        let (a, b): (Vec<Vertex>, Vec<Vertex>) = self.vertices().partition(|&v| !side[v]);
        if a.is_empty() || b.is_empty() || self.edges.len() != a.len() * b.len() {
            return None;
        }
        if a.len() <= b.len() {
            Some((a, b))
        } else {
            Some((b, a))
        }
    }
}
