//! Closed-form ESD labelers for the graph families in [`crate::families`].
//!
//! Every labeler builds its graph, labels it, and runs [`verify_esd`] on the
//! result before returning it.

use thiserror::Error;

use crate::families::{build_graph, GraphFamily};
use crate::graph::{Graph, GraphError, Vertex};
use crate::labeling::{Label, Labeling};
use crate::verify::verify_esd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub graph: Graph,
    pub labeling: Labeling,
    /// Pool size equals the vertex count.
    pub canonical: bool,
    pub pool_size: Label,
}

/// Outcome of a labeler that may prove non-existence instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constructed {
    Labeled(ConstructionResult),
    /// No canonical ESD labeling exists for this graph.
    NoneExists {
        graph: Graph,
        reason: &'static str,
    },
}

impl Constructed {
    pub fn labeled(self) -> Option<ConstructionResult> {
        match self {
            Constructed::Labeled(r) => Some(r),
            Constructed::NoneExists { .. } => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not a tree")]
    NotATree,
    #[error("root v{0} is not a vertex of the tree")]
    BadRoot(Vertex),
    #[error("grid {k}x{l} has both sides odd; no construction (try search)")]
    BothSidesOdd { k: usize, l: usize },
    #[error("Fibonacci labels overflow 64 bits for K_{0}")]
    Overflow(usize),
    #[error("constructed labeling failed verification: {0}")]
    VerificationFailed(String),
}

fn finish(graph: Graph, labeling: Labeling) -> Result<ConstructionResult, ConstructionError> {
    let verdict =
        verify_esd(&graph, &labeling, true).map_err(|e| ConstructionError::VerificationFailed(e.to_string()))?;
    if !verdict.esd {
        return Err(ConstructionError::VerificationFailed(format!("{:?}", verdict.conflict)));
    }
    let pool_size = labeling.pool();
    Ok(ConstructionResult {
        canonical: pool_size == graph.n() as Label,
        graph,
        labeling,
        pool_size,
    })
}

/// Labels vertices by their position in a breadth-first search from `root`
/// (neighbors visited by increasing index): the root gets 1, and so on.
pub fn label_tree_bfs(g: &Graph, root: Vertex) -> Result<ConstructionResult, ConstructionError> {
    if !g.is_tree() {
        return Err(ConstructionError::NotATree);
    }
    if root == 0 || root > g.n() {
        return Err(ConstructionError::BadRoot(root));
    }
    let mut phi = Labeling::empty(g.n(), g.n() as Label);
    for (i, v) in g.bfs_order(root).into_iter().enumerate() {
        phi.set(v, i as Label + 1).expect("BFS position lies in the pool");
    }
    finish(g.clone(), phi)
}

/// Canonical labels of `C_n` in circular order: `1..n` for odd `n`; for
/// even `n` the last two labels are swapped.
pub fn cycle_labels(n: usize) -> Vec<Label> {
    let mut labels: Vec<Label> = (1..=n as Label).collect();
    if n.is_multiple_of(2) && n >= 2 {
        labels.swap(n - 2, n - 1);
    }
    labels
}

/// Canonical labeling of `C_n`, `n >= 3`. Path edges get odd weights; for
/// odd `n` the closing edge gets the even weight `n + 1`, for even `n` the
/// two even weights are `n` and `2n - 2`.
pub fn label_cycle(n: usize) -> Result<ConstructionResult, ConstructionError> {
    let g = build_graph(GraphFamily::Cycle(n))?;
    let phi = Labeling::from_labels(n as Label, &cycle_labels(n)).expect("labels lie in the pool");
    finish(g, phi)
}

/// `K_{p,q}` with `p <= q` (parameters are swapped otherwise).
///
/// * `p == 1`: every canonical labeling works; the identity is returned.
/// * `p == 2`: labels `1` and `n` on the small part, `2..n-1` on the other.
/// * `p >= 3`: no canonical labeling exists.
pub fn label_complete_bipartite(p: usize, q: usize) -> Result<Constructed, ConstructionError> {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    let g = build_graph(GraphFamily::CompleteBipartite(p, q))?;
    let n = p + q;
    match p {
        1 => Ok(Constructed::Labeled(finish(g, Labeling::identity(n))?)),
        2 => {
            let mut labels: Vec<Label> = vec![1, n as Label];
            labels.extend(2..n as Label);
            let phi = Labeling::from_labels(n as Label, &labels).expect("labels lie in the pool");
            Ok(Constructed::Labeled(finish(g, phi)?))
        }
        _ => Ok(Constructed::NoneExists {
            graph: g,
            reason: "K_{p,q} with both parts of size at least 3 has no canonical ESD labeling",
        }),
    }
}

/// `K_{2,n-2}` plus the edge inside the small part (`K_2`, `K_3` for
/// `n = 2, 3`): an ESD graph with the maximum `2n - 3` edges. Uses every
/// weight in `3..=2n-1` exactly once.
pub fn label_tight_extremal(n: usize) -> Result<ConstructionResult, ConstructionError> {
    let g = build_graph(GraphFamily::TightExtremal(n))?;
    let phi = if n <= 3 {
        Labeling::identity(n)
    } else {
        let mut labels: Vec<Label> = vec![1, n as Label];
        labels.extend(2..n as Label);
        Labeling::from_labels(n as Label, &labels).expect("labels lie in the pool")
    };
    finish(g, phi)
}

// Canonical labelings of F_2..F_7 (path v_1..v_{n-1}, centre v_n), found
// by the exact solver and checked again in tests.
const FAN_LABELS: [&[Label]; 6] = [
    &[1, 2],
    &[1, 2, 3],
    &[2, 1, 3, 4],
    &[1, 3, 5, 4, 2],
    &[2, 1, 5, 6, 4, 3],
    &[3, 1, 2, 6, 7, 5, 4],
];

/// Fans `F_n` have a canonical ESD labeling exactly when `n <= 7`.
pub fn label_fan(n: usize) -> Result<Constructed, ConstructionError> {
    let g = build_graph(GraphFamily::Fan(n))?;
    if n >= 8 {
        return Ok(Constructed::NoneExists {
            graph: g,
            reason: "fans on 8 or more vertices have no canonical ESD labeling",
        });
    }
    let phi = Labeling::from_labels(n as Label, FAN_LABELS[n - 2]).expect("fixture lies in the pool");
    Ok(Constructed::Labeled(finish(g, phi)?))
}

/// Row-major identity labeling of a grid with an even number of columns.
///
/// If only `l` is even the grid is built transposed (`l` columns, `k`
/// rows) so the even side is the row length; the returned graph reflects
/// that.
pub fn label_grid(k: usize, l: usize) -> Result<ConstructionResult, ConstructionError> {
    let (cols, rows) = match (k.is_multiple_of(2), l.is_multiple_of(2)) {
        (true, _) => (k, l),
        (false, true) => (l, k),
        (false, false) => return Err(ConstructionError::BothSidesOdd { k, l }),
    };
    let g = build_graph(GraphFamily::Grid(cols, rows))?;
    finish(g, Labeling::identity(cols * rows))
}

/// Labels the generalized sunlet `S_k^p`.
///
/// For odd `k` and even `p` the identity labeling is canonical. Otherwise
/// the cycle gets the labels of [`label_cycle`] and the path vertices are
/// labeled greedily: starting from label `2k - 1`, the next label goes to
/// the unlabeled neighbor of the smallest-labeled vertex that still has
/// one. Each step creates a weight larger than all earlier ones.
///
/// The pool reported is the largest label used. For `p >= 2` this comes to
/// `(p + 1)k - 2`; for `p = 1` the graph is `C_k` and the labeling is
/// canonical.
pub fn label_sunlet(k: usize, p: usize) -> Result<ConstructionResult, ConstructionError> {
    let g = build_graph(GraphFamily::Sunlet(k, p))?;
    let n = k * p;
    if k % 2 == 1 && p.is_multiple_of(2) {
        return finish(g, Labeling::identity(n));
    }
    let cycle_vertex = |i: usize| (i - 1) * p + 1;
    let mut labels: Vec<Label> = vec![0; n + 1];
    for (i, a) in cycle_labels(k).into_iter().enumerate() {
        labels[cycle_vertex(i + 1)] = a;
    }
    let mut next = 2 * k as Label - 1;
    loop {
        let anchor = g
            .vertices()
            .filter(|&v| labels[v] != 0 && g.neighbors(v).iter().any(|&u| labels[u] == 0))
            .min_by_key(|&v| labels[v]);
        let Some(anchor) = anchor else { break };
        let target = *g
            .neighbors(anchor)
            .iter()
            .find(|&&u| labels[u] == 0)
            .expect("anchor has an unlabeled neighbor");
        labels[target] = next;
        next += 1;
    }
    let pool = labels.iter().copied().max().unwrap_or(0);
    let phi = Labeling::from_labels(pool, &labels[1..]).expect("labels lie in the pool");
    finish(g, phi)
}

/// Fibonacci numbers `F_0 = 0, F_1 = 1, ...` up to `F_m`, or `None` on overflow.
pub fn fibonacci(m: usize) -> Option<Vec<Label>> {
    let mut fib: Vec<Label> = vec![0, 1];
    while fib.len() <= m {
        let len = fib.len();
        fib.push(fib[len - 1].checked_add(fib[len - 2])?);
    }
    fib.truncate(m + 1);
    Some(fib)
}

/// `K_n` labeled `v_i -> F_{i+1}` with pool `F_{n+1}`. Every new label
/// exceeds the largest sum of two earlier ones, so all sums differ.
pub fn label_complete_fibonacci(n: usize) -> Result<ConstructionResult, ConstructionError> {
    let g = build_graph(GraphFamily::Complete(n))?;
    let fib = fibonacci(n + 1).ok_or(ConstructionError::Overflow(n))?;
    // the largest weight F_{n+1} + F_n must fit as well
    if fib[n + 1].checked_add(fib[n]).is_none() {
        return Err(ConstructionError::Overflow(n));
    }
    let phi = Labeling::from_labels(fib[n + 1], &fib[2..=n + 1]).expect("labels lie in the pool");
    finish(g, phi)
}

/// Labels any family with its closed-form construction. Trees (paths, stars,
/// random trees) use the breadth-first labeling from `v1`; complete graphs
/// use the Fibonacci labeling.
pub fn construct(family: GraphFamily) -> Result<Constructed, ConstructionError> {
    use GraphFamily::*;
    let labeled = |r: ConstructionResult| Ok(Constructed::Labeled(r));
    match family {
        Path(_) | Star(_) | RandomTree { .. } => labeled(label_tree_bfs(&build_graph(family)?, 1)?),
        Cycle(n) => labeled(label_cycle(n)?),
        CompleteBipartite(p, q) => label_complete_bipartite(p, q),
        TightExtremal(n) => labeled(label_tight_extremal(n)?),
        Fan(n) => label_fan(n),
        Grid(k, l) => labeled(label_grid(k, l)?),
        Sunlet(k, p) => labeled(label_sunlet(k, p)?),
        Complete(n) => labeled(label_complete_fibonacci(n)?),
    }
}
