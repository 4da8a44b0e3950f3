//! Graph families and their generators.
//!
//! Vertex numbering follows the labelings built on top of them:
//!
//! * path `P_n`: `v_i v_{i+1}`;
//! * star `S_q`: centre `v_1`, leaves `v_2..v_{q+1}`;
//! * cycle `C_n`: `v_1..v_n` in circular order;
//! * `K_{p,q}`: part `v_1..v_p`, part `v_{p+1}..v_{p+q}`;
//! * tight extremal graph: `x_1 = v_1`, `x_2 = v_2`, `y_i = v_{i+2}`;
//! * fan `F_n`: path `v_1..v_{n-1}`, centre `v_n`;
//! * grid `G_{k,l}`: `k` columns and `l` rows, row `i` is `v_{(i-1)k+1}..v_{ik}`;
//! * sunlet `S_k^p`: cycle vertex `c_i = v_{(i-1)p+1}`, its path runs
//!   `v_{(i-1)p+1}..v_{ip}` (paths have order `p` including `c_i`);
//! * complete `K_n`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    Path(usize),
    Star(usize),
    /// Uniformly random labeled tree drawn from a Prüfer sequence.
    RandomTree {
        n: usize,
        seed: u64,
    },
    Cycle(usize),
    CompleteBipartite(usize, usize),
    TightExtremal(usize),
    Fan(usize),
    Grid(usize, usize),
    Sunlet(usize, usize),
    Complete(usize),
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

impl GraphFamily {
    pub fn validate(&self) -> Result<(), GraphError> {
        use GraphFamily::*;
        match *self {
            Path(n) | Complete(n) | RandomTree { n, .. } if n < 1 => Err(invalid("need n >= 1")),
            Star(q) if q < 1 => Err(invalid("star needs at least one leaf")),
            Cycle(n) if n < 3 => Err(invalid("cycle needs n >= 3")),
            CompleteBipartite(p, q) if p < 1 || q < 1 => Err(invalid("parts must be non-empty")),
            TightExtremal(n) | Fan(n) if n < 2 => Err(invalid("need n >= 2")),
            Grid(k, l) if k < 1 || l < 1 => Err(invalid("grid needs k, l >= 1")),
            Sunlet(k, p) if k < 3 || p < 1 => Err(invalid("sunlet needs k >= 3, p >= 1")),
            _ => Ok(()),
        }
    }

    /// Number of vertices the generated graph has.
    pub fn vertex_count(&self) -> usize {
        use GraphFamily::*;
        match *self {
            Path(n) | Cycle(n) | TightExtremal(n) | Fan(n) | Complete(n) => n,
            RandomTree { n, .. } => n,
            Star(q) => q + 1,
            CompleteBipartite(p, q) => p + q,
            Grid(k, l) => k * l,
            Sunlet(k, p) => k * p,
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphFamily::*;
        match *self {
            Path(n) => write!(f, "path:{n}"),
            Star(q) => write!(f, "star:{q}"),
            RandomTree { n, seed } => write!(f, "tree:{n},{seed}"),
            Cycle(n) => write!(f, "cycle:{n}"),
            CompleteBipartite(p, q) => write!(f, "kpq:{p},{q}"),
            TightExtremal(n) => write!(f, "tight:{n}"),
            Fan(n) => write!(f, "fan:{n}"),
            Grid(k, l) => write!(f, "grid:{k}x{l}"),
            Sunlet(k, p) => write!(f, "sunlet:{k},{p}"),
            Complete(n) => write!(f, "complete:{n}"),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = GraphError;

    /// Parses `fan:8`, `grid:4x3`, `sunlet:5,2`, `kpq:2,7`, `complete:10`,
    /// `tight:12`, `cycle:9`, `path:6`, `star:5`, `tree:20` or `tree:20,7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("expected <family>:<params>, got {s:?}")))?;
        let nums = |sep: char| -> Result<Vec<usize>, GraphError> {
            params
                .split(sep)
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| invalid(format!("bad number {x:?} in {s:?}")))
                })
                .collect()
        };
        let one = || -> Result<usize, GraphError> {
            match nums(',')?.as_slice() {
                [a] => Ok(*a),
                _ => Err(invalid(format!("{kind} takes one parameter"))),
            }
        };
        let two = |sep: char| -> Result<(usize, usize), GraphError> {
            match nums(sep)?.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(invalid(format!("{kind} takes two parameters"))),
            }
        };
        let family = match kind {
            "path" => GraphFamily::Path(one()?),
            "star" => GraphFamily::Star(one()?),
            "cycle" => GraphFamily::Cycle(one()?),
            "tight" => GraphFamily::TightExtremal(one()?),
            "fan" => GraphFamily::Fan(one()?),
            "complete" => GraphFamily::Complete(one()?),
            "kpq" => {
                let (p, q) = two(',')?;
                GraphFamily::CompleteBipartite(p, q)
            }
            "grid" => {
                let (k, l) = two('x')?;
                GraphFamily::Grid(k, l)
            }
            "sunlet" => {
                let (k, p) = two(',')?;
                GraphFamily::Sunlet(k, p)
            }
            "tree" => match nums(',')?.as_slice() {
                [n] => GraphFamily::RandomTree { n: *n, seed: 0 },
                [n, seed] => GraphFamily::RandomTree {
                    n: *n,
                    seed: *seed as u64,
                },
                _ => return Err(invalid("tree takes n or n,seed")),
            },
            other => return Err(invalid(format!("unknown family {other:?}"))),
        };
        family.validate()?;
        Ok(family)
    }
}

/// Builds the graph of a family with the vertex numbering described in the
/// module docs.
pub fn build_graph(family: GraphFamily) -> Result<Graph, GraphError> {
    use GraphFamily::*;
    family.validate()?;
    match family {
        Path(n) => Graph::new(n, (1..n).map(|i| (i, i + 1))),
        Star(q) => Graph::new(q + 1, (2..=q + 1).map(|i| (1, i))),
        RandomTree { n, seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            Ok(random_tree(n, &mut rng))
        }
        Cycle(n) => Graph::new(n, (1..=n).map(|i| (i, i % n + 1))),
        CompleteBipartite(p, q) => Graph::new(p + q, (1..=p).flat_map(|a| (p + 1..=p + q).map(move |b| (a, b)))),
        TightExtremal(n) => match n {
            2 => Graph::new(2, [(1, 2)]),
            3 => Graph::new(3, [(1, 2), (2, 3), (1, 3)]),
            _ => Graph::new(n, std::iter::once((1, 2)).chain((3..=n).flat_map(|y| [(1, y), (2, y)]))),
        },
        Fan(n) => Graph::new(n, (1..n - 1).map(|i| (i, i + 1)).chain((1..n).map(|i| (i, n)))),
        Grid(k, l) => {
            let at = |row: usize, col: usize| (row - 1) * k + col;
            let mut edges = Vec::new();
            for row in 1..=l {
                for col in 1..=k {
                    if col < k {
                        edges.push((at(row, col), at(row, col + 1)));
                    }
                    if row < l {
                        edges.push((at(row, col), at(row + 1, col)));
                    }
                }
            }
            Graph::new(k * l, edges)
        }
        Sunlet(k, p) => {
            let cycle_vertex = |i: usize| (i - 1) * p + 1;
            let mut edges: Vec<(Vertex, Vertex)> =
                (1..=k).map(|i| (cycle_vertex(i), cycle_vertex(i % k + 1))).collect();
            for i in 1..=k {
                let start = cycle_vertex(i);
                edges.extend((start..start + p - 1).map(|v| (v, v + 1)));
            }
            Graph::new(k * p, edges)
        }
        Complete(n) => Graph::new(n, (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)))),
    }
}

/// Uniform random labeled tree on `n` vertices, decoded from a random
/// Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    if n == 2 {
        return Graph::new(2, [(1, 2)]).expect("valid edge");
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    let mut degree = vec![1usize; n + 1];
    for &x in &code {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<Vertex>> =
        (1..=n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &code {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(std::cmp::Reverse(x));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().unwrap();
    let std::cmp::Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Graph::new(n, edges).expect("Prüfer decoding yields a simple tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn family_sizes() {
        let fan6 = build_graph(GraphFamily::Fan(6)).unwrap();
        assert_eq!((fan6.n(), fan6.edge_count()), (6, 9));
        let sun = build_graph(GraphFamily::Sunlet(3, 2)).unwrap();
        assert_eq!((sun.n(), sun.edge_count()), (6, 6));
        let k25 = build_graph(GraphFamily::CompleteBipartite(2, 5)).unwrap();
        assert_eq!(k25.edge_count(), 10);
        let tight = build_graph(GraphFamily::TightExtremal(7)).unwrap();
        assert_eq!(tight.edge_count(), 2 * 7 - 3);
        let k6 = build_graph(GraphFamily::Complete(6)).unwrap();
        assert_eq!(k6.edge_count(), 15);
        let grid = build_graph(GraphFamily::Grid(4, 3)).unwrap();
        assert_eq!(grid.edge_count(), 3 * 3 + 4 * 2);
    }

    #[test]
    fn grid_2x2_is_four_cycle() {
        let g = build_graph(GraphFamily::Grid(2, 2)).unwrap();
        let c4 = Graph::new(4, [(1, 2), (2, 4), (4, 3), (3, 1)]).unwrap();
        assert_eq!(g, c4);
    }

    #[test]
    fn sunlet_with_single_vertex_paths_is_cycle() {
        let g = build_graph(GraphFamily::Sunlet(4, 1)).unwrap();
        assert_eq!(g, build_graph(GraphFamily::Cycle(4)).unwrap());
    }

    #[test]
    fn fan_small_cases() {
        assert_eq!(build_graph(GraphFamily::Fan(2)).unwrap().edge_count(), 1);
        assert_eq!(
            build_graph(GraphFamily::Fan(3)).unwrap(),
            build_graph(GraphFamily::Complete(3)).unwrap()
        );
    }

    #[test]
    fn parse_grammar() {
        let cases = [
            ("fan:8", GraphFamily::Fan(8)),
            ("grid:4x3", GraphFamily::Grid(4, 3)),
            ("sunlet:5,2", GraphFamily::Sunlet(5, 2)),
            ("kpq:2,7", GraphFamily::CompleteBipartite(2, 7)),
            ("complete:10", GraphFamily::Complete(10)),
            ("tight:12", GraphFamily::TightExtremal(12)),
            ("cycle:9", GraphFamily::Cycle(9)),
            ("tree:20,3", GraphFamily::RandomTree { n: 20, seed: 3 }),
        ];
        for (text, family) in cases {
            assert_eq!(text.parse::<GraphFamily>().unwrap(), family);
            assert_eq!(family.to_string().parse::<GraphFamily>().unwrap(), family);
        }
        assert!("cycle:2".parse::<GraphFamily>().is_err());
        assert!("grid:4,3".parse::<GraphFamily>().is_err());
        assert!("wheel:5".parse::<GraphFamily>().is_err());
        assert!("fan".parse::<GraphFamily>().is_err());
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 1..40 {
            let t = random_tree(n, &mut rng);
            assert!(t.is_tree(), "n = {n}");
        }
    }
}
