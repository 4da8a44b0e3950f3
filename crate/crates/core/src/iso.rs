//! Automorphisms and isomorphism of labelings over a fixed graph.
//!
//! Two labelings `a`, `b` of `G` are isomorphic when some automorphism `f`
//! satisfies `a(v) = b(f(v))` for every vertex. For injective total
//! labelings `f` is forced to be `b⁻¹ ∘ a`, so the test only has to check
//! that this one permutation preserves edges.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::labeling::{Label, Labeling};

/// Largest graph for which [`automorphisms`] enumerates by search.
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("labeling must be total and injective on the graph")]
    NotTotalInjective,
    #[error("automorphism enumeration unsupported for n = {n} (cap {cap})")]
    UnsupportedSize { n: usize, cap: usize },
}

fn inverse(g: &Graph, phi: &Labeling) -> Result<HashMap<Label, Vertex>, IsoError> {
    if phi.n() != g.n() {
        return Err(IsoError::NotTotalInjective);
    }
    let mut inv = HashMap::with_capacity(g.n());
    for v in g.vertices() {
        let a = phi.get(v).ok_or(IsoError::NotTotalInjective)?;
        if inv.insert(a, v).is_some() {
            return Err(IsoError::NotTotalInjective);
        }
    }
    Ok(inv)
}

/// True iff an automorphism `f` of `g` has `a(v) = b(f(v))` for all `v`.
pub fn labelings_isomorphic(g: &Graph, a: &Labeling, b: &Labeling) -> Result<bool, IsoError> {
    inverse(g, a)?;
    let b_inv = inverse(g, b)?;
    let mut f = vec![0; g.n() + 1];
    for v in g.vertices() {
        match b_inv.get(&a.get(v).unwrap()) {
            Some(&image) => f[v] = image,
            None => return Ok(false),
        }
    }
    Ok(is_automorphism(g, &f))
}

/// `perm[v]` is the image of `v`; `perm[0]` is ignored.
pub fn is_automorphism(g: &Graph, perm: &[Vertex]) -> bool {
    let n = g.n();
    if perm.len() != n + 1 {
        return false;
    }
    let mut hit = vec![false; n + 1];
    for &x in &perm[1..] {
        if x == 0 || x > n || hit[x] {
            return false;
        }
        hit[x] = true;
    }
    // A bijection on vertices maps the edge set injectively, so equal sizes
    // make "edges go to edges" sufficient.
    g.edges().iter().all(|e| g.has_edge(perm[e.u], perm[e.v]))
}

/// All automorphisms of `g` as image vectors (index 0 unused).
///
/// Complete bipartite graphs use their closed-form group (permute within
/// each part, swap equal parts) at any size. Other graphs are searched by
/// extending partial maps vertex by vertex, matching degrees and checking
/// adjacency to already-mapped vertices; they must have at most `cap`
/// vertices.
pub fn automorphisms(g: &Graph, cap: usize) -> Result<Vec<Vec<Vertex>>, IsoError> {
    if let Some((p, q)) = g.complete_bipartite_parts() {
        return Ok(complete_bipartite_automorphisms(g.n(), &p, &q));
    }
    if g.n() > cap {
        return Err(IsoError::UnsupportedSize { n: g.n(), cap });
    }
    let mut out = Vec::new();
    let mut image = vec![0; g.n() + 1];
    let mut used = vec![false; g.n() + 1];
    extend(g, 1, &mut image, &mut used, &mut out);
    Ok(out)
}

fn extend(g: &Graph, v: Vertex, image: &mut Vec<Vertex>, used: &mut Vec<bool>, out: &mut Vec<Vec<Vertex>>) {
    if v > g.n() {
        out.push(image.clone());
        return;
    }
    for x in g.vertices() {
        if used[x] || g.degree(x) != g.degree(v) {
            continue;
        }
        let consistent = (1..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], x));
        if !consistent {
            continue;
        }
        image[v] = x;
        used[x] = true;
        extend(g, v + 1, image, used, out);
        used[x] = false;
    }
    image[v] = 0;
}

fn complete_bipartite_automorphisms(n: usize, p: &[Vertex], q: &[Vertex]) -> Vec<Vec<Vertex>> {
    let p_perms = permutations(p);
    let q_perms = permutations(q);
    let mut out = Vec::new();
    let mut push = |from_p: &[Vertex], to_p: &[Vertex], from_q: &[Vertex], to_q: &[Vertex]| {
        let mut image = vec![0; n + 1];
        for (&x, &y) in from_p.iter().zip(to_p) {
            image[x] = y;
        }
        for (&x, &y) in from_q.iter().zip(to_q) {
            image[x] = y;
        }
        out.push(image);
    };
    for pp in &p_perms {
        for qp in &q_perms {
            push(p, pp, q, qp);
            if p.len() == q.len() {
                push(p, qp, q, pp);
            }
        }
    }
    out
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
