//! Small-graph catalogue: every connected graph on `n <= 6` vertices up to
//! isomorphism.

use std::collections::HashSet;

use crate::graph::Graph;

pub const MAX_CATALOG_N: usize = 6;

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices, ordered by edge count and then by edge mask.
///
/// Classes are found by brute force: each edge subset is reduced to the
/// smallest mask over all vertex permutations. Panics for `n > 6`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_CATALOG_N, "catalogue supports n <= {MAX_CATALOG_N}");
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms = permutations(n);
    // perm_edge[p][e] = index of the image of edge e under permutation p
    let perm_edge: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(a, b)| index(p[a], p[b])).collect())
        .collect();

    let mut seen = HashSet::new();
    let mut reps: Vec<u32> = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        if !connected(n, &pairs, mask) {
            continue;
        }
        let canon = perm_edge
            .iter()
            .map(|map| {
                let mut img = 0u32;
                let mut rest = mask;
                while rest != 0 {
                    let e = rest.trailing_zeros() as usize;
                    img |= 1 << map[e];
                    rest &= rest - 1;
                }
                img
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            reps.push(canon);
        }
    }
    reps.sort_by_key(|m| (m.count_ones(), *m));
    reps.into_iter()
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(a, b))| (a + 1, b + 1));
            Graph::new(n, edges).expect("catalogue edges are simple")
        })
        .collect()
}

/// All connected graphs with `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

fn connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 && (reach >> a & 1 == 1 || reach >> b & 1 == 1) {
                next |= 1 << a | 1 << b;
            }
        }
        if next == reach {
            return reach.count_ones() as usize == n;
        }
        reach = next;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
    heap(k - 1, cur, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        // connected graphs by order: 1, 1, 2, 6, 21, 112
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn members_are_connected() {
        for g in connected_graphs_up_to(5) {
            assert!(g.is_connected());
        }
        assert_eq!(permutations(4).len(), 24);
    }
}
