//! ESD verification and edge-weight computation.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::labeling::{Label, Labeling, LabelingError};

/// Why a labeling fails to be ESD.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Conflict {
    /// Two vertices share a label.
    DuplicateLabel {
        first: Vertex,
        second: Vertex,
        label: Label,
    },
    /// Two edges share a weight. `first` precedes `second` in edge order.
    WeightClash { first: Edge, second: Edge, weight: Label },
}

/// Result of [`verify_esd`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub esd: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict: Option<Conflict>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("invalid labeling: {0}")]
    InvalidLabeling(#[from] LabelingError),
}

/// Checks that `phi` is injective and that all edges with both endpoints
/// labeled carry pairwise distinct weights.
///
/// Partial labelings are accepted unless `require_total` is set. The first
/// conflict found in vertex/edge order is reported.
pub fn verify_esd(g: &Graph, phi: &Labeling, require_total: bool) -> Result<Verdict, VerifyError> {
    phi.check_against(g)?;
    if require_total {
        if let Some(v) = g.vertices().find(|&v| phi.get(v).is_none()) {
            return Err(LabelingError::NotTotal(v).into());
        }
    }

    let mut owner: HashMap<Label, Vertex> = HashMap::with_capacity(g.n());
    for (v, a) in phi.assigned() {
        if let Some(&u) = owner.get(&a) {
            return Ok(Verdict {
                esd: false,
                conflict: Some(Conflict::DuplicateLabel {
                    first: u,
                    second: v,
                    label: a,
                }),
            });
        }
        owner.insert(a, v);
    }

    let mut seen: HashMap<Label, Edge> = HashMap::with_capacity(g.edge_count());
    for (e, w) in edge_weights(g, phi) {
        if let Some(&first) = seen.get(&w) {
            return Ok(Verdict {
                esd: false,
                conflict: Some(Conflict::WeightClash {
                    first,
                    second: e,
                    weight: w,
                }),
            });
        }
        seen.insert(w, e);
    }
    Ok(Verdict {
        esd: true,
        conflict: None,
    })
}

/// Weights of the edges whose endpoints are both labeled, in edge order.
pub fn edge_weights(g: &Graph, phi: &Labeling) -> Vec<(Edge, Label)> {
    g.edges()
        .iter()
        .filter_map(|e| Some((*e, phi.get(e.u)? + phi.get(e.v)?)))
        .collect()
}

/// Fast reject for canonical labelings: an `n`-vertex graph with more than
/// `2n - 3` edges has none, since canonical weights lie in `[3, 2n - 1]`.
///
/// `true` only means the edge count does not exclude one.
pub fn canonical_feasible(g: &Graph) -> bool {
    if g.n() < 2 {
        return true;
    }
    g.edge_count() <= 2 * g.n() - 3
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    #[test]
    fn path_identity_is_esd() {
        let p4 = Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let v = verify_esd(&p4, &Labeling::identity(4), true).unwrap();
        assert!(v.esd);
        assert_eq!(v.conflict, None);
    }

    #[test]
    fn single_edge_is_esd() {
        let k2 = Graph::new(2, [(1, 2)]).unwrap();
        let phi = Labeling::identity(2);
        assert!(verify_esd(&k2, &phi, true).unwrap().esd);
        assert_eq!(edge_weights(&k2, &phi), vec![(Edge::new(1, 2), 3)]);
    }

    #[test]
    fn four_cycle_in_order_clashes() {
        // 1 + 4 = 2 + 3
        let v = verify_esd(&cycle(4), &Labeling::identity(4), true).unwrap();
        assert!(!v.esd);
        assert_eq!(
            v.conflict,
            Some(Conflict::WeightClash {
                first: Edge::new(1, 4),
                second: Edge::new(2, 3),
                weight: 5
            })
        );
    }

    #[test]
    fn five_cycle_weights() {
        let w: Vec<Label> = edge_weights(&cycle(5), &Labeling::identity(5))
            .into_iter()
            .map(|(_, w)| w)
            .collect();
        // edges sorted: 12, 15, 23, 34, 45
        assert_eq!(w, vec![3, 6, 5, 7, 9]);
    }

    #[test]
    fn duplicate_label_reported() {
        let p3 = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
        let phi = Labeling::from_labels(3, &[2, 1, 2]).unwrap();
        let v = verify_esd(&p3, &phi, true).unwrap();
        assert_eq!(
            v.conflict,
            Some(Conflict::DuplicateLabel {
                first: 1,
                second: 3,
                label: 2
            })
        );
    }

    #[test]
    fn partial_and_total_requirements() {
        let p3 = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
        let mut phi = Labeling::empty(3, 3);
        phi.set(2, 1).unwrap();
        assert!(verify_esd(&p3, &phi, false).unwrap().esd);
        assert_eq!(
            verify_esd(&p3, &phi, true),
            Err(VerifyError::InvalidLabeling(LabelingError::NotTotal(1)))
        );
        let small = Labeling::identity(2);
        assert!(verify_esd(&p3, &small, false).is_err());
    }

    #[test]
    fn edge_bound() {
        let k4 = Graph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(!canonical_feasible(&k4));
        let star = Graph::new(5, [(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        assert!(canonical_feasible(&star));
        assert!(canonical_feasible(&Graph::empty(1)));
    }
}
