//! Vertex labelings drawing from the pool `{1, ..., l}`.

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// A vertex label. Labels are positive.
pub type Label = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("label {label} on v{vertex} outside pool 1..={pool}")]
    LabelOutsidePool { vertex: Vertex, label: Label, pool: Label },
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("labeling covers {found} vertices but the graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("labeling is not total: v{0} is unlabeled")]
    NotTotal(Vertex),
}

/// Partial map from vertices `1..=n` to labels in `1..=pool`.
///
/// Injectivity is not enforced on construction: the verifier reports
/// repeated labels as a conflict instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    pool: Label,
    // slots[v] for v in 1..=n; slot 0 unused.
    slots: Vec<Option<Label>>,
}

impl Labeling {
    /// The empty labeling on `n` vertices.
    pub fn empty(n: usize, pool: Label) -> Self {
        Labeling {
            pool,
            slots: vec![None; n + 1],
        }
    }

    /// Total labeling with `labels[i]` on vertex `i + 1`.
    pub fn from_labels(pool: Label, labels: &[Label]) -> Result<Self, LabelingError> {
        let mut out = Self::empty(labels.len(), pool);
        for (i, &a) in labels.iter().enumerate() {
            out.set(i + 1, a)?;
        }
        Ok(out)
    }

    /// Canonical labeling `v_i -> i`.
    pub fn identity(n: usize) -> Self {
        let labels: Vec<Label> = (1..=n as Label).collect();
        Self::from_labels(n as Label, &labels).expect("identity labels lie in the pool")
    }

    pub fn pool(&self) -> Label {
        self.pool
    }

    /// Number of vertices the labeling is defined over.
    pub fn n(&self) -> usize {
        self.slots.len() - 1
    }

    pub fn get(&self, v: Vertex) -> Option<Label> {
        self.slots.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, label: Label) -> Result<(), LabelingError> {
        if v == 0 || v > self.n() {
            return Err(LabelingError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        if label == 0 || label > self.pool {
            return Err(LabelingError::LabelOutsidePool {
                vertex: v,
                label,
                pool: self.pool,
            });
        }
        self.slots[v] = Some(label);
        Ok(())
    }

    pub fn unset(&mut self, v: Vertex) {
        if let Some(slot) = self.slots.get_mut(v) {
            *slot = None;
        }
    }

    pub fn is_total(&self) -> bool {
        self.slots[1..].iter().all(Option::is_some)
    }

    pub fn assigned_count(&self) -> usize {
        self.slots[1..].iter().filter(|s| s.is_some()).count()
    }

    /// `(vertex, label)` pairs in vertex order.
    pub fn assigned(&self) -> impl Iterator<Item = (Vertex, Label)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(v, s)| s.map(|a| (v, a)))
    }

    /// Labels of a total labeling in vertex order.
    pub fn to_vec(&self) -> Result<Vec<Label>, LabelingError> {
        (1..=self.n())
            .map(|v| self.get(v).ok_or(LabelingError::NotTotal(v)))
            .collect()
    }

    /// Largest label in use, 0 when nothing is assigned.
    pub fn max_label(&self) -> Label {
        self.assigned().map(|(_, a)| a).max().unwrap_or(0)
    }

    /// Checks that the labeling is sized for `g` and every label lies in the pool.
    pub fn check_against(&self, g: &Graph) -> Result<(), LabelingError> {
        if self.n() != g.n() {
            return Err(LabelingError::SizeMismatch {
                expected: g.n(),
                found: self.n(),
            });
        }
        for (v, a) in self.assigned() {
            if a == 0 || a > self.pool {
                return Err(LabelingError::LabelOutsidePool {
                    vertex: v,
                    label: a,
                    pool: self.pool,
                });
            }
        }
        Ok(())
    }

    /// Same assignment with a different pool. Fails if a label falls outside it.
    pub fn with_pool(&self, pool: Label) -> Result<Self, LabelingError> {
        let mut out = Self::empty(self.n(), pool);
        for (v, a) in self.assigned() {
            out.set(v, a)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_rejects_out_of_pool() {
        let mut phi = Labeling::empty(3, 3);
        assert!(phi.set(1, 3).is_ok());
        assert_eq!(
            phi.set(2, 4),
            Err(LabelingError::LabelOutsidePool {
                vertex: 2,
                label: 4,
                pool: 3
            })
        );
        assert!(phi.set(2, 0).is_err());
        assert!(phi.set(4, 1).is_err());
        assert!(!phi.is_total());
        assert_eq!(phi.assigned().collect::<Vec<_>>(), vec![(1, 3)]);
    }

    #[test]
    fn identity_is_total() {
        let phi = Labeling::identity(4);
        assert!(phi.is_total());
        assert_eq!(phi.to_vec().unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(phi.max_label(), 4);
    }
}
