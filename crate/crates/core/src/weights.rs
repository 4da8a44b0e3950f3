//! Occupancy of edge-weights.

use std::collections::HashSet;

use crate::labeling::Label;

// Pools up to this size get a dense bitmap over `[0, 2 * pool]`.
const DENSE_POOL_LIMIT: Label = 1 << 22;

/// Set of edge-weights in use.
///
/// For a pool `{1, ..., l}` every weight lies in `[3, 2l - 1]`, so ordinary
/// pools use a bitmap and membership is a single word test. Very large pools
/// (Fibonacci labelings of big complete graphs) fall back to hashing.
#[derive(Clone, Debug)]
pub enum WeightSet {
    Dense { words: Vec<u64>, len: usize },
    Sparse(HashSet<Label>),
}

impl WeightSet {
    pub fn for_pool(pool: Label) -> Self {
        if pool <= DENSE_POOL_LIMIT {
            let bits = 2 * pool as usize + 1;
            WeightSet::Dense {
                words: vec![0; bits.div_ceil(64)],
                len: 0,
            }
        } else {
            WeightSet::Sparse(HashSet::new())
        }
    }

    pub fn contains(&self, w: Label) -> bool {
        match self {
            WeightSet::Dense { words, .. } => {
                let i = w as usize;
                words.get(i / 64).is_some_and(|x| x >> (i % 64) & 1 == 1)
            }
            WeightSet::Sparse(set) => set.contains(&w),
        }
    }

    /// Records `w`; returns false if it was already present.
    ///
    /// Panics in dense mode if `w` exceeds `2 * pool`.
    pub fn insert(&mut self, w: Label) -> bool {
        match self {
            WeightSet::Dense { words, len } => {
                let i = w as usize;
                let word = &mut words[i / 64];
                let bit = 1u64 << (i % 64);
                if *word & bit != 0 {
                    return false;
                }
                *word |= bit;
                *len += 1;
                true
            }
            WeightSet::Sparse(set) => set.insert(w),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            WeightSet::Dense { len, .. } => *len,
            WeightSet::Sparse(set) => set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Weights in increasing order.
    pub fn to_sorted_vec(&self) -> Vec<Label> {
        match self {
            WeightSet::Dense { words, .. } => {
                let mut out = Vec::new();
                for (wi, &word) in words.iter().enumerate() {
                    let mut rest = word;
                    while rest != 0 {
                        let b = rest.trailing_zeros() as usize;
                        out.push((wi * 64 + b) as Label);
                        rest &= rest - 1;
                    }
                }
                out
            }
            WeightSet::Sparse(set) => {
                let mut out: Vec<Label> = set.iter().copied().collect();
                out.sort_unstable();
                out
            }
        }
    }
}
