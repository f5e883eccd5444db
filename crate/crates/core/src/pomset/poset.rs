use std::fmt;

use crate::error::PomsetError;
use crate::step::Letter;

/// Nodes are bit positions in a `u32`, so a poset has at most this many.
pub const MAX_NODES: usize = 32;

/// A finite labelled poset on nodes `0..n`.
///
/// `succ[i]` holds the strict successors of `i` as a bitmask; the stored
/// relation is always transitively closed and irreflexive, the reflexive
/// part of `≤` is implicit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LabelledPoset {
    labels: Vec<Letter>,
    succ: Vec<u32>,
}

pub(crate) fn bits(mask: u32) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub(crate) fn full(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl LabelledPoset {
    /// Builds a poset from labels and generating pairs `(x, y)` meaning
    /// `x ≤ y`. The reflexive-transitive closure is taken; pairs that would
    /// identify two distinct nodes are rejected.
    pub fn new(labels: Vec<Letter>, pairs: &[(usize, usize)]) -> Result<LabelledPoset, PomsetError> {
        let n = labels.len();
        if n > MAX_NODES {
            return Err(PomsetError::TooLarge { max: MAX_NODES, got: n });
        }
        let mut succ = vec![0u32; n];
        for &(x, y) in pairs {
            if x >= n {
                return Err(PomsetError::NodeOutOfRange(x));
            }
            if y >= n {
                return Err(PomsetError::NodeOutOfRange(y));
            }
            if x != y {
                succ[x] |= 1 << y;
            }
        }
        close(&mut succ);
        for (i, s) in succ.iter().enumerate() {
            if s & (1 << i) != 0 {
                return Err(PomsetError::Cyclic(i));
            }
        }
        Ok(LabelledPoset { labels, succ })
    }

    /// Builds directly from closed successor masks. Callers guarantee the
    /// relation is a strict partial order.
    pub(crate) fn from_closed(labels: Vec<Letter>, succ: Vec<u32>) -> LabelledPoset {
        debug_assert_eq!(labels.len(), succ.len());
        LabelledPoset { labels, succ }
    }

    pub fn empty() -> LabelledPoset {
        LabelledPoset::default()
    }

    /// An unordered family of letters.
    pub fn antichain(labels: Vec<Letter>) -> LabelledPoset {
        let n = labels.len();
        LabelledPoset {
            labels,
            succ: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Letter] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Letter {
        self.labels[i]
    }

    /// Strict order `i < j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.succ[i] & (1 << j) != 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i)
    }

    pub fn succ_mask(&self, i: usize) -> u32 {
        self.succ[i]
    }

    pub fn pred_mask(&self, i: usize) -> u32 {
        self.succ
            .iter()
            .enumerate()
            .filter(|(_, s)| *s & (1 << i) != 0)
            .fold(0, |m, (j, _)| m | (1 << j))
    }

    pub(crate) fn succ_masks(&self) -> &[u32] {
        &self.succ
    }

    /// All strict pairs `(i, j)` with `i < j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            out.extend(bits(self.succ[i]).map(|j| (i, j)));
        }
        out
    }

    /// Disjoint union; `other`'s nodes are shifted past `self`'s.
    pub fn par(&self, other: &LabelledPoset) -> LabelledPoset {
        assert!(self.len() + other.len() <= MAX_NODES, "poset exceeds {MAX_NODES} nodes");
        let shift = self.len();
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut succ = self.succ.clone();
        succ.extend(other.succ.iter().map(|s| s << shift));
        LabelledPoset { labels, succ }
    }

    /// Disjoint union with every node of `self` below every node of `other`.
    pub fn seq(&self, other: &LabelledPoset) -> LabelledPoset {
        assert!(self.len() + other.len() <= MAX_NODES, "poset exceeds {MAX_NODES} nodes");
        let shift = self.len();
        let upper = full(other.len()) << shift;
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut succ: Vec<u32> = self.succ.iter().map(|s| s | upper).collect();
        succ.extend(other.succ.iter().map(|s| s << shift));
        LabelledPoset { labels, succ }
    }

    /// Renumbers so that old node `order[k]` becomes new node `k`.
    pub fn reorder(&self, order: &[usize]) -> LabelledPoset {
        let n = self.len();
        debug_assert_eq!(order.len(), n);
        let mut pos = vec![0usize; n];
        for (k, &old) in order.iter().enumerate() {
            pos[old] = k;
        }
        let labels = order.iter().map(|&o| self.labels[o]).collect();
        let succ = order
            .iter()
            .map(|&o| bits(self.succ[o]).fold(0u32, |m, j| m | (1 << pos[j])))
            .collect();
        LabelledPoset { labels, succ }
    }

    /// The sub-poset induced by the nodes in `mask`, numbered in increasing
    /// original order.
    pub fn induced(&self, mask: u32) -> LabelledPoset {
        let order: Vec<usize> = bits(mask).collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &old) in order.iter().enumerate() {
            pos[old] = k;
        }
        let labels = order.iter().map(|&o| self.labels[o]).collect();
        let succ = order
            .iter()
            .map(|&o| bits(self.succ[o] & mask).fold(0u32, |m, j| m | (1 << pos[j])))
            .collect();
        LabelledPoset { labels, succ }
    }

    pub fn all_nodes(&self) -> u32 {
        full(self.len())
    }
}

/// Warshall closure over bitmask rows.
fn close(succ: &mut [u32]) {
    let n = succ.len();
    for k in 0..n {
        let bk = 1u32 << k;
        let sk = succ[k];
        for row in succ.iter_mut() {
            if *row & bk != 0 {
                *row |= sk;
            }
        }
    }
}

impl fmt::Debug for LabelledPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}:{l}")?;
        }
        write!(f, ";")?;
        for (k, (i, j)) in self.strict_pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, " {i}<{j}")?;
        }
        write!(f, "}}")
    }
}
