use serde::{Deserialize, Serialize};

use super::ring::RingSpec;

/// `⊕_k Ring(−a_k)`: `twists[k] = a_k` is the degree of the k-th generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedFreeModule {
    ring: RingSpec,
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(ring: &RingSpec, twists: Vec<i64>) -> Self {
        GradedFreeModule {
            ring: ring.clone(),
            twists,
        }
    }

    /// `rank` generators all in degree `degree`.
    pub fn uniform(ring: &RingSpec, rank: usize, degree: i64) -> Self {
        Self::new(ring, vec![degree; rank])
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn shifted(&self, shift: i64) -> Self {
        Self::new(&self.ring, self.twists.iter().map(|a| a + shift).collect())
    }

    pub fn negated(&self) -> Self {
        Self::new(&self.ring, self.twists.iter().map(|a| -a).collect())
    }

    /// `self ⊕ other`.
    pub fn direct_sum(&self, other: &GradedFreeModule) -> Self {
        let mut t = self.twists.clone();
        t.extend_from_slice(&other.twists);
        Self::new(&self.ring, t)
    }

    pub fn min_twist(&self) -> Option<i64> {
        self.twists.iter().copied().min()
    }

    pub fn max_twist(&self) -> Option<i64> {
        self.twists.iter().copied().max()
    }

    /// Dimension of the degree-`d` piece.
    pub fn hilbert_function(&self, d: i64) -> usize {
        self.twists
            .iter()
            .map(|a| self.ring.basis_size(d - a))
            .sum()
    }
}
