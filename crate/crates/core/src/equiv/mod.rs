//! Behavioural equivalences over finite LTSs.
//!
//! Strong bisimilarity is computed by Kanellakis–Smolka partition refinement
//! and cross-checked against a naive greatest-fixpoint computation. Weak
//! bisimilarity reduces to the strong case on the τ-saturated system.

mod preorder;
mod strong;
mod weak;

pub use preorder::{similarity_preorder, simulation_equivalent, trace_equivalent};
pub use strong::{
    bisimilar, bisimilarity_partition, bisimulation_violation, is_bisimulation, is_bisimulation_up_to,
    join_bisim, naive_bisim_fixpoint, JoinInput, Violation,
};
pub use weak::{is_sw_bisimulation, weak_bisimilar, weak_bisimilarity_partition, weak_saturate, TauSpec};

use std::collections::BTreeSet;

use crate::lts::{Lts, LtsError, StateId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivError {
    #[error(transparent)]
    Lts(#[from] LtsError),
    #[error("{input} input of the join is not a bisimulation: {violation}")]
    NotBisimulation { input: JoinInput, violation: Violation },
}

/// A finite binary relation on states.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Relation {
    pairs: BTreeSet<(StateId, StateId)>,
}

impl Relation {
    pub fn new() -> Relation {
        Relation::default()
    }

    pub fn identity(n_states: usize) -> Relation {
        (0..n_states).map(|s| (s, s)).collect()
    }

    pub fn total(n_states: usize) -> Relation {
        (0..n_states).flat_map(|s| (0..n_states).map(move |t| (s, t))).collect()
    }

    pub fn insert(&mut self, s: StateId, t: StateId) -> bool {
        self.pairs.insert((s, t))
    }

    pub fn contains(&self, s: StateId, t: StateId) -> bool {
        self.pairs.contains(&(s, t))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn union(&self, other: &Relation) -> Relation {
        self.pairs.union(&other.pairs).copied().collect()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn inverse(&self) -> Relation {
        self.iter().map(|(s, t)| (t, s)).collect()
    }

    /// Errors on the first pair naming a state outside `lts`.
    pub fn check(&self, lts: &Lts) -> Result<(), LtsError> {
        self.iter().try_for_each(|(s, t)| {
            lts.check_state(s)?;
            lts.check_state(t)
        })
    }

    /// Dense membership matrix over `n` states.
    pub(crate) fn matrix(&self, n: usize) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; n]; n];
        for (s, t) in self.iter() {
            m[s][t] = true;
        }
        m
    }

    pub(crate) fn from_matrix(m: &[Vec<bool>]) -> Relation {
        m.iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().enumerate().filter(|(_, &b)| b).map(move |(t, _)| (s, t)))
            .collect()
    }
}

impl FromIterator<(StateId, StateId)> for Relation {
    fn from_iter<I: IntoIterator<Item = (StateId, StateId)>>(iter: I) -> Relation {
        Relation {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// A partition of `0..n` into nonempty blocks.
///
/// Blocks are numbered in order of their least member, so two partitions
/// describing the same equivalence compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<StateId>>,
}

impl Partition {
    /// Canonicalises an arbitrary block labelling.
    pub fn from_labels<K: Ord + Clone>(labels: &[K]) -> Partition {
        let mut renumber = std::collections::BTreeMap::new();
        let mut block_of = Vec::with_capacity(labels.len());
        let mut blocks: Vec<Vec<StateId>> = Vec::new();
        for (s, k) in labels.iter().enumerate() {
            let next = renumber.len();
            let b = *renumber.entry(k.clone()).or_insert(next);
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(s);
            block_of.push(b);
        }
        Partition { block_of, blocks }
    }

    pub fn block_of(&self, s: StateId) -> usize {
        self.block_of[s]
    }

    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn n_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn same_block(&self, s: StateId, t: StateId) -> bool {
        self.block_of[s] == self.block_of[t]
    }

    /// The induced equivalence relation.
    pub fn to_relation(&self) -> Relation {
        self.blocks
            .iter()
            .flat_map(|b| b.iter().flat_map(move |&s| b.iter().map(move |&t| (s, t))))
            .collect()
    }
}
