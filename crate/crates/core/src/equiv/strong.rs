use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{EquivError, Partition, Relation};
use crate::lts::{Label, Lts, LtsError, StateId};

/// Coarsest partition where related states reach the same blocks under every
/// label (Kanellakis–Smolka).
///
/// Each round tries every `(block, label)` pair as a splitter: the members of
/// the block are grouped by the set of blocks they reach with that label. The
/// loop stops once a full round splits nothing.
pub fn bisimilarity_partition(lts: &Lts) -> Partition {
    let n = lts.n_states();
    let mut block = vec![0usize; n];
    let mut n_blocks = usize::from(n > 0);
    loop {
        let mut changed = false;
        let round = n_blocks;
        for b in 0..round {
            for li in 0..lts.alphabet().len() {
                let mut groups: BTreeMap<BTreeSet<usize>, Vec<StateId>> = BTreeMap::new();
                for s in (0..n).filter(|&s| block[s] == b) {
                    let reached = lts.image_by_index(s, li).map(|t| block[t]).collect();
                    groups.entry(reached).or_default().push(s);
                }
                if groups.len() < 2 {
                    continue;
                }
                changed = true;
                let mut groups: Vec<Vec<StateId>> = groups.into_values().collect();
                groups.sort();
                // The group holding the least member keeps the block id.
                for group in groups.into_iter().skip(1) {
                    for s in group {
                        block[s] = n_blocks;
                    }
                    n_blocks += 1;
                }
            }
        }
        if !changed {
            return Partition::from_labels(&block);
        }
    }
}

pub fn bisimilar(lts: &Lts, s: StateId, t: StateId) -> Result<bool, LtsError> {
    lts.check_state(s)?;
    lts.check_state(t)?;
    Ok(bisimilarity_partition(lts).same_block(s, t))
}

/// Every move of `s` is answered by `t` into a pair accepted by `related`.
fn answers(lts: &Lts, s: StateId, t: StateId, related: impl Fn(StateId, StateId) -> bool) -> bool {
    lts.successors(s).iter().all(|&(li, s2)| {
        lts.image_by_index(t, li).any(|t2| related(s2, t2))
    })
}

/// Greatest bisimulation by pair deletion from the total relation.
pub fn naive_bisim_fixpoint(lts: &Lts) -> Relation {
    let n = lts.n_states();
    let mut rel = vec![vec![true; n]; n];
    loop {
        let mut changed = false;
        for s in 0..n {
            for t in 0..n {
                if rel[s][t]
                    && !(answers(lts, s, t, |x, y| rel[x][y]) && answers(lts, t, s, |x, y| rel[y][x]))
                {
                    rel[s][t] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return Relation::from_matrix(&rel);
        }
    }
}

/// An unanswered challenge: `from −label→ to` has no matching move from the
/// other state of `pair`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub pair: (StateId, StateId),
    pub from: StateId,
    pub label: Label,
    pub to: StateId,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair ({}, {}): move {} -{}-> {} has no matching answer",
            self.pair.0, self.pair.1, self.from, self.label, self.to
        )
    }
}

/// First pair of `r` (in pair order) failing a bisimulation clause, judged
/// against `target`.
fn first_violation(
    lts: &Lts,
    r: &Relation,
    target: impl Fn(StateId, StateId) -> bool,
) -> Option<Violation> {
    for (s, t) in r.iter() {
        for (from, other, flipped) in [(s, t, false), (t, s, true)] {
            for &(li, to) in lts.successors(from) {
                let answered = lts.image_by_index(other, li).any(|o| {
                    if flipped {
                        target(o, to)
                    } else {
                        target(to, o)
                    }
                });
                if !answered {
                    return Some(Violation {
                        pair: (s, t),
                        from,
                        label: lts.label(li).clone(),
                        to,
                    });
                }
            }
        }
    }
    None
}

pub fn bisimulation_violation(lts: &Lts, r: &Relation) -> Result<Option<Violation>, LtsError> {
    r.check(lts)?;
    let m = r.matrix(lts.n_states());
    Ok(first_violation(lts, r, |x, y| m[x][y]))
}

pub fn is_bisimulation(lts: &Lts, r: &Relation) -> Result<bool, LtsError> {
    Ok(bisimulation_violation(lts, r)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinInput {
    First,
    Second,
}

impl fmt::Display for JoinInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JoinInput::First => "first",
            JoinInput::Second => "second",
        })
    }
}

/// Join in the semilattice of bisimulations: the union of two bisimulations.
pub fn join_bisim(lts: &Lts, r1: &Relation, r2: &Relation) -> Result<Relation, EquivError> {
    for (input, r) in [(JoinInput::First, r1), (JoinInput::Second, r2)] {
        if let Some(violation) = bisimulation_violation(lts, r)? {
            return Err(EquivError::NotBisimulation { input, violation });
        }
    }
    let joined = r1.union(r2);
    debug_assert!(is_bisimulation(lts, &joined).unwrap_or(false));
    Ok(joined)
}

/// Bisimulation up to bisimilarity: answers may land anywhere in `∼ r ∼`.
pub fn is_bisimulation_up_to(lts: &Lts, r: &Relation) -> Result<bool, LtsError> {
    r.check(lts)?;
    let bisim = bisimilarity_partition(lts);
    let closed: BTreeSet<(usize, usize)> = r
        .iter()
        .map(|(s, t)| (bisim.block_of(s), bisim.block_of(t)))
        .collect();
    Ok(first_violation(lts, r, |x, y| closed.contains(&(bisim.block_of(x), bisim.block_of(y)))).is_none())
}
