use std::collections::BTreeSet;

use super::Relation;
use crate::automata::{da_equivalent, determinize, AutomataError, Na};
use crate::lts::{Lts, LtsError, StateId};

/// The greatest simulation: `(s, t)` is kept while every move of `s` is
/// matched by `t` into a kept pair.
pub fn similarity_preorder(lts: &Lts) -> Relation {
    let n = lts.n_states();
    let mut rel = vec![vec![true; n]; n];
    loop {
        let mut changed = false;
        for s in 0..n {
            for t in 0..n {
                if !rel[s][t] {
                    continue;
                }
                let simulated = lts
                    .successors(s)
                    .iter()
                    .all(|&(li, s2)| lts.image_by_index(t, li).any(|t2| rel[s2][t2]));
                if !simulated {
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

pub fn simulation_equivalent(lts: &Lts, s: StateId, t: StateId) -> Result<bool, LtsError> {
    lts.check_state(s)?;
    lts.check_state(t)?;
    let sim = similarity_preorder(lts);
    Ok(sim.contains(s, t) && sim.contains(t, s))
}

/// Equality of the (prefix-closed) trace languages of `s` and `t`.
///
/// Each state is read as an automaton in which every state accepts; after
/// determinisation only the empty subset rejects, and the two DFAs are
/// compared exactly.
pub fn trace_equivalent(lts: &Lts, s: StateId, t: StateId) -> Result<bool, AutomataError> {
    lts.check_state(s)?;
    lts.check_state(t)?;
    if s == t {
        return Ok(true);
    }
    let all: BTreeSet<StateId> = (0..lts.n_states()).collect();
    let from = |root| Na::new(lts.clone(), BTreeSet::from([root]), all.clone());
    let left = determinize(&from(s)?)?;
    let right = determinize(&from(t)?)?;
    Ok(da_equivalent(&left, &right)?.is_equivalent())
}
