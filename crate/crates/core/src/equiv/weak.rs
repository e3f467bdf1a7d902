use std::collections::BTreeSet;

use super::{bisimilarity_partition, Partition, Relation};
use crate::lts::{Label, Lts, LtsError, StateId};

/// The label treated as the silent action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauSpec {
    pub tau: Label,
}

impl TauSpec {
    pub fn new(tau: Label) -> TauSpec {
        TauSpec { tau }
    }
}

impl Default for TauSpec {
    /// `i`, the mCRL2/CADP convention.
    fn default() -> TauSpec {
        TauSpec {
            tau: Label::new("i").expect("valid token"),
        }
    }
}

fn tau_closures(lts: &Lts, tau: usize) -> Vec<BTreeSet<StateId>> {
    (0..lts.n_states())
        .map(|s| {
            let mut seen = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in lts.image_by_index(u, tau) {
                    if seen.insert(v) {
                        stack.push(v);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Replaces every transition relation by its weak counterpart: `s ⇒τ s'` is
/// `τ*` (reflexive) and `s ⇒μ s'` is `τ* μ τ*`.
pub fn weak_saturate(lts: &Lts, tau: &TauSpec) -> Result<Lts, LtsError> {
    let ti = lts
        .label_index(&tau.tau)
        .ok_or_else(|| LtsError::UnknownLabel(tau.tau.as_str().to_owned()))?;
    let closure = tau_closures(lts, ti);
    let mut transitions = Vec::new();
    for s in 0..lts.n_states() {
        for &s2 in &closure[s] {
            transitions.push((s, tau.tau.clone(), s2));
        }
        for &s1 in &closure[s] {
            for &(li, s2) in lts.successors(s1) {
                if li == ti {
                    continue;
                }
                for &s3 in &closure[s2] {
                    transitions.push((s, lts.label(li).clone(), s3));
                }
            }
        }
    }
    Lts::new(lts.n_states(), lts.alphabet().iter().cloned(), transitions)
}

pub fn weak_bisimilarity_partition(lts: &Lts, tau: &TauSpec) -> Result<Partition, LtsError> {
    Ok(bisimilarity_partition(&weak_saturate(lts, tau)?))
}

pub fn weak_bisimilar(lts: &Lts, tau: &TauSpec, s: StateId, t: StateId) -> Result<bool, LtsError> {
    lts.check_state(s)?;
    lts.check_state(t)?;
    Ok(weak_bisimilarity_partition(lts, tau)?.same_block(s, t))
}

/// Single strong challenges answered by weak moves (`⇒τ̂` may stay put),
/// with derivatives related by `r` itself.
pub fn is_sw_bisimulation(lts: &Lts, tau: &TauSpec, r: &Relation) -> Result<bool, LtsError> {
    r.check(lts)?;
    let weak = weak_saturate(lts, tau)?;
    let m = r.matrix(lts.n_states());
    let answered = |from: StateId, other: StateId, rel: &dyn Fn(StateId, StateId) -> bool| {
        lts.successors(from)
            .iter()
            .all(|&(li, to)| weak.image_by_index(other, li).any(|o| rel(to, o)))
    };
    Ok(r.iter().all(|(s, t)| {
        answered(s, t, &|x, y| m[x][y]) && answered(t, s, &|x, y| m[y][x])
    }))
}
