use super::{Act, CcsError, Defs, Process};
use crate::lts::{try_explore, ExploreError, Label, Lts, StateId};

/// All one-step derivatives of `p`, ordered by their printed form.
///
/// Fails on constants that are unbound or reached again before any prefix
/// guards them.
pub fn transitions(defs: &Defs, p: &Process) -> Result<Vec<(Act, Process)>, CcsError> {
    let mut unfolding = Vec::new();
    let mut moves = derive(defs, p, &mut unfolding)?;
    let mut keyed: Vec<((String, String), (Act, Process))> = moves
        .drain(..)
        .map(|(a, q)| ((a.to_string(), q.to_string()), (a, q)))
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    keyed.dedup_by(|x, y| x.0 == y.0);
    Ok(keyed.into_iter().map(|(_, m)| m).collect())
}

fn derive(defs: &Defs, p: &Process, unfolding: &mut Vec<String>) -> Result<Vec<(Act, Process)>, CcsError> {
    Ok(match p {
        Process::Nil => Vec::new(),
        Process::Prefix(a, q) => vec![(a.clone(), (**q).clone())],
        Process::Sum(l, r) => {
            let mut moves = derive(defs, l, unfolding)?;
            moves.extend(derive(defs, r, unfolding)?);
            moves
        }
        Process::Par(l, r) => {
            let left = derive(defs, l, unfolding)?;
            let right = derive(defs, r, unfolding)?;
            let mut moves = Vec::new();
            for (a, l2) in &left {
                moves.push((a.clone(), Process::par(l2.clone(), (**r).clone())));
            }
            for (a, r2) in &right {
                moves.push((a.clone(), Process::par((**l).clone(), r2.clone())));
            }
            for (a, l2) in &left {
                let Some(co) = a.co() else { continue };
                for (b, r2) in &right {
                    if *b == co {
                        moves.push((Act::Tau, Process::par(l2.clone(), r2.clone())));
                    }
                }
            }
            moves
        }
        Process::Res(c, q) => derive(defs, q, unfolding)?
            .into_iter()
            .filter(|(a, _)| a.channel() != Some(c.as_str()))
            .map(|(a, q2)| (a, Process::Res(c.clone(), Box::new(q2))))
            .collect(),
        Process::Const(k) => {
            let body = defs.get(k).ok_or_else(|| CcsError::UnboundConstant(k.clone()))?;
            if unfolding.contains(k) {
                return Err(CcsError::UnguardedRecursion(k.clone()));
            }
            unfolding.push(k.clone());
            let moves = derive(defs, body, unfolding)?;
            unfolding.pop();
            moves
        }
    })
}

/// The reachable part of the process graph from some roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration {
    /// States carry their printed processes as names.
    pub lts: Lts,
    pub states: Vec<Process>,
    /// State of each root, in the order given.
    pub roots: Vec<StateId>,
}

/// Breadth-first exploration with τ rendered as `i` and co-names as `'a`.
pub fn explore_lts(defs: &Defs, roots: &[Process], max_states: usize) -> Result<Exploration, CcsError> {
    let (lts, states) = try_explore(roots, max_states, |p: &Process| {
        transitions(defs, p)?
            .into_iter()
            .map(|(a, q)| Ok((a.to_label()?, q)))
            .collect::<Result<Vec<(Label, Process)>, CcsError>>()
    })
    .map_err(|e| match e {
        ExploreError::BoundExceeded(discovered) => CcsError::BoundExceeded {
            limit: max_states,
            discovered,
        },
        ExploreError::Step(e) => e,
    })?;
    let ids: Vec<StateId> = roots
        .iter()
        .map(|r| states.iter().position(|s| s == r).expect("roots are explored first"))
        .collect();
    let lts = lts
        .with_names(states.iter().map(Process::to_string).collect())
        .expect("distinct processes print distinctly");
    Ok(Exploration { lts, states, roots: ids })
}
