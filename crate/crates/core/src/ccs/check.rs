use super::{explore_lts, CcsContext, CcsError, Defs, Process, TAU_LABEL};
use crate::equiv::{bisimilarity_partition, weak_bisimilarity_partition, TauSpec};
use crate::lts::{sample_congruence, CongruenceReport, Label, Verdict};

/// Strong bisimilarity of two processes over their joint reachable graph.
pub fn bisimilar_ccs(defs: &Defs, p: &Process, q: &Process, max_states: usize) -> Result<bool, CcsError> {
    let ex = explore_lts(defs, &[p.clone(), q.clone()], max_states)?;
    Ok(bisimilarity_partition(&ex.lts).same_block(ex.roots[0], ex.roots[1]))
}

/// Weak bisimilarity, τ being the silent action.
pub fn weak_bisimilar_ccs(defs: &Defs, p: &Process, q: &Process, max_states: usize) -> Result<bool, CcsError> {
    let ex = explore_lts(defs, &[p.clone(), q.clone()], max_states)?;
    let tau = Label::new(TAU_LABEL).expect("valid token");
    let lts = ex.lts.with_alphabet([tau.clone()]);
    let partition = weak_bisimilarity_partition(&lts, &TauSpec::new(tau)).expect("tau is in the alphabet");
    Ok(partition.same_block(ex.roots[0], ex.roots[1]))
}

/// Tests whether strong bisimilarity of `p` and `q` survives each context.
///
/// The pair itself must be bisimilar. Contexts whose exploration exceeds
/// `max_states` are reported as undecided.
pub fn congruence_sample(
    defs: &Defs,
    p: &Process,
    q: &Process,
    contexts: &[CcsContext],
    max_states: usize,
) -> Result<CongruenceReport, CcsError> {
    if !bisimilar_ccs(defs, p, q, max_states)? {
        return Err(CcsError::NotBisimilar {
            p: p.to_string(),
            q: q.to_string(),
        });
    }
    sample_congruence(p, q, contexts, |cp, cq| match bisimilar_ccs(defs, cp, cq, max_states) {
        Ok(true) => Ok(Verdict::Holds),
        Ok(false) => Ok(Verdict::Fails),
        Err(CcsError::BoundExceeded { .. }) => Ok(Verdict::Undecided),
        Err(e) => Err(e),
    })
}
