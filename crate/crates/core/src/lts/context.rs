/// Terms with one-hole contexts.
pub trait HasContext: Sized {
    type Context;

    /// `context[term]`.
    fn fill(context: &Self::Context, term: Self) -> Self;
}

/// Answer of a possibly bounded equivalence check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

/// Indices into the sampled contexts, grouped by outcome.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CongruenceReport {
    pub checked: usize,
    pub failures: Vec<usize>,
    pub undecided: Vec<usize>,
}

impl CongruenceReport {
    /// No sampled context separated the pair.
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `related(C[p], C[q])` for every sampled context `C`.
pub fn sample_congruence<T: HasContext + Clone, E>(
    p: &T,
    q: &T,
    contexts: &[T::Context],
    mut related: impl FnMut(&T, &T) -> Result<Verdict, E>,
) -> Result<CongruenceReport, E> {
    let mut report = CongruenceReport::default();
    for (i, c) in contexts.iter().enumerate() {
        let (cp, cq) = (T::fill(c, p.clone()), T::fill(c, q.clone()));
        match related(&cp, &cq)? {
            Verdict::Holds => {}
            Verdict::Fails => report.failures.push(i),
            Verdict::Undecided => report.undecided.push(i),
        }
        report.checked += 1;
    }
    Ok(report)
}
