//! Labelled transition systems and reduction systems.
//!
//! Two representations live side by side. [`Lts`] is an explicit finite system
//! with dense state ids, on which everything is decidable. [`LtsGen`] is a
//! successor function explored on the fly, used for infinite-state systems
//! such as CCS processes and lambda terms; questions about it take a fuel
//! bound and may come back [`Reach::Undecided`].

mod aut;
mod classify;
mod context;

pub use aut::{parse_aut, write_aut, AutDocument, AutError, AutErrorKind, MAX_AUT_STATES};
pub use classify::{classify, is_confluent, is_diamond, Classification};
pub use context::{sample_congruence, CongruenceReport, HasContext, Verdict};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// Index of a state in an [`Lts`]. Ids are dense in `0..n_states`.
pub type StateId = usize;

/// Token of the single label carried by reduction systems.
pub const UNIT_LABEL: &str = "step";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LtsError {
    #[error("state {state} is out of range (the system has {n_states} states)")]
    UnknownState { state: StateId, n_states: usize },
    #[error("label `{0}` is not in the alphabet")]
    UnknownLabel(String),
    #[error("invalid label {0:?}: labels are nonempty and contain no whitespace")]
    InvalidLabel(String),
    #[error("label `{0}` appears twice")]
    DuplicateLabel(String),
    #[error("display name `{0}` is given to more than one state")]
    DuplicateName(String),
    #[error("expected {expected} display names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("diamond and confluence need a reduction system, but the alphabet has {0} labels")]
    NotReductionSystem(usize),
}

/// A transition label: a nonempty token without whitespace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(token: impl Into<String>) -> Result<Label, LtsError> {
        let token = token.into();
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(LtsError::InvalidLabel(token));
        }
        Ok(Label(token))
    }

    /// The reserved label of reduction systems.
    pub fn unit() -> Label {
        Label(UNIT_LABEL.to_owned())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parses a whitespace separated word of labels.
pub fn word(src: &str) -> Result<Vec<Label>, LtsError> {
    src.split_whitespace().map(Label::new).collect()
}

/// An explicit finite labelled transition system.
///
/// The alphabet is kept sorted and transitions are stored by label index, so
/// every iteration order below is the total order on `(state, label, state)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    n_states: usize,
    alphabet: Vec<Label>,
    out: Vec<Vec<(usize, StateId)>>,
    n_transitions: usize,
    names: Option<Vec<String>>,
}

impl Lts {
    /// Builds a system over `alphabet`. Duplicate transitions collapse.
    pub fn new(
        n_states: usize,
        alphabet: impl IntoIterator<Item = Label>,
        transitions: impl IntoIterator<Item = (StateId, Label, StateId)>,
    ) -> Result<Lts, LtsError> {
        let alphabet: Vec<Label> = alphabet
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut out = vec![Vec::new(); n_states];
        for (src, label, dst) in transitions {
            for s in [src, dst] {
                if s >= n_states {
                    return Err(LtsError::UnknownState { state: s, n_states });
                }
            }
            let li = alphabet
                .binary_search(&label)
                .map_err(|_| LtsError::UnknownLabel(label.0.clone()))?;
            out[src].push((li, dst));
        }
        let mut n_transitions = 0;
        for succ in &mut out {
            succ.sort_unstable();
            succ.dedup();
            n_transitions += succ.len();
        }
        Ok(Lts {
            n_states,
            alphabet,
            out,
            n_transitions,
            names: None,
        })
    }

    /// Builds a system whose alphabet is exactly the labels used.
    pub fn from_triples(n_states: usize, triples: &[(StateId, &str, StateId)]) -> Result<Lts, LtsError> {
        let transitions = triples
            .iter()
            .map(|&(s, l, t)| Ok((s, Label::new(l)?, t)))
            .collect::<Result<Vec<_>, LtsError>>()?;
        let alphabet: Vec<Label> = transitions.iter().map(|(_, l, _)| l.clone()).collect();
        Lts::new(n_states, alphabet, transitions)
    }

    /// Attaches display names, one per state, pairwise distinct.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Lts, LtsError> {
        if names.len() != self.n_states {
            return Err(LtsError::NameCount {
                expected: self.n_states,
                got: names.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(LtsError::DuplicateName(n.clone()));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Same system over a larger alphabet.
    pub fn with_alphabet(&self, extra: impl IntoIterator<Item = Label>) -> Lts {
        let alphabet = self.alphabet.iter().cloned().chain(extra);
        let mut lts = Lts::new(self.n_states, alphabet, self.transitions().map(|(s, l, t)| (s, l.clone(), t)))
            .expect("widening the alphabet keeps every transition valid");
        lts.names = self.names.clone();
        lts
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_transitions(&self) -> usize {
        self.n_transitions
    }

    pub fn alphabet(&self) -> &[Label] {
        &self.alphabet
    }

    pub fn label(&self, index: usize) -> &Label {
        &self.alphabet[index]
    }

    pub fn label_index(&self, label: &Label) -> Option<usize> {
        self.alphabet.binary_search(label).ok()
    }

    pub fn state_name(&self, s: StateId) -> Option<&str> {
        self.names.as_ref().and_then(|n| n.get(s)).map(String::as_str)
    }

    /// Outgoing `(label index, target)` pairs of `s`, sorted.
    pub fn successors(&self, s: StateId) -> &[(usize, StateId)] {
        &self.out[s]
    }

    /// All transitions in `(src, label, dst)` order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, &Label, StateId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(move |(s, succ)| succ.iter().map(move |&(li, t)| (s, &self.alphabet[li], t)))
    }

    pub fn has_transition(&self, src: StateId, label: usize, dst: StateId) -> bool {
        self.out[src].binary_search(&(label, dst)).is_ok()
    }

    pub fn check_state(&self, s: StateId) -> Result<(), LtsError> {
        if s < self.n_states {
            Ok(())
        } else {
            Err(LtsError::UnknownState {
                state: s,
                n_states: self.n_states,
            })
        }
    }

    fn check_label(&self, label: &Label) -> Result<usize, LtsError> {
        self.label_index(label)
            .ok_or_else(|| LtsError::UnknownLabel(label.0.clone()))
    }

    /// Targets of `s` under label index `li`.
    pub fn image_by_index(&self, s: StateId, li: usize) -> impl Iterator<Item = StateId> + '_ {
        let succ = &self.out[s];
        let start = succ.partition_point(|&(l, _)| l < li);
        succ[start..].iter().take_while(move |&&(l, _)| l == li).map(|&(_, t)| t)
    }

    /// `{ s' | s -label-> s' }`.
    pub fn image(&self, s: StateId, label: &Label) -> Result<BTreeSet<StateId>, LtsError> {
        self.check_state(s)?;
        let li = self.check_label(label)?;
        Ok(self.image_by_index(s, li).collect())
    }

    /// The union of the images of every state in `set`.
    pub fn set_image(&self, set: &BTreeSet<StateId>, label: &Label) -> Result<BTreeSet<StateId>, LtsError> {
        for &s in set {
            self.check_state(s)?;
        }
        let li = self.check_label(label)?;
        Ok(self.set_image_by_index(set, li))
    }

    pub(crate) fn set_image_by_index(&self, set: &BTreeSet<StateId>, li: usize) -> BTreeSet<StateId> {
        set.iter().flat_map(|&s| self.image_by_index(s, li)).collect()
    }

    /// States reachable from `s` by reading `word`.
    pub fn multistep(&self, s: StateId, word: &[Label]) -> Result<BTreeSet<StateId>, LtsError> {
        self.multistep_from(&BTreeSet::from([s]), word)
    }

    pub fn multistep_from(&self, start: &BTreeSet<StateId>, word: &[Label]) -> Result<BTreeSet<StateId>, LtsError> {
        for &s in start {
            self.check_state(s)?;
        }
        let indices = word
            .iter()
            .map(|l| self.check_label(l))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(indices
            .into_iter()
            .fold(start.clone(), |set, li| self.set_image_by_index(&set, li)))
    }

    /// Least set containing `s` closed under transitions of every label.
    pub fn reachable(&self, s: StateId) -> Result<BTreeSet<StateId>, LtsError> {
        self.check_state(s)?;
        let mut seen = vec![false; self.n_states];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(_, v) in &self.out[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        Ok(seen
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect())
    }

    /// Exact reflexive-transitive reachability.
    pub fn star_reaches(&self, from: StateId, to: StateId) -> Result<bool, LtsError> {
        self.check_state(to)?;
        Ok(self.reachable(from)?.contains(&to))
    }
}

/// Outcome of a fuel-bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reach {
    Reachable,
    Unreachable,
    /// The frontier had not stabilised when fuel ran out.
    Undecided,
}

/// A labelled transition system given by its successor function.
///
/// `successors` must be deterministic and return a duplicate-free list.
pub trait LtsGen {
    type State: Clone + Ord;

    fn successors(&self, state: &Self::State) -> Vec<(Label, Self::State)>;
}

impl LtsGen for Lts {
    type State = StateId;

    fn successors(&self, state: &StateId) -> Vec<(Label, StateId)> {
        self.out
            .get(*state)
            .map(|succ| succ.iter().map(|&(li, t)| (self.alphabet[li].clone(), t)).collect())
            .unwrap_or_default()
    }
}

/// An unlabelled reduction relation given by its one-step reducts.
pub trait ReductionSystem {
    type Term: Clone + Ord;

    fn reducts(&self, term: &Self::Term) -> Vec<Self::Term>;
}

/// Views a reduction system as an LTS over the unit label.
#[derive(Debug, Clone, Copy)]
pub struct Reductions<R>(pub R);

impl<R: ReductionSystem> LtsGen for Reductions<R> {
    type State = R::Term;

    fn successors(&self, state: &R::Term) -> Vec<(Label, R::Term)> {
        self.0
            .reducts(state)
            .into_iter()
            .map(|t| (Label::unit(), t))
            .collect()
    }
}

/// `n ⭢ n - 1` for every positive `n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Predecessor;

impl ReductionSystem for Predecessor {
    type Term = u64;

    fn reducts(&self, n: &u64) -> Vec<u64> {
        n.checked_sub(1).into_iter().collect()
    }
}

/// Breadth-first reflexive-transitive reachability, at most `fuel` rounds.
pub fn star_reaches<G: LtsGen>(system: &G, from: &G::State, to: &G::State, fuel: usize) -> Reach {
    if from == to {
        return Reach::Reachable;
    }
    let mut seen = BTreeSet::from([from.clone()]);
    let mut frontier = vec![from.clone()];
    for _ in 0..fuel {
        let mut next = Vec::new();
        for s in &frontier {
            for (_, t) in system.successors(s) {
                if &t == to {
                    return Reach::Reachable;
                }
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            return Reach::Unreachable;
        }
        frontier = next;
    }
    Reach::Undecided
}

/// Explores `roots` of a generator into an explicit [`Lts`].
///
/// States are numbered in breadth-first discovery order. Returns `Err` with
/// the number of states discovered so far when more than `max_states` exist.
pub fn explore<G: LtsGen>(
    system: &G,
    roots: &[G::State],
    max_states: usize,
) -> Result<(Lts, Vec<G::State>), usize> {
    try_explore(roots, max_states, |s| Ok::<_, std::convert::Infallible>(system.successors(s))).map_err(|e| match e {
        ExploreError::BoundExceeded(n) => n,
        ExploreError::Step(never) => match never {},
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExploreError<E> {
    /// Carries the number of states discovered before stopping.
    BoundExceeded(usize),
    Step(E),
}

/// [`explore`] for a successor function that may fail.
pub fn try_explore<S: Clone + Ord, E>(
    roots: &[S],
    max_states: usize,
    mut successors: impl FnMut(&S) -> Result<Vec<(Label, S)>, E>,
) -> Result<(Lts, Vec<S>), ExploreError<E>> {
    let mut index: BTreeMap<S, StateId> = BTreeMap::new();
    let mut states: Vec<S> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |s: S, states: &mut Vec<S>, queue: &mut VecDeque<StateId>| -> Result<StateId, ExploreError<E>> {
        if let Some(&id) = index.get(&s) {
            return Ok(id);
        }
        if states.len() == max_states {
            return Err(ExploreError::BoundExceeded(states.len()));
        }
        let id = states.len();
        index.insert(s.clone(), id);
        states.push(s);
        queue.push_back(id);
        Ok(id)
    };
    for r in roots {
        intern(r.clone(), &mut states, &mut queue)?;
    }
    let mut transitions = Vec::new();
    let mut labels = BTreeSet::new();
    while let Some(id) = queue.pop_front() {
        let current = states[id].clone();
        for (label, t) in successors(&current).map_err(ExploreError::Step)? {
            let tid = intern(t, &mut states, &mut queue)?;
            labels.insert(label.clone());
            transitions.push((id, label, tid));
        }
    }
    let lts = Lts::new(states.len(), labels, transitions).expect("explored transitions are in range");
    Ok((lts, states))
}
