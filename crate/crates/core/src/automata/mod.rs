//! Finite automata on top of [`Lts`].
//!
//! A nondeterministic automaton is an LTS plus initial and accepting state
//! sets. Determinisation is the subset construction driven by
//! [`Lts::set_image`]; the resulting [`Da`] keeps the subsets it was built
//! from so callers can inspect them.

mod dfa;

pub use dfa::{da_equivalent, determinize, minimize_da, Equivalence};

use std::collections::BTreeSet;

use crate::lts::{AutDocument, Label, Lts, LtsError, StateId};

/// Upper bound on the number of subsets explored by [`determinize`].
pub const MAX_SUBSETS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomataError {
    #[error(transparent)]
    Lts(#[from] LtsError),
    #[error("subset construction exceeded {0} subsets")]
    TooManySubsets(usize),
    #[error("alphabets differ: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },
}

/// A nondeterministic automaton without ε-moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Na {
    lts: Lts,
    initial: BTreeSet<StateId>,
    accepting: BTreeSet<StateId>,
}

impl Na {
    pub fn new(lts: Lts, initial: BTreeSet<StateId>, accepting: BTreeSet<StateId>) -> Result<Na, LtsError> {
        for &s in initial.iter().chain(&accepting) {
            lts.check_state(s)?;
        }
        Ok(Na {
            lts,
            initial,
            accepting,
        })
    }

    /// Reads the header's initial state, or the `initial:` line when present.
    pub fn from_aut(doc: &AutDocument) -> Na {
        Na {
            lts: doc.lts.clone(),
            initial: doc
                .initial_set
                .clone()
                .unwrap_or_else(|| BTreeSet::from([doc.initial])),
            accepting: doc.accepting.clone().unwrap_or_default(),
        }
    }

    pub fn to_aut(&self) -> AutDocument {
        let header = self.initial.first().copied().unwrap_or(0);
        let initial_set = (self.initial != BTreeSet::from([header])).then(|| self.initial.clone());
        AutDocument {
            initial: header,
            lts: self.lts.clone(),
            initial_set,
            accepting: Some(self.accepting.clone()),
        }
    }

    pub fn lts(&self) -> &Lts {
        &self.lts
    }

    pub fn alphabet(&self) -> &[Label] {
        self.lts.alphabet()
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    /// Same automaton reading a larger alphabet.
    pub fn with_alphabet(&self, extra: impl IntoIterator<Item = Label>) -> Na {
        Na {
            lts: self.lts.with_alphabet(extra),
            ..self.clone()
        }
    }

    pub fn accepts(&self, word: &[Label]) -> Result<bool, LtsError> {
        let end = self.lts.multistep_from(&self.initial, word)?;
        Ok(!end.is_disjoint(&self.accepting))
    }
}

/// A complete deterministic automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Da {
    alphabet: Vec<Label>,
    state_sets: Vec<BTreeSet<StateId>>,
    trans: Vec<Vec<usize>>,
    initial: usize,
    accepting: BTreeSet<usize>,
}

impl Da {
    /// Builds a DFA from a total transition table, `trans[q][i]` being the
    /// successor of `q` on `alphabet[i]`. Each state's subset is the
    /// singleton of its own index.
    pub fn from_table(
        alphabet: Vec<Label>,
        trans: Vec<Vec<usize>>,
        initial: usize,
        accepting: BTreeSet<usize>,
    ) -> Result<Da, LtsError> {
        let n_states = trans.len();
        let mut order: Vec<usize> = (0..alphabet.len()).collect();
        order.sort_by(|&x, &y| alphabet[x].cmp(&alphabet[y]));
        if let Some(w) = order.windows(2).find(|w| alphabet[w[0]] == alphabet[w[1]]) {
            return Err(LtsError::DuplicateLabel(alphabet[w[0]].as_str().to_owned()));
        }
        let out_of_range = |state: usize| LtsError::UnknownState { state, n_states };
        for row in &trans {
            if row.len() != alphabet.len() {
                return Err(LtsError::UnknownLabel(format!("column {}", row.len().min(alphabet.len()))));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n_states) {
                return Err(out_of_range(t));
            }
        }
        if let Some(&s) = accepting.iter().chain([&initial]).find(|&&s| s >= n_states) {
            return Err(out_of_range(s));
        }
        let trans = trans
            .into_iter()
            .map(|row| order.iter().map(|&li| row[li]).collect())
            .collect();
        Ok(Da {
            alphabet: order.iter().map(|&li| alphabet[li].clone()).collect(),
            state_sets: (0..n_states).map(|q| BTreeSet::from([q])).collect(),
            trans,
            initial,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &[Label] {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.trans.len()
    }

    pub fn state_sets(&self) -> &[BTreeSet<StateId>] {
        &self.state_sets
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    /// Successor of `q` under the label with index `li`.
    pub fn next(&self, q: usize, li: usize) -> usize {
        self.trans[q][li]
    }

    pub fn label_index(&self, label: &Label) -> Option<usize> {
        self.alphabet.binary_search(label).ok()
    }

    /// State reached from the initial state on `word`.
    pub fn run(&self, word: &[Label]) -> Result<usize, LtsError> {
        word.iter().try_fold(self.initial, |q, l| {
            let li = self
                .label_index(l)
                .ok_or_else(|| LtsError::UnknownLabel(l.as_str().to_owned()))?;
            Ok(self.next(q, li))
        })
    }

    pub fn accepts(&self, word: &[Label]) -> Result<bool, LtsError> {
        Ok(self.is_accepting(self.run(word)?))
    }

    pub fn to_lts(&self) -> Lts {
        let transitions = self.trans.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .map(move |(li, &t)| (q, self.alphabet[li].clone(), t))
        });
        Lts::new(self.n_states(), self.alphabet.iter().cloned(), transitions).expect("table validated")
    }

    pub fn to_aut(&self) -> AutDocument {
        AutDocument {
            initial: self.initial,
            lts: self.to_lts(),
            initial_set: None,
            accepting: Some(self.accepting.clone()),
        }
    }
}
