use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{AutomataError, Da, Na, MAX_SUBSETS};
use crate::equiv::bisimilarity_partition;
use crate::lts::{Label, Lts, StateId};

/// Subset construction.
///
/// Subsets are discovered breadth-first from the initial set, trying labels
/// in alphabet order, and numbered in discovery order. The empty subset is
/// an ordinary (rejecting) state when reachable.
pub fn determinize(na: &Na) -> Result<Da, AutomataError> {
    let lts = na.lts();
    let k = lts.alphabet().len();
    let mut index: BTreeMap<BTreeSet<StateId>, usize> = BTreeMap::new();
    let mut sets = vec![na.initial().clone()];
    index.insert(na.initial().clone(), 0);
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for li in 0..k {
            let next = lts.set_image_by_index(&sets[q], li);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if sets.len() == MAX_SUBSETS {
                        return Err(AutomataError::TooManySubsets(MAX_SUBSETS));
                    }
                    let id = sets.len();
                    index.insert(next.clone(), id);
                    sets.push(next);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        // Breadth-first order visits q = 0, 1, 2, ... so rows land in place.
        debug_assert_eq!(trans.len(), q);
        trans.push(row);
    }
    let accepting = sets
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_disjoint(na.accepting()))
        .map(|(i, _)| i)
        .collect();
    Ok(Da {
        alphabet: lts.alphabet().to_vec(),
        state_sets: sets,
        trans,
        initial: 0,
        accepting,
    })
}

/// Outcome of a DFA equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// A shortest word accepted by exactly one side; among words of that
    /// length, the least in alphabet order.
    Distinguished(Vec<Label>),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }

    pub fn counterexample(&self) -> Option<&[Label]> {
        match self {
            Equivalence::Equivalent => None,
            Equivalence::Distinguished(w) => Some(w),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

fn check_alphabets(d1: &Da, d2: &Da) -> Result<(), AutomataError> {
    if d1.alphabet == d2.alphabet {
        return Ok(());
    }
    let show = |d: &Da| d.alphabet.iter().map(Label::as_str).collect::<Vec<_>>().join(", ");
    Err(AutomataError::AlphabetMismatch {
        left: show(d1),
        right: show(d2),
    })
}

/// Language equivalence by the Hopcroft–Karp union-find walk over the
/// product. When the languages differ a product BFS recovers a shortest
/// distinguishing word.
pub fn da_equivalent(d1: &Da, d2: &Da) -> Result<Equivalence, AutomataError> {
    check_alphabets(d1, d2)?;
    let offset = d1.n_states();
    let mut classes = UnionFind::new(offset + d2.n_states());
    classes.union(d1.initial, offset + d2.initial);
    let mut queue = VecDeque::from([(d1.initial, d2.initial)]);
    while let Some((p, q)) = queue.pop_front() {
        if d1.is_accepting(p) != d2.is_accepting(q) {
            return Ok(Equivalence::Distinguished(shortest_counterexample(d1, d2)));
        }
        for li in 0..d1.alphabet.len() {
            let (p2, q2) = (d1.next(p, li), d2.next(q, li));
            if classes.union(p2, offset + q2) {
                queue.push_back((p2, q2));
            }
        }
    }
    Ok(Equivalence::Equivalent)
}

fn shortest_counterexample(d1: &Da, d2: &Da) -> Vec<Label> {
    let start = (d1.initial, d2.initial);
    // pair -> (predecessor pair, label index)
    type Parents = BTreeMap<(usize, usize), Option<((usize, usize), usize)>>;
    let mut parent: Parents = BTreeMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(pair @ (p, q)) = queue.pop_front() {
        if d1.is_accepting(p) != d2.is_accepting(q) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some((prev, li)) = parent[&cur] {
                word.push(d1.alphabet[li].clone());
                cur = prev;
            }
            word.reverse();
            return word;
        }
        for li in 0..d1.alphabet.len() {
            let next = (d1.next(p, li), d2.next(q, li));
            if let Entry::Vacant(slot) = parent.entry(next) {
                slot.insert(Some((pair, li)));
                queue.push_back(next);
            }
        }
    }
    unreachable!("called only on inequivalent automata")
}

/// A label token not in `alphabet`, used to mark accepting states.
fn acceptance_marker(alphabet: &[Label]) -> Label {
    let mut token = String::from("accept");
    loop {
        let label = Label::new(token.clone()).expect("valid token");
        if alphabet.binary_search(&label).is_err() {
            return label;
        }
        token.push('\'');
    }
}

/// Merges states that no word tells apart.
///
/// Acceptance becomes an observable self-loop on a fresh label, after which
/// language equivalence is strong bisimilarity. Blocks are renumbered
/// breadth-first from the initial block, and each keeps the subset of its
/// least member.
pub fn minimize_da(da: &Da) -> Da {
    let marker = acceptance_marker(&da.alphabet);
    let mut transitions: Vec<(StateId, Label, StateId)> = da.to_lts().transitions().map(|(s, l, t)| (s, l.clone(), t)).collect();
    transitions.extend(da.accepting.iter().map(|&q| (q, marker.clone(), q)));
    let observed = Lts::new(
        da.n_states(),
        da.alphabet.iter().cloned().chain([marker]),
        transitions,
    )
    .expect("table transitions are in range");
    let partition = bisimilarity_partition(&observed);

    let k = da.alphabet.len();
    let mut order: Vec<Option<usize>> = vec![None; partition.n_blocks()];
    let mut reps = Vec::new();
    let mut assigned = 1;
    let mut queue = VecDeque::from([partition.block_of(da.initial)]);
    order[partition.block_of(da.initial)] = Some(0);
    while let Some(b) = queue.pop_front() {
        let rep = partition.blocks()[b][0];
        reps.push(rep);
        for li in 0..k {
            let nb = partition.block_of(da.next(rep, li));
            if order[nb].is_none() {
                order[nb] = Some(assigned);
                assigned += 1;
                queue.push_back(nb);
            }
        }
    }
    let renumber = |q: usize| order[partition.block_of(q)].expect("every state is reachable");
    Da {
        alphabet: da.alphabet.clone(),
        state_sets: reps.iter().map(|&r| da.state_sets[r].clone()).collect(),
        trans: reps
            .iter()
            .map(|&r| (0..k).map(|li| renumber(da.next(r, li))).collect())
            .collect(),
        initial: 0,
        accepting: reps
            .iter()
            .enumerate()
            .filter(|(_, &r)| da.is_accepting(r))
            .map(|(i, _)| i)
            .collect(),
    }
}
