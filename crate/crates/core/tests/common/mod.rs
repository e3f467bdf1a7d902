//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use opsem::automata::Na;
use opsem::ccs::{parse_defs, Act, CcsContext, Defs, Process};
use opsem::equiv::Relation;
use opsem::lambda::{Atom, Term, Ty};
use opsem::lts::{Label, Lts, StateId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn label(s: &str) -> Label {
    Label::new(s).unwrap()
}

pub const LABELS: [&str; 3] = ["a", "b", "c"];

/// An LTS with up to `max_states` states over the first `n_labels` of
/// [`LABELS`], average out-degree around `degree`.
pub fn random_lts(rng: &mut ChaCha8Rng, max_states: usize, n_labels: usize, degree: f64) -> Lts {
    let n = rng.gen_range(1..=max_states);
    let labels = &LABELS[..n_labels];
    let p = (degree / (n * n_labels) as f64).min(1.0);
    let mut transitions = Vec::new();
    for s in 0..n {
        for l in labels {
            for t in 0..n {
                if rng.gen_bool(p) {
                    transitions.push((s, label(l), t));
                }
            }
        }
    }
    Lts::new(n, labels.iter().map(|l| label(l)), transitions).unwrap()
}

/// Like [`random_lts`] with `i` as an extra, silent label.
pub fn random_tau_lts(rng: &mut ChaCha8Rng, max_states: usize) -> Lts {
    let n = rng.gen_range(1..=max_states);
    let labels = ["a", "b", "i"];
    let p = 1.6 / (n * labels.len()) as f64;
    let mut transitions = Vec::new();
    for s in 0..n {
        for l in labels {
            for t in 0..n {
                if rng.gen_bool(p.min(1.0)) {
                    transitions.push((s, label(l), t));
                }
            }
        }
    }
    Lts::new(n, labels.iter().map(|l| label(l)), transitions).unwrap()
}

pub fn random_na(rng: &mut ChaCha8Rng, max_states: usize) -> Na {
    let n = rng.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for s in 0..n {
        for l in ["a", "b"] {
            for t in 0..n {
                if rng.gen_bool(0.25) {
                    transitions.push((s, label(l), t));
                }
            }
        }
    }
    let lts = Lts::new(n, [label("a"), label("b")], transitions).unwrap();
    let mut initial: BTreeSet<StateId> = (0..n).filter(|_| rng.gen_bool(0.2)).collect();
    if initial.is_empty() {
        initial.insert(0);
    }
    let accepting = (0..n).filter(|_| rng.gen_bool(0.35)).collect();
    Na::new(lts, initial, accepting).unwrap()
}

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub fn all_words(alphabet: &[Label], max_len: usize) -> Vec<Vec<Label>> {
    let mut words = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in alphabet {
                let mut w2: Vec<Label> = w.clone();
                w2.push(l.clone());
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    words
}

fn edges(lts: &Lts) -> Vec<(StateId, String, StateId)> {
    lts.transitions().map(|(s, l, t)| (s, l.as_str().to_owned(), t)).collect()
}

/// Acceptance by searching for an accepting path, one symbol at a time.
pub fn path_accepts(na: &Na, word: &[Label]) -> bool {
    let edges = edges(na.lts());
    fn go(edges: &[(StateId, String, StateId)], s: StateId, word: &[Label], accepting: &BTreeSet<StateId>) -> bool {
        match word.split_first() {
            None => accepting.contains(&s),
            Some((l, rest)) => edges
                .iter()
                .any(|(src, el, t)| *src == s && el == l.as_str() && go(edges, *t, rest, accepting)),
        }
    }
    na.initial().iter().any(|&s| go(&edges, s, word, na.accepting()))
}

/// Greatest relation closed under the transfer condition, where `answers`
/// gives, for a state and a challenge label, the admissible answer states.
fn game_fixpoint(
    n: usize,
    challenges: &[(StateId, String, StateId)],
    answers: impl Fn(StateId, &str) -> BTreeSet<StateId>,
) -> BTreeSet<(StateId, StateId)> {
    let mut rel: BTreeSet<(StateId, StateId)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
    loop {
        let bad: Vec<(StateId, StateId)> = rel
            .iter()
            .copied()
            .filter(|&(p, q)| {
                let one_way = |x: StateId, y: StateId, flip: bool| {
                    challenges.iter().filter(|(s, _, _)| *s == x).all(|(_, l, x2)| {
                        answers(y, l).iter().any(|&y2| {
                            let pair = if flip { (y2, *x2) } else { (*x2, y2) };
                            rel.contains(&pair)
                        })
                    })
                };
                !(one_way(p, q, false) && one_way(q, p, true))
            })
            .collect();
        if bad.is_empty() {
            return rel;
        }
        for pair in bad {
            rel.remove(&pair);
        }
    }
}

pub fn strong_oracle(lts: &Lts) -> BTreeSet<(StateId, StateId)> {
    let e = edges(lts);
    let answers = |s: StateId, l: &str| -> BTreeSet<StateId> {
        e.iter().filter(|(x, el, _)| *x == s && el == l).map(|(_, _, t)| *t).collect()
    };
    game_fixpoint(lts.n_states(), &e, answers)
}

/// Weak bisimilarity by its definition: strong challenges, weak answers,
/// with τ* computed by Warshall's algorithm.
pub fn weak_oracle(lts: &Lts, tau: &str) -> BTreeSet<(StateId, StateId)> {
    let n = lts.n_states();
    let e = edges(lts);
    let mut closure = vec![vec![false; n]; n];
    for (s, row) in closure.iter_mut().enumerate() {
        row[s] = true;
    }
    for (s, l, t) in &e {
        if l == tau {
            closure[*s][*t] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if closure[i][k] {
                for j in 0..n {
                    if closure[k][j] {
                        closure[i][j] = true;
                    }
                }
            }
        }
    }
    let answers = |s: StateId, l: &str| -> BTreeSet<StateId> {
        let before: Vec<StateId> = (0..n).filter(|&x| closure[s][x]).collect();
        if l == tau {
            return before.into_iter().collect();
        }
        let mut out = BTreeSet::new();
        for (x, el, y) in &e {
            if el == l && before.contains(x) {
                out.extend((0..n).filter(|&z| closure[*y][z]));
            }
        }
        out
    };
    game_fixpoint(n, &e, answers)
}

pub fn to_relation(pairs: &BTreeSet<(StateId, StateId)>) -> Relation {
    pairs.iter().copied().collect()
}

/// Closes a set of bisimilar seed pairs into a bisimulation by answering
/// every challenge with the first bisimilar move.
pub fn harvest_bisimulation(lts: &Lts, bisim: &BTreeSet<(StateId, StateId)>, seeds: &[(StateId, StateId)]) -> Relation {
    let e = edges(lts);
    let mut rel: BTreeSet<(StateId, StateId)> = seeds.iter().copied().collect();
    let mut todo: Vec<(StateId, StateId)> = rel.iter().copied().collect();
    while let Some((p, q)) = todo.pop() {
        let mut add = Vec::new();
        for (s, l, p2) in e.iter().filter(|(s, _, _)| *s == p) {
            let _ = s;
            let q2 = e
                .iter()
                .find(|(x, el, y)| *x == q && el == l && bisim.contains(&(*p2, *y)))
                .expect("seeds are bisimilar")
                .2;
            add.push((*p2, q2));
        }
        for (_, l, q2) in e.iter().filter(|(s, _, _)| *s == q) {
            let p2 = e
                .iter()
                .find(|(x, el, y)| *x == p && el == l && bisim.contains(&(*y, *q2)))
                .expect("seeds are bisimilar")
                .2;
            add.push((p2, *q2));
        }
        for pair in add {
            if rel.insert(pair) {
                todo.push(pair);
            }
        }
    }
    to_relation(&rel)
}

// CCS

pub const CCS_DEFS: &str = "A = a.A\nB = 'a.B + tau.B\n";

pub fn ccs_defs() -> Defs {
    parse_defs(CCS_DEFS).unwrap()
}

fn random_act(rng: &mut ChaCha8Rng) -> Act {
    match rng.gen_range(0..5) {
        0 => Act::name("a"),
        1 => Act::name("b"),
        2 => Act::coname("a"),
        3 => Act::coname("b"),
        _ => Act::Tau,
    }
}

/// A random process whose syntax tree has height at most `depth`, leaves
/// counting as height 1.
pub fn random_process(rng: &mut ChaCha8Rng, depth: usize) -> Process {
    if depth <= 1 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..4) {
            0 => Process::constant("A"),
            1 => Process::constant("B"),
            _ => Process::Nil,
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => Process::prefix(random_act(rng), random_process(rng, d)),
        1 => Process::sum(random_process(rng, d), random_process(rng, d)),
        2 => Process::par(random_process(rng, d), random_process(rng, d)),
        _ => Process::res(["a", "b"].choose(rng).unwrap(), random_process(rng, d)),
    }
}

/// A context with its hole at depth at most `depth`.
pub fn random_context(rng: &mut ChaCha8Rng, depth: usize) -> CcsContext {
    if depth == 0 || rng.gen_bool(0.15) {
        return CcsContext::Hole;
    }
    let inner = Box::new(random_context(rng, depth - 1));
    let side = random_process(rng, 2);
    match rng.gen_range(0..6) {
        0 => CcsContext::Prefix(random_act(rng), inner),
        1 => CcsContext::SumL(inner, side),
        2 => CcsContext::SumR(side, inner),
        3 => CcsContext::ParL(inner, side),
        4 => CcsContext::ParR(side, inner),
        _ => CcsContext::Res(["a", "b"].choose(rng).unwrap().to_string(), inner),
    }
}

/// Pairs related by the monoid and commutativity laws of `+` and `|`.
pub fn law_pairs(p: &Process, q: &Process, r: &Process) -> Vec<(&'static str, Process, Process)> {
    let (p, q, r) = (p.clone(), q.clone(), r.clone());
    vec![
        ("P|Q ~ Q|P", Process::par(p.clone(), q.clone()), Process::par(q.clone(), p.clone())),
        (
            "(P|Q)|R ~ P|(Q|R)",
            Process::par(Process::par(p.clone(), q.clone()), r.clone()),
            Process::par(p.clone(), Process::par(q.clone(), r.clone())),
        ),
        ("P|0 ~ P", Process::par(p.clone(), Process::Nil), p.clone()),
        ("P+Q ~ Q+P", Process::sum(p.clone(), q.clone()), Process::sum(q.clone(), p.clone())),
        (
            "(P+Q)+R ~ P+(Q+R)",
            Process::sum(Process::sum(p.clone(), q.clone()), r.clone()),
            Process::sum(p.clone(), Process::sum(q, r)),
        ),
        ("P+0 ~ P", Process::sum(p.clone(), Process::Nil), p.clone()),
        ("P+P ~ P", Process::sum(p.clone(), p.clone()), p),
    ]
}

/// Derivatives by direct case analysis on the SOS rules, as printed pairs.
pub fn naive_moves(defs: &Defs, p: &Process) -> BTreeSet<(String, String)> {
    fn go(defs: &Defs, p: &Process, fuel: usize) -> Vec<(Act, Process)> {
        assert!(fuel > 0, "unguarded recursion in a generated process");
        match p {
            Process::Nil => vec![],
            Process::Prefix(a, k) => vec![(a.clone(), (**k).clone())],
            Process::Sum(l, r) => [go(defs, l, fuel), go(defs, r, fuel)].concat(),
            Process::Par(l, r) => {
                let (ml, mr) = (go(defs, l, fuel), go(defs, r, fuel));
                let mut out = Vec::new();
                for (a, l2) in &ml {
                    out.push((a.clone(), Process::par(l2.clone(), (**r).clone())));
                    for (b, r2) in &mr {
                        let complementary = match (a, b) {
                            (Act::Name(x), Act::Coname(y)) | (Act::Coname(x), Act::Name(y)) => x == y,
                            _ => false,
                        };
                        if complementary {
                            out.push((Act::Tau, Process::par(l2.clone(), r2.clone())));
                        }
                    }
                }
                for (b, r2) in &mr {
                    out.push((b.clone(), Process::par((**l).clone(), r2.clone())));
                }
                out
            }
            Process::Res(c, k) => go(defs, k, fuel)
                .into_iter()
                .filter(|(a, _)| match a {
                    Act::Name(x) | Act::Coname(x) => x != c,
                    Act::Tau => true,
                })
                .map(|(a, k2)| (a, Process::res(c, k2)))
                .collect(),
            Process::Const(k) => go(defs, defs.get(k).expect("bound constant"), fuel - 1),
        }
    }
    go(defs, p, 8).into_iter().map(|(a, q)| (a.to_string(), q.to_string())).collect()
}

// Lambda

pub fn base() -> Ty {
    Ty::base("B")
}

pub fn random_stlc_type(rng: &mut ChaCha8Rng, size: usize) -> Ty {
    if size <= 1 || rng.gen_bool(0.4) {
        return if rng.gen_bool(0.8) { base() } else { Ty::base("C") };
    }
    let left = rng.gen_range(1..size);
    Ty::arrow(random_stlc_type(rng, left), random_stlc_type(rng, size - left))
}

fn arity_match(ty: &Ty, goal: &Ty) -> Option<Vec<Ty>> {
    let mut args = Vec::new();
    let mut cur = ty;
    loop {
        if cur == goal {
            return Some(args);
        }
        match cur {
            Ty::Arrow(d, c) => {
                args.push((**d).clone());
                cur = c;
            }
            _ => return None,
        }
    }
}

/// A closed term of type `goal` built from the variables in `env`, or
/// `None` when the depth budget runs out.
pub fn gen_typed(rng: &mut ChaCha8Rng, env: &mut Vec<(Atom, Ty)>, goal: &Ty, depth: usize) -> Option<Term> {
    let heads: Vec<(Atom, Vec<Ty>)> = env
        .iter()
        .filter_map(|(a, t)| arity_match(t, goal).map(|args| (*a, args)))
        .collect();
    let exact: Vec<Atom> = heads.iter().filter(|(_, args)| args.is_empty()).map(|(a, _)| *a).collect();
    if depth == 0 {
        if let Some(a) = exact.choose(rng) {
            return Some(Term::FVar(*a));
        }
        if let Ty::Arrow(d, c) = goal {
            return gen_abs(rng, env, d, c, 0);
        }
        return None;
    }
    let choice = rng.gen_range(0..10);
    if choice < 4 {
        // a redex (\x:A. body) arg
        let a = random_stlc_type(rng, 2);
        let arg = gen_typed(rng, env, &a, depth - 1)?;
        let f = gen_abs(rng, env, &a, goal, depth - 1)?;
        return Some(Term::app(f, arg));
    }
    if let (true, Ty::Arrow(d, c)) = (choice < 6, goal) {
        return gen_abs(rng, env, d, c, depth - 1);
    }
    if let Some((head, args)) = heads.choose(rng).cloned() {
        let mut t = Term::FVar(head);
        for a in &args {
            t = Term::app(t, gen_typed(rng, env, a, depth - 1)?);
        }
        return Some(t);
    }
    match goal {
        Ty::Arrow(d, c) => gen_abs(rng, env, d, c, depth - 1),
        _ => None,
    }
}

fn gen_abs(rng: &mut ChaCha8Rng, env: &mut Vec<(Atom, Ty)>, dom: &Ty, cod: &Ty, depth: usize) -> Option<Term> {
    let x = Atom(env.iter().map(|(a, _)| a.0 + 1).max().unwrap_or(0));
    env.push((x, dom.clone()));
    let body = gen_typed(rng, env, cod, depth);
    env.pop();
    Some(Term::abs(dom.clone(), body?.close_term(x, 0)))
}

/// A closed well-typed STLC term together with its intended type.
pub fn random_stlc_term(rng: &mut ChaCha8Rng) -> (Term, Ty) {
    loop {
        let mut ty = random_stlc_type(rng, 4);
        if !matches!(ty, Ty::Arrow(..)) {
            ty = Ty::arrow(base(), ty);
        }
        let depth = rng.gen_range(2..=5);
        if let Some(t) = gen_typed(rng, &mut Vec::new(), &ty, depth) {
            return (t, ty);
        }
    }
}

/// Untyped de Bruijn terms with free names, normalised in normal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Db {
    Var(usize),
    Free(u64),
    Lam(Box<Db>),
    App(Box<Db>, Box<Db>),
}

impl Db {
    pub fn from_term(t: &Term) -> Db {
        match t {
            Term::BVar(i) => Db::Var(*i),
            Term::FVar(a) => Db::Free(a.0),
            Term::Abs(_, b) => Db::Lam(Box::new(Db::from_term(b))),
            Term::App(f, a) => Db::App(Box::new(Db::from_term(f)), Box::new(Db::from_term(a))),
            Term::TAbs(..) | Term::TApp(..) => panic!("untyped oracle covers the simply typed fragment"),
        }
    }

    fn shift(&self, by: isize, cutoff: usize) -> Db {
        match self {
            Db::Var(i) if *i >= cutoff => Db::Var((*i as isize + by) as usize),
            Db::Var(_) | Db::Free(_) => self.clone(),
            Db::Lam(b) => Db::Lam(Box::new(b.shift(by, cutoff + 1))),
            Db::App(f, a) => Db::App(Box::new(f.shift(by, cutoff)), Box::new(a.shift(by, cutoff))),
        }
    }

    fn subst(&self, j: usize, s: &Db) -> Db {
        match self {
            Db::Var(i) if *i == j => s.clone(),
            Db::Var(_) | Db::Free(_) => self.clone(),
            Db::Lam(b) => Db::Lam(Box::new(b.subst(j + 1, &s.shift(1, 0)))),
            Db::App(f, a) => Db::App(Box::new(f.subst(j, s)), Box::new(a.subst(j, s))),
        }
    }

    fn beta(body: &Db, arg: &Db) -> Db {
        body.subst(0, &arg.shift(1, 0)).shift(-1, 0)
    }

    pub fn step(&self) -> Option<Db> {
        match self {
            Db::App(f, a) => {
                if let Db::Lam(b) = &**f {
                    return Some(Db::beta(b, a));
                }
                if let Some(f2) = f.step() {
                    return Some(Db::App(Box::new(f2), a.clone()));
                }
                a.step().map(|a2| Db::App(f.clone(), Box::new(a2)))
            }
            Db::Lam(b) => b.step().map(|b2| Db::Lam(Box::new(b2))),
            _ => None,
        }
    }

    /// Normal form and number of steps, if reached within `fuel`.
    pub fn normalize(&self, fuel: usize) -> Option<(Db, usize)> {
        let mut t = self.clone();
        for n in 0..=fuel {
            match t.step() {
                None => return Some((t, n)),
                Some(t2) => t = t2,
            }
        }
        None
    }
}

/// Church numeral `n` at base type `B`.
pub fn church(n: usize) -> Term {
    let mut body = Term::BVar(0);
    for _ in 0..n {
        body = Term::app(Term::BVar(1), body);
    }
    Term::abs(Ty::arrow(base(), base()), Term::abs(base(), body))
}

pub fn tally<K: Ord>(items: impl IntoIterator<Item = K>) -> BTreeMap<K, usize> {
    let mut m = BTreeMap::new();
    for k in items {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}
