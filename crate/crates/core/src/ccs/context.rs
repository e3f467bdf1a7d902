use std::fmt;

use super::{Act, Process};
use crate::lts::HasContext;

/// A process with exactly one hole.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CcsContext {
    Hole,
    Prefix(Act, Box<CcsContext>),
    SumL(Box<CcsContext>, Process),
    SumR(Process, Box<CcsContext>),
    ParL(Box<CcsContext>, Process),
    ParR(Process, Box<CcsContext>),
    Res(String, Box<CcsContext>),
}

impl CcsContext {
    pub fn fill(&self, p: Process) -> Process {
        match self {
            CcsContext::Hole => p,
            CcsContext::Prefix(a, c) => Process::prefix(a.clone(), c.fill(p)),
            CcsContext::SumL(c, r) => Process::sum(c.fill(p), r.clone()),
            CcsContext::SumR(l, c) => Process::sum(l.clone(), c.fill(p)),
            CcsContext::ParL(c, r) => Process::par(c.fill(p), r.clone()),
            CcsContext::ParR(l, c) => Process::par(l.clone(), c.fill(p)),
            CcsContext::Res(ch, c) => Process::res(ch, c.fill(p)),
        }
    }

    /// `self[inner]`, so that `self.compose(inner).fill(p) == self.fill(inner.fill(p))`.
    pub fn compose(&self, inner: &CcsContext) -> CcsContext {
        let wrap = |c: &CcsContext| Box::new(c.compose(inner));
        match self {
            CcsContext::Hole => inner.clone(),
            CcsContext::Prefix(a, c) => CcsContext::Prefix(a.clone(), wrap(c)),
            CcsContext::SumL(c, r) => CcsContext::SumL(wrap(c), r.clone()),
            CcsContext::SumR(l, c) => CcsContext::SumR(l.clone(), wrap(c)),
            CcsContext::ParL(c, r) => CcsContext::ParL(wrap(c), r.clone()),
            CcsContext::ParR(l, c) => CcsContext::ParR(l.clone(), wrap(c)),
            CcsContext::Res(ch, c) => CcsContext::Res(ch.clone(), wrap(c)),
        }
    }

    /// Number of operators between the root and the hole.
    pub fn depth(&self) -> usize {
        match self {
            CcsContext::Hole => 0,
            CcsContext::Prefix(_, c)
            | CcsContext::SumL(c, _)
            | CcsContext::SumR(_, c)
            | CcsContext::ParL(c, _)
            | CcsContext::ParR(_, c)
            | CcsContext::Res(_, c) => 1 + c.depth(),
        }
    }
}

impl fmt::Display for CcsContext {
    /// Prints the context filled with `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fill(Process::constant("[]")))
    }
}

impl HasContext for Process {
    type Context = CcsContext;

    fn fill(context: &CcsContext, term: Process) -> Process {
        context.fill(term)
    }
}

/// A leaf of the syntax tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Terminal {
    Nil,
    Const(String),
}

impl Terminal {
    pub fn to_process(&self) -> Process {
        match self {
            Terminal::Nil => Process::Nil,
            Terminal::Const(k) => Process::Const(k.clone()),
        }
    }
}

/// Splits off the leftmost leaf: `fill(c, t) == p`.
pub fn decompose(p: &Process) -> (CcsContext, Terminal) {
    match p {
        Process::Nil => (CcsContext::Hole, Terminal::Nil),
        Process::Const(k) => (CcsContext::Hole, Terminal::Const(k.clone())),
        Process::Prefix(a, q) => {
            let (c, t) = decompose(q);
            (CcsContext::Prefix(a.clone(), Box::new(c)), t)
        }
        Process::Sum(l, r) => {
            let (c, t) = decompose(l);
            (CcsContext::SumL(Box::new(c), (**r).clone()), t)
        }
        Process::Par(l, r) => {
            let (c, t) = decompose(l);
            (CcsContext::ParL(Box::new(c), (**r).clone()), t)
        }
        Process::Res(ch, q) => {
            let (c, t) = decompose(q);
            (CcsContext::Res(ch.clone(), Box::new(c)), t)
        }
    }
}
