//! Milner's Calculus of Communicating Systems.
//!
//! Names and constants are text tokens: channels start with a lowercase
//! letter, constants with an uppercase one. Recursion goes through constants
//! bound in a [`Defs`] environment. States of the derived LTS are process
//! terms compared syntactically; no structural congruence is applied.

mod check;
mod context;
mod parse;
mod sos;

pub use check::{bisimilar_ccs, congruence_sample, weak_bisimilar_ccs};
pub use context::{decompose, CcsContext, Terminal};
pub use parse::{parse_defs, parse_process};
pub use sos::{explore_lts, transitions, Exploration};

use std::collections::BTreeMap;
use std::fmt;

use crate::lts::Label;
use crate::syntax::SyntaxError;

/// Token used for τ when a process graph is rendered as an LTS.
pub const TAU_LABEL: &str = "i";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CcsError {
    #[error("unbound constant `{0}`")]
    UnboundConstant(String),
    #[error("unguarded recursion through constant `{0}`")]
    UnguardedRecursion(String),
    #[error("exploration exceeded {limit} states ({discovered} discovered before stopping)")]
    BoundExceeded { limit: usize, discovered: usize },
    #[error("channel `{TAU_LABEL}` is reserved for the silent action")]
    ReservedChannel,
    #[error("`{p}` and `{q}` are not bisimilar")]
    NotBisimilar { p: String, q: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Act {
    Name(String),
    Coname(String),
    Tau,
}

impl Act {
    pub fn name(ch: &str) -> Act {
        Act::Name(ch.to_owned())
    }

    pub fn coname(ch: &str) -> Act {
        Act::Coname(ch.to_owned())
    }

    /// The complementary action; τ has none.
    pub fn co(&self) -> Option<Act> {
        match self {
            Act::Name(c) => Some(Act::Coname(c.clone())),
            Act::Coname(c) => Some(Act::Name(c.clone())),
            Act::Tau => None,
        }
    }

    pub fn channel(&self) -> Option<&str> {
        match self {
            Act::Name(c) | Act::Coname(c) => Some(c),
            Act::Tau => None,
        }
    }

    /// `a`, `'a`, or `i` for τ.
    pub fn to_label(&self) -> Result<Label, CcsError> {
        let token = match self {
            Act::Name(c) if c == TAU_LABEL => return Err(CcsError::ReservedChannel),
            Act::Name(c) => c.clone(),
            Act::Coname(c) => format!("'{c}"),
            Act::Tau => TAU_LABEL.to_owned(),
        };
        Label::new(token).map_err(|_| CcsError::ReservedChannel)
    }
}

impl fmt::Display for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Act::Name(c) => write!(f, "{c}"),
            Act::Coname(c) => write!(f, "'{c}"),
            Act::Tau => f.write_str("tau"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Process {
    Nil,
    Prefix(Act, Box<Process>),
    Sum(Box<Process>, Box<Process>),
    Par(Box<Process>, Box<Process>),
    Res(String, Box<Process>),
    Const(String),
}

impl Process {
    pub fn prefix(act: Act, cont: Process) -> Process {
        Process::Prefix(act, Box::new(cont))
    }

    pub fn sum(left: Process, right: Process) -> Process {
        Process::Sum(Box::new(left), Box::new(right))
    }

    pub fn par(left: Process, right: Process) -> Process {
        Process::Par(Box::new(left), Box::new(right))
    }

    pub fn res(ch: &str, body: Process) -> Process {
        Process::Res(ch.to_owned(), Box::new(body))
    }

    pub fn constant(k: &str) -> Process {
        Process::Const(k.to_owned())
    }

    /// Height of the syntax tree; leaves count as 1.
    pub fn depth(&self) -> usize {
        match self {
            Process::Nil | Process::Const(_) => 1,
            Process::Prefix(_, p) | Process::Res(_, p) => 1 + p.depth(),
            Process::Sum(l, r) | Process::Par(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        // levels: 0 sum, 1 parallel, 2 prefix and restriction
        let (own, wrap) = match self {
            Process::Sum(..) => (0, level > 0),
            Process::Par(..) => (1, level > 1),
            _ => (2, false),
        };
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Process::Nil => f.write_str("0")?,
            Process::Const(k) => f.write_str(k)?,
            Process::Prefix(a, p) => {
                write!(f, "{a}.")?;
                p.fmt_at(f, 2)?;
            }
            Process::Res(c, p) => {
                write!(f, "new {c} in ")?;
                p.fmt_at(f, 2)?;
            }
            Process::Sum(l, r) | Process::Par(l, r) => {
                l.fmt_at(f, own)?;
                f.write_str(if own == 0 { " + " } else { " | " })?;
                r.fmt_at(f, own + 1)?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Constant definitions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Defs {
    map: BTreeMap<String, Process>,
}

impl Defs {
    pub fn new() -> Defs {
        Defs::default()
    }

    /// Adds or replaces the body of `k`.
    pub fn define(&mut self, k: &str, body: Process) -> Option<Process> {
        self.map.insert(k.to_owned(), body)
    }

    pub fn get(&self, k: &str) -> Option<&Process> {
        self.map.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Process)> {
        self.map.iter().map(|(k, p)| (k.as_str(), p))
    }
}

impl fmt::Display for Defs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in &self.map {
            writeln!(f, "{k} = {p}")?;
        }
        Ok(())
    }
}
