//! Aldebaran `.aut` reader and writer.
//!
//! ```text
//! des (0, 3, 3)
//! initial: 0 2
//! accepting: 1
//! (0,"a",1)
//! (0,"i",2)
//! (2,"b",1)
//! ```
//!
//! The `initial:` and `accepting:` lines are an extension for automata. They
//! may only appear directly after the header, each at most once, in this
//! order. Writers emit labels quoted; readers accept quoted or bare labels.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use super::{Label, Lts, StateId};

/// Largest state count accepted by the reader.
pub const MAX_AUT_STATES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutDocument {
    /// The header's initial state.
    pub initial: StateId,
    pub lts: Lts,
    /// `initial:` extension line, when present.
    pub initial_set: Option<BTreeSet<StateId>>,
    /// `accepting:` extension line, when present.
    pub accepting: Option<BTreeSet<StateId>>,
}

impl AutDocument {
    pub fn new(initial: StateId, lts: Lts) -> AutDocument {
        AutDocument {
            initial,
            lts,
            initial_set: None,
            accepting: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct AutError {
    pub line: usize,
    pub kind: AutErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutErrorKind {
    #[error("missing `des (I, T, N)` header")]
    MissingHeader,
    #[error("duplicate `des` header")]
    DuplicateHeader,
    #[error("malformed header")]
    MalformedHeader,
    #[error("malformed transition, expected `(src,\"label\",dst)`")]
    MalformedTransition,
    #[error("state {state} is not below the declared state count {n_states}")]
    StateOutOfRange { state: StateId, n_states: usize },
    #[error("state count {0} exceeds the supported maximum")]
    TooManyStates(usize),
    #[error("header declares {declared} transitions but {found} were given")]
    CountMismatch { declared: usize, found: usize },
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate `{0}:` line")]
    DuplicateExtension(&'static str),
    #[error("`{0}:` line must directly follow the header")]
    MisplacedExtension(&'static str),
    #[error("malformed `{0}:` line")]
    MalformedExtension(&'static str),
}

fn err(line: usize, kind: AutErrorKind) -> AutError {
    AutError { line, kind }
}

fn parse_header(text: &str) -> Option<(usize, usize, usize)> {
    let inner = text.strip_prefix("des")?.trim_start();
    let inner = inner.strip_prefix('(')?.strip_suffix(')')?;
    let mut parts = inner.split(',').map(|p| p.trim().parse::<usize>());
    let (i, t, n) = (parts.next()?.ok()?, parts.next()?.ok()?, parts.next()?.ok()?);
    parts.next().is_none().then_some((i, t, n))
}

fn parse_transition(text: &str) -> Option<(usize, &str, usize)> {
    let inner = text.strip_prefix('(')?.strip_suffix(')')?;
    let (src, rest) = inner.split_once(',')?;
    let (label, dst) = rest.rsplit_once(',')?;
    let label = label.trim();
    let label = match label.strip_prefix('"') {
        Some(q) => q.strip_suffix('"')?,
        None => label,
    };
    Some((src.trim().parse().ok()?, label, dst.trim().parse().ok()?))
}

fn extension(text: &str) -> Option<(&'static str, &str)> {
    ["initial", "accepting"]
        .into_iter()
        .find_map(|key| Some((key, text.strip_prefix(key)?.strip_prefix(':')?)))
}

fn parse_id_list(text: &str) -> Option<BTreeSet<StateId>> {
    text.split_whitespace().map(|t| t.parse().ok()).collect()
}

pub fn parse_aut(src: &str) -> Result<AutDocument, AutError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut initial_set = None;
    let mut accepting = None;
    let mut seen_transition = false;
    let mut transitions = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        if text.starts_with("des") {
            if header.is_some() {
                return Err(err(line, AutErrorKind::DuplicateHeader));
            }
            let h = parse_header(text).ok_or(err(line, AutErrorKind::MalformedHeader))?;
            if h.2 > MAX_AUT_STATES {
                return Err(err(line, AutErrorKind::TooManyStates(h.2)));
            }
            if h.0 >= h.2 {
                return Err(err(line, AutErrorKind::StateOutOfRange { state: h.0, n_states: h.2 }));
            }
            header = Some(h);
            continue;
        }
        let Some((_, _, n_states)) = header else {
            return Err(err(line, AutErrorKind::MissingHeader));
        };
        if let Some((key, rest)) = extension(text) {
            let misplaced = seen_transition || (key == "initial" && accepting.is_some());
            let slot = if key == "initial" { &mut initial_set } else { &mut accepting };
            if slot.is_some() {
                return Err(err(line, AutErrorKind::DuplicateExtension(key)));
            }
            if misplaced {
                return Err(err(line, AutErrorKind::MisplacedExtension(key)));
            }
            let set = parse_id_list(rest).ok_or(err(line, AutErrorKind::MalformedExtension(key)))?;
            if let Some(&state) = set.iter().find(|&&s| s >= n_states) {
                return Err(err(line, AutErrorKind::StateOutOfRange { state, n_states }));
            }
            *slot = Some(set);
            continue;
        }
        seen_transition = true;
        let (s, label, t) = parse_transition(text).ok_or(err(line, AutErrorKind::MalformedTransition))?;
        for state in [s, t] {
            if state >= n_states {
                return Err(err(line, AutErrorKind::StateOutOfRange { state, n_states }));
            }
        }
        let label = Label::new(label).map_err(|_| err(line, AutErrorKind::InvalidLabel(label.to_owned())))?;
        transitions.push((s, label, t));
    }

    let (initial, declared, n_states) = header.ok_or(err(last_line.max(1), AutErrorKind::MissingHeader))?;
    if declared != transitions.len() {
        return Err(err(
            last_line.max(1),
            AutErrorKind::CountMismatch { declared, found: transitions.len() },
        ));
    }
    let alphabet: Vec<Label> = transitions.iter().map(|(_, l, _)| l.clone()).collect();
    let lts = Lts::new(n_states, alphabet, transitions).expect("transitions validated while reading");
    Ok(AutDocument {
        initial,
        lts,
        initial_set,
        accepting,
    })
}

fn write_id_list(buf: &mut String, key: &str, set: &BTreeSet<StateId>) -> fmt::Result {
    buf.push_str(key);
    buf.push(':');
    for s in set {
        write!(buf, " {s}")?;
    }
    buf.push('\n');
    Ok(())
}

/// Renders a document; transitions appear in `(src, label, dst)` order.
pub fn write_aut(doc: &AutDocument) -> String {
    let lts = &doc.lts;
    let mut buf = String::new();
    let res = (|| -> fmt::Result {
        writeln!(buf, "des ({}, {}, {})", doc.initial, lts.n_transitions(), lts.n_states())?;
        if let Some(set) = &doc.initial_set {
            write_id_list(&mut buf, "initial", set)?;
        }
        if let Some(set) = &doc.accepting {
            write_id_list(&mut buf, "accepting", set)?;
        }
        for (s, l, t) in lts.transitions() {
            writeln!(buf, "({s},\"{l}\",{t})")?;
        }
        Ok(())
    })();
    res.expect("writing to a String cannot fail");
    buf
}
