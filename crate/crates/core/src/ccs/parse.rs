//! Surface syntax for processes and definition files.
//!
//! ```text
//! sum   ::= par ("+" par)*
//! par   ::= unary ("|" unary)*
//! unary ::= act "." unary | "new" name "in" unary | "0" | Const | "(" sum ")"
//! act   ::= "tau" | name | "'" name
//! ```

use super::{Act, Defs, Process, TAU_LABEL};
use crate::syntax::{Scanner, SyntaxError};

const RESERVED: [&str; 4] = ["new", "in", "tau", TAU_LABEL];

pub fn parse_process(src: &str) -> Result<Process, SyntaxError> {
    let mut s = Scanner::new(src);
    let p = sum(&mut s)?;
    if !s.at_end() {
        return Err(s.error("unexpected input after process".into()));
    }
    Ok(p)
}

/// Reads `K = P` lines. Blank lines and lines starting with `#` are skipped.
pub fn parse_defs(src: &str) -> Result<Defs, SyntaxError> {
    let mut defs = Defs::new();
    for (i, line) in src.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut s = Scanner::at_line(line, i + 1);
        let k = match s.peek_ident() {
            Some(k) if k.starts_with(|c: char| c.is_ascii_uppercase()) => k,
            _ => return Err(s.error("expected a constant name".into())),
        };
        let at_name = s.error(format!("duplicate definition of `{k}`"));
        s.ident();
        s.expect("=")?;
        let body = sum(&mut s)?;
        if !s.at_end() {
            return Err(s.error("unexpected input after process".into()));
        }
        if defs.get(k).is_some() {
            return Err(at_name);
        }
        defs.define(k, body);
    }
    Ok(defs)
}

fn sum(s: &mut Scanner) -> Result<Process, SyntaxError> {
    let mut p = par(s)?;
    while s.eat("+") {
        p = Process::sum(p, par(s)?);
    }
    Ok(p)
}

fn par(s: &mut Scanner) -> Result<Process, SyntaxError> {
    let mut p = unary(s)?;
    while s.eat("|") {
        p = Process::par(p, unary(s)?);
    }
    Ok(p)
}

fn channel(s: &mut Scanner) -> Result<String, SyntaxError> {
    match s.peek_ident() {
        Some(id) if id.starts_with(|c: char| c.is_ascii_lowercase()) => {
            if RESERVED.contains(&id) {
                return Err(s.error(format!("`{id}` is reserved")));
            }
            s.ident();
            Ok(id.to_owned())
        }
        _ => Err(s.error("expected a channel name".into())),
    }
}

fn unary(s: &mut Scanner) -> Result<Process, SyntaxError> {
    s.enter()?;
    let p = unary_inner(s)?;
    s.leave();
    Ok(p)
}

fn unary_inner(s: &mut Scanner) -> Result<Process, SyntaxError> {
    if s.keyword("new") {
        let c = channel(s)?;
        if !s.keyword("in") {
            return Err(s.error("expected `in`".into()));
        }
        return Ok(Process::Res(c, Box::new(unary(s)?)));
    }
    let act = if s.keyword("tau") {
        Act::Tau
    } else if s.eat("'") {
        Act::Coname(channel(s)?)
    } else if s.peek().is_some_and(|c| c.is_ascii_lowercase()) {
        Act::Name(channel(s)?)
    } else {
        return atom(s);
    };
    s.expect(".")?;
    Ok(Process::prefix(act, unary(s)?))
}

fn atom(s: &mut Scanner) -> Result<Process, SyntaxError> {
    if s.eat("(") {
        let p = sum(s)?;
        s.expect(")")?;
        return Ok(p);
    }
    if let Some(k) = s.peek_ident().filter(|k| k.starts_with(|c: char| c.is_ascii_uppercase())) {
        s.ident();
        return Ok(Process::constant(k));
    }
    if s.peek() == Some('0') {
        s.eat("0");
        return Ok(Process::Nil);
    }
    Err(s.error("expected a process".into()))
}
