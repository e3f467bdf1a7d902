//! Surface syntax.
//!
//! ```text
//! term  ::= "\" x ":" ty "." term | "/\" X ["<:" ty] "." term | app
//! app   ::= atom (atom | "[" ty "]")*
//! atom  ::= x | "(" term ")"
//! ty    ::= "All" X ["<:" ty] "." ty | tatom ["->" ty]
//! tatom ::= "Top" | X | "(" ty ")"
//! ```
//!
//! Term variables start with a lowercase letter, type names with an
//! uppercase one. Unbound term variables become atoms through [`Names`];
//! unbound type names are base types. A missing bound means `Top`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Atom, Term, Ty};
use crate::syntax::{Scanner, SyntaxError};

/// Interning table between free variable names and atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Names {
    by_name: BTreeMap<String, Atom>,
    by_atom: BTreeMap<Atom, String>,
}

impl Names {
    pub fn new() -> Names {
        Names::default()
    }

    /// The atom for `name`, allocating the next unused one if needed.
    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&a) = self.by_name.get(name) {
            return a;
        }
        let a = self.by_atom.last_key_value().map_or(Atom(0), |(a, _)| Atom(a.0 + 1));
        self.by_name.insert(name.to_owned(), a);
        self.by_atom.insert(a, name.to_owned());
        a
    }

    pub fn atom(&self, name: &str) -> Option<Atom> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, a: Atom) -> Option<&str> {
        self.by_atom.get(&a).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Atom)> {
        self.by_name.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.by_atom.keys().copied().collect()
    }

    pub fn print_term(&self, t: &Term) -> String {
        let mut p = Printer::new(self);
        p.avoid_in_term(t);
        let mut out = String::new();
        p.term(t, 0, &mut out);
        out
    }

    pub fn print_ty(&self, ty: &Ty) -> String {
        let mut p = Printer::new(self);
        p.avoid_in_ty(ty);
        let mut out = String::new();
        p.ty(ty, 0, &mut out);
        out
    }
}

/// A parsed term with the table naming its free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub term: Term,
    pub names: Names,
}

pub fn parse_term(src: &str) -> Result<Parsed, SyntaxError> {
    let mut names = Names::new();
    let term = parse_term_with(src, &mut names)?;
    Ok(Parsed { term, names })
}

/// Parses with an existing table, adding any new free variables to it.
pub fn parse_term_with(src: &str, names: &mut Names) -> Result<Term, SyntaxError> {
    let mut p = Parser {
        s: Scanner::new(src),
        names,
        terms: Vec::new(),
        types: Vec::new(),
    };
    let t = p.term()?;
    if !p.s.at_end() {
        return Err(p.s.error("unexpected input after term".into()));
    }
    Ok(t)
}

pub fn parse_ty(src: &str) -> Result<Ty, SyntaxError> {
    let mut p = Parser {
        s: Scanner::new(src),
        names: &mut Names::new(),
        terms: Vec::new(),
        types: Vec::new(),
    };
    let ty = p.ty()?;
    if !p.s.at_end() {
        return Err(p.s.error("unexpected input after type".into()));
    }
    Ok(ty)
}

struct Parser<'a, 'n> {
    s: Scanner<'a>,
    names: &'n mut Names,
    terms: Vec<&'a str>,
    types: Vec<&'a str>,
}

fn is_term_var(id: &str) -> bool {
    id.starts_with(|c: char| c.is_ascii_lowercase())
}

fn is_type_name(id: &str) -> bool {
    id.starts_with(|c: char| c.is_ascii_uppercase()) && id != "Top" && id != "All"
}

fn index_of(stack: &[&str], name: &str) -> Option<usize> {
    stack.iter().rev().position(|n| *n == name)
}

impl<'a> Parser<'a, '_> {
    fn term_var(&mut self) -> Result<&'a str, SyntaxError> {
        match self.s.peek_ident() {
            Some(id) if is_term_var(id) => {
                self.s.ident();
                Ok(id)
            }
            _ => Err(self.s.error("expected a term variable".into())),
        }
    }

    fn type_var(&mut self) -> Result<&'a str, SyntaxError> {
        match self.s.peek_ident() {
            Some(id) if is_type_name(id) => {
                self.s.ident();
                Ok(id)
            }
            _ => Err(self.s.error("expected a type variable".into())),
        }
    }

    fn optional_bound(&mut self) -> Result<Ty, SyntaxError> {
        if self.s.eat("<:") {
            self.ty()
        } else {
            Ok(Ty::Top)
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        self.s.enter()?;
        let t = self.term_inner()?;
        self.s.leave();
        Ok(t)
    }

    fn term_inner(&mut self) -> Result<Term, SyntaxError> {
        if self.s.eat("\\") {
            let x = self.term_var()?;
            self.s.expect(":")?;
            let ann = self.ty()?;
            self.s.expect(".")?;
            self.terms.push(x);
            let body = self.term();
            self.terms.pop();
            return Ok(Term::abs(ann, body?));
        }
        if self.s.eat("/\\") {
            let x = self.type_var()?;
            let bound = self.optional_bound()?;
            self.s.expect(".")?;
            self.types.push(x);
            let body = self.term();
            self.types.pop();
            return Ok(Term::tabs(bound, body?));
        }
        let mut t = self.atom()?;
        loop {
            if self.s.eat("[") {
                let ty = self.ty()?;
                self.s.expect("]")?;
                t = Term::tapp(t, ty);
            } else if self.s.looking_at("(") || self.s.peek_ident().is_some_and(is_term_var) {
                t = Term::app(t, self.atom()?);
            } else {
                return Ok(t);
            }
        }
    }

    fn atom(&mut self) -> Result<Term, SyntaxError> {
        if self.s.eat("(") {
            let t = self.term()?;
            self.s.expect(")")?;
            return Ok(t);
        }
        let x = self.term_var()?;
        Ok(match index_of(&self.terms, x) {
            Some(i) => Term::BVar(i),
            None => Term::FVar(self.names.intern(x)),
        })
    }

    fn ty(&mut self) -> Result<Ty, SyntaxError> {
        self.s.enter()?;
        let ty = self.ty_inner()?;
        self.s.leave();
        Ok(ty)
    }

    fn ty_inner(&mut self) -> Result<Ty, SyntaxError> {
        if self.s.keyword("All") {
            let x = self.type_var()?;
            let bound = self.optional_bound()?;
            self.s.expect(".")?;
            self.types.push(x);
            let body = self.ty();
            self.types.pop();
            return Ok(Ty::all(bound, body?));
        }
        let dom = self.ty_atom()?;
        if self.s.eat("->") {
            return Ok(Ty::arrow(dom, self.ty()?));
        }
        Ok(dom)
    }

    fn ty_atom(&mut self) -> Result<Ty, SyntaxError> {
        if self.s.keyword("Top") {
            return Ok(Ty::Top);
        }
        if self.s.eat("(") {
            let ty = self.ty()?;
            self.s.expect(")")?;
            return Ok(ty);
        }
        let x = self.type_var()?;
        Ok(match index_of(&self.types, x) {
            Some(i) => Ty::BVar(i),
            None => Ty::Base(x.to_owned()),
        })
    }
}

struct Printer<'n> {
    names: &'n Names,
    taken_terms: BTreeSet<String>,
    taken_types: BTreeSet<String>,
    terms: Vec<String>,
    types: Vec<String>,
}

fn candidates(letters: &'static [&'static str]) -> impl Iterator<Item = String> {
    (0..).flat_map(move |round: usize| {
        letters.iter().map(move |l| if round == 0 { l.to_string() } else { format!("{l}{round}") })
    })
}

impl<'n> Printer<'n> {
    fn new(names: &'n Names) -> Printer<'n> {
        Printer {
            names,
            taken_terms: BTreeSet::new(),
            taken_types: BTreeSet::new(),
            terms: Vec::new(),
            types: Vec::new(),
        }
    }

    fn avoid_in_ty(&mut self, ty: &Ty) {
        match ty {
            Ty::Base(b) => {
                self.taken_types.insert(b.clone());
            }
            Ty::FVar(a) => {
                if let Some(n) = self.names.name(*a) {
                    self.taken_types.insert(n.to_owned());
                }
            }
            Ty::Top | Ty::BVar(_) => {}
            Ty::Arrow(x, y) | Ty::All(x, y) => {
                self.avoid_in_ty(x);
                self.avoid_in_ty(y);
            }
        }
    }

    fn avoid_in_term(&mut self, t: &Term) {
        match t {
            Term::FVar(a) => {
                if let Some(n) = self.names.name(*a) {
                    self.taken_terms.insert(n.to_owned());
                }
            }
            Term::BVar(_) => {}
            Term::Abs(ty, b) | Term::TAbs(ty, b) | Term::TApp(b, ty) => {
                self.avoid_in_ty(ty);
                self.avoid_in_term(b);
            }
            Term::App(f, a) => {
                self.avoid_in_term(f);
                self.avoid_in_term(a);
            }
        }
    }

    fn pick(taken: &BTreeSet<String>, stack: &[String], letters: &'static [&'static str]) -> String {
        candidates(letters)
            .find(|c| !taken.contains(c) && !stack.contains(c))
            .expect("infinitely many candidates")
    }

    fn atom_name(&self, a: Atom) -> String {
        self.names.name(a).map_or_else(|| a.to_string(), str::to_owned)
    }

    fn bound_name(stack: &[String], i: usize) -> String {
        stack
            .len()
            .checked_sub(i + 1)
            .map_or_else(|| format!("?{i}"), |j| stack[j].clone())
    }

    fn term(&mut self, t: &Term, level: u8, out: &mut String) {
        let wrap = match t {
            Term::Abs(..) | Term::TAbs(..) => level > 0,
            Term::App(..) | Term::TApp(..) => level > 1,
            _ => false,
        };
        if wrap {
            out.push('(');
        }
        match t {
            Term::BVar(i) => out.push_str(&Self::bound_name(&self.terms, *i)),
            Term::FVar(a) => out.push_str(&self.atom_name(*a)),
            Term::Abs(ann, body) => {
                let x = Self::pick(&self.taken_terms, &self.terms, &["x", "y", "z", "u", "v", "w"]);
                out.push('\\');
                out.push_str(&x);
                out.push(':');
                self.ty(ann, 0, out);
                out.push_str(". ");
                self.terms.push(x);
                self.term(body, 0, out);
                self.terms.pop();
            }
            Term::TAbs(bound, body) => {
                let x = Self::pick(&self.taken_types, &self.types, &["X", "Y", "Z", "U", "V", "W"]);
                out.push_str("/\\");
                out.push_str(&x);
                out.push_str("<:");
                self.ty(bound, 0, out);
                out.push_str(". ");
                self.types.push(x);
                self.term(body, 0, out);
                self.types.pop();
            }
            Term::App(f, a) => {
                self.term(f, 1, out);
                out.push(' ');
                self.term(a, 2, out);
            }
            Term::TApp(f, ty) => {
                self.term(f, 1, out);
                out.push_str(" [");
                self.ty(ty, 0, out);
                out.push(']');
            }
        }
        if wrap {
            out.push(')');
        }
    }

    fn ty(&mut self, ty: &Ty, level: u8, out: &mut String) {
        let wrap = matches!(ty, Ty::Arrow(..) | Ty::All(..)) && level > 0;
        if wrap {
            out.push('(');
        }
        match ty {
            Ty::Base(b) => out.push_str(b),
            Ty::Top => out.push_str("Top"),
            Ty::BVar(i) => out.push_str(&Self::bound_name(&self.types, *i)),
            Ty::FVar(a) => out.push_str(&self.atom_name(*a)),
            Ty::Arrow(d, c) => {
                self.ty(d, 1, out);
                out.push_str(" -> ");
                self.ty(c, 0, out);
            }
            Ty::All(bound, body) => {
                let x = Self::pick(&self.taken_types, &self.types, &["X", "Y", "Z", "U", "V", "W"]);
                out.push_str("All ");
                out.push_str(&x);
                out.push_str("<:");
                self.ty(bound, 0, out);
                out.push_str(". ");
                self.types.push(x);
                self.ty(body, 0, out);
                self.types.pop();
            }
        }
        if wrap {
            out.push(')');
        }
    }
}

impl fmt::Display for Term {
    /// Free atoms print as `#n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Names::new().print_term(self))
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Names::new().print_ty(self))
    }
}
