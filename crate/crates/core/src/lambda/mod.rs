//! Locally nameless simply typed lambda calculus and System F<:.
//!
//! Bound variables are de Bruijn indices, free variables are [`Atom`]s.
//! Term binders (`abs`) and type binders (`tabs`, `all`) number their
//! indices separately. Entering a binder opens it with one fresh atom drawn
//! from [`FreeUnion`], so no cofinite quantification appears at run time.

mod eval;
mod syntax;
mod typing;

pub use eval::{eval, step_fsub, step_stlc, Evaluation, FsubReduction, StlcReduction};
pub use syntax::{parse_term, parse_term_with, parse_ty, Names, Parsed};
pub use typing::{subtype, subtype_with_fuel, typecheck_fsub, typecheck_stlc, SUBTYPE_FUEL};

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u64);

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Types with a computable element outside any finite set.
pub trait HasFresh: Sized + Ord {
    fn fresh(avoid: &BTreeSet<Self>) -> Self;
}

impl HasFresh for Atom {
    /// One past the largest id, or 0 for the empty set.
    fn fresh(avoid: &BTreeSet<Atom>) -> Atom {
        avoid.last().map_or(Atom(0), |a| Atom(a.0 + 1))
    }
}

pub fn fresh(avoid: &BTreeSet<Atom>) -> Atom {
    Atom::fresh(avoid)
}

/// Values that mention atoms.
pub trait FreeAtoms {
    fn free_atoms(&self) -> BTreeSet<Atom>;
}

impl FreeAtoms for Atom {
    fn free_atoms(&self) -> BTreeSet<Atom> {
        BTreeSet::from([*self])
    }
}

impl FreeAtoms for BTreeSet<Atom> {
    fn free_atoms(&self) -> BTreeSet<Atom> {
        self.clone()
    }
}

impl FreeAtoms for Ty {
    fn free_atoms(&self) -> BTreeSet<Atom> {
        self.ftv()
    }
}

impl FreeAtoms for Term {
    fn free_atoms(&self) -> BTreeSet<Atom> {
        let mut atoms = self.fv();
        atoms.extend(self.ftv());
        atoms
    }
}

impl FreeAtoms for TypingCtx {
    /// Keys plus every atom in the bound types.
    fn free_atoms(&self) -> BTreeSet<Atom> {
        let mut atoms = BTreeSet::new();
        for (a, b) in &self.entries {
            atoms.insert(*a);
            atoms.extend(b.ty().ftv());
        }
        atoms
    }
}

/// Union of the atoms of everything in scope, one collector at a time.
///
/// ```
/// use std::collections::BTreeSet;
/// use opsem::lambda::{Atom, FreeUnion};
///
/// let x = Atom(7);
/// let xs = BTreeSet::from([Atom(4), Atom(5)]);
/// let atoms = FreeUnion::new().add(&x).add(&xs).with(&(), |_| [1, 2, 3].map(Atom).into()).atoms();
/// assert_eq!(atoms, [1, 2, 3, 4, 5, 7].map(Atom).into());
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeUnion {
    atoms: BTreeSet<Atom>,
}

impl FreeUnion {
    pub fn new() -> FreeUnion {
        FreeUnion::default()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add<T: FreeAtoms + ?Sized>(self, value: &T) -> FreeUnion {
        self.with(value, T::free_atoms)
    }

    pub fn with<T: ?Sized>(mut self, value: &T, extract: impl FnOnce(&T) -> BTreeSet<Atom>) -> FreeUnion {
        self.atoms.extend(extract(value));
        self
    }

    pub fn atoms(self) -> BTreeSet<Atom> {
        self.atoms
    }

    pub fn fresh(&self) -> Atom {
        fresh(&self.atoms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ty {
    Base(String),
    Top,
    BVar(usize),
    FVar(Atom),
    Arrow(Box<Ty>, Box<Ty>),
    /// `All(bound, body)` binds index 0 in `body`.
    All(Box<Ty>, Box<Ty>),
}

impl Ty {
    pub fn base(name: &str) -> Ty {
        Ty::Base(name.to_owned())
    }

    pub fn arrow(dom: Ty, cod: Ty) -> Ty {
        Ty::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn all(bound: Ty, body: Ty) -> Ty {
        Ty::All(Box::new(bound), Box::new(body))
    }

    /// Replaces type index `k` by `u`.
    pub fn open(&self, k: usize, u: &Ty) -> Ty {
        match self {
            Ty::BVar(i) if *i == k => u.clone(),
            Ty::Base(_) | Ty::Top | Ty::BVar(_) | Ty::FVar(_) => self.clone(),
            Ty::Arrow(d, c) => Ty::arrow(d.open(k, u), c.open(k, u)),
            Ty::All(b, body) => Ty::all(b.open(k, u), body.open(k + 1, u)),
        }
    }

    /// Abstracts the atom `a` as type index `k`.
    pub fn close(&self, a: Atom, k: usize) -> Ty {
        match self {
            Ty::FVar(x) if *x == a => Ty::BVar(k),
            Ty::Base(_) | Ty::Top | Ty::BVar(_) | Ty::FVar(_) => self.clone(),
            Ty::Arrow(d, c) => Ty::arrow(d.close(a, k), c.close(a, k)),
            Ty::All(b, body) => Ty::all(b.close(a, k), body.close(a, k + 1)),
        }
    }

    pub fn ftv(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_ftv(&mut out);
        out
    }

    fn collect_ftv(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Ty::FVar(a) => {
                out.insert(*a);
            }
            Ty::Base(_) | Ty::Top | Ty::BVar(_) => {}
            Ty::Arrow(x, y) | Ty::All(x, y) => {
                x.collect_ftv(out);
                y.collect_ftv(out);
            }
        }
    }

    pub fn is_lc(&self) -> bool {
        self.lc_at(0)
    }

    fn lc_at(&self, depth: usize) -> bool {
        match self {
            Ty::BVar(i) => *i < depth,
            Ty::Base(_) | Ty::Top | Ty::FVar(_) => true,
            Ty::Arrow(d, c) => d.lc_at(depth) && c.lc_at(depth),
            Ty::All(b, body) => b.lc_at(depth) && body.lc_at(depth + 1),
        }
    }

    /// Built from base types and arrows only.
    pub fn is_stlc(&self) -> bool {
        match self {
            Ty::Base(_) => true,
            Ty::Arrow(d, c) => d.is_stlc() && c.is_stlc(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    BVar(usize),
    FVar(Atom),
    Abs(Ty, Box<Term>),
    App(Box<Term>, Box<Term>),
    TAbs(Ty, Box<Term>),
    TApp(Box<Term>, Ty),
}

impl Term {
    pub fn abs(ann: Ty, body: Term) -> Term {
        Term::Abs(ann, Box::new(body))
    }

    pub fn app(f: Term, arg: Term) -> Term {
        Term::App(Box::new(f), Box::new(arg))
    }

    pub fn tabs(bound: Ty, body: Term) -> Term {
        Term::TAbs(bound, Box::new(body))
    }

    pub fn tapp(f: Term, arg: Ty) -> Term {
        Term::TApp(Box::new(f), arg)
    }

    /// Replaces term index `k` by `u`.
    pub fn open_term(&self, k: usize, u: &Term) -> Term {
        match self {
            Term::BVar(i) if *i == k => u.clone(),
            Term::BVar(_) | Term::FVar(_) => self.clone(),
            Term::Abs(t, b) => Term::abs(t.clone(), b.open_term(k + 1, u)),
            Term::App(f, a) => Term::app(f.open_term(k, u), a.open_term(k, u)),
            Term::TAbs(t, b) => Term::tabs(t.clone(), b.open_term(k, u)),
            Term::TApp(f, t) => Term::tapp(f.open_term(k, u), t.clone()),
        }
    }

    /// Abstracts the term atom `a` as term index `k`.
    pub fn close_term(&self, a: Atom, k: usize) -> Term {
        match self {
            Term::FVar(x) if *x == a => Term::BVar(k),
            Term::BVar(_) | Term::FVar(_) => self.clone(),
            Term::Abs(t, b) => Term::abs(t.clone(), b.close_term(a, k + 1)),
            Term::App(f, x) => Term::app(f.close_term(a, k), x.close_term(a, k)),
            Term::TAbs(t, b) => Term::tabs(t.clone(), b.close_term(a, k)),
            Term::TApp(f, t) => Term::tapp(f.close_term(a, k), t.clone()),
        }
    }

    /// Replaces type index `k` by `u` in every annotation.
    pub fn open_type(&self, k: usize, u: &Ty) -> Term {
        match self {
            Term::BVar(_) | Term::FVar(_) => self.clone(),
            Term::Abs(t, b) => Term::abs(t.open(k, u), b.open_type(k, u)),
            Term::App(f, a) => Term::app(f.open_type(k, u), a.open_type(k, u)),
            Term::TAbs(t, b) => Term::tabs(t.open(k, u), b.open_type(k + 1, u)),
            Term::TApp(f, t) => Term::tapp(f.open_type(k, u), t.open(k, u)),
        }
    }

    /// Abstracts the type atom `a` as type index `k`.
    pub fn close_type(&self, a: Atom, k: usize) -> Term {
        match self {
            Term::BVar(_) | Term::FVar(_) => self.clone(),
            Term::Abs(t, b) => Term::abs(t.close(a, k), b.close_type(a, k)),
            Term::App(f, x) => Term::app(f.close_type(a, k), x.close_type(a, k)),
            Term::TAbs(t, b) => Term::tabs(t.close(a, k), b.close_type(a, k + 1)),
            Term::TApp(f, t) => Term::tapp(f.close_type(a, k), t.close(a, k)),
        }
    }

    /// Free term atoms.
    pub fn fv(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::FVar(a) = t {
                out.insert(*a);
            }
        });
        out
    }

    /// Free type atoms in annotations and type arguments.
    pub fn ftv(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Abs(ty, _) | Term::TAbs(ty, _) | Term::TApp(_, ty) => ty.collect_ftv(&mut out),
            _ => {}
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::BVar(_) | Term::FVar(_) => {}
            Term::Abs(_, b) | Term::TAbs(_, b) | Term::TApp(b, _) => b.visit(f),
            Term::App(x, y) => {
                x.visit(f);
                y.visit(f);
            }
        }
    }

    /// No index of either kind escapes its binders.
    pub fn is_lc(&self) -> bool {
        self.lc_at(0, 0)
    }

    fn lc_at(&self, terms: usize, types: usize) -> bool {
        match self {
            Term::BVar(i) => *i < terms,
            Term::FVar(_) => true,
            Term::Abs(t, b) => t.lc_at(types) && b.lc_at(terms + 1, types),
            Term::App(f, a) => f.lc_at(terms, types) && a.lc_at(terms, types),
            Term::TAbs(t, b) => t.lc_at(types) && b.lc_at(terms, types + 1),
            Term::TApp(f, t) => f.lc_at(terms, types) && t.lc_at(types),
        }
    }

    /// Abstractions of either kind.
    pub fn is_value(&self) -> bool {
        matches!(self, Term::Abs(..) | Term::TAbs(..))
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    /// A term variable of the given type.
    Term(Ty),
    /// A type variable with the given upper bound.
    Type(Ty),
}

impl Binding {
    pub fn ty(&self) -> &Ty {
        match self {
            Binding::Term(t) | Binding::Type(t) => t,
        }
    }
}

/// A typing context as a keyed list, most recent entry first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypingCtx {
    // stored oldest first
    entries: Vec<(Atom, Binding)>,
}

impl TypingCtx {
    pub fn new() -> TypingCtx {
        TypingCtx::default()
    }

    pub fn lookup(&self, a: Atom) -> Option<&Binding> {
        self.entries.iter().find(|(k, _)| *k == a).map(|(_, b)| b)
    }

    pub fn extend(&self, a: Atom, binding: Binding) -> Result<TypingCtx, LambdaError> {
        let mut ctx = self.clone();
        ctx.push(a, binding)?;
        Ok(ctx)
    }

    pub(crate) fn push(&mut self, a: Atom, binding: Binding) -> Result<(), LambdaError> {
        if self.lookup(a).is_some() {
            return Err(LambdaError::DuplicateKey(a));
        }
        self.entries.push((a, binding));
        Ok(())
    }

    pub(crate) fn pop(&mut self) {
        self.entries.pop();
    }

    pub fn dom(&self) -> BTreeSet<Atom> {
        self.entries.iter().map(|(a, _)| *a).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries from most recent to oldest.
    pub fn iter(&self) -> impl Iterator<Item = (Atom, &Binding)> {
        self.entries.iter().rev().map(|(a, b)| (*a, b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LambdaError {
    #[error("context already binds {0}")]
    DuplicateKey(Atom),
    #[error("term is not locally closed: {0}")]
    IllScoped(Term),
    #[error("type is not well formed here: {0}")]
    IllFormedType(Ty),
    #[error("unbound type variable {0}")]
    UnboundTypeVariable(Atom),
    #[error("subtyping check ran out of fuel")]
    FuelExhausted,
    #[error("ill-typed subterm {subterm}: {reason}")]
    Type { subterm: Term, reason: String },
}
