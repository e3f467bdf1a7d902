use super::{FreeUnion, Term, Ty};
use crate::lts::ReductionSystem;

/// One leftmost-outermost β step, reducing under binders.
pub fn step_stlc(t: &Term) -> Option<Term> {
    step(t, false)
}

/// [`step_stlc`] extended with type β: `(/\X<:B. e) [U]` steps to `e[X := U]`.
pub fn step_fsub(t: &Term) -> Option<Term> {
    step(t, true)
}

fn step(t: &Term, types: bool) -> Option<Term> {
    match t {
        Term::BVar(_) | Term::FVar(_) => None,
        Term::App(f, a) => {
            if let Term::Abs(_, body) = &**f {
                return Some(body.open_term(0, a));
            }
            if let Some(f2) = step(f, types) {
                return Some(Term::app(f2, (**a).clone()));
            }
            step(a, types).map(|a2| Term::app((**f).clone(), a2))
        }
        Term::TApp(f, ty) => {
            if let (true, Term::TAbs(_, body)) = (types, &**f) {
                return Some(body.open_type(0, ty));
            }
            step(f, types).map(|f2| Term::tapp(f2, ty.clone()))
        }
        Term::Abs(ann, body) => {
            let x = FreeUnion::new().add(&**body).fresh();
            let stepped = step(&body.open_term(0, &Term::FVar(x)), types)?;
            Some(Term::abs(ann.clone(), stepped.close_term(x, 0)))
        }
        Term::TAbs(bound, body) => {
            let x = FreeUnion::new().add(&**body).fresh();
            let stepped = step(&body.open_type(0, &Ty::FVar(x)), types)?;
            Some(Term::tabs(bound.clone(), stepped.close_type(x, 0)))
        }
    }
}

/// Outcome of running a term to normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Normal { term: Term, steps: usize },
    OutOfFuel { term: Term },
}

/// Steps until a normal form, at most `fuel` times.
pub fn eval(t: &Term, fsub: bool, fuel: usize) -> Evaluation {
    let mut term = t.clone();
    for steps in 0..=fuel {
        match step(&term, fsub) {
            None => return Evaluation::Normal { term, steps },
            Some(next) if steps < fuel => term = next,
            Some(_) => break,
        }
    }
    Evaluation::OutOfFuel { term }
}

/// Simply typed β as a reduction system.
#[derive(Debug, Clone, Copy, Default)]
pub struct StlcReduction;

impl ReductionSystem for StlcReduction {
    type Term = Term;

    fn reducts(&self, t: &Term) -> Vec<Term> {
        step_stlc(t).into_iter().collect()
    }
}

/// β and type β as a reduction system.
#[derive(Debug, Clone, Copy, Default)]
pub struct FsubReduction;

impl ReductionSystem for FsubReduction {
    type Term = Term;

    fn reducts(&self, t: &Term) -> Vec<Term> {
        step_fsub(t).into_iter().collect()
    }
}
