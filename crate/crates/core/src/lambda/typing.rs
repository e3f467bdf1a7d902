use super::{Binding, FreeUnion, LambdaError, Term, Ty, TypingCtx};

/// Step budget for one subtyping query.
pub const SUBTYPE_FUEL: usize = 100_000;

fn type_error(subterm: &Term, reason: impl Into<String>) -> LambdaError {
    LambdaError::Type {
        subterm: subterm.clone(),
        reason: reason.into(),
    }
}

/// Simply typed checking with annotated abstractions.
pub fn typecheck_stlc(ctx: &TypingCtx, t: &Term) -> Result<Ty, LambdaError> {
    if !t.is_lc() {
        return Err(LambdaError::IllScoped(t.clone()));
    }
    stlc(&mut ctx.clone(), t)
}

fn stlc(ctx: &mut TypingCtx, t: &Term) -> Result<Ty, LambdaError> {
    match t {
        Term::BVar(_) => Err(LambdaError::IllScoped(t.clone())),
        Term::FVar(a) => match ctx.lookup(*a) {
            Some(Binding::Term(ty)) => Ok(ty.clone()),
            _ => Err(type_error(t, "unbound variable")),
        },
        Term::Abs(ann, body) => {
            if !ann.is_stlc() {
                return Err(type_error(t, "annotation is not a simple type"));
            }
            let x = FreeUnion::new().add(&ctx.dom()).add(&**body).fresh();
            ctx.push(x, Binding::Term(ann.clone()))?;
            let cod = stlc(ctx, &body.open_term(0, &Term::FVar(x)));
            ctx.pop();
            Ok(Ty::arrow(ann.clone(), cod?))
        }
        Term::App(f, a) => {
            let tf = stlc(ctx, f)?;
            let ta = stlc(ctx, a)?;
            match tf {
                Ty::Arrow(dom, cod) if *dom == ta => Ok(*cod),
                Ty::Arrow(..) => Err(type_error(t, "argument type does not match the domain")),
                _ => Err(type_error(t, "applying a term that is not a function")),
            }
        }
        Term::TAbs(..) | Term::TApp(..) => Err(type_error(t, "type abstraction outside System F<:")),
    }
}

/// Algorithmic subtyping with the default fuel.
pub fn subtype(ctx: &TypingCtx, s: &Ty, t: &Ty) -> Result<bool, LambdaError> {
    subtype_with_fuel(ctx, s, t, SUBTYPE_FUEL)
}

/// Algorithmic F<: subtyping (SA-Top, SA-Refl-TVar, SA-Trans-TVar,
/// SA-Arrow, SA-All with contravariant bounds). Each rule application costs
/// one unit of fuel.
pub fn subtype_with_fuel(ctx: &TypingCtx, s: &Ty, t: &Ty, fuel: usize) -> Result<bool, LambdaError> {
    well_formed(ctx, s)?;
    well_formed(ctx, t)?;
    let mut fuel = fuel;
    sub(&mut ctx.clone(), s, t, &mut fuel)
}

/// Checks local closure and that free type variables have type bindings.
fn well_formed(ctx: &TypingCtx, ty: &Ty) -> Result<(), LambdaError> {
    if !ty.is_lc() {
        return Err(LambdaError::IllFormedType(ty.clone()));
    }
    for a in ty.ftv() {
        if !matches!(ctx.lookup(a), Some(Binding::Type(_))) {
            return Err(LambdaError::UnboundTypeVariable(a));
        }
    }
    Ok(())
}

fn bound_of(ctx: &TypingCtx, a: super::Atom) -> Result<Ty, LambdaError> {
    match ctx.lookup(a) {
        Some(Binding::Type(b)) => Ok(b.clone()),
        _ => Err(LambdaError::UnboundTypeVariable(a)),
    }
}

fn sub(ctx: &mut TypingCtx, s: &Ty, t: &Ty, fuel: &mut usize) -> Result<bool, LambdaError> {
    if *fuel == 0 {
        return Err(LambdaError::FuelExhausted);
    }
    *fuel -= 1;
    Ok(match (s, t) {
        (_, Ty::Top) => true,
        (Ty::FVar(a), Ty::FVar(b)) if a == b => true,
        (Ty::Base(a), Ty::Base(b)) => a == b,
        (Ty::FVar(a), _) => {
            let bound = bound_of(ctx, *a)?;
            sub(ctx, &bound, t, fuel)?
        }
        (Ty::Arrow(s1, s2), Ty::Arrow(t1, t2)) => sub(ctx, t1, s1, fuel)? && sub(ctx, s2, t2, fuel)?,
        (Ty::All(s1, s2), Ty::All(t1, t2)) => {
            if !sub(ctx, t1, s1, fuel)? {
                return Ok(false);
            }
            let x = FreeUnion::new().add(&*ctx).add(&**s2).add(&**t2).fresh();
            ctx.push(x, Binding::Type((**t1).clone()))?;
            let body = sub(ctx, &s2.open(0, &Ty::FVar(x)), &t2.open(0, &Ty::FVar(x)), fuel);
            ctx.pop();
            body?
        }
        _ => false,
    })
}

/// F<: checking with subsumption at applications.
pub fn typecheck_fsub(ctx: &TypingCtx, t: &Term) -> Result<Ty, LambdaError> {
    if !t.is_lc() {
        return Err(LambdaError::IllScoped(t.clone()));
    }
    fsub(&mut ctx.clone(), t)
}

/// Promotes type variables to their bounds until the head is structural.
fn expose(ctx: &TypingCtx, ty: &Ty) -> Result<Ty, LambdaError> {
    let mut ty = ty.clone();
    for _ in 0..=ctx.len() {
        match ty {
            Ty::FVar(a) => ty = bound_of(ctx, a)?,
            _ => return Ok(ty),
        }
    }
    Ok(ty)
}

fn checked_sub(ctx: &mut TypingCtx, s: &Ty, t: &Ty) -> Result<bool, LambdaError> {
    let mut fuel = SUBTYPE_FUEL;
    sub(ctx, s, t, &mut fuel)
}

fn fsub(ctx: &mut TypingCtx, t: &Term) -> Result<Ty, LambdaError> {
    match t {
        Term::BVar(_) => Err(LambdaError::IllScoped(t.clone())),
        Term::FVar(a) => match ctx.lookup(*a) {
            Some(Binding::Term(ty)) => Ok(ty.clone()),
            _ => Err(type_error(t, "unbound variable")),
        },
        Term::Abs(ann, body) => {
            well_formed(ctx, ann)?;
            let x = FreeUnion::new().add(&*ctx).add(&**body).fresh();
            ctx.push(x, Binding::Term(ann.clone()))?;
            let cod = fsub(ctx, &body.open_term(0, &Term::FVar(x)));
            ctx.pop();
            Ok(Ty::arrow(ann.clone(), cod?))
        }
        Term::App(f, a) => {
            let tf = fsub(ctx, f)?;
            let ta = fsub(ctx, a)?;
            match expose(ctx, &tf)? {
                Ty::Arrow(dom, cod) => {
                    if checked_sub(ctx, &ta, &dom)? {
                        Ok(*cod)
                    } else {
                        Err(type_error(t, "argument type is not a subtype of the domain"))
                    }
                }
                _ => Err(type_error(t, "applying a term that is not a function")),
            }
        }
        Term::TAbs(bound, body) => {
            well_formed(ctx, bound)?;
            let x = FreeUnion::new().add(&*ctx).add(&**body).fresh();
            ctx.push(x, Binding::Type(bound.clone()))?;
            let ty = fsub(ctx, &body.open_type(0, &Ty::FVar(x)));
            ctx.pop();
            Ok(Ty::all(bound.clone(), ty?.close(x, 0)))
        }
        Term::TApp(f, arg) => {
            let tf = fsub(ctx, f)?;
            well_formed(ctx, arg)?;
            match expose(ctx, &tf)? {
                Ty::All(bound, body) => {
                    if checked_sub(ctx, arg, &bound)? {
                        Ok(body.open(0, arg))
                    } else {
                        Err(type_error(t, "type argument violates the bound"))
                    }
                }
                _ => Err(type_error(t, "type application of a term that is not polymorphic")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::Atom;

    fn b() -> Ty {
        Ty::base("B")
    }

    fn poly_id() -> Term {
        Term::tabs(Ty::Top, Term::abs(Ty::BVar(0), Term::BVar(0)))
    }

    #[test]
    fn stlc_examples() {
        let empty = TypingCtx::new();
        let id = Term::abs(b(), Term::BVar(0));
        assert_eq!(typecheck_stlc(&empty, &id).unwrap(), Ty::arrow(b(), b()));
        let x = Atom(0);
        let ctx = empty.extend(x, Binding::Term(b())).unwrap();
        assert_eq!(typecheck_stlc(&ctx, &Term::app(id, Term::FVar(x))).unwrap(), b());
        let xx = Term::app(Term::FVar(x), Term::FVar(x));
        match typecheck_stlc(&ctx, &xx) {
            Err(LambdaError::Type { subterm, .. }) => assert_eq!(subterm, xx),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            typecheck_stlc(&empty, &Term::BVar(0)),
            Err(LambdaError::IllScoped(_))
        ));
    }

    #[test]
    fn failing_subterm_is_the_innermost() {
        // \x:B. (x x) reports the application with x opened to a fresh atom
        let t = Term::abs(b(), Term::app(Term::BVar(0), Term::BVar(0)));
        match typecheck_stlc(&TypingCtx::new(), &t) {
            Err(LambdaError::Type { subterm, .. }) => {
                assert_eq!(subterm, Term::app(Term::FVar(Atom(0)), Term::FVar(Atom(0))))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn subtyping_examples() {
        let empty = TypingCtx::new();
        let x = Atom(0);
        let ctx = empty.extend(x, Binding::Type(Ty::Top)).unwrap();
        assert!(subtype(&ctx, &Ty::FVar(x), &Ty::Top).unwrap());
        let s = Ty::all(Ty::Top, Ty::arrow(Ty::BVar(0), Ty::BVar(0)));
        let t = Ty::all(Ty::Top, Ty::arrow(Ty::BVar(0), Ty::Top));
        assert!(subtype(&empty, &s, &t).unwrap());
        assert!(!subtype(&empty, &t, &s).unwrap());
        assert_eq!(
            subtype(&empty, &Ty::FVar(x), &Ty::Top),
            Err(LambdaError::UnboundTypeVariable(x))
        );
    }

    #[test]
    fn bounds_are_contravariant() {
        let empty = TypingCtx::new();
        // All X<:Top. X -> X  <:  All X<:(B->B). X -> X, but not conversely
        let loose = Ty::all(Ty::Top, Ty::arrow(Ty::BVar(0), Ty::BVar(0)));
        let tight = Ty::all(Ty::arrow(b(), b()), Ty::arrow(Ty::BVar(0), Ty::BVar(0)));
        assert!(subtype(&empty, &loose, &tight).unwrap());
        assert!(!subtype(&empty, &tight, &loose).unwrap());
    }

    #[test]
    fn trans_tvar_chains() {
        let (x, y) = (Atom(0), Atom(1));
        let ctx = TypingCtx::new()
            .extend(x, Binding::Type(Ty::arrow(Ty::Top, b())))
            .unwrap()
            .extend(y, Binding::Type(Ty::FVar(x)))
            .unwrap();
        assert!(subtype(&ctx, &Ty::FVar(y), &Ty::arrow(b(), b())).unwrap());
        assert!(!subtype(&ctx, &Ty::FVar(x), &Ty::FVar(y)).unwrap());
    }

    #[test]
    fn fuel_guard() {
        let s = Ty::all(Ty::Top, Ty::arrow(Ty::BVar(0), Ty::BVar(0)));
        assert_eq!(
            subtype_with_fuel(&TypingCtx::new(), &s, &s, 2),
            Err(LambdaError::FuelExhausted)
        );
    }

    #[test]
    fn polymorphic_identity() {
        let empty = TypingCtx::new();
        let ty = typecheck_fsub(&empty, &poly_id()).unwrap();
        assert_eq!(ty, Ty::all(Ty::Top, Ty::arrow(Ty::BVar(0), Ty::BVar(0))));
        let inst = Term::tapp(poly_id(), Ty::Top);
        assert_eq!(typecheck_fsub(&empty, &inst).unwrap(), Ty::arrow(Ty::Top, Ty::Top));
    }

    #[test]
    fn bound_violation() {
        let empty = TypingCtx::new();
        let bounded = Term::tabs(Ty::arrow(b(), b()), Term::abs(Ty::BVar(0), Term::BVar(0)));
        assert!(typecheck_fsub(&empty, &Term::tapp(bounded.clone(), Ty::arrow(b(), b()))).is_ok());
        assert!(typecheck_fsub(&empty, &Term::tapp(bounded.clone(), Ty::arrow(Ty::Top, b()))).is_ok());
        match typecheck_fsub(&empty, &Term::tapp(bounded, Ty::Top)) {
            Err(LambdaError::Type { reason, .. }) => assert!(reason.contains("bound")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn application_through_a_bound() {
        // /\X<:(B->B). \f:X. \y:B. f y
        let t = Term::tabs(
            Ty::arrow(b(), b()),
            Term::abs(Ty::BVar(0), Term::abs(b(), Term::app(Term::BVar(1), Term::BVar(0)))),
        );
        let ty = typecheck_fsub(&TypingCtx::new(), &t).unwrap();
        assert_eq!(ty, Ty::all(Ty::arrow(b(), b()), Ty::arrow(Ty::BVar(0), Ty::arrow(b(), b()))));
    }

    #[test]
    fn subsumption_at_application() {
        // (\f:B->Top. f) (\x:Top. y) accepts an argument of type Top->B
        let y = Atom(0);
        let ctx = TypingCtx::new().extend(y, Binding::Term(b())).unwrap();
        let g = Term::abs(Ty::arrow(b(), Ty::Top), Term::BVar(0));
        let h = Term::abs(Ty::Top, Term::FVar(y));
        assert_eq!(typecheck_fsub(&ctx, &Term::app(g, h)).unwrap(), Ty::arrow(b(), Ty::Top));
    }
}
