//! Unification-based type elaboration for raw terms.
//!
//! Every k/s/fix occurrence gets fresh monotype metavariables; application
//! and ascription emit first-order unification constraints; there is no
//! polymorphic generalisation. Two finishing policies share the solver:
//!
//! - [`elaborate`] demands every occurrence fully monomorphic and reports a
//!   leftover metavariable as an ambiguity error naming the combinator
//!   occurrence an ascription would fix (a bare `k zero` is ambiguous);
//! - [`elaborate_or_default`] grounds leftover metavariables at `nat`.
//!   Classic combinator programs pin down their own behaviour but not all
//!   of their subscripts — `fix (s k k)` runs at base type for *any* choice
//!   of the middle type of `s` — so program-running front ends use this
//!   policy and still get a deterministic, fully concrete term.
//!
//! Either way elaboration is deterministic: the same raw term always
//! yields the same elaborated term.

use std::collections::HashMap;

use thiserror::Error;

use super::parse::{RawConst, RawTerm, Span};
use super::{PcfType, Term};

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum ElabError {
    #[error("{span}: type mismatch: `{left}` vs `{right}`")]
    Mismatch {
        span: Span,
        left: String,
        right: String,
    },
    #[error("{span}: occurs check: cannot construct the infinite type")]
    Occurs { span: Span },
    #[error("{span}: ambiguous type for this `{name}`: resolved only to `{partial}`; add an ascription")]
    Ambiguous {
        span: Span,
        name: &'static str,
        partial: String,
    },
}

/// Types-with-metavariables used during inference.
#[derive(Clone, PartialEq, Eq, Debug)]
enum MetaType {
    Nat,
    Arrow(Box<MetaType>, Box<MetaType>),
    Var(u32),
}

impl MetaType {
    fn arrow(a: MetaType, b: MetaType) -> MetaType {
        MetaType::Arrow(Box::new(a), Box::new(b))
    }

    fn of(t: &PcfType) -> MetaType {
        match t {
            PcfType::Nat => MetaType::Nat,
            PcfType::Arrow(a, b) => MetaType::arrow(MetaType::of(a), MetaType::of(b)),
        }
    }
}

#[derive(Default)]
struct Solver {
    subst: HashMap<u32, MetaType>,
    fresh: u32,
}

impl Solver {
    fn fresh_var(&mut self) -> MetaType {
        let v = self.fresh;
        self.fresh += 1;
        MetaType::Var(v)
    }

    /// Applies the substitution as far as it goes.
    fn resolve(&self, t: &MetaType) -> MetaType {
        match t {
            MetaType::Nat => MetaType::Nat,
            MetaType::Arrow(a, b) => MetaType::arrow(self.resolve(a), self.resolve(b)),
            MetaType::Var(v) => match self.subst.get(v) {
                Some(u) => self.resolve(u),
                None => MetaType::Var(*v),
            },
        }
    }

    fn occurs(&self, v: u32, t: &MetaType) -> bool {
        match t {
            MetaType::Nat => false,
            MetaType::Arrow(a, b) => self.occurs(v, a) || self.occurs(v, b),
            MetaType::Var(u) => *u == v,
        }
    }

    fn unify(&mut self, a: &MetaType, b: &MetaType, span: Span) -> Result<(), ElabError> {
        let a = self.resolve(a);
        let b = self.resolve(b);
        match (&a, &b) {
            (MetaType::Nat, MetaType::Nat) => Ok(()),
            (MetaType::Var(v), MetaType::Var(u)) if v == u => Ok(()),
            (MetaType::Var(v), t) | (t, MetaType::Var(v)) => {
                if self.occurs(*v, t) {
                    return Err(ElabError::Occurs { span });
                }
                self.subst.insert(*v, t.clone());
                Ok(())
            }
            (MetaType::Arrow(a1, a2), MetaType::Arrow(b1, b2)) => {
                self.unify(a1, b1, span)?;
                self.unify(a2, b2, span)
            }
            _ => Err(ElabError::Mismatch {
                span,
                left: render_meta(&a),
                right: render_meta(&b),
            }),
        }
    }

    /// Grounds a solved type, defaulting leftover metavariables to nat.
    fn ground(&self, t: &MetaType) -> PcfType {
        match self.resolve(t) {
            MetaType::Nat | MetaType::Var(_) => PcfType::Nat,
            MetaType::Arrow(a, b) => PcfType::arrow(self.ground(&a), self.ground(&b)),
        }
    }

    fn has_unsolved(&self, t: &MetaType) -> bool {
        match self.resolve(t) {
            MetaType::Nat => false,
            MetaType::Var(_) => true,
            MetaType::Arrow(a, b) => self.has_unsolved(&a) || self.has_unsolved(&b),
        }
    }
}

fn render_meta(t: &MetaType) -> String {
    match t {
        MetaType::Nat => "nat".to_string(),
        MetaType::Var(v) => format!("?{v}"),
        MetaType::Arrow(a, b) => match a.as_ref() {
            MetaType::Arrow(_, _) => format!("({}) -> {}", render_meta(a), render_meta(b)),
            _ => format!("{} -> {}", render_meta(a), render_meta(b)),
        },
    }
}

/// A half-built term: the shape is fixed, combinator parameters still refer
/// to metavariables.
enum Sketch {
    Zero,
    Succ,
    Pred,
    Ifz,
    K(MetaType, MetaType, Span),
    S(MetaType, MetaType, MetaType, Span),
    Fix(MetaType, Span),
    App(Box<Sketch>, Box<Sketch>),
}

fn infer(raw: &RawTerm, solver: &mut Solver) -> Result<(Sketch, MetaType), ElabError> {
    match raw {
        RawTerm::Const(c, span) => {
            let nat = MetaType::Nat;
            Ok(match c {
                RawConst::Zero => (Sketch::Zero, nat),
                RawConst::Succ => (Sketch::Succ, MetaType::arrow(MetaType::Nat, nat)),
                RawConst::Pred => (Sketch::Pred, MetaType::arrow(MetaType::Nat, nat)),
                RawConst::Ifz => (
                    Sketch::Ifz,
                    MetaType::arrow(
                        MetaType::Nat,
                        MetaType::arrow(MetaType::Nat, MetaType::arrow(MetaType::Nat, nat)),
                    ),
                ),
                RawConst::K => {
                    let a = solver.fresh_var();
                    let b = solver.fresh_var();
                    let ty = MetaType::arrow(a.clone(), MetaType::arrow(b.clone(), a.clone()));
                    (Sketch::K(a, b, *span), ty)
                }
                RawConst::S => {
                    let a = solver.fresh_var();
                    let b = solver.fresh_var();
                    let c2 = solver.fresh_var();
                    let ty = MetaType::arrow(
                        MetaType::arrow(a.clone(), MetaType::arrow(b.clone(), c2.clone())),
                        MetaType::arrow(
                            MetaType::arrow(a.clone(), b.clone()),
                            MetaType::arrow(a.clone(), c2.clone()),
                        ),
                    );
                    (Sketch::S(a, b, c2, *span), ty)
                }
                RawConst::Fix => {
                    let a = solver.fresh_var();
                    let ty = MetaType::arrow(
                        MetaType::arrow(a.clone(), a.clone()),
                        a.clone(),
                    );
                    (Sketch::Fix(a, *span), ty)
                }
            })
        }
        RawTerm::App(f, x) => {
            let (sf, tf) = infer(f, solver)?;
            let (sx, tx) = infer(x, solver)?;
            let result = solver.fresh_var();
            let want = MetaType::arrow(tx, result.clone());
            solver.unify(&tf, &want, f.span())?;
            Ok((Sketch::App(Box::new(sf), Box::new(sx)), result))
        }
        RawTerm::Ascribe(inner, ty, span) => {
            let (si, ti) = infer(inner, solver)?;
            solver.unify(&ti, &MetaType::of(ty), *span)?;
            Ok((si, ti))
        }
    }
}

fn finish(sketch: &Sketch, solver: &Solver) -> Term {
    match sketch {
        Sketch::Zero => Term::Zero,
        Sketch::Succ => Term::Succ,
        Sketch::Pred => Term::Pred,
        Sketch::Ifz => Term::Ifz,
        Sketch::K(a, b, _) => Term::K(solver.ground(a), solver.ground(b)),
        Sketch::S(a, b, c, _) => {
            Term::S(solver.ground(a), solver.ground(b), solver.ground(c))
        }
        Sketch::Fix(a, _) => Term::Fix(solver.ground(a)),
        Sketch::App(f, x) => Term::app(finish(f, solver), finish(x, solver)),
    }
}

/// Finds a combinator occurrence with an unsolved parameter so the
/// ambiguity error can point somewhere actionable.
fn find_open_occurrence(
    sketch: &Sketch,
    solver: &Solver,
) -> Option<(&'static str, Span, String)> {
    match sketch {
        Sketch::Zero | Sketch::Succ | Sketch::Pred | Sketch::Ifz => None,
        Sketch::K(a, b, span) => {
            let open = solver.has_unsolved(a) || solver.has_unsolved(b);
            open.then(|| {
                let partial = MetaType::arrow(a.clone(), MetaType::arrow(b.clone(), a.clone()));
                ("k", *span, render_meta(&solver.resolve(&partial)))
            })
        }
        Sketch::S(a, b, c, span) => {
            let open =
                solver.has_unsolved(a) || solver.has_unsolved(b) || solver.has_unsolved(c);
            open.then(|| {
                let partial = MetaType::arrow(
                    MetaType::arrow(a.clone(), MetaType::arrow(b.clone(), c.clone())),
                    MetaType::arrow(
                        MetaType::arrow(a.clone(), b.clone()),
                        MetaType::arrow(a.clone(), c.clone()),
                    ),
                );
                ("s", *span, render_meta(&solver.resolve(&partial)))
            })
        }
        Sketch::Fix(a, span) => solver.has_unsolved(a).then(|| {
            let partial = MetaType::arrow(MetaType::arrow(a.clone(), a.clone()), a.clone());
            ("fix", *span, render_meta(&solver.resolve(&partial)))
        }),
        Sketch::App(f, x) => {
            find_open_occurrence(f, solver).or_else(|| find_open_occurrence(x, solver))
        }
    }
}

/// Elaborates a raw term into a fully typed one; any metavariable left
/// unsolved (in the term's type or inside a combinator subscript) is an
/// ambiguity error.
pub fn elaborate(raw: &RawTerm) -> Result<Term, ElabError> {
    let mut solver = Solver::default();
    let (sketch, ty) = infer(raw, &mut solver)?;
    if let Some((name, span, partial)) = find_open_occurrence(&sketch, &solver) {
        return Err(ElabError::Ambiguous { span, name, partial });
    }
    if solver.has_unsolved(&ty) {
        return Err(ElabError::Ambiguous {
            span: raw.span(),
            name: "term",
            partial: render_meta(&solver.resolve(&ty)),
        });
    }
    Ok(finish(&sketch, &solver))
}

/// Elaborates, grounding leftover metavariables at `nat`. Never reports
/// ambiguity; mismatch and occurs-check errors remain.
pub fn elaborate_or_default(raw: &RawTerm) -> Result<Term, ElabError> {
    let mut solver = Solver::default();
    let (sketch, _ty) = infer(raw, &mut solver)?;
    Ok(finish(&sketch, &solver))
}

/// Convenience for program sources: parse, then elaborate with defaulting.
pub fn elaborate_str(src: &str) -> Result<Term, crate::pcf::PcfError> {
    let raw = super::parse::parse(src)?;
    Ok(elaborate_or_default(&raw)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcf::{numeral, parse, render, type_of, PcfType::Nat};

    fn elab(src: &str) -> Term {
        elaborate(&parse(src).unwrap()).unwrap()
    }

    fn elab_d(src: &str) -> Term {
        elaborate_or_default(&parse(src).unwrap()).unwrap()
    }

    #[test]
    fn pred_zero_types_at_nat() {
        let t = elab("pred zero");
        assert_eq!(type_of(&t).unwrap(), Nat);
    }

    #[test]
    fn fix_k_zero_infers_concrete_instances() {
        let t = elab("fix (k zero)");
        let want = Term::app(
            Term::Fix(Nat),
            Term::app(Term::K(Nat, Nat), Term::Zero),
        );
        assert_eq!(t, want);
    }

    #[test]
    fn application_of_zero_is_a_mismatch() {
        let err = elaborate(&parse("zero zero").unwrap()).unwrap_err();
        assert!(matches!(err, ElabError::Mismatch { .. }));
    }

    #[test]
    fn bare_k_zero_is_ambiguous() {
        let err = elaborate(&parse("k zero").unwrap()).unwrap_err();
        match err {
            ElabError::Ambiguous { name, .. } => assert_eq!(name, "k"),
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn ascription_resolves_ambiguity() {
        let t = elab("(k zero : nat -> nat)");
        assert_eq!(t, Term::app(Term::K(Nat, Nat), Term::Zero));
    }

    #[test]
    fn fix_s_k_k_is_ambiguous_strictly_but_defaults_to_nat() {
        // Nothing pins any type in `fix (s k k)` down, so the strict policy
        // reports ambiguity and the defaulting one grounds at nat.
        assert!(matches!(
            elaborate(&parse("fix (s k k)").unwrap()),
            Err(ElabError::Ambiguous { .. })
        ));
        let t = elab_d("fix (s k k)");
        assert_eq!(type_of(&t).unwrap(), Nat);
        let nn = PcfType::arrow(Nat, Nat);
        let want = Term::app(
            Term::Fix(Nat),
            Term::app(
                Term::app(Term::S(Nat, nn.clone(), Nat), Term::K(Nat, nn)),
                Term::K(Nat, Nat),
            ),
        );
        assert_eq!(t, want);
    }

    #[test]
    fn elaboration_is_deterministic() {
        let raw = parse("fix (s k k)").unwrap();
        assert_eq!(
            elaborate_or_default(&raw).unwrap(),
            elaborate_or_default(&raw).unwrap()
        );
    }

    #[test]
    fn numerals_elaborate_to_numerals() {
        for n in [0u64, 1, 7, 100] {
            let t = elab(&format!("#{n}"));
            assert_eq!(t, numeral(n));
        }
    }

    #[test]
    fn render_round_trips_through_parse_and_elaborate() {
        let samples = [
            "zero",
            "succ (pred zero)",
            "fix (k zero)",
            "fix (s k k)",
            "(k zero : nat -> nat)",
            "ifz zero #2 (succ (pred zero))",
            "(s : (nat -> (nat -> nat) -> nat) -> (nat -> nat -> nat) -> nat -> nat) k k zero",
        ];
        for src in samples {
            let t = elab_d(src);
            // The canonical render ascribes every combinator, so even the
            // strict policy re-elaborates it to the same term.
            let back = elab(&render(&t));
            assert_eq!(t, back, "round trip failed for {src}");
        }
    }

    #[test]
    fn conflicting_ascription_is_a_mismatch() {
        let err = elaborate(&parse("(zero : nat -> nat)").unwrap()).unwrap_err();
        assert!(matches!(err, ElabError::Mismatch { .. }));
    }
}
