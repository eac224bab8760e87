//! Small-step operational semantics for combinatory PCF, with decision
//! procedures for the k-step reflexive transitive closure.
//!
//! The rewrite rules:
//!
//! ```text
//! pred 0̲         ▷ 0̲            ifz s t 0̲    ▷ s
//! pred (n+1)̲     ▷ n̲            ifz s t (n+1)̲ ▷ t
//! k s t          ▷ s            s f g t       ▷ f t (g t)
//! fix f          ▷ f (fix f)
//! s ▷ t ⟹ succ s ▷ succ t      s ▷ t ⟹ pred s ▷ pred t
//! r ▷ r' ⟹ ifz s t r ▷ ifz s t r'
//! f ▷ g ⟹ f t ▷ g t
//! ```
//!
//! On well-typed terms at most one rule applies ([`all_steps`] is the
//! relational matcher used to test that), so [`step`] fixes a matching
//! order — redex rules before the congruences, congruences in the order
//! succ-arg, pred-arg, ifz-third-arg, application-function — and is a total
//! deterministic function. Iterating [`step`] and comparing structurally
//! decides the k-step closure ([`k_step_exact`], [`k_step_at_most`]) and
//! semidecides the full closure within a budget ([`reduces_star`]).

use std::fmt::Write as _;

use thiserror::Error;

use crate::pcf::{as_numeral, numeral, type_of, Term, TypeError};

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum OpsemError {
    #[error("terms have different types: `{left}` vs `{right}`")]
    TypeMismatch { left: String, right: String },
    #[error("term is not of base type: {0}")]
    NotBaseType(String),
    #[error(transparent)]
    IllTyped(#[from] TypeError),
}

/// The unique successor of a reducible term; `None` on normal forms.
pub fn step(t: &Term) -> Option<Term> {
    let Term::App(f, b) = t else { return None };

    // Redex rules.
    match f.as_ref() {
        Term::Pred => {
            if let Some(n) = as_numeral(b) {
                return Some(numeral(n.saturating_sub(1)));
            }
        }
        Term::App(g, t2) => match g.as_ref() {
            // k s t ▷ s
            Term::K(_, _) => return Some(t2.as_ref().clone()),
            Term::App(h, s1) => match h.as_ref() {
                // ifz s t r: the redex fires only when r is a numeral.
                Term::Ifz => {
                    if let Some(n) = as_numeral(b) {
                        return Some(if n == 0 {
                            s1.as_ref().clone()
                        } else {
                            t2.as_ref().clone()
                        });
                    }
                }
                // s f g t ▷ f t (g t)
                Term::S(_, _, _) => {
                    return Some(Term::app(
                        Term::app(s1.as_ref().clone(), b.as_ref().clone()),
                        Term::app(t2.as_ref().clone(), b.as_ref().clone()),
                    ));
                }
                _ => {}
            },
            _ => {}
        },
        // fix f ▷ f (fix f)
        Term::Fix(_) => {
            return Some(Term::app(b.as_ref().clone(), t.clone()));
        }
        _ => {}
    }

    // Congruences, in the fixed order.
    if matches!(f.as_ref(), Term::Succ) {
        if let Some(b2) = step(b) {
            return Some(Term::app(Term::Succ, b2));
        }
    }
    if matches!(f.as_ref(), Term::Pred) {
        if let Some(b2) = step(b) {
            return Some(Term::app(Term::Pred, b2));
        }
    }
    if let Term::App(g, _) = f.as_ref() {
        if let Term::App(h, _) = g.as_ref() {
            if matches!(h.as_ref(), Term::Ifz) {
                if let Some(b2) = step(b) {
                    return Some(Term::app(f.as_ref().clone(), b2));
                }
            }
        }
    }
    if let Some(f2) = step(f) {
        return Some(Term::app(f2, b.as_ref().clone()));
    }
    None
}

/// Names for the rewrite rules, used by the relational matcher.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleId {
    PredZero,
    PredSucc,
    IfzZero,
    IfzSucc,
    KRule,
    SRule,
    FixRule,
    CongSucc,
    CongPred,
    CongIfz,
    CongApp,
}

/// Relational matcher: every derivable single step of `t`, as (rule,
/// result) pairs. Independent of [`step`]'s matching order; on well-typed
/// terms the list should never have more than one entry.
pub fn all_steps(t: &Term) -> Vec<(RuleId, Term)> {
    let mut out = Vec::new();
    let Term::App(f, b) = t else { return out };

    if matches!(f.as_ref(), Term::Pred) {
        if let Some(n) = as_numeral(b) {
            let rule = if n == 0 { RuleId::PredZero } else { RuleId::PredSucc };
            out.push((rule, numeral(n.saturating_sub(1))));
        }
    }
    if let Term::App(g, t2) = f.as_ref() {
        if matches!(g.as_ref(), Term::K(_, _)) {
            out.push((RuleId::KRule, t2.as_ref().clone()));
        }
        if let Term::App(h, s1) = g.as_ref() {
            if matches!(h.as_ref(), Term::Ifz) {
                if let Some(n) = as_numeral(b) {
                    let (rule, result) = if n == 0 {
                        (RuleId::IfzZero, s1.as_ref().clone())
                    } else {
                        (RuleId::IfzSucc, t2.as_ref().clone())
                    };
                    out.push((rule, result));
                }
            }
            if matches!(h.as_ref(), Term::S(_, _, _)) {
                out.push((
                    RuleId::SRule,
                    Term::app(
                        Term::app(s1.as_ref().clone(), b.as_ref().clone()),
                        Term::app(t2.as_ref().clone(), b.as_ref().clone()),
                    ),
                ));
            }
        }
    }
    if matches!(f.as_ref(), Term::Fix(_)) {
        out.push((RuleId::FixRule, Term::app(b.as_ref().clone(), t.clone())));
    }
    if matches!(f.as_ref(), Term::Succ) {
        for (_, b2) in all_steps(b) {
            out.push((RuleId::CongSucc, Term::app(Term::Succ, b2)));
        }
    }
    if matches!(f.as_ref(), Term::Pred) {
        for (_, b2) in all_steps(b) {
            out.push((RuleId::CongPred, Term::app(Term::Pred, b2)));
        }
    }
    if let Term::App(g, _) = f.as_ref() {
        if let Term::App(h, _) = g.as_ref() {
            if matches!(h.as_ref(), Term::Ifz) {
                for (_, b2) in all_steps(b) {
                    out.push((RuleId::CongIfz, Term::app(f.as_ref().clone(), b2)));
                }
            }
        }
    }
    for (_, f2) in all_steps(f) {
        out.push((RuleId::CongApp, Term::app(f2, b.as_ref().clone())));
    }
    out
}

fn check_same_type(s: &Term, t: &Term) -> Result<(), OpsemError> {
    let ts = type_of(s)?;
    let tt = type_of(t)?;
    if ts != tt {
        return Err(OpsemError::TypeMismatch {
            left: ts.to_string(),
            right: tt.to_string(),
        });
    }
    Ok(())
}

/// Whether s steps to t in exactly one step.
pub fn steps_to(s: &Term, t: &Term) -> Result<bool, OpsemError> {
    check_same_type(s, t)?;
    Ok(step(s).as_ref() == Some(t))
}

/// Decides reachability in exactly k steps: R_0 is equality, R_{k+1} one
/// step followed by R_k. Sound because the step relation is single-valued.
pub fn k_step_exact(s: &Term, t: &Term, k: usize) -> Result<bool, OpsemError> {
    check_same_type(s, t)?;
    let mut cur = s.clone();
    for _ in 0..k {
        match step(&cur) {
            Some(next) => cur = next,
            None => return Ok(false),
        }
    }
    Ok(cur == *t)
}

/// A witnessed reduction sequence t_0 ▷ t_1 ▷ … ▷ t_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub terms: Vec<Term>,
}

impl StepTrace {
    pub fn steps(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// One term per line, prefixed by its step index.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let _ = writeln!(out, "{i}: {t}");
        }
        out
    }
}

/// Decides reachability in at most k steps, returning the witnessing trace
/// on success.
pub fn k_step_at_most(
    s: &Term,
    t: &Term,
    k: usize,
) -> Result<(bool, Option<StepTrace>), OpsemError> {
    check_same_type(s, t)?;
    let mut trace = vec![s.clone()];
    let mut cur = s.clone();
    for _ in 0..=k {
        if cur == *t {
            return Ok((true, Some(StepTrace { terms: trace })));
        }
        match step(&cur) {
            Some(next) if trace.len() <= k => {
                trace.push(next.clone());
                cur = next;
            }
            _ => break,
        }
    }
    Ok((false, None))
}

/// Semidecision of the reflexive transitive closure within a step budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarVerdict {
    /// Genuine reachability, in the given number of steps.
    Reached { steps: usize },
    /// Not reached within the budget; says nothing beyond it.
    NotWithinBudget,
}

pub fn reduces_star(s: &Term, t: &Term, budget: usize) -> Result<StarVerdict, OpsemError> {
    check_same_type(s, t)?;
    let mut cur = s.clone();
    for steps in 0..=budget {
        if cur == *t {
            return Ok(StarVerdict::Reached { steps });
        }
        match step(&cur) {
            Some(next) => cur = next,
            None => return Ok(StarVerdict::NotWithinBudget),
        }
    }
    Ok(StarVerdict::NotWithinBudget)
}

/// Outcome of running a closed base-type term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    /// Reached the numeral `value` after `steps` steps (≤ fuel).
    Defined {
        value: u64,
        steps: usize,
        trace: StepTrace,
    },
    /// Took `fuel` steps without reaching a numeral.
    OutOfFuel,
    /// A non-numeral normal form at base type: signals a soundness bug, and
    /// never occurs for well-typed closed terms.
    Stuck { term: Term },
}

/// Runs a closed elaborated base-type term for at most `fuel` steps.
pub fn run(t: &Term, fuel: usize) -> Result<RunOutcome, OpsemError> {
    let ty = type_of(t)?;
    if !ty.is_base() {
        return Err(OpsemError::NotBaseType(ty.to_string()));
    }
    let mut trace = vec![t.clone()];
    let mut cur = t.clone();
    for steps in 0..=fuel {
        if let Some(value) = as_numeral(&cur) {
            return Ok(RunOutcome::Defined {
                value,
                steps,
                trace: StepTrace { terms: trace },
            });
        }
        if steps == fuel {
            break;
        }
        match step(&cur) {
            Some(next) => {
                trace.push(next.clone());
                cur = next;
            }
            None => return Ok(RunOutcome::Stuck { term: cur }),
        }
    }
    Ok(RunOutcome::OutOfFuel)
}

/// The monotone fuel predicate "run(t, fuel) is Defined".
pub fn semidecide_defined(t: &Term) -> Result<impl Fn(usize) -> bool, OpsemError> {
    let ty = type_of(t)?;
    if !ty.is_base() {
        return Err(OpsemError::NotBaseType(ty.to_string()));
    }
    let t = t.clone();
    Ok(move |fuel: usize| matches!(run(&t, fuel), Ok(RunOutcome::Defined { .. })))
}
