//! Single step functions, directification and the step-function basis of an
//! exponential between finite lattices.
//!
//! On a finite poset the order is decidable, so the step function ⟨d⇒e⟩ is
//! the case split "e if d ⊑ x, bottom otherwise". A monotone map f lies
//! above ⟨d⇒e⟩ exactly when e ⊑ f(d), and every map between finite lattices
//! is the pointwise join of the step functions below it — the decomposition
//! recovered by [`decompose_into_step_functions`].

use std::rc::Rc;

use thiserror::Error;

use crate::domain::poset::PosetError;
use crate::domain::{FinPoset, MonoMap, Subset};

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum StepFnError {
    #[error("step-function target must be pointed")]
    TargetNotPointed,
    #[error("missing join of {x} and {y}: target is not a lattice")]
    MissingJoin { x: usize, y: usize },
    #[error("poset is not pointed")]
    NotPointed,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// ⟨d⇒e⟩ : x ↦ e if d ⊑ x, bottom otherwise.
pub fn step_function(
    p: &Rc<FinPoset>,
    q: &Rc<FinPoset>,
    d: usize,
    e: usize,
) -> Result<MonoMap, StepFnError> {
    let bot = q.least().ok_or(StepFnError::TargetNotPointed)?;
    let table = (0..p.len())
        .map(|x| if p.leq(d, x) { e } else { bot })
        .collect();
    Ok(MonoMap {
        source: Rc::clone(p),
        target: Rc::clone(q),
        table,
    })
}

/// The directification of a family in a finite lattice: index sequences are
/// sent to the finite join of their members, with the empty sequence at
/// bottom. The image contains bottom and is closed under binary joins, so it
/// is directed.
pub struct Directification<'a> {
    poset: &'a FinPoset,
    family: &'a [usize],
}

pub fn directify<'a>(poset: &'a FinPoset, family: &'a [usize]) -> Directification<'a> {
    Directification { poset, family }
}

impl Directification<'_> {
    pub fn join(&self, indices: &[usize]) -> Result<usize, StepFnError> {
        let mut acc = self.poset.least().ok_or(StepFnError::NotPointed)?;
        for &i in indices {
            let x = self.family[i];
            acc = self
                .poset
                .join(acc, x)
                .ok_or(StepFnError::MissingJoin { x: acc, y: x })?;
        }
        Ok(acc)
    }
}

/// All (d, e) with ⟨d⇒e⟩ ⊑ f, i.e. e ⊑ f(d). Their pointwise join is f when
/// the target is a lattice; [`join_of_step_functions`] recomputes that join.
pub fn decompose_into_step_functions(f: &MonoMap) -> Result<Vec<(usize, usize)>, StepFnError> {
    if f.target.least().is_none() {
        return Err(StepFnError::TargetNotPointed);
    }
    let mut pairs = Vec::new();
    for d in 0..f.source.len() {
        for e in 0..f.target.len() {
            if f.target.leq(e, f.table[d]) {
                pairs.push((d, e));
            }
        }
    }
    Ok(pairs)
}

/// Pointwise join of a set of step functions, as a table. Errors when the
/// target lacks a needed join.
pub fn join_of_step_functions(
    p: &FinPoset,
    q: &FinPoset,
    pairs: &[(usize, usize)],
) -> Result<Vec<usize>, StepFnError> {
    let bot = q.least().ok_or(StepFnError::TargetNotPointed)?;
    let mut table = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        let mut acc = bot;
        for &(d, e) in pairs {
            if p.leq(d, x) {
                acc = q.join(acc, e).ok_or(StepFnError::MissingJoin { x: acc, y: e })?;
            }
        }
        table.push(acc);
    }
    Ok(table)
}

/// Checks that an element assignment is a small compact basis for a finite
/// poset: every assigned element compact, and every x the directed sup of
/// the assigned elements below it.
#[derive(Clone, Debug)]
pub struct CompactBasisReport {
    pub all_compact: bool,
    pub all_approximated: bool,
    pub failures: Vec<String>,
}

impl CompactBasisReport {
    pub fn passed(&self) -> bool {
        self.all_compact && self.all_approximated
    }
}

pub fn check_compact_basis(
    p: &FinPoset,
    assignment: &[usize],
) -> Result<CompactBasisReport, PosetError> {
    let mut report = CompactBasisReport {
        all_compact: true,
        all_approximated: true,
        failures: Vec::new(),
    };
    for &b in assignment {
        if !p.is_compact(b)? {
            report.all_compact = false;
            report
                .failures
                .push(format!("basis element {} is not compact", p.name(b)));
        }
    }
    for x in 0..p.len() {
        let below: Vec<usize> = assignment
            .iter()
            .copied()
            .filter(|&b| p.leq(b, x))
            .collect();
        let directed = !below.is_empty()
            && below.iter().all(|&a| {
                below
                    .iter()
                    .all(|&b| below.iter().any(|&c| p.leq(a, c) && p.leq(b, c)))
            });
        let sup = p.sup_of(below.iter().copied());
        if !directed || sup != Some(x) {
            report.all_approximated = false;
            report.failures.push(format!(
                "{} is not the directed sup of basis elements below it",
                p.name(x)
            ));
        }
    }
    Ok(report)
}

/// Builds a subset of an n-element carrier from a listing with repeats,
/// the list-to-powerset map.
pub fn list_to_subset(xs: &[usize], n: usize) -> Subset {
    let mut s = Subset::empty();
    for &x in xs {
        assert!(x < n, "element out of range");
        s = s.with(x);
    }
    s
}
