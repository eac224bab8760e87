//! Fuel-indexed computational reading of the Scott model of PCF.
//!
//! The base type denotes the lifting of the naturals. Here a partial
//! natural is observed through fuel-indexed approximants: a [`PartialNat`]
//! maps a fuel budget to `Option<u64>`, and a well-formed one is *stable* —
//! once defined at fuel k it is defined with the same value at every higher
//! fuel, so the approximants form an ω-chain in the flat order whose
//! supremum is the true partial element. The unit [`PartialNat::eta`], least
//! element [`PartialNat::bottom`] and Kleisli extension [`kleisli`] satisfy
//! the three monad laws exactly at every fuel.
//!
//! Terms are interpreted compositionally by [`denote_at`]: at fuel k every
//! fix occurrence is unrolled k times from the bottom of its type. Each
//! interpreting operation is monotone in the approximation order, so the
//! per-fuel values form a chain whose limit is the denotation; [`denote`]
//! packages the base-type chain as a `PartialNat`.
//!
//! Function values are intensional closures and are never compared;
//! all cross-checks ([`check_soundness`], [`check_adequacy`]) happen at
//! base type on the definedness frontier.

use std::rc::Rc;

use thiserror::Error;

use crate::opsem::{reduces_star, run, OpsemError, RunOutcome, StarVerdict};
use crate::pcf::{type_of, PcfType, Term, TypeError};

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum ScottError {
    #[error("term is not of base type: {0}")]
    NotBaseType(String),
    #[error(transparent)]
    IllTyped(#[from] TypeError),
    #[error("soundness precondition failed: first term does not reduce to the second within budget")]
    NotAReduction,
    #[error(transparent)]
    Opsem(#[from] OpsemError),
}

/// A fuel-indexed approximant of a partial natural number.
#[derive(Clone)]
pub struct PartialNat {
    approx: Rc<dyn Fn(u32) -> Option<u64>>,
}

impl PartialNat {
    pub fn new(f: impl Fn(u32) -> Option<u64> + 'static) -> PartialNat {
        PartialNat { approx: Rc::new(f) }
    }

    /// The unit: defined with value n at every fuel.
    pub fn eta(n: u64) -> PartialNat {
        PartialNat::new(move |_| Some(n))
    }

    /// The least element: undefined at every fuel.
    pub fn bottom() -> PartialNat {
        PartialNat::new(|_| None)
    }

    /// Defined with `value` from fuel `threshold` on; a handy compact
    /// approximant for tests.
    pub fn defined_from(threshold: u32, value: u64) -> PartialNat {
        PartialNat::new(move |k| (k >= threshold).then_some(value))
    }

    pub fn at(&self, fuel: u32) -> Option<u64> {
        (self.approx)(fuel)
    }

    /// First fuel within the budget at which the value is defined.
    pub fn first_defined(&self, budget: u32) -> Option<(u32, u64)> {
        (0..=budget).find_map(|k| self.at(k).map(|v| (k, v)))
    }

    /// Stability spot-check over the sampled fuels.
    pub fn stable_on(&self, fuels: impl Iterator<Item = u32>) -> bool {
        let mut seen: Option<u64> = None;
        let mut sorted: Vec<u32> = fuels.collect();
        sorted.sort_unstable();
        for k in sorted {
            match (seen, self.at(k)) {
                (None, v) => seen = v,
                (Some(v), w) => {
                    if w != Some(v) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The flat information order on observations: bottom below everything,
/// values only below themselves.
pub fn flat_leq(a: Option<u64>, b: Option<u64>) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(x), Some(y)) => x == y,
        (Some(_), None) => false,
    }
}

/// Kleisli extension: feed the value of x into f once x is defined, at the
/// same fuel. Preserves stability.
pub fn kleisli(f: impl Fn(u64) -> PartialNat + 'static, x: &PartialNat) -> PartialNat {
    let x = x.clone();
    PartialNat::new(move |k| x.at(k).and_then(|v| f(v).at(k)))
}

/// A per-fuel approximant of a denotation: a flat base value at `nat`, a
/// function value at arrow types. The tag is the full PCF type.
#[derive(Clone)]
pub struct FuelDenotation {
    pub ty: PcfType,
    val: DenVal,
}

#[derive(Clone)]
enum DenVal {
    Base(Option<u64>),
    Func(Rc<dyn Fn(&FuelDenotation) -> FuelDenotation>),
}

impl FuelDenotation {
    fn base(v: Option<u64>) -> FuelDenotation {
        FuelDenotation {
            ty: PcfType::Nat,
            val: DenVal::Base(v),
        }
    }

    fn func(
        ty: PcfType,
        f: impl Fn(&FuelDenotation) -> FuelDenotation + 'static,
    ) -> FuelDenotation {
        FuelDenotation {
            ty,
            val: DenVal::Func(Rc::new(f)),
        }
    }

    /// The inner observation at base type; `None` for function values.
    pub fn base_value(&self) -> Option<Option<u64>> {
        match &self.val {
            DenVal::Base(v) => Some(*v),
            DenVal::Func(_) => None,
        }
    }

    pub fn is_function(&self) -> bool {
        matches!(self.val, DenVal::Func(_))
    }

    /// The bottom element of a type: undefined at `nat`, constantly bottom
    /// at arrow types.
    pub fn bottom_of(ty: &PcfType) -> FuelDenotation {
        match ty {
            PcfType::Nat => FuelDenotation::base(None),
            PcfType::Arrow(_, cod) => {
                let cod = cod.as_ref().clone();
                FuelDenotation::func(ty.clone(), move |_| FuelDenotation::bottom_of(&cod))
            }
        }
    }

    /// Applies a function value. The caller guarantees well-typedness;
    /// applying a base value yields bottom at base type rather than a panic.
    fn apply(&self, arg: &FuelDenotation) -> FuelDenotation {
        match &self.val {
            DenVal::Func(f) => f(arg),
            DenVal::Base(_) => FuelDenotation::base(None),
        }
    }
}

/// Interprets a closed elaborated term at the given fuel: every fix is
/// unrolled `fuel` times from the bottom of its type.
pub fn denote_at(t: &Term, fuel: u32) -> Result<FuelDenotation, ScottError> {
    type_of(t)?;
    Ok(interp(t, fuel))
}

fn interp(t: &Term, fuel: u32) -> FuelDenotation {
    use PcfType::Nat;
    match t {
        Term::Zero => FuelDenotation::base(Some(0)),
        Term::Succ => FuelDenotation::func(PcfType::arrow(Nat, Nat), |d| {
            FuelDenotation::base(d.base_value().flatten().map(|n| n + 1))
        }),
        Term::Pred => FuelDenotation::func(PcfType::arrow(Nat, Nat), |d| {
            // Predecessor with 0 mapped to 0.
            FuelDenotation::base(d.base_value().flatten().map(|n| n.saturating_sub(1)))
        }),
        Term::Ifz => {
            let ty = PcfType::arrow(Nat, PcfType::arrow(Nat, PcfType::arrow(Nat, Nat)));
            FuelDenotation::func(ty, |x| {
                let x = x.clone();
                FuelDenotation::func(PcfType::arrow(Nat, PcfType::arrow(Nat, Nat)), move |y| {
                    let x = x.clone();
                    let y = y.clone();
                    FuelDenotation::func(PcfType::arrow(Nat, Nat), move |r| {
                        // Kleisli extension of (n = 0 ? x : y) applied to r.
                        match r.base_value().flatten() {
                            None => FuelDenotation::base(None),
                            Some(0) => x.clone(),
                            Some(_) => y.clone(),
                        }
                    })
                })
            })
        }
        Term::K(a, b) => {
            let ka = a.clone();
            let kb = b.clone();
            let ty = PcfType::arrow(a.clone(), PcfType::arrow(b.clone(), a.clone()));
            FuelDenotation::func(ty, move |x| {
                let x = x.clone();
                FuelDenotation::func(PcfType::arrow(kb.clone(), ka.clone()), move |_| x.clone())
            })
        }
        Term::S(a, b, c) => {
            let t_g = PcfType::arrow(a.clone(), b.clone());
            let t_gx = PcfType::arrow(t_g.clone(), PcfType::arrow(a.clone(), c.clone()));
            let t_all = PcfType::arrow(
                PcfType::arrow(a.clone(), PcfType::arrow(b.clone(), c.clone())),
                t_gx.clone(),
            );
            let ax = a.clone();
            let cx = c.clone();
            FuelDenotation::func(t_all, move |f| {
                let f = f.clone();
                let t_gx = t_gx.clone();
                let ax = ax.clone();
                let cx = cx.clone();
                FuelDenotation::func(t_gx.clone(), move |g| {
                    let f = f.clone();
                    let g = g.clone();
                    FuelDenotation::func(PcfType::arrow(ax.clone(), cx.clone()), move |x| {
                        f.apply(x).apply(&g.apply(x))
                    })
                })
            })
        }
        Term::Fix(a) => {
            let ty = PcfType::arrow(PcfType::arrow(a.clone(), a.clone()), a.clone());
            let a = a.clone();
            FuelDenotation::func(ty, move |f| {
                let mut acc = FuelDenotation::bottom_of(&a);
                for _ in 0..fuel {
                    acc = f.apply(&acc);
                }
                acc
            })
        }
        Term::App(f, x) => interp(f, fuel).apply(&interp(x, fuel)),
    }
}

/// The denotation of a closed base-type term as a fuel-indexed partial
/// natural: fuel k observes `denote_at(t, k)`.
pub fn denote(t: &Term) -> Result<PartialNat, ScottError> {
    let ty = type_of(t)?;
    if !ty.is_base() {
        return Err(ScottError::NotBaseType(ty.to_string()));
    }
    let t = t.clone();
    Ok(PartialNat::new(move |fuel| {
        interp(&t, fuel).base_value().flatten()
    }))
}

/// Verdict of comparing two denotations on the definedness frontier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SoundnessVerdict {
    /// Both defined within budget, with this common value.
    AgreeDefined(u64),
    /// Neither defined within budget.
    AgreeUndefined,
    /// Defined with different values, or on different sides of the budget.
    Disagree {
        left: Option<(u32, u64)>,
        right: Option<(u32, u64)>,
    },
}

impl SoundnessVerdict {
    pub fn agrees(&self) -> bool {
        !matches!(self, SoundnessVerdict::Disagree { .. })
    }
}

/// Checks the soundness instance for a reduction s ⇝* t at base type: the
/// two denotations must agree on the definedness frontier within `budget`
/// fuel. The reduction itself is verified first (within `budget` steps).
pub fn check_soundness(s: &Term, t: &Term, budget: u32) -> Result<SoundnessVerdict, ScottError> {
    let ty = type_of(s)?;
    if !ty.is_base() {
        return Err(ScottError::NotBaseType(ty.to_string()));
    }
    match reduces_star(s, t, budget as usize)? {
        StarVerdict::Reached { .. } => {}
        StarVerdict::NotWithinBudget => return Err(ScottError::NotAReduction),
    }
    let ds = denote(s)?.first_defined(budget);
    let dt = denote(t)?.first_defined(budget);
    Ok(match (ds, dt) {
        (Some((_, v)), Some((_, w))) if v == w => SoundnessVerdict::AgreeDefined(v),
        (None, None) => SoundnessVerdict::AgreeUndefined,
        (left, right) => SoundnessVerdict::Disagree { left, right },
    })
}

/// Operational versus denotational outcome for one closed base-type term.
#[derive(Clone, Debug)]
pub struct AdequacyReport {
    pub operational: RunOutcome,
    /// First fuel at which the denotation is defined, with the value.
    pub denotational: Option<(u32, u64)>,
    pub agreement: bool,
}

/// Runs the term operationally (at most `step_budget` steps) and scans its
/// denotation over fuels 0..=`fuel_budget`; agreement means both defined
/// with equal values or both undefined within their budgets.
pub fn check_adequacy(
    t: &Term,
    step_budget: usize,
    fuel_budget: u32,
) -> Result<AdequacyReport, ScottError> {
    let ty = type_of(t)?;
    if !ty.is_base() {
        return Err(ScottError::NotBaseType(ty.to_string()));
    }
    let operational = run(t, step_budget)?;
    let denotational = denote(t)?.first_defined(fuel_budget);
    let agreement = match (&operational, &denotational) {
        (RunOutcome::Defined { value, .. }, Some((_, v))) => value == v,
        (RunOutcome::OutOfFuel, None) => true,
        _ => false,
    };
    Ok(AdequacyReport {
        operational,
        denotational,
        agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcf::{elaborate_str, numeral};

    fn t(src: &str) -> Term {
        elaborate_str(src).unwrap()
    }

    #[test]
    fn eta_is_constant() {
        let e = PartialNat::eta(5);
        assert_eq!(e.at(0), Some(5));
        assert_eq!(e.at(1000), Some(5));
        assert!(e.stable_on(0..=100));
    }

    #[test]
    fn bottom_is_always_undefined_and_below_everything() {
        let b = PartialNat::bottom();
        assert_eq!(b.at(0), None);
        assert_eq!(b.at(1_000_000), None);
        for k in 0..=100 {
            assert!(flat_leq(b.at(k), PartialNat::eta(3).at(k)));
        }
    }

    #[test]
    fn kleisli_unit_laws_on_samples() {
        let samples = [
            PartialNat::bottom(),
            PartialNat::eta(0),
            PartialNat::eta(9),
            PartialNat::defined_from(7, 2),
        ];
        let f = |n: u64| {
            if n % 2 == 0 {
                PartialNat::eta(n / 2)
            } else {
                PartialNat::defined_from(3, n)
            }
        };
        for x in &samples {
            let lhs = kleisli(PartialNat::eta, x);
            for k in 0..=100 {
                assert_eq!(lhs.at(k), x.at(k), "eta# = id fails at fuel {k}");
            }
        }
        for n in 0..10u64 {
            let lhs = kleisli(f, &PartialNat::eta(n));
            for k in 0..=100 {
                assert_eq!(lhs.at(k), f(n).at(k), "f# ∘ eta = f fails at fuel {k}");
            }
        }
    }

    #[test]
    fn kleisli_associativity_on_samples() {
        let f = |n: u64| PartialNat::defined_from((n % 5) as u32, n + 1);
        let g = |n: u64| {
            if n % 3 == 0 {
                PartialNat::bottom()
            } else {
                PartialNat::eta(n * 2)
            }
        };
        let samples = [
            PartialNat::bottom(),
            PartialNat::eta(2),
            PartialNat::eta(3),
            PartialNat::defined_from(11, 6),
        ];
        for x in &samples {
            let lhs = kleisli(g, &kleisli(f, x));
            let rhs = kleisli(move |n| kleisli(g, &f(n)), x);
            for k in 0..=100 {
                assert_eq!(lhs.at(k), rhs.at(k), "(g# ∘ f)# fails at fuel {k}");
            }
        }
    }

    #[test]
    fn kleisli_preserves_stability() {
        let f = |n: u64| PartialNat::defined_from(5, n);
        let x = PartialNat::defined_from(3, 4);
        assert!(kleisli(f, &x).stable_on(0..=50));
    }

    #[test]
    fn numerals_denote_themselves_at_every_fuel() {
        for n in [0u64, 1, 3, 10] {
            for k in [0u32, 1, 50] {
                let d = denote_at(&numeral(n), k).unwrap();
                assert_eq!(d.base_value(), Some(Some(n)));
            }
        }
    }

    #[test]
    fn pred_zero_denotes_zero() {
        let d = denote_at(&t("pred zero"), 0).unwrap();
        assert_eq!(d.base_value(), Some(Some(0)));
    }

    #[test]
    fn divergent_fix_denotes_bottom_at_all_fuels() {
        let loop_term = t("fix (s k k)");
        for k in 0..=50 {
            let d = denote_at(&loop_term, k).unwrap();
            assert_eq!(d.base_value(), Some(None), "fuel {k}");
        }
    }

    #[test]
    fn fix_k_zero_defines_after_one_unrolling() {
        let p = denote(&t("fix (k zero)")).unwrap();
        assert_eq!(p.at(0), None);
        assert_eq!(p.at(1), Some(0));
        assert!(p.stable_on(0..=60));
    }

    #[test]
    fn denote_rejects_function_types() {
        assert!(matches!(denote(&t("succ")), Err(ScottError::NotBaseType(_))));
    }

    #[test]
    fn ifz_denotation_selects_branches() {
        assert_eq!(
            denote(&t("ifz #1 #2 zero")).unwrap().at(0),
            Some(1)
        );
        assert_eq!(denote(&t("ifz #1 #2 #7")).unwrap().at(0), Some(2));
        // Undefined scrutinee gives an undefined conditional.
        assert_eq!(denote(&t("ifz #1 #2 (fix (s k k))")).unwrap().at(30), None);
    }

    #[test]
    fn soundness_along_single_steps() {
        for (s, u) in [
            ("pred zero", "zero"),
            ("fix (k zero)", "(k zero : nat -> nat) (fix (k zero))"),
            (
                "s k k zero",
                "(k : nat -> (nat -> nat) -> nat) zero ((k : nat -> nat -> nat) zero)",
            ),
        ] {
            let verdict = check_soundness(&t(s), &t(u), 100).unwrap();
            assert!(verdict.agrees(), "{s} vs {u}: {verdict:?}");
        }
    }

    #[test]
    fn soundness_precondition_is_enforced() {
        assert!(matches!(
            check_soundness(&numeral(0), &numeral(1), 50),
            Err(ScottError::NotAReduction)
        ));
    }

    #[test]
    fn adequacy_examples() {
        let r = check_adequacy(&numeral(4), 100, 50).unwrap();
        assert!(r.agreement);
        assert_eq!(r.denotational, Some((0, 4)));

        let r = check_adequacy(&t("fix (k zero)"), 100, 50).unwrap();
        assert!(r.agreement);
        assert_eq!(r.denotational, Some((1, 0)));

        let r = check_adequacy(&t("fix (s k k)"), 10_000, 200).unwrap();
        assert!(r.agreement);
        assert_eq!(r.denotational, None);
        assert_eq!(r.operational, RunOutcome::OutOfFuel);
    }

    #[test]
    fn fuel_monotonicity_on_samples() {
        for src in [
            "succ (pred zero)",
            "fix (k zero)",
            "fix (k (fix (k (succ zero))))",
            "ifz zero #2 (succ (pred zero))",
        ] {
            let p = denote(&t(src)).unwrap();
            assert!(p.stable_on(0..=100), "{src} unstable");
        }
    }
}
