//! Property tests for the crate-wide invariants that want randomized
//! inputs rather than fixtures.

use std::rc::Rc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use domainlab::domain::{fixtures, FinPoset, Subset};
use domainlab::dyadics::{self, Dyadic};
use domainlab::pcf::{self, PcfType, Term};
use domainlab::scott::{kleisli, PartialNat};

/// Random closed well-typed term of the given type. Returns `None` when the
/// depth budget cannot accommodate the type.
fn gen_term(ty: &PcfType, depth: usize, rng: &mut StdRng) -> Option<Term> {
    use PcfType::Nat;
    if depth == 0 {
        return match ty {
            Nat => Some(Term::Zero),
            PcfType::Arrow(a, b) if **a == Nat && **b == Nat => Some(Term::Succ),
            PcfType::Arrow(a, b) => {
                // k x : a ⇒ b needs x : b, which may itself be an arrow;
                // give up at depth zero unless b is flat.
                let _ = (a, b);
                None
            }
        };
    }
    let choice = rng.gen_range(0..6u8);
    match ty {
        Nat => Some(match choice {
            0 => Term::Zero,
            1 => pcf::numeral(rng.gen_range(0..5)),
            2 => Term::app(Term::Pred, gen_term(&Nat, depth - 1, rng)?),
            3 => Term::app(Term::Succ, gen_term(&Nat, depth - 1, rng)?),
            4 => {
                let s = gen_term(&Nat, depth - 1, rng)?;
                let t = gen_term(&Nat, depth - 1, rng)?;
                let r = gen_term(&Nat, depth - 1, rng)?;
                Term::app(Term::app(Term::app(Term::Ifz, s), t), r)
            }
            _ => {
                let f = gen_term(&PcfType::arrow(Nat, Nat), depth - 1, rng)?;
                Term::app(Term::Fix(Nat), f)
            }
        }),
        PcfType::Arrow(dom, cod) => match choice {
            0 if **dom == Nat && **cod == Nat => Some(Term::Succ),
            1 if **dom == Nat && **cod == Nat => Some(Term::Pred),
            2 | 3 => {
                // k x : dom ⇒ cod with x : cod.
                let x = gen_term(cod, depth - 1, rng)?;
                Some(Term::app(
                    Term::K(cod.as_ref().clone(), dom.as_ref().clone()),
                    x,
                ))
            }
            4 => {
                // fix at this arrow type, fed a constant function.
                let body = gen_term(ty, depth - 1, rng)?;
                Some(Term::app(
                    Term::Fix(ty.clone()),
                    Term::app(Term::K(ty.clone(), ty.clone()), body),
                ))
            }
            _ => {
                if **dom == Nat && **cod == Nat {
                    Some(Term::Succ)
                } else {
                    let x = gen_term(cod, depth - 1, rng)?;
                    Some(Term::app(
                        Term::K(cod.as_ref().clone(), dom.as_ref().clone()),
                        x,
                    ))
                }
            }
        },
    }
}

fn arb_dyadic() -> impl Strategy<Value = Dyadic> {
    let leaf = Just(Dyadic::Middle);
    leaf.prop_recursive(5, 32, 1, |inner| {
        prop_oneof![
            inner.clone().prop_map(|d| d.left()),
            inner.prop_map(|d| d.right()),
        ]
    })
}

proptest! {
    #[test]
    fn render_parse_elaborate_is_identity(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let nat = PcfType::Nat;
        let tys = [
            nat.clone(),
            PcfType::arrow(nat.clone(), nat.clone()),
            PcfType::arrow(PcfType::arrow(nat.clone(), nat.clone()), nat.clone()),
        ];
        let ty = &tys[rng.gen_range(0..tys.len())];
        if let Some(t) = gen_term(ty, 4, &mut rng) {
            prop_assert!(pcf::type_of(&t).is_ok());
            let rendered = pcf::render(&t);
            let back = pcf::elaborate(&pcf::parse(&rendered).unwrap()).unwrap();
            prop_assert_eq!(t, back);
        }
    }

    #[test]
    fn elaboration_is_deterministic_on_random_sources(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        if let Some(t) = gen_term(&PcfType::Nat, 4, &mut rng) {
            let src = pcf::render(&t);
            let raw = pcf::parse(&src).unwrap();
            prop_assert_eq!(pcf::elaborate(&raw).unwrap(), pcf::elaborate(&raw).unwrap());
        }
    }

    #[test]
    fn kleisli_preserves_stability(threshold in 0u32..60, value in 0u64..50, shift in 0u32..40) {
        let x = PartialNat::defined_from(threshold, value);
        let f = move |n: u64| PartialNat::defined_from(shift, n + 1);
        let y = kleisli(f, &x);
        prop_assert!(y.stable_on(0..=120));
    }

    #[test]
    fn dyadic_compare_is_consistent(x in arb_dyadic(), y in arb_dyadic()) {
        use std::cmp::Ordering;
        let ways = [dyadics::prec(&x, &y), x == y, dyadics::prec(&y, &x)];
        prop_assert_eq!(ways.iter().filter(|&&b| b).count(), 1);
        let c = dyadics::compare(&x, &y);
        prop_assert_eq!(c == Ordering::Less, dyadics::prec(&x, &y));
        prop_assert_eq!(c == Ordering::Equal, x == y);
    }

    #[test]
    fn dyadic_interpolant_is_between(x in arb_dyadic(), y in arb_dyadic()) {
        if dyadics::prec(&x, &y) {
            let z = dyadics::interpolant(&x, &y).unwrap();
            prop_assert!(dyadics::prec(&x, &z));
            prop_assert!(dyadics::prec(&z, &y));
        } else {
            prop_assert!(dyadics::interpolant(&x, &y).is_err());
        }
    }

    #[test]
    fn sup_is_a_least_upper_bound(seed in any::<u64>(), mask in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p: FinPoset = fixtures::random_dag_closure(6, 0.4, &mut rng);
        let s = Subset(mask & ((1 << p.len()) - 1));
        if let Some(sup) = p.sup(s) {
            for m in s.iter().take_while(|&i| i < p.len()) {
                prop_assert!(p.leq(m, sup), "sup must be an upper bound");
            }
            for u in 0..p.len() {
                let upper = s.iter().take_while(|&i| i < p.len()).all(|m| p.leq(m, u));
                if upper {
                    prop_assert!(p.leq(sup, u), "sup must be below every upper bound");
                }
            }
        }
    }
}
