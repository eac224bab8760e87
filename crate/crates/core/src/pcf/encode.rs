//! Encodings of PCF types and of the zero/succ/application term fragment as
//! multi-sorted well-founded trees, used to cross-check structural equality
//! of the syntax against the generic tree-equality decision procedure.

use crate::wtree::{Signature, WTree};

use super::{PcfType, Term};

/// The single-sorted signature of PCF types: `iota` (arity 0) and `arrow`
/// (arity 2).
pub fn type_signature() -> Signature {
    Signature::new(&["ty"], &[("iota", "ty", &[]), ("arrow", "ty", &["ty", "ty"])])
        .expect("type signature is well-formed")
}

pub fn encode_type(t: &PcfType) -> WTree {
    match t {
        PcfType::Nat => WTree::leaf("iota"),
        PcfType::Arrow(a, b) => WTree::node("arrow", vec![encode_type(a), encode_type(b)]),
    }
}

/// The term signature over a finite universe of sorts (one per PCF type in
/// `universe`): constants `zero : ι` and `succ : ι ⇒ ι`, plus an
/// application constructor `app[σ,τ] : (σ⇒τ, σ) → τ` for every function
/// type in the universe whose pieces are also in the universe.
pub fn term_signature(universe: &[PcfType]) -> Signature {
    let sort_names: Vec<String> = universe.iter().map(|t| t.to_string()).collect();
    let sorts: Vec<&str> = sort_names.iter().map(String::as_str).collect();
    let mut ctors: Vec<(String, String, Vec<String>)> = Vec::new();
    let nat = PcfType::Nat;
    if universe.contains(&nat) {
        ctors.push(("zero".into(), nat.to_string(), vec![]));
    }
    let succ_ty = PcfType::arrow(PcfType::Nat, PcfType::Nat);
    if universe.contains(&succ_ty) {
        ctors.push(("succ".into(), succ_ty.to_string(), vec![]));
    }
    for ty in universe {
        if let PcfType::Arrow(dom, cod) = ty {
            if universe.contains(dom) && universe.contains(cod) {
                ctors.push((
                    format!("app[{dom},{cod}]"),
                    cod.to_string(),
                    vec![ty.to_string(), dom.to_string()],
                ));
            }
        }
    }
    let ctor_refs: Vec<(&str, &str, Vec<&str>)> = ctors
        .iter()
        .map(|(l, t, a)| (l.as_str(), t.as_str(), a.iter().map(String::as_str).collect()))
        .collect();
    let ctor_slices: Vec<(&str, &str, &[&str])> = ctor_refs
        .iter()
        .map(|(l, t, a)| (*l, *t, a.as_slice()))
        .collect();
    Signature::new(&sorts, &ctor_slices).expect("term signature is well-formed")
}

/// Encodes a term from the zero/succ/application fragment; `None` when the
/// term uses other constants or a type outside the encoding.
pub fn encode_term(t: &Term) -> Option<WTree> {
    match t {
        Term::Zero => Some(WTree::leaf("zero")),
        Term::Succ => Some(WTree::leaf("succ")),
        Term::App(f, x) => {
            let f_ty = super::type_of(f).ok()?;
            let (dom, cod) = match &f_ty {
                PcfType::Arrow(a, b) => (a.clone(), b.clone()),
                PcfType::Nat => return None,
            };
            Some(WTree::node(
                &format!("app[{dom},{cod}]"),
                vec![encode_term(f)?, encode_term(x)?],
            ))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcf::numeral;
    use crate::wtree::{decide_equal, validate_tree, TreeEq};

    #[test]
    fn encoded_types_are_well_sorted() {
        let sig = type_signature();
        let t = PcfType::arrow(PcfType::Nat, PcfType::arrow(PcfType::Nat, PcfType::Nat));
        assert!(validate_tree(&sig, "ty", &encode_type(&t)).is_ok());
    }

    #[test]
    fn type_equality_matches_tree_equality() {
        let sig = type_signature();
        let a = PcfType::arrow(PcfType::Nat, PcfType::Nat);
        let b = PcfType::arrow(PcfType::arrow(PcfType::Nat, PcfType::Nat), PcfType::Nat);
        let ea = encode_type(&a);
        let eb = encode_type(&b);
        assert_eq!(decide_equal(&sig, "ty", &ea, &ea.clone()).unwrap(), TreeEq::Equal);
        assert!(matches!(
            decide_equal(&sig, "ty", &ea, &eb).unwrap(),
            TreeEq::Unequal { .. }
        ));
    }

    #[test]
    fn numerals_encode_and_validate() {
        let nat = PcfType::Nat;
        let universe = vec![nat.clone(), PcfType::arrow(nat.clone(), nat)];
        let sig = term_signature(&universe);
        for n in 0..6u64 {
            let t = encode_term(&numeral(n)).unwrap();
            assert!(validate_tree(&sig, "nat", &t).is_ok());
        }
    }

    #[test]
    fn term_equality_matches_tree_equality_on_the_fragment() {
        let nat = PcfType::Nat;
        let universe = vec![nat.clone(), PcfType::arrow(nat.clone(), nat)];
        let sig = term_signature(&universe);
        let terms: Vec<_> = (0..5u64).map(numeral).collect();
        for a in &terms {
            for b in &terms {
                let ea = encode_term(a).unwrap();
                let eb = encode_term(b).unwrap();
                let tree_eq = decide_equal(&sig, "nat", &ea, &eb).unwrap() == TreeEq::Equal;
                assert_eq!(tree_eq, a == b);
            }
        }
    }
}
